//! Arithmetic in GF(2^64), the field the randomized determinant test
//! evaluates over.
//!
//! Elements are bit vectors of polynomials over GF(2) modulo
//! x^64 + x^4 + x^3 + x + 1; the reduction constant 0x1B encodes the low
//! terms. Addition is XOR. Multiplication is a portable carry-less multiply
//! with a 16-entry window table plus a two-step fold; the determinant audits
//! evaluate millions of products, so the inner loop matters. Everything is
//! safe code with no architecture intrinsics.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub, SubAssign};

/// Low-order bits of the reduction polynomial x^64 + x^4 + x^3 + x + 1.
pub const POLY_LOW: u64 = 0x1B;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Gf64(pub u64);

impl Gf64 {
    pub const ZERO: Gf64 = Gf64(0);
    pub const ONE: Gf64 = Gf64(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse by extended Euclid over GF(2)[x]; two orders
    /// of magnitude cheaper than the Fermat power chain, which survives in
    /// the tests as an independent oracle. Panics on zero.
    pub fn inverse(self) -> Gf64 {
        assert!(!self.is_zero(), "zero has no inverse");
        let modulus: u128 = (1u128 << 64) | POLY_LOW as u128;
        let (mut r0, mut r1) = (modulus, self.0 as u128);
        let (mut s0, mut s1) = (0u128, 1u128);
        let deg = |p: u128| 127 - p.leading_zeros() as i32;
        while r1 != 0 {
            while r1 != 0 && deg(r0) >= deg(r1) {
                let d = (deg(r0) - deg(r1)) as u32;
                r0 ^= r1 << d;
                s0 ^= s1 << d;
            }
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut s0, &mut s1);
        }
        debug_assert_eq!(r0, 1);
        Gf64(s0 as u64)
    }
}

/// Carry-less 64x64 multiply with a 4-bit window table.
#[inline]
fn clmul64(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    table[1] = a as u128;
    for i in 2..16 {
        table[i] = table[i >> 1] << 1 ^ table[i & 1];
    }
    let mut acc = 0u128;
    for k in 0..16 {
        acc ^= table[(b >> (4 * k) & 15) as usize] << (4 * k);
    }
    acc
}

/// Multiply by the reduction tail x^4 + x^3 + x + 1.
#[inline]
fn times_poly_tail(a: u64) -> u128 {
    let a = a as u128;
    (a << 4) ^ (a << 3) ^ (a << 1) ^ a
}

/// Fold a 128-bit carry-less product modulo x^64 + x^4 + x^3 + x + 1.
#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = x as u64;
    let hi = (x >> 64) as u64;
    // x^64 = tail (degree 4), so the high half folds as hi * tail; that
    // product can itself spill 4 bits past x^64, so fold the spill once more.
    let t = times_poly_tail(hi);
    let spill = (t >> 64) as u64;
    lo ^ t as u64 ^ times_poly_tail(spill) as u64
}

impl Add for Gf64 {
    type Output = Gf64;
    fn add(self, rhs: Gf64) -> Gf64 {
        Gf64(self.0 ^ rhs.0)
    }
}

impl Sub for Gf64 {
    type Output = Gf64;
    fn sub(self, rhs: Gf64) -> Gf64 {
        Gf64(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf64 {
    fn add_assign(&mut self, rhs: Gf64) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for Gf64 {
    fn sub_assign(&mut self, rhs: Gf64) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf64 {
    type Output = Gf64;
    fn mul(self, rhs: Gf64) -> Gf64 {
        Gf64(reduce128(clmul64(self.0, rhs.0)))
    }
}

impl MulAssign for Gf64 {
    fn mul_assign(&mut self, rhs: Gf64) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Multiply two GF(2) polynomials of degree < 64 without reduction.
    fn poly_mul(a: u64, b: u64) -> u128 {
        let mut acc = 0u128;
        for i in 0..64 {
            if b >> i & 1 == 1 {
                acc ^= (a as u128) << i;
            }
        }
        acc
    }

    /// Reduce a degree < 128 polynomial modulo x^64 + (POLY_LOW bits).
    fn poly_reduce(mut p: u128) -> u64 {
        for bit in (64..128).rev() {
            if p >> bit & 1 == 1 {
                p ^= 1u128 << bit;
                p ^= (POLY_LOW as u128) << (bit - 64);
            }
        }
        p as u64
    }

    fn oracle_mul(a: u64, b: u64) -> u64 {
        poly_reduce(poly_mul(a, b))
    }

    /// Inverse as the Fermat power a^(2^64 - 2); algorithmically independent
    /// of the Euclid implementation under test.
    fn oracle_inverse(a: u64) -> u64 {
        assert_ne!(a, 0);
        let a = Gf64(a);
        let mut result = a * a;
        let mut power = result;
        for _ in 2..=63 {
            power = power * power;
            result = result * power;
        }
        result.0
    }

    #[test]
    fn small_identities() {
        assert_eq!(Gf64::ONE * Gf64::ONE, Gf64::ONE);
        assert_eq!(Gf64(5) + Gf64(5), Gf64::ZERO);
        assert_eq!(Gf64(0xFF) * Gf64::ZERO, Gf64::ZERO);
        // x^63 * x = x^64 = x^4 + x^3 + x + 1
        assert_eq!(Gf64(1 << 63) * Gf64(2), Gf64(POLY_LOW));
    }

    #[test]
    fn known_inverses() {
        assert_eq!(Gf64::ONE.inverse(), Gf64::ONE);
        for a in [2u64, 3, 0x1B, 0xDEADBEEF, u64::MAX] {
            let inv = Gf64(a).inverse();
            assert_eq!(Gf64(a) * inv, Gf64::ONE, "a = {a:#x}");
            assert_eq!(inv.0, oracle_inverse(a), "a = {a:#x}");
        }
    }

    #[test]
    #[should_panic(expected = "zero has no inverse")]
    fn zero_inverse_panics() {
        Gf64::ZERO.inverse();
    }

    proptest! {
        #[test]
        fn mul_matches_polynomial_oracle(a in any::<u64>(), b in any::<u64>()) {
            prop_assert_eq!((Gf64(a) * Gf64(b)).0, oracle_mul(a, b));
        }

        #[test]
        fn mul_is_commutative_associative(
            a in any::<u64>(), b in any::<u64>(), c in any::<u64>()
        ) {
            let (a, b, c) = (Gf64(a), Gf64(b), Gf64(c));
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
        }

        #[test]
        fn inverse_matches_euclid(a in 1u64..) {
            let inv = Gf64(a).inverse();
            prop_assert_eq!(Gf64(a) * inv, Gf64::ONE);
            prop_assert_eq!(inv.0, oracle_inverse(a));
        }
    }
}
