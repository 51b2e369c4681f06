//! Command-line front-end for the dual-criticality library.
//!
//! Exit codes: 0 = decided / success, 1 = the queried property does not hold,
//! 2 = usage or input error. Every command takes `--json` for machine-readable
//! output, and every positive decision is backed by a certificate that has
//! been re-verified in-process before being printed.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dualcrit::cubic::CubicInstance;
use dualcrit::exact::{
    find_good_ordering, find_t_odd_ordering, is_super_dual_critical, verify_good_ordering,
    verify_t_odd_ordering,
};
use dualcrit::gen::{
    even_clique_plus_isolates, random_cubic, random_dual_critical, random_multigraph,
};
use dualcrit::graph::normalize_to_simple;
use dualcrit::io::{parse_graph, serialize_graph, verify_certificate, Certificate};
use dualcrit::kdc::{fpt_kdc, kernelize, maxdc, verify_good_partition, KernelResult};
use dualcrit::planar::{parse_rotation, serialize_rotation};
use dualcrit::szegedy::{
    audit_against_exact, szegedy_is_dc, FalseReason, SzegedyVerdict, Variant,
};
use dualcrit::{Error, MultiGraph, VertexSet};

const EXIT_OK: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_ERROR: u8 = 2;

/// Deciders and generators for dual-critical multigraphs.
#[derive(Parser)]
#[command(name = "dualcrit", version, about)]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a multigraph is dual-critical.
    Check(CheckArgs),
    /// Find an acyclic orientation whose odd-indegree vertices are exactly T.
    Todd(ToddArgs),
    /// Decide whether every single-vertex deletion leaves a dual-critical graph.
    Sdc(InArg),
    /// Find a good k-partition: ordered classes with every prefix cut odd.
    Kpart(KpartArgs),
    /// Shrink the k-partition decision to a kernel of at most 6k vertices.
    Kernel(KernelArgs),
    /// Compute the largest k admitting a good k-partition.
    Maxdc(MaxdcArgs),
    /// Evaluate the equivalent dual-criticality conditions for a cubic graph
    /// on 4k+2 vertices.
    Cubic(InArg),
    /// Trace the faces of a rotation system, build its planar dual, and
    /// optionally relate criticality across the duality.
    Planar(PlanarArgs),
    /// Compare the randomized test against the exact decider on every small
    /// connected simple graph.
    Audit(AuditArgs),
    /// Generate a graph.
    Gen(GenArgs),
    /// Rewrite a multigraph into a simple one with the same dual-criticality.
    Simplify(SimplifyArgs),
    /// Check a certificate file against a graph file.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InArg {
    /// Graph file in edge-list format; "-" reads stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Subset dynamic program, exact up to 26 vertices.
    Exact,
    /// Randomized determinant test over GF(2^64).
    Szegedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// Diagonal entries carry the vertex variables.
    Literal,
    /// Diagonal entries are zeroed.
    Zerodiag,
}

impl VariantArg {
    fn to_variant(self) -> Variant {
        match self {
            VariantArg::Literal => Variant::LiteralDiagonal,
            VariantArg::Zerodiag => Variant::ZeroDiagonal,
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InArg,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    /// Determinant variant (szegedy method only).
    #[arg(long, value_enum, default_value_t = VariantArg::Literal)]
    variant: VariantArg,
    /// RNG seed for the szegedy method; DUALCRIT_SEED overrides.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Determinant evaluations per decision (szegedy method only).
    #[arg(long, default_value_t = 40)]
    trials: usize,
}

#[derive(Args)]
struct ToddArgs {
    #[command(flatten)]
    input: InArg,
    /// Target odd-indegree set as comma-separated vertex ids; empty for none.
    #[arg(long, value_name = "IDS", default_value = "")]
    t: String,
}

#[derive(Args)]
struct KpartArgs {
    #[command(flatten)]
    input: InArg,
    /// Number of classes.
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    input: InArg,
    /// Number of classes the kernel must preserve the decision for.
    #[arg(long)]
    k: usize,
    /// Write the certificate JSON here.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MaxdcArgs {
    #[command(flatten)]
    input: InArg,
    /// Write a witnessing good partition here as certificate JSON.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlanarCheck {
    /// Report dual-criticality and factor-criticality of primal and dual.
    Duality,
}

#[derive(Args)]
struct PlanarArgs {
    /// Rotation-system file; "-" reads stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Extra analysis to run on the embedding.
    #[arg(long, value_enum)]
    check: Option<PlanarCheck>,
    /// Write the dual rotation system here.
    #[arg(long, value_name = "FILE")]
    dual_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AuditVariantArg {
    Both,
    Literal,
    Zerodiag,
}

#[derive(Args)]
struct AuditArgs {
    /// Largest vertex count to enumerate (at most 7).
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = AuditVariantArg::Both)]
    variant: AuditVariantArg,
    /// Determinant evaluations per graph and variant.
    #[arg(long, default_value_t = 40)]
    trials: usize,
    /// Base RNG seed; DUALCRIT_SEED overrides.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the full JSON report here.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OutArg {
    /// Write the graph here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniform random multigraph; roughly one edge in ten is a loop.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// DUALCRIT_SEED overrides.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random dual-critical graph: each vertex joins its predecessors by a
    /// uniformly random odd-sized back-neighborhood.
    Dc {
        #[arg(long)]
        n: usize,
        /// DUALCRIT_SEED overrides.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random connected simple cubic graph on n = 4k+2 vertices.
    Cubic {
        #[arg(long)]
        n: usize,
        /// DUALCRIT_SEED overrides.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Even clique plus isolated vertices; the largest good partition has
    /// exactly two classes.
    #[command(name = "evenclique_isolates")]
    EvencliqueIsolates {
        /// Clique size, even and at least 2.
        #[arg(long)]
        clique: usize,
        #[arg(long)]
        isolates: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct SimplifyArgs {
    #[command(flatten)]
    input: InArg,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InArg,
    /// Certificate JSON file.
    #[arg(long, value_name = "FILE")]
    cert: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Check(a) => cmd_check(a, json),
        Command::Todd(a) => cmd_todd(a, json),
        Command::Sdc(a) => cmd_sdc(a, json),
        Command::Kpart(a) => cmd_kpart(a, json),
        Command::Kernel(a) => cmd_kernel(a, json),
        Command::Maxdc(a) => cmd_maxdc(a, json),
        Command::Cubic(a) => cmd_cubic(a, json),
        Command::Planar(a) => cmd_planar(a, json),
        Command::Audit(a) => cmd_audit(a, json),
        Command::Gen(a) => cmd_gen(a, json),
        Command::Simplify(a) => cmd_simplify(a, json),
        Command::Verify(a) => cmd_verify(a, json),
    }
}

fn load_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_graph(path: &Path) -> Result<MultiGraph> {
    Ok(parse_graph(&load_text(path)?)?)
}

/// DUALCRIT_SEED, when set, wins over any --seed flag.
fn effective_seed(flag: u64) -> Result<u64> {
    match std::env::var("DUALCRIT_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("DUALCRIT_SEED must be an unsigned integer, got {s:?}")),
        Err(_) => Ok(flag),
    }
}

// Takes a Value for ad-hoc objects; structs that must keep their declared
// field order are serialized by the caller and passed through emit_raw.
fn emit(json: bool, value: serde_json::Value, human: String) {
    emit_raw(json, value.to_string(), human);
}

fn emit_raw(json: bool, json_text: String, human: String) {
    if json {
        println!("{json_text}");
    } else {
        println!("{human}");
    }
}

fn write_certificate(path: &Path, cert: &Certificate) -> Result<()> {
    let text = serde_json::to_string_pretty(cert)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn reason_text(r: FalseReason) -> &'static str {
    match r {
        FalseReason::Disconnected => "disconnected",
        FalseReason::BadParity => "bad parity",
        FalseReason::AllDegreesEven => "all degrees even",
    }
}

fn cmd_check(a: CheckArgs, json: bool) -> Result<u8> {
    let g = load_graph(&a.input.input)?;
    match a.method {
        Method::Exact => match find_good_ordering(&g)? {
            Some(ord) => {
                verify_good_ordering(&g, &ord)
                    .context("internal: produced ordering fails verification")?;
                let cert = Certificate::Ordering {
                    ordering: ord.order,
                    indegrees: ord.indegrees,
                };
                emit(
                    json,
                    json!({"dual_critical": true, "method": "exact", "certificate": cert}),
                    format!("dual-critical\ncertificate: {}", serde_json::to_string(&cert)?),
                );
                Ok(EXIT_OK)
            }
            None => {
                emit(
                    json,
                    json!({"dual_critical": false, "method": "exact"}),
                    "not dual-critical".to_string(),
                );
                Ok(EXIT_FALSE)
            }
        },
        Method::Szegedy => {
            let seed = effective_seed(a.seed)?;
            let variant = a.variant.to_variant();
            let verdict = szegedy_is_dc(&g, variant, seed, a.trials)?;
            match verdict {
                SzegedyVerdict::True { evidence } => {
                    let how = match &evidence {
                        Some(_) => "determinant nonzero at a sampled point",
                        None => "tree case, no determinant needed",
                    };
                    emit(
                        json,
                        json!({
                            "dual_critical": true,
                            "method": "szegedy",
                            "variant": variant.to_string(),
                            "evidence": how,
                        }),
                        format!("dual-critical ({how})"),
                    );
                    Ok(EXIT_OK)
                }
                SzegedyVerdict::FalseCertain { reason } => {
                    emit(
                        json,
                        json!({
                            "dual_critical": false,
                            "method": "szegedy",
                            "variant": variant.to_string(),
                            "certain": true,
                            "reason": reason_text(reason),
                        }),
                        format!("not dual-critical: {}", reason_text(reason)),
                    );
                    Ok(EXIT_FALSE)
                }
                SzegedyVerdict::FalseWhp { evidence } => {
                    emit(
                        json,
                        json!({
                            "dual_critical": false,
                            "method": "szegedy",
                            "variant": variant.to_string(),
                            "certain": false,
                            "false_negative_bound": evidence.error_bound(),
                        }),
                        format!(
                            "not dual-critical with high probability \
                             (false-negative bound {:.3e})",
                            evidence.error_bound()
                        ),
                    );
                    Ok(EXIT_FALSE)
                }
            }
        }
    }
}

fn parse_ids(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .with_context(|| format!("bad vertex id {p:?}"))
        })
        .collect()
}

fn cmd_todd(a: ToddArgs, json: bool) -> Result<u8> {
    let g = load_graph(&a.input.input)?;
    let ids = parse_ids(&a.t)?;
    let target = VertexSet::from_iter(g.n(), ids.iter().copied())?;
    match find_t_odd_ordering(&g, &target)? {
        Some(ord) => {
            verify_t_odd_ordering(&g, &ord)
                .context("internal: produced ordering fails verification")?;
            let cert = Certificate::TOdd {
                ordering: ord.order,
                indegrees: ord.indegrees,
                target: ord.target,
            };
            emit(
                json,
                json!({"t_odd": true, "certificate": cert}),
                format!(
                    "T-odd orientation exists\ncertificate: {}",
                    serde_json::to_string(&cert)?
                ),
            );
            Ok(EXIT_OK)
        }
        None => {
            emit(
                json,
                json!({"t_odd": false, "target": ids}),
                "no acyclic orientation has odd indegree exactly on T".to_string(),
            );
            Ok(EXIT_FALSE)
        }
    }
}

fn cmd_sdc(a: InArg, json: bool) -> Result<u8> {
    let g = load_graph(&a.input)?;
    if is_super_dual_critical(&g)? {
        // One good ordering per deletion. Ids above the deleted vertex shift
        // down by one in the remaining graph.
        let mut witnesses = Vec::with_capacity(g.n());
        let mut human = String::from("super-dual-critical");
        for v in 0..g.n() {
            let h = g.delete_vertex(v);
            let ord = find_good_ordering(&h)?
                .ok_or_else(|| anyhow!("internal: deleting {v} leaves no good ordering"))?;
            verify_good_ordering(&h, &ord)
                .context("internal: produced ordering fails verification")?;
            human.push_str(&format!("\ndelete {v}: ordering {:?}", ord.order));
            witnesses.push(json!({
                "deleted": v,
                "ordering": ord.order,
                "indegrees": ord.indegrees,
            }));
        }
        emit(
            json,
            json!({
                "super_dual_critical": true,
                "labels": "orderings use the deleted graph's ids; ids above the deleted vertex shift down by one",
                "witnesses": witnesses,
            }),
            human,
        );
        Ok(EXIT_OK)
    } else {
        let mut failing: Option<usize> = None;
        if g.n() >= 2 && g.n() <= 27 {
            for v in 0..g.n() {
                if find_good_ordering(&g.delete_vertex(v))?.is_none() {
                    failing = Some(v);
                    break;
                }
            }
        }
        let human = match failing {
            Some(v) => format!("not super-dual-critical: deleting vertex {v} breaks it"),
            None => "not super-dual-critical".to_string(),
        };
        emit(
            json,
            json!({"super_dual_critical": false, "failing_vertex": failing}),
            human,
        );
        Ok(EXIT_FALSE)
    }
}

fn cmd_kpart(a: KpartArgs, json: bool) -> Result<u8> {
    let g = load_graph(&a.input.input)?;
    match fpt_kdc(&g, a.k)? {
        Some(p) => {
            ensure!(
                verify_good_partition(&g, &p)?,
                "internal: produced partition fails verification"
            );
            let cert = Certificate::Partition {
                classes: p.to_vecs(),
            };
            emit(
                json,
                json!({"k_dual_critical": true, "k": a.k, "certificate": cert}),
                format!(
                    "good {}-partition exists\ncertificate: {}",
                    a.k,
                    serde_json::to_string(&cert)?
                ),
            );
            Ok(EXIT_OK)
        }
        None => {
            emit(
                json,
                json!({"k_dual_critical": false, "k": a.k}),
                format!("no good {}-partition", a.k),
            );
            Ok(EXIT_FALSE)
        }
    }
}

fn cmd_kernel(a: KernelArgs, json: bool) -> Result<u8> {
    let g = load_graph(&a.input.input)?;
    match kernelize(&g, a.k)? {
        KernelResult::Partition(p) => {
            ensure!(
                verify_good_partition(&g, &p)?,
                "internal: produced partition fails verification"
            );
            let cert = Certificate::Partition {
                classes: p.to_vecs(),
            };
            if let Some(path) = &a.out {
                write_certificate(path, &cert)?;
            }
            emit(
                json,
                json!({"decided": true, "k_dual_critical": true, "k": a.k, "certificate": cert}),
                format!(
                    "decided while kernelizing: good {}-partition exists\ncertificate: {}",
                    a.k,
                    serde_json::to_string(&cert)?
                ),
            );
            Ok(EXIT_OK)
        }
        KernelResult::Kernel { kernel, removals } => {
            let rounds = removals.len();
            let cert = Certificate::Kernel {
                k: a.k,
                kernel: kernel.clone(),
                removals,
            };
            ensure!(
                verify_certificate(&g, &cert)?,
                "internal: kernel replay fails verification"
            );
            if let Some(path) = &a.out {
                write_certificate(path, &cert)?;
            }
            emit(
                json,
                json!({
                    "decided": false,
                    "k": a.k,
                    "kernel": kernel,
                    "kernel_size": kernel.len(),
                    "removal_rounds": rounds,
                    "certificate": cert,
                }),
                format!(
                    "kernel of {} vertices after {} removal rounds; decision deferred to the kernel\nkernel: {:?}",
                    kernel.len(),
                    rounds,
                    kernel
                ),
            );
            Ok(EXIT_OK)
        }
    }
}

fn cmd_maxdc(a: MaxdcArgs, json: bool) -> Result<u8> {
    let g = load_graph(&a.input.input)?;
    let r = maxdc(&g)?;
    let p = fpt_kdc(&g, r.maxdc)?
        .ok_or_else(|| anyhow!("internal: no partition at the reported maximum"))?;
    ensure!(
        verify_good_partition(&g, &p)?,
        "internal: produced partition fails verification"
    );
    let cert = Certificate::Partition {
        classes: p.to_vecs(),
    };
    if let Some(path) = &a.out {
        write_certificate(path, &cert)?;
    }
    emit_raw(
        json,
        serde_json::to_string(&r)?,
        format!(
            "maxdc = {}\ncontractions needed: {}\nwitness: {}",
            r.maxdc,
            r.contractions_needed,
            serde_json::to_string(&cert)?
        ),
    );
    Ok(EXIT_OK)
}

fn cmd_cubic(a: InArg, json: bool) -> Result<u8> {
    let g = load_graph(&a.input)?;
    let inst = CubicInstance::new(g)?;
    let report = inst.cubic_suite()?;
    let witness = |w: &Option<Vec<usize>>| match w {
        Some(ids) => format!("yes, witness {ids:?}"),
        None => "no".to_string(),
    };
    let human = format!(
        "cubic instance: n = {}, k = {}\n\
         dual-critical: {}\n\
         independent connected deletion set: {}\n\
         deletion set leaving a forest: {}\n\
         independent set with tree complement: {}\n\
         spanning tree with even leftover components: {}\n\
         rooted odd orientation from every root: {}\n\
         partition inequality: {}\n\
         {}: unanimity {}",
        report.n,
        report.k,
        report.dual_critical,
        witness(&report.independent_connected),
        witness(&report.deletion_forest),
        witness(&report.independent_tree),
        witness(&report.spanning_tree_even_components),
        report.rooted_odd_orientation,
        match &report.partition_inequality_violation {
            Some(p) => format!("violated by {p:?}"),
            None => "holds".to_string(),
        },
        report.upper_embeddability,
        report.unanimous(),
    );
    emit_raw(json, serde_json::to_string(&report)?, human);
    Ok(if report.dual_critical {
        EXIT_OK
    } else {
        EXIT_FALSE
    })
}

fn cmd_planar(a: PlanarArgs, json: bool) -> Result<u8> {
    let rs = parse_rotation(&load_text(&a.input)?)?;
    let faces = match rs.trace_faces() {
        Ok(f) => f,
        Err(e @ Error::NonPlanar { .. }) => {
            emit(
                json,
                json!({"planar": false, "message": e.to_string()}),
                format!("not a sphere embedding: {e}"),
            );
            return Ok(EXIT_FALSE);
        }
        Err(e) => return Err(e.into()),
    };
    let dual = rs.dual_graph()?;
    if let Some(path) = &a.dual_out {
        let text = serialize_rotation(&rs.dual_rotation_system()?);
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    match a.check {
        None => {
            emit(
                json,
                json!({
                    "planar": true,
                    "n": rs.graph().n(),
                    "m": rs.graph().m(),
                    "faces": faces.len(),
                    "dual": {"n": dual.n(), "m": dual.m(), "edges": dual.edges()},
                }),
                format!(
                    "sphere embedding: n = {}, m = {}, faces = {}\ndual edges: {:?}",
                    rs.graph().n(),
                    rs.graph().m(),
                    faces.len(),
                    dual.edges()
                ),
            );
            Ok(EXIT_OK)
        }
        Some(PlanarCheck::Duality) => {
            let report = rs.duality_check()?;
            ensure!(
                report.consistent(),
                "internal: criticality duality violated"
            );
            emit(
                json,
                json!({
                    "planar": true,
                    "faces": faces.len(),
                    "duality": report,
                }),
                format!(
                    "primal: dual-critical = {}, factor-critical = {}\n\
                     dual:   dual-critical = {}, factor-critical = {}\n\
                     factor-critical primal implies dual-critical dual: {}\n\
                     dual-critical primal implies factor-critical dual: {}",
                    report.primal_dc,
                    report.primal_fc,
                    report.dual_dc,
                    report.dual_fc,
                    report.fc_primal_implies_dc_dual(),
                    report.dc_primal_implies_fc_dual(),
                ),
            );
            Ok(EXIT_OK)
        }
    }
}

fn cmd_audit(a: AuditArgs, json: bool) -> Result<u8> {
    let seed = effective_seed(a.seed)?;
    let variants: Vec<Variant> = match a.variant {
        AuditVariantArg::Both => vec![Variant::LiteralDiagonal, Variant::ZeroDiagonal],
        AuditVariantArg::Literal => vec![Variant::LiteralDiagonal],
        AuditVariantArg::Zerodiag => vec![Variant::ZeroDiagonal],
    };
    let report = audit_against_exact(a.nmax, &variants, seed, a.trials)?;
    if let Some(path) = &a.out {
        let text = serde_json::to_string_pretty(&report)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let mut human = format!(
        "{} connected simple graphs with 1 <= n <= {}",
        report.connected_graphs, report.n_max
    );
    for t in &report.tallies {
        human.push_str(&format!(
            "\n{}: {}/{} agree with exact, {} false positives, {} false negatives",
            t.variant, t.agreements, t.graphs, t.false_trues, t.false_falses
        ));
    }
    human.push_str(&format!(
        "\nall discrepancies listed: {}",
        report.disagreements_fully_listed()
    ));
    emit_raw(json, serde_json::to_string(&report)?, human);
    Ok(EXIT_OK)
}

fn output_graph(g: &MultiGraph, out: &OutArg, json: bool) -> Result<()> {
    let text = serialize_graph(g);
    if let Some(path) = &out.out {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if json {
        println!(
            "{}",
            json!({"n": g.n(), "m": g.m(), "edges": g.edges()})
        );
    } else if let Some(path) = &out.out {
        println!(
            "wrote {} ({} vertices, {} edges)",
            path.display(),
            g.n(),
            g.m()
        );
    } else {
        print!("{text}");
    }
    Ok(())
}

fn cmd_gen(a: GenArgs, json: bool) -> Result<u8> {
    match a.kind {
        GenKind::Random { n, m, seed, out } => {
            let g = random_multigraph(n, m, effective_seed(seed)?)?;
            output_graph(&g, &out, json)?;
        }
        GenKind::Dc { n, seed, out } => {
            let g = random_dual_critical(n, effective_seed(seed)?)?;
            // The construction order is the certificate: vertex i arrives
            // with an odd number of edges to 0..i.
            let mut indeg = vec![0usize; g.n()];
            for &(u, v) in g.edges() {
                indeg[u.max(v)] += 1;
            }
            ensure!(
                indeg.iter().skip(1).all(|d| d % 2 == 1),
                "internal: generated graph misses an odd back-degree"
            );
            output_graph(&g, &out, json)?;
        }
        GenKind::Cubic { n, seed, out } => {
            let g = random_cubic(n, effective_seed(seed)?)?;
            output_graph(&g, &out, json)?;
        }
        GenKind::EvencliqueIsolates {
            clique,
            isolates,
            out,
        } => {
            let g = even_clique_plus_isolates(clique, isolates)?;
            output_graph(&g, &out, json)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_simplify(a: SimplifyArgs, json: bool) -> Result<u8> {
    let g = load_graph(&a.input.input)?;
    let s = normalize_to_simple(&g);
    output_graph(&s, &a.out, json)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, json: bool) -> Result<u8> {
    let g = load_graph(&a.input.input)?;
    let text = load_text(&a.cert)?;
    let cert: Certificate =
        serde_json::from_str(&text).context("parsing certificate JSON")?;
    let ok = verify_certificate(&g, &cert)?;
    emit(
        json,
        json!({"valid": ok, "kind": cert.kind()}),
        format!(
            "{} certificate {}",
            cert.kind(),
            if ok { "verifies" } else { "is invalid" }
        ),
    );
    Ok(if ok { EXIT_OK } else { EXIT_FALSE })
}
