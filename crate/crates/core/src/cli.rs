//! Command-line front end. Every command prints one JSON certificate.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::certificate::{verify, BijectionInstance, Certificate, Exhaustion, Outcome, Witness};
use crate::constructions::{
    ach_bound, ach_counterexample, claim51_hypergraph, claim51_matching, duplicate_part, projective_plane,
    truncated_plane,
};
use crate::error::{Error, Result};
use crate::factor::{
    chi_r_report, cover_search, galaxy_cover, k11_cover, max_coverable_edges, random_factor_with, union_graphs,
    walecki_decomposition, CoverMode, Properness, COVER_SYMMETRY_SCHEME, DEFAULT_DELTA0,
};
use crate::graph::{chromatic_number, clique_number, k_core, Graph};
use crate::hypergraph::{
    chromatic_index, disjoint_copies, factors_to_hypergraph, hypergraph_to_factors, line_graph, max_matching,
    PartiteHypergraph,
};
use crate::ramsey::{
    closed_form_c_k_with, compute_c_k, mono_free_search, ForbiddenFamily, SearchOptions, COLORING_SYMMETRY_SCHEME,
};
use crate::search::{Budget, Existence, DEFAULT_NODE_BUDGET};

#[derive(Parser, Debug)]
#[command(
    name = "ramsey-nice",
    version,
    about = "Exact Ramsey-niceness, triangle-factor and hypergraph matching searches with JSON certificates"
)]
struct Cli {
    /// Node budget per search (accepts forms like 1e8)
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = parse_count)]
    budget: u64,
    /// Worker threads for the coloring search; the budget applies per shard
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Threshold above which r = 2 (mod 3) is treated as settled
    #[arg(long, global = true, default_value_t = DEFAULT_DELTA0, value_parser = parse_count)]
    delta0: u64,
    /// Seed for randomly generated instances
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Record zero elapsed time so certificates are byte-stable
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(f) if f >= 0.0 && f.fract() == 0.0 && f <= u64::MAX as f64 => Ok(f as u64),
        _ => Err(format!("{s:?} is not a nonnegative integer")),
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file in the text format ("n m" then m lines "u v")
    #[arg(long)]
    graph: Option<PathBuf>,
    /// complete:N, cycle:N, path:N, star:N, empty:N or petersen
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Chromatic number with an optimal coloring
    Chi(GraphSource),
    /// Clique number with a maximum clique
    Clique(GraphSource),
    /// d-core and elimination order
    Core {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        d: usize,
    },
    /// Mono-free colorings of K_n: c_k with --cap, or existence at --n
    Ramsey {
        #[arg(long)]
        family: String,
        #[arg(long)]
        colors: usize,
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        cap: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Known closed form for c_k of a family
    ClosedForm {
        #[arg(long)]
        family: String,
        #[arg(long)]
        colors: u64,
    },
    /// Cover or decompose K_n by r triangle factors
    Cover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        proper: bool,
        #[arg(long)]
        decomposition: bool,
    },
    /// Most edges of K_n covered by r generalized factors
    MaxCover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// k edge-disjoint Hamilton cycles of K_{2k+1}
    Walecki {
        #[arg(long)]
        k: usize,
    },
    /// k+1 galaxies covering K_{2k}
    Galaxy {
        #[arg(long)]
        k: usize,
    },
    /// Six generalized factors covering K_11
    K11,
    /// Bounds on the chromatic number of a union of r triangle factors
    ChiR {
        #[arg(long)]
        r: u64,
    },
    /// Random checks of the factor/hypergraph correspondence
    Bijection {
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        /// Largest number of triangles per factor
        #[arg(long, default_value_t = 4)]
        max_triangles: usize,
    },
    /// Maximum matching of a hypergraph file
    Match {
        #[arg(long)]
        hypergraph: PathBuf,
    },
    /// Chromatic index of a hypergraph file
    ChromaticIndex {
        #[arg(long)]
        hypergraph: PathBuf,
    },
    /// Counterexample to the conjectured matching bound
    Ach {
        #[arg(long)]
        d: usize,
        /// Number of disjoint copies
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Projective plane of prime order
    Plane {
        #[arg(long)]
        p: usize,
    },
    /// Projective plane minus a point, as a partite hypergraph
    TruncatedPlane {
        #[arg(long)]
        p: usize,
    },
    /// (p+2)-partite hypergraph of degree p^2 m with matching number m
    Claim51 {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        m: usize,
        /// Replace this part by several identical copies
        #[arg(long, requires = "copies")]
        duplicate_part: Option<usize>,
        #[arg(long, requires = "duplicate_part")]
        copies: Option<usize>,
    },
    /// Re-check a certificate without searching
    Verify { certificate: PathBuf },
}

/// Runs the CLI and returns the exit code: 0 definitive, 2 unknown, 1 error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    if let Cmd::Verify { certificate } = &cli.cmd {
        return verify_file(certificate, out, err);
    }
    let ctx = Ctx {
        budget: Budget::new(cli.budget),
        threads: cli.threads,
        delta0: cli.delta0,
        seed: cli.seed,
        deterministic: cli.deterministic,
        start: Instant::now(),
    };
    match execute(&ctx, &cli.cmd) {
        Ok(cert) => {
            let mut cert = cert;
            cert.stats.elapsed_ms = if ctx.deterministic { 0 } else { ctx.start.elapsed().as_millis() as u64 };
            let cert = cert.seal();
            let _ = write!(out, "{}", cert.to_json());
            if !cert.verdict.verified {
                let _ = writeln!(err, "error[VERIFY_FAILED]: {}", cert.verdict.failure.as_deref().unwrap_or(""));
                1
            } else if cert.outcome == Outcome::Unknown {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            1
        }
    }
}

fn verify_file(path: &PathBuf, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
        .and_then(|t| Certificate::from_json(&t))
        .and_then(|c| verify(&c).map(|checks| (c, checks)));
    match result {
        Ok((c, checks)) => {
            let report = json!({"verified": true, "command": c.command, "outcome": c.outcome, "checks": checks});
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"));
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            1
        }
    }
}

struct Ctx {
    budget: Budget,
    threads: Option<usize>,
    delta0: u64,
    seed: u64,
    deterministic: bool,
    start: Instant,
}

impl Ctx {
    fn cert(&self, command: &str, params: Value, outcome: Outcome) -> Certificate {
        let params: BTreeMap<String, Value> = match params {
            Value::Object(m) => m.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        let mut c = Certificate::new(command, params, outcome, self.delta0);
        c.params.insert("budget".into(), json!(self.budget.max_nodes));
        c
    }

    /// Converts budget exhaustion into an UNKNOWN certificate.
    fn unknown(&self, mut cert: Certificate, e: Error) -> Result<Certificate> {
        match e {
            Error::BudgetExceeded { nodes, lower, upper } => {
                cert.outcome = Outcome::Unknown;
                cert.value = Some(json!({"lower": lower, "upper": upper}));
                cert.witness = None;
                cert.stats.nodes = nodes;
                Ok(cert)
            }
            other => Err(other),
        }
    }
}

fn load_graph(src: &GraphSource) -> Result<(String, Graph)> {
    if let Some(path) = &src.graph {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return Ok((path.display().to_string(), Graph::parse_text(&text)?));
    }
    let name = src.builtin.clone().expect("clap enforces one source");
    let g = builtin_graph(&name)?;
    Ok((name, g))
}

fn builtin_graph(name: &str) -> Result<Graph> {
    if name.eq_ignore_ascii_case("petersen") {
        return Ok(Graph::petersen());
    }
    let (kind, n) = name.split_once(':').ok_or_else(|| Error::Parse(format!("unknown builtin graph {name:?}")))?;
    let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad size in {name:?}")))?;
    match kind.to_ascii_lowercase().as_str() {
        "complete" => Graph::complete(n),
        "cycle" => Graph::cycle(n),
        "path" => Graph::path(n),
        "star" => Graph::star(n),
        "empty" => Graph::empty(n),
        _ => Err(Error::Parse(format!("unknown builtin graph {name:?}"))),
    }
}

fn load_hypergraph(path: &PathBuf) -> Result<PartiteHypergraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    PartiteHypergraph::parse_text(&text, true)
}

fn family(spec: &str) -> Result<ForbiddenFamily> {
    ForbiddenFamily::parse(spec)
}

fn texts(gs: &[Graph]) -> Vec<String> {
    gs.iter().map(Graph::to_text).collect()
}

fn execute(ctx: &Ctx, cmd: &Cmd) -> Result<Certificate> {
    match cmd {
        Cmd::Chi(src) => {
            let (name, g) = load_graph(src)?;
            let mut cert = ctx.cert("chi", json!({"graph": name}), Outcome::Value);
            match chromatic_number(&g, ctx.budget) {
                Ok(ch) => {
                    cert.value = Some(json!(ch.value));
                    cert.witness = Some(Witness::VertexColoring { graph: g.to_text(), colors: ch.witness.colors });
                    cert.stats.nodes = ch.stats.nodes;
                    Ok(cert)
                }
                Err(e) => ctx.unknown(cert, e),
            }
        }
        Cmd::Clique(src) => {
            let (name, g) = load_graph(src)?;
            let mut cert = ctx.cert("clique", json!({"graph": name}), Outcome::Value);
            match clique_number(&g, ctx.budget) {
                Ok(cl) => {
                    cert.value = Some(json!(cl.value));
                    cert.witness = Some(Witness::Clique { graph: g.to_text(), vertices: cl.vertices });
                    cert.stats.nodes = cl.stats.nodes;
                    Ok(cert)
                }
                Err(e) => ctx.unknown(cert, e),
            }
        }
        Cmd::Core { source, d } => {
            let (name, g) = load_graph(source)?;
            let core = k_core(&g, *d);
            let mut cert = ctx.cert("core", json!({"graph": name, "d": d}), Outcome::Value);
            cert.value = Some(json!(core.vertices.len()));
            cert.witness = Some(Witness::Core {
                graph: g.to_text(),
                core_vertices: core.vertices,
                elimination_order: core.elimination_order,
            });
            Ok(cert)
        }
        Cmd::Ramsey { family: spec, colors, cap, n } => {
            let fam = family(spec)?;
            let opts = SearchOptions { budget: ctx.budget, relabel: None, threads: ctx.threads };
            let fam_text = fam.spec_string();
            if let Some(cap) = cap {
                let params = json!({"family": fam_text, "colors": colors, "cap": cap});
                let mut cert = ctx.cert("ramsey", params, Outcome::Value);
                cert.symmetry_scheme = Some(COLORING_SYMMETRY_SCHEME.into());
                match compute_c_k(&fam, *colors, *cap, &opts) {
                    Ok(r) => {
                        cert.value = Some(json!(r.value));
                        cert.witness = Some(Witness::EdgeColoring { family: fam_text, coloring: r.witness.to_text() });
                        cert.stats.nodes = r.total_nodes;
                        cert.exhaustion = Some(Exhaustion { n: r.value + 1, nodes: r.exhaustion_stats.nodes });
                        Ok(cert)
                    }
                    Err(e) => ctx.unknown(cert, e),
                }
            } else {
                let n = n.expect("clap requires --cap or --n");
                let params = json!({"family": fam_text, "colors": colors, "n": n});
                let mut cert = ctx.cert("ramsey", params, Outcome::Exists);
                cert.symmetry_scheme = Some(COLORING_SYMMETRY_SCHEME.into());
                let r = mono_free_search(n, *colors, &fam, &opts)?;
                cert.stats.nodes = r.stats.nodes;
                match r.outcome {
                    Existence::Found(col) => {
                        cert.witness = Some(Witness::EdgeColoring { family: fam_text, coloring: col.to_text() })
                    }
                    Existence::NotFound => cert.outcome = Outcome::NotExists,
                    Existence::Unknown => cert.outcome = Outcome::Unknown,
                }
                Ok(cert)
            }
        }
        Cmd::ClosedForm { family: spec, colors } => {
            let fam = family(spec)?;
            let params = json!({"family": fam.spec_string(), "colors": colors});
            let cf = closed_form_c_k_with(&fam, *colors, ctx.delta0);
            let mut cert =
                ctx.cert("closed-form", params, if cf.is_some() { Outcome::Value } else { Outcome::Unknown });
            cert.value = cf
                .map(|f| json!({"value": f.value, "asymptotic_only": f.asymptotic_only, "conditional": f.conditional}));
            Ok(cert)
        }
        Cmd::Cover { n, r, proper, decomposition } => {
            let properness = if *proper { Properness::Proper } else { Properness::Generalized };
            let mode = if *decomposition { CoverMode::Decomposition } else { CoverMode::Cover };
            let params = json!({"n": n, "r": r, "proper": proper, "decomposition": decomposition});
            let mut cert = ctx.cert("cover", params, Outcome::Exists);
            cert.symmetry_scheme = Some(COVER_SYMMETRY_SCHEME.into());
            let res = cover_search(*n, *r, properness, mode, ctx.budget)?;
            cert.stats.nodes = res.stats.nodes;
            match res.outcome {
                Existence::Found(fc) => cert.witness = Some(Witness::Factors { n: *n, factors: texts(fc.factors()) }),
                Existence::NotFound => cert.outcome = Outcome::NotExists,
                Existence::Unknown => cert.outcome = Outcome::Unknown,
            }
            Ok(cert)
        }
        Cmd::MaxCover { n, r } => {
            let mut cert = ctx.cert("max-cover", json!({"n": n, "r": r}), Outcome::Value);
            match max_coverable_edges(*n, *r, ctx.budget) {
                Ok(mc) => {
                    cert.value = Some(json!(mc.value));
                    cert.witness = Some(Witness::Factors { n: *n, factors: texts(&mc.witness) });
                    cert.stats.nodes = mc.stats.nodes;
                    cert.symmetry_scheme = Some(COVER_SYMMETRY_SCHEME.into());
                    Ok(cert)
                }
                Err(e) => ctx.unknown(cert, e),
            }
        }
        Cmd::Walecki { k } => {
            let cycles = walecki_decomposition(*k)?;
            let mut cert = ctx.cert("walecki", json!({"k": k}), Outcome::Exists);
            cert.witness = Some(Witness::Factors { n: 2 * k + 1, factors: texts(&cycles) });
            Ok(cert)
        }
        Cmd::Galaxy { k } => {
            let gs = galaxy_cover(*k)?;
            let mut cert = ctx.cert("galaxy", json!({"k": k}), Outcome::Exists);
            cert.witness = Some(Witness::Factors { n: 2 * k, factors: texts(&gs) });
            Ok(cert)
        }
        Cmd::K11 => {
            let fc = k11_cover()?;
            let mut cert = ctx.cert("k11", json!({}), Outcome::Exists);
            cert.witness = Some(Witness::Factors { n: 11, factors: texts(fc.factors()) });
            Ok(cert)
        }
        Cmd::ChiR { r } => {
            let rep = chi_r_report(*r, ctx.delta0)?;
            let mut cert = ctx.cert("chi-r", json!({"r": r}), Outcome::Value);
            cert.value = Some(serde_json::to_value(rep).expect("serializable"));
            Ok(cert)
        }
        Cmd::Bijection { instances, max_r, max_triangles } => bijection(ctx, *instances, *max_r, *max_triangles),
        Cmd::Match { hypergraph } => {
            let h = load_hypergraph(hypergraph)?;
            let mut cert = ctx.cert("match", json!({"hypergraph": hypergraph.display().to_string()}), Outcome::Value);
            match max_matching(&h, ctx.budget) {
                Ok(mm) => {
                    cert.value = Some(json!(mm.size));
                    cert.stats.nodes = mm.stats.nodes;
                    cert.witness = Some(hyper_witness(&h, Some(mm.witness.edges), None, None));
                    Ok(cert)
                }
                Err(e) => ctx.unknown(cert, e),
            }
        }
        Cmd::ChromaticIndex { hypergraph } => {
            let h = load_hypergraph(hypergraph)?;
            let params = json!({"hypergraph": hypergraph.display().to_string()});
            let mut cert = ctx.cert("chromatic-index", params, Outcome::Value);
            match chromatic_index(&h, ctx.budget) {
                Ok(ch) => {
                    cert.value = Some(json!(ch.value));
                    cert.stats.nodes = ch.stats.nodes;
                    cert.witness = Some(hyper_witness(&h, None, None, Some(ch.witness.colors)));
                    Ok(cert)
                }
                Err(e) => ctx.unknown(cert, e),
            }
        }
        Cmd::Ach { d, copies } => {
            let (base, labeling) = ach_counterexample(*d)?;
            let h = disjoint_copies(&base, *copies)?;
            let labels: Vec<usize> =
                (0..*copies).flat_map(|c| labeling.labels.iter().map(move |&l| c * d + l)).collect();
            let mut cert = ctx.cert("ach", json!({"d": d, "copies": copies}), Outcome::Exists);
            let mm = match max_matching(&h, ctx.budget) {
                Ok(mm) => mm,
                Err(e) => return ctx.unknown(cert, e),
            };
            let n = h.part_sizes()[0];
            let bound = ach_bound(*d as u64, n as u64)?;
            let ratio = num_rational::Ratio::new(mm.size, n);
            cert.value = Some(json!({
                "d": d,
                "n": n,
                "max_matching": mm.size,
                "conjectured_bound": bound,
                "matching_over_n": ratio.to_string(),
                "refutes_conjecture": (mm.size as u64) < bound,
            }));
            cert.stats.nodes = mm.stats.nodes;
            cert.witness = Some(hyper_witness(&h, Some(mm.witness.edges), Some(labels), None));
            Ok(cert)
        }
        Cmd::Plane { p } => {
            let plane = projective_plane(*p)?;
            let mut cert = ctx.cert("plane", json!({"p": p}), Outcome::Exists);
            cert.value = Some(json!({"points": plane.point_count(), "lines": plane.lines.len(), "line_size": p + 1}));
            cert.witness = Some(Witness::Plane { p: *p, lines: plane.lines });
            Ok(cert)
        }
        Cmd::TruncatedPlane { p } => {
            let h = truncated_plane(*p)?;
            let mut cert = ctx.cert("truncated-plane", json!({"p": p}), Outcome::Exists);
            cert.value = Some(json!({"parts": p + 1, "part_size": p, "edges": h.edges().len(), "degree": p}));
            cert.witness = Some(hyper_witness(&h, None, None, None));
            Ok(cert)
        }
        Cmd::Claim51 { p, m, duplicate_part: dup, copies } => {
            let h = claim51_hypergraph(*p, *m)?;
            let matching =
                claim51_matching(&h, *p, *m).ok_or_else(|| Error::VerifyFailed("no matching of size m".into()))?;
            let mut params = json!({"p": p, "m": m});
            let h = match (dup, copies) {
                (Some(part), Some(c)) => {
                    params["duplicate_part"] = json!(part);
                    params["copies"] = json!(c);
                    duplicate_part(&h, *part, *c)?
                }
                _ => h,
            };
            let mut cert = ctx.cert("claim51", params, Outcome::Exists);
            cert.value = Some(json!({
                "uniformity": h.r(),
                "degree": p * p * m,
                "max_matching": m,
                "covered_fraction": format!("1/{p}"),
            }));
            cert.witness = Some(hyper_witness(&h, Some(matching.edges), None, None));
            Ok(cert)
        }
        Cmd::Verify { .. } => unreachable!("handled before dispatch"),
    }
}

fn hyper_witness(
    h: &PartiteHypergraph,
    matching: Option<Vec<usize>>,
    labels: Option<Vec<usize>>,
    edge_coloring: Option<Vec<usize>>,
) -> Witness {
    Witness::Hypergraph { hypergraph: h.to_text(), matching, labels, edge_coloring }
}

fn bijection(ctx: &Ctx, count: usize, max_r: usize, max_t: usize) -> Result<Certificate> {
    if max_r == 0 || max_t == 0 || 3 * max_t > crate::graph::MAX_VERTICES {
        return Err(Error::Invalid("max-r and max-triangles must be positive and fit 64 vertices".into()));
    }
    let params = json!({"instances": count, "max_r": max_r, "max_triangles": max_t, "seed": ctx.seed});
    let mut cert = ctx.cert("bijection", params, Outcome::Value);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut out = Vec::with_capacity(count);
    let mut nodes = 0;
    for i in 0..count {
        let r = rng.random_range(1..=max_r);
        let n = 3 * rng.random_range(1..=max_t);
        let factors: Vec<Graph> =
            (0..r).map(|_| random_factor_with(n, Properness::Proper, &mut rng)).collect::<Result<_>>()?;
        let h = factors_to_hypergraph(&factors)?;
        let union = union_graphs(n, &factors);
        let fail = |what: &str| Error::VerifyFailed(format!("instance {i}: {what}"));
        if line_graph(&h)? != union {
            return Err(fail("line graph differs from the union"));
        }
        if hypergraph_to_factors(&h)? != factors {
            return Err(fail("round trip changed the factors"));
        }
        let chi = match chromatic_number(&union, ctx.budget) {
            Ok(c) => c,
            Err(e) => return ctx.unknown(cert, e),
        };
        let index = match chromatic_index(&h, ctx.budget) {
            Ok(c) => c,
            Err(e) => return ctx.unknown(cert, e),
        };
        if chi.value != index.value {
            return Err(fail("chromatic number and chromatic index differ"));
        }
        nodes += chi.stats.nodes + index.stats.nodes;
        out.push(BijectionInstance {
            factors: texts(&factors),
            hypergraph: h.to_text(),
            chromatic: chi.value,
            coloring: chi.witness.colors,
        });
    }
    let max_chi = out.iter().map(|i| i.chromatic).max().unwrap_or(0);
    cert.value = Some(json!({"instances": count, "max_chromatic": max_chi}));
    cert.stats.nodes = nodes;
    cert.witness = Some(Witness::Bijection { instances: out });
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ramsey-nice").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_parser() {
        assert_eq!(parse_count("1e8"), Ok(100_000_000));
        assert_eq!(parse_count("42"), Ok(42));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_graph("complete:4").unwrap().edge_count(), 6);
        assert_eq!(builtin_graph("Petersen").unwrap().edge_count(), 15);
        assert!(builtin_graph("wheel:5").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = run_capture(&["cover", "--n", "6"]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("cover"));
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let (code, out, _) = run_capture(&["--budget", "3", "ramsey", "--family", "P4", "--colors", "3", "--n", "6"]);
        assert_eq!(code, 2);
        assert!(out.contains("\"UNKNOWN\""));
    }
}
