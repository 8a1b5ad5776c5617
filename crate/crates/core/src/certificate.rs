//! Self-describing JSON certificates and their payload-only verifier.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{
    ach_bound, verify_ach, verify_claim51, verify_truncated_plane, AchLabeling, ProjectivePlane,
};
use crate::error::{Error, Result};
use crate::factor::{
    chi_r_report, classify_factor, is_galaxy, union_graphs, verify_hamilton_decomposition, CoverMode, FactorClass,
    FactorCover, Properness,
};
use crate::graph::{Graph, VertexColoring};
use crate::hypergraph::{factors_to_hypergraph, line_graph, regularity, Matching, PartiteHypergraph};
use crate::ramsey::{closed_form_c_k_with, verify_mono_free, EdgeColoring, ForbiddenFamily};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Exists,
    NotExists,
    Value,
    Unknown,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

/// Search effort spent proving nonexistence at `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub n: usize,
    pub nodes: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verified: bool,
    pub checks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionInstance {
    pub factors: Vec<String>,
    pub hypergraph: String,
    pub chromatic: usize,
    /// Proper coloring of the union, equally a proper edge coloring of the hypergraph.
    pub coloring: Vec<usize>,
}

/// Witness payloads; graphs and hypergraphs use their text formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    VertexColoring {
        graph: String,
        colors: Vec<usize>,
    },
    Clique {
        graph: String,
        vertices: Vec<usize>,
    },
    Core {
        graph: String,
        core_vertices: Vec<usize>,
        elimination_order: Vec<usize>,
    },
    EdgeColoring {
        family: String,
        coloring: String,
    },
    Factors {
        n: usize,
        factors: Vec<String>,
    },
    Hypergraph {
        hypergraph: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matching: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<usize>>,
        /// Vertex coloring of the line graph.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edge_coloring: Option<Vec<usize>>,
    },
    Bijection {
        instances: Vec<BijectionInstance>,
    },
    Plane {
        p: usize,
        lines: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub verdict: Verdict,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustion: Option<Exhaustion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry_scheme: Option<String>,
    pub tool_version: String,
    pub delta0: u64,
}

impl Certificate {
    pub fn new(command: &str, params: BTreeMap<String, Value>, outcome: Outcome, delta0: u64) -> Self {
        Certificate {
            schema: SCHEMA_VERSION,
            command: command.into(),
            params,
            outcome,
            value: None,
            witness: None,
            verdict: Verdict::default(),
            stats: Stats::default(),
            exhaustion: None,
            symmetry_scheme: None,
            tool_version: TOOL_VERSION.into(),
            delta0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Runs [`verify`] and records the verdict.
    pub fn seal(mut self) -> Self {
        self.verdict = match verify(&self) {
            Ok(checks) => Verdict { verified: true, checks, failure: None },
            Err(e) => Verdict { verified: false, checks: Vec::new(), failure: Some(e.to_string()) },
        };
        self
    }
}

// ---------------------------------------------------------------------------
// verification

struct Checks(Vec<String>);

impl Checks {
    fn require(&mut self, ok: bool, name: &str) -> Result<()> {
        if ok {
            self.0.push(name.into());
            Ok(())
        } else {
            Err(Error::VerifyFailed(name.into()))
        }
    }
}

fn param_u64(c: &Certificate, key: &str) -> Result<u64> {
    c.params.get(key).and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("missing integer parameter {key:?}")))
}

fn param_usize(c: &Certificate, key: &str) -> Result<usize> {
    param_u64(c, key).map(|v| v as usize)
}

fn param_str<'a>(c: &'a Certificate, key: &str) -> Result<&'a str> {
    c.params.get(key).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing string parameter {key:?}")))
}

fn value_u64(c: &Certificate, key: Option<&str>) -> Result<u64> {
    let v = c.value.as_ref().ok_or_else(|| Error::Parse("missing value".into()))?;
    let v = match key {
        Some(k) => v.get(k).ok_or_else(|| Error::Parse(format!("missing value field {k:?}")))?,
        None => v,
    };
    v.as_u64().ok_or_else(|| Error::Parse("value is not an integer".into()))
}

fn witness(c: &Certificate) -> Result<&Witness> {
    c.witness.as_ref().ok_or_else(|| Error::VerifyFailed("witness missing".into()))
}

fn wrong_witness() -> Error {
    Error::VerifyFailed("witness has the wrong kind".into())
}

fn parse_graphs(texts: &[String]) -> Result<Vec<Graph>> {
    texts.iter().map(|t| Graph::parse_text(t)).collect()
}

fn definitive(c: &Certificate) -> bool {
    matches!(c.outcome, Outcome::Exists | Outcome::Value)
}

/// Re-checks the embedded witness against the claim. Never runs a search.
/// Returns the names of the checks that passed.
pub fn verify(c: &Certificate) -> Result<Vec<String>> {
    let mut ck = Checks(Vec::new());
    ck.require(c.schema == SCHEMA_VERSION, "schema version is 1")?;
    if c.outcome == Outcome::NotExists {
        ck.require(c.symmetry_scheme.is_some(), "exhaustion names its symmetry scheme")?;
        ck.require(c.stats.nodes > 0, "exhaustion statistics present")?;
    }
    if let Some(ex) = &c.exhaustion {
        ck.require(c.symmetry_scheme.is_some() && ex.nodes > 0, "exhaustion statistics name their symmetry scheme")?;
    }
    if c.outcome == Outcome::Unknown {
        ck.require(c.witness.is_none() || c.value.is_some(), "unknown outcome carries bounds")?;
        return Ok(ck.0);
    }
    match c.command.as_str() {
        "chi" | "chromatic-index" => verify_coloring(c, &mut ck)?,
        "clique" => {
            let Witness::Clique { graph, vertices } = witness(c)? else { return Err(wrong_witness()) };
            let g = Graph::parse_text(graph)?;
            let distinct: BTreeSet<_> = vertices.iter().collect();
            ck.require(
                distinct.len() == vertices.len() && vertices.iter().all(|&v| v < g.n()),
                "clique vertices valid",
            )?;
            ck.require(
                vertices.iter().enumerate().all(|(i, &a)| vertices[i + 1..].iter().all(|&b| g.has_edge(a, b))),
                "vertices pairwise adjacent",
            )?;
            ck.require(vertices.len() as u64 == value_u64(c, None)?, "clique size equals value")?;
        }
        "core" => verify_core(c, &mut ck)?,
        "ramsey" => {
            if definitive(c) {
                let Witness::EdgeColoring { family, coloring } = witness(c)? else { return Err(wrong_witness()) };
                let fam = ForbiddenFamily::parse_with(family, |_| Err(Error::Parse("inline graphs only".into())))?;
                let col = EdgeColoring::parse_text(coloring)?;
                let n = match c.outcome {
                    Outcome::Value => value_u64(c, None)? as usize,
                    _ => param_usize(c, "n")?,
                };
                ck.require(col.base() == &Graph::complete(n)?, "coloring is total on the complete graph")?;
                ck.require(col.k() == param_usize(c, "colors")?, "palette matches")?;
                ck.require(verify_mono_free(&col, &fam).ok, "no monochromatic family member")?;
            }
        }
        "closed-form" => {
            let fam = ForbiddenFamily::parse_with(param_str(c, "family")?, |_| {
                Err(Error::Parse("inline graphs only".into()))
            })?;
            let cf = closed_form_c_k_with(&fam, param_u64(c, "colors")?, c.delta0);
            let expect = cf.map(|f| {
                serde_json::json!({"value": f.value, "asymptotic_only": f.asymptotic_only, "conditional": f.conditional})
            });
            ck.require(c.value == expect, "closed form re-evaluates to the recorded value")?;
        }
        "cover" => {
            if c.outcome == Outcome::Exists {
                let Witness::Factors { n, factors } = witness(c)? else { return Err(wrong_witness()) };
                let mode = if c.params.get("decomposition") == Some(&Value::Bool(true)) {
                    CoverMode::Decomposition
                } else {
                    CoverMode::Cover
                };
                let properness = if c.params.get("proper") == Some(&Value::Bool(true)) {
                    Properness::Proper
                } else {
                    Properness::Generalized
                };
                ck.require(
                    *n == param_usize(c, "n")? && factors.len() == param_usize(c, "r")?,
                    "factor count and order",
                )?;
                let fc = FactorCover::new(*n, parse_graphs(factors)?, mode, properness);
                ck.require(fc.is_ok(), "factor classes and disjointness")?;
                ck.require(fc?.covers_complete(), "union is the complete graph")?;
            }
        }
        "max-cover" => {
            let Witness::Factors { n, factors } = witness(c)? else { return Err(wrong_witness()) };
            let gs = parse_graphs(factors)?;
            ck.require(*n == param_usize(c, "n")? && gs.len() <= param_usize(c, "r")?, "at most r factors")?;
            ck.require(
                gs.iter().all(|g| g.n() == *n && classify_factor(g) != FactorClass::NotAFactor),
                "generalized factors",
            )?;
            ck.require(
                union_graphs(*n, &gs).edge_count() as u64 == value_u64(c, None)?,
                "union edge count equals value",
            )?;
        }
        "walecki" => {
            let Witness::Factors { n, factors } = witness(c)? else { return Err(wrong_witness()) };
            let k = param_usize(c, "k")?;
            ck.require(*n == 2 * k + 1 && factors.len() == k, "k cycles on 2k+1 vertices")?;
            ck.require(
                verify_hamilton_decomposition(*n, &parse_graphs(factors)?).is_ok(),
                "edge-disjoint Hamilton cycles covering K_n",
            )?;
        }
        "galaxy" => {
            let Witness::Factors { n, factors } = witness(c)? else { return Err(wrong_witness()) };
            let k = param_usize(c, "k")?;
            let gs = parse_graphs(factors)?;
            ck.require(
                *n == 2 * k && gs.len() == k + 1 && gs.iter().all(|g| g.n() == *n),
                "k+1 classes on 2k vertices",
            )?;
            ck.require(gs.iter().all(is_galaxy), "every class is a galaxy")?;
            ck.require(union_graphs(*n, &gs).edge_count() == n * (n - 1) / 2, "union is the complete graph")?;
            let col = EdgeColoring::from_classes(*n, &gs);
            ck.require(col.is_ok(), "classes are edge-disjoint")?;
            ck.require(
                verify_mono_free(&col?, &ForbiddenFamily::preset(4)?).ok,
                "classes are triangle-free and P4-free",
            )?;
        }
        "k11" => {
            let Witness::Factors { n, factors } = witness(c)? else { return Err(wrong_witness()) };
            let fc = FactorCover::new(*n, parse_graphs(factors)?, CoverMode::Cover, Properness::Generalized);
            ck.require(*n == 11 && factors.len() == 6, "six factors on 11 vertices")?;
            ck.require(fc.is_ok(), "generalized factors")?;
            ck.require(fc?.covers_complete(), "union is K11")?;
        }
        "chi-r" => {
            let rep = chi_r_report(param_u64(c, "r")?, c.delta0)?;
            ck.require(c.value == Some(serde_json::to_value(rep).expect("serializable")), "report re-evaluates")?;
        }
        "bijection" => verify_bijection(c, &mut ck)?,
        "match" => {
            let Witness::Hypergraph { hypergraph, matching: Some(m), .. } = witness(c)? else {
                return Err(wrong_witness());
            };
            let h = PartiteHypergraph::parse_text(hypergraph, true)?;
            let m = Matching { edges: m.clone() };
            ck.require(m.is_valid_for(&h), "matching edges pairwise disjoint")?;
            ck.require(m.size() as u64 == value_u64(c, None)?, "matching size equals value")?;
        }
        "ach" => verify_ach_cert(c, &mut ck)?,
        "plane" => {
            let Witness::Plane { p, lines } = witness(c)? else { return Err(wrong_witness()) };
            let plane = ProjectivePlane { p: *p, points: vec![[0; 3]; lines.len()], lines: lines.clone() };
            ck.require(*p as u64 == param_u64(c, "p")?, "order matches")?;
            ck.require(plane.verify().is_ok(), "projective plane axioms")?;
        }
        "truncated-plane" => {
            let Witness::Hypergraph { hypergraph, .. } = witness(c)? else { return Err(wrong_witness()) };
            let h = PartiteHypergraph::parse_text(hypergraph, false)?;
            ck.require(
                verify_truncated_plane(&h, param_usize(c, "p")?).is_ok(),
                "p+1 parts of size p, p^2 pairwise intersecting edges, p-regular",
            )?;
        }
        "claim51" => verify_claim51_cert(c, &mut ck)?,
        other => return Err(Error::Parse(format!("unknown command {other:?}"))),
    }
    Ok(ck.0)
}

fn verify_coloring(c: &Certificate, ck: &mut Checks) -> Result<()> {
    let (g, colors) = match witness(c)? {
        Witness::VertexColoring { graph, colors } => (Graph::parse_text(graph)?, colors),
        Witness::Hypergraph { hypergraph, edge_coloring: Some(colors), .. } => {
            (line_graph(&PartiteHypergraph::parse_text(hypergraph, true)?)?, colors)
        }
        _ => return Err(wrong_witness()),
    };
    let value = value_u64(c, None)? as usize;
    ck.require(
        colors.len() == g.n() && colors.iter().all(|&x| x < value.max(1)),
        "coloring is total within the palette",
    )?;
    let vc = VertexColoring::new(colors.clone(), value);
    ck.require(vc.is_proper(&g), "coloring is proper")?;
    ck.require(vc.distinct_colors() == value, "coloring uses exactly value colors")
}

fn verify_core(c: &Certificate, ck: &mut Checks) -> Result<()> {
    let Witness::Core { graph, core_vertices, elimination_order } = witness(c)? else { return Err(wrong_witness()) };
    let g = Graph::parse_text(graph)?;
    let d = param_usize(c, "d")?;
    let mut all: Vec<usize> = core_vertices.iter().chain(elimination_order).copied().collect();
    all.sort_unstable();
    ck.require(all == (0..g.n()).collect::<Vec<_>>(), "core and elimination order partition the vertices")?;
    let mut alive = vec![true; g.n()];
    let mut ok = true;
    for &v in elimination_order {
        let deg = (0..g.n()).filter(|&w| alive[w] && g.has_edge(v, w)).count();
        ok &= deg < d;
        alive[v] = false;
    }
    ck.require(ok, "each removed vertex had degree below d")?;
    let core = g.induced(core_vertices);
    ck.require(core.n() == 0 || core.min_degree() >= d, "core has minimum degree at least d")
}

fn verify_bijection(c: &Certificate, ck: &mut Checks) -> Result<()> {
    let Witness::Bijection { instances } = witness(c)? else { return Err(wrong_witness()) };
    ck.require(instances.len() as u64 == value_u64(c, Some("instances"))?, "instance count")?;
    for (i, inst) in instances.iter().enumerate() {
        let fs = parse_graphs(&inst.factors)?;
        let h = PartiteHypergraph::parse_text(&inst.hypergraph, true)?;
        let fail = |what: &str| Error::VerifyFailed(format!("instance {i}: {what}"));
        if factors_to_hypergraph(&fs)? != h {
            return Err(fail("hypergraph is not the image of the factors"));
        }
        let n = fs[0].n();
        let union = union_graphs(n, &fs);
        if line_graph(&h)? != union {
            return Err(fail("line graph differs from the union"));
        }
        let vc = VertexColoring::new(inst.coloring.clone(), inst.chromatic);
        if !vc.is_proper(&union) || vc.distinct_colors() != inst.chromatic || inst.coloring.len() != n {
            return Err(fail("coloring is not proper with the recorded palette"));
        }
    }
    ck.0.push("line graph of each image equals the union of the factors".into());
    ck.0.push("each coloring is proper for both the union and the hypergraph".into());
    Ok(())
}

/// Label classes pairwise intersect, so distinct labels bound any matching.
fn label_bound(h: &PartiteHypergraph, labels: &[usize]) -> Option<usize> {
    if labels.len() != h.edges().len() {
        return None;
    }
    let e = h.edges();
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            if labels[a] == labels[b] && !e[a].iter().zip(&e[b]).any(|(x, y)| x == y) {
                return None;
            }
        }
    }
    Some(labels.iter().collect::<BTreeSet<_>>().len())
}

fn verify_ach_cert(c: &Certificate, ck: &mut Checks) -> Result<()> {
    let Witness::Hypergraph { hypergraph, matching: Some(m), labels: Some(labels), .. } = witness(c)? else {
        return Err(wrong_witness());
    };
    let h = PartiteHypergraph::parse_text(hypergraph, false)?;
    let d = param_u64(c, "d")?;
    let copies = param_u64(c, "copies")?;
    ck.require(
        regularity(&h) == Some(d as usize) && h.r() == 3 && h.is_equipartite(),
        "3-partite, d-regular, equal parts",
    )?;
    if copies == 1 {
        let f = AchLabeling { labels: labels.clone() };
        ck.require(verify_ach(&h, &f, d as usize).is_ok(), "labels are the unique doubled indices")?;
    }
    let bound = label_bound(&h, labels);
    ck.require(bound.is_some(), "each label class is pairwise intersecting")?;
    let m = Matching { edges: m.clone() };
    ck.require(m.is_valid_for(&h), "matching edges pairwise disjoint")?;
    ck.require(Some(m.size()) == bound, "matching size meets the label bound, so it is maximum")?;
    let n = h.part_sizes()[0] as u64;
    ck.require(m.size() as u64 == value_u64(c, Some("max_matching"))?, "matching size equals value")?;
    ck.require(n == value_u64(c, Some("n"))?, "part size equals n")?;
    let conj = ach_bound(d, n)?;
    ck.require(conj == value_u64(c, Some("conjectured_bound"))?, "conjectured bound re-evaluates")?;
    let refutes = (m.size() as u64) < conj;
    ck.require(
        Some(&Value::Bool(refutes)) == c.value.as_ref().and_then(|v| v.get("refutes_conjecture")),
        "refutation flag is consistent",
    )?;
    if d >= 4 {
        ck.require(refutes, "matching is below the conjectured bound")?;
    }
    Ok(())
}

fn verify_claim51_cert(c: &Certificate, ck: &mut Checks) -> Result<()> {
    let Witness::Hypergraph { hypergraph, matching: Some(mt), .. } = witness(c)? else { return Err(wrong_witness()) };
    let mut h = PartiteHypergraph::parse_text(hypergraph, false)?;
    let p = param_usize(c, "p")?;
    let m = param_usize(c, "m")?;
    let matching = Matching { edges: mt.clone() };
    ck.require(matching.is_valid_for(&h), "matching edges pairwise disjoint")?;
    if let (Some(part), Some(copies)) =
        (c.params.get("duplicate_part").and_then(Value::as_u64), c.params.get("copies").and_then(Value::as_u64))
    {
        let (part, copies) = (part as usize, copies as usize);
        let same = h.edges().iter().all(|e| e[part..part + copies].iter().all(|&x| x == e[part]));
        ck.require(part + copies <= h.r() && same, "duplicated parts carry identical coordinates")?;
        let collapse = |v: &[usize]| -> Vec<usize> {
            let mut out = v[..part + 1].to_vec();
            out.extend_from_slice(&v[part + copies..]);
            out
        };
        h = PartiteHypergraph::new(collapse(h.part_sizes()), h.edges().iter().map(|e| collapse(e)).collect(), false)?;
    }
    ck.require(verify_claim51(&h, p, m).is_ok(), "structure, p^2 m-regularity and matching number m")?;
    ck.require(matching.size() == m && m as u64 == value_u64(c, Some("max_matching"))?, "matching size equals m")?;
    ck.require((p * p * m) as u64 == value_u64(c, Some("degree"))?, "degree equals p^2 m")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_command_is_rejected() {
        let c = Certificate::new("nope", BTreeMap::new(), Outcome::Value, 1);
        assert!(matches!(verify(&c), Err(Error::Parse(_))));
    }

    #[test]
    fn json_roundtrip() {
        let mut c = Certificate::new("clique", BTreeMap::new(), Outcome::Value, 7);
        c.value = Some(serde_json::json!(3));
        c.witness = Some(Witness::Clique { graph: Graph::complete(3).unwrap().to_text(), vertices: vec![0, 1, 2] });
        let c = c.seal();
        assert!(c.verdict.verified);
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
        assert!(matches!(Certificate::from_json("{\"schema\": 1"), Err(Error::Parse(_))));
    }

    #[test]
    fn not_exists_needs_scheme() {
        let c = Certificate::new("cover", BTreeMap::new(), Outcome::NotExists, 1);
        assert!(matches!(verify(&c), Err(Error::VerifyFailed(_))));
    }
}
