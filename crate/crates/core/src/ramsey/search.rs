use std::fmt::Write as _;

use rayon::prelude::*;

use super::pattern::{find_copy, Detector, ForbiddenFamily};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::search::{Budget, Existence, NodeCounter, OutOfBudget, SearchStats};

/// Identifier recorded in certificates for the symmetry reduction below.
pub const COLORING_SYMMETRY_SCHEME: &str = "lex-edge-order/first-edge-color-0/canonical-color-order";

/// A total map from the edges of `base` to colors `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    base: Graph,
    k: usize,
    /// Aligned with `base.edges()`.
    colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(base: Graph, k: usize, colors: Vec<usize>) -> Result<Self> {
        let m = base.edge_count();
        if colors.len() != m {
            return Err(Error::Invalid(format!("{} colors for {m} edges", colors.len())));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::OutOfRange { index: c, limit: k });
        }
        Ok(EdgeColoring { base, k, colors })
    }

    /// Builds the coloring of the union of `classes`; edges must not repeat.
    pub fn from_classes(n: usize, classes: &[Graph]) -> Result<Self> {
        let mut pairs = Vec::new();
        for (c, g) in classes.iter().enumerate() {
            if g.n() != n {
                return Err(Error::Invalid(format!("class {c} has {} vertices, expected {n}", g.n())));
            }
            for e in g.edges() {
                pairs.push((e, c));
            }
        }
        pairs.sort_unstable();
        let edges: Vec<_> = pairs.iter().map(|p| p.0).collect();
        let base = Graph::from_edges(n, &edges)?;
        let colors = pairs.into_iter().map(|p| p.1).collect();
        EdgeColoring::new(base, classes.len(), colors)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        self.base.edges().iter().position(|&e| e == (a, b)).map(|i| self.colors[i])
    }

    pub fn class(&self, c: usize) -> Graph {
        let mut g = Graph::empty(self.base.n()).expect("same size as base");
        for (&(u, v), &col) in self.base.edges().iter().zip(&self.colors) {
            if col == c {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn classes(&self) -> Vec<Graph> {
        (0..self.k).map(|c| self.class(c)).collect()
    }

    /// `n k` header then one `u v c` line per edge.
    pub fn to_text(&self) -> String {
        let edges = self.base.edges();
        let mut s = format!("{} {} {}\n", self.base.n(), self.k, edges.len());
        for ((u, v), c) in edges.into_iter().zip(&self.colors) {
            let _ = writeln!(s, "{u} {v} {c}");
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let nums: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad token {t:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() < 3 || nums.len() != 3 + 3 * nums[2] {
            return Err(Error::Parse("edge coloring has wrong token count".into()));
        }
        let (n, k) = (nums[0], nums[1]);
        let mut edges = Vec::new();
        let mut triples: Vec<((usize, usize), usize)> =
            nums[3..].chunks(3).map(|t| ((t[0].min(t[1]), t[0].max(t[1])), t[2])).collect();
        triples.sort_unstable();
        for &(e, _) in &triples {
            edges.push(e);
        }
        let base = Graph::from_edges(n, &edges)?;
        EdgeColoring::new(base, k, triples.into_iter().map(|t| t.1).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub color: usize,
    pub pattern: String,
    /// Host vertex of each pattern vertex.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoReport {
    pub ok: bool,
    pub violation: Option<Violation>,
}

/// True iff no color class contains a family pattern; otherwise reports the
/// first (color, pattern) pair that embeds.
pub fn verify_mono_free(coloring: &EdgeColoring, fam: &ForbiddenFamily) -> MonoReport {
    for c in 0..coloring.k() {
        let class = coloring.class(c);
        for p in fam.patterns() {
            if let Some(vertices) = find_copy(&class, p) {
                return MonoReport { ok: false, violation: Some(Violation { color: c, pattern: p.token(), vertices }) };
            }
        }
    }
    MonoReport { ok: true, violation: None }
}

/// Knobs for the coloring search.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Vertex relabeling applied to the edge order (the witness keeps the
    /// original labels).
    pub relabel: Option<Vec<usize>>,
    /// Worker threads; `None` or `Some(1)` runs sequentially. In parallel mode
    /// the budget applies to each top-level shard.
    pub threads: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct MonoSearch {
    pub outcome: Existence<EdgeColoring>,
    pub stats: SearchStats,
}

/// Exhaustive search for a `k`-edge-coloring of `K_n` with no monochromatic
/// family pattern. Returns `Ok(None)` only after the search space is exhausted.
pub fn mono_free_coloring(n: usize, k: usize, fam: &ForbiddenFamily, budget: Budget) -> Result<Option<EdgeColoring>> {
    let r = mono_free_search(n, k, fam, &SearchOptions { budget, ..Default::default() })?;
    r.outcome.into_result(r.stats.nodes)
}

pub fn mono_free_search(n: usize, k: usize, fam: &ForbiddenFamily, opts: &SearchOptions) -> Result<MonoSearch> {
    if n == 0 {
        return Err(Error::BadN(n));
    }
    if k == 0 {
        return Err(Error::BadK(k));
    }
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::OutOfRange { index: n, limit: crate::graph::MAX_VERTICES });
    }
    let order = edge_order(n, opts.relabel.as_deref())?;
    let detectors: Vec<Detector> = fam.patterns().iter().map(Detector::for_pattern).collect();
    let mut root = ColorSearch::new(n, k, order, &detectors);

    let threads = opts.threads.unwrap_or(1).max(1);
    let (outcome, nodes) = if threads == 1 || root.order.len() < 2 {
        let mut counter = NodeCounter::new(opts.budget);
        match root.dfs(0, 0, &mut counter) {
            Ok(true) => (Existence::Found(root.witness()), counter.nodes),
            Ok(false) => (Existence::NotFound, counter.nodes),
            Err(OutOfBudget) => (Existence::Unknown, counter.nodes),
        }
    } else {
        parallel_search(&mut root, threads, opts.budget)?
    };
    Ok(MonoSearch { outcome, stats: SearchStats { nodes } })
}

/// Splits on the colors of the first few edges and runs the shards on a rayon
/// pool. Shards are reconciled in sequential order so the witness equals the
/// sequential one.
fn parallel_search(
    root: &mut ColorSearch<'_>,
    threads: usize,
    budget: Budget,
) -> Result<(Existence<EdgeColoring>, u64)> {
    let mut prefixes: Vec<(Vec<u8>, usize)> = vec![(Vec::new(), 0)];
    let mut depth = 0;
    while prefixes.len() < 8 * threads && depth < root.order.len() {
        let mut next = Vec::new();
        for (prefix, used) in &prefixes {
            root.load(prefix);
            let (u, v) = root.order[depth];
            for c in 0..(used + 1).min(root.k) {
                root.set(c, u, v);
                if !root.violates(c, u, v) {
                    let mut p = prefix.clone();
                    p.push(c as u8);
                    next.push((p, (*used).max(c + 1)));
                }
                root.unset(c, u, v);
            }
            root.clear();
        }
        prefixes = next;
        depth += 1;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let template = root.clone();
    let results: Vec<(Existence<EdgeColoring>, u64)> = pool.install(|| {
        prefixes
            .par_iter()
            .map(|(prefix, used)| {
                let mut s = template.clone();
                s.load(prefix);
                let mut counter = NodeCounter::new(budget);
                let r = match s.dfs(prefix.len(), *used, &mut counter) {
                    Ok(true) => Existence::Found(s.witness()),
                    Ok(false) => Existence::NotFound,
                    Err(OutOfBudget) => Existence::Unknown,
                };
                (r, counter.nodes)
            })
            .collect()
    });
    let nodes = results.iter().map(|r| r.1).sum();
    for (r, _) in results {
        match r {
            Existence::NotFound => continue,
            other => return Ok((other, nodes)),
        }
    }
    Ok((Existence::NotFound, nodes))
}

fn edge_order(n: usize, relabel: Option<&[usize]>) -> Result<Vec<(usize, usize)>> {
    let mut edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if let Some(pi) = relabel {
        let mut seen = vec![false; n];
        if pi.len() != n || pi.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Invalid("relabeling is not a permutation".into()));
        }
        edges.sort_by_key(|&(u, v)| (pi[u].min(pi[v]), pi[u].max(pi[v])));
    }
    Ok(edges)
}

#[derive(Clone)]
struct ColorSearch<'a> {
    n: usize,
    k: usize,
    order: Vec<(usize, usize)>,
    detectors: &'a [Detector],
    /// adj[c * n + v]: neighbors of v in color class c
    adj: Vec<u64>,
    assign: Vec<u8>,
}

impl<'a> ColorSearch<'a> {
    fn new(n: usize, k: usize, order: Vec<(usize, usize)>, detectors: &'a [Detector]) -> Self {
        let m = order.len();
        ColorSearch { n, k, order, detectors, adj: vec![0; n * k], assign: vec![0; m] }
    }

    #[inline]
    fn set(&mut self, c: usize, u: usize, v: usize) {
        self.adj[c * self.n + u] |= bit(v);
        self.adj[c * self.n + v] |= bit(u);
    }

    #[inline]
    fn unset(&mut self, c: usize, u: usize, v: usize) {
        self.adj[c * self.n + u] &= !bit(v);
        self.adj[c * self.n + v] &= !bit(u);
    }

    #[inline]
    fn violates(&self, c: usize, u: usize, v: usize) -> bool {
        let class = &self.adj[c * self.n..(c + 1) * self.n];
        self.detectors.iter().any(|d| d.hits(class, self.n, u, v))
    }

    fn load(&mut self, prefix: &[u8]) {
        self.clear();
        for (i, &c) in prefix.iter().enumerate() {
            let (u, v) = self.order[i];
            self.set(c as usize, u, v);
            self.assign[i] = c;
        }
    }

    fn clear(&mut self) {
        self.adj.iter_mut().for_each(|a| *a = 0);
    }

    fn dfs(&mut self, idx: usize, used: usize, counter: &mut NodeCounter) -> std::result::Result<bool, OutOfBudget> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let (u, v) = self.order[idx];
        // canonical color order: a new color only after all smaller ones appear
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            counter.tick()?;
            self.set(c, u, v);
            if !self.violates(c, u, v) {
                self.assign[idx] = c as u8;
                if self.dfs(idx + 1, used.max(c + 1), counter)? {
                    return Ok(true);
                }
            }
            self.unset(c, u, v);
        }
        Ok(false)
    }

    fn witness(&self) -> EdgeColoring {
        let classes: Vec<Graph> = (0..self.k)
            .map(|c| {
                let mut g = Graph::empty(self.n).expect("n checked");
                for (i, &(u, v)) in self.order.iter().enumerate() {
                    if self.assign[i] as usize == c {
                        g.insert(u, v);
                    }
                }
                g
            })
            .collect();
        EdgeColoring::from_classes(self.n, &classes).expect("search assigns each edge once")
    }
}

/// Outcome of [`compute_c_k`].
#[derive(Clone, Debug)]
pub struct CkResult {
    pub value: usize,
    /// Mono-free coloring of `K_value`.
    pub witness: EdgeColoring,
    pub witness_stats: SearchStats,
    /// Exhaustion statistics for `K_{value+1}`.
    pub exhaustion_stats: SearchStats,
    /// Nodes spent over all sizes tried.
    pub total_nodes: u64,
}

/// Largest `n <= cap` whose complete graph admits a mono-free `k`-coloring,
/// with nonexistence proven at `n + 1`.
pub fn compute_c_k(fam: &ForbiddenFamily, k: usize, cap: usize, opts: &SearchOptions) -> Result<CkResult> {
    if k == 0 {
        return Err(Error::BadK(k));
    }
    if cap == 0 {
        return Err(Error::Invalid("cap must be at least 1".into()));
    }
    let mut last: Option<(EdgeColoring, SearchStats)> = None;
    let mut total = 0;
    for n in 1..=cap {
        let r = mono_free_search(n, k, fam, opts)?;
        total += r.stats.nodes;
        match r.outcome {
            Existence::Found(c) => last = Some((c, r.stats)),
            Existence::NotFound => {
                let (witness, witness_stats) = match last {
                    Some(l) => l,
                    // K_1 has no edges, so n = 1 always succeeds
                    None => unreachable!("K_1 is trivially colorable"),
                };
                return Ok(CkResult {
                    value: n - 1,
                    witness,
                    witness_stats,
                    exhaustion_stats: r.stats,
                    total_nodes: total,
                });
            }
            Existence::Unknown => {
                return Err(Error::BudgetExceeded { nodes: total, lower: Some((n - 1) as u64), upper: None })
            }
        }
    }
    Err(Error::CapReached { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramsey::pattern::Pattern;

    fn fam(s: &str) -> ForbiddenFamily {
        ForbiddenFamily::parse(s).unwrap()
    }

    #[test]
    fn walecki_pair_is_s3_free() {
        // two edge-disjoint 5-cycles of K5
        let c1 = Graph::cycle(5).unwrap();
        let c2 = c1.complement();
        let col = EdgeColoring::from_classes(5, &[c1, c2]).unwrap();
        assert!(verify_mono_free(&col, &fam("F3")).ok);
        assert!(mono_free_coloring(5, 2, &fam("F3"), Budget::default()).unwrap().is_some());
    }

    #[test]
    fn mono_free_examples() {
        assert!(mono_free_coloring(3, 1, &fam("K3"), Budget::default()).unwrap().is_none());
        assert!(mono_free_coloring(6, 3, &fam("P4"), Budget::default()).unwrap().is_none());
        let w = mono_free_coloring(5, 3, &fam("P4"), Budget::default()).unwrap().unwrap();
        assert!(verify_mono_free(&w, &fam("P4")).ok);
        assert_eq!(w.base(), &Graph::complete(5).unwrap());
    }

    #[test]
    fn monochromatic_k4_reports_triangle() {
        let k4 = Graph::complete(4).unwrap();
        let col = EdgeColoring::from_classes(4, &[k4]).unwrap();
        let rep = verify_mono_free(&col, &fam("K3"));
        assert!(!rep.ok);
        let v = rep.violation.unwrap();
        assert_eq!(v.color, 0);
        assert_eq!(v.pattern, "K3");
        assert_eq!(v.vertices.len(), 3);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let err = mono_free_coloring(6, 3, &fam("P4"), Budget::new(5)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn parallel_matches_sequential() {
        for (n, k, f) in [(5, 3, "P4"), (6, 3, "P4"), (5, 2, "F5"), (4, 3, "F4")] {
            let seq = mono_free_search(n, k, &fam(f), &SearchOptions::default()).unwrap();
            let par =
                mono_free_search(n, k, &fam(f), &SearchOptions { threads: Some(4), ..Default::default() }).unwrap();
            assert_eq!(seq.outcome, par.outcome, "{f} n={n} k={k}");
        }
    }

    #[test]
    fn c_k_examples() {
        let opts = SearchOptions::default();
        assert_eq!(compute_c_k(&fam("P4"), 3, 8, &opts).unwrap().value, 5);
        assert_eq!(compute_c_k(&fam("F5"), 1, 5, &opts).unwrap().value, 2);
        assert_eq!(compute_c_k(&fam("F4"), 3, 8, &opts).unwrap().value, 4);
        assert_eq!(compute_c_k(&fam("K2"), 3, 4, &opts).unwrap().value, 1);
        assert!(matches!(compute_c_k(&fam("F3"), 3, 4, &opts), Err(Error::CapReached { cap: 4 })));
    }

    #[test]
    fn edge_coloring_text_roundtrip() {
        let w = mono_free_coloring(5, 2, &fam("F3"), Budget::default()).unwrap().unwrap();
        assert_eq!(EdgeColoring::parse_text(&w.to_text()).unwrap(), w);
        assert!(EdgeColoring::parse_text("3 2 1\n0 1").is_err());
    }

    #[test]
    fn explicit_pattern_search() {
        // C4-free 1-colorings: K_n is C4-free only up to n = 3
        let c4 = ForbiddenFamily::new(vec![Pattern::Explicit(Graph::cycle(4).unwrap())]).unwrap();
        let r = compute_c_k(&c4, 1, 6, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, 3);
    }

    #[test]
    fn relabel_must_be_permutation() {
        let opts = SearchOptions { relabel: Some(vec![0, 0, 1]), ..Default::default() };
        assert!(mono_free_search(3, 1, &fam("K3"), &opts).is_err());
    }
}
