//! Simple undirected graphs on at most 64 vertices, stored as one adjacency
//! word per vertex, plus the exact coloring and clique kernels built on them.
//!
//! Vertex indices are 0-based. All searches break ties by lowest vertex
//! index, so witnesses are reproducible.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::search::{Budget, NodeCounter, OutOfBudget, SearchStats};

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::OutOfRange { index: n, limit: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds the graph with exactly the listed edges; repeated pairs are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(vec![u.min(v), u.max(v)]));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but repeated pairs are merged.
    pub fn from_edge_union(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.insert(u, v);
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::OutOfRange { index: x, limit: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = low_mask(n) & !bit(v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::BadN(n));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    /// Adds an edge, validating indices. Existing edges are left alone.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.insert(u, v);
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in ones(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.n);
        Graph { n: self.n, adj: (0..self.n).map(|v| full & !self.adj[v] & !bit(v)).collect() }
    }

    /// Subgraph induced by `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph { n: vertices.len(), adj: vec![0; vertices.len()] };
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    /// Vertex masks of connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen & bit(v) != 0 {
                continue;
            }
            let comp = self.component_of(v);
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn component_of(&self, v: usize) -> u64 {
        let mut comp = bit(v);
        let mut frontier = bit(v);
        while frontier != 0 {
            let mut next = 0;
            for w in ones(frontier) {
                next |= self.adj[w];
            }
            frontier = next & !comp;
            comp |= next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0) == low_mask(self.n)
    }

    /// True when every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n <= other.n && (0..self.n).all(|v| self.adj[v] & !other.adj[v] == 0)
    }

    /// External neighborhood of a vertex set.
    pub fn neighborhood(&self, set: u64) -> u64 {
        let mut out = 0;
        for v in ones(set) {
            out |= self.adj[v];
        }
        out & !set
    }

    /// Serializes into the text format: `n m` then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut tokens = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("not a nonnegative integer: {t:?}"))));
        let mut next = |what: &str| tokens.next().unwrap_or_else(|| Err(Error::Parse(format!("missing {what}"))));
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let u = next("edge endpoint")?;
            let v = next("edge endpoint")?;
            edges.push((u, v));
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens after edge list".into()));
        }
        Graph::from_edges(n, &edges)
    }
}

/// A map from vertices to colors `0..palette`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexColoring {
    pub colors: Vec<usize>,
    pub palette: usize,
}

impl VertexColoring {
    pub fn new(colors: Vec<usize>, palette: usize) -> Self {
        VertexColoring { colors, palette }
    }

    /// Total on `g`, colors below the palette, and no monochromatic edge.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && self.colors.iter().all(|&c| c < self.palette)
            && g.edges().into_iter().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chromatic {
    pub value: usize,
    pub witness: VertexColoring,
    pub stats: SearchStats,
}

/// Exact chromatic number: greedy clique lower bound, DSATUR upper bound,
/// then saturation-guided backtracking for every palette size in between.
pub fn chromatic_number(g: &Graph, budget: Budget) -> Result<Chromatic> {
    let n = g.n();
    if n == 0 {
        return Ok(Chromatic { value: 0, witness: VertexColoring::new(Vec::new(), 0), stats: SearchStats::default() });
    }
    let lower = greedy_clique(g).len();
    let mut best = dsatur_greedy(g);
    let mut counter = NodeCounter::new(budget);
    let mut k = lower;
    while k < best.palette {
        let mut search = KColoring::new(g, k);
        match search.run(&mut counter) {
            Ok(Some(colors)) => {
                best = VertexColoring::new(colors, k);
                break;
            }
            Ok(None) => k += 1,
            Err(OutOfBudget) => {
                return Err(counter.exceeded(Some(k as u64), Some(best.palette as u64)));
            }
        }
    }
    Ok(Chromatic { value: best.palette, witness: best, stats: counter.stats() })
}

/// Greedy clique grown from each start vertex; returns the largest found.
fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    for start in 0..g.n() {
        let mut clique = vec![start];
        let mut cand = g.neighbors(start);
        while cand != 0 {
            let v = ones(cand)
                .max_by_key(|&v| ((g.neighbors(v) & cand).count_ones(), std::cmp::Reverse(v)))
                .expect("nonempty");
            clique.push(v);
            cand &= g.neighbors(v);
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// DSATUR greedy coloring; colors are assigned in first-fit order.
fn dsatur_greedy(g: &Graph) -> VertexColoring {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut sat = vec![0u64; n];
    let mut uncolored = low_mask(n);
    let mut palette = 0;
    while uncolored != 0 {
        let v = ones(uncolored)
            .max_by_key(|&v| (sat[v].count_ones(), (g.neighbors(v) & uncolored).count_ones(), std::cmp::Reverse(v)))
            .expect("nonempty");
        let c = (!sat[v]).trailing_zeros() as usize;
        color[v] = c;
        palette = palette.max(c + 1);
        uncolored &= !bit(v);
        for w in ones(g.neighbors(v)) {
            sat[w] |= bit(c);
        }
    }
    VertexColoring::new(color, palette)
}

/// Decision search: is `g` colorable with `k` colors?
struct KColoring<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    // count[v * k + c]: colored neighbors of v carrying color c
    count: Vec<u8>,
    sat: Vec<u64>,
    uncolored: u64,
}

impl<'a> KColoring<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        KColoring {
            g,
            k,
            color: vec![usize::MAX; g.n()],
            count: vec![0; g.n() * k.max(1)],
            sat: vec![0; g.n()],
            uncolored: low_mask(g.n()),
        }
    }

    fn run(&mut self, counter: &mut NodeCounter) -> std::result::Result<Option<Vec<usize>>, OutOfBudget> {
        if self.k == 0 {
            return Ok(if self.g.n() == 0 { Some(Vec::new()) } else { None });
        }
        if self.dfs(0, counter)? {
            Ok(Some(self.color.clone()))
        } else {
            Ok(None)
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.uncolored &= !bit(v);
        for w in ones(self.g.neighbors(v)) {
            let slot = &mut self.count[w * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.sat[w] |= bit(c);
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = usize::MAX;
        self.uncolored |= bit(v);
        for w in ones(self.g.neighbors(v)) {
            let slot = &mut self.count[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] &= !bit(c);
            }
        }
    }

    fn dfs(&mut self, used: usize, counter: &mut NodeCounter) -> std::result::Result<bool, OutOfBudget> {
        if self.uncolored == 0 {
            return Ok(true);
        }
        counter.tick()?;
        let uncolored = self.uncolored;
        let v = ones(uncolored)
            .max_by_key(|&v| {
                (self.sat[v].count_ones(), (self.g.neighbors(v) & uncolored).count_ones(), std::cmp::Reverse(v))
            })
            .expect("nonempty");
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.sat[v] & bit(c) != 0 {
                continue;
            }
            self.assign(v, c);
            if self.dfs(used.max(c + 1), counter)? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clique {
    pub value: usize,
    pub vertices: Vec<usize>,
    pub stats: SearchStats,
}

/// Exact clique number by branch and bound with greedy-coloring bounds.
pub fn clique_number(g: &Graph, budget: Budget) -> Result<Clique> {
    let mut counter = NodeCounter::new(budget);
    let mut state = CliqueSearch { g, best: greedy_clique(g), current: Vec::new(), target: usize::MAX };
    state.best.sort_unstable();
    match state.expand(low_mask(g.n()), &mut counter) {
        Ok(()) => {
            let mut vertices = state.best;
            vertices.sort_unstable();
            Ok(Clique { value: vertices.len(), vertices, stats: counter.stats() })
        }
        Err(OutOfBudget) => Err(counter.exceeded(Some(state.best.len() as u64), Some(dsatur_greedy(g).palette as u64))),
    }
}

/// True iff the clique number is at least `s`.
pub fn contains_clique(g: &Graph, s: usize) -> bool {
    find_clique(g, s).is_some()
}

/// A clique of exactly `s` vertices, if one exists.
pub fn find_clique(g: &Graph, s: usize) -> Option<Vec<usize>> {
    if s == 0 {
        return Some(Vec::new());
    }
    let mut counter = NodeCounter::new(Budget::unlimited());
    let mut state = CliqueSearch { g, best: Vec::new(), current: Vec::new(), target: s };
    let _ = state.expand(low_mask(g.n()), &mut counter);
    if state.best.len() >= s {
        let mut c = state.best;
        c.truncate(s);
        c.sort_unstable();
        Some(c)
    } else {
        None
    }
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    target: usize,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, cand: u64, counter: &mut NodeCounter) -> std::result::Result<(), OutOfBudget> {
        counter.tick()?;
        if cand == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        // greedy sequential coloring of the candidates gives per-vertex bounds
        let mut order = Vec::with_capacity(cand.count_ones() as usize);
        let mut uncolored = cand;
        let mut class = 0;
        while uncolored != 0 {
            class += 1;
            let mut avail = uncolored;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !bit(v) & !self.g.neighbors(v);
                uncolored &= !bit(v);
                order.push((v, class));
            }
        }
        let mut cand = cand;
        for &(v, bound) in order.iter().rev() {
            if self.current.len() + bound <= self.best.len() || self.best.len() >= self.target {
                return Ok(());
            }
            self.current.push(v);
            self.expand(cand & self.g.neighbors(v), counter)?;
            self.current.pop();
            cand &= !bit(v);
        }
        Ok(())
    }
}

/// Result of peeling vertices of degree below `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCore {
    /// Surviving vertices, increasing.
    pub vertices: Vec<usize>,
    /// Induced subgraph on `vertices`, relabeled in that order.
    pub core: Graph,
    /// Removed vertices, in removal order.
    pub elimination_order: Vec<usize>,
}

/// The `d`-core; peels the lowest-index vertex of degree below `d` first.
pub fn k_core(g: &Graph, d: usize) -> KCore {
    let mut alive = low_mask(g.n());
    let mut order = Vec::new();
    loop {
        let low = ones(alive).find(|&v| ((g.neighbors(v) & alive).count_ones() as usize) < d);
        match low {
            Some(v) => {
                alive &= !bit(v);
                order.push(v);
            }
            None => break,
        }
    }
    let vertices: Vec<usize> = ones(alive).collect();
    KCore { core: g.induced(&vertices), vertices, elimination_order: order }
}

/// Extends a proper `d`-coloring of the `d`-core to all of `g` by coloring the
/// peeled vertices greedily in reverse elimination order. `core_coloring` is
/// indexed by the core's relabeled vertices.
pub fn extend_coloring_from_core(g: &Graph, d: usize, core_coloring: &VertexColoring) -> Result<VertexColoring> {
    let core = k_core(g, d);
    let valid = core_coloring.colors.len() == core.vertices.len()
        && core_coloring.colors.iter().all(|&c| c < d)
        && VertexColoring::new(core_coloring.colors.clone(), d).is_proper(&core.core);
    if !valid {
        return Err(Error::InvalidCoreColoring(d));
    }
    let mut color = vec![usize::MAX; g.n()];
    for (i, &v) in core.vertices.iter().enumerate() {
        color[v] = core_coloring.colors[i];
    }
    for &v in core.elimination_order.iter().rev() {
        let mut taken = 0u64;
        for w in ones(g.neighbors(v)) {
            if color[w] != usize::MAX {
                taken |= bit(color[w]);
            }
        }
        let c = (!taken).trailing_zeros() as usize;
        debug_assert!(c < d, "peeled vertex saw at most d-1 colored neighbors");
        color[v] = c;
    }
    Ok(VertexColoring::new(color, d))
}
