//! Forbidden patterns, families, and subgraph detectors.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, ones, Graph};

/// Largest explicit pattern the generic matcher accepts.
pub const MAX_EXPLICIT_VERTICES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Triangle,
    /// Path on four vertices.
    P4,
    /// Star with three edges.
    S3,
    /// Star with the given number of edges.
    Star(usize),
    /// Matching with the given number of edges.
    Matching(usize),
    /// Path with the given number of edges.
    Path(usize),
    Explicit(Graph),
}

/// Structural class of a pattern, used by the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    K2,
    /// Star with at least two edges (two edges is the path P3).
    Star(usize),
    Triangle,
    /// Path with at least three edges.
    Path(usize),
    /// Matching with at least two edges.
    Matching(usize),
    Other,
}

impl Pattern {
    pub fn graph(&self) -> Graph {
        let g = match self {
            Pattern::Triangle => Graph::complete(3),
            Pattern::P4 => Graph::path(4),
            Pattern::S3 => Graph::star(3),
            Pattern::Star(r) => Graph::star(*r),
            Pattern::Matching(m) => {
                let edges: Vec<_> = (0..*m).map(|i| (2 * i, 2 * i + 1)).collect();
                Graph::from_edges(2 * m, &edges)
            }
            Pattern::Path(l) => Graph::path(l + 1),
            Pattern::Explicit(g) => Ok(g.clone()),
        };
        g.expect("pattern sizes are validated on construction")
    }

    fn validate(&self) -> Result<()> {
        let size = match self {
            Pattern::Star(r) => *r + 1,
            Pattern::Matching(m) => 2 * m,
            Pattern::Path(l) => l + 1,
            Pattern::Explicit(g) => {
                if g.n() > MAX_EXPLICIT_VERTICES {
                    return Err(Error::Invalid(format!(
                        "explicit patterns are limited to {MAX_EXPLICIT_VERTICES} vertices"
                    )));
                }
                g.n()
            }
            _ => 4,
        };
        if size > crate::graph::MAX_VERTICES {
            return Err(Error::OutOfRange { index: size, limit: crate::graph::MAX_VERTICES });
        }
        if self.graph().edge_count() == 0 {
            return Err(Error::Invalid("patterns need at least one edge".into()));
        }
        Ok(())
    }

    pub fn shape(&self) -> Shape {
        shape_of(&self.graph())
    }

    /// True if the pattern has no cycle.
    pub fn is_forest(&self) -> bool {
        let g = self.graph();
        g.edge_count() + g.components().len() == g.n()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph().n()
    }

    /// Token in the family mini-language (explicit graphs print inline).
    pub fn token(&self) -> String {
        match self {
            Pattern::Triangle => "K3".into(),
            Pattern::P4 => "P4".into(),
            Pattern::S3 => "S3".into(),
            Pattern::Star(r) => format!("STAR:{r}"),
            Pattern::Matching(m) => format!("MATCH:{m}"),
            Pattern::Path(l) => format!("PATH:{l}"),
            Pattern::Explicit(g) => {
                let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
                format!("G{}[{}]", g.n(), edges.join(" "))
            }
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

fn shape_of(g: &Graph) -> Shape {
    let n = g.n();
    let e = g.edge_count();
    if (0..n).any(|v| g.degree(v) == 0) {
        return Shape::Other;
    }
    if e == 1 {
        return Shape::K2;
    }
    let comps = g.components();
    if comps.len() == 1 {
        if n == 3 && e == 3 {
            return Shape::Triangle;
        }
        if e == n - 1 && (0..n).any(|v| g.degree(v) == n - 1) {
            return Shape::Star(e);
        }
        if e == n - 1 && g.max_degree() <= 2 {
            return Shape::Path(e);
        }
        return Shape::Other;
    }
    if g.max_degree() == 1 {
        return Shape::Matching(e);
    }
    Shape::Other
}

/// A nonempty list of forbidden patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenFamily {
    patterns: Vec<Pattern>,
    name: Option<String>,
}

impl ForbiddenFamily {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::Invalid("family must contain a pattern".into()));
        }
        for p in &patterns {
            p.validate()?;
        }
        Ok(ForbiddenFamily { patterns, name: None })
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// The standard presets `F1`..`F7`.
    pub fn preset(index: usize) -> Result<Self> {
        use Pattern::*;
        let patterns = match index {
            1 => vec![Triangle],
            2 => vec![P4],
            3 => vec![S3],
            4 => vec![Triangle, P4],
            5 => vec![Triangle, S3],
            6 => vec![P4, S3],
            7 => vec![Triangle, P4, S3],
            _ => return Err(Error::Invalid(format!("no preset family F{index}"))),
        };
        Ok(ForbiddenFamily::new(patterns)?.named(&format!("F{index}")))
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Parses the comma-separated mini-language: `K2`, `K3`, `P3`, `P4`, `S3`,
    /// `STAR:r` (r edges), `MATCH:m`, `PATH:l`, `F1`..`F7`, `@file` holding an
    /// explicit graph in the text format, or an inline graph `G4[0-1 1-2 2-3]`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::parse_with(spec, |path| {
            std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Parse(format!("{path}: {e}")))
        })
    }

    pub fn parse_with(spec: &str, read: impl Fn(&str) -> Result<String>) -> Result<Self> {
        let mut patterns = Vec::new();
        let mut preset_name = None;
        let tokens: Vec<&str> = spec.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
        for tok in &tokens {
            let upper = tok.to_ascii_uppercase();
            if let Some(path) = tok.strip_prefix('@') {
                let g = Graph::parse_text(&read(path)?)?;
                patterns.push(Pattern::Explicit(g));
                continue;
            }
            if let Some(g) = parse_inline_graph(tok)? {
                patterns.push(Pattern::Explicit(g));
                continue;
            }
            if let Some(rest) = upper.strip_prefix('F') {
                if let Ok(i) = rest.parse::<usize>() {
                    let fam = ForbiddenFamily::preset(i)?;
                    patterns.extend(fam.patterns);
                    if tokens.len() == 1 {
                        preset_name = Some(upper.clone());
                    }
                    continue;
                }
            }
            let param = |prefix: &str| -> Result<Option<usize>> {
                match upper.strip_prefix(prefix) {
                    Some(num) => {
                        num.parse::<usize>().map(Some).map_err(|_| Error::Parse(format!("bad parameter in {tok:?}")))
                    }
                    None => Ok(None),
                }
            };
            let p = match upper.as_str() {
                "K2" => Pattern::Path(1),
                "K3" | "TRIANGLE" => Pattern::Triangle,
                "P3" => Pattern::Path(2),
                "P4" => Pattern::P4,
                "S3" => Pattern::S3,
                _ => {
                    if let Some(r) = param("STAR:")? {
                        Pattern::Star(r)
                    } else if let Some(m) = param("MATCH:")? {
                        Pattern::Matching(m)
                    } else if let Some(l) = param("PATH:")? {
                        Pattern::Path(l)
                    } else {
                        return Err(Error::Parse(format!("unknown family token {tok:?}")));
                    }
                }
            };
            patterns.push(p);
        }
        let fam = ForbiddenFamily::new(patterns)?;
        Ok(match preset_name {
            Some(name) => fam.named(&name),
            None => fam,
        })
    }

    /// Canonical textual form; round-trips through [`ForbiddenFamily::parse`].
    pub fn spec_string(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        self.patterns.iter().map(Pattern::token).collect::<Vec<_>>().join(",")
    }

    pub fn with_patterns_reversed(&self) -> Self {
        let mut patterns = self.patterns.clone();
        patterns.reverse();
        ForbiddenFamily { patterns, name: self.name.clone() }
    }
}

/// `G<n>[u-v u-v ...]`, or `None` when the token has another form.
fn parse_inline_graph(tok: &str) -> Result<Option<Graph>> {
    let Some(rest) = tok.strip_prefix('G').or_else(|| tok.strip_prefix('g')) else {
        return Ok(None);
    };
    let Some((n, body)) = rest.split_once('[') else {
        return Ok(None);
    };
    let bad = || Error::Parse(format!("bad inline graph {tok:?}"));
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let body = body.strip_suffix(']').ok_or_else(bad)?;
    let mut edges = Vec::new();
    for pair in body.split_whitespace() {
        let (u, v) = pair.split_once('-').ok_or_else(bad)?;
        edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?));
    }
    Graph::from_edges(n, &edges).map(Some)
}

// ---------------------------------------------------------------------------
// whole-graph detection

/// True iff `g` contains `p` as a (not necessarily induced) subgraph.
pub fn has_copy(g: &Graph, p: &Pattern) -> bool {
    let adj = g.adjacency();
    let n = g.n();
    match p {
        Pattern::Triangle => g.edges().into_iter().any(|(u, v)| adj[u] & adj[v] != 0),
        Pattern::S3 => g.max_degree() >= 3,
        Pattern::Star(r) => g.max_degree() >= *r,
        Pattern::Matching(m) => matching_at_least(adj, low_mask(n), *m),
        Pattern::P4 | Pattern::Path(3) => g.components().into_iter().any(|comp| !star_or_triangle(adj, comp)),
        Pattern::Path(l) => (0..n).any(|v| path_from(adj, v, bit(v), *l)),
        Pattern::Explicit(h) => embed(h, adj, n, None).is_some(),
    }
}

/// An embedding of `p` into `g`: entry `i` is the host vertex of pattern vertex `i`.
pub fn find_copy(g: &Graph, p: &Pattern) -> Option<Vec<usize>> {
    embed(&p.graph(), g.adjacency(), g.n(), None)
}

/// A component with at most one vertex, a star, or a triangle.
fn star_or_triangle(adj: &[u64], comp: u64) -> bool {
    let size = comp.count_ones() as usize;
    let edges: usize = ones(comp).map(|v| adj[v].count_ones() as usize).sum::<usize>() / 2;
    if size <= 2 {
        return true;
    }
    if size == 3 && edges == 3 {
        return true;
    }
    edges == size - 1 && ones(comp).any(|v| (adj[v] | bit(v)) == comp)
}

/// Is there a simple path with at least `need` edges starting at `start`, avoiding `used`?
fn path_from(adj: &[u64], start: usize, used: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    ones(adj[start] & !used).any(|w| path_from(adj, w, used | bit(w), need - 1))
}

/// Is there a simple path with at least `len` edges that uses edge `uv`?
fn path_through(adj: &[u64], u: usize, v: usize, len: usize) -> bool {
    fn grow(adj: &[u64], cur: usize, used: u64, left: usize, v: usize, len: usize) -> bool {
        let right_needed = len.saturating_sub(1 + left);
        if path_from(adj, v, used, right_needed) {
            return true;
        }
        ones(adj[cur] & !used).any(|w| grow(adj, w, used | bit(w), left + 1, v, len))
    }
    grow(adj, u, bit(u) | bit(v), 0, v, len)
}

/// Does the graph restricted to `avail` have a matching of `need` edges?
pub(crate) fn matching_at_least(adj: &[u64], avail: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    let active: u64 = ones(avail).filter(|&v| adj[v] & avail != 0).fold(0, |m, v| m | bit(v));
    if (active.count_ones() as usize) < 2 * need {
        return false;
    }
    let v = active.trailing_zeros() as usize;
    let rest = avail & !bit(v);
    for w in ones(adj[v] & rest) {
        if matching_at_least(adj, rest & !bit(w), need - 1) {
            return true;
        }
    }
    matching_at_least(adj, rest, need)
}

/// Backtracking subgraph monomorphism. With `anchor = Some((u, v))` only
/// embeddings that map some pattern edge onto host edge `uv` are reported.
pub(crate) fn embed(p: &Graph, adj: &[u64], n: usize, anchor: Option<(usize, usize)>) -> Option<Vec<usize>> {
    if p.n() > n {
        return None;
    }
    let order = pattern_order(p);
    match anchor {
        None => {
            let mut map = vec![usize::MAX; p.n()];
            extend(p, adj, n, &order, 0, &mut map, 0).then_some(map)
        }
        Some((u, v)) => {
            for (a, b) in p.edges() {
                for (x, y) in [(u, v), (v, u)] {
                    let mut map = vec![usize::MAX; p.n()];
                    map[a] = x;
                    map[b] = y;
                    let rest: Vec<usize> = order.iter().copied().filter(|&q| q != a && q != b).collect();
                    if extend(p, adj, n, &rest, 0, &mut map, bit(x) | bit(y)) {
                        return Some(map);
                    }
                }
            }
            None
        }
    }
}

/// Pattern vertices in BFS order, larger components and higher degrees first.
fn pattern_order(p: &Graph) -> Vec<usize> {
    let mut comps = p.components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.count_ones()));
    let mut order = Vec::with_capacity(p.n());
    for comp in comps {
        let root = ones(comp).max_by_key(|&v| (p.degree(v), std::cmp::Reverse(v))).expect("nonempty");
        let mut seen = bit(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in ones(p.neighbors(v) & !seen) {
                seen |= bit(w);
                queue.push_back(w);
            }
        }
    }
    order
}

fn extend(p: &Graph, adj: &[u64], n: usize, order: &[usize], idx: usize, map: &mut [usize], used: u64) -> bool {
    if idx == order.len() {
        return true;
    }
    let q = order[idx];
    let mut cand = low_mask(n) & !used;
    for r in ones(p.neighbors(q)) {
        if map[r] != usize::MAX {
            cand &= adj[map[r]];
        }
    }
    let need = p.degree(q) as u32;
    for x in ones(cand) {
        if adj[x].count_ones() < need {
            continue;
        }
        map[q] = x;
        if extend(p, adj, n, order, idx + 1, map, used | bit(x)) {
            return true;
        }
        map[q] = usize::MAX;
    }
    false
}

// ---------------------------------------------------------------------------
// incremental detection used by the coloring search

/// Checks whether freshly inserted edge `uv` completes a pattern copy in a
/// color class that had none before.
#[derive(Clone, Debug)]
pub(crate) enum Detector {
    Triangle,
    Star(usize),
    StarForest,
    Path(usize),
    Matching(usize),
    Embed(Graph),
}

impl Detector {
    pub fn for_pattern(p: &Pattern) -> Detector {
        match p {
            Pattern::Triangle => Detector::Triangle,
            Pattern::S3 => Detector::Star(3),
            Pattern::Star(r) => Detector::Star(*r),
            Pattern::P4 | Pattern::Path(3) => Detector::StarForest,
            Pattern::Path(l) if *l <= 2 => Detector::Star(*l),
            Pattern::Path(l) => Detector::Path(*l),
            Pattern::Matching(1) => Detector::Star(1),
            Pattern::Matching(m) => Detector::Matching(*m),
            Pattern::Explicit(g) => Detector::Embed(g.clone()),
        }
    }

    #[inline]
    pub fn hits(&self, adj: &[u64], n: usize, u: usize, v: usize) -> bool {
        match self {
            Detector::Triangle => adj[u] & adj[v] != 0,
            Detector::Star(r) => adj[u].count_ones() as usize >= *r || adj[v].count_ones() as usize >= *r,
            Detector::StarForest => {
                let mut comp = bit(u) | bit(v);
                let mut frontier = comp;
                while frontier != 0 {
                    let mut next = 0;
                    for w in ones(frontier) {
                        next |= adj[w];
                    }
                    frontier = next & !comp;
                    comp |= next;
                }
                !star_or_triangle(adj, comp)
            }
            Detector::Path(l) => path_through(adj, u, v, *l),
            Detector::Matching(m) => matching_at_least(adj, low_mask(n) & !bit(u) & !bit(v), m - 1),
            Detector::Embed(g) => embed(g, adj, n, Some((u, v))).is_some(),
        }
    }
}
