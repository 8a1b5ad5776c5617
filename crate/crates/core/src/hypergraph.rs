//! r-partite r-uniform hypergraphs with edge multiplicities.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{classify_factor, factor_triangles, FactorClass};
use crate::graph::{chromatic_number, Chromatic, Graph, MAX_VERTICES};
use crate::search::{Budget, NodeCounter, OutOfBudget, SearchStats};

/// Largest edge list accepted by [`max_matching`].
pub const MAX_MATCHING_EDGES: usize = 10_000;

/// The clique-cover bound is only tried below this many live edges.
const CLIQUE_BOUND_EDGES: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteHypergraph {
    part_sizes: Vec<usize>,
    /// Coordinate `i` of an edge is a vertex index inside part `i`.
    edges: Vec<Vec<usize>>,
    allow_multi: bool,
}

pub fn make_hypergraph(part_sizes: Vec<usize>, edges: Vec<Vec<usize>>, allow_multi: bool) -> Result<PartiteHypergraph> {
    PartiteHypergraph::new(part_sizes, edges, allow_multi)
}

impl PartiteHypergraph {
    pub fn new(part_sizes: Vec<usize>, edges: Vec<Vec<usize>>, allow_multi: bool) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::Invalid("a hypergraph needs at least one part".into()));
        }
        if let Some(i) = part_sizes.iter().position(|&s| s == 0) {
            return Err(Error::Invalid(format!("part {i} is empty")));
        }
        let r = part_sizes.len();
        for e in &edges {
            if e.len() != r {
                return Err(Error::Invalid(format!("edge {e:?} does not have {r} coordinates")));
            }
            for (i, &x) in e.iter().enumerate() {
                if x >= part_sizes[i] {
                    return Err(Error::OutOfRange { index: x, limit: part_sizes[i] });
                }
            }
        }
        if !allow_multi {
            let mut sorted: Vec<&Vec<usize>> = edges.iter().collect();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(w[0].clone()));
            }
        }
        Ok(PartiteHypergraph { part_sizes, edges, allow_multi })
    }

    pub fn r(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn allow_multi(&self) -> bool {
        self.allow_multi
    }

    pub fn vertex_count(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    /// No edge occurs twice.
    pub fn is_simple(&self) -> bool {
        let mut sorted: Vec<&Vec<usize>> = self.edges.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_equipartite(&self) -> bool {
        self.part_sizes.windows(2).all(|w| w[0] == w[1])
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.r());
        let mut acc = 0;
        for &s in &self.part_sizes {
            off.push(acc);
            acc += s;
        }
        off
    }

    /// Edge `e` as global vertex ids (parts laid out consecutively).
    pub fn global_edge(&self, e: usize) -> Vec<usize> {
        let off = self.offsets();
        self.edges[e].iter().zip(&off).map(|(&x, &o)| o + x).collect()
    }

    /// Degrees per part, counting repeated edges with multiplicity.
    pub fn degrees(&self) -> Vec<Vec<usize>> {
        let mut deg: Vec<Vec<usize>> = self.part_sizes.iter().map(|&s| vec![0; s]).collect();
        for e in &self.edges {
            for (i, &x) in e.iter().enumerate() {
                deg[i][x] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().iter().flatten().copied().max().unwrap_or(0)
    }

    /// `line 1: r`, `line 2: part sizes`, then one edge per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.r());
        s.push_str(&join(&self.part_sizes));
        s.push('\n');
        for e in &self.edges {
            s.push_str(&join(e));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str, allow_multi: bool) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let nums = |l: &str| -> Result<Vec<usize>> {
            l.split_whitespace().map(|t| t.parse().map_err(|_| Error::Parse(format!("bad token {t:?}")))).collect()
        };
        let r_line = lines.next().ok_or_else(|| Error::Parse("missing r".into()))?;
        let r = match nums(r_line)?[..] {
            [r] => r,
            _ => return Err(Error::Parse("first line must hold r".into())),
        };
        let sizes = nums(lines.next().ok_or_else(|| Error::Parse("missing part sizes".into()))?)?;
        if sizes.len() != r {
            return Err(Error::Parse(format!("expected {r} part sizes, found {}", sizes.len())));
        }
        let mut edges = Vec::new();
        for l in lines {
            let e = nums(l)?;
            if e.len() != r {
                return Err(Error::Parse(format!("edge line {l:?} needs {r} indices")));
            }
            edges.push(e);
        }
        PartiteHypergraph::new(sizes, edges, allow_multi)
    }
}

fn join(v: &[usize]) -> String {
    let mut s = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x}");
    }
    s
}

/// The common degree if the hypergraph is regular.
pub fn regularity(h: &PartiteHypergraph) -> Option<usize> {
    let deg = h.degrees();
    let first = deg[0][0];
    deg.iter().flatten().all(|&d| d == first).then_some(first)
}

/// Part `i` holds the triangles of factor `i`; edge `v` lists the triangle
/// containing vertex `v` in each factor.
pub fn factors_to_hypergraph(factors: &[Graph]) -> Result<PartiteHypergraph> {
    if factors.is_empty() {
        return Err(Error::Invalid("at least one factor is required".into()));
    }
    let n = factors[0].n();
    let mut which = vec![vec![0usize; factors.len()]; n];
    let mut sizes = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        if f.n() != n {
            return Err(Error::Invalid(format!("factor {i} has {} vertices, expected {n}", f.n())));
        }
        if n == 0 || classify_factor(f) != FactorClass::Proper {
            return Err(Error::NotProper(i));
        }
        let tris = factor_triangles(f);
        for (t, tri) in tris.iter().enumerate() {
            for &v in tri {
                which[v][i] = t;
            }
        }
        sizes.push(tris.len());
    }
    PartiteHypergraph::new(sizes, which, true)
}

/// Inverse of [`factors_to_hypergraph`]: the union graph has one vertex per
/// edge, and the three edges through a part-`i` vertex form a triangle of factor `i`.
pub fn hypergraph_to_factors(h: &PartiteHypergraph) -> Result<Vec<Graph>> {
    if regularity(h) != Some(3) {
        return Err(Error::NotThreeRegular);
    }
    if !h.is_equipartite() {
        return Err(Error::NotEquipartite);
    }
    let m = h.edges().len();
    if m > MAX_VERTICES {
        return Err(Error::OutOfRange { index: m, limit: MAX_VERTICES });
    }
    let mut out = Vec::with_capacity(h.r());
    for i in 0..h.r() {
        let mut members = vec![Vec::with_capacity(3); h.part_sizes()[i]];
        for (e, edge) in h.edges().iter().enumerate() {
            members[edge[i]].push(e);
        }
        let mut g = Graph::empty(m)?;
        for t in members {
            g.add_edge(t[0], t[1])?;
            g.add_edge(t[1], t[2])?;
            g.add_edge(t[0], t[2])?;
        }
        out.push(g);
    }
    Ok(out)
}

/// One vertex per edge occurrence; adjacent iff the edges share a vertex.
pub fn line_graph(h: &PartiteHypergraph) -> Result<Graph> {
    let m = h.edges().len();
    if m > MAX_VERTICES {
        return Err(Error::OutOfRange { index: m, limit: MAX_VERTICES });
    }
    let mut g = Graph::empty(m)?;
    for a in 0..m {
        for b in a + 1..m {
            if h.edges()[a].iter().zip(&h.edges()[b]).any(|(x, y)| x == y) {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

/// Minimum colors in a proper edge coloring, as the chromatic number of the line graph.
pub fn chromatic_index(h: &PartiteHypergraph, budget: Budget) -> Result<Chromatic> {
    chromatic_number(&line_graph(h)?, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    /// Indices into the edge list, increasing.
    pub edges: Vec<usize>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Indices are valid and the edges are pairwise disjoint.
    pub fn is_valid_for(&self, h: &PartiteHypergraph) -> bool {
        let mut used: Vec<Vec<bool>> = h.part_sizes().iter().map(|&s| vec![false; s]).collect();
        for &e in &self.edges {
            let Some(edge) = h.edges().get(e) else { return false };
            for (i, &x) in edge.iter().enumerate() {
                if std::mem::replace(&mut used[i][x], true) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct MaxMatching {
    pub size: usize,
    pub witness: Matching,
    pub stats: SearchStats,
}

/// Exact maximum matching by branch and bound, solved per connected component.
pub fn max_matching(h: &PartiteHypergraph, budget: Budget) -> Result<MaxMatching> {
    let m = h.edges().len();
    if m > MAX_MATCHING_EDGES {
        return Err(Error::OutOfRange { index: m, limit: MAX_MATCHING_EDGES });
    }
    let nv = h.vertex_count();
    let part_of: Vec<usize> = h.part_sizes().iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
    let gedges: Vec<Vec<usize>> = (0..m).map(|e| h.global_edge(e)).collect();
    let mut incident = vec![Vec::new(); nv];
    for (e, ge) in gedges.iter().enumerate() {
        for &x in ge {
            incident[x].push(e);
        }
    }

    // components of the edge-intersection structure
    let mut comp = vec![usize::MAX; m];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        comp[s] = id;
        let mut members = Vec::new();
        while let Some(e) = stack.pop() {
            members.push(e);
            for &x in &gedges[e] {
                for &f in &incident[x] {
                    if comp[f] == usize::MAX {
                        comp[f] = id;
                        stack.push(f);
                    }
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }

    let mut counter = NodeCounter::new(budget);
    let mut chosen: Vec<usize> = Vec::new();
    let mut lower = 0u64;
    for members in &comps {
        let mut solver = MatchingBb::new(h.r(), &part_of, &gedges, &incident, members);
        match solver.solve(&mut counter) {
            Ok(best) => {
                lower += best.len() as u64;
                chosen.extend(best);
            }
            Err(OutOfBudget) => {
                let partial = lower + solver.best.len() as u64;
                return Err(counter.exceeded(Some(partial), None));
            }
        }
    }
    chosen.sort_unstable();
    let witness = Matching { edges: chosen };
    debug_assert!(witness.is_valid_for(h));
    Ok(MaxMatching { size: witness.size(), witness, stats: counter.stats() })
}

struct MatchingBb<'a> {
    r: usize,
    part_of: &'a [usize],
    gedges: &'a [Vec<usize>],
    incident: &'a [Vec<usize>],
    /// Live edge flags (indexed by global edge id).
    alive: Vec<bool>,
    /// Live degree of each vertex.
    deg: Vec<usize>,
    /// Vertices of positive live degree per part.
    active: Vec<usize>,
    live: usize,
    vertices: Vec<usize>,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl<'a> MatchingBb<'a> {
    fn new(
        r: usize,
        part_of: &'a [usize],
        gedges: &'a [Vec<usize>],
        incident: &'a [Vec<usize>],
        members: &[usize],
    ) -> Self {
        let mut alive = vec![false; gedges.len()];
        let mut deg = vec![0; part_of.len()];
        for &e in members {
            alive[e] = true;
            for &x in &gedges[e] {
                deg[x] += 1;
            }
        }
        let mut vertices: Vec<usize> = (0..part_of.len()).filter(|&x| deg[x] > 0).collect();
        vertices.sort_unstable();
        let mut active = vec![0; r];
        for &x in &vertices {
            active[part_of[x]] += 1;
        }
        MatchingBb {
            r,
            part_of,
            gedges,
            incident,
            alive,
            deg,
            active,
            live: members.len(),
            vertices,
            current: Vec::new(),
            best: Vec::new(),
        }
    }

    fn solve(&mut self, counter: &mut NodeCounter) -> std::result::Result<Vec<usize>, OutOfBudget> {
        self.best = self.greedy();
        self.dfs(counter)?;
        let mut b = self.best.clone();
        b.sort_unstable();
        Ok(b)
    }

    fn greedy(&self) -> Vec<usize> {
        let mut used = vec![false; self.part_of.len()];
        let mut out = Vec::new();
        let mut order: Vec<usize> = (0..self.gedges.len()).filter(|&e| self.alive[e]).collect();
        order.sort_by_key(|&e| (self.gedges[e].iter().map(|&x| self.deg[x]).sum::<usize>(), e));
        for e in order {
            if self.gedges[e].iter().all(|&x| !used[x]) {
                for &x in &self.gedges[e] {
                    used[x] = true;
                }
                out.push(e);
            }
        }
        out
    }

    fn kill(&mut self, e: usize, removed: &mut Vec<usize>) {
        self.alive[e] = false;
        self.live -= 1;
        removed.push(e);
        for &x in &self.gedges[e] {
            self.deg[x] -= 1;
            if self.deg[x] == 0 {
                self.active[self.part_of[x]] -= 1;
            }
        }
    }

    fn restore(&mut self, removed: &[usize]) {
        for &e in removed.iter().rev() {
            self.alive[e] = true;
            self.live += 1;
            for &x in &self.gedges[e] {
                if self.deg[x] == 0 {
                    self.active[self.part_of[x]] += 1;
                }
                self.deg[x] += 1;
            }
        }
    }

    fn kill_vertex(&mut self, x: usize, removed: &mut Vec<usize>) {
        for i in 0..self.incident[x].len() {
            let f = self.incident[x][i];
            if self.alive[f] {
                self.kill(f, removed);
            }
        }
    }

    fn bound(&self) -> usize {
        let parts = (0..self.r).map(|i| self.active[i]).min().unwrap_or(0);
        self.current.len() + parts.min(self.live)
    }

    /// A matching uses at most one edge from each pairwise-intersecting
    /// group, so a greedy partition into such groups bounds it.
    fn clique_bound(&self) -> usize {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for e in (0..self.gedges.len()).filter(|&e| self.alive[e]) {
            let meets = |f: &usize| self.gedges[e].iter().zip(&self.gedges[*f]).any(|(a, b)| a == b);
            match groups.iter_mut().find(|g| g.iter().all(meets)) {
                Some(g) => g.push(e),
                None => groups.push(vec![e]),
            }
        }
        self.current.len() + groups.len()
    }

    fn dfs(&mut self, counter: &mut NodeCounter) -> std::result::Result<(), OutOfBudget> {
        counter.tick()?;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.live == 0 || self.bound() <= self.best.len() {
            return Ok(());
        }
        if self.live <= CLIQUE_BOUND_EDGES && self.clique_bound() <= self.best.len() {
            return Ok(());
        }
        // vertex of minimum positive live degree, lowest id on ties
        let x = self
            .vertices
            .iter()
            .copied()
            .filter(|&x| self.deg[x] > 0)
            .min_by_key(|&x| (self.deg[x], x))
            .expect("live edges have live vertices");
        let options: Vec<usize> = self.incident[x].iter().copied().filter(|&e| self.alive[e]).collect();
        for e in options {
            let mut removed = Vec::new();
            for &y in &self.gedges[e] {
                self.kill_vertex(y, &mut removed);
            }
            self.current.push(e);
            self.dfs(counter)?;
            self.current.pop();
            self.restore(&removed);
        }
        // leave x unmatched
        let mut removed = Vec::new();
        self.kill_vertex(x, &mut removed);
        let r = self.dfs(counter);
        self.restore(&removed);
        r
    }
}

/// `t` vertex-disjoint copies, concatenated part by part.
pub fn disjoint_copies(h: &PartiteHypergraph, t: usize) -> Result<PartiteHypergraph> {
    if t == 0 {
        return Err(Error::Invalid("t must be at least 1".into()));
    }
    let sizes: Vec<usize> = h.part_sizes().iter().map(|&s| s * t).collect();
    let mut edges = Vec::with_capacity(h.edges().len() * t);
    for c in 0..t {
        for e in h.edges() {
            edges.push(e.iter().zip(h.part_sizes()).map(|(&x, &s)| c * s + x).collect());
        }
    }
    PartiteHypergraph::new(sizes, edges, h.allow_multi())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{random_factor, Properness};

    fn brute_matching(h: &PartiteHypergraph) -> usize {
        let m = h.edges().len();
        assert!(m <= 20);
        (0u32..1 << m)
            .filter(|&s| {
                let edges: Vec<usize> = (0..m).filter(|&e| s >> e & 1 == 1).collect();
                Matching { edges }.is_valid_for(h)
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn make_examples() {
        let multi = make_hypergraph(vec![1, 1, 1], vec![vec![0, 0, 0]; 3], true).unwrap();
        assert_eq!(regularity(&multi), Some(3));
        assert!(make_hypergraph(vec![2, 2], vec![vec![0, 0], vec![1, 1]], false).is_ok());
        assert_eq!(
            make_hypergraph(vec![2, 2], vec![vec![0, 0], vec![0, 0]], false),
            Err(Error::DuplicateEdge(vec![0, 0]))
        );
        assert!(matches!(
            make_hypergraph(vec![2, 2], vec![vec![0, 2]], true),
            Err(Error::OutOfRange { index: 2, limit: 2 })
        ));
    }

    #[test]
    fn regularity_examples() {
        let one = make_hypergraph(vec![1, 1], vec![vec![0, 0]], false).unwrap();
        assert_eq!(regularity(&one), Some(1));
        let uneven = make_hypergraph(vec![2, 1], vec![vec![0, 0]], false).unwrap();
        assert_eq!(regularity(&uneven), None);
    }

    #[test]
    fn single_triangle_bijection() {
        let h = factors_to_hypergraph(&[Graph::complete(3).unwrap()]).unwrap();
        assert_eq!(h.part_sizes(), &[1]);
        assert_eq!(h.edges(), &[vec![0], vec![0], vec![0]]);
        let back = hypergraph_to_factors(&h).unwrap();
        assert_eq!(back, vec![Graph::complete(3).unwrap()]);
    }

    #[test]
    fn bijection_two_factors() {
        let f1 = random_factor(6, Properness::Proper, 1).unwrap();
        let f2 = random_factor(6, Properness::Proper, 2).unwrap();
        let h = factors_to_hypergraph(&[f1.clone(), f2.clone()]).unwrap();
        assert_eq!(regularity(&h), Some(3));
        assert!(h.max_degree() <= 3);
        let lg = line_graph(&h).unwrap();
        let mut u = f1.clone();
        for (a, b) in f2.edges() {
            let _ = u.add_edge(a, b);
        }
        assert_eq!(lg, u);
        assert_eq!(hypergraph_to_factors(&h).unwrap(), vec![f1, f2]);
    }

    #[test]
    fn to_factors_errors() {
        let two = make_hypergraph(vec![1], vec![vec![0]; 2], true).unwrap();
        assert_eq!(hypergraph_to_factors(&two), Err(Error::NotThreeRegular));
        let uneven = make_hypergraph(vec![1, 3], vec![vec![0, 0], vec![0, 1], vec![0, 2]], true).unwrap();
        assert_eq!(regularity(&uneven), None);
        let h = make_hypergraph(
            vec![2, 1],
            vec![vec![0, 0], vec![0, 0], vec![0, 0], vec![1, 0], vec![1, 0], vec![1, 0]],
            true,
        )
        .unwrap();
        // part 1 vertex has degree 6
        assert_eq!(hypergraph_to_factors(&h), Err(Error::NotThreeRegular));
        assert!(matches!(factors_to_hypergraph(&[Graph::path(3).unwrap()]), Err(Error::NotProper(0))));
    }

    #[test]
    fn line_graph_examples() {
        let disjoint = make_hypergraph(vec![3, 3], (0..3).map(|i| vec![i, i]).collect(), false).unwrap();
        assert_eq!(line_graph(&disjoint).unwrap().edge_count(), 0);
        assert_eq!(chromatic_index(&disjoint, Budget::default()).unwrap().value, 1);
        let star = make_hypergraph(vec![1, 3], (0..3).map(|i| vec![0, i]).collect(), false).unwrap();
        assert_eq!(line_graph(&star).unwrap(), Graph::complete(3).unwrap());
        let multi = make_hypergraph(vec![1, 1], vec![vec![0, 0]; 4], true).unwrap();
        assert_eq!(chromatic_index(&multi, Budget::default()).unwrap().value, 4);
    }

    #[test]
    fn matching_examples() {
        let disjoint = make_hypergraph(vec![5, 5, 5], (0..5).map(|i| vec![i, i, i]).collect(), false).unwrap();
        assert_eq!(max_matching(&disjoint, Budget::default()).unwrap().size, 5);
        let single = make_hypergraph(vec![1, 1], vec![vec![0, 0]], false).unwrap();
        let three = disjoint_copies(&single, 3).unwrap();
        assert_eq!(max_matching(&three, Budget::default()).unwrap().size, 3);
        assert_eq!(disjoint_copies(&single, 1).unwrap(), single);
    }

    #[test]
    fn matching_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let r = rng.random_range(2..=3);
            let sizes: Vec<usize> = (0..r).map(|_| rng.random_range(1..=4)).collect();
            let m = rng.random_range(0..=12);
            let edges = (0..m).map(|_| sizes.iter().map(|&s| rng.random_range(0..s)).collect()).collect();
            let h = make_hypergraph(sizes, edges, true).unwrap();
            let got = max_matching(&h, Budget::default()).unwrap();
            assert!(got.witness.is_valid_for(&h));
            assert_eq!(got.size, brute_matching(&h));
        }
    }

    #[test]
    fn matching_budget_reports_lower_bound() {
        let h = make_hypergraph(vec![4, 4, 4], (0..16).map(|i| vec![i % 4, i / 4, (i + i / 4) % 4]).collect(), false)
            .unwrap();
        match max_matching(&h, Budget::new(0)) {
            Err(Error::BudgetExceeded { lower: Some(_), .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn text_roundtrip() {
        let h = make_hypergraph(vec![2, 3], vec![vec![0, 2], vec![1, 0], vec![1, 0]], true).unwrap();
        assert_eq!(PartiteHypergraph::parse_text(&h.to_text(), true).unwrap(), h);
        assert!(PartiteHypergraph::parse_text("2\n2 3\n0 2 1\n", true).is_err());
        assert!(PartiteHypergraph::parse_text("2\n2 3\n1 0\n1 0\n", false).is_err());
    }
}
