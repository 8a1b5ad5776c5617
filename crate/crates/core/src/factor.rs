//! Generalized triangle factors: classification, covers of complete graphs,
//! explicit constructions and chromatic bounds for unions of factors.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ones, Graph};
use crate::search::{Budget, Existence, NodeCounter, OutOfBudget, SearchStats};

/// `ceil(10^14 / 2)`, the proven threshold.
pub const DEFAULT_DELTA0: u64 = 50_000_000_000_000;

/// Identifier recorded in certificates for the cover search reduction.
pub const COVER_SYMMETRY_SCHEME: &str = "first-factor-one-per-isomorphism-class/branch-on-lowest-uncovered-edge";

/// Exhaustive cover searches use 128-bit edge masks.
pub const MAX_COVER_VERTICES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FactorClass {
    Proper,
    Generalized,
    NotAFactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Properness {
    Proper,
    Generalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoverMode {
    Cover,
    Decomposition,
}

/// Every component a triangle: proper. Every component a subgraph of a
/// triangle: generalized.
pub fn classify_factor(g: &Graph) -> FactorClass {
    let mut proper = true;
    for comp in g.components() {
        let size = comp.count_ones() as usize;
        let edges = ones(comp).map(|v| g.degree(v)).sum::<usize>() / 2;
        if size > 3 {
            return FactorClass::NotAFactor;
        }
        if size < 3 || edges < 3 {
            proper = false;
        }
    }
    if proper {
        FactorClass::Proper
    } else {
        FactorClass::Generalized
    }
}

/// Vertex triples of the triangles of `g` that are whole components.
pub fn factor_triangles(g: &Graph) -> Vec<[usize; 3]> {
    g.components()
        .into_iter()
        .filter(|c| c.count_ones() == 3)
        .filter_map(|c| {
            let vs: Vec<usize> = ones(c).collect();
            let closed = g.has_edge(vs[0], vs[1]) && g.has_edge(vs[1], vs[2]) && g.has_edge(vs[0], vs[2]);
            closed.then(|| [vs[0], vs[1], vs[2]])
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCover {
    n: usize,
    factors: Vec<Graph>,
    mode: CoverMode,
    properness: Properness,
}

impl FactorCover {
    /// Validates factor classes and, for decompositions, edge-disjointness.
    pub fn new(n: usize, factors: Vec<Graph>, mode: CoverMode, properness: Properness) -> Result<Self> {
        for (i, f) in factors.iter().enumerate() {
            if f.n() != n {
                return Err(Error::Invalid(format!("factor {i} has {} vertices, expected {n}", f.n())));
            }
            match (classify_factor(f), properness) {
                (FactorClass::NotAFactor, _) => {
                    return Err(Error::Invalid(format!("factor {i} is not a generalized triangle factor")))
                }
                (FactorClass::Generalized, Properness::Proper) => return Err(Error::NotProper(i)),
                _ => {}
            }
        }
        if mode == CoverMode::Decomposition {
            let mut seen = Graph::empty(n)?;
            for (i, f) in factors.iter().enumerate() {
                for (u, v) in f.edges() {
                    if seen.has_edge(u, v) {
                        return Err(Error::Invalid(format!("factor {i} repeats edge ({u}, {v})")));
                    }
                    seen.insert(u, v);
                }
            }
        }
        Ok(FactorCover { n, factors, mode, properness })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Graph] {
        &self.factors
    }

    pub fn mode(&self) -> CoverMode {
        self.mode
    }

    pub fn properness(&self) -> Properness {
        self.properness
    }

    /// True iff the union is the complete graph.
    pub fn covers_complete(&self) -> bool {
        union_factors(self).edge_count() == self.n * self.n.saturating_sub(1) / 2
    }
}

pub fn union_factors(fc: &FactorCover) -> Graph {
    union_graphs(fc.n, &fc.factors)
}

pub(crate) fn union_graphs(n: usize, graphs: &[Graph]) -> Graph {
    let mut g = Graph::empty(n).expect("factor sizes validated");
    for f in graphs {
        for (u, v) in f.edges() {
            g.insert(u, v);
        }
    }
    g
}

// ---------------------------------------------------------------------------
// edge masks

struct EdgeIndex {
    n: usize,
    index: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl EdgeIndex {
    fn new(n: usize) -> Self {
        let mut index = vec![usize::MAX; n * n];
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                index[u * n + v] = pairs.len();
                index[v * n + u] = pairs.len();
                pairs.push((u, v));
            }
        }
        EdgeIndex { n, index, pairs }
    }

    fn full(&self) -> u128 {
        match self.pairs.len() {
            128 => u128::MAX,
            m => (1u128 << m) - 1,
        }
    }

    fn graph(&self, mask: u128) -> Graph {
        let mut g = Graph::empty(self.n).expect("n bounded");
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let (u, v) = self.pairs[i];
            g.insert(u, v);
        }
        g
    }
}

/// A factor as an edge mask plus the sorted component sizes that identify
/// its isomorphism class.
#[derive(Clone, Debug)]
struct MaskedFactor {
    mask: u128,
    shape: Vec<u8>,
}

/// Maximal generalized factors (triangles plus edges, or triangles plus one
/// isolated vertex), or proper factors when `proper` is set.
fn enumerate_factors(
    ix: &EdgeIndex,
    proper: bool,
    counter: &mut NodeCounter,
) -> std::result::Result<Vec<MaskedFactor>, OutOfBudget> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ix: &EdgeIndex,
        free: u32,
        proper: bool,
        isolated: bool,
        has_edge_block: bool,
        mask: u128,
        shape: &mut Vec<u8>,
        out: &mut Vec<MaskedFactor>,
        counter: &mut NodeCounter,
    ) -> std::result::Result<(), OutOfBudget> {
        counter.tick()?;
        if free == 0 {
            let mut s = shape.clone();
            s.sort_unstable();
            out.push(MaskedFactor { mask, shape: s });
            return Ok(());
        }
        let n = ix.n;
        let e = |a: usize, b: usize| 1u128 << ix.index[a * n + b];
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let others: Vec<usize> = (0..n).filter(|&w| rest & (1 << w) != 0).collect();
        for (i, &a) in others.iter().enumerate() {
            for &b in &others[i + 1..] {
                shape.push(3);
                let m = mask | e(v, a) | e(v, b) | e(a, b);
                rec(ix, rest & !(1 << a) & !(1 << b), proper, isolated, has_edge_block, m, shape, out, counter)?;
                shape.pop();
            }
        }
        if proper {
            return Ok(());
        }
        if !isolated {
            for &a in &others {
                shape.push(2);
                rec(ix, rest & !(1 << a), proper, false, true, mask | e(v, a), shape, out, counter)?;
                shape.pop();
            }
        }
        if !isolated && !has_edge_block {
            shape.push(1);
            rec(ix, rest, proper, true, false, mask, shape, out, counter)?;
            shape.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    let all = if ix.n == 32 { u32::MAX } else { (1u32 << ix.n) - 1 };
    rec(ix, all, proper, false, false, 0, &mut Vec::new(), &mut out, counter)?;
    Ok(out)
}

/// First factor of each isomorphism class in enumeration order.
fn shape_representatives(factors: &[MaskedFactor]) -> Vec<usize> {
    let mut reps: BTreeMap<&[u8], usize> = BTreeMap::new();
    for (i, f) in factors.iter().enumerate() {
        reps.entry(&f.shape).or_insert(i);
    }
    let mut v: Vec<usize> = reps.into_values().collect();
    v.sort_unstable();
    v
}

#[derive(Clone, Debug)]
pub struct CoverSearch {
    pub outcome: Existence<FactorCover>,
    pub stats: SearchStats,
}

/// Exhaustive search for `r` factors on `n` vertices covering (or
/// partitioning) the edges of `K_n`.
///
/// Generalized covers exist iff generalized decompositions do (drop repeated
/// edges from later factors), so both modes search maximal factors.
pub fn cover_search(
    n: usize,
    r: usize,
    properness: Properness,
    mode: CoverMode,
    budget: Budget,
) -> Result<CoverSearch> {
    if n == 0 {
        return Err(Error::BadN(n));
    }
    if n > MAX_COVER_VERTICES {
        return Err(Error::OutOfRange { index: n, limit: MAX_COVER_VERTICES });
    }
    let proper = properness == Properness::Proper;
    if proper && !n.is_multiple_of(3) {
        return Err(Error::BadN(n));
    }
    let ix = EdgeIndex::new(n);
    let mut counter = NodeCounter::new(budget);
    let factors = match enumerate_factors(&ix, proper, &mut counter) {
        Ok(f) => f,
        Err(OutOfBudget) => return Ok(CoverSearch { outcome: Existence::Unknown, stats: counter.stats() }),
    };
    let m = ix.pairs.len();
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, f) in factors.iter().enumerate() {
        let mut mk = f.mask;
        while mk != 0 {
            by_edge[mk.trailing_zeros() as usize].push(i);
            mk &= mk - 1;
        }
    }
    let max_edges = factors.iter().map(|f| f.mask.count_ones()).max().unwrap_or(0) as usize;
    let exact = proper && mode == CoverMode::Decomposition;
    let search = CoverDfs { factors: &factors, by_edge: &by_edge, full: ix.full(), max_edges, disjoint: exact };

    let mut chosen = Vec::new();
    let found = if m == 0 {
        Ok(true)
    } else if r == 0 {
        Ok(false)
    } else {
        let mut res = Ok(false);
        for rep in shape_representatives(&factors) {
            chosen.push(rep);
            res = search.dfs(factors[rep].mask, r - 1, &mut chosen, &mut counter);
            if !matches!(res, Ok(false)) {
                break;
            }
            chosen.pop();
        }
        res
    };
    let outcome = match found {
        Err(OutOfBudget) => Existence::Unknown,
        Ok(false) => Existence::NotFound,
        Ok(true) => {
            let remaining = r - chosen.len();
            if exact && remaining > 0 {
                Existence::NotFound
            } else {
                let mut masks: Vec<u128> = chosen.iter().map(|&i| factors[i].mask).collect();
                let filler = match (proper, masks.first()) {
                    (true, Some(&f)) => f,
                    (true, None) => factors.first().map_or(0, |f| f.mask),
                    (false, _) => 0,
                };
                masks.extend(std::iter::repeat_n(filler, remaining));
                if mode == CoverMode::Decomposition && !proper {
                    let mut seen = 0u128;
                    for mk in masks.iter_mut() {
                        *mk &= !seen;
                        seen |= *mk;
                    }
                }
                let graphs = masks.iter().map(|&mk| ix.graph(mk)).collect();
                Existence::Found(FactorCover::new(n, graphs, mode, properness)?)
            }
        }
    };
    Ok(CoverSearch { outcome, stats: counter.stats() })
}

struct CoverDfs<'a> {
    factors: &'a [MaskedFactor],
    by_edge: &'a [Vec<usize>],
    full: u128,
    max_edges: usize,
    disjoint: bool,
}

impl CoverDfs<'_> {
    fn dfs(
        &self,
        covered: u128,
        remaining: usize,
        chosen: &mut Vec<usize>,
        counter: &mut NodeCounter,
    ) -> std::result::Result<bool, OutOfBudget> {
        counter.tick()?;
        let open = self.full & !covered;
        if open == 0 {
            return Ok(!self.disjoint || remaining == 0);
        }
        if open.count_ones() as usize > remaining * self.max_edges {
            return Ok(false);
        }
        let e = open.trailing_zeros() as usize;
        for &f in &self.by_edge[e] {
            let mask = self.factors[f].mask;
            if self.disjoint && mask & covered != 0 {
                continue;
            }
            chosen.push(f);
            if self.dfs(covered | mask, remaining - 1, chosen, counter)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

#[derive(Clone, Debug)]
pub struct MaxCover {
    pub value: usize,
    /// Factors attaining the maximum.
    pub witness: Vec<Graph>,
    pub stats: SearchStats,
}

/// Largest number of edges of `K_n` covered by the union of `r` generalized factors.
pub fn max_coverable_edges(n: usize, r: usize, budget: Budget) -> Result<MaxCover> {
    if n == 0 {
        return Err(Error::BadN(n));
    }
    if n > MAX_COVER_VERTICES {
        return Err(Error::OutOfRange { index: n, limit: MAX_COVER_VERTICES });
    }
    let ix = EdgeIndex::new(n);
    let mut counter = NodeCounter::new(budget);
    let factors = enumerate_factors(&ix, false, &mut counter).map_err(|_| counter.exceeded(None, None))?;
    let masks: Vec<u128> = factors.iter().map(|f| f.mask).collect();
    let total = ix.pairs.len();
    let max_edges = masks.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);

    struct Bb<'a> {
        masks: &'a [u128],
        total: usize,
        max_edges: usize,
        best: usize,
        best_set: Vec<usize>,
    }
    impl Bb<'_> {
        fn dfs(
            &mut self,
            start: usize,
            covered: u128,
            remaining: usize,
            chosen: &mut Vec<usize>,
            counter: &mut NodeCounter,
        ) -> std::result::Result<(), OutOfBudget> {
            counter.tick()?;
            let have = covered.count_ones() as usize;
            if have > self.best {
                self.best = have;
                self.best_set = chosen.clone();
            }
            if remaining == 0 || self.best == self.total {
                return Ok(());
            }
            let gain_cap = (self.total - have).min(self.max_edges);
            if have + remaining * gain_cap <= self.best {
                return Ok(());
            }
            for i in start..self.masks.len() {
                let gain = (self.masks[i] & !covered).count_ones() as usize;
                if have + gain + (remaining - 1) * gain_cap <= self.best {
                    continue;
                }
                chosen.push(i);
                self.dfs(i, covered | self.masks[i], remaining - 1, chosen, counter)?;
                chosen.pop();
            }
            Ok(())
        }
    }
    let mut bb = Bb { masks: &masks, total, max_edges, best: 0, best_set: Vec::new() };
    if r > 0 {
        for rep in shape_representatives(&factors) {
            let mut chosen = vec![rep];
            bb.dfs(0, masks[rep], r - 1, &mut chosen, &mut counter)
                .map_err(|_| counter.exceeded(Some(bb.best as u64), None))?;
        }
    }
    let witness = bb.best_set.iter().map(|&i| ix.graph(masks[i])).collect();
    Ok(MaxCover { value: bb.best, witness, stats: counter.stats() })
}

// ---------------------------------------------------------------------------
// explicit constructions

/// Checks that `cycles` are edge-disjoint Hamilton cycles whose union is `K_n`.
pub fn verify_hamilton_decomposition(n: usize, cycles: &[Graph]) -> Result<()> {
    let mut seen = Graph::empty(n)?;
    for (i, c) in cycles.iter().enumerate() {
        if c.n() != n || !c.is_connected() || (0..n).any(|v| c.degree(v) != 2) {
            return Err(Error::VerifyFailed(format!("cycle {i} is not a Hamilton cycle")));
        }
        for (u, v) in c.edges() {
            if seen.has_edge(u, v) {
                return Err(Error::VerifyFailed(format!("edge ({u}, {v}) used twice")));
            }
            seen.insert(u, v);
        }
    }
    if seen.edge_count() != n * (n - 1) / 2 {
        return Err(Error::VerifyFailed("cycles do not cover every edge".into()));
    }
    Ok(())
}

/// `k` Hamilton cycles decomposing `K_{2k+1}`; vertex `2k` is the hub.
pub fn walecki_decomposition(k: usize) -> Result<Vec<Graph>> {
    if k == 0 {
        return Err(Error::BadK(k));
    }
    let m = 2 * k;
    if m + 1 > crate::graph::MAX_VERTICES {
        return Err(Error::OutOfRange { index: m + 1, limit: crate::graph::MAX_VERTICES });
    }
    let hub = m;
    let mut cycles = Vec::with_capacity(k);
    for i in 0..k {
        // zigzag i, i+1, i-1, i+2, i-2, ..., i+k
        let mut seq = vec![i];
        for j in 1..=k {
            seq.push((i + j) % m);
            if j < k {
                seq.push((i + m - j) % m);
            }
        }
        let mut g = Graph::empty(m + 1)?;
        g.add_edge(hub, seq[0])?;
        for w in seq.windows(2) {
            g.add_edge(w[0], w[1])?;
        }
        g.add_edge(*seq.last().expect("nonempty"), hub)?;
        cycles.push(g);
    }
    verify_hamilton_decomposition(m + 1, &cycles)?;
    Ok(cycles)
}

/// Every component a star (isolated vertices and single edges included).
pub fn is_galaxy(g: &Graph) -> bool {
    g.components().into_iter().all(|c| {
        let size = c.count_ones() as usize;
        let edges = ones(c).map(|v| g.degree(v)).sum::<usize>() / 2;
        edges + 1 == size && (size <= 2 || ones(c).any(|v| g.degree(v) == size - 1))
    })
}

/// The `k + 1` galaxies covering `K_{2k}`. Galaxy `i` joins centers `v_i` and
/// `v_{i+k}` to the next `k - 1` vertices each; the last one is the matching
/// `v_i v_{i+k}` (indices 1-based mod `2k` in the construction, 0-based here).
pub fn galaxy_cover(k: usize) -> Result<Vec<Graph>> {
    if k < 2 {
        return Err(Error::BadK(k));
    }
    let m = 2 * k;
    if m > crate::graph::MAX_VERTICES {
        return Err(Error::OutOfRange { index: m, limit: crate::graph::MAX_VERTICES });
    }
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..k {
        let mut g = Graph::empty(m)?;
        for center in [i, i + k] {
            for j in 1..k {
                g.add_edge(center, (center + j) % m)?;
            }
        }
        out.push(g);
    }
    let mut last = Graph::empty(m)?;
    for i in 0..k {
        last.add_edge(i, i + k)?;
    }
    out.push(last);
    let union = union_graphs(m, &out);
    if union.edge_count() != m * (m - 1) / 2 || !out.iter().all(is_galaxy) {
        return Err(Error::VerifyFailed("galaxy cover check failed".into()));
    }
    Ok(out)
}

/// Six generalized factors covering `K_11` on vertices 1..11 (shifted to
/// 0..10 when built). Each block is a walk; triangles repeat their first vertex.
const K11_FACTORS: [&[&[usize]]; 6] = [
    &[&[1, 4, 7, 1], &[2, 5, 8, 2], &[3, 6, 9, 3], &[10, 11]],
    &[&[2, 6, 10, 2], &[3, 4, 11, 3], &[7, 8, 9, 7], &[1, 5]],
    &[&[1, 9, 11, 1], &[3, 8, 10, 3], &[4, 5, 6, 4], &[2, 7]],
    &[&[5, 9, 10, 5], &[6, 7, 11, 6], &[1, 2, 3, 1], &[4, 8]],
    &[&[1, 6, 8, 1], &[2, 4, 9, 2], &[3, 5, 11], &[7, 10]],
    &[&[1, 10, 4], &[2, 11, 8], &[3, 7, 5]],
];

pub fn k11_cover() -> Result<FactorCover> {
    let mut factors = Vec::with_capacity(6);
    for blocks in K11_FACTORS {
        let mut g = Graph::empty(11)?;
        for walk in blocks {
            for w in walk.windows(2) {
                g.add_edge(w[0] - 1, w[1] - 1)?;
            }
        }
        factors.push(g);
    }
    let fc = FactorCover::new(11, factors, CoverMode::Cover, Properness::Generalized)?;
    if !fc.covers_complete() {
        return Err(Error::VerifyFailed("K11 factors do not cover every edge".into()));
    }
    Ok(fc)
}

// ---------------------------------------------------------------------------
// chromatic number of unions of r factors

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChiStatus {
    Exact,
    Interval,
    /// The value holds if `delta0` is a valid threshold; bounds stay unconditional.
    Conditional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiReport {
    pub r: u64,
    pub lower: u64,
    pub upper: u64,
    pub status: ChiStatus,
    pub delta0: u64,
    pub conditional_value: Option<u64>,
    /// The value is an open problem (not merely beyond the threshold).
    pub open: bool,
}

const A0_EXCEPTIONS: [u64; 11] = [3, 6, 18, 21, 24, 30, 33, 39, 42, 51, 66];

pub fn chi_r_report(r: u64, delta0: u64) -> Result<ChiReport> {
    if r == 0 {
        return Err(Error::Invalid("r must be at least 1".into()));
    }
    if delta0 == 0 {
        return Err(Error::Invalid("delta0 must be at least 1".into()));
    }
    let exact = |v: u64| ChiReport {
        r,
        lower: v,
        upper: v,
        status: ChiStatus::Exact,
        delta0,
        conditional_value: None,
        open: false,
    };
    let interval = |open: bool| ChiReport {
        r,
        lower: 2 * r - 1,
        upper: 2 * r,
        status: ChiStatus::Interval,
        delta0,
        conditional_value: None,
        open,
    };
    Ok(match r % 3 {
        1 => exact(2 * r + 1),
        0 if A0_EXCEPTIONS.contains(&r) => interval(true),
        0 => exact(2 * r),
        _ if r == 2 || r >= DEFAULT_DELTA0 => exact(2 * r - 1),
        _ if r >= delta0 => {
            ChiReport { status: ChiStatus::Conditional, conditional_value: Some(2 * r - 1), ..interval(false) }
        }
        _ => interval(false),
    })
}

// ---------------------------------------------------------------------------
// random fixtures

/// A seeded random triangle factor (proper) or generalized factor on `n` vertices.
pub fn random_factor(n: usize, properness: Properness, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_factor_with(n, properness, &mut rng)
}

pub fn random_factor_with(n: usize, properness: Properness, rng: &mut impl Rng) -> Result<Graph> {
    if n == 0 || n > crate::graph::MAX_VERTICES || (properness == Properness::Proper && !n.is_multiple_of(3)) {
        return Err(Error::BadN(n));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Graph::empty(n)?;
    let mut i = 0;
    while i < n {
        let size = match properness {
            Properness::Proper => 3,
            Properness::Generalized => rng.random_range(1..=3usize.min(n - i)),
        };
        let b = &perm[i..i + size];
        match size {
            3 => {
                let edges = match properness {
                    Properness::Proper => 3,
                    Properness::Generalized => rng.random_range(0..=3),
                };
                // 3: triangle, 2: path centered at b[0], 1: one edge, 0: three isolated vertices
                if edges >= 1 {
                    g.insert(b[0], b[1]);
                }
                if edges >= 2 {
                    g.insert(b[0], b[2]);
                }
                if edges == 3 {
                    g.insert(b[1], b[2]);
                }
            }
            2 => g.insert(b[0], b[1]),
            _ => {}
        }
        i += size;
    }
    Ok(g)
}

/// Embeds `r` generalized factors on `n` vertices into `r` proper factors on
/// `3n` vertices (originals keep their labels), so the union only grows.
pub fn extend_to_proper(n: usize, factors: &[Graph]) -> Result<Vec<Graph>> {
    let big = 3 * n;
    if big > crate::graph::MAX_VERTICES {
        return Err(Error::OutOfRange { index: big, limit: crate::graph::MAX_VERTICES });
    }
    let mut out = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        if f.n() != n || classify_factor(f) == FactorClass::NotAFactor {
            return Err(Error::Invalid(format!("factor {i} is not a generalized factor on {n} vertices")));
        }
        let mut g = Graph::empty(big)?;
        let mut fresh = n..big;
        let mut leftover = Vec::new();
        for comp in f.components() {
            let vs: Vec<usize> = ones(comp).collect();
            match vs.len() {
                3 => {
                    g.insert(vs[0], vs[1]);
                    g.insert(vs[1], vs[2]);
                    g.insert(vs[0], vs[2]);
                }
                2 => {
                    let w = fresh.next().expect("3n vertices suffice");
                    g.insert(vs[0], vs[1]);
                    g.insert(vs[0], w);
                    g.insert(vs[1], w);
                }
                _ => leftover.push(vs[0]),
            }
        }
        leftover.extend(fresh);
        for t in leftover.chunks(3) {
            g.insert(t[0], t[1]);
            g.insert(t[1], t[2]);
            g.insert(t[0], t[2]);
        }
        debug_assert_eq!(classify_factor(&g), FactorClass::Proper);
        out.push(g);
    }
    Ok(out)
}

/// Neighbors of `set` outside it.
pub fn outer_neighborhood(g: &Graph, set: u64) -> u64 {
    g.neighborhood(set) & !set
}
