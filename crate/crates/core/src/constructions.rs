//! Hypergraphs with small maximum matchings. The counterexample to the
//! Aharoni-Charbit-Howard bound comes first, then constructions built on
//! finite projective planes.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{regularity, Matching, PartiteHypergraph};

/// Label `f(e)`: the index `i < d` with at least two coordinates of `e` equal to `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AchLabeling {
    pub labels: Vec<usize>,
}

impl AchLabeling {
    /// Labels of edges in a matching are distinct, so `|M| <= d`.
    pub fn matching_upper_bound(&self) -> usize {
        let mut l = self.labels.clone();
        l.sort_unstable();
        l.dedup();
        l.len()
    }
}

/// The `m x m x m` hypergraph with `m = floor(3d/2)`, `A = 0..d`, `B = d..m`:
/// edges `(i,i,j)`, `(i,j,i)`, `(j,i,i)` for `i` in `A`, `j` in `B`, plus
/// `(i,i,i)` when `d` is odd.
pub fn ach_counterexample(d: usize) -> Result<(PartiteHypergraph, AchLabeling)> {
    if d < 2 {
        return Err(Error::BadD(d));
    }
    let m = 3 * d / 2;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for i in 0..d {
        for j in d..m {
            for e in [[i, i, j], [i, j, i], [j, i, i]] {
                edges.push(e.to_vec());
                labels.push(i);
            }
        }
        if d % 2 == 1 {
            edges.push(vec![i, i, i]);
            labels.push(i);
        }
    }
    let h = PartiteHypergraph::new(vec![m; 3], edges, false)?;
    let f = AchLabeling { labels };
    verify_ach(&h, &f, d)?;
    Ok((h, f))
}

/// Regularity, simplicity, well-defined labels and intersecting label classes.
pub fn verify_ach(h: &PartiteHypergraph, f: &AchLabeling, d: usize) -> Result<()> {
    let fail = |s: String| Err(Error::VerifyFailed(s));
    if h.r() != 3 || !h.is_equipartite() {
        return fail("not a 3-partite hypergraph with equal parts".into());
    }
    if regularity(h) != Some(d) {
        return fail(format!("not {d}-regular"));
    }
    if !h.is_simple() {
        return fail("repeated edge".into());
    }
    if f.labels.len() != h.edges().len() {
        return fail("one label per edge is required".into());
    }
    for (e, (edge, &l)) in h.edges().iter().zip(&f.labels).enumerate() {
        let hits: Vec<usize> = (0..d).filter(|&i| edge.iter().filter(|&&x| x == i).count() >= 2).collect();
        if hits != [l] {
            return fail(format!("edge {e} has no unique label"));
        }
    }
    for a in 0..h.edges().len() {
        for b in a + 1..h.edges().len() {
            let meet = h.edges()[a].iter().zip(&h.edges()[b]).any(|(x, y)| x == y);
            if f.labels[a] == f.labels[b] && !meet {
                return fail(format!("edges {a} and {b} share a label but are disjoint"));
            }
        }
    }
    Ok(())
}

/// `ceil((d - 1) n / d)`.
pub fn ach_bound(d: u64, n: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::BadD(0));
    }
    Ok(((d - 1) * n).div_ceil(d))
}

/// Vertices covered by the greedy matching: `n d / (1 + (d - 1) r)`.
pub fn greedy_matching_bound(n: u64, d: u64, r: u64) -> Result<Ratio<u64>> {
    if n == 0 || d == 0 || r == 0 {
        return Err(Error::Invalid("n, d and r must be positive".into()));
    }
    Ok(Ratio::new(n * d, 1 + (d - 1) * r))
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| !p.is_multiple_of(i))
}

/// Largest supported plane order.
pub const MAX_PLANE_ORDER: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectivePlane {
    pub p: usize,
    /// Normalized homogeneous coordinates of each point.
    pub points: Vec<[usize; 3]>,
    /// Sorted point indices of each line.
    pub lines: Vec<Vec<usize>>,
}

/// The plane over `Z_p`. Points and lines are the nonzero vectors whose first
/// nonzero coordinate is 1; incidence is a zero dot product.
pub fn projective_plane(p: usize) -> Result<ProjectivePlane> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PLANE_ORDER {
        return Err(Error::OutOfRange { index: p, limit: MAX_PLANE_ORDER });
    }
    let mut pts = Vec::with_capacity(p * p + p + 1);
    for a in 0..p {
        for b in 0..p {
            pts.push([1, a, b]);
        }
    }
    for a in 0..p {
        pts.push([0, 1, a]);
    }
    pts.push([0, 0, 1]);
    let lines = pts
        .iter()
        .map(|l| (0..pts.len()).filter(|&i| (0..3).map(|c| l[c] * pts[i][c]).sum::<usize>() % p == 0).collect())
        .collect();
    let plane = ProjectivePlane { p, points: pts, lines };
    plane.verify()?;
    Ok(plane)
}

impl ProjectivePlane {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// The incidence axioms.
    pub fn verify(&self) -> Result<()> {
        let p = self.p;
        let n = p * p + p + 1;
        let fail = |s: &str| Err(Error::VerifyFailed(s.into()));
        if self.points.len() != n || self.lines.len() != n {
            return fail("wrong number of points or lines");
        }
        if self.lines.iter().any(|l| l.len() != p + 1) {
            return fail("a line has the wrong size");
        }
        let mut on = vec![vec![false; n]; n];
        for (li, l) in self.lines.iter().enumerate() {
            for &x in l {
                on[li][x] = true;
            }
        }
        for x in 0..n {
            if (0..n).filter(|&l| on[l][x]).count() != p + 1 {
                return fail("a point is on the wrong number of lines");
            }
            for y in x + 1..n {
                if (0..n).filter(|&l| on[l][x] && on[l][y]).count() != 1 {
                    return fail("two points do not span exactly one line");
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if (0..n).filter(|&x| on[a][x] && on[b][x]).count() != 1 {
                    return fail("two lines do not meet in exactly one point");
                }
            }
        }
        Ok(())
    }

    /// Lines through point `x`, in index order.
    pub fn lines_through(&self, x: usize) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| self.lines[l].contains(&x)).collect()
    }
}

/// Delete point 0. Parts are `L - x` for the `p + 1` lines through it; the
/// edges are the remaining `p^2` lines.
pub fn truncated_plane(p: usize) -> Result<PartiteHypergraph> {
    let plane = projective_plane(p)?;
    let x = 0;
    let through = plane.lines_through(x);
    let parts: Vec<Vec<usize>> =
        through.iter().map(|&l| plane.lines[l].iter().copied().filter(|&y| y != x).collect()).collect();
    let mut edges = Vec::with_capacity(p * p);
    for (li, line) in plane.lines.iter().enumerate() {
        if through.contains(&li) {
            continue;
        }
        let e: Vec<usize> = parts
            .iter()
            .map(|part| {
                let meet: Vec<usize> = (0..part.len()).filter(|&k| line.contains(&part[k])).collect();
                debug_assert_eq!(meet.len(), 1);
                meet[0]
            })
            .collect();
        edges.push(e);
    }
    let h = PartiteHypergraph::new(vec![p; p + 1], edges, false)?;
    verify_truncated_plane(&h, p)?;
    Ok(h)
}

fn pairwise_intersecting(edges: &[Vec<usize>]) -> bool {
    edges.iter().enumerate().all(|(a, ea)| edges[a + 1..].iter().all(|eb| ea.iter().zip(eb).any(|(x, y)| x == y)))
}

pub fn verify_truncated_plane(h: &PartiteHypergraph, p: usize) -> Result<()> {
    let ok = h.part_sizes() == vec![p; p + 1].as_slice()
        && h.edges().len() == p * p
        && regularity(h) == Some(p)
        && h.is_simple()
        && pairwise_intersecting(h.edges());
    if ok {
        Ok(())
    } else {
        Err(Error::VerifyFailed("truncated plane check failed".into()))
    }
}

/// `m` truncated planes sharing parts `V_1..V_{p+1}` (copy `c` occupies
/// indices `c p .. (c+1) p`), a fresh part `V_{p+2}` of size `p m`, and every
/// edge `L + v` for a line `L` of a copy and `v` in `V_{p+2}`.
pub fn claim51_hypergraph(p: usize, m: usize) -> Result<PartiteHypergraph> {
    if m == 0 {
        return Err(Error::BadM(m));
    }
    let plane = truncated_plane(p)?;
    let size = p * m;
    if plane.edges().len() * m * size > crate::hypergraph::MAX_MATCHING_EDGES {
        return Err(Error::OutOfRange {
            index: plane.edges().len() * m * size,
            limit: crate::hypergraph::MAX_MATCHING_EDGES,
        });
    }
    let mut edges = Vec::new();
    for c in 0..m {
        for line in plane.edges() {
            for v in 0..size {
                let mut e: Vec<usize> = line.iter().map(|&y| c * p + y).collect();
                e.push(v);
                edges.push(e);
            }
        }
    }
    let h = PartiteHypergraph::new(vec![size; p + 2], edges, false)?;
    verify_claim51(&h, p, m)?;
    Ok(h)
}

/// Structure checks plus the exact matching number: edges from one copy pairwise
/// intersect (at most one per copy), and one edge per copy with distinct
/// apex vertices is a matching of size `m`.
pub fn verify_claim51(h: &PartiteHypergraph, p: usize, m: usize) -> Result<()> {
    let fail = |s: &str| Err(Error::VerifyFailed(s.into()));
    let size = p * m;
    if h.part_sizes() != vec![size; p + 2].as_slice() {
        return fail("wrong part sizes");
    }
    if regularity(h) != Some(p * p * m) || !h.is_simple() {
        return fail("not a simple p^2 m-regular hypergraph");
    }
    let copy_of = |e: &Vec<usize>| e[0] / p;
    for c in 0..m {
        let class: Vec<Vec<usize>> = h.edges().iter().filter(|e| copy_of(e) == c).cloned().collect();
        if class.iter().any(|e| e[..p + 1].iter().any(|&y| y / p != c)) || !pairwise_intersecting(&class) {
            return fail("copy edges do not pairwise intersect");
        }
    }
    if claim51_matching(h, p, m).map(|mm| mm.is_valid_for(h)) != Some(true) {
        return fail("no matching of size m");
    }
    Ok(())
}

/// One edge per copy, apex `c` for copy `c`.
pub fn claim51_matching(h: &PartiteHypergraph, p: usize, m: usize) -> Option<Matching> {
    let edges = (0..m)
        .map(|c| h.edges().iter().position(|e| e[0] / p == c && e[p + 1] == c))
        .collect::<Option<Vec<usize>>>()?;
    Some(Matching { edges })
}

/// Replaces part `part` by `copies` identical parts; intersections, hence
/// matchings, are unchanged.
pub fn duplicate_part(h: &PartiteHypergraph, part: usize, copies: usize) -> Result<PartiteHypergraph> {
    if part >= h.r() {
        return Err(Error::OutOfRange { index: part, limit: h.r() });
    }
    if copies == 0 {
        return Err(Error::Invalid("copies must be at least 1".into()));
    }
    let widen = |v: &[usize]| -> Vec<usize> {
        let mut out = v[..part].to_vec();
        out.extend(std::iter::repeat_n(v[part], copies));
        out.extend_from_slice(&v[part + 1..]);
        out
    };
    let edges = h.edges().iter().map(|e| widen(e)).collect();
    PartiteHypergraph::new(widen(h.part_sizes()), edges, h.allow_multi())
}
