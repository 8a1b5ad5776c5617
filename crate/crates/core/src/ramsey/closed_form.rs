//! Known closed forms for `c_k` and upper bounds on `g_k`.

use std::collections::BTreeSet;

use super::pattern::{ForbiddenFamily, Shape};
use crate::error::{Error, Result};
use crate::factor::{chi_r_report, ChiStatus, DEFAULT_DELTA0};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub value: u64,
    /// The formula is only known to hold for sufficiently large `k`.
    pub asymptotic_only: bool,
    /// Holds only if the supplied `delta0` is a valid threshold.
    pub conditional: bool,
}

impl ClosedForm {
    fn exact(value: u64) -> Option<ClosedForm> {
        Some(ClosedForm { value, asymptotic_only: false, conditional: false })
    }

    fn asymptotic(value: u64) -> Option<ClosedForm> {
        Some(ClosedForm { value, asymptotic_only: true, conditional: false })
    }
}

pub fn closed_form_c_k(fam: &ForbiddenFamily, k: u64) -> Option<ClosedForm> {
    closed_form_c_k_with(fam, k, DEFAULT_DELTA0)
}

/// Value of `c_k(fam)` when the family has a known closed form.
pub fn closed_form_c_k_with(fam: &ForbiddenFamily, k: u64, delta0: u64) -> Option<ClosedForm> {
    if k == 0 {
        return None;
    }
    let shapes: BTreeSet<Shape> = fam.patterns().iter().map(|p| p.shape()).collect();
    if shapes.contains(&Shape::K2) {
        return ClosedForm::exact(1);
    }
    if shapes.contains(&Shape::Other) {
        return None;
    }
    let min_matching = shapes
        .iter()
        .filter_map(|s| match s {
            Shape::Matching(m) => Some(*m as u64),
            _ => None,
        })
        .min();
    if shapes.contains(&Shape::Star(2)) {
        // every class is a matching
        return match min_matching {
            Some(m) => ClosedForm::asymptotic(max_complete_covered(m - 1, k)),
            None => ClosedForm::exact(k + k % 2),
        };
    }
    if min_matching == Some(2) {
        // every class is a star or a triangle
        let min_star = shapes
            .iter()
            .filter_map(|s| match s {
                Shape::Star(e) => Some(*e as u64),
                _ => None,
            })
            .min();
        return match min_star {
            Some(e) => ClosedForm::asymptotic(max_complete_covered(e - 1, k)),
            None if shapes.contains(&Shape::Triangle) => ClosedForm::exact(k + 1),
            None => ClosedForm::exact(k + 2),
        };
    }

    let tri = Shape::Triangle;
    let p4 = Shape::Path(3);
    let s3 = Shape::Star(3);
    let is = |want: &[Shape]| shapes.len() == want.len() && want.iter().all(|s| shapes.contains(s));
    if is(&[p4]) {
        return ClosedForm::exact(match k {
            3 => 5,
            _ if k % 3 == 1 => 2 * k + 1,
            _ => 2 * k,
        });
    }
    if is(&[s3]) {
        return ClosedForm::exact(2 * k + 1);
    }
    if is(&[tri, s3]) {
        return ClosedForm::exact(if k == 1 { 2 } else { 2 * k + 1 });
    }
    if is(&[tri, p4]) {
        return ClosedForm::exact(match k {
            1 => 2,
            2 => 3,
            _ => 2 * k - 2,
        });
    }
    if is(&[p4, s3]) {
        let rep = chi_r_report(k, delta0).ok()?;
        return match rep.status {
            ChiStatus::Exact => ClosedForm::exact(rep.lower),
            ChiStatus::Conditional => {
                Some(ClosedForm { value: rep.conditional_value?, asymptotic_only: false, conditional: true })
            }
            ChiStatus::Interval => None,
        };
    }
    if is(&[tri, p4, s3]) && k % 9 == 6 {
        return ClosedForm::asymptotic(4 * k / 3 + 1);
    }
    None
}

/// Largest `s` with `C(s, 2) <= r * k`.
fn max_complete_covered(r: u64, k: u64) -> u64 {
    let budget = r as u128 * k as u128;
    let mut s: u128 = ((2.0 * budget as f64).sqrt() as u128).saturating_sub(2);
    while (s + 1) * s / 2 <= budget {
        s += 1;
    }
    s as u64
}

/// `2 k n0`, with `n0` the order of the smallest forest in the family.
pub fn g_k_upper_bound(fam: &ForbiddenFamily, k: u64) -> Result<u64> {
    let n0 = fam
        .patterns()
        .iter()
        .filter(|p| p.is_forest())
        .map(|p| p.vertex_count() as u64)
        .min()
        .ok_or(Error::NoForest)?;
    Ok(2 * k * n0)
}

/// Degree-counting bound `g_k({K3, P4, S3}) <= floor(4k/3) + 1`.
pub fn f7_upper_bound(k: u64) -> u64 {
    4 * k / 3 + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str, k: u64) -> Option<u64> {
        closed_form_c_k(&ForbiddenFamily::parse(s).unwrap(), k).map(|c| c.value)
    }

    #[test]
    fn documented_examples() {
        assert_eq!(cf("P3", 3), Some(4));
        assert_eq!(cf("K2,F7", 7), Some(1));
        assert_eq!(cf("F3", 4), Some(9));
    }

    #[test]
    fn p4_values() {
        let v: Vec<_> = (1..=7).map(|k| cf("P4", k).unwrap()).collect();
        assert_eq!(v, vec![3, 4, 5, 9, 10, 12, 15]);
    }

    #[test]
    fn presets() {
        assert_eq!(cf("F5", 1), Some(2));
        assert_eq!(cf("F5", 3), Some(7));
        assert_eq!(cf("F4", 1), Some(2));
        assert_eq!(cf("F4", 2), Some(3));
        assert_eq!(cf("F4", 5), Some(8));
        assert_eq!(cf("F6", 1), Some(3));
        assert_eq!(cf("F6", 2), Some(3));
        assert_eq!(cf("F6", 4), Some(9));
        assert_eq!(cf("F6", 9), Some(18));
        assert_eq!(cf("F6", 3), None);
        assert_eq!(cf("F6", 5), None);
        assert_eq!(cf("F1", 2), None);
    }

    #[test]
    fn f6_conditional_below_proven_threshold() {
        let f6 = ForbiddenFamily::preset(6).unwrap();
        let c = closed_form_c_k_with(&f6, 5, 5).unwrap();
        assert_eq!(c.value, 9);
        assert!(c.conditional);
    }

    #[test]
    fn asymptotic_flags() {
        let f7 = ForbiddenFamily::preset(7).unwrap();
        let c = closed_form_c_k(&f7, 15).unwrap();
        assert_eq!(c.value, 21);
        assert!(c.asymptotic_only);
        assert!(closed_form_c_k(&f7, 14).is_none());
        let pm = closed_form_c_k(&ForbiddenFamily::parse("P3,MATCH:3").unwrap(), 10).unwrap();
        // 2 * 10 >= C(s, 2) gives s = 6
        assert_eq!(pm.value, 6);
        assert!(pm.asymptotic_only);
        let ms = closed_form_c_k(&ForbiddenFamily::parse("MATCH:2,STAR:3").unwrap(), 10).unwrap();
        assert_eq!(ms.value, 6);
        assert!(ms.asymptotic_only);
    }

    #[test]
    fn two_edge_matching() {
        // a triangle has no two disjoint edges, so it is allowed as a class
        assert_eq!(cf("MATCH:2", 1), Some(3));
        assert_eq!(cf("MATCH:2", 4), Some(6));
        assert_eq!(cf("MATCH:2,K3", 4), Some(5));
    }

    #[test]
    fn max_complete_covered_oracle() {
        for r in 1..6u64 {
            for k in 1..40u64 {
                let brute = (0..200u64).filter(|s| s * s.saturating_sub(1) / 2 <= r * k).max().unwrap();
                assert_eq!(max_complete_covered(r, k), brute);
            }
        }
    }

    #[test]
    fn g_k_bounds() {
        let p4 = ForbiddenFamily::parse("P4").unwrap();
        assert_eq!(g_k_upper_bound(&p4, 3).unwrap(), 24);
        let k2 = ForbiddenFamily::parse("K2").unwrap();
        assert_eq!(g_k_upper_bound(&k2, 1).unwrap(), 4);
        let k3 = ForbiddenFamily::parse("K3").unwrap();
        assert_eq!(g_k_upper_bound(&k3, 5), Err(Error::NoForest));
        assert_eq!(f7_upper_bound(15), 21);
    }
}
