use num_rational::Ratio;
use ramsey_nice::constructions::{
    ach_bound, ach_counterexample, claim51_hypergraph, claim51_matching, duplicate_part, greedy_matching_bound,
    projective_plane, truncated_plane, verify_truncated_plane,
};
use ramsey_nice::hypergraph::{disjoint_copies, max_matching, regularity};
use ramsey_nice::search::Budget;

#[test]
fn ach_matching_is_d_and_below_the_conjecture() {
    for d in 2..=9 {
        let (h, f) = ach_counterexample(d).unwrap();
        let n = h.part_sizes()[0];
        assert_eq!(n, 3 * d / 2);
        assert_eq!(regularity(&h), Some(d));
        assert!(h.is_simple());
        let mm = max_matching(&h, Budget::unlimited()).unwrap();
        assert_eq!(mm.size, d);
        assert_eq!(f.matching_upper_bound(), d);
        let ratio = Ratio::new(mm.size, n);
        if d % 2 == 0 {
            assert_eq!(ratio, Ratio::new(2, 3));
        } else {
            assert_eq!(ratio, Ratio::new(2 * d, 3 * d - 1));
        }
        if d >= 4 {
            assert!((mm.size as u64) < ach_bound(d as u64, n as u64).unwrap());
        }
    }
}

#[test]
fn ach_copies_keep_the_ratio() {
    let (h, _) = ach_counterexample(4).unwrap();
    for t in 1..=3 {
        let big = disjoint_copies(&h, t).unwrap();
        let mm = max_matching(&big, Budget::unlimited()).unwrap();
        assert_eq!(Ratio::new(mm.size, big.part_sizes()[0]), Ratio::new(2, 3));
    }
}

#[test]
fn ach_bound_is_a_ceiling() {
    for d in 1..=12u64 {
        for n in 0..=40u64 {
            let b = ach_bound(d, n).unwrap();
            assert!(b * d >= (d - 1) * n && (b == 0 || (b - 1) * d < (d - 1) * n));
        }
    }
}

#[test]
fn greedy_bound_values() {
    assert_eq!(greedy_matching_bound(12, 4, 3).unwrap(), Ratio::new(48, 10));
    for r in 1..=5 {
        assert!(greedy_matching_bound(100, 1, r).unwrap() == Ratio::from_integer(100));
    }
}

#[test]
fn planes_satisfy_the_axioms() {
    for p in [2, 3, 5, 7, 11] {
        let plane = projective_plane(p).unwrap();
        plane.verify().unwrap();
        assert_eq!(plane.point_count(), p * p + p + 1);
        assert_eq!(plane.lines.len(), p * p + p + 1);
        // any two lines meet in exactly one point, checked independently
        for a in 0..plane.lines.len() {
            for b in a + 1..plane.lines.len() {
                let common = plane.lines[a].iter().filter(|x| plane.lines[b].contains(x)).count();
                assert_eq!(common, 1);
            }
        }
        let t = truncated_plane(p).unwrap();
        verify_truncated_plane(&t, p).unwrap();
        assert_eq!(t.edges().len(), p * p);
        assert!(t.part_sizes().iter().all(|&s| s == p));
        assert_eq!(max_matching(&t, Budget::unlimited()).unwrap().size, 1);
    }
    assert!(projective_plane(4).is_err());
}

#[test]
fn plane_hypergraph_matching_number_and_degree() {
    for (p, m) in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2)] {
        let h = claim51_hypergraph(p, m).unwrap();
        assert_eq!(regularity(&h), Some(p * p * m));
        assert_eq!(h.r(), p + 2);
        let mm = max_matching(&h, Budget::unlimited()).unwrap();
        assert_eq!(mm.size, m);
        assert_eq!(Ratio::new(mm.size, h.part_sizes()[0]), Ratio::new(1, p));
        assert!(claim51_matching(&h, p, m).unwrap().is_valid_for(&h));
        let wide = duplicate_part(&h, p + 1, 3).unwrap();
        assert_eq!(wide.r(), p + 4);
        assert_eq!(max_matching(&wide, Budget::unlimited()).unwrap().size, m);
    }
}
