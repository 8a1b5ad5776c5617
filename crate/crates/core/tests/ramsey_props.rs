use proptest::prelude::*;
use ramsey_nice::graph::Graph;
use ramsey_nice::ramsey::{
    closed_form_c_k, compute_c_k, g_k_upper_bound, has_copy, mono_free_search, verify_mono_free, ForbiddenFamily,
    SearchOptions,
};
use ramsey_nice::search::{Budget, Existence};
use ramsey_nice::Error;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Pattern containment by trying every injective vertex map.
fn brute_contains(host: &Graph, pat: &Graph) -> bool {
    let (n, p) = (host.n(), pat.n());
    if p > n {
        return false;
    }
    let pe = pat.edges();
    let mut map = vec![usize::MAX; p];
    let mut used = vec![false; n];
    fn rec(i: usize, map: &mut [usize], used: &mut [bool], host: &Graph, pe: &[(usize, usize)]) -> bool {
        if i == map.len() {
            return pe.iter().all(|&(a, b)| host.has_edge(map[a], map[b]));
        }
        for v in 0..host.n() {
            if !used[v] {
                used[v] = true;
                map[i] = v;
                if rec(i + 1, map, used, host, pe) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    rec(0, &mut map, &mut used, host, &pe)
}

/// Enumerates all k^m colorings of K_n.
fn brute_exists(n: usize, k: usize, fam: &ForbiddenFamily) -> bool {
    let edges = Graph::complete(n).unwrap().edges();
    let pats: Vec<Graph> = fam.patterns().iter().map(|p| p.graph()).collect();
    let m = edges.len();
    let mut colors = vec![0usize; m];
    loop {
        let ok = (0..k).all(|c| {
            let class: Vec<(usize, usize)> = (0..m).filter(|&i| colors[i] == c).map(|i| edges[i]).collect();
            let g = Graph::from_edges(n, &class).unwrap();
            pats.iter().all(|p| !brute_contains(&g, p))
        });
        if ok {
            return true;
        }
        let mut i = 0;
        while i < m {
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
        if i == m {
            return false;
        }
    }
}

const SPECS: &[&str] = &[
    "F1",
    "F2",
    "F3",
    "F4",
    "F5",
    "F6",
    "F7",
    "K2",
    "P3",
    "MATCH:2",
    "K3,MATCH:2",
    "STAR:4",
    "PATH:3",
    "MATCH:3",
    "P3,MATCH:2",
    "G4[0-1 1-2 2-3 3-0]",
];

fn fam(spec: &str) -> ForbiddenFamily {
    ForbiddenFamily::parse(spec).unwrap()
}

fn opts() -> SearchOptions {
    SearchOptions { budget: Budget::new(5_000_000), ..Default::default() }
}

fn exists(n: usize, k: usize, f: &ForbiddenFamily, o: &SearchOptions) -> bool {
    match mono_free_search(n, k, f, o).unwrap().outcome {
        Existence::Found(c) => {
            assert!(verify_mono_free(&c, f).ok);
            true
        }
        Existence::NotFound => false,
        Existence::Unknown => panic!("budget exhausted"),
    }
}

#[test]
fn detector_agrees_with_brute_containment() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    use rand::Rng;
    for _ in 0..400 {
        let n = rng.random_range(1..=7);
        let edges: Vec<(usize, usize)> =
            Graph::complete(n).unwrap().edges().into_iter().filter(|_| rng.random_bool(0.4)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        for spec in SPECS {
            for p in fam(spec).patterns() {
                assert_eq!(has_copy(&g, p), brute_contains(&g, &p.graph()), "{spec} in {}", g.to_text());
            }
        }
    }
}

#[test]
fn existence_agrees_with_brute_force() {
    for spec in SPECS {
        let f = fam(spec);
        for k in 1..=2 {
            for n in 1..=5 {
                assert_eq!(exists(n, k, &f, &opts()), brute_exists(n, k, &f), "{spec} n={n} k={k}");
            }
        }
        for n in 1..=4 {
            assert_eq!(exists(n, 3, &f, &opts()), brute_exists(n, 3, &f), "{spec} n={n} k=3");
        }
    }
}

#[test]
fn pattern_order_does_not_change_existence() {
    for spec in SPECS {
        let f = fam(spec);
        let rev = f.with_patterns_reversed();
        for k in 1..=3 {
            for n in 2..=6 {
                assert_eq!(exists(n, k, &f, &opts()), exists(n, k, &rev, &opts()), "{spec} n={n} k={k}");
            }
        }
    }
}

#[test]
fn parallel_search_matches_sequential() {
    for spec in ["F2", "F4", "F3", "MATCH:2"] {
        let f = fam(spec);
        for n in 4..=7 {
            let seq = mono_free_search(n, 3, &f, &opts()).unwrap().outcome;
            let par = mono_free_search(n, 3, &f, &SearchOptions { threads: Some(4), ..opts() }).unwrap().outcome;
            assert_eq!(seq.is_found(), par.is_found(), "{spec} n={n}");
            assert_eq!(seq.found().map(|c| c.to_text()), par.found().map(|c| c.to_text()));
        }
    }
}

/// (family, k) -> c_k for every pair the search settles within the cap.
fn computed_table() -> Vec<(&'static str, usize, usize)> {
    let mut out = Vec::new();
    for spec in SPECS {
        let f = fam(spec);
        for k in 1..=3 {
            match compute_c_k(&f, k, 9, &opts()) {
                Ok(r) => out.push((*spec, k, r.value)),
                Err(Error::CapReached { .. }) | Err(Error::BudgetExceeded { .. }) => {}
                Err(e) => panic!("{spec} k={k}: {e}"),
            }
        }
    }
    out
}

#[test]
fn computed_values_are_monotone_bounded_and_match_closed_forms() {
    let table = computed_table();
    assert!(table.len() >= 30, "only {} entries settled", table.len());
    let mut compared = 0;
    for &(spec, k, v) in &table {
        let f = fam(spec);
        if let Some(prev) = table.iter().find(|e| e.0 == spec && e.1 + 1 == k) {
            assert!(prev.2 <= v, "{spec}: c_{} = {} > c_{k} = {v}", k - 1, prev.2);
        }
        if let Ok(g) = g_k_upper_bound(&f, k as u64) {
            assert!((v as u64) < g + 1, "{spec} k={k}");
        }
        if let Some(cf) = closed_form_c_k(&f, k as u64) {
            if !cf.asymptotic_only && !cf.conditional {
                assert_eq!(cf.value, v as u64, "{spec} k={k}");
                compared += 1;
            }
        }
    }
    assert!(compared >= 20, "only {compared} closed forms compared");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabeling_preserves_existence(spec_i in 0..SPECS.len(), n in 3usize..=6, k in 1usize..=3, seed in any::<u64>()) {
        let f = fam(SPECS[spec_i]);
        let base = exists(n, k, &f, &opts());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let o = SearchOptions { relabel: Some(perm), ..opts() };
            prop_assert_eq!(exists(n, k, &f, &o), base);
        }
    }
}
