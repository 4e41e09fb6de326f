use std::sync::Arc;

use ctperiod::kernel::PrimeField;
use ctperiod::mfcat::{bikr_loops, bikr_tilting, brute_hom_stabilized, mf_stable_hom, mf_syzygy, Curve, MF1};
use proptest::prelude::*;

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn curve(factors: &[&str]) -> Arc<Curve> {
    Curve::parse(f5(), factors).unwrap()
}

/// BIKR summands together with their syzygies.
fn objects(c: &Arc<Curve>) -> Vec<MF1> {
    let t = bikr_tilting(c).unwrap();
    let mut out = t.clone();
    for m in &t {
        let s = mf_syzygy(m);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

const CURVES: [&[&str]; 4] = [&["x", "y"], &["x", "y", "x+y"], &["x", "x+y^2"], &["x", "y", "x+y", "x+2*y"]];

#[test]
fn colon_formula_matches_brute_force() {
    let mut pairs = 0;
    for fs in CURVES {
        let c = curve(fs);
        let objs = objects(&c);
        for m in &objs {
            for n in &objs {
                let fast = mf_stable_hom(m, n).unwrap().dim();
                let slow = brute_hom_stabilized(m, n).unwrap().dim;
                assert_eq!(fast, slow, "{m} → {n} over {fs:?}");
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 20, "{pairs} pairs");
}

#[test]
fn bikr_objects_and_loops() {
    let c = curve(&["x", "y", "x+y"]);
    let t = bikr_tilting(&c).unwrap();
    assert_eq!(t.len(), 3);
    assert!(t[2].is_free());
    assert_eq!(bikr_loops(&c).unwrap(), vec![false, false]);
    assert_eq!(bikr_loops(&curve(&["x", "x+y^2"])).unwrap(), vec![true]);
}

#[test]
fn free_summand_is_stably_zero() {
    let c = curve(&["x", "y", "x+y", "x+2*y"]);
    let t = bikr_tilting(&c).unwrap();
    let free = t.last().unwrap();
    for m in &t {
        assert_eq!(mf_stable_hom(m, free).unwrap().dim(), 0);
        assert_eq!(mf_stable_hom(free, m).unwrap().dim(), 0);
    }
}

fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(0..n, 1..n).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn syzygy_is_an_involution(g in subset(4)) {
        let c = curve(&["x", "y", "x+y", "x+2*y"]);
        let m = MF1::new(&c, &g).unwrap();
        prop_assert_eq!(mf_syzygy(&mf_syzygy(&m)), m);
    }

    #[test]
    fn stable_hom_is_invariant_under_syzygy(g in subset(4), h in subset(4)) {
        let c = curve(&["x", "y", "x+y", "x+2*y"]);
        let (m, n) = (MF1::new(&c, &g).unwrap(), MF1::new(&c, &h).unwrap());
        let a = mf_stable_hom(&m, &n).unwrap().dim();
        let b = mf_stable_hom(&mf_syzygy(&m), &mf_syzygy(&n)).unwrap().dim();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn random_pairs_agree_with_brute_force(g in subset(3), h in subset(3)) {
        let c = curve(&["x", "y", "x+y"]);
        let (m, n) = (MF1::new(&c, &g).unwrap(), MF1::new(&c, &h).unwrap());
        prop_assert_eq!(mf_stable_hom(&m, &n).unwrap().dim(), brute_hom_stabilized(&m, &n).unwrap().dim);
    }
}
