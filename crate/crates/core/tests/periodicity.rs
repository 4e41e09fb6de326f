use std::sync::Arc;

use ctperiod::algebra::{algebra_from_quiver, find_isomorphism, preprojective_a, Arrow, FDAlgebra, QuiverPresentation};
use ctperiod::cluster::*;
use ctperiod::kernel::PrimeField;
use ctperiod::mfcat::{bikr_tilting, Curve, GradedMF};
use ctperiod::periodicity::*;
use ctperiod::repcat::{minimal_resolution, FDModule};
use proptest::prelude::*;

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn truncated(n: usize) -> Arc<FDAlgebra> {
    let q = QuiverPresentation {
        vertices: vec!["1".into()],
        arrows: vec![Arrow { name: "x".into(), source: "1".into(), target: "1".into() }],
        relations: vec![format!("x^{n}")],
        nilpotency_bound: n,
    };
    algebra_from_quiver(&q, f5()).unwrap()
}

fn cyclic(a: &Arc<FDAlgebra>, m: usize) -> FDModule {
    let r = FDModule::regular(a.clone());
    let sub: Vec<Vec<u32>> = (m..a.dim()).map(|k| a.basis(k)).collect();
    r.quotient(&sub).0
}

fn nakayama() -> CTObject<ModuleBackend> {
    let a = truncated(3);
    let be = ModuleBackend::new(a.clone()).unwrap();
    let summands = vec![FDModule::regular(a.clone()), cyclic(&a, 2), cyclic(&a, 1)];
    CTObject::new(be, summands, vec!["A".into(), "M2".into(), "k".into()], 1, 0).unwrap()
}

fn bikr(factors: &[&str], d: usize) -> CTObject<MFBackend> {
    let c = Curve::parse(f5(), factors).unwrap();
    let t = bikr_tilting(&c).unwrap();
    let objs: Vec<GradedMF> = t.iter().map(|m| GradedMF::from_mf1(m).unwrap()).collect();
    let labels = t.iter().map(|m| format!("{m:?}")).collect();
    CTObject::new(MFBackend::new(c).unwrap(), objs, labels, d, 0).unwrap()
}

#[test]
fn preprojective_a2_has_period_two() {
    let p = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
    let rep = detect_period(&p, 12, 0).unwrap();
    assert_eq!(rep.period, Some(2));
    assert!(rep.least_certified && rep.witness_verified && rep.resolution_minimal);
}

#[test]
fn preprojective_a3_has_period_six() {
    let p = algebra_from_quiver(&preprojective_a(3), f5()).unwrap();
    let rep = detect_period(&p, 12, 0).unwrap();
    assert_eq!(rep.period, Some(6));
    assert_eq!(rep.syzygy_dims, vec![10, 24, 24, 10, 24, 24, 10]);
    assert!(rep.least_certified && rep.witness_verified);
}

#[test]
fn truncated_cubic_scenario() {
    let t = nakayama();
    let mut end = StableEnd::compute(&t).unwrap();
    let p = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
    assert!(find_isomorphism(&end.gamma, &p, 0, 200).unwrap().is_some());
    let tw = periodic_object_check(&t, &end).unwrap();
    let r = tw.order.value();
    let rep = detect_period(&end.gamma, period_bound(1, r), 0).unwrap();
    assert_eq!(rep.period, Some(2));
    assert_eq!(divisibility_check(rep.period, 1, r).verdict, Divisibility::Divides);
    let s = BimoduleSetting::new(&end.gamma).unwrap();
    assert_eq!(omega_twist_check(&s, &tw.sigma, 1, 0).unwrap().holds, Some(true));
    let cy = cy_duality_check(&s, 1, -1, 0).unwrap();
    assert_eq!((cy.n, cy.holds), (3, Some(true)));
    end.attach_lambda(&t).unwrap();
    let lam = end.lambda.as_ref().unwrap();
    let tr = tor_lambda_suite(&end.gamma, lam, &tw.sigma, 1, 6, 0).unwrap();
    assert_eq!(tr.dims, vec![4, 0, 4, 0, 0, 0, 0]);
    assert_eq!(tr.nonzero, vec![0, 2]);
    assert_eq!(tr.dims[2], 4);
    assert!(tr.vanishing && tr.top_dim_matches);
    assert_eq!(tr.twist_holds, Some(true));
}

#[test]
fn bikr_three_lines_period() {
    let t = bikr(&["x", "y", "x+y"], 2);
    let end = StableEnd::compute(&t).unwrap();
    let tw = periodic_object_check(&t, &end).unwrap();
    let r = tw.order.value();
    let rep = detect_period(&end.gamma, period_bound(2, r), 0).unwrap();
    assert_eq!(rep.period, Some(4));
    assert_eq!(divisibility_check(rep.period, 2, r).verdict, Divisibility::Divides);
}

#[test]
fn bikr_cusp_like_period() {
    let t = bikr(&["x", "x+y^2"], 2);
    let end = StableEnd::compute(&t).unwrap();
    let rep = detect_period(&end.gamma, 12, 0).unwrap();
    assert_eq!(rep.period, Some(2));
    assert_eq!(rep.syzygy_dims, vec![2, 2, 2]);
}

#[test]
fn semisimple_and_non_self_injective() {
    let a = truncated(2);
    let be = ModuleBackend::new(a.clone()).unwrap();
    let t = CTObject::new(be, vec![FDModule::regular(a.clone()), cyclic(&a, 1)], vec!["A".into(), "k".into()], 1, 0)
        .unwrap();
    let end = StableEnd::compute(&t).unwrap();
    assert!(matches!(detect_period(&end.gamma, 12, 0), Err(ctperiod::Error::NotApplicable(_))));
    let q = QuiverPresentation {
        vertices: vec!["1".into(), "2".into()],
        arrows: vec![Arrow { name: "a".into(), source: "1".into(), target: "2".into() }],
        relations: vec![],
        nilpotency_bound: 2,
    };
    let path = algebra_from_quiver(&q, f5()).unwrap();
    let e = detect_period(&path, 12, 0).unwrap_err();
    assert!(e.to_string().starts_with("self-injectivity failed"));
}

#[test]
fn divisibility_cases() {
    assert_eq!(divisibility_check(Some(6), 1, Some(2)).verdict, Divisibility::Divides);
    assert_eq!(divisibility_check(Some(4), 1, Some(2)).verdict, Divisibility::DoesNotDivide);
    assert_eq!(divisibility_check(Some(4), 1, None).verdict, Divisibility::Conditional);
    assert_eq!(divisibility_check(None, 1, Some(2)).verdict, Divisibility::Unknown);
}

#[test]
fn syzygy_dims_repeat_with_the_period() {
    let t = bikr(&["x", "y", "x+y"], 2);
    let end = StableEnd::compute(&t).unwrap();
    let s = BimoduleSetting::new(&end.gamma).unwrap();
    let res = bimodule_resolution(&s, 12).unwrap();
    let dims: Vec<usize> = res.syzygies.iter().map(|m| m.dim()).collect();
    assert!((0..dims.len() - 4).all(|i| dims[i] == dims[i + 4]), "{dims:?}");
    assert!(res.certificate.minimal && res.certificate.exact);
}

#[test]
fn witness_scaling_and_corruption() {
    let p = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
    let s = BimoduleSetting::new(&p).unwrap();
    let res = minimal_resolution(&s.regular, 2).unwrap();
    let rep = detect_period(&p, 4, 0).unwrap();
    let w = ctperiod::Matrix::from_rows(f5(), rep.witness.as_ref().unwrap()).unwrap();
    assert!(verify_witness(&res.syzygies[2], &s.regular, &w));
    assert!(verify_witness(&res.syzygies[2], &s.regular, &w.scale(3)));
    let mut bad = w.clone();
    bad.set(0, 0, (w.get(0, 0) + 1) % 5);
    assert!(!verify_witness(&res.syzygies[2], &s.regular, &bad));
}

proptest! {
    #[test]
    fn divisibility_matches_arithmetic(p in 1usize..40, d in 1usize..6, r in proptest::option::of(1u64..8)) {
        let rep = divisibility_check(Some(p), d, r);
        let expected = match r {
            None => Divisibility::Conditional,
            Some(r) if (r * (d as u64 + 2)).is_multiple_of(p as u64) => Divisibility::Divides,
            Some(_) => Divisibility::DoesNotDivide,
        };
        prop_assert_eq!(rep.verdict, expected);
    }
}
