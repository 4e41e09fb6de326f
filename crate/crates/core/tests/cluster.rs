use std::sync::Arc;

use ctperiod::algebra::{algebra_from_quiver, Arrow, FDAlgebra, QuiverPresentation};
use ctperiod::cluster::*;
use ctperiod::kernel::PrimeField;
use ctperiod::mfcat::{bikr_tilting, Curve, GradedMF};
use ctperiod::repcat::{is_isomorphic, FDModule};

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

fn nakayama(d: usize) -> CTObject<ModuleBackend> {
    let a = truncated(3);
    let be = ModuleBackend::new(a.clone()).unwrap();
    let summands = vec![FDModule::regular(a.clone()), cyclic(&a, 2), cyclic(&a, 1)];
    CTObject::new(be, summands, vec!["A".into(), "M2".into(), "k".into()], d, 0).unwrap()
}

fn bikr(factors: &[&str], d: usize) -> CTObject<MFBackend> {
    let c = Curve::parse(f5(), factors).unwrap();
    let t = bikr_tilting(&c).unwrap();
    let objs: Vec<GradedMF> = t.iter().map(|m| GradedMF::from_mf1(m).unwrap()).collect();
    let labels = t.iter().map(|m| format!("{m:?}")).collect();
    CTObject::new(MFBackend::new(c).unwrap(), objs, labels, d, 0).unwrap()
}

#[test]
fn stable_auslander_algebra_of_truncated_polynomials() {
    let t = nakayama(1);
    let mut end = StableEnd::compute(&t).unwrap();
    assert_eq!(end.dim(), 4);
    let q = end.quiver().unwrap();
    assert_eq!(q.vertices, 2);
    assert_eq!(q.loops(), 0);
    assert_eq!((q.count(0, 1), q.count(1, 0)), (1, 1));
    let tw = periodic_object_check(&t, &end).unwrap();
    assert_eq!(tw.permutation, vec![1, 0]);
    assert_eq!(tw.order.value(), Some(2));
    let l = lemma21(&t).unwrap();
    assert!(l.cond1 && l.cond2 && l.agree);
    assert!(check_rigid(&t).unwrap().rigid);
    end.attach_lambda(&t).unwrap();
    assert_eq!(end.lambda.as_ref().unwrap().algebra.dim(), 3 + 2 + 1 + 2 + 2 + 1 + 1 + 1 + 1);
}

#[test]
fn maximality_on_the_nakayama_list() {
    let t = nakayama(1);
    let cands = t.summands.clone();
    assert!(check_maximal(&t, &cands).unwrap().maximal);
    let a = truncated(3);
    let small = CTObject::new(
        ModuleBackend::new(a.clone()).unwrap(),
        vec![FDModule::regular(a.clone()), cyclic(&a, 2)],
        vec!["A".into(), "M2".into()],
        1,
        0,
    )
    .unwrap();
    let r = check_maximal(&small, &cands).unwrap();
    assert!(!r.maximal);
    assert_eq!(r.failures, vec![2]);
}

#[test]
fn add_t_membership_and_approximations() {
    let t = nakayama(1);
    let a = truncated(3);
    let s = FDModule::direct_sum(&[cyclic(&a, 1), cyclic(&a, 2)], &a).unwrap();
    assert!(in_add_t(&t, &s).unwrap());
    let small = CTObject::new(
        ModuleBackend::new(a.clone()).unwrap(),
        vec![FDModule::regular(a.clone()), cyclic(&a, 2)],
        vec!["A".into(), "M2".into()],
        1,
        0,
    )
    .unwrap();
    assert!(!in_add_t(&small, &cyclic(&a, 1)).unwrap());
}

#[test]
fn resolution_2_10_for_nakayama() {
    let t = nakayama(1);
    let end = StableEnd::compute(&t).unwrap();
    for s in [1, 2] {
        let tr = resolution_2_10(&t, &end, s).unwrap();
        assert!(tr.all_passed());
    }
    assert!(resolution_2_10(&t, &end, 0).is_err());
}

#[test]
fn bikr_three_lines() {
    let t = bikr(&["x", "y", "x+y"], 2);
    let end = StableEnd::compute(&t).unwrap();
    assert_eq!(end.dim(), 6);
    assert_eq!(end.vertices, vec![0, 1]);
    let q = end.quiver().unwrap();
    assert_eq!(q.loops(), 0);
    assert!(q.count(0, 1) > 0 && q.count(1, 0) > 0);
    assert!(check_rigid(&t).unwrap().rigid);
    let l = lemma21(&t).unwrap();
    assert!(l.cond1 && l.cond2);
    let tw = periodic_object_check(&t, &end).unwrap();
    assert_eq!(tw.order.value(), Some(1));
}

#[test]
fn bikr_realize_and_resolve_simples() {
    let t = bikr(&["x", "y", "x+y"], 2);
    let end = StableEnd::compute(&t).unwrap();
    for v in 0..end.num_vertices() {
        let s = FDModule::simple(end.gamma.clone(), v);
        let r = realize_module(&t, &end, &s).unwrap();
        assert!(r.in_e_d_minus_1);
        let ev = end.eval(&t, &r.object).unwrap();
        assert!(is_isomorphic(&ev.module, &s, 0).unwrap().is_yes());
        let tr = thm25_resolution(&t, &end, &r.object).unwrap();
        assert!(tr.all_passed(), "{tr:?}");
    }
    for v in 0..end.num_vertices() {
        let p = FDModule::projective(end.gamma.clone(), v).0;
        let r = realize_module(&t, &end, &p).unwrap();
        let ev = end.eval(&t, &r.object).unwrap();
        assert!(is_isomorphic(&ev.module, &p, 0).unwrap().is_yes());
    }
}

#[test]
fn bikr_resolution_2_10() {
    let t = bikr(&["x", "y", "x+y"], 2);
    let end = StableEnd::compute(&t).unwrap();
    for s in [0, 1] {
        assert!(resolution_2_10(&t, &end, s).unwrap().all_passed());
    }
    assert!(resolution_2_10(&t, &end, 2).is_err());
}

#[test]
fn bikr_cusp_like_curve_has_a_loop() {
    let t = bikr(&["x", "x+y^2"], 2);
    let end = StableEnd::compute(&t).unwrap();
    let q = end.quiver().unwrap();
    assert_eq!(q.vertices, 1);
    assert_eq!(q.loops(), 1);
}

#[test]
fn ej_membership_basics() {
    let t = bikr(&["x", "y", "x+y"], 2);
    for s in &t.summands {
        assert!(ej_membership(&t, s, 1).unwrap());
        assert!(ej_membership(&t, s, 2).unwrap());
    }
    assert!(ej_membership(&t, &t.summands[0], 3).is_err());
}

#[test]
fn realize_needs_d_at_least_two() {
    let t = nakayama(1);
    let end = StableEnd::compute(&t).unwrap();
    let s = FDModule::simple(end.gamma.clone(), 0);
    assert!(matches!(realize_module(&t, &end, &s), Err(ctperiod::Error::Unsupported(_))));
}
