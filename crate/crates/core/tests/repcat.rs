use std::sync::Arc;

use ctperiod::algebra::{algebra_from_quiver, preprojective_a, Arrow, FDAlgebra, QuiverPresentation};
use ctperiod::kernel::PrimeField;
use ctperiod::repcat::*;
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

/// k[x]/(x^m) as a quotient of the regular module over k[x]/(x^n).
fn cyclic(a: &Arc<FDAlgebra>, m: usize) -> FDModule {
    let r = FDModule::regular(a.clone());
    let n = a.dim();
    let sub: Vec<Vec<u32>> = (m..n).map(|k| a.basis(k)).collect();
    r.quotient(&sub).0
}

#[test]
fn hom_examples() {
    let a = truncated(3);
    let k = FDModule::simple(a.clone(), 0);
    let r = FDModule::regular(a.clone());
    assert_eq!(hom_dim(&k, &r).unwrap(), 1);
    let m2 = cyclic(&a, 2);
    assert_eq!(hom_dim(&r, &m2).unwrap(), 2);
    assert_eq!(hom_dim(&r, &r).unwrap(), 3);
    let basis = hom(&m2, &m2).unwrap();
    let id = ModuleMap::identity(&m2);
    let mats: Vec<_> = basis.iter().map(|f| f.matrix.data().to_vec()).collect();
    let span = ctperiod::kernel::matrix::Subspace::spanned_by(f5(), 4, &mats);
    assert!(span.contains(id.matrix.data()));
}

#[test]
fn stable_hom_examples() {
    let a = truncated(3);
    let k = FDModule::simple(a.clone(), 0);
    let r = FDModule::regular(a.clone());
    assert_eq!(stable_hom(&k, &k).unwrap().dim(), 1);
    assert_eq!(stable_hom(&r, &k).unwrap().dim(), 0);
    let m2 = cyclic(&a, 2);
    assert_eq!(stable_hom(&m2, &m2).unwrap().dim(), 1);
}

#[test]
fn stable_hom_needs_self_injective() {
    let q = QuiverPresentation {
        vertices: vec!["1".into(), "2".into()],
        arrows: vec![Arrow { name: "a".into(), source: "1".into(), target: "2".into() }],
        relations: vec![],
        nilpotency_bound: 2,
    };
    let a = algebra_from_quiver(&q, f5()).unwrap();
    let s = FDModule::simple(a.clone(), 0);
    let err = stable_hom(&s, &s).unwrap_err();
    assert!(err.to_string().contains("self-injectivity failed"));
}

#[test]
fn covers_and_syzygies() {
    let a = truncated(3);
    let k = FDModule::simple(a.clone(), 0);
    let c = projective_cover(&k).unwrap();
    assert_eq!(c.free.dim(), 3);
    assert_eq!(c.epi.kernel().unwrap().0.dim(), 2);
    let zero = FDModule::zero(a.clone());
    assert_eq!(projective_cover(&zero).unwrap().free.dim(), 0);
    assert!(syzygy(&FDModule::regular(a.clone()), 1).unwrap().is_zero());
    let o1 = syzygy(&k, 1).unwrap();
    assert!(is_isomorphic(&o1, &cyclic(&a, 2), 0).unwrap().is_yes());
    let o2 = syzygy(&k, 2).unwrap();
    let v = is_isomorphic(&o2, &k, 0).unwrap();
    let w = v.witness().unwrap();
    assert!(w.is_homomorphism() && w.is_iso());
    let back = syzygy(&syzygy(&k, -1).unwrap(), 1).unwrap();
    assert!(is_isomorphic(&back, &k, 0).unwrap().is_yes());
    let m2 = cyclic(&a, 2);
    let back = syzygy(&syzygy(&m2, 1).unwrap(), -1).unwrap();
    assert!(is_isomorphic(&back, &m2, 0).unwrap().is_yes());
}

#[test]
fn resolution_of_simple() {
    let a = truncated(3);
    let k = FDModule::simple(a.clone(), 0);
    let res = minimal_resolution(&k, 4).unwrap();
    assert!(res.certificate.exact && res.certificate.minimal);
    assert_eq!(res.ranks_of_terms(), vec![1; 5]);
    let dims: Vec<usize> = res.syzygies.iter().map(|s| s.dim()).collect();
    assert_eq!(&dims[..5], &[1, 2, 1, 2, 1]);
    let r = FDModule::regular(a.clone());
    let res = minimal_resolution(&r, 3).unwrap();
    assert_eq!(res.ranks_of_terms()[0], 1);
    assert!(res.ranks_of_terms()[1..].iter().all(|&n| n == 0));
    let z = minimal_resolution(&FDModule::zero(a.clone()), 2).unwrap();
    assert!(z.ranks_of_terms().iter().all(|&n| n == 0));
}

#[test]
fn ext_and_tor() {
    let a = truncated(3);
    let k = FDModule::simple(a.clone(), 0);
    let r = FDModule::regular(a.clone());
    assert_eq!(ext(&k, &k, 1).unwrap().dim, 1);
    assert_eq!(ext(&k, &k, 0).unwrap().dim, 1);
    assert_eq!(ext(&r, &k, 1).unwrap().dim, 0);
    let rop = FDModule::regular(a.opposite());
    for i in 1..4 {
        assert_eq!(tor(&k, &rop, i).unwrap(), 0);
    }
    let kop = FDModule::simple(a.opposite(), 0);
    assert_eq!(tor(&k, &kop, 0).unwrap(), 1);
    assert_eq!(tor(&k, &kop, 2).unwrap(), 1);
}

#[test]
fn ext_duality_on_preprojective() {
    let a = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
    let s0 = FDModule::simple(a.clone(), 0);
    let s1 = FDModule::simple(a.clone(), 1);
    for i in 0..4 {
        for (m, n) in [(&s0, &s1), (&s1, &s0), (&s0, &s0)] {
            let lhs = ext(m, n, i).unwrap().dim;
            let rhs = ext(&n.dual(), &m.dual(), i).unwrap().dim;
            assert_eq!(lhs, rhs, "i = {i}");
        }
    }
}

#[test]
fn isomorphism_and_decomposition() {
    let a = truncated(3);
    let k = FDModule::simple(a.clone(), 0);
    let r = FDModule::regular(a.clone());
    assert!(is_isomorphic(&k, &k, 0).unwrap().is_yes());
    assert!(is_isomorphic(&k, &r, 0).unwrap().is_no());
    let m = FDModule::direct_sum(&[r.clone(), k.clone()], &a).unwrap();
    let d = decompose(&m, 0).unwrap();
    assert_eq!(d.summands.len(), 2);
    assert_eq!(decompose(&k, 0).unwrap().summands.len(), 1);
    let kk = FDModule::direct_sum(&[k.clone(), k.clone()], &a).unwrap();
    let d = decompose(&kk, 0).unwrap();
    assert_eq!(d.multiplicities, vec![2]);
}

#[test]
fn syzygy_is_additive() {
    let a = algebra_from_quiver(&preprojective_a(3), f5()).unwrap();
    let s0 = FDModule::simple(a.clone(), 0);
    let s2 = FDModule::simple(a.clone(), 2);
    let sum = FDModule::direct_sum(&[s0.clone(), s2.clone()], &a).unwrap();
    let lhs = syzygy(&sum, 1).unwrap();
    let rhs = FDModule::direct_sum(&[syzygy(&s0, 1).unwrap(), syzygy(&s2, 1).unwrap()], &a).unwrap();
    assert!(is_isomorphic(&lhs, &rhs, 0).unwrap().is_yes());
    for s in [&s0, &s2] {
        let back = syzygy(&syzygy(s, 1).unwrap(), -1).unwrap();
        assert!(is_isomorphic(&back, s, 0).unwrap().is_yes());
    }
}

#[test]
fn stable_composition_respects_projective_maps() {
    let a = truncated(3);
    let m2 = cyclic(&a, 2);
    let st = stable_hom(&m2, &m2).unwrap();
    // x·: M₂ → M₂ factors through A.
    let x = ModuleMap::new(m2.clone(), m2.clone(), m2.action(1).clone()).unwrap();
    assert!(st.factors_through_projective(&x.matrix));
    for g in &st.hom {
        assert!(st.factors_through_projective(&g.compose(&x).unwrap().matrix));
        assert!(st.factors_through_projective(&x.compose(g).unwrap().matrix));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn hom_composition_closed(i in 0usize..3, j in 0usize..3, l in 0usize..3, c1 in 0u32..5, c2 in 0u32..5) {
        let a = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
        let mods = [
            FDModule::regular(a.clone()),
            FDModule::simple(a.clone(), 0),
            FDModule::projective(a.clone(), 1).0,
        ];
        let (m, n, p) = (&mods[i], &mods[j], &mods[l]);
        let h1 = hom(m, n).unwrap();
        let h2 = hom(n, p).unwrap();
        let h3 = hom(m, p).unwrap();
        let span = ctperiod::kernel::matrix::Subspace::spanned_by(
            f5(), m.dim() * p.dim(), &h3.iter().map(|f| f.matrix.data().to_vec()).collect::<Vec<_>>());
        for f in &h1 {
            for g in &h2 {
                let comp = g.compose(f).unwrap();
                prop_assert!(comp.is_homomorphism());
                prop_assert!(span.contains(comp.matrix.data()));
                let scaled = ModuleMap::new(n.clone(), p.clone(), g.matrix.scale(c1).add(&g.matrix.scale(c2))).unwrap();
                prop_assert!(scaled.compose(f).unwrap().is_homomorphism());
            }
        }
    }
}
