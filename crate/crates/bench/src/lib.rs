//! Fixtures shared by the benchmarks in `benches/`.

use std::sync::Arc;

use ctperiod::algebra::{algebra_from_quiver, preprojective_a, Arrow, FDAlgebra, QuiverPresentation};
use ctperiod::cluster::{CTObject, MFBackend, ModuleBackend};
use ctperiod::kernel::PrimeField;
use ctperiod::mfcat::{bikr_tilting, Curve, GradedMF};
use ctperiod::repcat::FDModule;

pub fn f5() -> PrimeField {
    PrimeField::new(5).expect("5 is prime")
}

/// Π(A_n) over F₅.
pub fn preprojective(n: usize) -> Arc<FDAlgebra> {
    algebra_from_quiver(&preprojective_a(n), f5()).expect("preprojective algebra")
}

/// k[x]/(x^n) with T the sum of all indecomposables.
pub fn truncated_auslander(n: usize, d: usize) -> CTObject<ModuleBackend> {
    let q = QuiverPresentation {
        vertices: vec!["1".into()],
        arrows: vec![Arrow { name: "x".into(), source: "1".into(), target: "1".into() }],
        relations: vec![format!("x^{n}")],
        nilpotency_bound: n,
    };
    let a = algebra_from_quiver(&q, f5()).expect("truncated polynomial algebra");
    let regular = FDModule::regular(a.clone());
    let summands: Vec<FDModule> = (1..=n)
        .rev()
        .map(|m| {
            let sub: Vec<Vec<u32>> = (m..a.dim()).map(|k| a.basis(k)).collect();
            regular.quotient(&sub).0
        })
        .collect();
    let labels = (1..=n).rev().map(|m| format!("M{m}")).collect();
    CTObject::new(ModuleBackend::new(a).expect("backend"), summands, labels, d, 0).expect("cluster object")
}

/// The BIKR object of the curve with the given linear or quadratic factors.
pub fn bikr(factors: &[&str], d: usize) -> CTObject<MFBackend> {
    let c = Curve::parse(f5(), factors).expect("curve");
    let t = bikr_tilting(&c).expect("bikr object");
    let objs: Vec<GradedMF> = t.iter().map(|m| GradedMF::from_mf1(m).expect("graded")).collect();
    let labels = t.iter().map(|m| m.to_string()).collect();
    CTObject::new(MFBackend::new(c).expect("backend"), objs, labels, d, 0).expect("cluster object")
}
