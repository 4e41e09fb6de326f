//! Tor^Λ_i(Γ, Γ) for Λ = End(T) acting on Γ through the projection π.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{enveloping, twisted_bimodule, AlgebraAuto, FDAlgebra};
use crate::cluster::Lambda;
use crate::error::{Error, Result};
use crate::kernel::Matrix;
use crate::repcat::{is_isomorphic, minimal_resolution, tor, FDModule, IsoVerdict, ModuleMap};

/// Γ as a right Λ-module and as a left Λ-module (right over Λ^op).
pub fn gamma_over_lambda(gamma: &FDAlgebra, lambda: &Lambda) -> Result<(FDModule, FDModule)> {
    let l = &lambda.algebra;
    let pi = |k: usize| lambda.projection.mul_vec(&l.basis(k));
    let right = (0..l.dim()).map(|k| gamma.right_matrix(&pi(k))).collect();
    let left = (0..l.dim()).map(|k| gamma.left_matrix(&pi(k))).collect();
    Ok((FDModule::new(l.clone(), gamma.dim(), right)?, FDModule::new(l.opposite(), gamma.dim(), left)?))
}

/// The i-th Tor as a Γ-bimodule, i.e. a right module over `enveloping(gamma)`.
pub fn tor_bimodule(gamma: &Arc<FDAlgebra>, lambda: &Lambda, i: usize) -> Result<FDModule> {
    let f = gamma.field();
    let l = &lambda.algebra;
    let (ng, nl) = (gamma.dim(), l.dim());
    let e = FDAlgebra::tensor(&gamma.opposite(), l)?;
    let env = enveloping(gamma)?;
    let pi = |x: &[u32]| lambda.projection.mul_vec(x);
    // x·(a^op ⊗ λ) = a·x·π(λ)
    let action: Vec<Matrix> =
        (0..ng * nl).map(|t| gamma.left_matrix(&gamma.basis(t / nl)).mul(&gamma.right_matrix(&pi(&l.basis(t % nl))))).collect();
    let m = FDModule::new(e.clone(), ng, action)?;
    let res = minimal_resolution(&m, i + 1)?;

    let gamma_side = |p: &FDModule, a: &[u32]| {
        let mut x = vec![0; ng * nl];
        for (s, &c) in a.iter().enumerate() {
            for (k, &u) in l.unit().iter().enumerate() {
                x[s * nl + k] = f.add(x[s * nl + k], f.mul(c, u));
            }
        }
        p.act(&x)
    };
    let lambda_side = |p: &FDModule, lam: &[u32]| {
        let mut x = vec![0; ng * nl];
        for (s, &c) in gamma.unit().iter().enumerate() {
            for (k, &u) in lam.iter().enumerate() {
                x[s * nl + k] = f.add(x[s * nl + k], f.mul(c, u));
            }
        }
        p.act(&x)
    };
    let gens = l.generator_list();
    let id_g = Matrix::identity(f, ng);
    // P ⊗_Λ Γ as the quotient of P ⊗ Γ by m·λ ⊗ c − m ⊗ π(λ)c.
    let tensored: Vec<(FDModule, ModuleMap)> = res.terms[..=i + 1]
        .iter()
        .map(|t| {
            let p = &t.module;
            let id_p = Matrix::identity(f, p.dim());
            let action: Vec<Matrix> = (0..ng * ng)
                .map(|t| gamma_side(p, &gamma.basis(t / ng)).kron(&gamma.right_matrix(&gamma.basis(t % ng))))
                .collect();
            let big = FDModule::new(env.clone(), p.dim() * ng, action)?;
            let mut rel = Vec::new();
            for g in &gens {
                let r = lambda_side(p, g).kron(&id_g).sub(&id_p.kron(&gamma.left_matrix(&pi(g))));
                rel.extend(r.columns());
            }
            Ok(big.quotient(&rel))
        })
        .collect::<Result<_>>()?;
    let induced = |k: usize| -> Result<ModuleMap> {
        let (qs, ps) = &tensored[k];
        let (qt, pt) = &tensored[k - 1];
        let sec = ps
            .matrix
            .solve_matrix(&Matrix::identity(f, qs.dim()))
            .ok_or_else(|| Error::certificate("tor", "projection has no section"))?;
        let d = res.differentials[k - 1].matrix.kron(&id_g);
        ModuleMap::new(qs.clone(), qt.clone(), pt.matrix.mul(&d).mul(&sec))
    };
    let (kmod, kinc) = if i == 0 {
        let q = tensored[0].0.clone();
        (q.clone(), ModuleMap::identity(&q))
    } else {
        induced(i)?.kernel()?
    };
    let out = induced(i + 1)?;
    let cols = kinc
        .matrix
        .solve_matrix(&out.matrix)
        .ok_or_else(|| Error::certificate("tor", "boundaries are not cycles"))?;
    Ok(kmod.quotient(&cols.columns()).0)
}

#[derive(Clone, Debug, Serialize)]
pub struct TorReport {
    pub lambda_dim: usize,
    /// dim Tor^Λ_i(Γ, Γ) for i = 0..=imax.
    pub dims: Vec<usize>,
    pub nonzero: Vec<usize>,
    /// Tor_i = 0 for 1 ≤ i ≤ imax with i ≠ d+1.
    pub vanishing: bool,
    pub top_dim: usize,
    /// dim Tor_{d+1} = dim Γ.
    pub top_dim_matches: bool,
    /// Tor_{d+1} ≅ σΓ₁ as bimodules.
    pub twist_verdict: String,
    pub twist_holds: Option<bool>,
}

pub fn tor_lambda_suite(
    gamma: &Arc<FDAlgebra>,
    lambda: &Lambda,
    sigma: &AlgebraAuto,
    d: usize,
    imax: usize,
    seed: u64,
) -> Result<TorReport> {
    let (right, left) = gamma_over_lambda(gamma, lambda)?;
    let dims = (0..=imax).map(|i| tor(&right, &left, i)).collect::<Result<Vec<_>>>()?;
    let nonzero: Vec<usize> = (0..=imax).filter(|&i| dims[i] != 0).collect();
    let vanishing = (1..=imax).filter(|&i| i != d + 1).all(|i| dims[i] == 0);
    let h = tor_bimodule(gamma, lambda, d + 1)?;
    let env = h.algebra().clone();
    let tw = twisted_bimodule(gamma, &env, sigma)?;
    let v = is_isomorphic(&h, &tw, seed)?;
    Ok(TorReport {
        lambda_dim: lambda.algebra.dim(),
        top_dim: h.dim(),
        top_dim_matches: h.dim() == gamma.dim(),
        dims,
        nonzero,
        vanishing,
        twist_verdict: v.label().into(),
        twist_holds: if matches!(v, IsoVerdict::Inconclusive(_)) { None } else { Some(v.is_yes()) },
    })
}
