//! Enveloping algebras, bimodules as right Γ^e-modules, self-injectivity
//! and the semisimple block split.

use std::sync::Arc;

use super::auto::AlgebraAuto;
use super::fd::FDAlgebra;
use crate::error::{Error, Result};
use crate::kernel::matrix::Subspace;
use crate::kernel::Matrix;
use crate::repcat::{projective_cover, FDModule};

/// Γ^e = Γ^op ⊗ Γ, basis index i·dim Γ + j for b_i^op ⊗ b_j, with
/// (a⊗b)(c⊗d) = (ca)⊗(bd).
pub fn enveloping(a: &Arc<FDAlgebra>) -> Result<Arc<FDAlgebra>> {
    FDAlgebra::tensor(&a.opposite(), a)
}

fn bimodule_from(env: &Arc<FDAlgebra>, a: &FDAlgebra, op: impl Fn(&[u32], &[u32]) -> Matrix) -> FDModule {
    let n = a.dim();
    let action = (0..n * n).map(|t| op(&a.basis(t / n), &a.basis(t % n))).collect();
    FDModule::new_unchecked(env.clone(), n, action)
}

fn check_env(a: &FDAlgebra, env: &FDAlgebra) -> Result<()> {
    if env.dim() != a.dim() * a.dim() {
        return Err(Error::input("enveloping algebra does not match"));
    }
    Ok(())
}

/// Γ as a right Γ^e-module: x·(a⊗b) = a·x·b.
pub fn regular_bimodule(a: &FDAlgebra, env: &Arc<FDAlgebra>) -> Result<FDModule> {
    check_env(a, env)?;
    Ok(bimodule_from(env, a, |x, y| a.left_matrix(x).mul(&a.right_matrix(y))))
}

/// The twisted bimodule σΓ₁: x·(a⊗b) = σ(a)·x·b.
pub fn twisted_bimodule(a: &FDAlgebra, env: &Arc<FDAlgebra>, sigma: &AlgebraAuto) -> Result<FDModule> {
    check_env(a, env)?;
    Ok(bimodule_from(env, a, |x, y| a.left_matrix(&sigma.apply(x)).mul(&a.right_matrix(y))))
}

/// DΓ with (a·φ·b)(x) = φ(b·x·a).
pub fn dual_bimodule(a: &FDAlgebra, env: &Arc<FDAlgebra>) -> Result<FDModule> {
    check_env(a, env)?;
    Ok(bimodule_from(env, a, |x, y| a.left_matrix(y).mul(&a.right_matrix(x)).transpose()))
}

/// D(A) as a right A-module: (φ·a)(x) = φ(a·x).
pub fn dual_regular(a: &Arc<FDAlgebra>) -> FDModule {
    let action = (0..a.dim()).map(|k| a.left_matrix(&a.basis(k)).transpose()).collect();
    FDModule::new_unchecked(a.clone(), a.dim(), action)
}

/// Whether D(A) is projective, i.e. its projective cover is an isomorphism.
/// Cached on the algebra.
pub fn is_self_injective(a: &Arc<FDAlgebra>) -> Result<bool> {
    if let Some(&b) = a.self_injective.get() {
        return Ok(b);
    }
    let d = dual_regular(a);
    let cover = projective_cover(&d)?;
    let b = cover.free.dim() == a.dim() && cover.epi.matrix.is_invertible();
    let _ = a.self_injective.set(b);
    Ok(b)
}

/// Block decomposition A ≅ A₀ × A_s where A_s collects the semisimple blocks.
#[derive(Clone, Debug)]
pub struct SemisimpleSplit {
    /// Vertex sets of the blocks.
    pub blocks: Vec<Vec<usize>>,
    pub semisimple_blocks: Vec<usize>,
    /// A₀, or `None` when every block is semisimple.
    pub nonsemisimple: Option<Arc<FDAlgebra>>,
    /// A_s, or `None` when no block is semisimple.
    pub semisimple: Option<Arc<FDAlgebra>>,
    /// Vertices of A (in order) that make up A₀.
    pub nonsemisimple_vertices: Vec<usize>,
}

pub fn semisimple_split(a: &FDAlgebra) -> Result<SemisimpleSplit> {
    let n = a.num_vertices();
    let es = a.idempotents();
    // Union-find over vertices linked by e_i A e_j ≠ 0.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !a.corner(&es[i], &es[j]).is_empty() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_of[r] == usize::MAX {
            root_of[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_of[r]].push(v);
    }
    let sum = |vs: &[usize]| {
        let mut e = a.zero();
        for &v in vs {
            e = a.add(&e, &es[v]);
        }
        e
    };
    let mut semisimple_blocks = Vec::new();
    for (b, vs) in blocks.iter().enumerate() {
        let e = sum(vs);
        let rad = Subspace::spanned_by(a.field(), a.dim(), &a.radical().iter().map(|r| a.mul3(&e, r, &e)).collect::<Vec<_>>());
        if rad.dim() == 0 {
            semisimple_blocks.push(b);
        }
    }
    let ns_vertices: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(b, _)| !semisimple_blocks.contains(b))
        .flat_map(|(_, vs)| vs.iter().copied())
        .collect();
    let s_vertices: Vec<usize> =
        semisimple_blocks.iter().flat_map(|&b| blocks[b].iter().copied()).collect();
    let mut ns_sorted = ns_vertices.clone();
    ns_sorted.sort_unstable();
    let nonsemisimple = if ns_sorted.is_empty() { None } else { Some(a.corner_algebra(&sum(&ns_sorted))?) };
    let semisimple = if s_vertices.is_empty() { None } else { Some(a.corner_algebra(&sum(&s_vertices))?) };
    Ok(SemisimpleSplit { blocks, semisimple_blocks, nonsemisimple, semisimple, nonsemisimple_vertices: ns_sorted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebra_from_quiver, preprojective_a, Arrow, QuiverPresentation};
    use crate::kernel::PrimeField;
    use crate::repcat::is_isomorphic;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn loop_algebra(n: usize) -> Arc<FDAlgebra> {
        let q = QuiverPresentation {
            vertices: vec!["1".into()],
            arrows: vec![Arrow { name: "x".into(), source: "1".into(), target: "1".into() }],
            relations: vec![format!("x^{n}")],
            nilpotency_bound: n,
        };
        algebra_from_quiver(&q, f5()).unwrap()
    }

    fn upper_triangular() -> Arc<FDAlgebra> {
        let q = QuiverPresentation {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow { name: "a".into(), source: "1".into(), target: "2".into() }],
            relations: vec![],
            nilpotency_bound: 2,
        };
        algebra_from_quiver(&q, f5()).unwrap()
    }

    #[test]
    fn enveloping_dimensions() {
        let a = loop_algebra(3);
        let e = enveloping(&a).unwrap();
        assert_eq!(e.dim(), 9);
        assert!(e.is_commutative());
        let p = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
        let pe = enveloping(&p).unwrap();
        assert_eq!(pe.dim(), 16);
        assert_eq!(pe.num_vertices(), 4);
    }

    #[test]
    fn bimodules_satisfy_module_axioms() {
        let a = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
        let env = enveloping(&a).unwrap();
        regular_bimodule(&a, &env).unwrap().verify().unwrap();
        dual_bimodule(&a, &env).unwrap().verify().unwrap();
    }

    #[test]
    fn self_injectivity() {
        assert!(is_self_injective(&loop_algebra(3)).unwrap());
        assert!(!is_self_injective(&upper_triangular()).unwrap());
        let p = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
        assert!(is_self_injective(&p).unwrap());
        assert!(is_self_injective(&enveloping(&p).unwrap()).unwrap());
    }

    #[test]
    fn symmetric_algebra_dual_is_regular() {
        let a = loop_algebra(3);
        let env = enveloping(&a).unwrap();
        let r = regular_bimodule(&a, &env).unwrap();
        let d = dual_bimodule(&a, &env).unwrap();
        assert!(is_isomorphic(&r, &d, 0).unwrap().is_yes());
    }

    #[test]
    fn semisimple_split_examples() {
        let a = loop_algebra(3);
        let s = semisimple_split(&a).unwrap();
        assert!(s.semisimple.is_none());
        assert_eq!(s.nonsemisimple.unwrap().dim(), 3);
        // k × k[x]/(x²)
        let q = QuiverPresentation {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow { name: "x".into(), source: "2".into(), target: "2".into() }],
            relations: vec!["x^2".into()],
            nilpotency_bound: 2,
        };
        let b = algebra_from_quiver(&q, f5()).unwrap();
        let s = semisimple_split(&b).unwrap();
        assert_eq!(s.semisimple.unwrap().dim(), 1);
        assert_eq!(s.nonsemisimple.unwrap().dim(), 2);
        let k = algebra_from_quiver(
            &QuiverPresentation { vertices: vec!["1".into()], arrows: vec![], relations: vec![], nilpotency_bound: 1 },
            f5(),
        )
        .unwrap();
        let s = semisimple_split(&k).unwrap();
        assert!(s.nonsemisimple.is_none());
        assert_eq!(s.semisimple.unwrap().dim(), 1);
    }
}
