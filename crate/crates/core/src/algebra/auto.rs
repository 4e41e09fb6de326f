//! Algebra automorphisms, inner-ness, and isomorphism search between basic
//! algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::fd::{is_zero, FDAlgebra};
use crate::error::{Error, Result};
use crate::kernel::matrix::{vec_axpy, QuotientSpace, Subspace};
use crate::kernel::Matrix;

const INNER_TRIALS: usize = 1000;

/// A unital algebra automorphism x ↦ matrix·x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraAuto {
    pub matrix: Matrix,
}

impl AlgebraAuto {
    /// Checked constructor: invertible, unital, multiplicative on basis pairs.
    pub fn new(a: &FDAlgebra, matrix: Matrix) -> Result<Self> {
        let s = AlgebraAuto { matrix };
        s.verify(a)?;
        Ok(s)
    }

    pub fn identity(a: &FDAlgebra) -> Self {
        AlgebraAuto { matrix: Matrix::identity(a.field(), a.dim()) }
    }

    /// x ↦ u·x·u⁻¹
    pub fn conjugation(a: &FDAlgebra, u: &[u32]) -> Result<Self> {
        let inv = a.inverse(u).ok_or_else(|| Error::input("conjugating element is not a unit"))?;
        let cols: Vec<Vec<u32>> = (0..a.dim()).map(|k| a.mul3(u, &a.basis(k), &inv)).collect();
        Ok(AlgebraAuto { matrix: Matrix::from_columns(a.field(), a.dim(), &cols) })
    }

    pub fn verify(&self, a: &FDAlgebra) -> Result<()> {
        let n = a.dim();
        if self.matrix.rows() != n || self.matrix.cols() != n {
            return Err(Error::input("automorphism matrix has wrong size"));
        }
        if !self.matrix.is_invertible() {
            return Err(Error::input("automorphism is not invertible"));
        }
        if self.apply(a.unit()) != a.unit() {
            return Err(Error::input("automorphism does not preserve the unit"));
        }
        for i in 0..n {
            let si = self.matrix.column(i);
            for j in 0..n {
                let lhs = self.apply(&a.mul(&a.basis(i), &a.basis(j)));
                if lhs != a.mul(&si, &self.matrix.column(j)) {
                    return Err(Error::input(format!("automorphism not multiplicative on ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(x)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &AlgebraAuto) -> AlgebraAuto {
        AlgebraAuto { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn pow(&self, r: u64) -> AlgebraAuto {
        AlgebraAuto { matrix: self.matrix.pow(r) }
    }

    /// Vertex permutation induced on a basic algebra: σ(e_i) ≡ e_{π(i)} mod J.
    pub fn vertex_permutation(&self, a: &FDAlgebra) -> Option<Vec<usize>> {
        a.idempotents().iter().map(|e| a.vertex_of(&self.apply(e))).collect()
    }
}

#[derive(Clone, Debug)]
pub enum InnerVerdict {
    Inner(Vec<u32>),
    NotInner(String),
    Inconclusive(String),
}

impl InnerVerdict {
    pub fn is_inner(&self) -> bool {
        matches!(self, InnerVerdict::Inner(_))
    }
}

/// Decide whether σ(x) = u·x·u⁻¹ for some unit u.
pub fn auto_is_inner(sigma: &AlgebraAuto, a: &FDAlgebra, seed: u64) -> Result<InnerVerdict> {
    let f = a.field();
    let n = a.dim();
    if a.is_basic() {
        match sigma.vertex_permutation(a) {
            Some(pi) if pi.iter().enumerate().any(|(i, &j)| i != j) => {
                return Ok(InnerVerdict::NotInner(format!("σ permutes the vertices as {pi:?}")));
            }
            None => return Err(Error::input("σ does not map idempotents to idempotents modulo J")),
            _ => {}
        }
    }
    // σ(b_k)·u − u·b_k = 0 for all k.
    let blocks: Vec<Matrix> = (0..n)
        .map(|k| a.left_matrix(&sigma.apply(&a.basis(k))).sub(&a.right_matrix(&a.basis(k))))
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let sols = Matrix::vstack(f, n, &refs).kernel();
    if sols.is_empty() {
        return Ok(InnerVerdict::NotInner("σ(x)u = ux has only the zero solution".into()));
    }
    let check = |u: &[u32]| a.is_unit(u);
    let mut guaranteed = false;
    if a.is_basic() {
        // u is a unit iff every e_i-coefficient of u modulo J is nonzero.
        let q = QuotientSpace::new(f, n, a.radical(), a.idempotents());
        let w: Vec<Vec<u32>> = sols.iter().map(|u| q.coords(u).expect("basic")).collect();
        let nv = a.num_vertices();
        if let Some(i) = (0..nv).find(|&i| w.iter().all(|c| c[i] == 0)) {
            return Ok(InnerVerdict::NotInner(format!(
                "every solution vanishes modulo J at vertex {i}, so none is a unit"
            )));
        }
        // A space not inside any coordinate hyperplane cannot be covered by
        // ≤ p of them.
        guaranteed = nv <= f.p() as usize;
    }
    for u in &sols {
        if check(u) {
            return Ok(InnerVerdict::Inner(u.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..INNER_TRIALS {
        let mut u = vec![0u32; n];
        for s in &sols {
            vec_axpy(f, &mut u, rng.gen_range(0..f.p()), s);
        }
        if check(&u) {
            return Ok(InnerVerdict::Inner(u));
        }
    }
    Ok(InnerVerdict::Inconclusive(if guaranteed {
        "a unit solution exists but the randomized search missed it".into()
    } else {
        format!("no unit among {INNER_TRIALS} random solutions")
    }))
}

#[derive(Clone, Debug, Serialize)]
pub enum InnerOrder {
    Certified(u64),
    Unknown { bound: u64 },
}

impl InnerOrder {
    pub fn value(&self) -> Option<u64> {
        match self {
            InnerOrder::Certified(r) => Some(*r),
            InnerOrder::Unknown { .. } => None,
        }
    }
}

/// Least r ≤ bound with σ^r inner. Uncertified if any smaller power was
/// inconclusive.
pub fn inner_order(sigma: &AlgebraAuto, a: &FDAlgebra, bound: u64, seed: u64) -> Result<InnerOrder> {
    let mut clean = true;
    let mut power = sigma.clone();
    for r in 1..=bound {
        match auto_is_inner(&power, a, seed)? {
            InnerVerdict::Inner(_) if clean => return Ok(InnerOrder::Certified(r)),
            InnerVerdict::Inner(_) => return Ok(InnerOrder::Unknown { bound: r }),
            InnerVerdict::Inconclusive(_) => clean = false,
            InnerVerdict::NotInner(_) => {}
        }
        power = power.compose(sigma);
    }
    Ok(InnerOrder::Unknown { bound })
}

/// Words in the generators whose values form a basis of the algebra.
fn word_basis(a: &FDAlgebra) -> Vec<Vec<usize>> {
    let gens = a.generator_list();
    let mut span = Subspace::new(a.field(), a.dim());
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
    for (g, x) in gens.iter().enumerate() {
        if span.insert(x.clone()) {
            words.push(vec![g]);
            frontier.push((vec![g], x.clone()));
        }
    }
    let mut head = 0;
    while head < frontier.len() {
        let (w, x) = frontier[head].clone();
        head += 1;
        for (g, y) in gens.iter().enumerate() {
            let z = a.mul(&x, y);
            if span.insert(z.clone()) {
                let mut w2 = w.clone();
                w2.push(g);
                words.push(w2.clone());
                frontier.push((w2, z));
            }
        }
    }
    words
}

/// Search for an algebra isomorphism A → B between basic algebras, mapping
/// idempotents to idempotents and arrows into the matching corners. Returns
/// the matrix of a verified isomorphism.
pub fn find_isomorphism(a: &FDAlgebra, b: &FDAlgebra, seed: u64, trials: usize) -> Result<Option<Matrix>> {
    let f = a.field();
    if a.field() != b.field() {
        return Err(Error::input("algebras over different fields"));
    }
    if a.dim() != b.dim() || a.num_vertices() != b.num_vertices() || a.radical().len() != b.radical().len() {
        return Ok(None);
    }
    if !a.is_basic() || !b.is_basic() {
        return Err(Error::Unsupported("isomorphism search needs basic algebras".into()));
    }
    let nv = a.num_vertices();
    let words = word_basis(a);
    let gens_a = a.generator_list();
    let arrows = &a.generators().arrows;
    let wmat = Matrix::from_columns(f, a.dim(), &words.iter().map(|w| eval_word(a, &gens_a, w)).collect::<Vec<_>>());
    let winv = wmat.inverse().ok_or_else(|| Error::certificate("isomorphism", "word basis is singular"))?;
    // Corner bases of J_B.
    let corner = |j: usize, i: usize| -> Vec<Vec<u32>> {
        let mut s = Subspace::new(f, b.dim());
        for r in b.radical() {
            s.insert(b.mul3(&b.idempotents()[j], r, &b.idempotents()[i]));
        }
        s.basis().to_vec()
    };
    let perms = permutations(nv);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let pi = &perms[t % perms.len()];
        let mut images: Vec<Vec<u32>> = (0..nv).map(|i| b.idempotents()[pi[i]].clone()).collect();
        for (j, i, _) in arrows {
            let cb = corner(pi[*j], pi[*i]);
            let mut x = vec![0u32; b.dim()];
            for c in &cb {
                vec_axpy(f, &mut x, rng.gen_range(0..f.p()), c);
            }
            images.push(x);
        }
        images.extend(a.generators().extra.iter().map(|_| b.zero()));
        let y = Matrix::from_columns(f, b.dim(), &words.iter().map(|w| eval_word(b, &images, w)).collect::<Vec<_>>());
        let phi = y.mul(&winv);
        if !phi.is_invertible() {
            continue;
        }
        let cand = AlgebraAuto { matrix: phi };
        if is_homomorphism(a, b, &cand.matrix) {
            return Ok(Some(cand.matrix));
        }
    }
    Ok(None)
}

fn eval_word(a: &FDAlgebra, gens: &[Vec<u32>], w: &[usize]) -> Vec<u32> {
    let mut x = gens[w[0]].clone();
    for &g in &w[1..] {
        x = a.mul(&x, &gens[g]);
    }
    x
}

/// Whether x ↦ φ·x is a unital multiplicative map A → B.
pub fn is_homomorphism(a: &FDAlgebra, b: &FDAlgebra, phi: &Matrix) -> bool {
    if phi.mul_vec(a.unit()) != b.unit() {
        return false;
    }
    (0..a.dim()).all(|i| {
        (0..a.dim()).all(|j| {
            let lhs = phi.mul_vec(&a.mul(&a.basis(i), &a.basis(j)));
            let rhs = b.mul(&phi.column(i), &phi.column(j));
            lhs == rhs
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Whether `x` lies in the radical.
pub fn in_radical(a: &FDAlgebra, x: &[u32]) -> bool {
    is_zero(x) || Subspace::spanned_by(a.field(), a.dim(), a.radical()).contains(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebra_from_quiver, preprojective_a};
    use crate::kernel::PrimeField;

    #[test]
    fn identity_is_inner() {
        let f = PrimeField::new(5).unwrap();
        let a = algebra_from_quiver(&preprojective_a(2), f).unwrap();
        let v = auto_is_inner(&AlgebraAuto::identity(&a), &a, 0).unwrap();
        assert!(v.is_inner());
    }

    #[test]
    fn planted_conjugation_is_inner() {
        let f = PrimeField::new(5).unwrap();
        let a = algebra_from_quiver(&preprojective_a(3), f).unwrap();
        // u = 1 + a1 + 2·b2
        let mut u = a.unit().to_vec();
        let ia = a.labels().iter().position(|l| l == "a1").unwrap();
        let ib = a.labels().iter().position(|l| l == "b2").unwrap();
        u[ia] = 1;
        u[ib] = 2;
        let s = AlgebraAuto::conjugation(&a, &u).unwrap();
        s.verify(&a).unwrap();
        match auto_is_inner(&s, &a, 0).unwrap() {
            InnerVerdict::Inner(w) => {
                for k in 0..a.dim() {
                    let x = a.basis(k);
                    assert_eq!(a.mul(&s.apply(&x), &w), a.mul(&w, &x));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vertex_swap_is_not_inner() {
        let f = PrimeField::new(5).unwrap();
        let a = algebra_from_quiver(&preprojective_a(2), f).unwrap();
        // e1 ↔ e2, a ↔ b
        let m = Matrix::from_rows(f, &[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]).unwrap();
        let s = AlgebraAuto::new(&a, m).unwrap();
        assert!(matches!(auto_is_inner(&s, &a, 0).unwrap(), InnerVerdict::NotInner(_)));
        assert!(matches!(inner_order(&s, &a, 12, 0).unwrap(), InnerOrder::Certified(2)));
    }

    #[test]
    fn isomorphism_with_itself() {
        let f = PrimeField::new(5).unwrap();
        let a = algebra_from_quiver(&preprojective_a(2), f).unwrap();
        assert!(find_isomorphism(&a, &a, 0, 100).unwrap().is_some());
    }
}
