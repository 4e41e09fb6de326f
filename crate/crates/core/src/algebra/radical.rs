//! Jacobson radical over F_p by trace forms on the regular representation,
//! and primitive idempotents by splitting the semisimple quotient.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fd::{is_zero, FDAlgebra, Sparse};
use super::upoly::{split_by_roots, UPoly};
use crate::error::{Error, Result};
use crate::kernel::matrix::{vec_axpy, QuotientSpace, Subspace};
use crate::kernel::Matrix;

const SPLIT_TRIALS: usize = 1000;
const LIFT_ITERATIONS: usize = 64;

/// Integer matrix product modulo `m`.
fn mat_mul_mod(a: &[u128], b: &[u128], n: usize, m: u128) -> Vec<u128> {
    let mut r = vec![0u128; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                r[i * n + j] = (r[i * n + j] + x * b[k * n + j]) % m;
            }
        }
    }
    r
}

fn mat_pow_mod(a: &[u128], n: usize, mut e: u128, m: u128) -> Vec<u128> {
    let mut acc = vec![0u128; n * n];
    for i in 0..n {
        acc[i * n + i] = 1 % m;
    }
    let mut b = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(&acc, &b, n, m);
        }
        b = mat_mul_mod(&b, &b, n, m);
        e >>= 1;
    }
    acc
}

/// Basis of the Jacobson radical.
pub fn radical_basis(a: &FDAlgebra) -> Vec<Vec<u32>> {
    let f = a.field();
    let n = a.dim();
    let p = f.p() as u128;
    let mut l = 0u32;
    while p.pow(l + 1) <= n as u128 {
        l += 1;
    }
    let mut ideal: Vec<Vec<u32>> = (0..n).map(|i| a.basis(i)).collect();
    for i in 0..=l {
        if ideal.is_empty() {
            break;
        }
        let pi = p.pow(i);
        let modulus = pi * p;
        let mut g = vec![vec![0u32; ideal.len()]; n];
        for (k, v) in ideal.iter().enumerate() {
            for (j, row) in g.iter_mut().enumerate() {
                let z = a.mul(v, &a.basis(j));
                let lz = a.left_matrix(&z);
                let lifted: Vec<u128> = lz.data().iter().map(|&x| x as u128).collect();
                let pw = mat_pow_mod(&lifted, n, pi, modulus);
                let tr = (0..n).map(|t| pw[t * n + t]).sum::<u128>() % modulus;
                debug_assert_eq!(tr % pi, 0);
                row[k] = ((tr / pi) % p) as u32;
            }
        }
        let m = Matrix::from_columns(f, n, &transpose_rows(&g, ideal.len()));
        let ker = m.kernel();
        ideal = ker
            .iter()
            .map(|c| {
                let mut w = vec![0u32; n];
                for (k, &ck) in c.iter().enumerate() {
                    if ck != 0 {
                        vec_axpy(f, &mut w, ck, &ideal[k]);
                    }
                }
                w
            })
            .collect();
    }
    Subspace::spanned_by(f, n, &ideal).basis().to_vec()
}

fn transpose_rows(rows: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
    (0..cols).map(|k| rows.iter().map(|r| r[k]).collect()).collect()
}

/// Radical basis and a complete set of primitive orthogonal idempotents.
pub fn radical_and_idempotents(a: &FDAlgebra, seed: u64) -> Result<(Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    let f = a.field();
    let n = a.dim();
    let rad = radical_basis(a);
    if !a.is_nilpotent_subspace(&rad) {
        return Err(Error::certificate("radical", "computed radical is not nilpotent"));
    }
    // Semisimple quotient with basis given by representatives.
    let all: Vec<Vec<u32>> = (0..n).map(|i| a.basis(i)).collect();
    let q = QuotientSpace::new(f, n, &rad, &all);
    let reps = q.basis().to_vec();
    let m = reps.len();
    let coords = |v: &[u32]| q.coords(v).expect("quotient coordinates");
    let prod: Vec<Vec<Sparse>> = reps
        .iter()
        .map(|x| {
            reps.iter()
                .map(|y| {
                    coords(&a.mul(x, y))
                        .into_iter()
                        .enumerate()
                        .filter(|&(_, c)| c != 0)
                        .collect()
                })
                .collect()
        })
        .collect();
    let unit_bar = coords(a.unit());
    let labels = (0..m).map(|k| format!("s{k}")).collect();
    let bar = FDAlgebra::raw(f, labels, prod, unit_bar.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seeds = Vec::new();
    split_idempotent(&bar, &unit_bar, &mut rng, &mut seeds)?;
    // Lift through the radical.
    let lift_rep = |v: &[u32]| {
        let mut w = vec![0u32; n];
        for (t, &c) in v.iter().enumerate() {
            if c != 0 {
                vec_axpy(f, &mut w, c, &reps[t]);
            }
        }
        w
    };
    let mut rest = a.unit().to_vec();
    let mut idem = Vec::with_capacity(seeds.len());
    for (k, s) in seeds.iter().enumerate() {
        if k + 1 == seeds.len() {
            idem.push(rest.clone());
            break;
        }
        let r = lift_rep(s);
        let mut x = a.mul3(&rest, &r, &rest);
        let mut ok = false;
        for _ in 0..LIFT_ITERATIONS {
            let x2 = a.mul(&x, &x);
            if x2 == x {
                ok = true;
                break;
            }
            let x3 = a.mul(&x2, &x);
            x = a.sub(&a.scale(3 % f.p(), &x2), &a.scale(2 % f.p(), &x3));
        }
        if !ok {
            return Err(Error::certificate("idempotents", "idempotent lifting did not converge"));
        }
        rest = a.sub(&rest, &x);
        idem.push(x);
    }
    for (e, s) in idem.iter().zip(&seeds) {
        if coords(e) != *s {
            return Err(Error::certificate("idempotents", "lifted idempotent not congruent to its seed"));
        }
    }
    Ok((rad, idem))
}

/// Recursively split `e` in a semisimple algebra into primitive idempotents.
fn split_idempotent(b: &FDAlgebra, e: &[u32], rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u32>>) -> Result<()> {
    let f = b.field();
    let corner = b.corner(e, e);
    if corner.len() <= 1 {
        out.push(e.to_vec());
        return Ok(());
    }
    let commutative = corner
        .iter()
        .all(|x| corner.iter().all(|y| b.mul(x, y) == b.mul(y, x)));
    if commutative && corner.iter().any(|x| b.pow(x, f.p() as u64) != *x) {
        return Err(Error::NonSplit(format!(
            "a commutative corner of dimension {} is not a product of copies of F_{}",
            corner.len(),
            f.p()
        )));
    }
    for _ in 0..SPLIT_TRIALS {
        let mut x = vec![0u32; b.dim()];
        for c in &corner {
            vec_axpy(f, &mut x, rng.gen_range(0..f.p()), c);
        }
        let mu = minimal_polynomial(b, &x, e);
        if let Some((g, h)) = split_by_roots(&mu, f) {
            let (_, _u, v) = UPoly::ext_gcd(&g, &h, f);
            // v·h ≡ 1 mod g and ≡ 0 mod h.
            let eps = eval_poly(b, &v.mul(&h, f).rem(&mu, f), &x, e);
            if !is_zero(&eps) && eps != e {
                debug_assert_eq!(b.mul(&eps, &eps), eps);
                let other = b.sub(e, &eps);
                split_idempotent(b, &eps, rng, out)?;
                split_idempotent(b, &other, rng, out)?;
                return Ok(());
            }
        }
    }
    if commutative {
        return Err(Error::inconclusive("idempotent splitting exhausted its trial budget"));
    }
    Err(Error::NonSplit(format!(
        "no element with split minimal polynomial found in a corner of dimension {}",
        corner.len()
    )))
}

/// Minimal polynomial of `x` inside the corner with unit `e`.
fn minimal_polynomial(b: &FDAlgebra, x: &[u32], e: &[u32]) -> UPoly {
    let f = b.field();
    let mut powers = vec![e.to_vec()];
    loop {
        let next = b.mul(powers.last().expect("nonempty"), x);
        powers.push(next);
        let m = Matrix::from_columns(f, b.dim(), &powers);
        let ker = m.kernel();
        if let Some(c) = ker.first() {
            return UPoly::new(c.clone()).monic(f);
        }
    }
}

fn eval_poly(b: &FDAlgebra, p: &UPoly, x: &[u32], e: &[u32]) -> Vec<u32> {
    let f = b.field();
    let mut acc = vec![0u32; b.dim()];
    for &c in p.c.iter().rev() {
        acc = b.mul(&acc, x);
        vec_axpy(f, &mut acc, c, e);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::PrimeField;
    use std::sync::Arc;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn dense(st: Vec<Vec<Vec<u32>>>, unit: Vec<u32>, p: u32) -> Result<Arc<FDAlgebra>> {
        let n = st.len();
        FDAlgebra::from_products(f(p), (0..n).map(|i| format!("b{i}")).collect(), &st, unit, 0)
    }

    fn matrix_algebra(m: usize, p: u32) -> Result<Arc<FDAlgebra>> {
        let n = m * m;
        let mut st = vec![vec![vec![0u32; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (i, j) = (a / m, a % m);
                let (k, l) = (b / m, b % m);
                if j == k {
                    st[a][b][i * m + l] = 1;
                }
            }
        }
        let mut unit = vec![0; n];
        for i in 0..m {
            unit[i * m + i] = 1;
        }
        dense(st, unit, p)
    }

    #[test]
    fn field_has_zero_radical() {
        let a = dense(vec![vec![vec![1]]], vec![1], 5).unwrap();
        assert!(a.radical().is_empty());
        assert_eq!(a.idempotents(), &[vec![1]]);
    }

    #[test]
    fn upper_triangular() {
        // basis e11, e12, e22
        let idx = [(0, 0), (0, 1), (1, 1)];
        for p in [2, 3, 5] {
            let mut st = vec![vec![vec![0u32; 3]; 3]; 3];
            for (a, &(i, j)) in idx.iter().enumerate() {
                for (b, &(k, l)) in idx.iter().enumerate() {
                    if j == k {
                        let c = idx.iter().position(|&t| t == (i, l)).unwrap();
                        st[a][b][c] = 1;
                    }
                }
            }
            let a = dense(st, vec![1, 0, 1], p).unwrap();
            assert_eq!(a.radical(), &[vec![0, 1, 0]]);
            assert_eq!(a.idempotents().len(), 2);
            a.verify_decomposition().unwrap();
        }
    }

    #[test]
    fn matrix_algebras_are_semisimple() {
        for (m, p) in [(2, 2), (2, 3), (3, 3), (2, 5)] {
            let a = matrix_algebra(m, p).unwrap();
            assert!(a.radical().is_empty());
            assert_eq!(a.idempotents().len(), m);
            a.verify_decomposition().unwrap();
        }
    }

    #[test]
    fn group_algebra_of_cyclic_p_group() {
        // F_3[C_3] is local with radical of dimension 2.
        let n = 3;
        let st: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![0; n];
                        v[(i + j) % n] = 1;
                        v
                    })
                    .collect()
            })
            .collect();
        let a = dense(st, vec![1, 0, 0], 3).unwrap();
        assert_eq!(a.radical().len(), 2);
        assert_eq!(a.idempotents().len(), 1);
    }

    #[test]
    fn split_commutative_semisimple() {
        // F_5[C_2] ≅ F_5 × F_5
        let st = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]];
        let a = dense(st, vec![1, 0], 5).unwrap();
        assert!(a.radical().is_empty());
        assert_eq!(a.idempotents().len(), 2);
        a.verify_decomposition().unwrap();
    }

    #[test]
    fn non_split_field_extension() {
        // F_4 over F_2: basis 1, w with w^2 = w + 1
        let st = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
        let r = dense(st, vec![1, 0], 2);
        assert!(matches!(r, Err(Error::NonSplit(_))));
    }
}
