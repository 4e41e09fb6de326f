//! Finite-dimensional algebras given by structure constants.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, Weak};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::matrix::{vec_axpy, QuotientSpace, Subspace};
use crate::kernel::{Matrix, PrimeField};

/// Sparse coordinate vector: `(basis index, coefficient)`.
pub type Sparse = Vec<(usize, u32)>;

/// An associative unital algebra over F_p, with a chosen complete set of
/// primitive orthogonal idempotents and a basis of its Jacobson radical.
pub struct FDAlgebra {
    field: PrimeField,
    dim: usize,
    labels: Vec<String>,
    /// `prod[i][j]` = b_i · b_j
    prod: Vec<Vec<Sparse>>,
    unit: Vec<u32>,
    idempotents: Vec<Vec<u32>>,
    radical: Vec<Vec<u32>>,
    fingerprint: u64,
    opposite: OnceLock<Arc<FDAlgebra>>,
    opposite_of: Option<Weak<FDAlgebra>>,
    generators: OnceLock<Generators>,
    pub(crate) self_injective: OnceLock<bool>,
}

/// Algebra generators adapted to the idempotents.
#[derive(Clone, Debug, Default)]
pub struct Generators {
    /// `(j, i, a)` with a ∈ e_j·J·e_i; together with the idempotents these
    /// generate a basic algebra.
    pub arrows: Vec<(usize, usize, Vec<u32>)>,
    /// Further generators needed for non-basic algebras.
    pub extra: Vec<Vec<u32>>,
}

impl fmt::Debug for FDAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FDAlgebra")
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("vertices", &self.idempotents.len())
            .field("radical_dim", &self.radical.len())
            .finish()
    }
}

impl PartialEq for FDAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.fingerprint == o.fingerprint && self.dim == o.dim && self.prod == o.prod
    }
}

/// Serializable structure-constant dump for external cross-checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraExport {
    pub p: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `structure[i][j][k]` = coefficient of b_k in b_i · b_j
    pub structure: Vec<Vec<Vec<u32>>>,
    pub unit: Vec<u32>,
    pub idempotents: Vec<Vec<u32>>,
    pub radical: Vec<Vec<u32>>,
}

fn to_sparse(v: &[u32]) -> Sparse {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

impl FDAlgebra {
    /// Build from dense products `products[i][j]` = coordinates of b_i·b_j.
    /// The radical and idempotents are computed.
    pub fn from_products(
        field: PrimeField,
        labels: Vec<String>,
        products: &[Vec<Vec<u32>>],
        unit: Vec<u32>,
        seed: u64,
    ) -> Result<Arc<FDAlgebra>> {
        let raw = Self::raw(field, labels, products.iter().map(|r| r.iter().map(|v| to_sparse(v)).collect()).collect(), unit)?;
        let (radical, idempotents) = super::radical::radical_and_idempotents(&raw, seed)?;
        Ok(Arc::new(raw.with_parts(idempotents, radical)))
    }

    /// Build with a caller-supplied decomposition, which is verified.
    pub fn with_decomposition(
        field: PrimeField,
        labels: Vec<String>,
        products: Vec<Vec<Sparse>>,
        unit: Vec<u32>,
        idempotents: Vec<Vec<u32>>,
        radical: Vec<Vec<u32>>,
    ) -> Result<Arc<FDAlgebra>> {
        let raw = Self::raw(field, labels, products, unit)?;
        let a = raw.with_parts(idempotents, radical);
        a.verify_decomposition()?;
        Ok(Arc::new(a))
    }

    /// An algebra without idempotent/radical data; only used internally while
    /// those are being computed.
    pub(crate) fn raw(
        field: PrimeField,
        labels: Vec<String>,
        prod: Vec<Vec<Sparse>>,
        unit: Vec<u32>,
    ) -> Result<FDAlgebra> {
        let dim = prod.len();
        if dim == 0 {
            return Err(Error::input("algebra of dimension 0"));
        }
        if labels.len() != dim || unit.len() != dim || prod.iter().any(|r| r.len() != dim) {
            return Err(Error::input("structure constants have inconsistent dimensions"));
        }
        let p = field.p();
        let prod: Vec<Vec<Sparse>> = prod
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|s| {
                        let mut s: Sparse = s.into_iter().map(|(k, c)| (k, c % p)).filter(|&(_, c)| c != 0).collect();
                        s.sort_unstable();
                        s
                    })
                    .collect()
            })
            .collect();
        if prod.iter().flatten().flatten().any(|&(k, _)| k >= dim) {
            return Err(Error::input("structure constant index out of range"));
        }
        let mut h = DefaultHasher::new();
        (p, dim, &prod).hash(&mut h);
        let a = FDAlgebra {
            field,
            dim,
            labels,
            prod,
            unit,
            idempotents: Vec::new(),
            radical: Vec::new(),
            fingerprint: h.finish(),
            opposite: OnceLock::new(),
            opposite_of: None,
            generators: OnceLock::new(),
            self_injective: OnceLock::new(),
        };
        a.verify_associative_unital()?;
        Ok(a)
    }

    pub(crate) fn with_parts(mut self, idempotents: Vec<Vec<u32>>, radical: Vec<Vec<u32>>) -> FDAlgebra {
        self.idempotents = idempotents;
        self.radical = radical;
        self
    }

    fn verify_associative_unital(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::input(format!("unit does not act as identity on basis element {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.prod[i][j];
                for k in 0..n {
                    // (b_i b_j) b_k against b_i (b_j b_k)
                    let mut left = vec![0u32; n];
                    for &(l, c) in ij {
                        for &(m, d) in &self.prod[l][k] {
                            left[m] = self.field.add(left[m], self.field.mul(c, d));
                        }
                    }
                    let mut right = vec![0u32; n];
                    for &(l, c) in &self.prod[j][k] {
                        for &(m, d) in &self.prod[i][l] {
                            right[m] = self.field.add(right[m], self.field.mul(c, d));
                        }
                    }
                    if left != right {
                        return Err(Error::input(format!("associativity fails on basis triple ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that the idempotents are complete, orthogonal and primitive
    /// modulo the radical, and that the radical is a nilpotent ideal with
    /// quotient spanned by the idempotents (basic split case) or otherwise
    /// semisimple as certified by the radical computation.
    pub fn verify_decomposition(&self) -> Result<()> {
        let f = self.field;
        let n = self.dim;
        let mut sum = vec![0u32; n];
        for (a, e) in self.idempotents.iter().enumerate() {
            if self.mul(e, e) != *e {
                return Err(Error::certificate("idempotents", format!("element {a} is not idempotent")));
            }
            for (b, g) in self.idempotents.iter().enumerate() {
                if a != b && !is_zero(&self.mul(e, g)) {
                    return Err(Error::certificate("idempotents", format!("elements {a} and {b} not orthogonal")));
                }
            }
            vec_axpy(f, &mut sum, 1, e);
        }
        if sum != self.unit {
            return Err(Error::certificate("idempotents", "idempotents do not sum to the unit"));
        }
        let jsp = Subspace::spanned_by(f, n, &self.radical);
        if jsp.dim() != self.radical.len() {
            return Err(Error::certificate("radical", "radical basis is linearly dependent"));
        }
        for r in &self.radical {
            for k in 0..n {
                let b = self.basis(k);
                if !jsp.contains(&self.mul(r, &b)) || !jsp.contains(&self.mul(&b, r)) {
                    return Err(Error::certificate("radical", "radical is not a two-sided ideal"));
                }
            }
        }
        if !self.is_nilpotent_subspace(&self.radical) {
            return Err(Error::certificate("radical", "radical is not nilpotent"));
        }
        for e in &self.idempotents {
            if jsp.contains(e) {
                return Err(Error::certificate("idempotents", "an idempotent lies in the radical"));
            }
        }
        // Basic case: A/J spanned by the idempotents.
        if n - jsp.dim() == self.idempotents.len() {
            let q = QuotientSpace::new(f, n, &self.radical, &self.idempotents);
            if q.dim() != self.idempotents.len() {
                return Err(Error::certificate("radical", "idempotents are dependent modulo the radical"));
            }
        }
        Ok(())
    }

    /// Whether the ideal spanned by `v` satisfies V^k = 0 for some k ≤ dim+1.
    pub fn is_nilpotent_subspace(&self, v: &[Vec<u32>]) -> bool {
        let mut power: Vec<Vec<u32>> = v.to_vec();
        for _ in 0..=self.dim {
            if power.iter().all(|x| is_zero(x)) {
                return true;
            }
            power = self.product_span(&power, v);
        }
        power.iter().all(|x| is_zero(x))
    }

    /// Echelon basis of span{x·y : x ∈ X, y ∈ Y}.
    pub fn product_span(&self, xs: &[Vec<u32>], ys: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut s = Subspace::new(self.field, self.dim);
        for x in xs {
            for y in ys {
                s.insert(self.mul(x, y));
            }
        }
        s.basis().to_vec()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<u32>] {
        &self.idempotents
    }

    pub fn num_vertices(&self) -> usize {
        self.idempotents.len()
    }

    pub fn radical(&self) -> &[Vec<u32>] {
        &self.radical
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    /// Sparse product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse {
        &self.prod[i][j]
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut r = vec![0u32; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = f.mul(ai, bj);
                for &(k, v) in &self.prod[i][j] {
                    r[k] = f.add(r[k], f.mul(c, v));
                }
            }
        }
        r
    }

    pub fn mul3(&self, a: &[u32], b: &[u32], c: &[u32]) -> Vec<u32> {
        self.mul(&self.mul(a, b), c)
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.unit.clone();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    /// Matrix of v ↦ a·v on coordinate columns.
    pub fn left_matrix(&self, a: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of v ↦ v·a on coordinate columns.
    pub fn right_matrix(&self, a: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn is_unit(&self, a: &[u32]) -> bool {
        self.left_matrix(a).is_invertible()
    }

    pub fn inverse(&self, a: &[u32]) -> Option<Vec<u32>> {
        self.left_matrix(a).solve(&self.unit)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.prod[i][j] == self.prod[j][i]))
    }

    /// Echelon basis of e·A·g.
    pub fn corner(&self, e: &[u32], g: &[u32]) -> Vec<Vec<u32>> {
        let mut s = Subspace::new(self.field, self.dim);
        for k in 0..self.dim {
            s.insert(self.mul3(e, &self.basis(k), g));
        }
        s.basis().to_vec()
    }

    /// Echelon basis of e_i·A (paths ending at vertex i for quiver algebras).
    pub fn projective_basis(&self, i: usize) -> Vec<Vec<u32>> {
        self.corner(&self.idempotents[i], &self.unit)
    }

    /// The opposite algebra, with product a ∗ b = b·a. Cached; the opposite
    /// of the opposite is the original algebra.
    pub fn opposite(self: &Arc<Self>) -> Arc<FDAlgebra> {
        if let Some(orig) = self.opposite_of.as_ref().and_then(Weak::upgrade) {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let n = self.dim;
                let prod: Vec<Vec<Sparse>> =
                    (0..n).map(|i| (0..n).map(|j| self.prod[j][i].clone()).collect()).collect();
                let labels = self.labels.iter().map(|l| format!("{l}^op")).collect();
                let mut raw = FDAlgebra::raw(self.field, labels, prod, self.unit.clone())
                    .expect("opposite of a valid algebra is valid");
                raw.opposite_of = Some(Arc::downgrade(self));
                Arc::new(raw.with_parts(self.idempotents.clone(), self.radical.clone()))
            })
            .clone()
    }

    /// Tensor product A ⊗ B with (a⊗b)(c⊗d) = ac ⊗ bd. Basis index i·dim B + j.
    pub fn tensor(a: &FDAlgebra, b: &FDAlgebra) -> Result<Arc<FDAlgebra>> {
        if a.field != b.field {
            return Err(Error::input("tensor product of algebras over different fields"));
        }
        let f = a.field;
        let (na, nb) = (a.dim, b.dim);
        let n = na * nb;
        let mut prod = vec![vec![Sparse::new(); n]; n];
        for i in 0..na {
            for j in 0..nb {
                for k in 0..na {
                    for l in 0..nb {
                        let pa = &a.prod[i][k];
                        let pb = &b.prod[j][l];
                        let mut s = Sparse::with_capacity(pa.len() * pb.len());
                        for &(x, c) in pa {
                            for &(y, d) in pb {
                                s.push((x * nb + y, f.mul(c, d)));
                            }
                        }
                        prod[i * nb + j][k * nb + l] = s;
                    }
                }
            }
        }
        let labels = (0..n).map(|t| format!("{}⊗{}", a.labels[t / nb], b.labels[t % nb])).collect();
        let kron = |u: &[u32], v: &[u32]| -> Vec<u32> {
            let mut w = vec![0u32; n];
            for (x, &c) in u.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (y, &d) in v.iter().enumerate() {
                    w[x * nb + y] = f.mul(c, d);
                }
            }
            w
        };
        let unit = kron(&a.unit, &b.unit);
        let mut idem = Vec::new();
        for e in &a.idempotents {
            for g in &b.idempotents {
                idem.push(kron(e, g));
            }
        }
        // rad(A⊗B) = J_A⊗B + A⊗J_B for split algebras over a perfect field.
        let mut rad = Subspace::new(f, n);
        for r in &a.radical {
            for y in 0..nb {
                rad.insert(kron(r, &b.basis(y)));
            }
        }
        for x in 0..na {
            for r in &b.radical {
                rad.insert(kron(&a.basis(x), r));
            }
        }
        let raw = FDAlgebra::raw(f, labels, prod, unit)?;
        let t = raw.with_parts(idem, rad.basis().to_vec());
        t.verify_decomposition()?;
        Ok(Arc::new(t))
    }

    /// Generators beyond the idempotents: a basis of a complement of J² in J
    /// chosen inside the corners e_j·J·e_i, then (non-basic case) enough
    /// further elements to generate. Cached.
    pub fn generators(&self) -> &Generators {
        self.generators.get_or_init(|| {
            let f = self.field;
            let n = self.dim;
            let mut g = Generators::default();
            let j2 = self.product_span(&self.radical, &self.radical);
            let mut acc = Subspace::spanned_by(f, n, &j2);
            for (j, ej) in self.idempotents.iter().enumerate() {
                for (i, ei) in self.idempotents.iter().enumerate() {
                    let mut corner = Subspace::new(f, n);
                    for r in &self.radical {
                        corner.insert(self.mul3(ej, r, ei));
                    }
                    for v in corner.basis() {
                        if acc.insert(v.clone()) {
                            g.arrows.push((j, i, v.clone()));
                        }
                    }
                }
            }
            let mut all: Vec<Vec<u32>> = self.idempotents.clone();
            all.extend(g.arrows.iter().map(|a| a.2.clone()));
            let mut span = self.generated_span(&all);
            for k in 0..n {
                if span.dim() == n {
                    break;
                }
                if !span.contains(&self.basis(k)) {
                    all.push(self.basis(k));
                    g.extra.push(self.basis(k));
                    span = self.generated_span(&all);
                }
            }
            g
        })
    }

    /// All generators as one list: idempotents, arrows, extras.
    pub fn generator_list(&self) -> Vec<Vec<u32>> {
        let g = self.generators();
        let mut v = self.idempotents.clone();
        v.extend(g.arrows.iter().map(|a| a.2.clone()));
        v.extend(g.extra.iter().cloned());
        v
    }

    /// Span of all products of elements of `gens` (including the unit).
    pub fn generated_span(&self, gens: &[Vec<u32>]) -> Subspace {
        let f = self.field;
        let mut s = Subspace::new(f, self.dim);
        let mut frontier = vec![self.unit.clone()];
        s.insert(self.unit.clone());
        while let Some(w) = frontier.pop() {
            for g in gens {
                let v = self.mul(&w, g);
                if s.insert(v.clone()) {
                    frontier.push(v);
                }
            }
        }
        s
    }

    /// Corner algebra e·A·e with unit e. `e` must be idempotent; the
    /// decomposition is inherited from those idempotents of A lying under e.
    pub fn corner_algebra(&self, e: &[u32]) -> Result<Arc<FDAlgebra>> {
        let f = self.field;
        let basis = self.corner(e, e);
        let m = basis.len();
        if m == 0 {
            return Err(Error::input("corner algebra of the zero idempotent"));
        }
        let q = QuotientSpace::new(f, self.dim, &[], &basis);
        let reps = q.basis().to_vec();
        let coords = |v: &[u32]| q.coords(v).expect("product stays in the corner");
        let prod: Vec<Vec<Sparse>> = reps
            .iter()
            .map(|a| reps.iter().map(|b| to_sparse(&coords(&self.mul(a, b)))).collect())
            .collect();
        let unit = coords(e);
        let idem: Vec<Vec<u32>> = self
            .idempotents
            .iter()
            .filter(|g| self.mul(e, g) == **g && self.mul(g, e) == **g)
            .map(|g| coords(g))
            .collect();
        let mut rad = Subspace::new(f, m);
        for r in &self.radical {
            let v = self.mul3(e, r, e);
            rad.insert(coords(&v));
        }
        let labels = (0..m).map(|k| format!("c{k}")).collect();
        let raw = FDAlgebra::raw(f, labels, prod, unit)?;
        let c = raw.with_parts(idem, rad.basis().to_vec());
        c.verify_decomposition()?;
        Ok(Arc::new(c))
    }

    /// Rebuild from an export; the radical and idempotents are recomputed.
    pub fn from_export(e: &AlgebraExport) -> Result<Arc<FDAlgebra>> {
        let field = PrimeField::new(e.p)?;
        if e.structure.len() != e.dim || e.unit.len() != e.dim {
            return Err(Error::input("algebra export has inconsistent dimensions"));
        }
        Self::from_products(field, e.labels.clone(), &e.structure, e.unit.clone(), 0)
    }

    pub fn export(&self) -> AlgebraExport {
        let n = self.dim;
        AlgebraExport {
            p: self.field.p(),
            dim: n,
            labels: self.labels.clone(),
            structure: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut v = vec![0; n];
                            for &(k, c) in &self.prod[i][j] {
                                v[k] = c;
                            }
                            v
                        })
                        .collect()
                })
                .collect(),
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
        }
    }

    /// Vertex index of an idempotent-like element modulo the radical, when the
    /// algebra is basic: returns `Some(i)` iff `x ≡ e_i (mod J)`.
    pub fn vertex_of(&self, x: &[u32]) -> Option<usize> {
        let q = QuotientSpace::new(self.field, self.dim, &self.radical, &self.idempotents);
        (0..self.idempotents.len()).find(|&i| q.is_zero_class(&self.sub(x, &self.idempotents[i])))
    }

    /// Whether A/J is spanned by the idempotents (A basic and split).
    pub fn is_basic(&self) -> bool {
        self.dim - self.radical.len() == self.idempotents.len()
    }
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn truncated_poly(f: PrimeField, n: usize) -> Arc<FDAlgebra> {
        // k[x]/(x^n) with basis 1, x, ..., x^{n-1}
        let products: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![0; n];
                        if i + j < n {
                            v[i + j] = 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![0; n];
        unit[0] = 1;
        let labels = (0..n).map(|i| format!("x^{i}")).collect();
        FDAlgebra::from_products(f, labels, &products, unit, 0).unwrap()
    }

    #[test]
    fn truncated_polynomial_algebra() {
        let f = PrimeField::new(5).unwrap();
        let a = truncated_poly(f, 3);
        assert_eq!(a.radical().len(), 2);
        assert_eq!(a.idempotents(), &[vec![1, 0, 0]]);
        assert!(a.is_commutative());
    }

    #[test]
    fn rejects_non_associative() {
        let f = PrimeField::new(5).unwrap();
        // b1*b1 = b1 + b0 style garbage: unit fails first
        let products = [vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
        let r = FDAlgebra::raw(
            f,
            vec!["a".into(), "b".into()],
            products.iter().map(|r| r.iter().map(|v| to_sparse(v)).collect()).collect(),
            vec![1, 0],
        );
        // This is k[t]/(t^2 - t - 1): associative, so it must be accepted.
        assert!(r.is_ok());
        let bad = [vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]];
        let mut bad_sparse: Vec<Vec<Sparse>> =
            bad.iter().map(|r| r.iter().map(|v| to_sparse(v)).collect()).collect();
        bad_sparse[1][0] = to_sparse(&[0, 2]);
        let r = FDAlgebra::raw(f, vec!["a".into(), "b".into()], bad_sparse, vec![1, 0]);
        assert!(r.is_err());
    }

    #[test]
    fn opposite_and_tensor_dimensions() {
        let f = PrimeField::new(5).unwrap();
        let a = truncated_poly(f, 3);
        let e = FDAlgebra::tensor(&a.opposite(), &a).unwrap();
        assert_eq!(e.dim(), 9);
        assert!(e.is_commutative());
        assert_eq!(e.radical().len(), 8);
    }
}
