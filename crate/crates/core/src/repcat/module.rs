//! Right modules given by action matrices, and their morphisms.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::kernel::matrix::{unit_vector, vec_axpy, QuotientSpace, Subspace};
use crate::kernel::{Matrix, PrimeField};

/// A finite-dimensional right A-module on column vectors: m·a = ρ(a)·m, so
/// ρ(ab) = ρ(b)ρ(a).
#[derive(Clone)]
pub struct FDModule {
    alg: Arc<FDAlgebra>,
    dim: usize,
    action: Arc<Vec<Matrix>>,
    adapted: Arc<OnceLock<Adapted>>,
}

/// Basis adapted to the idempotents: columns of `q` list bases of M·e_1,
/// M·e_2, ... in order.
pub(crate) struct Adapted {
    pub q: Matrix,
    pub q_inv: Matrix,
    pub sizes: Vec<usize>,
    pub offsets: Vec<usize>,
}

impl fmt::Debug for FDModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FDModule(dim {})", self.dim)
    }
}

pub(crate) fn same_algebra(a: &Arc<FDAlgebra>, b: &Arc<FDAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FDModule {
    /// Checked constructor: verifies unitality and ρ(b_i b_j) = ρ(b_j)ρ(b_i)
    /// on all basis pairs.
    pub fn new(alg: Arc<FDAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != alg.dim() {
            return Err(Error::input("one action matrix per algebra basis element is required"));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::input("action matrix has wrong size"));
        }
        let m = Self::new_unchecked(alg, dim, action);
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: Arc<FDAlgebra>, dim: usize, action: Vec<Matrix>) -> Self {
        debug_assert_eq!(action.len(), alg.dim());
        FDModule { alg, dim, action: Arc::new(action), adapted: Arc::new(OnceLock::new()) }
    }

    pub fn verify(&self) -> Result<()> {
        let a = &self.alg;
        let f = a.field();
        if self.act(a.unit()) != Matrix::identity(f, self.dim) {
            return Err(Error::input("unit does not act as the identity"));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let mut lhs = Matrix::zeros(f, self.dim, self.dim);
                for &(k, c) in a.basis_product(i, j) {
                    lhs.add_scaled(c, &self.action[k]);
                }
                if lhs != self.action[j].mul(&self.action[i]) {
                    return Err(Error::input(format!("module axiom fails on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn zero(alg: Arc<FDAlgebra>) -> Self {
        let f = alg.field();
        let n = alg.dim();
        Self::new_unchecked(alg, 0, vec![Matrix::zeros(f, 0, 0); n])
    }

    /// The regular module A_A.
    pub fn regular(alg: Arc<FDAlgebra>) -> Self {
        let action = (0..alg.dim()).map(|k| alg.right_matrix(&alg.basis(k))).collect();
        let n = alg.dim();
        Self::new_unchecked(alg, n, action)
    }

    /// The indecomposable projective e_i·A; returns the module and the algebra
    /// elements forming its basis.
    pub fn projective(alg: Arc<FDAlgebra>, i: usize) -> (Self, Vec<Vec<u32>>) {
        let basis = alg.projective_basis(i);
        Self::from_right_ideal(alg, &basis)
    }

    /// The right ideal spanned by `basis` (closed under right multiplication);
    /// returns the module and the echelon basis used for it.
    pub fn from_right_ideal(alg: Arc<FDAlgebra>, basis: &[Vec<u32>]) -> (Self, Vec<Vec<u32>>) {
        let f = alg.field();
        let q = QuotientSpace::new(f, alg.dim(), &[], basis);
        let reps = q.basis().to_vec();
        let d = reps.len();
        let action = (0..alg.dim())
            .map(|k| {
                let b = alg.basis(k);
                let cols: Vec<Vec<u32>> =
                    reps.iter().map(|x| q.coords(&alg.mul(x, &b)).expect("right ideal is closed")).collect();
                Matrix::from_columns(f, d, &cols)
            })
            .collect();
        (Self::new_unchecked(alg, d, action), reps)
    }

    /// The simple top of e_i·A for a basic algebra: b_k acts by the
    /// e_i-coefficient of b_k modulo J.
    pub fn simple(alg: Arc<FDAlgebra>, i: usize) -> Self {
        let f = alg.field();
        let q = QuotientSpace::new(f, alg.dim(), alg.radical(), alg.idempotents());
        let action = (0..alg.dim())
            .map(|k| {
                let c = q.coords(&alg.basis(k)).expect("basic algebra")[i];
                Matrix::from_vec(f, 1, 1, vec![c]).expect("1x1")
            })
            .collect();
        Self::new_unchecked(alg, 1, action)
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, k: usize) -> &Matrix {
        &self.action[k]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// ρ(x) for an arbitrary algebra element.
    pub fn act(&self, x: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                m.add_scaled(c, &self.action[k]);
            }
        }
        m
    }

    /// m·x
    pub fn act_vec(&self, m: &[u32], x: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut r = vec![0u32; self.dim];
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                vec_axpy(f, &mut r, c, &self.action[k].mul_vec(m));
            }
        }
        r
    }

    pub(crate) fn adapted(&self) -> &Adapted {
        self.adapted.get_or_init(|| {
            let f = self.field();
            let mut cols = Vec::new();
            let mut sizes = Vec::new();
            let mut offsets = Vec::new();
            for e in self.alg.idempotents() {
                let (r, piv) = self.act(e).transpose().rref();
                offsets.push(cols.len());
                sizes.push(piv.len());
                for k in 0..piv.len() {
                    cols.push(r.row(k).to_vec());
                }
            }
            let q = Matrix::from_columns(f, self.dim, &cols);
            let q_inv = q.inverse().expect("idempotent decomposition gives a basis");
            Adapted { q, q_inv, sizes, offsets }
        })
    }

    /// dim M·e_i
    pub fn vertex_dims(&self) -> Vec<usize> {
        self.adapted().sizes.clone()
    }

    /// Basis of M·e_i as columns.
    pub fn vertex_basis(&self, i: usize) -> Vec<Vec<u32>> {
        let ad = self.adapted();
        (ad.offsets[i]..ad.offsets[i] + ad.sizes[i]).map(|c| ad.q.column(c)).collect()
    }

    /// Basis of M·J.
    pub fn radical_submodule(&self) -> Vec<Vec<u32>> {
        let f = self.field();
        let mut s = Subspace::new(f, self.dim);
        for r in self.alg.radical() {
            let m = self.act(r);
            for c in m.columns() {
                s.insert(c);
            }
        }
        s.basis().to_vec()
    }

    /// Basis of soc M = {m : m·J = 0}.
    pub fn socle(&self) -> Vec<Vec<u32>> {
        let f = self.field();
        let mats: Vec<Matrix> = self.alg.radical().iter().map(|r| self.act(r)).collect();
        if mats.is_empty() {
            return (0..self.dim).map(|i| unit_vector(self.dim, i)).collect();
        }
        let refs: Vec<&Matrix> = mats.iter().collect();
        Matrix::vstack(f, self.dim, &refs).kernel()
    }

    /// Submodule spanned by an invariant family of columns `basis` (must be
    /// linearly independent and closed under the action).
    pub fn submodule(&self, basis: &[Vec<u32>]) -> Result<(FDModule, ModuleMap)> {
        let f = self.field();
        let s = basis.len();
        if s == 0 {
            let z = FDModule::zero(self.alg.clone());
            let inc = ModuleMap::new_unchecked(z.clone(), self.clone(), Matrix::zeros(f, self.dim, 0));
            return Ok((z, inc));
        }
        let smat = Matrix::from_columns(f, self.dim, basis);
        let images: Vec<Matrix> = self.action.iter().map(|a| a.mul(&smat)).collect();
        let refs: Vec<&Matrix> = images.iter().collect();
        let rhs = Matrix::hstack(f, self.dim, &refs);
        let sol = smat
            .solve_matrix(&rhs)
            .ok_or_else(|| Error::input("subspace is not a submodule"))?;
        let action = (0..self.alg.dim()).map(|k| sol.block(0, k * s, s, s)).collect();
        let sub = FDModule::new_unchecked(self.alg.clone(), s, action);
        let inc = ModuleMap::new_unchecked(sub.clone(), self.clone(), smat);
        Ok((sub, inc))
    }

    /// Submodule generated by the given elements.
    pub fn generated_submodule(&self, gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let f = self.field();
        let mut s = Subspace::new(f, self.dim);
        let mut frontier: Vec<Vec<u32>> = Vec::new();
        for g in gens {
            if s.insert(g.clone()) {
                frontier.push(g.clone());
            }
        }
        let algen = self.alg.generator_list();
        let mats: Vec<Matrix> = algen.iter().map(|x| self.act(x)).collect();
        while let Some(v) = frontier.pop() {
            for m in &mats {
                let w = m.mul_vec(&v);
                if s.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        s.basis().to_vec()
    }

    /// Quotient by the submodule spanned by `sub`; returns the quotient and
    /// the projection.
    pub fn quotient(&self, sub: &[Vec<u32>]) -> (FDModule, ModuleMap) {
        let f = self.field();
        let all: Vec<Vec<u32>> = (0..self.dim).map(|i| unit_vector(self.dim, i)).collect();
        let q = QuotientSpace::new(f, self.dim, sub, &all);
        let d = q.dim();
        let reps = q.basis().to_vec();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<u32>> = reps.iter().map(|r| q.coords(&a.mul_vec(r)).expect("coords")).collect();
                Matrix::from_columns(f, d, &cols)
            })
            .collect();
        let quo = FDModule::new_unchecked(self.alg.clone(), d, action);
        let cols: Vec<Vec<u32>> = all.iter().map(|v| q.coords(v).expect("coords")).collect();
        let proj = ModuleMap::new_unchecked(self.clone(), quo.clone(), Matrix::from_columns(f, d, &cols));
        (quo, proj)
    }

    /// Direct sum with inclusions and projections.
    pub fn direct_sum(mods: &[FDModule], alg: &Arc<FDAlgebra>) -> Result<FDModule> {
        let f = alg.field();
        for m in mods {
            if !same_algebra(m.algebra(), alg) {
                return Err(Error::input("direct sum of modules over different algebras"));
            }
        }
        let dim = mods.iter().map(|m| m.dim).sum();
        let action = (0..alg.dim())
            .map(|k| {
                let blocks: Vec<&Matrix> = mods.iter().map(|m| &m.action[k]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Ok(FDModule::new_unchecked(alg.clone(), dim, action))
    }

    /// The k-linear dual as a right module over the opposite algebra.
    pub fn dual(&self) -> FDModule {
        let op = self.alg.opposite();
        let action = self.action.iter().map(|a| a.transpose()).collect();
        FDModule::new_unchecked(op, self.dim, action)
    }

    /// Same module over an equal algebra handle.
    pub fn rebase(&self, alg: &Arc<FDAlgebra>) -> Result<FDModule> {
        if !same_algebra(&self.alg, alg) {
            return Err(Error::input("cannot rebase a module onto a different algebra"));
        }
        Ok(FDModule { alg: alg.clone(), dim: self.dim, action: self.action.clone(), adapted: self.adapted.clone() })
    }

    /// Transport of structure along an invertible matrix: the module with
    /// action P⁻¹ρ(a)P.
    pub fn change_basis(&self, p: &Matrix) -> Result<FDModule> {
        let inv = p.inverse().ok_or_else(|| Error::input("change of basis is not invertible"))?;
        let action = self.action.iter().map(|a| inv.mul(&a.mul(p))).collect();
        Ok(FDModule::new_unchecked(self.alg.clone(), self.dim, action))
    }

    /// Checked rebuild from an export over `alg`.
    pub fn from_export(alg: &Arc<FDAlgebra>, e: &ModuleExport) -> Result<FDModule> {
        let f = alg.field();
        let action = e
            .action
            .iter()
            .map(|rows| if rows.is_empty() { Ok(Matrix::zeros(f, 0, 0)) } else { Matrix::from_rows(f, rows) })
            .collect::<Result<Vec<_>>>()?;
        if action.iter().any(|m| m.rows() != e.dim || m.cols() != e.dim) {
            return Err(Error::input("module export has inconsistent dimensions"));
        }
        FDModule::new(alg.clone(), e.dim, action)
    }

    pub fn export(&self) -> ModuleExport {
        ModuleExport { dim: self.dim, action: self.action.iter().map(|m| m.to_signed_rows()).collect() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleExport {
    pub dim: usize,
    pub action: Vec<Vec<Vec<i64>>>,
}

/// A module homomorphism M → N as a (dim N × dim M) matrix.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: FDModule,
    pub target: FDModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    /// Checked constructor.
    pub fn new(source: FDModule, target: FDModule, matrix: Matrix) -> Result<Self> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::input("map between modules over different algebras"));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::input("map matrix has wrong size"));
        }
        let m = Self::new_unchecked(source, target, matrix);
        if !m.is_homomorphism() {
            return Err(Error::input("matrix does not commute with the action"));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: FDModule, target: FDModule, matrix: Matrix) -> Self {
        ModuleMap { source, target, matrix }
    }

    pub fn is_homomorphism(&self) -> bool {
        let a = self.source.algebra();
        (0..a.dim()).all(|k| {
            self.matrix.mul(self.source.action(k)) == self.target.action(k).mul(&self.matrix)
        })
    }

    pub fn identity(m: &FDModule) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &FDModule, target: &FDModule) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), Matrix::zeros(source.field(), target.dim(), source.dim()))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target.dim() != self.source.dim() {
            return Err(Error::input("composition of incompatible maps"));
        }
        Ok(Self::new_unchecked(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.is_invertible()
    }

    pub fn kernel(&self) -> Result<(FDModule, ModuleMap)> {
        self.source.submodule(&self.matrix.kernel())
    }

    pub fn image_basis(&self) -> Vec<Vec<u32>> {
        Subspace::spanned_by(self.source.field(), self.target.dim(), &self.matrix.columns()).basis().to_vec()
    }

    pub fn cokernel(&self) -> (FDModule, ModuleMap) {
        self.target.quotient(&self.image_basis())
    }

    /// The dual map D N → D M over the opposite algebra.
    pub fn dual(&self) -> ModuleMap {
        Self::new_unchecked(self.target.dual(), self.source.dual(), self.matrix.transpose())
    }
}

/// Module and matrix helpers for maps between direct sums.
pub fn block_map(source: &FDModule, target: &FDModule, blocks: &[Vec<Matrix>]) -> ModuleMap {
    let f = source.field();
    let rows: Vec<Matrix> = blocks
        .iter()
        .map(|row| {
            let r = row.first().map_or(0, |m| m.rows());
            let refs: Vec<&Matrix> = row.iter().collect();
            Matrix::hstack(f, r, &refs)
        })
        .collect();
    let refs: Vec<&Matrix> = rows.iter().collect();
    ModuleMap::new_unchecked(source.clone(), target.clone(), Matrix::vstack(f, source.dim(), &refs))
}
