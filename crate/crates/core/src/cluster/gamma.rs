//! The stable endomorphism algebra Γ of T and the functor Hom(T, −) into mod-Γ.

use std::sync::Arc;

use crate::algebra::fd::Sparse;
use crate::algebra::{quiver_of, radical_basis, FDAlgebra, GabrielQuiver};
use crate::error::{Error, Result};
use crate::kernel::{Matrix, PrimeField};
use crate::repcat::{hom, FDModule, ModuleMap};

use super::backend::{Frobenius, ModuleBackend, StableSpace};

/// A candidate cluster-tilting object: its indecomposable summands and d.
pub struct CTObject<B: Frobenius> {
    pub backend: B,
    pub summands: Vec<B::Obj>,
    pub labels: Vec<String>,
    pub d: usize,
    pub seed: u64,
}

impl<B: Frobenius> CTObject<B> {
    pub fn new(backend: B, summands: Vec<B::Obj>, labels: Vec<String>, d: usize, seed: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("d must be at least 1"));
        }
        if summands.is_empty() {
            return Err(Error::input("T needs at least one summand"));
        }
        if labels.len() != summands.len() {
            return Err(Error::input("one label per summand is required"));
        }
        Ok(CTObject { backend, summands, labels, d, seed })
    }

    pub fn field(&self) -> PrimeField {
        self.backend.field()
    }

    /// Indices of the summands that are not stably zero.
    pub fn nonprojective(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, t) in self.summands.iter().enumerate() {
            if !self.backend.is_stably_zero(t)? {
                out.push(i);
            }
        }
        Ok(out)
    }
}

/// Coordinates of maps in an explicit list of linearly independent maps.
struct FullCoords {
    basis: Matrix,
}

impl FullCoords {
    fn new(f: PrimeField, maps: &[ModuleMap], len: usize) -> Self {
        FullCoords { basis: Matrix::from_columns(f, len, &maps.iter().map(|m| m.matrix.data().to_vec()).collect::<Vec<_>>()) }
    }

    fn coords(&self, m: &ModuleMap) -> Result<Vec<u32>> {
        self.basis.solve(m.matrix.data()).ok_or_else(|| Error::certificate("Hom coordinates", "map outside the Hom space"))
    }
}

/// Λ = End(T) for the module backend, with π: Λ → Γ and a section Γ → Λ.
pub struct Lambda {
    pub algebra: Arc<FDAlgebra>,
    /// dim Γ × dim Λ.
    pub projection: Matrix,
    /// dim Λ × dim Γ; π∘s = id.
    pub section: Matrix,
    pub maps: Vec<ModuleMap>,
    pub positions: Vec<(usize, usize)>,
}

pub struct StableEnd<B: Frobenius> {
    pub gamma: Arc<FDAlgebra>,
    /// Summand index of each vertex of Γ.
    pub vertices: Vec<usize>,
    homs: Vec<Vec<B::Hom>>,
    offsets: Vec<Vec<usize>>,
    /// Basis of Γ as maps; element k lives in block `positions[k]` = (i, j),
    /// a stable map T_{v_j} → T_{v_i}.
    pub basis_maps: Vec<B::Map>,
    pub positions: Vec<(usize, usize)>,
    pub degrees: Vec<i64>,
    pub lambda: Option<Lambda>,
}

fn dense_to_sparse(v: &[u32]) -> Sparse {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

fn build_algebra(
    f: PrimeField,
    labels: Vec<String>,
    products: Vec<Vec<Sparse>>,
    idempotents: Vec<Vec<u32>>,
) -> Result<Arc<FDAlgebra>> {
    let n = products.len();
    let mut unit = vec![0u32; n];
    for e in &idempotents {
        for (u, &c) in unit.iter_mut().zip(e) {
            *u = f.add(*u, c);
        }
    }
    let raw = FDAlgebra::raw(f, labels.clone(), products.clone(), unit.clone())?;
    let radical = radical_basis(&raw);
    FDAlgebra::with_decomposition(f, labels, products, unit, idempotents, radical).map_err(|e| {
        Error::input(format!("a summand of T is not indecomposable or the algebra is not split basic ({e})"))
    })
}

impl<B: Frobenius> StableEnd<B> {
    pub fn compute(t: &CTObject<B>) -> Result<Self> {
        let be = &t.backend;
        let f = t.field();
        let vertices = t.nonprojective()?;
        if vertices.is_empty() {
            return Err(Error::NotApplicable("every summand of T is projective, so Γ = 0".into()));
        }
        let m = vertices.len();
        let mut homs: Vec<Vec<B::Hom>> = Vec::with_capacity(m);
        for &vi in &vertices {
            let mut row = Vec::with_capacity(m);
            for &vj in &vertices {
                row.push(be.stable_hom(&t.summands[vj], &t.summands[vi])?);
            }
            homs.push(row);
        }
        let mut offsets = vec![vec![0; m]; m];
        let mut basis_maps = Vec::new();
        let mut positions = Vec::new();
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        for i in 0..m {
            for j in 0..m {
                offsets[i][j] = basis_maps.len();
                let h = &homs[i][j];
                for (k, (b, dg)) in h.basis().into_iter().zip(h.degrees()).enumerate() {
                    basis_maps.push(b);
                    positions.push((i, j));
                    degrees.push(dg);
                    labels.push(format!("{}<-{}#{k}", t.labels[vertices[i]], t.labels[vertices[j]]));
                }
            }
        }
        let n = basis_maps.len();
        let mut products = vec![vec![Sparse::new(); n]; n];
        for a in 0..n {
            let (i, j) = positions[a];
            for b in 0..n {
                let (k, l) = positions[b];
                if j != k {
                    continue;
                }
                let c = be.compose(&basis_maps[a], &basis_maps[b])?;
                let co = homs[i][l].coords(&c)?;
                products[a][b] = co.iter().enumerate().filter(|(_, &x)| x != 0).map(|(q, &x)| (offsets[i][l] + q, x)).collect();
            }
        }
        let mut idempotents = Vec::with_capacity(m);
        for i in 0..m {
            let id = be.identity(&t.summands[vertices[i]]);
            let co = homs[i][i].coords(&id)?;
            let mut e = vec![0u32; n];
            e[offsets[i][i]..offsets[i][i] + co.len()].copy_from_slice(&co);
            idempotents.push(e);
        }
        let gamma = build_algebra(f, labels, products, idempotents)?;
        if !gamma.is_basic() {
            return Err(Error::input("T has repeated nonprojective summands; Γ is not basic"));
        }
        Ok(StableEnd { gamma, vertices, homs, offsets, basis_maps, positions, degrees, lambda: None })
    }

    pub fn dim(&self) -> usize {
        self.basis_maps.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn hom(&self, i: usize, j: usize) -> &B::Hom {
        &self.homs[i][j]
    }

    pub fn offset(&self, i: usize, j: usize) -> usize {
        self.offsets[i][j]
    }

    /// Coordinates in Γ of a stable map T_{v_j} → T_{v_i}.
    pub fn element_of(&self, i: usize, j: usize, g: &B::Map) -> Result<Vec<u32>> {
        let co = self.homs[i][j].coords(g)?;
        let mut e = vec![0u32; self.dim()];
        e[self.offsets[i][j]..self.offsets[i][j] + co.len()].copy_from_slice(&co);
        Ok(e)
    }

    pub fn quiver(&self) -> Result<GabrielQuiver> {
        quiver_of(&self.gamma)
    }

    /// The Γ-module Hom(T, X) = ⊕_i stable Hom(T_{v_i}, X).
    pub fn eval(&self, t: &CTObject<B>, x: &B::Obj) -> Result<Evaluated<B>> {
        let be = &t.backend;
        let f = t.field();
        let m = self.num_vertices();
        let mut homs = Vec::with_capacity(m);
        let mut offsets = Vec::with_capacity(m);
        let mut total = 0;
        for &vi in &self.vertices {
            let h = be.stable_hom(&t.summands[vi], x)?;
            offsets.push(total);
            total += h.dim();
            homs.push(h);
        }
        let bases: Vec<Vec<B::Map>> = homs.iter().map(|h| h.basis()).collect();
        let mut action = Vec::with_capacity(self.dim());
        for (k, b) in self.basis_maps.iter().enumerate() {
            let (i, l) = self.positions[k];
            let mut rho = Matrix::zeros(f, total, total);
            for (q, u) in bases[i].iter().enumerate() {
                let ub = be.compose(u, b)?;
                let co = homs[l].coords(&ub)?;
                for (r, &c) in co.iter().enumerate() {
                    rho.set(offsets[l] + r, offsets[i] + q, c);
                }
            }
            action.push(rho);
        }
        let module = FDModule::new(self.gamma.clone(), total, action)
            .map_err(|e| Error::certificate("Hom(T, X)", format!("not a Γ-module: {e}")))?;
        Ok(Evaluated { module, homs, offsets, bases, object: x.clone() })
    }

    /// The Γ-module map Hom(T, g): u ↦ g∘u.
    pub fn eval_map(&self, t: &CTObject<B>, g: &B::Map, ex: &Evaluated<B>, ey: &Evaluated<B>) -> Result<ModuleMap> {
        let f = t.field();
        let mut mat = Matrix::zeros(f, ey.module.dim(), ex.module.dim());
        for i in 0..self.num_vertices() {
            for (q, u) in ex.bases[i].iter().enumerate() {
                let gu = t.backend.compose(g, u)?;
                let co = ey.homs[i].coords(&gu)?;
                for (r, &c) in co.iter().enumerate() {
                    mat.set(ey.offsets[i] + r, ex.offsets[i] + q, c);
                }
            }
        }
        ModuleMap::new(ex.module.clone(), ey.module.clone(), mat)
            .map_err(|e| Error::certificate("Hom(T, g)", format!("not a Γ-homomorphism: {e}")))
    }
}

/// Hom(T, X) as a Γ-module, with the bases used for its coordinates.
pub struct Evaluated<B: Frobenius> {
    pub module: FDModule,
    pub object: B::Obj,
    homs: Vec<B::Hom>,
    offsets: Vec<usize>,
    bases: Vec<Vec<B::Map>>,
}

impl<B: Frobenius> Evaluated<B> {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The stable map T_{v_i} → X with the given coordinates.
    pub fn map_at(&self, t: &CTObject<B>, i: usize, coords: &[u32]) -> Result<Option<B::Map>> {
        let be = &t.backend;
        let mut acc: Option<B::Map> = None;
        for (q, u) in self.bases[i].iter().enumerate() {
            let c = coords[self.offsets[i] + q];
            if c == 0 {
                continue;
            }
            let term = be.scale(u, c);
            acc = Some(match acc {
                None => term,
                Some(a) => be.add(&a, &term)?,
            });
        }
        Ok(acc)
    }

    pub fn vertex_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.homs[i].dim()
    }
}

impl StableEnd<ModuleBackend> {
    /// Λ = End(T) including projective summands, with the projection onto Γ.
    pub fn attach_lambda(&mut self, t: &CTObject<ModuleBackend>) -> Result<()> {
        let f = t.field();
        let s = t.summands.len();
        let mut full: Vec<Vec<Vec<ModuleMap>>> = Vec::with_capacity(s);
        for i in 0..s {
            let mut row = Vec::with_capacity(s);
            for j in 0..s {
                row.push(hom(&t.summands[j], &t.summands[i])?);
            }
            full.push(row);
        }
        let mut offsets = vec![vec![0; s]; s];
        let mut maps = Vec::new();
        let mut positions = Vec::new();
        let mut labels = Vec::new();
        for i in 0..s {
            for j in 0..s {
                offsets[i][j] = maps.len();
                for (k, g) in full[i][j].iter().enumerate() {
                    maps.push(g.clone());
                    positions.push((i, j));
                    labels.push(format!("{}<-{}#{k}", t.labels[i], t.labels[j]));
                }
            }
        }
        let coords: Vec<Vec<FullCoords>> = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| FullCoords::new(f, &full[i][j], t.summands[i].dim() * t.summands[j].dim()))
                    .collect()
            })
            .collect();
        let n = maps.len();
        let mut products = vec![vec![Sparse::new(); n]; n];
        for a in 0..n {
            let (i, j) = positions[a];
            for b in 0..n {
                let (k, l) = positions[b];
                if j != k {
                    continue;
                }
                let co = coords[i][l].coords(&maps[a].compose(&maps[b])?)?;
                products[a][b] = dense_to_sparse(&co).into_iter().map(|(q, x)| (offsets[i][l] + q, x)).collect();
            }
        }
        let mut idempotents = Vec::with_capacity(s);
        for i in 0..s {
            let co = coords[i][i].coords(&ModuleMap::identity(&t.summands[i]))?;
            let mut e = vec![0u32; n];
            e[offsets[i][i]..offsets[i][i] + co.len()].copy_from_slice(&co);
            idempotents.push(e);
        }
        let algebra = build_algebra(f, labels, products, idempotents)?;
        let g = self.dim();
        let vindex = |summand: usize| self.vertices.iter().position(|&v| v == summand);
        let mut projection = Matrix::zeros(f, g, n);
        for (a, m) in maps.iter().enumerate() {
            let (i, j) = positions[a];
            if let (Some(vi), Some(vj)) = (vindex(i), vindex(j)) {
                let co = self.element_of(vi, vj, m)?;
                for (r, &c) in co.iter().enumerate() {
                    projection.set(r, a, c);
                }
            }
        }
        let mut section = Matrix::zeros(f, n, g);
        for (b, m) in self.basis_maps.iter().enumerate() {
            let (vi, vj) = self.positions[b];
            let (i, j) = (self.vertices[vi], self.vertices[vj]);
            let co = coords[i][j].coords(m)?;
            for (r, &c) in co.iter().enumerate() {
                section.set(offsets[i][j] + r, b, c);
            }
        }
        if projection.mul(&section) != Matrix::identity(f, g) {
            return Err(Error::certificate("Λ → Γ", "the section does not split the projection"));
        }
        self.lambda = Some(Lambda { algebra, projection, section, maps, positions });
        Ok(())
    }
}
