//! Projective covers, syzygies, minimal resolutions, Ext and Tor.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::module::{same_algebra, FDModule, ModuleMap};
use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::kernel::matrix::{QuotientSpace, Subspace};
use crate::kernel::Matrix;

/// A projective module ⊕_k e_{v_k}·A, remembering the algebra elements that
/// form the basis of each summand.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub vertices: Vec<usize>,
    pub module: FDModule,
    bases: Vec<Arc<Vec<Vec<u32>>>>,
    coords: Vec<Arc<QuotientSpace>>,
    offsets: Vec<usize>,
}

impl FreeModule {
    pub fn new(alg: &Arc<FDAlgebra>, vertices: &[usize]) -> Self {
        let f = alg.field();
        let mut cache: HashMap<usize, (FDModule, Arc<Vec<Vec<u32>>>, Arc<QuotientSpace>)> = HashMap::new();
        let mut mods = Vec::new();
        let mut bases = Vec::new();
        let mut coords = Vec::new();
        let mut offsets = Vec::new();
        let mut off = 0;
        for &v in vertices {
            let entry = cache.entry(v).or_insert_with(|| {
                let (m, b) = FDModule::projective(alg.clone(), v);
                let q = QuotientSpace::new(f, alg.dim(), &[], &b);
                (m, Arc::new(b), Arc::new(q))
            });
            mods.push(entry.0.clone());
            bases.push(entry.1.clone());
            coords.push(entry.2.clone());
            offsets.push(off);
            off += entry.1.len();
        }
        let module = FDModule::direct_sum(&mods, alg).expect("same algebra");
        FreeModule { vertices: vertices.to_vec(), module, bases, coords, offsets }
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn summand_basis(&self, k: usize) -> &[Vec<u32>] {
        &self.bases[k]
    }

    pub fn summand_range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k] + self.bases[k].len()
    }

    /// Coordinates of the element whose k-th component is `comps[k]`
    /// (an algebra element lying in e_{v_k}·A).
    pub fn element(&self, comps: &[Vec<u32>]) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for (k, c) in comps.iter().enumerate() {
            let co = self.coords[k].coords(c).expect("component lies in its summand");
            v[self.summand_range(k)].copy_from_slice(&co);
        }
        v
    }

    /// Components (algebra elements) of a vector.
    pub fn components(&self, v: &[u32]) -> Vec<Vec<u32>> {
        let alg = self.module.algebra();
        let f = alg.field();
        (0..self.rank())
            .map(|k| {
                let mut x = vec![0u32; alg.dim()];
                for (c, b) in v[self.summand_range(k)].iter().zip(self.bases[k].iter()) {
                    crate::kernel::matrix::vec_axpy(f, &mut x, *c, b);
                }
                x
            })
            .collect()
    }

    /// The generator e_{v_k} of the k-th summand.
    pub fn generator(&self, k: usize) -> Vec<u32> {
        let alg = self.module.algebra();
        let mut comps = vec![vec![0u32; alg.dim()]; self.rank()];
        comps[k] = alg.idempotents()[self.vertices[k]].clone();
        self.element(&comps)
    }

    /// The homomorphism sending the k-th generator to `images[k]`, which must
    /// lie in target·e_{v_k}.
    pub fn map_from_generators(&self, target: &FDModule, images: &[Vec<u32>]) -> ModuleMap {
        let f = target.field();
        let mut cols = Vec::with_capacity(self.dim());
        for (k, img) in images.iter().enumerate() {
            for x in self.bases[k].iter() {
                cols.push(target.act_vec(img, x));
            }
        }
        ModuleMap {
            source: self.module.clone(),
            target: target.clone(),
            matrix: Matrix::from_columns(f, target.dim(), &cols),
        }
    }
}

fn require_basic(a: &FDAlgebra) -> Result<()> {
    if a.is_basic() {
        Ok(())
    } else {
        Err(Error::Unsupported("projective covers are implemented for basic algebras".into()))
    }
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub free: FreeModule,
    pub epi: ModuleMap,
    /// Images of the generators in M.
    pub generators: Vec<Vec<u32>>,
}

/// Minimal projective cover: one summand e_i·A per basis vector of
/// (M/MJ)·e_i.
pub fn projective_cover(m: &FDModule) -> Result<ProjectiveCover> {
    let a = m.algebra();
    require_basic(a)?;
    let f = m.field();
    let mut span = Subspace::spanned_by(f, m.dim(), &m.radical_submodule());
    let mut vertices = Vec::new();
    let mut gens = Vec::new();
    if m.dim() > 0 {
        for i in 0..a.num_vertices() {
            for v in m.vertex_basis(i) {
                if span.insert(v.clone()) {
                    vertices.push(i);
                    gens.push(v);
                }
            }
        }
    }
    let free = FreeModule::new(a, &vertices);
    let epi = free.map_from_generators(m, &gens);
    Ok(ProjectiveCover { free, epi, generators: gens })
}

/// Injective envelope M → D(P(DM)).
pub fn injective_envelope(m: &FDModule) -> Result<(FDModule, ModuleMap)> {
    let d = m.dual();
    let cover = projective_cover(&d)?;
    let mono = cover.epi.dual();
    let target = mono.target.clone();
    // The double dual lives over the original algebra handle.
    let src = mono.source.rebase(m.algebra())?;
    let tgt = target.rebase(m.algebra())?;
    Ok((tgt.clone(), ModuleMap { source: src, target: tgt, matrix: mono.matrix }))
}

/// One syzygy step: cover and kernel.
#[derive(Clone, Debug)]
pub struct SyzygyStep {
    pub cover: ProjectiveCover,
    pub kernel: FDModule,
    pub inclusion: ModuleMap,
}

pub fn syzygy_step(m: &FDModule) -> Result<SyzygyStep> {
    let cover = projective_cover(m)?;
    let (kernel, inclusion) = cover.epi.kernel()?;
    Ok(SyzygyStep { cover, kernel, inclusion })
}

/// Ω^k M for k ≥ 0, and the cosyzygy D Ω^{-k} D M for k < 0.
pub fn syzygy(m: &FDModule, k: i32) -> Result<FDModule> {
    if k >= 0 {
        let mut cur = m.clone();
        for _ in 0..k {
            cur = syzygy_step(&cur)?.kernel;
        }
        Ok(cur)
    } else {
        let d = syzygy(&m.dual(), -k)?;
        d.dual().rebase(m.algebra())
    }
}

/// Ω^k of a homomorphism, between the modules produced by `syzygy`.
/// Well defined modulo maps factoring through projectives.
pub fn syzygy_map(f: &ModuleMap, k: i32) -> Result<ModuleMap> {
    if k >= 0 {
        let mut cur = f.clone();
        for _ in 0..k {
            cur = syzygy_map_once(&cur)?;
        }
        Ok(cur)
    } else {
        let d = syzygy_map(&f.dual(), -k)?.dual();
        let alg = f.source.algebra();
        Ok(ModuleMap { source: d.source.rebase(alg)?, target: d.target.rebase(alg)?, matrix: d.matrix })
    }
}

fn syzygy_map_once(f: &ModuleMap) -> Result<ModuleMap> {
    let sm = syzygy_step(&f.source)?;
    let sn = syzygy_step(&f.target)?;
    let lift = lift_along(&sm.cover.free, &f.matrix.mul(&sm.cover.epi.matrix), &sn.cover.epi)?;
    // Restrict to kernels: lift ∘ ι_M = ι_N ∘ g.
    let img = lift.matrix.mul(&sm.inclusion.matrix);
    let g = sn
        .inclusion
        .matrix
        .solve_matrix(&img)
        .ok_or_else(|| Error::certificate("syzygy_map", "lift does not preserve kernels"))?;
    Ok(ModuleMap { source: sm.kernel, target: sn.kernel, matrix: g })
}

/// Lift a map h: P → N (P free, given as a matrix) along an epimorphism
/// π: Q → N; returns L: P → Q with π∘L = h.
pub fn lift_along(p: &FreeModule, h: &Matrix, pi: &ModuleMap) -> Result<ModuleMap> {
    let q = &pi.source;
    let mut images = Vec::with_capacity(p.rank());
    for k in 0..p.rank() {
        let target = h.mul_vec(&p.generator(k));
        // Solve inside Q·e_v.
        let vb = q.vertex_basis(p.vertices[k]);
        let img: Vec<Vec<u32>> = vb.iter().map(|b| pi.matrix.mul_vec(b)).collect();
        let sys = Matrix::from_columns(q.field(), pi.target.dim(), &img);
        let c = sys
            .solve(&target)
            .ok_or_else(|| Error::certificate("lift", "map does not lift along the epimorphism"))?;
        let mut x = vec![0u32; q.dim()];
        for (ci, b) in c.iter().zip(&vb) {
            crate::kernel::matrix::vec_axpy(q.field(), &mut x, *ci, b);
        }
        images.push(x);
    }
    Ok(p.map_from_generators(q, &images))
}

/// A minimal projective resolution P_n → … → P_0 → M.
#[derive(Clone, Debug)]
pub struct ResolutionTrace {
    pub terms: Vec<FreeModule>,
    /// `differentials[i]` : P_{i+1} → P_i.
    pub differentials: Vec<ModuleMap>,
    /// `components[i][g][k]` = k-th component of the image of generator g
    /// of P_{i+1} in P_i.
    pub components: Vec<Vec<Vec<Vec<u32>>>>,
    pub augmentation: ModuleMap,
    /// Ω^i M for i = 0..=n+1.
    pub syzygies: Vec<FDModule>,
    pub certificate: ResolutionCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionCertificate {
    pub ranks: Vec<usize>,
    pub term_dims: Vec<usize>,
    pub exact: bool,
    pub minimal: bool,
}

pub fn minimal_resolution(m: &FDModule, n: usize) -> Result<ResolutionTrace> {
    let a = m.algebra();
    let f = a.field();
    let radical = Subspace::spanned_by(f, a.dim(), a.radical());
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let mut components = Vec::new();
    let mut syzygies = vec![m.clone()];
    let first = syzygy_step(m)?;
    let augmentation = first.cover.epi.clone();
    terms.push(first.cover.free.clone());
    syzygies.push(first.kernel.clone());
    let mut prev = first;
    for _ in 0..n {
        let step = syzygy_step(&prev.kernel)?;
        let d = prev.inclusion.compose(&step.cover.epi)?;
        let pterm = &prev.cover.free;
        let comps: Vec<Vec<Vec<u32>>> =
            step.cover.generators.iter().map(|g| pterm.components(&prev.inclusion.matrix.mul_vec(g))).collect();
        differentials.push(ModuleMap { source: step.cover.free.module.clone(), target: pterm.module.clone(), matrix: d.matrix });
        components.push(comps);
        terms.push(step.cover.free.clone());
        syzygies.push(step.kernel.clone());
        prev = step;
    }
    // Certificates: exactness by ranks and minimality by radical membership.
    let mut ranks = vec![augmentation.matrix.rank()];
    ranks.extend(differentials.iter().map(|d| d.matrix.rank()));
    let mut exact = ranks[0] == m.dim();
    for i in 0..differentials.len() {
        // dim ker(P_i → P_{i−1} or M) = rank(P_{i+1} → P_i)
        exact &= terms[i].dim() - ranks[i] == ranks[i + 1];
    }
    for i in 1..differentials.len() {
        exact &= differentials[i - 1].matrix.mul(&differentials[i].matrix).is_zero();
    }
    if let Some(d0) = differentials.first() {
        exact &= augmentation.matrix.mul(&d0.matrix).is_zero();
    }
    let minimal = components.iter().flatten().flatten().all(|x| radical.contains(x));
    let certificate = ResolutionCertificate {
        term_dims: terms.iter().map(|t| t.dim()).collect(),
        ranks,
        exact,
        minimal,
    };
    if !exact {
        return Err(Error::certificate("resolution", "rank certificate failed"));
    }
    Ok(ResolutionTrace { terms, differentials, components, augmentation, syzygies, certificate })
}

impl ResolutionTrace {
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn ranks_of_terms(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.rank()).collect()
    }

    pub fn export(&self) -> ResolutionExport {
        ResolutionExport {
            term_vertices: self.terms.iter().map(|t| t.vertices.clone()).collect(),
            term_dims: self.certificate.term_dims.clone(),
            syzygy_dims: self.syzygies.iter().map(|s| s.dim()).collect(),
            ranks: self.certificate.ranks.clone(),
            exact: self.certificate.exact,
            minimal: self.certificate.minimal,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionExport {
    pub term_vertices: Vec<Vec<usize>>,
    pub term_dims: Vec<usize>,
    pub syzygy_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub exact: bool,
    pub minimal: bool,
}

/// Ext^i_A(M, N): dimension and cocycle representatives in
/// Hom(P_i, N) ≅ ⊕_g N·e_{v_g}.
pub struct ExtResult {
    pub dim: usize,
    pub cocycles: Vec<Vec<u32>>,
}

pub fn ext(m: &FDModule, n: &FDModule, i: usize) -> Result<ExtResult> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::input("ext between modules over different algebras"));
    }
    let res = minimal_resolution(m, i + 1)?;
    ext_from_resolution(&res, n, i)
}

/// Matrix of Hom(P_i, N) → Hom(P_{i+1}, N), φ ↦ φ∘d, in the bases
/// ⊕_g N·e_{v_g}.
fn cochain_map(res: &ResolutionTrace, n: &FDModule, i: usize, vb: &dyn Fn(usize) -> Vec<Vec<u32>>) -> Matrix {
    let f = n.field();
    let src = &res.terms[i];
    let tgt = &res.terms[i + 1];
    let src_bases: Vec<Vec<Vec<u32>>> = src.vertices.iter().map(|&v| vb(v)).collect();
    let tgt_bases: Vec<Vec<Vec<u32>>> = tgt.vertices.iter().map(|&v| vb(v)).collect();
    let rows: usize = tgt_bases.iter().map(|b| b.len()).sum();
    let mut cols = Vec::new();
    for (k, kb) in src_bases.iter().enumerate() {
        for x in kb {
            // φ with φ(gen_k) = x, zero on other generators.
            let mut col = Vec::with_capacity(rows);
            for (g, gb) in tgt_bases.iter().enumerate() {
                let y = n.act_vec(x, &res.components[i][g][k]);
                let sys = Matrix::from_columns(f, n.dim(), gb);
                col.extend(if gb.is_empty() { vec![] } else { sys.solve(&y).expect("value lies in N·e_v") });
            }
            cols.push(col);
        }
    }
    Matrix::from_columns(f, rows, &cols)
}

fn ext_from_resolution(res: &ResolutionTrace, n: &FDModule, i: usize) -> Result<ExtResult> {
    let vb = |v: usize| n.vertex_basis(v);
    let dim_ci: usize = res.terms[i].vertices.iter().map(|&v| vb(v).len()).sum();
    let next = cochain_map(res, n, i, &vb);
    let cocycles = if dim_ci == 0 { Vec::new() } else { next.kernel() };
    let prev_rank = if i == 0 { 0 } else { cochain_map(res, n, i - 1, &vb).rank() };
    Ok(ExtResult { dim: cocycles.len() - prev_rank, cocycles })
}

/// dim Tor_i^A(M, N) for N a right module over the opposite algebra
/// (i.e. a left A-module).
pub fn tor(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    let op = m.algebra().opposite();
    if !same_algebra(&op, n.algebra()) {
        return Err(Error::input("tor needs a module over the opposite algebra"));
    }
    let res = minimal_resolution(m, i + 1)?;
    tor_from_resolution(&res, n, i)
}

/// Boundary ∂_{i+1}: P_{i+1} ⊗ N → P_i ⊗ N in the bases ⊕_g e_{v_g}·N.
fn tor_boundary(res: &ResolutionTrace, n: &FDModule, i: usize) -> Matrix {
    let f = n.field();
    let src = &res.terms[i + 1];
    let tgt = &res.terms[i];
    let vb = |v: usize| n.vertex_basis(v);
    let tgt_bases: Vec<Vec<Vec<u32>>> = tgt.vertices.iter().map(|&v| vb(v)).collect();
    let rows: usize = tgt_bases.iter().map(|b| b.len()).sum();
    let mut cols = Vec::new();
    for (g, &v) in src.vertices.iter().enumerate() {
        for x in vb(v) {
            let mut col = Vec::with_capacity(rows);
            for (k, kb) in tgt_bases.iter().enumerate() {
                // a·x for the left action, i.e. x ∗ a over the opposite algebra.
                let y = n.act_vec(&x, &res.components[i][g][k]);
                let sys = Matrix::from_columns(f, n.dim(), kb);
                col.extend(if kb.is_empty() { vec![] } else { sys.solve(&y).expect("value lies in e_v·N") });
            }
            cols.push(col);
        }
    }
    Matrix::from_columns(f, rows, &cols)
}

fn tor_from_resolution(res: &ResolutionTrace, n: &FDModule, i: usize) -> Result<usize> {
    let dim_ci: usize = res.terms[i].vertices.iter().map(|&v| n.vertex_basis(v).len()).sum();
    let out_rank = if i == 0 { 0 } else { tor_boundary(res, n, i - 1).rank() };
    let in_rank = tor_boundary(res, n, i).rank();
    Ok(dim_ci - out_rank - in_rank)
}
