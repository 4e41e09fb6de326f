//! Hom spaces, stable Hom, isomorphism testing and Krull–Schmidt
//! decomposition.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::module::{same_algebra, FDModule, ModuleMap};
use super::resolve::projective_cover;
use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::kernel::matrix::{QuotientSpace, Subspace};
use crate::kernel::Matrix;

/// Trial budget for randomized isomorphism searches.
pub const ISO_TRIALS: usize = 1000;

/// Basis of Hom_A(M, N).
pub fn hom(m: &FDModule, n: &FDModule) -> Result<Vec<ModuleMap>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::input("hom between modules over different algebras"));
    }
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    let a = m.algebra();
    let mats = if a.is_basic() && a.generators().extra.is_empty() {
        hom_blockwise(m, n)
    } else {
        hom_dense(m, n)
    };
    Ok(mats.into_iter().map(|x| ModuleMap { source: m.clone(), target: n.clone(), matrix: x }).collect())
}

pub fn hom_dim(m: &FDModule, n: &FDModule) -> Result<usize> {
    Ok(hom(m, n)?.len())
}

fn hom_blockwise(m: &FDModule, n: &FDModule) -> Vec<Matrix> {
    let f = m.field();
    let a = m.algebra();
    let am = m.adapted();
    let an = n.adapted();
    let nv = a.num_vertices();
    let mut off = vec![0usize; nv + 1];
    for i in 0..nv {
        off[i + 1] = off[i] + an.sizes[i] * am.sizes[i];
    }
    let unknowns = off[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (j, i, x) in &a.generators().arrows {
        let (j, i) = (*j, *i);
        let (mi, mj, ni, nj) = (am.sizes[i], am.sizes[j], an.sizes[i], an.sizes[j]);
        if mj == 0 || ni == 0 {
            continue;
        }
        let bm = am.q_inv.mul(&m.act(x)).mul(&am.q).block(am.offsets[i], am.offsets[j], mi, mj);
        let bn = an.q_inv.mul(&n.act(x)).mul(&an.q).block(an.offsets[i], an.offsets[j], ni, nj);
        // F_i·bm − bn·F_j = 0, entries (r, c) with r < n_i, c < m_j.
        for r in 0..ni {
            for c in 0..mj {
                let mut row = vec![0u32; unknowns];
                for t in 0..mi {
                    let v = bm.get(t, c);
                    if v != 0 {
                        let k = off[i] + r * mi + t;
                        row[k] = f.add(row[k], v);
                    }
                }
                for t in 0..nj {
                    let v = bn.get(r, t);
                    if v != 0 {
                        let k = off[j] + t * mj + c;
                        row[k] = f.sub(row[k], v);
                    }
                }
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel: Vec<Vec<u32>> = if rows.is_empty() {
        (0..unknowns).map(|k| crate::kernel::matrix::unit_vector(unknowns, k)).collect()
    } else {
        let sys = Matrix::from_vec(f, rows.len(), unknowns, rows.concat()).expect("sizes agree");
        sys.kernel()
    };
    kernel
        .into_iter()
        .map(|v| {
            let mut fp = Matrix::zeros(f, n.dim(), m.dim());
            for i in 0..nv {
                let (mi, ni) = (am.sizes[i], an.sizes[i]);
                for r in 0..ni {
                    for c in 0..mi {
                        fp.set(an.offsets[i] + r, am.offsets[i] + c, v[off[i] + r * mi + c]);
                    }
                }
            }
            an.q.mul(&fp).mul(&am.q_inv)
        })
        .collect()
}

fn hom_dense(m: &FDModule, n: &FDModule) -> Vec<Matrix> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for g in m.algebra().generator_list() {
        let rm = m.act(&g);
        let rn = n.act(&g);
        // (F·rm − rn·F)[r][c]
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![0u32; unknowns];
                for t in 0..dm {
                    let v = rm.get(t, c);
                    if v != 0 {
                        row[r * dm + t] = f.add(row[r * dm + t], v);
                    }
                }
                for t in 0..dn {
                    let v = rn.get(r, t);
                    if v != 0 {
                        row[t * dm + c] = f.sub(row[t * dm + c], v);
                    }
                }
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns).map(|k| crate::kernel::matrix::unit_vector(unknowns, k)).collect()
    } else {
        Matrix::from_vec(f, rows.len(), unknowns, rows.concat()).expect("sizes agree").kernel()
    };
    kernel.into_iter().map(|v| Matrix::from_vec(f, dn, dm, v).expect("sizes agree")).collect()
}

/// Hom(M, N) modulo maps factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: Vec<ModuleMap>,
    quotient: QuotientSpace,
    /// Representatives of a basis of the stable quotient.
    pub basis: Vec<ModuleMap>,
}

impl StableHom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism in the stable basis.
    pub fn coords(&self, f: &Matrix) -> Option<Vec<u32>> {
        self.quotient.coords(f.data())
    }

    pub fn factors_through_projective(&self, f: &Matrix) -> bool {
        self.quotient.is_zero_class(f.data())
    }

    pub fn factoring_dim(&self) -> usize {
        self.quotient.subspace().dim()
    }
}

/// Stable Hom via: f factors through a projective iff f lifts along the
/// projective cover of the target. Requires a self-injective algebra.
pub fn stable_hom(m: &FDModule, n: &FDModule) -> Result<StableHom> {
    let a = m.algebra();
    if !crate::algebra::is_self_injective(a)? {
        return Err(Error::NotSelfInjective("stable Hom over a non-self-injective algebra".into()));
    }
    stable_hom_unchecked(m, n)
}

pub(crate) fn stable_hom_unchecked(m: &FDModule, n: &FDModule) -> Result<StableHom> {
    let f = m.field();
    let h = hom(m, n)?;
    let amb = m.dim() * n.dim();
    let cover = projective_cover(n)?;
    let through = hom(m, &cover.free.module)?;
    let factoring: Vec<Vec<u32>> = through.iter().map(|t| cover.epi.matrix.mul(&t.matrix).data().to_vec()).collect();
    let spanning: Vec<Vec<u32>> = h.iter().map(|x| x.matrix.data().to_vec()).collect();
    let quotient = QuotientSpace::new(f, amb, &factoring, &spanning);
    let basis = quotient
        .basis()
        .iter()
        .map(|v| ModuleMap {
            source: m.clone(),
            target: n.clone(),
            matrix: Matrix::from_vec(f, n.dim(), m.dim(), v.clone()).expect("sizes"),
        })
        .collect();
    Ok(StableHom { hom: h, quotient, basis })
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Yes(ModuleMap),
    No(String),
    Inconclusive(String),
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No(_))
    }

    pub fn witness(&self) -> Option<&ModuleMap> {
        match self {
            IsoVerdict::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Yes(_) => "yes",
            IsoVerdict::No(_) => "no",
            IsoVerdict::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Certified-yes / certified-no / inconclusive isomorphism test.
pub fn is_isomorphic(m: &FDModule, n: &FDModule, seed: u64) -> Result<IsoVerdict> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::input("isomorphism test across different algebras"));
    }
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::No(format!("dimensions {} and {}", m.dim(), n.dim())));
    }
    if m.dim() == 0 {
        return Ok(IsoVerdict::Yes(ModuleMap::identity(m)));
    }
    let a = m.algebra();
    if a.is_basic() {
        if m.vertex_dims() != n.vertex_dims() {
            return Ok(IsoVerdict::No("dimension vectors differ".into()));
        }
        let top = |x: &FDModule| x.dim() - x.radical_submodule().len();
        let soc = |x: &FDModule| x.socle().len();
        if top(m) != top(n) || soc(m) != soc(n) {
            return Ok(IsoVerdict::No("top or socle dimensions differ".into()));
        }
    }
    let hmn = hom(m, n)?;
    if hmn.is_empty() {
        return Ok(IsoVerdict::No("Hom(M, N) = 0".into()));
    }
    let dmm = hom_dim(m, m)?;
    let dnn = hom_dim(n, n)?;
    let dnm = hom_dim(n, m)?;
    if dmm != hmn.len() || dnn != dnm || dmm != dnn {
        return Ok(IsoVerdict::No(format!(
            "hom dimensions differ: End(M) {dmm}, Hom(M,N) {}, Hom(N,M) {dnm}, End(N) {dnn}",
            hmn.len()
        )));
    }
    Ok(search_invertible(&hmn, m.field().p(), seed)
        .map(IsoVerdict::Yes)
        .unwrap_or_else(|exhaustive| {
            if exhaustive {
                IsoVerdict::No("no invertible element in Hom(M, N) (exhaustive)".into())
            } else {
                IsoVerdict::Inconclusive(format!("no invertible map in {ISO_TRIALS} random trials"))
            }
        }))
}

/// Search a basis of maps for an invertible combination. On failure returns
/// whether the search was exhaustive.
pub(crate) fn search_invertible(basis: &[ModuleMap], p: u32, seed: u64) -> std::result::Result<ModuleMap, bool> {
    let f = basis[0].source.field();
    for b in basis {
        if b.matrix.is_invertible() {
            return Ok(b.clone());
        }
    }
    let k = basis.len();
    let combine = |coeffs: &[u32]| {
        let mut acc = Matrix::zeros(f, basis[0].matrix.rows(), basis[0].matrix.cols());
        for (c, b) in coeffs.iter().zip(basis) {
            acc.add_scaled(*c, &b.matrix);
        }
        acc
    };
    let wrap = |mat: Matrix| ModuleMap { source: basis[0].source.clone(), target: basis[0].target.clone(), matrix: mat };
    let total = (p as u128).checked_pow(k as u32);
    if let Some(total) = total.filter(|&t| t <= ISO_TRIALS as u128) {
        for idx in 0..total {
            let mut x = idx;
            let coeffs: Vec<u32> = (0..k)
                .map(|_| {
                    let c = (x % p as u128) as u32;
                    x /= p as u128;
                    c
                })
                .collect();
            let mat = combine(&coeffs);
            if mat.is_invertible() {
                return Ok(wrap(mat));
            }
        }
        return Err(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_TRIALS {
        let coeffs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let mat = combine(&coeffs);
        if mat.is_invertible() {
            return Ok(wrap(mat));
        }
    }
    Err(false)
}

/// End_A(M) as an algebra with product φ·ψ = φ∘ψ, together with its basis.
pub fn end_algebra(m: &FDModule, seed: u64) -> Result<(Arc<FDAlgebra>, Vec<ModuleMap>)> {
    let f = m.field();
    let basis = hom(m, m)?;
    if basis.is_empty() {
        return Err(Error::input("endomorphism algebra of the zero module"));
    }
    let flat: Vec<Vec<u32>> = basis.iter().map(|b| b.matrix.data().to_vec()).collect();
    let q = QuotientSpace::new(f, m.dim() * m.dim(), &[], &flat);
    // Re-express in the echelon basis of q so coordinates are direct.
    let reps: Vec<Matrix> =
        q.basis().iter().map(|v| Matrix::from_vec(f, m.dim(), m.dim(), v.clone()).expect("sizes")).collect();
    let products: Vec<Vec<Vec<u32>>> = reps
        .iter()
        .map(|x| reps.iter().map(|y| q.coords(x.mul(y).data()).expect("End is closed")).collect())
        .collect();
    let unit = q.coords(Matrix::identity(f, m.dim()).data()).expect("identity is an endomorphism");
    let labels = (0..reps.len()).map(|k| format!("φ{k}")).collect();
    let alg = FDAlgebra::from_products(f, labels, &products, unit, seed)?;
    let maps = reps.into_iter().map(|x| ModuleMap { source: m.clone(), target: m.clone(), matrix: x }).collect();
    Ok((alg, maps))
}

/// One indecomposable summand with its inclusion into the decomposed module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: FDModule,
    pub inclusion: ModuleMap,
    /// Index of the isomorphism class.
    pub class: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Multiplicity of each isomorphism class.
    pub multiplicities: Vec<usize>,
}

#[derive(Serialize)]
pub struct DecompositionSummary {
    pub dims: Vec<usize>,
    pub multiplicities: Vec<usize>,
}

/// Krull–Schmidt decomposition by splitting idempotents of End(M).
pub fn decompose(m: &FDModule, seed: u64) -> Result<Decomposition> {
    if m.dim() == 0 {
        return Ok(Decomposition { summands: Vec::new(), multiplicities: Vec::new() });
    }
    let f = m.field();
    let (end, maps) = end_algebra(m, seed)?;
    let to_matrix = |v: &[u32]| {
        let mut acc = Matrix::zeros(f, m.dim(), m.dim());
        for (c, b) in v.iter().zip(&maps) {
            acc.add_scaled(*c, &b.matrix);
        }
        acc
    };
    let mut summands: Vec<Summand> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut multiplicities = Vec::new();
    for e in end.idempotents() {
        let em = to_matrix(e);
        let img = Subspace::spanned_by(f, m.dim(), &em.columns()).basis().to_vec();
        let (sub, inc) = m.submodule(&img)?;
        let mut class = None;
        for (c, &r) in reps.iter().enumerate() {
            match is_isomorphic(&summands[r].module, &sub, seed)? {
                IsoVerdict::Yes(_) => {
                    class = Some(c);
                    break;
                }
                IsoVerdict::No(_) => {}
                IsoVerdict::Inconclusive(msg) => return Err(Error::inconclusive(msg)),
            }
        }
        let class = class.unwrap_or_else(|| {
            reps.push(summands.len());
            multiplicities.push(0);
            reps.len() - 1
        });
        multiplicities[class] += 1;
        summands.push(Summand { module: sub, inclusion: inc, class });
    }
    // The sum of inclusions is an isomorphism.
    let cols: Vec<&Matrix> = summands.iter().map(|s| &s.inclusion.matrix).collect();
    if !Matrix::hstack(f, m.dim(), &cols).is_invertible() {
        return Err(Error::certificate("decompose", "summands do not reconstruct the module"));
    }
    Ok(Decomposition { summands, multiplicities })
}

impl Decomposition {
    pub fn summary(&self) -> DecompositionSummary {
        DecompositionSummary {
            dims: self.summands.iter().map(|s| s.module.dim()).collect(),
            multiplicities: self.multiplicities.clone(),
        }
    }
}
