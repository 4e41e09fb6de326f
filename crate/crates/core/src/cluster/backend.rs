//! The Frobenius-category interface and its two realizations.

use std::fmt::Debug;
use std::sync::Arc;

use crate::algebra::{is_self_injective, FDAlgebra};
use crate::error::{Error, Result};
use crate::kernel::matrix::Subspace;
use crate::kernel::{Matrix, PrimeField};
use crate::mfcat::graded::{block_map, PolyMatrix};
use crate::mfcat::{Curve, GMap, GradedMF, GradedStableHom};
use crate::repcat::{
    hom, injective_envelope, projective_cover, stable_hom, syzygy, syzygy_map, syzygy_step, FDModule,
    ModuleMap, StableHom,
};

/// A finite basis of a stable Hom space with coordinates.
pub trait StableSpace<M> {
    fn dim(&self) -> usize;
    fn basis(&self) -> Vec<M>;
    /// Internal degree of each basis map (zero for ungraded backends).
    fn degrees(&self) -> Vec<i64>;
    fn coords(&self, m: &M) -> Result<Vec<u32>>;
}

/// A short exact sequence 0 → Z → X ⊕ P → Y → 0 with P projective.
#[derive(Clone, Debug)]
pub struct ExactSeq<O, M> {
    pub z: O,
    pub p: O,
    pub w: O,
    pub inclusion: M,
    pub epi: M,
    /// The component Z → X.
    pub z_to_x: M,
    /// Whether exactness was certified by rank computations.
    pub certified: bool,
}

/// A map assembled from blocks between direct sums.
#[derive(Clone, Debug)]
pub struct Assembled<O, M> {
    pub source: O,
    pub target: O,
    pub map: M,
}

/// Exact Krull-Schmidt Frobenius category with finite-dimensional stable Hom.
pub trait Frobenius {
    type Obj: Clone + Debug;
    type Map: Clone + Debug;
    type Hom: StableSpace<Self::Map>;

    fn field(&self) -> PrimeField;
    fn name(&self) -> &'static str;
    fn source(&self, f: &Self::Map) -> Self::Obj;
    fn target(&self, f: &Self::Map) -> Self::Obj;
    fn zero_object(&self) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Map;
    fn zero_map(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Map;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Result<Self::Map>;
    fn add(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map>;
    fn scale(&self, f: &Self::Map, c: u32) -> Self::Map;
    fn direct_sum(&self, xs: &[Self::Obj]) -> Result<(Self::Obj, Vec<Self::Map>, Vec<Self::Map>)>;
    fn stable_hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Self::Hom>;
    fn syzygy(&self, x: &Self::Obj) -> Result<Self::Obj>;
    fn cosyzygy(&self, x: &Self::Obj) -> Result<Self::Obj>;
    /// Ω of a map, between `syzygy(source)` and `syzygy(target)`.
    fn syzygy_map(&self, f: &Self::Map) -> Result<Self::Map>;
    /// Ω⁻¹ of a map, between the cosyzygies.
    fn cosyzygy_map(&self, f: &Self::Map) -> Result<Self::Map>;
    /// Projective cover P → X.
    fn projective_cover(&self, x: &Self::Obj) -> Result<(Self::Obj, Self::Map)>;
    /// The kernel inclusion ΩX → P of the projective cover.
    fn syzygy_inclusion(&self, x: &Self::Obj) -> Result<Self::Map>;
    /// Cone of f: X → Y with the map Y → C.
    fn cone(&self, f: &Self::Map) -> Result<(Self::Obj, Self::Map)>;
    /// Cocone of f: X → Y with the map Z → X.
    fn cocone(&self, f: &Self::Map) -> Result<(Self::Obj, Self::Map)>;
    fn complete_to_exact(&self, f: &Self::Map) -> Result<ExactSeq<Self::Obj, Self::Map>>;
    /// Assemble `blocks[k][l]: sources[l] → targets[k]` into one map; graded
    /// backends may regrade the summands.
    fn block_map(
        &self,
        sources: &[Self::Obj],
        targets: &[Self::Obj],
        blocks: &[Vec<Self::Map>],
    ) -> Result<Assembled<Self::Obj, Self::Map>>;
    /// For a projective X: whether X is a summand of a finite sum of copies
    /// of Y (up to grading shifts).
    fn projective_in_add(&self, x: &Self::Obj, y: &Self::Obj) -> Result<bool>;
    /// Full Hom space, when finite-dimensional.
    fn full_hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Option<Vec<Self::Map>>>;
    /// Dimension of the image of Hom(T, P) → Hom(T, X) under π: P → X and
    /// of Hom(T, X), when Hom is finite-dimensional.
    fn image_of_hom(&self, t: &Self::Obj, pi: &Self::Map) -> Result<Option<(usize, usize)>>;
    fn describe(&self, x: &Self::Obj) -> String;

    fn is_stably_zero(&self, x: &Self::Obj) -> Result<bool> {
        Ok(self.stable_hom(x, x)?.dim() == 0)
    }

    fn syzygy_map_power(&self, f: &Self::Map, k: i32) -> Result<Self::Map> {
        let mut cur = f.clone();
        for _ in 0..k.unsigned_abs() {
            cur = if k > 0 { self.syzygy_map(&cur)? } else { self.cosyzygy_map(&cur)? };
        }
        Ok(cur)
    }

    fn syzygy_power(&self, x: &Self::Obj, k: i32) -> Result<Self::Obj> {
        let mut cur = x.clone();
        for _ in 0..k.unsigned_abs() {
            cur = if k > 0 { self.syzygy(&cur)? } else { self.cosyzygy(&cur)? };
        }
        Ok(cur)
    }
}

pub struct ModHom {
    inner: StableHom,
    source: FDModule,
    target: FDModule,
}

impl StableSpace<ModuleMap> for ModHom {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn basis(&self) -> Vec<ModuleMap> {
        self.inner.basis.clone()
    }

    fn degrees(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }

    fn coords(&self, m: &ModuleMap) -> Result<Vec<u32>> {
        if m.source.dim() != self.source.dim() || m.target.dim() != self.target.dim() {
            return Err(Error::input("map does not belong to this Hom space"));
        }
        self.inner.coords(&m.matrix).ok_or_else(|| Error::certificate("stable coordinates", "not a homomorphism"))
    }
}

/// mod-A for a self-injective algebra A.
#[derive(Clone, Debug)]
pub struct ModuleBackend {
    alg: Arc<FDAlgebra>,
}

impl ModuleBackend {
    pub fn new(alg: Arc<FDAlgebra>) -> Result<Self> {
        if !is_self_injective(&alg)? {
            return Err(Error::NotSelfInjective("the module category is not Frobenius".into()));
        }
        Ok(ModuleBackend { alg })
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.alg
    }
}

fn stack_rows(f: PrimeField, cols: usize, ms: &[&Matrix]) -> Matrix {
    Matrix::vstack(f, cols, ms)
}

impl Frobenius for ModuleBackend {
    type Obj = FDModule;
    type Map = ModuleMap;
    type Hom = ModHom;

    fn field(&self) -> PrimeField {
        self.alg.field()
    }

    fn name(&self) -> &'static str {
        "quiver-algebra"
    }

    fn source(&self, f: &ModuleMap) -> FDModule {
        f.source.clone()
    }

    fn target(&self, f: &ModuleMap) -> FDModule {
        f.target.clone()
    }

    fn zero_object(&self) -> FDModule {
        FDModule::zero(self.alg.clone())
    }

    fn identity(&self, x: &FDModule) -> ModuleMap {
        ModuleMap::identity(x)
    }

    fn zero_map(&self, x: &FDModule, y: &FDModule) -> ModuleMap {
        ModuleMap::zero(x, y)
    }

    fn compose(&self, g: &ModuleMap, f: &ModuleMap) -> Result<ModuleMap> {
        g.compose(f)
    }

    fn add(&self, f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
        if f.source.dim() != g.source.dim() || f.target.dim() != g.target.dim() {
            return Err(Error::input("adding maps between different modules"));
        }
        Ok(ModuleMap { matrix: f.matrix.add(&g.matrix), ..f.clone() })
    }

    fn scale(&self, f: &ModuleMap, c: u32) -> ModuleMap {
        ModuleMap { matrix: f.matrix.scale(c), ..f.clone() }
    }

    fn direct_sum(&self, xs: &[FDModule]) -> Result<(FDModule, Vec<ModuleMap>, Vec<ModuleMap>)> {
        let s = FDModule::direct_sum(xs, &self.alg)?;
        let f = self.field();
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut off = 0;
        for x in xs {
            let mut e = Matrix::zeros(f, s.dim(), x.dim());
            e.set_block(off, 0, &Matrix::identity(f, x.dim()));
            proj.push(ModuleMap { source: s.clone(), target: x.clone(), matrix: e.transpose() });
            incl.push(ModuleMap { source: x.clone(), target: s.clone(), matrix: e });
            off += x.dim();
        }
        Ok((s, incl, proj))
    }

    fn stable_hom(&self, x: &FDModule, y: &FDModule) -> Result<ModHom> {
        Ok(ModHom { inner: stable_hom(x, y)?, source: x.clone(), target: y.clone() })
    }

    fn syzygy(&self, x: &FDModule) -> Result<FDModule> {
        Ok(syzygy_step(x)?.kernel)
    }

    fn cosyzygy(&self, x: &FDModule) -> Result<FDModule> {
        syzygy(x, -1)
    }

    fn syzygy_map(&self, f: &ModuleMap) -> Result<ModuleMap> {
        syzygy_map(f, 1)
    }

    fn cosyzygy_map(&self, f: &ModuleMap) -> Result<ModuleMap> {
        syzygy_map(f, -1)
    }

    fn projective_cover(&self, x: &FDModule) -> Result<(FDModule, ModuleMap)> {
        let c = projective_cover(x)?;
        Ok((c.free.module.clone(), c.epi))
    }

    fn syzygy_inclusion(&self, x: &FDModule) -> Result<ModuleMap> {
        Ok(syzygy_step(x)?.inclusion)
    }

    fn cone(&self, f: &ModuleMap) -> Result<(FDModule, ModuleMap)> {
        let (inj, j) = injective_envelope(&f.source)?;
        let (w, incl, _) = self.direct_sum(&[f.target.clone(), inj])?;
        let fl = self.field();
        let m = stack_rows(fl, f.source.dim(), &[&f.matrix, &j.matrix]);
        let e = ModuleMap::new(f.source.clone(), w, m)?;
        let (c, q) = e.cokernel();
        let to_c = q.compose(&incl[0])?;
        Ok((c, to_c))
    }

    fn cocone(&self, f: &ModuleMap) -> Result<(FDModule, ModuleMap)> {
        let s = self.complete_to_exact(f)?;
        Ok((s.z, s.z_to_x))
    }

    fn complete_to_exact(&self, f: &ModuleMap) -> Result<ExactSeq<FDModule, ModuleMap>> {
        let fl = self.field();
        let (y, x) = (&f.target, &f.source);
        let (p, pi) = if f.matrix.rank() == y.dim() {
            (self.zero_object(), ModuleMap::zero(&self.zero_object(), y))
        } else {
            self.projective_cover(y)?
        };
        let (w, _, proj) = self.direct_sum(&[x.clone(), p.clone()])?;
        let e = ModuleMap::new(w.clone(), y.clone(), Matrix::hstack(fl, y.dim(), &[&f.matrix, &pi.matrix]))?;
        let (z, inc) = e.kernel()?;
        let z_to_x = proj[0].compose(&inc)?;
        let certified = e.matrix.rank() == y.dim() && z.dim() + y.dim() == w.dim() && inc.matrix.rank() == z.dim();
        Ok(ExactSeq { z, p, w, inclusion: inc, epi: e, z_to_x, certified })
    }

    fn block_map(
        &self,
        sources: &[FDModule],
        targets: &[FDModule],
        blocks: &[Vec<ModuleMap>],
    ) -> Result<Assembled<FDModule, ModuleMap>> {
        let (s, _, _) = self.direct_sum(sources)?;
        let (t, _, _) = self.direct_sum(targets)?;
        let mats: Vec<Vec<Matrix>> = blocks.iter().map(|row| row.iter().map(|b| b.matrix.clone()).collect()).collect();
        let fl = self.field();
        let rows: Vec<Matrix> = mats
            .iter()
            .enumerate()
            .map(|(k, row)| Matrix::hstack(fl, targets[k].dim(), &row.iter().collect::<Vec<_>>()))
            .collect();
        let m = Matrix::vstack(fl, s.dim(), &rows.iter().collect::<Vec<_>>());
        let map = ModuleMap::new(s.clone(), t.clone(), m)?;
        Ok(Assembled { source: s, target: t, map })
    }

    fn projective_in_add(&self, x: &FDModule, y: &FDModule) -> Result<bool> {
        let top = |m: &FDModule| m.quotient(&m.radical_submodule()).0.vertex_dims();
        Ok(top(x).iter().zip(top(y)).all(|(&a, b)| a == 0 || b > 0))
    }

    fn full_hom(&self, x: &FDModule, y: &FDModule) -> Result<Option<Vec<ModuleMap>>> {
        Ok(Some(hom(x, y)?))
    }

    fn image_of_hom(&self, t: &FDModule, pi: &ModuleMap) -> Result<Option<(usize, usize)>> {
        let through = hom(t, &pi.source)?;
        let fl = self.field();
        let amb = t.dim() * pi.target.dim();
        let img = Subspace::spanned_by(
            fl,
            amb,
            &through.iter().map(|g| pi.matrix.mul(&g.matrix).data().to_vec()).collect::<Vec<_>>(),
        );
        Ok(Some((img.dim(), hom(t, &pi.target)?.len())))
    }

    fn describe(&self, x: &FDModule) -> String {
        format!("module of dimension {} with dimension vector {:?}", x.dim(), x.vertex_dims())
    }
}

impl StableSpace<GMap> for GradedStableHom {
    fn dim(&self) -> usize {
        GradedStableHom::dim(self)
    }

    fn basis(&self) -> Vec<GMap> {
        GradedStableHom::basis(self)
    }

    fn degrees(&self) -> Vec<i64> {
        GradedStableHom::degrees(self)
    }

    fn coords(&self, m: &GMap) -> Result<Vec<u32>> {
        GradedStableHom::coords(self, m)
    }
}

/// Graded maximal Cohen-Macaulay modules over S/(f), as matrix factorizations.
#[derive(Clone, Debug)]
pub struct MFBackend {
    curve: Arc<Curve>,
}

impl MFBackend {
    pub fn new(curve: Arc<Curve>) -> Result<Self> {
        curve.require_weights()?;
        Ok(MFBackend { curve })
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    /// Hilbert function of coker φ in degree n.
    pub fn hilbert(&self, x: &GradedMF, n: i64) -> usize {
        let (img, amb) = self.degree_piece(x, n);
        amb - img.dim()
    }

    /// im(φ) in degree n inside (F₀)_n, and dim (F₀)_n.
    fn degree_piece(&self, x: &GradedMF, n: i64) -> (Subspace, usize) {
        let w = self.curve.weights().expect("weights checked");
        let (layout, amb) = free_layout(w, &x.a, n);
        let mut img = Subspace::new(self.field(), amb);
        for (j, &bj) in x.b.iter().enumerate() {
            for m in crate::kernel::Mono::of_weighted_degree(w, n - bj) {
                let mut v = vec![0u32; amb];
                for i in 0..x.rank() {
                    for (mo, c) in x.phi.get(i, j).mul_term(m, 1).terms() {
                        v[layout[&(i, mo)]] = c;
                    }
                }
                img.insert(v);
            }
        }
        (img, amb)
    }

    /// Rank of the map induced by a degree-zero chain map on degree-n pieces
    /// of the cokernels.
    fn induced_rank(&self, g: &GMap, n: i64) -> usize {
        let w = self.curve.weights().expect("weights checked");
        let (x, y) = (&g.source, &g.target);
        let a0 = g.degree_zero().a0;
        let (ly, amb_y) = free_layout(w, &y.a, n);
        let (img_y, _) = self.degree_piece(y, n);
        let mut span = img_y.clone();
        for (i, &ai) in x.a.iter().enumerate() {
            for m in crate::kernel::Mono::of_weighted_degree(w, n - ai) {
                let mut v = vec![0u32; amb_y];
                for k in 0..y.rank() {
                    for (mo, c) in a0.get(k, i).mul_term(m, 1).terms() {
                        v[ly[&(k, mo)]] = c;
                    }
                }
                span.insert(v);
            }
        }
        span.dim() - img_y.dim()
    }
}

fn free_layout(
    w: (u32, u32),
    degs: &[i64],
    n: i64,
) -> (std::collections::HashMap<(usize, crate::kernel::Mono), usize>, usize) {
    let mut layout = std::collections::HashMap::new();
    for (i, &d) in degs.iter().enumerate() {
        for m in crate::kernel::Mono::of_weighted_degree(w, n - d) {
            let len = layout.len();
            layout.insert((i, m), len);
        }
    }
    let amb = layout.len();
    (layout, amb)
}

impl Frobenius for MFBackend {
    type Obj = GradedMF;
    type Map = GMap;
    type Hom = GradedStableHom;

    fn field(&self) -> PrimeField {
        self.curve.field()
    }

    fn name(&self) -> &'static str {
        "plane-curve"
    }

    fn source(&self, f: &GMap) -> GradedMF {
        f.source.clone()
    }

    fn target(&self, f: &GMap) -> GradedMF {
        f.target.clone()
    }

    fn zero_object(&self) -> GradedMF {
        GradedMF::zero(&self.curve)
    }

    fn identity(&self, x: &GradedMF) -> GMap {
        GMap::identity(x)
    }

    fn zero_map(&self, x: &GradedMF, y: &GradedMF) -> GMap {
        GMap::zero(x, y)
    }

    fn compose(&self, g: &GMap, f: &GMap) -> Result<GMap> {
        g.compose(f)
    }

    fn add(&self, f: &GMap, g: &GMap) -> Result<GMap> {
        f.add(g)
    }

    fn scale(&self, f: &GMap, c: u32) -> GMap {
        f.scale(c)
    }

    fn direct_sum(&self, xs: &[GradedMF]) -> Result<(GradedMF, Vec<GMap>, Vec<GMap>)> {
        Ok(GradedMF::direct_sum(&self.curve, xs))
    }

    fn stable_hom(&self, x: &GradedMF, y: &GradedMF) -> Result<GradedStableHom> {
        GradedStableHom::compute(x, y)
    }

    fn syzygy(&self, x: &GradedMF) -> Result<GradedMF> {
        Ok(x.syzygy())
    }

    fn cosyzygy(&self, x: &GradedMF) -> Result<GradedMF> {
        Ok(x.cosyzygy())
    }

    fn syzygy_map(&self, f: &GMap) -> Result<GMap> {
        Ok(f.syzygy())
    }

    fn cosyzygy_map(&self, f: &GMap) -> Result<GMap> {
        Ok(f.cosyzygy())
    }

    fn projective_cover(&self, x: &GradedMF) -> Result<(GradedMF, GMap)> {
        x.projective_cover()
    }

    fn syzygy_inclusion(&self, x: &GradedMF) -> Result<GMap> {
        Ok(x.syzygy_inclusion()?.1)
    }

    fn cone(&self, f: &GMap) -> Result<(GradedMF, GMap)> {
        f.cone()
    }

    fn cocone(&self, f: &GMap) -> Result<(GradedMF, GMap)> {
        f.cocone()
    }

    fn complete_to_exact(&self, f: &GMap) -> Result<ExactSeq<GradedMF, GMap>> {
        let (z, z_to_x) = f.cocone()?;
        let (x, y) = (&f.source, &f.target);
        let al = f.degree_zero();
        let fl = self.field();
        let (p, _) = y.projective_cover()?;
        let (w, _, _) = GradedMF::direct_sum(&self.curve, &[x.clone(), p.clone()]);
        let (r, s) = (y.rank(), x.rank());
        let id = |n| PolyMatrix::identity(fl, n);
        let zero = |a, b| PolyMatrix::zeros(fl, a, b);
        // Z₀ = F₁′ ⊕ F₀ → W₀ = F₀ ⊕ F₀′ and Z₁ = F₀′ ⊕ F₁ → W₁ = F₁ ⊕ F₁′(P).
        let g0 = PolyMatrix::from_blocks(fl, &[s, r], &[r, s], &[vec![zero(s, r), id(s)], vec![y.phi.neg(), al.a0.neg()]]);
        let g1 = PolyMatrix::from_blocks(fl, &[s, r], &[r, s], &[vec![zero(s, r), id(s)], vec![id(r), zero(r, s)]]);
        let inclusion = GMap::homogeneous(&z, &w, 0, g0, g1);
        inclusion.verify()?;
        let b0 = PolyMatrix::from_blocks(fl, &[r], &[s, r], &[vec![al.a0.clone(), id(r)]]);
        let b1 = PolyMatrix::from_blocks(fl, &[r], &[s, r], &[vec![al.a1.clone(), y.psi.clone()]]);
        let epi = GMap::homogeneous(&w, y, 0, b0, b1);
        epi.verify()?;
        // Certify over a window of degrees: β∘γ vanishes on cokernels, γ is
        // injective, β is onto, and Hilbert functions add up.
        let comp = epi.compose(&inclusion)?.degree_zero().a0;
        let mut certified = true;
        let f_poly = self.curve.f();
        let prod = y.psi.mul(&comp);
        let mut h = PolyMatrix::zeros(fl, prod.rows(), prod.cols());
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                match crate::kernel::groebner::divide_exact(prod.get(i, j), f_poly) {
                    Some(q) => h.set(i, j, q),
                    None => certified = false,
                }
            }
        }
        certified &= y.phi.mul(&h) == comp;
        let d = self.curve.degree()?;
        let degs: Vec<i64> = z.a.iter().chain(&w.a).chain(&y.a).copied().collect();
        if let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) {
            for n in lo..=hi + 2 * d {
                let (hz, hw, hy) = (self.hilbert(&z, n), self.hilbert(&w, n), self.hilbert(y, n));
                certified &= hz + hy == hw;
                certified &= self.induced_rank(&inclusion, n) == hz;
                certified &= self.induced_rank(&epi, n) == hy;
            }
        }
        Ok(ExactSeq { z, p, w, inclusion, epi, z_to_x, certified })
    }

    fn block_map(
        &self,
        sources: &[GradedMF],
        targets: &[GradedMF],
        blocks: &[Vec<GMap>],
    ) -> Result<Assembled<GradedMF, GMap>> {
        let b = block_map(&self.curve, sources, targets, blocks)?;
        Ok(Assembled { source: b.source, target: b.target, map: b.map })
    }

    fn projective_in_add(&self, x: &GradedMF, y: &GradedMF) -> Result<bool> {
        // The free rank of coker φ is the rank of ψ at the origin.
        let free_rank = |m: &GradedMF| {
            let fl = self.field();
            let mut at0 = Matrix::zeros(fl, m.rank(), m.rank());
            for i in 0..m.rank() {
                for j in 0..m.rank() {
                    at0.set(i, j, m.psi.get(i, j).eval(0, 0));
                }
            }
            at0.rank()
        };
        Ok(free_rank(x) == 0 || free_rank(y) > 0)
    }

    fn full_hom(&self, _x: &GradedMF, _y: &GradedMF) -> Result<Option<Vec<GMap>>> {
        Ok(None)
    }

    fn image_of_hom(&self, _t: &GradedMF, _pi: &GMap) -> Result<Option<(usize, usize)>> {
        Ok(None)
    }

    fn describe(&self, x: &GradedMF) -> String {
        format!("matrix factorization of rank {} (generator degrees {:?}, {:?})", x.rank(), x.a, x.b)
    }
}
