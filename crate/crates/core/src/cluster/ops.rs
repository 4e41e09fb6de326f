//! Rigidity, maximality, the Ω^d-invariance of add(T), the twist σ, and
//! add(T)-approximations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{inner_order, AlgebraAuto, InnerOrder};
use crate::error::{Error, Result};
use crate::kernel::matrix::Subspace;
use crate::kernel::Matrix;

use super::backend::{Frobenius, StableSpace};
use super::gamma::{CTObject, StableEnd};

/// Random combinations tried by the stable isomorphism search.
pub const ISO_TRIALS: usize = 64;

/// Default bound for the order of σ modulo inner automorphisms.
pub const ORDER_BOUND: u64 = 12;

#[derive(Clone, Debug)]
pub enum Iso<M> {
    Yes { forward: M, backward: M },
    No(String),
    Inconclusive(String),
}

impl<M> Iso<M> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Iso::Yes { .. })
    }
}

fn combination<B: Frobenius>(be: &B, basis: &[B::Map], c: &[u32], x: &B::Obj, y: &B::Obj) -> Result<B::Map> {
    let mut acc = be.zero_map(x, y);
    for (b, &ci) in basis.iter().zip(c) {
        if ci != 0 {
            acc = be.add(&acc, &be.scale(b, ci))?;
        }
    }
    Ok(acc)
}

/// Isomorphism in the stable category. A negative answer is certified by
/// 1_X lying outside the span of all composites Y → X → ... X → Y → X.
pub fn stable_iso<B: Frobenius>(be: &B, x: &B::Obj, y: &B::Obj, seed: u64) -> Result<Iso<B::Map>> {
    let f = be.field();
    let hxy = be.stable_hom(x, y)?;
    let hyx = be.stable_hom(y, x)?;
    let ex = be.stable_hom(x, x)?;
    let ey = be.stable_hom(y, y)?;
    if ex.dim() != ey.dim() {
        return Ok(Iso::No(format!("stable endomorphism dimensions differ ({} vs {})", ex.dim(), ey.dim())));
    }
    if ex.dim() == 0 {
        return Ok(Iso::Yes { forward: be.zero_map(x, y), backward: be.zero_map(y, x) });
    }
    let bxy = hxy.basis();
    let byx = hyx.basis();
    let id_x = ex.coords(&be.identity(x))?;
    let id_y = ey.coords(&be.identity(y))?;
    let mut composites = Subspace::new(f, ex.dim());
    for v in &byx {
        for u in &bxy {
            composites.insert(ex.coords(&be.compose(v, u)?)?);
        }
    }
    if !composites.contains(&id_x) {
        return Ok(Iso::No("the identity does not factor through the other object".into()));
    }
    let attempt = |u: &B::Map| -> Result<Option<B::Map>> {
        let cols: Vec<Vec<u32>> = byx.iter().map(|v| ex.coords(&be.compose(v, u)?)).collect::<Result<_>>()?;
        let m = Matrix::from_columns(f, ex.dim(), &cols);
        let Some(c) = m.solve(&id_x) else { return Ok(None) };
        let v = combination(be, &byx, &c, y, x)?;
        Ok((ey.coords(&be.compose(u, &v)?)? == id_y).then_some(v))
    };
    for u in &bxy {
        if let Some(v) = attempt(u)? {
            return Ok(Iso::Yes { forward: u.clone(), backward: v });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_TRIALS {
        let c: Vec<u32> = (0..bxy.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let u = combination(be, &bxy, &c, x, y)?;
        if let Some(v) = attempt(&u)? {
            return Ok(Iso::Yes { forward: u, backward: v });
        }
    }
    Ok(Iso::Inconclusive(format!("no stable isomorphism among {ISO_TRIALS} random maps")))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub source: String,
    pub target: String,
    pub shift: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidReport {
    pub rigid: bool,
    pub violations: Vec<Violation>,
}

/// dim stable Hom(T_a, Ω^k T_b) for all nonprojective a, b.
fn shifted_homs<B: Frobenius>(t: &CTObject<B>, k: i32) -> Result<Vec<Violation>> {
    let be = &t.backend;
    let np = t.nonprojective()?;
    let mut out = Vec::new();
    for &b in &np {
        let shifted = be.syzygy_power(&t.summands[b], k)?;
        for &a in &np {
            let dim = be.stable_hom(&t.summands[a], &shifted)?.dim();
            if dim > 0 {
                out.push(Violation { source: t.labels[a].clone(), target: t.labels[b].clone(), shift: -k, dim });
            }
        }
    }
    Ok(out)
}

/// stable Hom(T, T[i]) = 0 for 1 ≤ i ≤ d−1, where T[i] = Ω^{−i}T.
pub fn check_rigid<B: Frobenius>(t: &CTObject<B>) -> Result<RigidReport> {
    let mut violations = Vec::new();
    for i in 1..t.d as i32 {
        violations.extend(shifted_homs(t, -i)?);
    }
    Ok(RigidReport { rigid: violations.is_empty(), violations })
}

/// Canonical right add(T)-approximation: one copy of T_v per basis map of
/// stable Hom(T_v, X), with the evaluation map.
pub fn approximation<B: Frobenius>(t: &CTObject<B>, x: &B::Obj) -> Result<(B::Obj, B::Map)> {
    let be = &t.backend;
    let mut sources = Vec::new();
    let mut blocks = Vec::new();
    for v in t.nonprojective()? {
        let h = be.stable_hom(&t.summands[v], x)?;
        for u in h.basis() {
            sources.push(t.summands[v].clone());
            blocks.push(u);
        }
    }
    if sources.is_empty() {
        let z = be.zero_object();
        return Ok((z.clone(), be.zero_map(&z, x)));
    }
    let a = be.block_map(&sources, std::slice::from_ref(x), &[blocks])?;
    Ok((a.source, a.map))
}

/// X ∈ add(T) in the stable category, decided by whether the canonical
/// approximation is a split epimorphism.
pub fn in_add_t<B: Frobenius>(t: &CTObject<B>, x: &B::Obj) -> Result<bool> {
    let be = &t.backend;
    let f = be.field();
    let end = be.stable_hom(x, x)?;
    if end.dim() == 0 {
        return Ok(true);
    }
    let (c, ev) = approximation(t, x)?;
    let back = be.stable_hom(&be.target(&ev), &c)?;
    let cols: Vec<Vec<u32>> =
        back.basis().iter().map(|s| end.coords(&be.compose(&ev, s)?)).collect::<Result<_>>()?;
    let id = end.coords(&be.identity(x))?;
    Ok(Matrix::from_columns(f, end.dim(), &cols).solve(&id).is_some())
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalReport {
    pub maximal: bool,
    /// Indices of candidates orthogonal to T but not in add(T).
    pub failures: Vec<usize>,
}

/// Every candidate X with stable Hom(X, T[i]) = 0 = stable Hom(T, X[i]) for
/// 1 ≤ i ≤ d−1 lies in add(T). The candidate list must contain all
/// indecomposables.
pub fn check_maximal<B: Frobenius>(t: &CTObject<B>, candidates: &[B::Obj]) -> Result<MaximalReport> {
    let be = &t.backend;
    let np = t.nonprojective()?;
    let mut failures = Vec::new();
    for (c, x) in candidates.iter().enumerate() {
        let mut orthogonal = true;
        for i in 1..t.d as i32 {
            let xi = be.syzygy_power(x, -i)?;
            for &v in &np {
                let ti = be.syzygy_power(&t.summands[v], -i)?;
                if be.stable_hom(&t.summands[v], &xi)?.dim() > 0 || be.stable_hom(x, &ti)?.dim() > 0 {
                    orthogonal = false;
                }
            }
        }
        if !orthogonal {
            continue;
        }
        let ok = if be.is_stably_zero(x)? {
            let mut found = false;
            for s in &t.summands {
                if be.is_stably_zero(s)? && be.projective_in_add(x, s)? {
                    found = true;
                    break;
                }
            }
            found
        } else {
            in_add_t(t, x)?
        };
        if !ok {
            failures.push(c);
        }
    }
    Ok(MaximalReport { maximal: failures.is_empty(), failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma21 {
    /// stable Hom(T, Ω^k T) = 0 for 1 ≤ k ≤ d−1.
    pub cond1: bool,
    /// Ω^d of each nonprojective summand is stably isomorphic to a summand.
    pub cond2: bool,
    pub agree: bool,
    /// Summand index matched by Ω^d of each nonprojective summand.
    pub matches: Vec<Option<usize>>,
}

fn match_summand<B: Frobenius>(t: &CTObject<B>, w: &B::Obj) -> Result<Option<(usize, B::Map, B::Map)>> {
    let be = &t.backend;
    let mut inconclusive = None;
    for v in t.nonprojective()? {
        match stable_iso(be, w, &t.summands[v], t.seed)? {
            Iso::Yes { forward, backward } => return Ok(Some((v, forward, backward))),
            Iso::No(_) => {}
            Iso::Inconclusive(s) => inconclusive = Some(s),
        }
    }
    match inconclusive {
        Some(s) => Err(Error::inconclusive(s)),
        None => Ok(None),
    }
}

pub fn lemma21<B: Frobenius>(t: &CTObject<B>) -> Result<Lemma21> {
    let be = &t.backend;
    let mut cond1 = true;
    for k in 1..t.d as i32 {
        cond1 &= shifted_homs(t, k)?.is_empty();
    }
    let mut matches = Vec::new();
    for v in t.nonprojective()? {
        let w = be.syzygy_power(&t.summands[v], t.d as i32)?;
        if be.is_stably_zero(&w)? {
            matches.push(None);
        } else {
            matches.push(match_summand(t, &w)?.map(|m| m.0));
        }
    }
    let cond2 = matches.iter().all(Option::is_some);
    Ok(Lemma21 { cond1, cond2, agree: cond1 == cond2, matches })
}

/// σ = η∘Ω^d(−)∘η⁻¹ on Γ and its order modulo inner automorphisms.
pub struct TwistData<B: Frobenius> {
    /// Vertex π(i) with Ω^d T_{v_i} ≅ T_{v_{π(i)}}.
    pub permutation: Vec<usize>,
    /// η_i: Ω^d T_{v_i} → T_{v_{π(i)}} and its stable inverse.
    pub eta: Vec<(B::Map, B::Map)>,
    pub sigma: AlgebraAuto,
    pub order: InnerOrder,
}

pub fn periodic_object_check<B: Frobenius>(t: &CTObject<B>, end: &StableEnd<B>) -> Result<TwistData<B>> {
    twist_with(t, end, ORDER_BOUND)
}

pub fn twist_with<B: Frobenius>(t: &CTObject<B>, end: &StableEnd<B>, bound: u64) -> Result<TwistData<B>> {
    let be = &t.backend;
    let d = t.d as i32;
    let mut permutation = Vec::new();
    let mut eta = Vec::new();
    for &v in &end.vertices {
        let w = be.syzygy_power(&t.summands[v], d)?;
        let hit = if be.is_stably_zero(&w)? { None } else { match_summand(t, &w)? };
        let Some((u, fw, bw)) = hit else {
            return Err(Error::Hypothesis(format!(
                "Ω^{d} of summand {} is not isomorphic to a summand of T",
                t.labels[v]
            )));
        };
        permutation.push(end.vertices.iter().position(|&x| x == u).expect("nonprojective summand"));
        eta.push((fw, bw));
    }
    let mut cols = Vec::with_capacity(end.dim());
    for (k, b) in end.basis_maps.iter().enumerate() {
        let (i, j) = end.positions[k];
        let ob = be.syzygy_map_power(b, d)?;
        let s = be.compose(&eta[i].0, &be.compose(&ob, &eta[j].1)?)?;
        cols.push(end.element_of(permutation[i], permutation[j], &s)?);
    }
    let sigma = AlgebraAuto::new(&end.gamma, Matrix::from_columns(be.field(), end.dim(), &cols))
        .map_err(|e| Error::certificate("twist", format!("σ is not an algebra automorphism: {e}")))?;
    let order = inner_order(&sigma, &end.gamma, bound, t.seed)?;
    Ok(TwistData { permutation, eta, sigma, order })
}

/// X ∈ E_j: stable Hom(T, X[i]) = 0 for 1 ≤ i ≤ d−1, i ≠ j.
pub fn ej_membership<B: Frobenius>(t: &CTObject<B>, x: &B::Obj, j: usize) -> Result<bool> {
    let be = &t.backend;
    if j == 0 || j > t.d {
        return Err(Error::input(format!("E_j needs 1 ≤ j ≤ d, got j = {j}")));
    }
    let np = t.nonprojective()?;
    for i in 1..t.d {
        if i == j {
            continue;
        }
        let xi = be.syzygy_power(x, -(i as i32))?;
        for &v in &np {
            if be.stable_hom(&t.summands[v], &xi)?.dim() > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
