//! Bimodule resolutions of Γ, period detection, the divisibility and
//! Calabi-Yau checks, and Tor over Λ.

mod tor;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    dual_bimodule, enveloping, is_self_injective, regular_bimodule, semisimple_split, twisted_bimodule, AlgebraAuto,
    FDAlgebra, SemisimpleSplit,
};
use crate::error::{Error, Result};
use crate::kernel::Matrix;
use crate::repcat::{is_isomorphic, minimal_resolution, FDModule, IsoVerdict, ModuleMap, ResolutionTrace};

pub use tor::{gamma_over_lambda, tor_bimodule, tor_lambda_suite, TorReport};

/// Γ with its semisimple blocks removed, Γ₀^e and Γ₀ as a bimodule.
#[derive(Clone, Debug)]
pub struct BimoduleSetting {
    pub gamma: Arc<FDAlgebra>,
    /// Γ₀; the same basis as Γ when Γ has no semisimple block.
    pub core: Arc<FDAlgebra>,
    pub env: Arc<FDAlgebra>,
    pub regular: FDModule,
    pub split: SemisimpleSplit,
}

impl BimoduleSetting {
    pub fn new(gamma: &Arc<FDAlgebra>) -> Result<Self> {
        let split = semisimple_split(gamma)?;
        let core = match (&split.nonsemisimple, &split.semisimple) {
            (None, _) => return Err(Error::NotApplicable("semisimple, periodicity not applicable".into())),
            (Some(_), None) => gamma.clone(),
            (Some(c), Some(_)) => c.clone(),
        };
        let env = enveloping(&core)?;
        let regular = regular_bimodule(&core, &env)?;
        Ok(BimoduleSetting { gamma: gamma.clone(), core, env, regular, split })
    }

    /// The setting for period detection: Γ must be self-injective.
    pub fn for_period(gamma: &Arc<FDAlgebra>) -> Result<Self> {
        if !is_self_injective(gamma)? {
            return Err(Error::NotSelfInjective("D(Γ) is not projective".into()));
        }
        Self::new(gamma)
    }

    /// Whether Γ₀ = Γ.
    pub fn is_whole(&self) -> bool {
        self.split.semisimple.is_none()
    }
}

/// Minimal projective resolution of Γ₀ over Γ₀^e with n differentials.
pub fn bimodule_resolution(s: &BimoduleSetting, n: usize) -> Result<ResolutionTrace> {
    minimal_resolution(&s.regular, n)
}

/// Default search bound 3(d+2)·r, with r = 4 when unknown.
pub fn period_bound(d: usize, r: Option<u64>) -> usize {
    3 * (d + 2) * r.unwrap_or(4) as usize
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyCheck {
    pub n: usize,
    pub dim: usize,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    pub period: Option<usize>,
    /// False when some smaller shift was inconclusive.
    pub least_certified: bool,
    pub nmax: usize,
    pub core_dim: usize,
    pub dropped_vertices: Vec<usize>,
    pub syzygy_dims: Vec<usize>,
    pub term_ranks: Vec<usize>,
    pub resolution_minimal: bool,
    pub checks: Vec<SyzygyCheck>,
    /// Ω^p(Γ₀) → Γ₀ in the bases of both modules.
    pub witness: Option<Vec<Vec<i64>>>,
    pub witness_verified: bool,
}

/// Whether `m` is an isomorphism of modules `source → target`.
pub fn verify_witness(source: &FDModule, target: &FDModule, m: &Matrix) -> bool {
    m.rows() == target.dim()
        && m.cols() == source.dim()
        && m.is_invertible()
        && ModuleMap::new(source.clone(), target.clone(), m.clone()).is_ok()
}

/// Least n ≤ nmax with Ω^n_{Γ₀^e}(Γ₀) ≅ Γ₀.
pub fn detect_period(gamma: &Arc<FDAlgebra>, nmax: usize, seed: u64) -> Result<PeriodReport> {
    let s = BimoduleSetting::for_period(gamma)?;
    let (report, _) = period_of(&s, nmax, seed)?;
    Ok(report)
}

/// The report together with the resolution and the witness map.
pub fn period_of(s: &BimoduleSetting, nmax: usize, seed: u64) -> Result<(PeriodReport, ResolutionTrace)> {
    let res = bimodule_resolution(s, nmax.max(1))?;
    let mut checks = Vec::new();
    let mut period = None;
    let mut least_certified = true;
    let mut witness = None;
    for n in 1..=nmax {
        let om = &res.syzygies[n];
        let verdict = if om.dim() != s.regular.dim() {
            "dimension differs".to_string()
        } else {
            match is_isomorphic(om, &s.regular, seed.wrapping_add(n as u64))? {
                IsoVerdict::Yes(w) => {
                    witness = Some(w);
                    "isomorphic".to_string()
                }
                IsoVerdict::No(why) => format!("not isomorphic: {why}"),
                IsoVerdict::Inconclusive(why) => {
                    least_certified = false;
                    format!("inconclusive: {why}")
                }
            }
        };
        checks.push(SyzygyCheck { n, dim: om.dim(), verdict });
        if witness.is_some() {
            period = Some(n);
            break;
        }
    }
    let last = period.unwrap_or(nmax);
    let witness_verified = witness.as_ref().is_some_and(|w: &ModuleMap| verify_witness(&w.source, &w.target, &w.matrix));
    if witness.is_some() && !witness_verified {
        return Err(Error::certificate("period witness", "isomorphism failed re-verification"));
    }
    let report = PeriodReport {
        period,
        least_certified: least_certified && period.is_some(),
        nmax,
        core_dim: s.core.dim(),
        dropped_vertices: s.split.semisimple_blocks.iter().flat_map(|&b| s.split.blocks[b].clone()).collect(),
        syzygy_dims: res.syzygies[..=last].iter().map(|m| m.dim()).collect(),
        term_ranks: res.ranks_of_terms()[..last.min(res.terms.len())].to_vec(),
        resolution_minimal: res.certificate.minimal,
        checks,
        witness: witness.as_ref().map(|w| w.matrix.to_signed_rows()),
        witness_verified,
    };
    Ok((report, res))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Divisibility {
    Divides,
    DoesNotDivide,
    /// r is not certified, so only "p | r(d+2) for the true r" can be said.
    Conditional,
    /// No period was found.
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityReport {
    pub period: Option<usize>,
    pub d: usize,
    pub r: Option<u64>,
    pub bound: Option<u64>,
    pub verdict: Divisibility,
}

/// Checks p | r(d+2).
pub fn divisibility_check(period: Option<usize>, d: usize, r: Option<u64>) -> DivisibilityReport {
    let bound = r.map(|r| r * (d as u64 + 2));
    let verdict = match (period, bound) {
        (None, _) => Divisibility::Unknown,
        (Some(_), None) => Divisibility::Conditional,
        (Some(p), Some(b)) if b % p as u64 == 0 => Divisibility::Divides,
        _ => Divisibility::DoesNotDivide,
    };
    DivisibilityReport { period, d, r, bound, verdict }
}

#[derive(Clone, Debug, Serialize)]
pub struct CyReport {
    pub d: usize,
    pub s: i64,
    /// n = −s(d+2); n > 0 compares Ω^n(Γ₀) with DΓ₀, n < 0 compares
    /// Ω^{|n|}(DΓ₀) with Γ₀.
    pub n: i64,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub verdict: String,
    pub holds: Option<bool>,
    pub witness: Option<Vec<Vec<i64>>>,
    #[serde(skip)]
    pub lhs: Option<FDModule>,
}

/// Ω^{−s(d+2)}_{Γ₀^e}(Γ₀) ≅ DΓ₀.
pub fn cy_duality_check(s: &BimoduleSetting, d: usize, shift: i64, seed: u64) -> Result<CyReport> {
    let n = -shift * (d as i64 + 2);
    let dual = dual_bimodule(&s.core, &s.env)?;
    let (lhs, rhs) = if n >= 0 {
        let res = bimodule_resolution(s, n.max(1) as usize)?;
        (res.syzygies[n as usize].clone(), dual)
    } else {
        let res = minimal_resolution(&dual, n.unsigned_abs() as usize)?;
        (res.syzygies[n.unsigned_abs() as usize].clone(), s.regular.clone())
    };
    let v = is_isomorphic(&lhs, &rhs, seed)?;
    let holds = match &v {
        IsoVerdict::Yes(_) => Some(true),
        IsoVerdict::No(_) => Some(false),
        IsoVerdict::Inconclusive(_) => None,
    };
    Ok(CyReport {
        d,
        s: shift,
        n,
        lhs_dim: lhs.dim(),
        rhs_dim: rhs.dim(),
        verdict: v.label().into(),
        holds,
        witness: v.witness().map(|w| w.matrix.to_signed_rows()),
        lhs: Some(lhs),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    pub shift: usize,
    pub verdict: String,
    pub holds: Option<bool>,
    pub witness: Option<Vec<Vec<i64>>>,
    #[serde(skip)]
    pub syzygy: Option<FDModule>,
}

/// Ω^{d+2}_{Γ^e}(Γ) ≅ σΓ₁.
pub fn omega_twist_check(s: &BimoduleSetting, sigma: &AlgebraAuto, d: usize, seed: u64) -> Result<TwistReport> {
    if !s.is_whole() {
        return Err(Error::NotApplicable("Γ has semisimple blocks; the twist lives on Γ".into()));
    }
    let res = bimodule_resolution(s, d + 2)?;
    let tw = twisted_bimodule(&s.core, &s.env, sigma)?;
    let v = is_isomorphic(&res.syzygies[d + 2], &tw, seed)?;
    Ok(TwistReport {
        shift: d + 2,
        verdict: v.label().into(),
        holds: if matches!(v, IsoVerdict::Inconclusive(_)) { None } else { Some(v.is_yes()) },
        witness: v.witness().map(|w| w.matrix.to_signed_rows()),
        syzygy: Some(res.syzygies[d + 2].clone()),
    })
}
