use std::fmt;
use std::sync::Arc;

use super::curve::{jacobian_coprime, Curve};
use crate::error::{Error, Result};
use crate::kernel::groebner::divide_exact;
use crate::kernel::{buchberger, colon_by_element, GroebnerBasis, Mono, Poly2, StandardMonomials};

/// A rank-one factorization g·g′ = f, with coker(g) = S/(g) as CM module.
/// The factor set of g is stored as sorted indices into the curve's factors.
#[derive(Clone, PartialEq, Eq)]
pub struct MF1 {
    curve: Arc<Curve>,
    g_idx: Vec<usize>,
    g: Poly2,
    gp: Poly2,
}

impl MF1 {
    pub fn new(curve: &Arc<Curve>, g_idx: &[usize]) -> Result<MF1> {
        let mut idx = g_idx.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != g_idx.len() || idx.iter().any(|&i| i >= curve.num_factors()) {
            return Err(Error::input(format!("bad factor index set {g_idx:?}")));
        }
        let comp: Vec<usize> = (0..curve.num_factors()).filter(|i| !idx.contains(i)).collect();
        let g = curve.product(&idx);
        let gp = curve.product(&comp);
        if g.mul(&gp) != *curve.f() {
            return Err(Error::certificate("mf1", "g·g′ ≠ f"));
        }
        Ok(MF1 { curve: curve.clone(), g_idx: idx, g, gp })
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn g(&self) -> &Poly2 {
        &self.g
    }

    pub fn g_prime(&self) -> &Poly2 {
        &self.gp
    }

    pub fn g_indices(&self) -> &[usize] {
        &self.g_idx
    }

    pub fn g_prime_indices(&self) -> Vec<usize> {
        (0..self.curve.num_factors()).filter(|i| !self.g_idx.contains(i)).collect()
    }

    /// S/(f) itself, i.e. g′ = 1.
    pub fn is_free(&self) -> bool {
        self.g_idx.len() == self.curve.num_factors()
    }

    /// Free or zero, hence zero in the stable category.
    pub fn is_stably_zero(&self) -> bool {
        self.is_free() || self.g_idx.is_empty()
    }
}

impl fmt::Debug for MF1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g, self.gp)
    }
}

impl fmt::Display for MF1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Ω on rank-one factorizations: (g, g′) ↦ (g′, g).
pub fn mf_syzygy(m: &MF1) -> MF1 {
    let out = MF1 { curve: m.curve.clone(), g_idx: m.g_prime_indices(), g: m.gp.clone(), gp: m.g.clone() };
    debug_assert_eq!(out.g.mul(&out.gp), *m.curve.f());
    out
}

/// M_i = (f₁⋯f_i, f_{i+1}⋯f_n) for i = 1..n; the last one is free.
pub fn bikr_tilting(curve: &Arc<Curve>) -> Result<Vec<MF1>> {
    (1..=curve.num_factors()).map(|i| MF1::new(curve, &(0..i).collect::<Vec<_>>())).collect()
}

/// Predicted loops of the quiver of the stable endomorphism algebra of the
/// BIKR object: vertex i carries a loop iff (f_i, f_{i+1}) ≠ m.
pub fn bikr_loops(curve: &Curve) -> Result<Vec<bool>> {
    let fs = curve.factors();
    (0..fs.len().saturating_sub(1)).map(|i| Ok(!jacobian_coprime(&fs[i], &fs[i + 1])?)).collect()
}

/// A chain map between rank-one factorizations, given by its degree-zero
/// component α with N.g | α·M.g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFMap {
    pub source: MF1,
    pub target: MF1,
    pub alpha: Poly2,
}

impl MFMap {
    pub fn new(source: MF1, target: MF1, alpha: Poly2) -> Result<MFMap> {
        let m = MFMap { source, target, alpha };
        m.alpha1()?;
        Ok(m)
    }

    /// The other component α₁ = α·g / h.
    pub fn alpha1(&self) -> Result<Poly2> {
        divide_exact(&self.alpha.mul(&self.source.g), &self.target.g)
            .ok_or_else(|| Error::input("not a chain map: target g does not divide α·g"))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &MFMap) -> Result<MFMap> {
        if first.target != self.source {
            return Err(Error::input("composition of non-composable maps"));
        }
        MFMap::new(first.source.clone(), self.target.clone(), first.alpha.mul(&self.alpha))
    }

    /// Ω on maps: the components swap.
    pub fn syzygy(&self) -> Result<MFMap> {
        MFMap::new(mf_syzygy(&self.source), mf_syzygy(&self.target), self.alpha1()?)
    }
}

/// Stable Hom between rank-one factorizations: chain maps are α = c·β with
/// c = h / gcd(g, h), and the space is S/J with J = (h, g′_M) : c.
#[derive(Clone, Debug)]
pub struct Rank1Hom {
    pub source: MF1,
    pub target: MF1,
    pub c: Poly2,
    pub ideal: GroebnerBasis,
    /// Standard monomials of S/J; basis element k is α = c·basis[k].
    pub basis: Vec<Mono>,
}

pub fn mf_stable_hom(m: &MF1, n: &MF1) -> Result<Rank1Hom> {
    if m.curve != n.curve {
        return Err(Error::input("factorizations of different curves"));
    }
    let curve = &m.curve;
    let c_idx: Vec<usize> = n.g_idx.iter().copied().filter(|i| !m.g_idx.contains(i)).collect();
    let c = curve.product(&c_idx);
    let base = buchberger(&[n.g.clone(), m.gp.clone()])?;
    let ideal = colon_by_element(&base, &c)?;
    let basis = match ideal.standard_monomials() {
        StandardMonomials::Finite(v) => v,
        StandardMonomials::Infinite => {
            return Err(Error::certificate("mf_stable_hom", "infinite-dimensional quotient; f is not reduced"))
        }
    };
    Ok(Rank1Hom { source: m.clone(), target: n.clone(), c, ideal, basis })
}

impl Rank1Hom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis element k as a chain map.
    pub fn element(&self, k: usize) -> MFMap {
        let beta = Poly2::monomial(self.c.field(), self.basis[k], 1);
        MFMap { source: self.source.clone(), target: self.target.clone(), alpha: self.c.mul(&beta) }
    }

    pub fn elements(&self) -> Vec<MFMap> {
        (0..self.dim()).map(|k| self.element(k)).collect()
    }

    /// Coordinates of β ∈ S/J.
    pub fn coords_of_beta(&self, beta: &Poly2) -> Vec<u32> {
        let nf = self.ideal.normal_form(beta);
        self.basis.iter().map(|&m| nf.coeff(m)).collect()
    }

    /// Stable coordinates of a chain map.
    pub fn coords(&self, map: &MFMap) -> Result<Vec<u32>> {
        if map.source != self.source || map.target != self.target {
            return Err(Error::input("map does not belong to this Hom space"));
        }
        let beta = divide_exact(&map.alpha, &self.c)
            .ok_or_else(|| Error::certificate("mf_stable_hom", "chain map not divisible by c"))?;
        Ok(self.coords_of_beta(&beta))
    }

    /// Weighted degree of basis element k as a graded map, when f is
    /// quasi-homogeneous.
    pub fn degree(&self, k: usize) -> Option<i64> {
        let curve = self.source.curve();
        let w = curve.weights()?;
        Some(curve.degree_of(&self.c)? + self.basis[k].weighted_degree(w) as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::PrimeField;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn bikr_objects() {
        let c = Curve::parse(f5(), &["x", "y", "x+y"]).unwrap();
        let t = bikr_tilting(&c).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(format!("{:?}", t[0]), "(x, x*y + y^2)");
        assert_eq!(format!("{:?}", t[1]), "(x*y, x + y)");
        assert!(t[2].is_free() && !t[1].is_free());
        let c1 = Curve::parse(f5(), &["x"]).unwrap();
        let t = bikr_tilting(&c1).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t[0].is_free());
    }

    #[test]
    fn stable_hom_examples() {
        let c = Curve::parse(f5(), &["x", "y", "x+y"]).unwrap();
        let t = bikr_tilting(&c).unwrap();
        let e = mf_stable_hom(&t[0], &t[0]).unwrap();
        assert_eq!(e.basis, vec![Mono::ONE, Mono::new(0, 1)]);
        assert_eq!(mf_stable_hom(&t[0], &t[1]).unwrap().dim(), 1);
        assert_eq!(mf_stable_hom(&t[2], &t[2]).unwrap().dim(), 0);
        for m in &t {
            assert_eq!(mf_stable_hom(m, &t[2]).unwrap().dim(), 0);
            assert_eq!(mf_stable_hom(&t[2], m).unwrap().dim(), 0);
        }
        let total: usize =
            (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| mf_stable_hom(&t[i], &t[j]).unwrap().dim()).sum();
        assert_eq!(total, 6);
        let cxy = Curve::parse(f5(), &["x", "y"]).unwrap();
        let m1 = &bikr_tilting(&cxy).unwrap()[0];
        assert_eq!(mf_stable_hom(m1, m1).unwrap().dim(), 1);
    }

    #[test]
    fn colon_matches_gcd_form() {
        let c = Curve::parse(f5(), &["x", "y", "x+y", "x+2*y"]).unwrap();
        let subsets: Vec<Vec<usize>> = (0u32..16).map(|m| (0..4).filter(|i| m >> i & 1 == 1).collect()).collect();
        for a in &subsets {
            for b in &subsets {
                let (m, n) = (MF1::new(&c, a).unwrap(), MF1::new(&c, b).unwrap());
                let h = mf_stable_hom(&m, &n).unwrap();
                let gi: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
                let ma = m.g_prime_indices();
                let gpi: Vec<usize> = n.g_prime_indices().into_iter().filter(|i| ma.contains(i)).collect();
                let j = buchberger(&[c.product(&gi), c.product(&gpi)]).unwrap();
                assert_eq!(j.standard_monomials().len(), Some(h.dim()), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn swap_is_involution() {
        let c = Curve::parse(f5(), &["x", "y", "x+y"]).unwrap();
        for m in bikr_tilting(&c).unwrap() {
            assert_eq!(mf_syzygy(&mf_syzygy(&m)), m);
        }
        let t = bikr_tilting(&c).unwrap();
        let h = mf_stable_hom(&t[0], &t[1]).unwrap();
        let u = h.element(0);
        let back = u.syzygy().unwrap().syzygy().unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn composition_on_bases() {
        let c = Curve::parse(f5(), &["x", "y", "x+y"]).unwrap();
        let t = bikr_tilting(&c).unwrap();
        let e = mf_stable_hom(&t[0], &t[0]).unwrap();
        let y = e.element(1);
        // y∘y = y² ∈ J, stably zero.
        assert_eq!(e.coords(&y.compose(&y).unwrap()).unwrap(), vec![0, 0]);
        let id = e.element(0);
        assert_eq!(e.coords(&y.compose(&id).unwrap()).unwrap(), vec![0, 1]);
    }

    #[test]
    fn loop_prediction() {
        let c = Curve::parse(f5(), &["x", "y", "x+y"]).unwrap();
        assert_eq!(bikr_loops(&c).unwrap(), vec![false, false]);
        let c = Curve::parse(f5(), &["x", "x+y^2"]).unwrap();
        assert_eq!(bikr_loops(&c).unwrap(), vec![true]);
    }
}
