use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{Mono, Poly2, PrimeField};

/// Weights tried, in order, when looking for a grading making every factor
/// quasi-homogeneous.
const WEIGHT_CANDIDATES: [(u32, u32); 11] =
    [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (3, 2), (2, 3), (4, 1), (1, 4), (4, 3), (3, 4)];

/// A reduced plane curve given by its factor list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: PrimeField,
    factors: Vec<Poly2>,
    f: Poly2,
    weights: Option<(u32, u32)>,
}

fn linear_part(p: &Poly2) -> (u32, u32) {
    (p.coeff(Mono::new(1, 0)), p.coeff(Mono::new(0, 1)))
}

fn check_in_m_minus_m2(p: &Poly2) -> Result<()> {
    if p.coeff(Mono::ONE) != 0 {
        return Err(Error::input(format!("factor {p} has a nonzero constant term")));
    }
    if linear_part(p) == (0, 0) {
        return Err(Error::input(format!("factor {p} has zero linear part (lies in m²)")));
    }
    Ok(())
}

/// Whether (f_i, f_j) is the maximal ideal, decided by linear independence of
/// the linear parts.
pub fn jacobian_coprime(fi: &Poly2, fj: &Poly2) -> Result<bool> {
    check_in_m_minus_m2(fi)?;
    check_in_m_minus_m2(fj)?;
    let f = fi.field();
    let (a, b) = linear_part(fi);
    let (c, d) = linear_part(fj);
    Ok(f.sub(f.mul(a, d), f.mul(b, c)) != 0)
}

impl Curve {
    /// Validates the factors: each in m \ m², pairwise non-associate.
    pub fn new(field: PrimeField, factors: Vec<Poly2>) -> Result<Arc<Curve>> {
        if factors.is_empty() {
            return Err(Error::input("a curve needs at least one factor"));
        }
        for p in &factors {
            if p.field() != field {
                return Err(Error::input("factor over a different field"));
            }
            check_in_m_minus_m2(p)?;
        }
        for i in 0..factors.len() {
            for j in 0..i {
                if factors[i].monic() == factors[j].monic() {
                    return Err(Error::input(format!(
                        "factors {} and {} are associate; (f_i) ≠ (f_j) is required",
                        factors[j], factors[i]
                    )));
                }
            }
        }
        let f = factors.iter().fold(Poly2::one(field), |acc, p| acc.mul(p));
        let weights = WEIGHT_CANDIDATES
            .iter()
            .copied()
            .find(|&w| factors.iter().all(|p| p.weighted_homogeneous_degree(w).is_some()));
        Ok(Arc::new(Curve { field, factors, f, weights }))
    }

    pub fn parse(field: PrimeField, factors: &[&str]) -> Result<Arc<Curve>> {
        let ps = factors.iter().map(|s| Poly2::parse(field, s)).collect::<Result<Vec<_>>>()?;
        Curve::new(field, ps)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn factors(&self) -> &[Poly2] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn f(&self) -> &Poly2 {
        &self.f
    }

    /// Product of the factors with the given indices.
    pub fn product(&self, idx: &[usize]) -> Poly2 {
        idx.iter().fold(Poly2::one(self.field), |acc, &i| acc.mul(&self.factors[i]))
    }

    /// Weights (deg x, deg y) making f quasi-homogeneous, if any were found.
    pub fn weights(&self) -> Option<(u32, u32)> {
        self.weights
    }

    pub fn require_weights(&self) -> Result<(u32, u32)> {
        self.weights.ok_or_else(|| {
            Error::Unsupported(format!("{} is not quasi-homogeneous for any tried weights", self.f))
        })
    }

    /// Weighted degree of f.
    pub fn degree(&self) -> Result<i64> {
        let w = self.require_weights()?;
        Ok(self.f.weighted_homogeneous_degree(w).expect("f is quasi-homogeneous") as i64)
    }

    /// a-invariant of R = S/(f): deg f − deg x − deg y.
    pub fn a_invariant(&self) -> Result<i64> {
        let w = self.require_weights()?;
        Ok(self.degree()? - w.0 as i64 - w.1 as i64)
    }

    /// Weighted degree of a homogeneous polynomial; `None` for zero or
    /// inhomogeneous input.
    pub fn degree_of(&self, p: &Poly2) -> Option<i64> {
        p.weighted_homogeneous_degree(self.weights?).map(i64::from)
    }

    pub fn describe(&self) -> String {
        self.factors.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join("·")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn p(s: &str) -> Poly2 {
        Poly2::parse(f5(), s).unwrap()
    }

    #[test]
    fn coprimality_examples() {
        assert!(jacobian_coprime(&p("x"), &p("y")).unwrap());
        assert!(!jacobian_coprime(&p("x"), &p("x+y^2")).unwrap());
        assert!(jacobian_coprime(&p("x"), &p("x+y")).unwrap());
        assert!(jacobian_coprime(&p("x+1"), &p("y")).is_err());
        assert!(jacobian_coprime(&p("x^2"), &p("y")).is_err());
    }

    #[test]
    fn weights_and_degrees() {
        let c = Curve::parse(f5(), &["x", "y", "x+y"]).unwrap();
        assert_eq!(c.weights(), Some((1, 1)));
        assert_eq!(c.degree().unwrap(), 3);
        assert_eq!(c.a_invariant().unwrap(), 1);
        let c = Curve::parse(f5(), &["x", "x+y^2"]).unwrap();
        assert_eq!(c.weights(), Some((2, 1)));
        assert_eq!(c.degree().unwrap(), 4);
        assert_eq!(c.a_invariant().unwrap(), 1);
        let c = Curve::parse(f5(), &["x+y^2", "y+x^2"]).unwrap();
        assert_eq!(c.weights(), None);
        assert!(c.degree().is_err());
    }

    #[test]
    fn rejects_associates() {
        assert!(Curve::parse(f5(), &["x", "2*x"]).is_err());
        assert!(Curve::parse(f5(), &["x", "y", "x+y"]).is_ok());
    }
}
