//! Bounded-degree brute force for stable Hom between rank-one factorizations,
//! independent of the colon-ideal formula.

use std::collections::HashMap;

use super::rank1::MF1;
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Mono, Poly2};

/// Largest degree bound tried before giving up.
pub const BRUTE_CAP: u32 = 64;

struct Layout {
    index: HashMap<Mono, usize>,
}

impl Layout {
    fn up_to(d: u32) -> Layout {
        Layout { index: Mono::up_to_degree(d).into_iter().enumerate().map(|(i, m)| (m, i)).collect() }
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    /// Write the coefficients of `p` into column `col` of `mat`, rows offset by `off`.
    fn put(&self, mat: &mut Matrix, off: usize, col: usize, p: &Poly2) {
        let f = mat.field();
        for (m, c) in p.terms() {
            let r = off + self.index[&m];
            let v = f.add(mat.get(r, col), c);
            mat.set(r, col, v);
        }
    }
}

fn deg(p: &Poly2) -> u32 {
    p.total_degree().unwrap_or(0)
}

/// Dimension of {(α₀, α₁) : α₀g = hα₁, deg ≤ D} modulo homotopies
/// (h·s + t·g′_M, s·g + h′·t) whose data has degree ≤ D.
pub fn brute_hom_bounded(m: &MF1, n: &MF1, d: u32) -> Result<usize> {
    if d == 0 {
        return Err(Error::input("degree bound must be at least 1"));
    }
    if m.curve() != n.curve() {
        return Err(Error::input("factorizations of different curves"));
    }
    let field = m.curve().field();
    let (g, gp, h, hp) = (m.g(), m.g_prime(), n.g(), n.g_prime());
    let small = Layout::up_to(d);
    let mons: Vec<Mono> = Mono::up_to_degree(d);
    let k = small.len();

    // Cycle condition.
    let top = d + deg(g).max(deg(h));
    let big = Layout::up_to(top);
    let mut cyc = Matrix::zeros(field, big.len(), 2 * k);
    for (j, &mo) in mons.iter().enumerate() {
        let e = Poly2::monomial(field, mo, 1);
        big.put(&mut cyc, 0, j, &e.mul(g));
        big.put(&mut cyc, 0, k + j, &e.mul(h).neg());
    }
    let dim_z = 2 * k - cyc.rank();

    // Homotopy images, in a pair of coefficient vectors of degree ≤ top2.
    let top2 = d + deg(h).max(deg(gp)).max(deg(g)).max(deg(hp));
    let wide = Layout::up_to(top2);
    let w = wide.len();
    let mut gens = Matrix::zeros(field, 2 * w, 2 * k);
    for (j, &mo) in mons.iter().enumerate() {
        let e = Poly2::monomial(field, mo, 1);
        wide.put(&mut gens, 0, j, &e.mul(h));
        wide.put(&mut gens, w, j, &e.mul(g));
        wide.put(&mut gens, 0, k + j, &e.mul(gp));
        wide.put(&mut gens, w, k + j, &e.mul(hp));
    }
    let high: Vec<usize> = wide
        .index
        .iter()
        .filter(|(mo, _)| mo.degree() > d)
        .flat_map(|(_, &i)| [i, w + i])
        .collect();
    let dim_b = gens.rank();
    let dim_b_high = gens.select_rows(&high).rank();
    Ok(dim_z - (dim_b - dim_b_high))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteOutcome {
    pub dim: usize,
    /// The degree bound at which two consecutive answers agreed.
    pub degree: u32,
}

/// Doubles the degree bound from deg f until two consecutive answers agree.
pub fn brute_hom_stabilized(m: &MF1, n: &MF1) -> Result<BruteOutcome> {
    let mut d = deg(m.curve().f()).max(1);
    let mut prev = brute_hom_bounded(m, n, d)?;
    loop {
        let next_d = 2 * d;
        if next_d > BRUTE_CAP {
            return Err(Error::inconclusive(format!(
                "brute-force Hom {m} → {n} did not stabilize below degree {BRUTE_CAP}"
            )));
        }
        let next = brute_hom_bounded(m, n, next_d)?;
        if next == prev {
            return Ok(BruteOutcome { dim: next, degree: d });
        }
        prev = next;
        d = next_d;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::PrimeField;
    use crate::mfcat::{bikr_tilting, Curve};

    #[test]
    fn brute_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let c = Curve::parse(f5, &["x", "y", "x+y"]).unwrap();
        let t = bikr_tilting(&c).unwrap();
        assert_eq!(brute_hom_stabilized(&t[2], &t[2]).unwrap().dim, 0);
        assert_eq!(brute_hom_stabilized(&t[0], &t[1]).unwrap().dim, 1);
        assert_eq!(brute_hom_stabilized(&t[0], &t[0]).unwrap().dim, 2);
        let c = Curve::parse(f5, &["x", "y"]).unwrap();
        let t = bikr_tilting(&c).unwrap();
        assert_eq!(brute_hom_stabilized(&t[0], &t[0]).unwrap().dim, 1);
        assert!(brute_hom_bounded(&t[0], &t[0], 0).is_err());
    }
}
