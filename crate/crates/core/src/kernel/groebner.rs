//! A small Buchberger implementation for ideals of k[x,y].
//!
//! Internally polynomials carry a third variable `t` so that intersections
//! (and hence colon ideals) can be computed by elimination.

use std::cmp::Ordering;

use super::field::PrimeField;
use super::poly::{Mono, Poly2};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Order {
    /// grlex on (x, y); `t` must not occur.
    Grlex,
    /// `t` exponent first, ties broken by grlex on (x, y).
    EliminateT,
}

type M3 = [u32; 3]; // [t, x, y]

fn cmp_m3(order: Order, a: &M3, b: &M3) -> Ordering {
    let g = || {
        let (da, db) = (a[1] + a[2], b[1] + b[2]);
        da.cmp(&db).then(a[1].cmp(&b[1]))
    };
    match order {
        Order::Grlex => g(),
        Order::EliminateT => a[0].cmp(&b[0]).then_with(g),
    }
}

fn divides(a: &M3, b: &M3) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &M3, b: &M3) -> M3 {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

fn mdiv(a: &M3, b: &M3) -> M3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn mmul(a: &M3, b: &M3) -> M3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Terms sorted in decreasing order; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct P3 {
    terms: Vec<(M3, u32)>,
}

struct Ring {
    f: PrimeField,
    order: Order,
}

impl Ring {
    fn normalize(&self, mut terms: Vec<(M3, u32)>) -> P3 {
        terms.sort_by(|a, b| cmp_m3(self.order, &b.0, &a.0));
        let mut out: Vec<(M3, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.f.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        P3 { terms: out }
    }

    fn from_poly2(&self, p: &Poly2, t: u32) -> P3 {
        self.normalize(p.terms().map(|(m, c)| ([t, m.x, m.y], c)).collect())
    }

    fn to_poly2(&self, p: &P3) -> Poly2 {
        debug_assert!(p.terms.iter().all(|(m, _)| m[0] == 0));
        Poly2::from_terms(self.f, p.terms.iter().map(|(m, c)| (Mono::new(m[1], m[2]), *c)))
    }

    fn monic(&self, p: &P3) -> P3 {
        let Some(&(_, lc)) = p.terms.first() else { return p.clone() };
        let inv = self.f.inv(lc);
        P3 { terms: p.terms.iter().map(|&(m, c)| (m, self.f.mul(c, inv))).collect() }
    }

    /// `a - c * m * b`
    fn sub_mul(&self, a: &P3, c: u32, m: &M3, b: &P3) -> P3 {
        let f = self.f;
        let neg = f.neg(c);
        let mut terms = a.terms.clone();
        terms.extend(b.terms.iter().map(|(bm, bc)| (mmul(bm, m), f.mul(neg, *bc))));
        self.normalize(terms)
    }

    /// Full reduction of `p` modulo `gs` (all monic).
    fn reduce(&self, p: &P3, gs: &[P3]) -> P3 {
        let mut rem: Vec<(M3, u32)> = Vec::new();
        let mut cur = p.clone();
        'outer: while let Some(&(lm, lc)) = cur.terms.first() {
            for g in gs {
                let gl = &g.terms[0].0;
                if divides(gl, &lm) {
                    cur = self.sub_mul(&cur, lc, &mdiv(&lm, gl), g);
                    continue 'outer;
                }
            }
            rem.push((lm, lc));
            cur.terms.remove(0);
        }
        P3 { terms: rem }
    }

    fn spoly(&self, a: &P3, b: &P3) -> P3 {
        let (la, lb) = (&a.terms[0].0, &b.terms[0].0);
        let l = lcm(la, lb);
        let first = P3 { terms: a.terms.iter().map(|(m, c)| (mmul(m, &mdiv(&l, la)), *c)).collect() };
        self.sub_mul(&first, 1, &mdiv(&l, lb), b)
    }

    /// Reduced Gröbner basis of the ideal generated by `gens`.
    fn groebner(&self, gens: Vec<P3>) -> Vec<P3> {
        let mut basis: Vec<P3> = Vec::new();
        for g in gens {
            let r = self.reduce(&g, &basis);
            if !r.terms.is_empty() {
                basis.push(self.monic(&r));
            }
        }
        let mut pairs: Vec<(usize, usize)> =
            (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        while let Some((i, j)) = pairs.pop() {
            let (li, lj) = (&basis[i].terms[0].0, &basis[j].terms[0].0);
            // Coprime leading monomials: the S-polynomial reduces to zero.
            if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
                continue;
            }
            let s = self.spoly(&basis[i], &basis[j]);
            let r = self.reduce(&s, &basis);
            if !r.terms.is_empty() {
                basis.push(self.monic(&r));
                let n = basis.len() - 1;
                pairs.extend((0..n).map(|k| (k, n)));
            }
        }
        self.interreduce(basis)
    }

    fn interreduce(&self, basis: Vec<P3>) -> Vec<P3> {
        // Drop elements whose leading monomial is divisible by another's.
        let mut minimal: Vec<P3> = Vec::new();
        for (k, g) in basis.iter().enumerate() {
            let lg = &g.terms[0].0;
            let redundant = basis.iter().enumerate().any(|(l, h)| {
                let lh = &h.terms[0].0;
                l != k && divides(lh, lg) && (lh != lg || l < k)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<P3> =
                minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
            let head = P3 { terms: vec![minimal[k].terms[0]] };
            let tail = P3 { terms: minimal[k].terms[1..].to_vec() };
            let mut r = self.reduce(&tail, &others);
            r.terms.insert(0, head.terms[0]);
            out.push(self.monic(&r));
        }
        out.sort_by(|a, b| cmp_m3(self.order, &a.terms[0].0, &b.terms[0].0));
        out
    }
}

/// A reduced Gröbner basis in grlex order; the zero ideal has no generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    field: PrimeField,
    generators: Vec<Poly2>,
}

/// Result of enumerating standard monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StandardMonomials {
    Finite(Vec<Mono>),
    Infinite,
}

impl StandardMonomials {
    pub fn len(&self) -> Option<usize> {
        match self {
            StandardMonomials::Finite(v) => Some(v.len()),
            StandardMonomials::Infinite => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }
}

impl GroebnerBasis {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> &[Poly2] {
        &self.generators
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(Poly2::is_constant)
    }

    fn ring(&self) -> Ring {
        Ring { f: self.field, order: Order::Grlex }
    }

    pub fn normal_form(&self, p: &Poly2) -> Poly2 {
        let ring = self.ring();
        let gs: Vec<P3> = self.generators.iter().map(|g| ring.from_poly2(g, 0)).collect();
        ring.to_poly2(&ring.reduce(&ring.from_poly2(p, 0), &gs))
    }

    pub fn contains(&self, p: &Poly2) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether this ideal contains every generator of `other`.
    pub fn contains_ideal(&self, other: &GroebnerBasis) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn standard_monomials(&self) -> StandardMonomials {
        standard_monomials(self)
    }
}

fn field_of(gens: &[Poly2]) -> Result<PrimeField> {
    let f = gens.first().ok_or_else(|| Error::input("empty generator list"))?.field();
    if gens.iter().any(|g| g.field() != f) {
        return Err(Error::input("generators over different fields"));
    }
    Ok(f)
}

/// Reduced Gröbner basis (grlex, x > y) of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly2]) -> Result<GroebnerBasis> {
    let f = field_of(gens)?;
    if gens.iter().all(Poly2::is_zero) {
        return Err(Error::input("all generators are zero"));
    }
    let ring = Ring { f, order: Order::Grlex };
    let basis = ring.groebner(gens.iter().map(|g| ring.from_poly2(g, 0)).collect());
    Ok(GroebnerBasis { field: f, generators: basis.iter().map(|p| ring.to_poly2(p)).collect() })
}

/// Monomials outside the leading-term ideal, or `Infinite`.
pub fn standard_monomials(g: &GroebnerBasis) -> StandardMonomials {
    let leads: Vec<Mono> = g.generators.iter().filter_map(Poly2::leading_monomial).collect();
    let max_x = leads.iter().filter(|m| m.y == 0).map(|m| m.x).min();
    let max_y = leads.iter().filter(|m| m.x == 0).map(|m| m.y).min();
    let (Some(bx), Some(by)) = (max_x, max_y) else {
        return StandardMonomials::Infinite;
    };
    let mut out = Vec::new();
    for i in 0..bx {
        for j in 0..by {
            let m = Mono::new(i, j);
            if !leads.iter().any(|l| l.divides(m)) {
                out.push(m);
            }
        }
    }
    out.sort();
    StandardMonomials::Finite(out)
}

/// Gröbner basis of `I ∩ J` via elimination: `t·I + (1−t)·J`.
pub fn intersect(i: &GroebnerBasis, j: &GroebnerBasis) -> GroebnerBasis {
    let f = i.field;
    let ring = Ring { f, order: Order::EliminateT };
    let mut gens = Vec::new();
    for g in &i.generators {
        gens.push(ring.from_poly2(g, 1));
    }
    for g in &j.generators {
        let a = ring.from_poly2(g, 0);
        let b = ring.from_poly2(g, 1);
        gens.push(ring.sub_mul(&a, 1, &[0, 0, 0], &b));
    }
    let basis = ring.groebner(gens);
    let gr = Ring { f, order: Order::Grlex };
    let kept: Vec<P3> = basis
        .into_iter()
        .filter(|p| p.terms.iter().all(|(m, _)| m[0] == 0))
        .map(|p| gr.normalize(p.terms))
        .collect();
    GroebnerBasis { field: f, generators: kept.iter().map(|p| gr.to_poly2(p)).collect() }
}

/// Exact quotient `a / c`, or `None` when `c` does not divide `a`.
pub fn divide_exact(a: &Poly2, c: &Poly2) -> Option<Poly2> {
    let f = a.field();
    let lc = c.leading_monomial()?;
    let inv = f.inv(c.leading_coeff());
    let mut rem = a.clone();
    let mut q = Poly2::zero(f);
    while let Some(lm) = rem.leading_monomial() {
        if !lc.divides(lm) {
            return None;
        }
        let m = lc.quotient_of(lm);
        let k = f.mul(rem.leading_coeff(), inv);
        q.add_term(m, k);
        rem = rem.sub(&c.mul_term(m, k));
    }
    Some(q)
}

/// Gröbner basis of `I : c = {a : a·c ∈ I}`.
pub fn colon_by_element(g: &GroebnerBasis, c: &Poly2) -> Result<GroebnerBasis> {
    if c.is_zero() {
        return Err(Error::input("colon by the zero polynomial"));
    }
    if c.field() != g.field {
        return Err(Error::input("colon element over a different field"));
    }
    if g.generators.is_empty() {
        return Ok(g.clone());
    }
    let cg = buchberger(std::slice::from_ref(c))?;
    let inter = intersect(g, &cg);
    let quotients: Vec<Poly2> = inter
        .generators
        .iter()
        .map(|h| divide_exact(h, c).expect("elements of (c) are divisible by c"))
        .collect();
    buchberger(&quotients)
}

/// Sum of two ideals.
pub fn ideal_sum(a: &GroebnerBasis, b: &GroebnerBasis) -> GroebnerBasis {
    let mut gens = a.generators.clone();
    gens.extend(b.generators.iter().cloned());
    if gens.is_empty() {
        return a.clone();
    }
    buchberger(&gens).expect("nonempty nonzero generators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::matrix::Matrix;
    use proptest::prelude::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn p(s: &str) -> Poly2 {
        Poly2::parse(f5(), s).unwrap()
    }

    fn gb(gens: &[&str]) -> GroebnerBasis {
        buchberger(&gens.iter().map(|s| p(s)).collect::<Vec<_>>()).unwrap()
    }

    fn gens_str(g: &GroebnerBasis) -> Vec<String> {
        g.generators().iter().map(|q| q.to_string()).collect()
    }

    #[test]
    fn buchberger_examples() {
        assert_eq!(gens_str(&gb(&["x", "y"])), vec!["y", "x"]);
        assert_eq!(gens_str(&gb(&["x", "x + y^2"])), vec!["x", "y^2"]);
        assert_eq!(gb(&["x*y", "x*y + y^2"]), gb(&["x*y", "y^2"]));
        assert!(matches!(buchberger(&[Poly2::zero(f5())]), Err(Error::Input(_))));
    }

    #[test]
    fn reduced_basis_is_idempotent() {
        let g = gb(&["x^2 + y", "x*y - 1", "y^3"]);
        assert_eq!(buchberger(g.generators()).unwrap(), g);
    }

    #[test]
    fn standard_monomial_examples() {
        assert_eq!(gb(&["x", "y"]).standard_monomials(), StandardMonomials::Finite(vec![Mono::ONE]));
        assert_eq!(
            gb(&["x", "y^2"]).standard_monomials(),
            StandardMonomials::Finite(vec![Mono::ONE, Mono::new(0, 1)])
        );
        assert_eq!(gb(&["y^2"]).standard_monomials(), StandardMonomials::Infinite);
    }

    #[test]
    fn colon_examples() {
        let m = gb(&["x", "y"]);
        assert_eq!(colon_by_element(&m, &p("1")).unwrap(), m);
        assert_eq!(colon_by_element(&gb(&["x*y", "y^2"]), &p("y")).unwrap(), m);
        assert!(colon_by_element(&gb(&["x"]), &p("x")).unwrap().is_unit_ideal());
        assert!(colon_by_element(&m, &Poly2::zero(f5())).is_err());
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let i = intersect(&gb(&["x*y"]), &gb(&["x^2"]));
        assert_eq!(gens_str(&i), vec!["x^2*y"]);
    }

    /// Oracle: dim of (S_{<=D} + I) / I computed by linear algebra on the
    /// span of {m·g : deg(m·g) <= D + slack}, truncated to degree <= D.
    fn codim_by_linear_algebra(gens: &[Poly2], d: u32) -> usize {
        let f = f5();
        let big = d + 6;
        let monos = Mono::up_to_degree(big);
        let idx = |m: Mono| monos.iter().position(|&q| q == m).unwrap();
        let mut rows = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let gd = g.total_degree().unwrap();
            for m in Mono::up_to_degree(big.saturating_sub(gd)) {
                let h = g.mul_term(m, 1);
                let mut v = vec![0i64; monos.len()];
                for (t, c) in h.terms() {
                    v[idx(t)] = c as i64;
                }
                rows.push(v);
            }
        }
        let mat = Matrix::from_rows(f, &rows).unwrap();
        // Elements of the ideal span supported in degree <= d: kernel of the
        // projection onto high-degree coordinates.
        let high: Vec<usize> = (0..monos.len()).filter(|&k| monos[k].degree() > d).collect();
        let low: Vec<usize> = (0..monos.len()).filter(|&k| monos[k].degree() <= d).collect();
        let t = mat.transpose();
        let combos = t.select_rows(&high).kernel();
        let lowpart = t.select_rows(&low);
        let vecs: Vec<Vec<u32>> = combos.iter().map(|c| lowpart.mul_vec(c)).collect();
        let r = if vecs.is_empty() { 0 } else { Matrix::from_columns(f, low.len(), &vecs).rank() };
        low.len() - r
    }

    fn arb_ideal() -> impl Strategy<Value = Vec<Poly2>> {
        let term = ((0u32..3, 0u32..3), 0u32..5);
        let poly = proptest::collection::vec(term, 1..4).prop_map(|ts| {
            Poly2::from_terms(f5(), ts.into_iter().map(|((a, b), c)| (Mono::new(a, b), c)))
        });
        (proptest::collection::vec(poly, 0..3), 1u32..4, 1u32..4).prop_map(|(mut gs, a, b)| {
            // Force a finite quotient.
            gs.push(Poly2::monomial(f5(), Mono::new(a, 0), 1));
            gs.push(Poly2::monomial(f5(), Mono::new(0, b), 1));
            gs
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]
        #[test]
        fn codimension_matches_linear_algebra(gens in arb_ideal()) {
            let g = buchberger(&gens).unwrap();
            for q in &gens {
                prop_assert!(g.contains(q));
            }
            let n = g.standard_monomials().len().unwrap();
            prop_assert_eq!(n, codim_by_linear_algebra(&gens, 8));
        }

        #[test]
        fn colon_contains_ideal_and_is_stable(gens in arb_ideal(), c in 0usize..4) {
            let g = buchberger(&gens).unwrap();
            let cs = ["x", "y", "x + y", "x*y"];
            let col = colon_by_element(&g, &p(cs[c])).unwrap();
            prop_assert!(col.contains_ideal(&g));
            prop_assert_eq!(colon_by_element(&col, &p("1")).unwrap(), col.clone());
            for h in col.generators() {
                prop_assert!(g.contains(&h.mul(&p(cs[c]))));
            }
        }
    }
}
