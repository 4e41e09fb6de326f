//! Bivariate polynomials over F_p in graded lexicographic order (x > y).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// A monomial x^x y^y. Ordered by total degree, then by the x exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    pub x: u32,
    pub y: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Mono { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn weighted_degree(self, w: (u32, u32)) -> u32 {
        self.x * w.0 + self.y * w.1
    }

    pub fn mul(self, o: Mono) -> Mono {
        Mono { x: self.x + o.x, y: self.y + o.y }
    }

    pub fn divides(self, o: Mono) -> bool {
        self.x <= o.x && self.y <= o.y
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(self, o: Mono) -> Mono {
        Mono { x: o.x - self.x, y: o.y - self.y }
    }

    pub fn lcm(self, o: Mono) -> Mono {
        Mono { x: self.x.max(o.x), y: self.y.max(o.y) }
    }

    /// All monomials of total degree at most `d`, in increasing order.
    pub fn up_to_degree(d: u32) -> Vec<Mono> {
        let mut v = Vec::new();
        for t in 0..=d {
            for x in 0..=t {
                v.push(Mono { x, y: t - x });
            }
        }
        v
    }

    /// All monomials of weighted degree exactly `d`.
    pub fn of_weighted_degree(w: (u32, u32), d: i64) -> Vec<Mono> {
        let mut v = Vec::new();
        if d < 0 {
            return v;
        }
        let d = d as u32;
        let mut x = 0;
        while x * w.0 <= d {
            let rest = d - x * w.0;
            if rest.is_multiple_of(w.1) {
                v.push(Mono { x, y: rest / w.1 });
            }
            x += 1;
        }
        v.sort();
        v
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.x.cmp(&o.x))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.x {
            0 => {}
            1 => parts.push("x".to_string()),
            e => parts.push(format!("x^{e}")),
        }
        match self.y {
            0 => {}
            1 => parts.push("y".to_string()),
            e => parts.push(format!("y^{e}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A polynomial in k[x,y]; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly2 {
    field: PrimeField,
    terms: BTreeMap<Mono, u32>,
}

impl Poly2 {
    pub fn zero(field: PrimeField) -> Self {
        Poly2 { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        Self::monomial(field, Mono::ONE, field.reduce(c))
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn x(field: PrimeField) -> Self {
        Self::monomial(field, Mono::new(1, 0), 1)
    }

    pub fn y(field: PrimeField) -> Self {
        Self::monomial(field, Mono::new(0, 1), 1)
    }

    pub fn monomial(field: PrimeField, m: Mono, c: u32) -> Self {
        let mut terms = BTreeMap::new();
        let c = c % field.p();
        if c != 0 {
            terms.insert(m, c);
        }
        Poly2 { field, terms }
    }

    pub fn from_terms(field: PrimeField, terms: impl IntoIterator<Item = (Mono, u32)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn coeff(&self, m: Mono) -> u32 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Mono, u32)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_monomial(&self) -> Option<Mono> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.values().next_back().copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_monomial().map(Mono::degree)
    }

    pub fn add_term(&mut self, m: Mono, c: u32) {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Poly2) -> Poly2 {
        let mut r = self.clone();
        for (m, c) in o.terms() {
            r.add_term(m, c);
        }
        r
    }

    pub fn sub(&self, o: &Poly2) -> Poly2 {
        let f = self.field;
        let mut r = self.clone();
        for (m, c) in o.terms() {
            r.add_term(m, f.neg(c));
        }
        r
    }

    pub fn neg(&self) -> Poly2 {
        self.scale(self.field.p() - 1)
    }

    pub fn scale(&self, c: u32) -> Poly2 {
        let f = self.field;
        Poly2::from_terms(f, self.terms().map(|(m, a)| (m, f.mul(a, c))))
    }

    pub fn mul(&self, o: &Poly2) -> Poly2 {
        let f = self.field;
        let mut r = Poly2::zero(f);
        for (m1, c1) in self.terms() {
            for (m2, c2) in o.terms() {
                r.add_term(m1.mul(m2), f.mul(c1, c2));
            }
        }
        r
    }

    pub fn mul_term(&self, m: Mono, c: u32) -> Poly2 {
        let f = self.field;
        Poly2::from_terms(f, self.terms().map(|(t, a)| (t.mul(m), f.mul(a, c))))
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut acc = Poly2::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Poly2 {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading_coeff()))
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly2 {
        Poly2::from_terms(self.field, self.terms().filter(|(m, _)| m.degree() == d))
    }

    /// Weighted degree if every term has the same weighted degree.
    pub fn weighted_homogeneous_degree(&self, w: (u32, u32)) -> Option<u32> {
        let mut it = self.terms().map(|(m, _)| m.weighted_degree(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, x: u32, y: u32) -> u32 {
        let f = self.field;
        self.terms().fold(0, |acc, (m, c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(x, m.x as u64), f.pow(y, m.y as u64))))
        })
    }

    /// Parse a polynomial such as `3*x^2*y - y + 1`.
    pub fn parse(field: PrimeField, s: &str) -> Result<Poly2> {
        Parser { field, src: s, chars: s.char_indices().peekable() }.parse()
    }
}

struct Parser<'a> {
    field: PrimeField,
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl Parser<'_> {
    fn err(&self, at: usize, what: &str) -> Error {
        Error::input(format!("cannot parse polynomial {:?} at byte {at}: {what}", self.src))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn number(&mut self) -> Option<u64> {
        let mut n: Option<u64> = None;
        while let Some(&(_, c)) = self.chars.peek() {
            let Some(d) = c.to_digit(10) else { break };
            n = Some(n.unwrap_or(0).saturating_mul(10).saturating_add(d as u64));
            self.chars.next();
        }
        n
    }

    fn pos(&mut self) -> usize {
        self.chars.peek().map_or(self.src.len(), |(i, _)| *i)
    }

    fn parse(mut self) -> Result<Poly2> {
        let f = self.field;
        let mut poly = Poly2::zero(f);
        self.skip_ws();
        if self.chars.peek().is_none() {
            return Err(self.err(0, "empty input"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = 1i64;
            match self.chars.peek() {
                Some((_, '+')) => {
                    self.chars.next();
                }
                Some((_, '-')) => {
                    sign = -1;
                    self.chars.next();
                }
                None => break,
                Some(&(i, c)) if !first => return Err(self.err(i, &format!("expected + or -, found {c:?}"))),
                _ => {}
            }
            first = false;
            let (mono, coeff) = self.term()?;
            poly.add_term(mono, f.mul(f.reduce(sign), coeff));
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Mono, u32)> {
        let f = self.field;
        let mut coeff = 1u32;
        let mut mono = Mono::ONE;
        let mut factors = 0;
        loop {
            self.skip_ws();
            let at = self.pos();
            match self.chars.peek().map(|&(_, c)| c) {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number().expect("digit present");
                    coeff = f.mul(coeff, (n % f.p() as u64) as u32);
                }
                Some(v @ ('x' | 'y')) => {
                    self.chars.next();
                    self.skip_ws();
                    let mut e = 1u32;
                    if matches!(self.chars.peek(), Some((_, '^'))) {
                        self.chars.next();
                        self.skip_ws();
                        let at = self.pos();
                        e = self
                            .number()
                            .and_then(|n| u32::try_from(n).ok())
                            .ok_or_else(|| self.err(at, "expected exponent"))?;
                    }
                    if v == 'x' {
                        mono.x += e;
                    } else {
                        mono.y += e;
                    }
                }
                Some('(') => return Err(self.err(at, "parentheses are not supported; expand the product")),
                Some(c) => return Err(self.err(at, &format!("unexpected character {c:?}"))),
                None => return Err(self.err(at, "expected a term")),
            }
            factors += 1;
            self.skip_ws();
            if matches!(self.chars.peek(), Some((_, '*'))) {
                self.chars.next();
                continue;
            }
            // Juxtaposition such as `3x` or `xy` is accepted as a product.
            if matches!(self.chars.peek(), Some((_, 'x' | 'y'))) {
                continue;
            }
            break;
        }
        debug_assert!(factors > 0);
        Ok((mono, coeff))
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let fld = self.field;
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let s = fld.signed(c);
            let (neg, a) = (s < 0, s.unsigned_abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m == Mono::ONE {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn parse_and_print_canonical() {
        let p = Poly2::parse(f5(), "y + 3*x^2*y - x + 2").unwrap();
        assert_eq!(p.to_string(), "-2*x^2*y - x + y + 2");
        assert_eq!(Poly2::parse(f5(), "x*y*x").unwrap().to_string(), "x^2*y");
        assert_eq!(Poly2::parse(f5(), "x - x").unwrap().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Poly2::parse(f5(), "").is_err());
        assert!(Poly2::parse(f5(), "x + ").is_err());
        assert!(Poly2::parse(f5(), "x*(y+1)").is_err());
        assert!(Poly2::parse(f5(), "z").is_err());
    }

    #[test]
    fn grlex_order() {
        assert!(Mono::new(1, 0) > Mono::new(0, 1));
        assert!(Mono::new(0, 2) > Mono::new(1, 0));
        assert!(Mono::new(2, 0) > Mono::new(1, 1));
    }

    #[test]
    fn weighted_degree() {
        let p = Poly2::parse(f5(), "x^2 + x*y^2").unwrap();
        assert_eq!(p.weighted_homogeneous_degree((2, 1)), Some(4));
        assert_eq!(p.weighted_homogeneous_degree((1, 1)), None);
        assert_eq!(Mono::of_weighted_degree((2, 1), 3), vec![Mono::new(1, 1), Mono::new(0, 3)]);
    }

    fn arb_poly() -> impl Strategy<Value = Poly2> {
        proptest::collection::vec(((0u32..4, 0u32..4), 0u32..5), 0..6)
            .prop_map(|ts| Poly2::from_terms(f5(), ts.into_iter().map(|((a, b), c)| (Mono::new(a, b), c))))
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(p in arb_poly()) {
            let q = Poly2::parse(f5(), &p.to_string()).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            let (x, y) = (2u32, 3u32);
            prop_assert_eq!(a.mul(&b).eval(x, y), f5().mul(a.eval(x, y), b.eval(x, y)));
        }
    }
}
