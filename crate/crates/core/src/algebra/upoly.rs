//! Univariate polynomials over F_p, used for minimal polynomials and
//! idempotent splitting.

use crate::kernel::PrimeField;

/// Coefficients in increasing degree; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub c: Vec<u32>,
}

impl UPoly {
    pub fn new(mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn one() -> Self {
        UPoly { c: vec![1] }
    }

    pub fn x() -> Self {
        UPoly { c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self, f: PrimeField) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = f.inv(self.lead());
        UPoly::new(self.c.iter().map(|&a| f.mul(a, inv)).collect())
    }

    pub fn add(&self, o: &Self, f: PrimeField) -> Self {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| f.add(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self, f: PrimeField) -> Self {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| f.sub(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self, f: PrimeField) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::new(vec![]);
        }
        let mut r = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        UPoly::new(r)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self, f: PrimeField) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let inv = f.inv(d.lead());
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::new(vec![]), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = f.mul(r[k + dd], inv);
            q[k] = coef;
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] = f.sub(r[k + j], f.mul(coef, b));
                }
            }
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &Self, f: PrimeField) -> Self {
        self.divrem(d, f).1
    }

    /// Monic gcd together with Bézout coefficients: `u*a + v*b = g`.
    pub fn ext_gcd(a: &Self, b: &Self, f: PrimeField) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::new(vec![]));
        let (mut t0, mut t1) = (UPoly::new(vec![]), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead());
        let sc = |p: &UPoly| UPoly::new(p.c.iter().map(|&a| f.mul(a, inv)).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn gcd(a: &Self, b: &Self, f: PrimeField) -> Self {
        Self::ext_gcd(a, b, f).0
    }

    /// `base^e mod m`
    pub fn powmod(base: &Self, mut e: u64, m: &Self, f: PrimeField) -> Self {
        let mut acc = UPoly::one().rem(m, f);
        let mut b = base.rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, f).rem(m, f);
            }
            b = b.mul(&b, f).rem(m, f);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, f: PrimeField) -> Self {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, &a)| f.mul(a, (i as u64 % f.p() as u64) as u32)).collect())
    }

    pub fn eval(&self, x: u32, f: PrimeField) -> u32 {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }
}

/// A nontrivial factorization `m = g·h` into coprime monic factors, found
/// through roots in F_p. Returns `None` when `m` has no root in F_p or is a
/// power of a single linear factor.
pub fn split_by_roots(m: &UPoly, f: PrimeField) -> Option<(UPoly, UPoly)> {
    let deg = m.degree()?;
    if deg < 2 {
        return None;
    }
    let p = f.p() as u64;
    // Product of the distinct linear factors.
    let xp = UPoly::powmod(&UPoly::x(), p, m, f);
    let lin = UPoly::gcd(m, &xp.sub(&UPoly::x(), f), f);
    let ld = lin.degree().unwrap_or(0);
    if ld == 0 {
        return None;
    }
    let root = if ld == 1 {
        f.neg(lin.c[0])
    } else if p <= 1 << 16 {
        (0..f.p()).find(|&r| lin.eval(r, f) == 0).expect("linear factors have roots")
    } else {
        // Equal-degree splitting of the split squarefree part.
        for d in 0..64u32 {
            let shift = UPoly::new(vec![d, 1]);
            let half = UPoly::powmod(&shift, (p - 1) / 2, &lin, f);
            let g = UPoly::gcd(&lin, &half.sub(&UPoly::one(), f), f);
            if matches!(g.degree(), Some(gd) if gd >= 1 && gd < ld) {
                return finish_split(m, &g, f);
            }
        }
        return None;
    };
    let lin_factor = UPoly::new(vec![f.neg(root), 1]);
    // Full multiplicity of (t - root) in m.
    let mut g = UPoly::one();
    let mut rest = m.clone();
    loop {
        let (q, r) = rest.divrem(&lin_factor, f);
        if !r.is_zero() {
            break;
        }
        g = g.mul(&lin_factor, f);
        rest = q;
    }
    if rest.degree() == Some(0) {
        return None;
    }
    Some((g, rest.monic(f)))
}

fn finish_split(m: &UPoly, g: &UPoly, f: PrimeField) -> Option<(UPoly, UPoly)> {
    // Saturate g inside m so the two factors are coprime.
    let mut big = UPoly::one();
    let mut rest = m.clone();
    loop {
        let c = UPoly::gcd(&rest, g, f);
        if c.degree() == Some(0) {
            break;
        }
        let (q, _) = rest.divrem(&c, f);
        big = big.mul(&c, f);
        rest = q;
    }
    if rest.degree() == Some(0) || big.degree() == Some(0) {
        return None;
    }
    Some((big.monic(f), rest.monic(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = f5();
        let a = UPoly::new(vec![4, 0, 1]); // t^2 - 1
        let b = UPoly::new(vec![1, 1]); // t + 1
        let (g, u, v) = UPoly::ext_gcd(&a, &b, f);
        assert_eq!(g, UPoly::new(vec![1, 1]));
        assert_eq!(u.mul(&a, f).add(&v.mul(&b, f), f), g);
    }

    #[test]
    fn splits_distinct_roots() {
        let f = f5();
        let m = UPoly::new(vec![0, 4, 0, 1]); // t^3 - t
        let (g, h) = split_by_roots(&m, f).unwrap();
        assert_eq!(g.mul(&h, f), m);
        assert_eq!(UPoly::gcd(&g, &h, f), UPoly::one());
    }

    #[test]
    fn irreducible_does_not_split() {
        let f = f5();
        let m = UPoly::new(vec![2, 0, 1]); // t^2 + 2, no root mod 5
        assert!(split_by_roots(&m, f).is_none());
    }
}
