//! Dense-exponent monomials and sparse polynomials.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Ring};

/// Exponent vector over a fixed, indexed set of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    /// The square-free monomial with the given support.
    pub fn from_support(nvars: usize, support: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &i in support {
            e[i] += 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, if the division is exact.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Square-free part: every positive exponent replaced by one.
    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Every monomial of the given degree in `nvars` variables, lexicographically
/// descending on exponent vectors.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, degree as u16, &mut vec![0; nvars], &mut out);
    out
}

/// Constants needed to build polynomials: the coefficient context and the
/// number of variables.
#[derive(Debug, Clone)]
pub struct PolyCtx<F: Field> {
    pub field: F::Ctx,
    pub nvars: usize,
}

impl<F: Field> PolyCtx<F> {
    pub fn new(field: F::Ctx, nvars: usize) -> Self {
        Self { field, nvars }
    }

    pub fn var(&self, index: usize) -> Polynomial<F> {
        Polynomial::term(F::one(&self.field), Monomial::var(self.nvars, index))
    }

    pub fn constant(&self, value: i64) -> Polynomial<F> {
        let c = F::from_i64(&self.field, value);
        Polynomial::term(c, Monomial::one(self.nvars))
    }
}

/// A sparse polynomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn term(coeff: F, monomial: Monomial) -> Self {
        let nvars = monomial.nvars();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Self { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.mul(c))).collect() }
    }
}

impl<F: Field> Ring for Polynomial<F> {
    type Ctx = PolyCtx<F>;

    fn zero(ctx: &PolyCtx<F>) -> Self {
        Polynomial::zero(ctx.nvars)
    }

    fn one(ctx: &PolyCtx<F>) -> Self {
        ctx.constant(1)
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*x{:?}", m)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rational;

    #[test]
    fn monomial_arithmetic() {
        let a = Monomial::from_exponents(vec![2, 0, 1]);
        let b = Monomial::from_exponents(vec![1, 1, 0]);
        assert_eq!(a.mul(&b).exponents(), &[3, 1, 1]);
        assert_eq!(a.lcm(&b).exponents(), &[2, 1, 1]);
        assert!(!a.divides(&b));
        assert_eq!(a.div(&Monomial::var(3, 0)).unwrap().exponents(), &[1, 0, 1]);
        assert!(a.div(&b).is_none());
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(3, 2).is_coprime(&b));
        assert_eq!(a.degree(), 3);
        assert!(!a.is_squarefree());
        assert_eq!(a.radical().exponents(), &[1, 0, 1]);
    }

    #[test]
    fn degree_enumeration_counts() {
        // C(n + k - 1, k)
        assert_eq!(monomials_of_degree(10, 6).len(), 5005);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert!(monomials_of_degree(3, 3).iter().all(|m| m.degree() == 3));
    }

    #[test]
    fn polynomial_ring_ops() {
        let ctx = PolyCtx::<Rational>::new((), 2);
        let x = ctx.var(0);
        let y = ctx.var(1);
        let s = x.add(&y);
        let d = x.sub(&y);
        let prod = s.mul(&d);
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(prod, expected);
        assert!(prod.is_homogeneous());
        assert_eq!(prod.degree(), Some(2));
        assert!(x.sub(&x).is_zero());
        assert!(!s.add(&ctx.constant(1)).is_homogeneous());
    }
}
