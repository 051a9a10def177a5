//! Buchberger's algorithm with the normal selection strategy and both
//! classical criteria, followed by full inter-reduction.

use std::cmp::Ordering;
use std::collections::HashSet;

use thiserror::Error;

use super::field::Field;
use super::ideal::MonomialIdeal;
use super::order::TermOrder;
use super::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("resource cap hit: {what} exceeded {limit}")]
    ResourceLimit { what: &'static str, limit: usize },
    #[error("polynomial has {got} variables, term order has {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("initial term of the zero polynomial")]
    ZeroPolynomial,
}

/// Caps that turn a runaway computation into an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_basis_size: usize,
    pub max_terms: usize,
    pub max_degree: u32,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        Self { max_basis_size: 5_000, max_terms: 200_000, max_degree: 40 }
    }
}

type Term<F> = (Monomial, F);

/// Terms sorted greatest first under the active order.
fn sorted_terms<F: Field>(p: &Polynomial<F>, order: &TermOrder) -> Vec<Term<F>> {
    let mut t: Vec<Term<F>> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.compare(&b.0, &a.0));
    t
}

fn to_polynomial<F: Field>(nvars: usize, terms: &[Term<F>]) -> Polynomial<F> {
    Polynomial::from_terms(nvars, terms.iter().cloned())
}

/// `p - c * m * g`, both inputs sorted greatest first.
fn sub_scaled<F: Field>(p: &[Term<F>], c: &F, m: &Monomial, g: &[Term<F>], order: &TermOrder) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < p.len() || j < g.len() {
        if j == g.len() {
            out.extend_from_slice(&p[i..]);
            break;
        }
        let gm = g[j].0.mul(m);
        if i == p.len() {
            out.push((gm, g[j].1.mul(c).neg()));
            j += 1;
            continue;
        }
        match order.compare(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, g[j].1.mul(c).neg()));
                j += 1;
            }
            Ordering::Equal => {
                let coeff = p[i].1.sub(&g[j].1.mul(c));
                if !coeff.is_zero() {
                    out.push((gm, coeff));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn make_monic<F: Field>(p: &mut [Term<F>]) {
    if let Some(inv) = p.first().and_then(|t| t.1.inv()) {
        for t in p.iter_mut() {
            t.1 = t.1.mul(&inv);
        }
    }
}

/// Full reduction of `p` by `basis` (each element monic or not).
fn normal_form<F: Field>(p: Vec<Term<F>>, basis: &[Vec<Term<F>>], order: &TermOrder) -> Vec<Term<F>> {
    let mut rest = p;
    let mut remainder: Vec<Term<F>> = Vec::new();
    let mut start = 0;
    while start < rest.len() {
        let (lm, lc) = (&rest[start].0, &rest[start].1);
        let divisor = basis.iter().find(|g| g[0].0.divides(lm));
        match divisor {
            Some(g) => {
                let q = lm.div(&g[0].0).expect("divisible");
                let c = lc.div(&g[0].1).expect("nonzero leading coefficient");
                rest = sub_scaled(&rest[start..], &c, &q, g, order);
                start = 0;
            }
            None => {
                remainder.push(rest[start].clone());
                start += 1;
            }
        }
    }
    remainder
}

fn s_polynomial<F: Field>(f: &[Term<F>], g: &[Term<F>], order: &TermOrder) -> Vec<Term<F>> {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = lcm.div(&f[0].0).expect("lcm");
    let mg = lcm.div(&g[0].0).expect("lcm");
    let cf = f[0].1.inv().expect("nonzero");
    let cg = g[0].1.inv().expect("nonzero");
    let scaled_f: Vec<Term<F>> = f.iter().map(|(m, c)| (m.mul(&mf), c.mul(&cf))).collect();
    sub_scaled(&scaled_f, &cg, &mg, g, order)
}

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    order: TermOrder,
    nvars: usize,
    elements: Vec<Vec<Term<F>>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polynomials(&self) -> Vec<Polynomial<F>> {
        self.elements.iter().map(|t| to_polynomial(self.nvars, t)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Normal form of `f` with respect to this basis.
    pub fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let nf = normal_form(sorted_terms(f, &self.order), &self.elements, &self.order);
        to_polynomial(self.nvars, &nf)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.reduce(f).is_zero()
    }

    /// Minimal generators of the initial ideal.
    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.leading_monomials())
    }

    /// Independent check: every S-polynomial reduces to zero, with no
    /// criteria applied.
    pub fn is_groebner(&self) -> bool {
        is_groebner_basis(&self.polynomials(), &self.order)
    }
}

/// Whether `polys` is a Gröbner basis of the ideal it generates under `order`.
pub fn is_groebner_basis<F: Field>(polys: &[Polynomial<F>], order: &TermOrder) -> bool {
    let sorted: Vec<Vec<Term<F>>> =
        polys.iter().filter(|p| !p.is_zero()).map(|p| sorted_terms(p, order)).collect();
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            let s = s_polynomial(&sorted[i], &sorted[j], order);
            if !normal_form(s, &sorted, order).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Leading coefficient and monomial of `f`.
pub fn initial_term<F: Field>(order: &TermOrder, f: &Polynomial<F>) -> Result<(F, Monomial), GroebnerError> {
    if f.nvars() != order.nvars() {
        return Err(GroebnerError::AmbientMismatch { expected: order.nvars(), got: f.nvars() });
    }
    f.terms()
        .max_by(|a, b| order.compare(a.0, b.0))
        .map(|(m, c)| (c.clone(), m.clone()))
        .ok_or(GroebnerError::ZeroPolynomial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Pair {
    i: usize,
    j: usize,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Zero generators are ignored; an empty generator list yields an empty
/// basis (the zero ideal).
pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    order: &TermOrder,
    limits: &GroebnerLimits,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let nvars = order.nvars();
    for g in gens {
        if g.nvars() != nvars {
            return Err(GroebnerError::AmbientMismatch { expected: nvars, got: g.nvars() });
        }
    }
    let mut basis: Vec<Vec<Term<F>>> = Vec::new();
    let mut pending: Vec<(Pair, Monomial)> = Vec::new();
    let mut pending_set: HashSet<Pair> = HashSet::new();

    let check = |p: &[Term<F>]| -> Result<(), GroebnerError> {
        if p.len() > limits.max_terms {
            return Err(GroebnerError::ResourceLimit { what: "polynomial term count", limit: limits.max_terms });
        }
        if p.first().map_or(0, |t| t.0.degree()) > limits.max_degree {
            return Err(GroebnerError::ResourceLimit { what: "degree", limit: limits.max_degree as usize });
        }
        Ok(())
    };

    let add = |poly: Vec<Term<F>>,
                   basis: &mut Vec<Vec<Term<F>>>,
                   pending: &mut Vec<(Pair, Monomial)>,
                   pending_set: &mut HashSet<Pair>|
     -> Result<(), GroebnerError> {
        check(&poly)?;
        if basis.len() >= limits.max_basis_size {
            return Err(GroebnerError::ResourceLimit { what: "basis size", limit: limits.max_basis_size });
        }
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let pair = Pair { i, j };
            pending.push((pair, g[0].0.lcm(&poly[0].0)));
            pending_set.insert(pair);
        }
        basis.push(poly);
        Ok(())
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut nf = normal_form(sorted_terms(g, order), &basis, order);
        if nf.is_empty() {
            continue;
        }
        make_monic(&mut nf);
        add(nf, &mut basis, &mut pending, &mut pending_set)?;
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm, ties broken by generator indices
        let mut best = 0;
        for k in 1..pending.len() {
            let ord = order.compare(&pending[k].1, &pending[best].1);
            if ord == Ordering::Less
                || (ord == Ordering::Equal && (pending[k].0.i, pending[k].0.j) < (pending[best].0.i, pending[best].0.j))
            {
                best = k;
            }
        }
        let (pair, lcm) = pending.swap_remove(best);
        pending_set.remove(&pair);
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if fi[0].0.is_coprime(&fj[0].0) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k][0].0.divides(&lcm)
                && !pending_set.contains(&Pair { i: pair.i.min(k), j: pair.i.max(k) })
                && !pending_set.contains(&Pair { i: pair.j.min(k), j: pair.j.max(k) })
        });
        if chain {
            continue;
        }
        let s = s_polynomial(fi, fj, order);
        check(&s)?;
        let mut nf = normal_form(s, &basis, order);
        if nf.is_empty() {
            continue;
        }
        make_monic(&mut nf);
        add(nf, &mut basis, &mut pending, &mut pending_set)?;
    }

    Ok(GroebnerBasis { order: order.clone(), nvars, elements: inter_reduce(basis, order) })
}

fn inter_reduce<F: Field>(basis: Vec<Vec<Term<F>>>, order: &TermOrder) -> Vec<Vec<Term<F>>> {
    // keep only elements whose leading monomial is not divisible by another's
    let mut minimal: Vec<Vec<Term<F>>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Vec<Term<F>>> =
            minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
        let head = minimal[i][0].clone();
        let mut tail = normal_form(minimal[i][1..].to_vec(), &others, order);
        let mut g = vec![head];
        g.append(&mut tail);
        make_monic(&mut g);
        reduced.push(g);
    }
    reduced.sort_by(|a, b| order.compare(&b[0].0, &a[0].0));
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rational, Ring};
    use crate::algebra::order::{TermOrder, VariableSet};
    use crate::algebra::poly::PolyCtx;
    use crate::lattice::{IsotropicIndex, RootSystem};

    fn setup() -> (RootSystem, VariableSet, PolyCtx<Rational>) {
        let sys = RootSystem::new(IsotropicIndex::bottom(5).unwrap());
        let vars = VariableSet::new(&sys);
        let ctx = PolyCtx::new((), vars.len());
        (sys, vars, ctx)
    }

    fn parse(vars: &VariableSet, ctx: &PolyCtx<Rational>, s: &str) -> Polynomial<Rational> {
        vars.parse_alias_polynomial(ctx, s).unwrap()
    }

    #[test]
    fn single_generator_is_made_monic() {
        let (sys, vars, ctx) = setup();
        let order = TermOrder::hlex(&sys, &vars);
        let f = parse(&vars, &ctx, "di-cf+bg").scale(&Rational::integer(3));
        let gb = buchberger(std::slice::from_ref(&f), &order, &GroebnerLimits::default()).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb.polynomials()[0], parse(&vars, &ctx, "di-cf+bg"));
    }

    #[test]
    fn coprime_leading_terms_are_already_a_basis() {
        let (sys, vars, ctx) = setup();
        let order = TermOrder::hlex(&sys, &vars);
        let gens = vec![parse(&vars, &ctx, "d-a"), parse(&vars, &ctx, "c-b")];
        assert!(is_groebner_basis(&gens, &order));
        let gb = buchberger(&gens, &order, &GroebnerLimits::default()).unwrap();
        assert_eq!(gb.len(), 2);
        for g in &gens {
            assert!(gb.polynomials().contains(g));
        }
    }

    #[test]
    fn five_pfaffians_are_not_a_basis() {
        let (sys, vars, ctx) = setup();
        let gens: Vec<_> = ["di-cf+bg", "dh-ce+ag", "dj-be+af", "cj-bh+ai", "gj-fh+ei"]
            .iter()
            .map(|s| parse(&vars, &ctx, s))
            .collect();
        for kind in [TermOrder::hlex(&sys, &vars), TermOrder::rlex(&sys, &vars), TermOrder::diagproj(&sys, &vars)] {
            assert!(!is_groebner_basis(&gens, &kind));
            let gb = buchberger(&gens, &kind, &GroebnerLimits::default()).unwrap();
            assert!(gb.len() > 5);
            assert!(gb.is_groebner());
            for g in &gens {
                assert!(gb.contains(g));
            }
            let element = parse(&vars, &ctx, "cfh-bgh-cei+agi");
            assert!(gb.contains(&element));
            assert!(!gb.contains(&ctx.constant(1)));
            assert_eq!(gb.reduce(&ctx.constant(1)), ctx.constant(1));
        }
    }

    #[test]
    fn resource_cap_is_reported() {
        let (sys, vars, ctx) = setup();
        let order = TermOrder::hlex(&sys, &vars);
        let gens: Vec<_> = ["di-cf+bg", "dh-ce+ag", "dj-be+af"].iter().map(|s| parse(&vars, &ctx, s)).collect();
        let limits = GroebnerLimits { max_basis_size: 2, ..Default::default() };
        assert!(matches!(buchberger(&gens, &order, &limits), Err(GroebnerError::ResourceLimit { .. })));
    }

    #[test]
    fn empty_and_zero_generators() {
        let (sys, vars, _) = setup();
        let order = TermOrder::hlex(&sys, &vars);
        let gb = buchberger::<Rational>(&[], &order, &GroebnerLimits::default()).unwrap();
        assert!(gb.is_empty());
        let gb = buchberger(&[Polynomial::<Rational>::zero(10)], &order, &GroebnerLimits::default()).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn prime_field_basis_matches_rational_leading_terms() {
        let (sys, vars, ctx) = setup();
        let order = TermOrder::hlex(&sys, &vars);
        let gens: Vec<_> = ["di-cf+bg", "dh-ce+ag", "dj-be+af", "cj-bh+ai", "gj-fh+ei"]
            .iter()
            .map(|s| parse(&vars, &ctx, s))
            .collect();
        let pf = PrimeField::new(32003).unwrap();
        let gens_p: Vec<_> = gens
            .iter()
            .map(|g| {
                Polynomial::from_terms(
                    10,
                    g.terms().map(|(m, c)| (m.clone(), pf.element(if c.is_negative() { -1 } else { 1 }))),
                )
            })
            .collect();
        let q = buchberger(&gens, &order, &GroebnerLimits::default()).unwrap();
        let p = buchberger(&gens_p, &order, &GroebnerLimits::default()).unwrap();
        assert_eq!(q.initial_ideal(), p.initial_ideal());
        let _ = Polynomial::<Rational>::zero(10).is_zero();
        let _ = Rational::zero(&());
    }

    #[test]
    fn reduce_is_idempotent() {
        let (sys, vars, ctx) = setup();
        let order = TermOrder::rlex(&sys, &vars);
        let gens: Vec<_> = ["di-cf+bg", "dh-ce+ag"].iter().map(|s| parse(&vars, &ctx, s)).collect();
        let gb = buchberger(&gens, &order, &GroebnerLimits::default()).unwrap();
        let f = parse(&vars, &ctx, "abc+dij-hh+e");
        let once = gb.reduce(&f);
        assert_eq!(gb.reduce(&once), once);
    }
}
