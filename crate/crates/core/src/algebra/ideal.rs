//! Monomial ideals and Hilbert functions.

use std::collections::{BTreeMap, HashMap};

use super::field::Field;
use super::poly::{monomials_of_degree, Monomial, Polynomial};

/// A monomial ideal stored by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut sorted = gens;
        sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        sorted.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in sorted {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        minimal.sort();
        Self { nvars, gens: minimal }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Monomials of degree `k` outside the ideal.
    pub fn standard_monomials(&self, k: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars, k).into_iter().filter(|m| !self.contains(m)).collect()
    }

    /// `dim (P / self)_k`.
    pub fn hilbert_function(&self, k: u32) -> usize {
        monomials_of_degree(self.nvars, k).iter().filter(|m| !self.contains(m)).count()
    }
}

/// `dim (P / I)_k` for `I` generated by homogeneous `gens`, computed from
/// the rank of the degree-`k` Macaulay matrix. Independent of any Gröbner
/// basis computation.
pub fn hilbert_function_of_quotient<F: Field>(nvars: usize, gens: &[Polynomial<F>], k: u32) -> usize {
    let columns = monomials_of_degree(nvars, k);
    let total = columns.len();
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // sparse rows, pivot = smallest column index
    let mut pivots: HashMap<usize, BTreeMap<usize, F>> = HashMap::new();
    for g in gens {
        let Some(deg) = g.degree() else { continue };
        if deg > k {
            continue;
        }
        for m in monomials_of_degree(nvars, k - deg) {
            let mut row: BTreeMap<usize, F> = BTreeMap::new();
            for (t, c) in g.terms() {
                let prod = t.mul(&m);
                if let Some(&col) = index.get(&prod) {
                    row.insert(col, c.clone());
                }
            }
            while let Some((&lead, lc)) = row.iter().next() {
                let lc = lc.clone();
                match pivots.get(&lead) {
                    Some(prow) => {
                        let factor = lc.div(&prow[&lead]).expect("pivot is nonzero");
                        for (col, v) in prow {
                            let entry = row.remove(col).unwrap_or_else(|| v.sub(v));
                            let updated = entry.sub(&v.mul(&factor));
                            if !updated.is_zero() {
                                row.insert(*col, updated);
                            }
                        }
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
    }
    total - pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Rational, Ring};
    use crate::algebra::poly::PolyCtx;

    #[test]
    fn minimal_generators() {
        let x = Monomial::from_exponents(vec![1, 0]);
        let xy = Monomial::from_exponents(vec![1, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        let ideal = MonomialIdeal::new(2, vec![xy.clone(), x.clone(), y2.clone(), x.clone()]);
        assert_eq!(ideal.generators(), &[y2.clone(), x.clone()]);
        assert!(ideal.contains(&xy));
        assert!(!ideal.contains(&Monomial::from_exponents(vec![0, 1])));
        assert!(!ideal.is_squarefree());
        // standard monomials of (x, y^2): 1, y
        assert_eq!(ideal.hilbert_function(0), 1);
        assert_eq!(ideal.hilbert_function(1), 1);
        assert_eq!(ideal.hilbert_function(2), 0);
    }

    #[test]
    fn macaulay_rank_matches_monomial_count_for_principal_ideal() {
        let ctx = PolyCtx::<Rational>::new((), 3);
        let (x, y, z) = (ctx.var(0), ctx.var(1), ctx.var(2));
        let f = x.mul(&y).sub(&z.mul(&z));
        for k in 0..6u32 {
            // P/(f) with deg f = 2: C(k+2,2) - C(k,2)
            let expected = ((k + 2) * (k + 1) / 2) as usize - if k >= 2 { (k * (k - 1) / 2) as usize } else { 0 };
            assert_eq!(hilbert_function_of_quotient(3, std::slice::from_ref(&f), k), expected);
        }
    }

    #[test]
    fn zero_generators_give_full_ring() {
        let ctx = PolyCtx::<Rational>::new((), 4);
        assert_eq!(hilbert_function_of_quotient::<Rational>(4, &[], 3), 20);
        assert_eq!(hilbert_function_of_quotient(4, &[ctx.constant(0)], 3), 20);
    }
}
