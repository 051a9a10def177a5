//! The Stanley–Reisner complex of a square-free monomial ideal.

use thiserror::Error;

use crate::algebra::ideal::MonomialIdeal;
use crate::algebra::order::{VariableOrder, VariableOrderKind, VariableSet};
use crate::algebra::poly::Monomial;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("generator {0:?} is not square-free")]
    NotSquareFree(Monomial),
    #[error("{0} vertices exceed the cap of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex order has {got} entries for {expected} variables")]
    BadVertexOrder { expected: usize, got: usize },
}

/// Vertices are variable indices; internally each vertex gets a bit in the
/// given vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_order: Vec<usize>,
    position: Vec<usize>,
    nonfaces: Vec<u64>,
}

impl SimplicialComplex {
    /// The complex whose minimal nonfaces are the supports of `gens`.
    pub fn from_generators(nvars: usize, gens: &[Monomial], vertex_order: Vec<usize>) -> Result<Self, ComplexError> {
        if nvars > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(nvars));
        }
        let mut sorted = vertex_order.clone();
        sorted.sort_unstable();
        if sorted != (0..nvars).collect::<Vec<_>>() {
            return Err(ComplexError::BadVertexOrder { expected: nvars, got: vertex_order.len() });
        }
        let mut position = vec![0; nvars];
        for (p, &v) in vertex_order.iter().enumerate() {
            position[v] = p;
        }
        let mut nonfaces = Vec::with_capacity(gens.len());
        for g in MonomialIdeal::new(nvars, gens.to_vec()).generators() {
            if !g.is_squarefree() {
                return Err(ComplexError::NotSquareFree(g.clone()));
            }
            nonfaces.push(g.support().iter().fold(0u64, |m, &i| m | 1u64 << position[i]));
        }
        Ok(Self { vertex_order, position, nonfaces })
    }

    /// From the minimal generators of an initial ideal, vertices ranked by
    /// the first variable order.
    pub fn from_initial_ideal(ideal: &MonomialIdeal, vars: &VariableSet) -> Result<Self, ComplexError> {
        let order = VariableOrder::new(vars, VariableOrderKind::Order1);
        Self::from_generators(ideal.nvars(), ideal.generators(), order.greatest_first().to_vec())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_order.len()
    }

    pub fn vertex_order(&self) -> &[usize] {
        &self.vertex_order
    }

    fn mask_of(&self, support: &[usize]) -> u64 {
        support.iter().fold(0u64, |m, &i| m | 1u64 << self.position[i])
    }

    fn unmask(&self, mask: u64) -> Vec<usize> {
        (0..self.num_vertices()).filter(|p| mask >> p & 1 == 1).map(|p| self.vertex_order[p]).collect()
    }

    fn mask_is_face(&self, mask: u64) -> bool {
        self.nonfaces.iter().all(|&n| n & mask != n)
    }

    /// Whether the set of variable indices is a face.
    pub fn is_face(&self, support: &[usize]) -> bool {
        self.mask_is_face(self.mask_of(support))
    }

    /// Whether the support of `m` is a face.
    pub fn is_face_monomial(&self, m: &Monomial) -> bool {
        self.is_face(&m.support())
    }

    /// Minimal nonfaces as variable-index sets.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        self.nonfaces.iter().map(|&m| self.unmask(m)).collect()
    }

    /// Facets, each listed in vertex order; facets are sorted by their
    /// vertex-order bit patterns, greatest first.
    pub fn maximal_faces(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut out = Vec::new();
        fn rec(k: &SimplicialComplex, p: usize, n: usize, face: u64, out: &mut Vec<u64>) {
            if p == n {
                let maximal = (0..n).all(|q| face >> q & 1 == 1 || !k.mask_is_face(face | 1u64 << q));
                if maximal {
                    out.push(face);
                }
                return;
            }
            let with = face | 1u64 << p;
            if k.mask_is_face(with) {
                rec(k, p + 1, n, with, out);
            }
            // p may be skipped only if some nonface through p can still be completed
            let later = !0u64 << (p + 1);
            let blockable = k.nonfaces.iter().any(|&nf| nf >> p & 1 == 1 && nf & !(1u64 << p) & !(face | later) == 0);
            if blockable {
                rec(k, p + 1, n, face, out);
            }
        }
        rec(self, 0, n, 0, &mut out);
        out.sort_unstable_by_key(|&m| std::cmp::Reverse(m.reverse_bits()));
        out.into_iter().map(|m| self.unmask(m)).collect()
    }

    /// Entry `k` counts faces with `k` vertices; entry 0 is the empty face.
    pub fn f_vector(&self) -> Vec<u64> {
        let n = self.num_vertices();
        let mut counts = vec![0u64; n + 1];
        fn rec(k: &SimplicialComplex, p: usize, n: usize, face: u64, size: usize, counts: &mut [u64]) {
            counts[size] += 1;
            for q in p..n {
                let with = face | 1u64 << q;
                if k.mask_is_face(with) {
                    rec(k, q + 1, n, with, size + 1, counts);
                }
            }
        }
        rec(self, 0, n, 0, 0, &mut counts);
        while counts.len() > 1 && *counts.last().expect("non-empty") == 0 {
            counts.pop();
        }
        counts
    }

    /// Dimension of the largest facet; -1 when only the empty face remains.
    pub fn dimension(&self) -> i64 {
        self.f_vector().len() as i64 - 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(nvars: usize, support: &[usize]) -> Monomial {
        Monomial::from_support(nvars, support)
    }

    #[test]
    fn full_simplex() {
        let k = SimplicialComplex::from_generators(4, &[], (0..4).collect()).unwrap();
        assert_eq!(k.maximal_faces(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(k.f_vector(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn only_empty_face() {
        let gens: Vec<Monomial> = (0..3).map(|i| sf(3, &[i])).collect();
        let k = SimplicialComplex::from_generators(3, &gens, (0..3).collect()).unwrap();
        assert_eq!(k.maximal_faces(), vec![Vec::<usize>::new()]);
        assert_eq!(k.f_vector(), vec![1]);
        assert_eq!(k.dimension(), -1);
    }

    #[test]
    fn one_edge_removed() {
        let k = SimplicialComplex::from_generators(3, &[sf(3, &[0, 1])], (0..3).collect()).unwrap();
        assert_eq!(k.maximal_faces(), vec![vec![0, 2], vec![1, 2]]);
        assert_eq!(k.f_vector(), vec![1, 3, 2]);
        assert!(k.is_face(&[0, 2]));
        assert!(!k.is_face(&[0, 1, 2]));
    }

    #[test]
    fn rejects_non_square_free() {
        let g = Monomial::from_exponents(vec![2, 0]);
        assert!(matches!(
            SimplicialComplex::from_generators(2, &[g], vec![0, 1]),
            Err(ComplexError::NotSquareFree(_))
        ));
        assert!(matches!(
            SimplicialComplex::from_generators(2, &[], vec![0]),
            Err(ComplexError::BadVertexOrder { .. })
        ));
    }

    #[test]
    fn facets_are_maximal_faces() {
        // the boundary of a square: nonfaces {0,2}, {1,3}
        let gens = vec![sf(4, &[0, 2]), sf(4, &[1, 3])];
        let k = SimplicialComplex::from_generators(4, &gens, vec![3, 1, 0, 2]).unwrap();
        let facets = k.maximal_faces();
        assert_eq!(facets.len(), 4);
        for f in &facets {
            assert!(k.is_face(f));
            for v in 0..4 {
                if !f.contains(&v) {
                    let mut g = f.clone();
                    g.push(v);
                    assert!(!k.is_face(&g));
                }
            }
        }
        assert_eq!(k.f_vector(), vec![1, 4, 4]);
    }
}
