//! Index sets and root geometry.
//!
//! Everything here is 1-based: `d` is the rank, indices live in `1..=2d`
//! and `star(k) = 2d + 1 - k`. An element of `I(d)` is a `d`-subset of
//! `1..=2d` containing exactly one of each pair `{k, star(k)}` with an even
//! number of entries above `d`.
//!
//! For a fixed `v` the roots `R(v)` are the pairs `(r, c)` with `r` not in
//! `v` and `c` in `v`. Rows are drawn top to bottom and columns left to
//! right, so "greater" diagonal points are the ones further South-West,
//! i.e. the ones with the larger row.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("invalid dimension d = {0}: must be at least 1")]
    InvalidDimension(usize),
    #[error("index tuple {entries:?} has length {len}, expected d = {d}")]
    WrongLength { entries: Vec<usize>, len: usize, d: usize },
    #[error("index tuple {0:?} is not strictly increasing")]
    NotIncreasing(Vec<usize>),
    #[error("entry {entry} of {entries:?} is outside 1..={two_d}")]
    OutOfRange { entries: Vec<usize>, entry: usize, two_d: usize },
    #[error("{entries:?} is not isotropic: {k} and its partner {star} are both present or both absent")]
    NotIsotropic { entries: Vec<usize>, k: usize, star: usize },
    #[error("{entries:?} has an odd number of entries greater than d = {d}")]
    OddParity { entries: Vec<usize>, d: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("({row}, {col}) is not a root of v = {v:?}")]
    NotARoot { row: usize, col: usize, v: Vec<usize> },
}

/// The rank `d` together with the star involution on `1..=2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimensionContext {
    d: usize,
}

impl DimensionContext {
    pub fn new(d: usize) -> Result<Self, LatticeError> {
        if d == 0 {
            return Err(LatticeError::InvalidDimension(d));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn two_d(&self) -> usize {
        2 * self.d
    }

    /// `star(k) = 2d + 1 - k`.
    #[inline]
    pub fn star(&self, k: usize) -> usize {
        debug_assert!((1..=2 * self.d).contains(&k));
        2 * self.d + 1 - k
    }
}

/// A strictly increasing `d`-tuple in `1..=2d`, an element of `I(d, 2d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    d: usize,
    entries: Vec<usize>,
}

impl IndexTuple {
    pub fn new(d: usize, entries: Vec<usize>) -> Result<Self, LatticeError> {
        let dim = DimensionContext::new(d)?;
        if entries.len() != d {
            let len = entries.len();
            return Err(LatticeError::WrongLength { entries, len, d });
        }
        if let Some(&entry) = entries.iter().find(|&&e| e == 0 || e > dim.two_d()) {
            return Err(LatticeError::OutOfRange { entries, entry, two_d: dim.two_d() });
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LatticeError::NotIncreasing(entries));
        }
        Ok(Self { d, entries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> DimensionContext {
        DimensionContext { d: self.d }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn contains(&self, k: usize) -> bool {
        self.entries.binary_search(&k).is_ok()
    }

    /// Entries of `self` that are not entries of `other`, ascending.
    pub fn difference(&self, other: &IndexTuple) -> Vec<usize> {
        self.entries.iter().copied().filter(|&k| !other.contains(k)).collect()
    }
}

impl Serialize for IndexTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.entries)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The componentwise (Bruhat) order on `I(d, 2d)`.
pub fn bruhat_leq(v: &IndexTuple, w: &IndexTuple) -> Result<bool, LatticeError> {
    if v.d != w.d {
        return Err(LatticeError::DimensionMismatch(v.d, w.d));
    }
    Ok(v.entries.iter().zip(&w.entries).all(|(a, b)| a <= b))
}

/// An element of `I(d)`: a torus fixed point of the even orthogonal Grassmannian.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IsotropicIndex(IndexTuple);

impl IsotropicIndex {
    pub fn new(d: usize, entries: Vec<usize>) -> Result<Self, LatticeError> {
        Self::from_tuple(IndexTuple::new(d, entries)?)
    }

    pub fn from_tuple(tuple: IndexTuple) -> Result<Self, LatticeError> {
        let dim = tuple.dim();
        for k in 1..=tuple.d {
            let star = dim.star(k);
            if tuple.contains(k) == tuple.contains(star) {
                return Err(LatticeError::NotIsotropic { entries: tuple.entries, k, star });
            }
        }
        let high = tuple.entries.iter().filter(|&&e| e > tuple.d).count();
        if high % 2 != 0 {
            return Err(LatticeError::OddParity { entries: tuple.entries, d: tuple.d });
        }
        Ok(Self(tuple))
    }

    pub fn tuple(&self) -> &IndexTuple {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.d
    }

    pub fn dim(&self) -> DimensionContext {
        self.0.dim()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0.entries
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.contains(k)
    }

    pub fn leq(&self, other: &IsotropicIndex) -> Result<bool, LatticeError> {
        bruhat_leq(&self.0, &other.0)
    }

    /// The smallest element `(1, ..., d)`.
    pub fn bottom(d: usize) -> Result<Self, LatticeError> {
        Self::new(d, (1..=d).collect())
    }

    /// The largest element of `I(d)` in the Bruhat order.
    pub fn top(d: usize) -> Result<Self, LatticeError> {
        let all = enumerate_isotropic(d)?;
        Ok(all
            .iter()
            .find(|t| all.iter().all(|u| u.leq(t).unwrap_or(false)))
            .cloned()
            .expect("I(d) has a maximum"))
    }

    /// Half the number of entries of `self` missing from `theta`.
    pub fn v_degree(&self, theta: &IsotropicIndex) -> usize {
        self.0.difference(&theta.0).len() / 2
    }
}

impl fmt::Display for IsotropicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Every element of `I(d)`, sorted lexicographically.
pub fn enumerate_isotropic(d: usize) -> Result<Vec<IsotropicIndex>, LatticeError> {
    let dim = DimensionContext::new(d)?;
    let mut out = Vec::with_capacity(1 << (d - 1));
    // bit k-1 set means star(k) is chosen instead of k
    for mask in 0u64..(1u64 << d) {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let mut entries: Vec<usize> = (1..=d)
            .map(|k| if mask >> (k - 1) & 1 == 1 { dim.star(k) } else { k })
            .collect();
        entries.sort_unstable();
        out.push(IsotropicIndex(IndexTuple { d, entries }));
    }
    out.sort();
    Ok(out)
}

/// Region membership of a root, computed once from `(r, c)` and `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct RegionFlags {
    /// `r < star(c)`: strictly above the diagonal.
    pub in_or: bool,
    /// `r > c`.
    pub in_n: bool,
    /// Both of the above.
    pub in_on: bool,
    /// `r = star(c)`.
    pub on_diagonal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    Horizontal,
    Vertical,
}

/// A pair `(row, col)` with `row` not in `v` and `col` in `v`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Root {
    pub row: usize,
    pub col: usize,
    #[serde(skip)]
    flags: RegionFlags,
}

impl Root {
    fn with_dim(dim: DimensionContext, row: usize, col: usize) -> Self {
        let star_c = dim.star(col);
        let in_or = row < star_c;
        let in_n = row > col;
        Root {
            row,
            col,
            flags: RegionFlags { in_or, in_n, in_on: in_or && in_n, on_diagonal: row == star_c },
        }
    }

    pub fn flags(&self) -> RegionFlags {
        self.flags
    }

    pub fn in_or(&self) -> bool {
        self.flags.in_or
    }

    pub fn in_n(&self) -> bool {
        self.flags.in_n
    }

    pub fn in_on(&self) -> bool {
        self.flags.in_on
    }

    pub fn on_diagonal(&self) -> bool {
        self.flags.on_diagonal
    }

    /// `self > other` in the chain order: larger row and smaller column.
    pub fn chain_gt(&self, other: &Root) -> bool {
        self.row > other.row && self.col < other.col
    }

    /// `(R, C)` dominates `(r, c)` when `R >= r` and `C <= c`.
    pub fn dominates(&self, other: &Root) -> bool {
        self.row >= other.row && self.col <= other.col
    }

    pub fn to_json_with_flags(&self) -> serde_json::Value {
        serde_json::json!({
            "row": self.row,
            "col": self.col,
            "in_or": self.flags.in_or,
            "in_n": self.flags.in_n,
            "in_on": self.flags.in_on,
            "on_diagonal": self.flags.on_diagonal,
        })
    }
}

impl PartialEq for Root {
    fn eq(&self, other: &Self) -> bool {
        self.row == other.row && self.col == other.col
    }
}

impl Eq for Root {}

impl Hash for Root {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.row.hash(state);
        self.col.hash(state);
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.row, self.col).cmp(&(other.row, other.col))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// `element_dominates(beta, alpha)`.
pub fn element_dominates(beta: &Root, alpha: &Root) -> bool {
    beta.dominates(alpha)
}

/// The classified root set `R(v)` of a fixed `v`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    v: IsotropicIndex,
    rows: Vec<usize>,
    roots: Vec<Root>,
}

impl RootSystem {
    pub fn new(v: IsotropicIndex) -> Self {
        let dim = v.dim();
        let rows: Vec<usize> = (1..=dim.two_d()).filter(|&k| !v.contains(k)).collect();
        let mut roots = Vec::with_capacity(v.d() * v.d());
        for &r in &rows {
            for &c in v.entries() {
                roots.push(Root::with_dim(dim, r, c));
            }
        }
        roots.sort();
        Self { v, rows, roots }
    }

    pub fn v(&self) -> &IsotropicIndex {
        &self.v
    }

    pub fn dim(&self) -> DimensionContext {
        self.v.dim()
    }

    pub fn d(&self) -> usize {
        self.v.d()
    }

    pub fn star(&self, k: usize) -> usize {
        self.dim().star(k)
    }

    /// Rows of `R(v)`: the complement of `v`, ascending.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Columns of `R(v)`: the entries of `v`, ascending.
    pub fn cols(&self) -> &[usize] {
        self.v.entries()
    }

    /// All of `R(v)`, sorted by `(row, col)`.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn or_roots(&self) -> Vec<Root> {
        self.roots.iter().copied().filter(Root::in_or).collect()
    }

    pub fn n_roots(&self) -> Vec<Root> {
        self.roots.iter().copied().filter(Root::in_n).collect()
    }

    pub fn on_roots(&self) -> Vec<Root> {
        self.roots.iter().copied().filter(Root::in_on).collect()
    }

    pub fn diagonal(&self) -> Vec<Root> {
        self.roots.iter().copied().filter(Root::on_diagonal).collect()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && row <= self.dim().two_d() && !self.v.contains(row) && self.v.contains(col)
    }

    pub fn root(&self, row: usize, col: usize) -> Result<Root, LatticeError> {
        if !self.contains(row, col) {
            return Err(LatticeError::NotARoot { row, col, v: self.v.entries().to_vec() });
        }
        Ok(Root::with_dim(self.dim(), row, col))
    }

    /// The diagonal point in row `row`, i.e. `(row, star(row))`.
    pub fn diagonal_at_row(&self, row: usize) -> Result<Root, LatticeError> {
        self.root(row, self.star(row))
    }

    pub fn project(&self, alpha: &Root, kind: Projection) -> Root {
        let dim = self.dim();
        match kind {
            Projection::Horizontal => Root::with_dim(dim, alpha.row, dim.star(alpha.row)),
            Projection::Vertical => Root::with_dim(dim, dim.star(alpha.col), alpha.col),
        }
    }

    pub fn p_h(&self, alpha: &Root) -> Root {
        self.project(alpha, Projection::Horizontal)
    }

    pub fn p_v(&self, alpha: &Root) -> Root {
        self.project(alpha, Projection::Vertical)
    }
}

/// `R(v)` with region flags for `v`.
pub fn roots_of(v: &IsotropicIndex) -> RootSystem {
    RootSystem::new(v.clone())
}

/// A monomial (multiset) in roots. Multiplicities are always positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootMonomial {
    exponents: BTreeMap<Root, u32>,
}

impl RootMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_roots<I: IntoIterator<Item = Root>>(roots: I) -> Self {
        let mut m = Self::default();
        for r in roots {
            m.insert(r, 1);
        }
        m
    }

    pub fn insert(&mut self, root: Root, multiplicity: u32) {
        if multiplicity > 0 {
            *self.exponents.entry(root).or_insert(0) += multiplicity;
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn multiplicity(&self, root: &Root) -> u32 {
        self.exponents.get(root).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Root, &u32)> {
        self.exponents.iter()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    /// The sub-monomial supported on roots satisfying `keep`.
    pub fn intersect<F: Fn(&Root) -> bool>(&self, keep: F) -> Self {
        Self {
            exponents: self.exponents.iter().filter(|(r, _)| keep(r)).map(|(r, e)| (*r, *e)).collect(),
        }
    }
}

impl fmt::Display for RootMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (r, e) in &self.exponents {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "X[{},{}]", r.row, r.col)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(d: usize, e: &[usize]) -> IsotropicIndex {
        IsotropicIndex::new(d, e.to_vec()).unwrap()
    }

    fn brute_force_isotropic(d: usize) -> Vec<Vec<usize>> {
        let two_d = 2 * d;
        let mut out = Vec::new();
        for mask in 0u32..(1 << two_d) {
            if mask.count_ones() as usize != d {
                continue;
            }
            let entries: Vec<usize> = (1..=two_d).filter(|k| mask >> (k - 1) & 1 == 1).collect();
            if IsotropicIndex::new(d, entries.clone()).is_ok() {
                out.push(entries);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn small_enumerations() {
        let e1: Vec<_> = enumerate_isotropic(1).unwrap().iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(e1, vec![vec![1]]);
        let e2: Vec<_> = enumerate_isotropic(2).unwrap().iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(e2, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(enumerate_isotropic(5).unwrap().len(), 16);
        assert_eq!(enumerate_isotropic(0), Err(LatticeError::InvalidDimension(0)));
    }

    #[test]
    fn enumeration_matches_exhaustive_filter() {
        for d in 1..=8 {
            let fast: Vec<_> = enumerate_isotropic(d).unwrap().iter().map(|t| t.entries().to_vec()).collect();
            assert_eq!(fast.len(), 1 << (d - 1));
            if d <= 7 {
                assert_eq!(fast, brute_force_isotropic(d), "d = {d}");
            }
        }
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(IsotropicIndex::new(2, vec![1, 3]), Err(LatticeError::OddParity { .. })));
        assert!(matches!(IsotropicIndex::new(2, vec![1, 4]), Err(LatticeError::NotIsotropic { .. })));
        assert!(matches!(IsotropicIndex::new(3, vec![1, 2, 4]), Err(LatticeError::OddParity { .. })));
        assert!(matches!(IndexTuple::new(2, vec![2, 1]), Err(LatticeError::NotIncreasing(_))));
        assert!(matches!(IndexTuple::new(2, vec![1, 5]), Err(LatticeError::OutOfRange { .. })));
        assert!(matches!(IndexTuple::new(2, vec![1]), Err(LatticeError::WrongLength { .. })));
    }

    #[test]
    fn bruhat_examples() {
        let t = |e: &[usize]| IndexTuple::new(5, e.to_vec()).unwrap();
        assert!(bruhat_leq(&t(&[1, 2, 3, 4, 5]), &t(&[3, 4, 5, 9, 10])).unwrap());
        assert!(bruhat_leq(&t(&[3, 4, 5, 9, 10]), &t(&[3, 4, 5, 9, 10])).unwrap());
        assert!(!bruhat_leq(&t(&[1, 6, 7, 8, 9]), &t(&[3, 4, 5, 9, 10])).unwrap());
        let short = IndexTuple::new(1, vec![1]).unwrap();
        assert_eq!(bruhat_leq(&short, &t(&[1, 2, 3, 4, 5])), Err(LatticeError::DimensionMismatch(1, 5)));
    }

    #[test]
    fn top_and_bottom() {
        assert_eq!(IsotropicIndex::top(5).unwrap().entries(), &[5, 7, 8, 9, 10]);
        assert_eq!(IsotropicIndex::top(3).unwrap().entries(), &[3, 5, 6]);
        assert_eq!(IsotropicIndex::top(4).unwrap().entries(), &[5, 6, 7, 8]);
        assert_eq!(IsotropicIndex::bottom(4).unwrap().entries(), &[1, 2, 3, 4]);
    }

    #[test]
    fn root_regions() {
        let sys = roots_of(&iso(5, &[1, 2, 3, 4, 5]));
        assert_eq!(sys.roots().len(), 25);
        assert_eq!(sys.or_roots().len(), 10);
        assert_eq!(sys.or_roots(), sys.on_roots());

        let sys1 = roots_of(&iso(1, &[1]));
        assert_eq!(sys1.roots().len(), 1);
        let r = sys1.roots()[0];
        assert_eq!((r.row, r.col), (2, 1));
        assert!(r.on_diagonal());

        let sys = roots_of(&iso(5, &[1, 3, 4, 6, 9]));
        assert_eq!(sys.rows(), &[2, 5, 7, 8, 10]);
        // diagonal point (5, 6) lies outside N(v): 5 < 6
        let p = sys.root(5, 6).unwrap();
        assert!(p.on_diagonal() && !p.in_n() && !p.in_or());
        assert!(sys.root(1, 3).is_err());
    }

    #[test]
    fn projections() {
        let sys = roots_of(&iso(4, &[1, 2, 3, 4]));
        let a = sys.root(7, 1).unwrap();
        assert_eq!(sys.p_h(&a), sys.root(7, 2).unwrap());
        let b = sys.root(5, 2).unwrap();
        assert_eq!(sys.p_v(&b), sys.root(7, 2).unwrap());
        for p in sys.diagonal() {
            assert_eq!(sys.p_h(&p), p);
            assert_eq!(sys.p_v(&p), p);
        }
        assert!(!element_dominates(&sys.root(5, 4).unwrap(), &sys.root(7, 2).unwrap()));
        assert!(element_dominates(&a, &a));
    }

    #[test]
    fn projection_membership_over_all_v() {
        for d in 1..=6 {
            for v in enumerate_isotropic(d).unwrap() {
                let sys = roots_of(&v);
                for alpha in sys.on_roots() {
                    let pv = sys.p_v(&alpha);
                    assert!(pv.on_diagonal() && pv.in_n(), "{alpha} in {v}");
                    let ph = sys.p_h(&alpha);
                    assert!(sys.contains(ph.row, ph.col) && ph.on_diagonal());
                }
                for alpha in sys.roots() {
                    let f = alpha.flags();
                    assert_eq!(f.in_on, f.in_or && f.in_n);
                    assert!(!(f.on_diagonal && f.in_or));
                }
                assert_eq!(sys.or_roots().len(), d * (d - 1) / 2);
            }
        }
    }

    #[test]
    fn star_is_an_involution() {
        for d in 1..=8 {
            let dim = DimensionContext::new(d).unwrap();
            for k in 1..=2 * d {
                assert_eq!(dim.star(dim.star(k)), k);
            }
            for v in enumerate_isotropic(d).unwrap() {
                for k in 1..=2 * d {
                    assert_ne!(v.contains(k), v.contains(dim.star(k)));
                }
            }
        }
    }

    #[test]
    fn root_monomial_basics() {
        let sys = roots_of(&iso(2, &[1, 2]));
        let r = sys.roots()[0];
        let mut m = RootMonomial::one();
        assert_eq!(m.degree(), 0);
        m.insert(r, 2);
        m.insert(r, 0);
        assert_eq!(m.degree(), 2);
        assert!(!m.is_squarefree());
        assert_eq!(m.intersect(|_| false).degree(), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn tuple_strategy(d: usize) -> impl Strategy<Value = IndexTuple> {
            proptest::sample::subsequence((1..=2 * d).collect::<Vec<_>>(), d)
                .prop_map(move |e| IndexTuple::new(d, e).unwrap())
        }

        proptest! {
            #[test]
            fn bruhat_is_a_partial_order(
                a in tuple_strategy(5), b in tuple_strategy(5), c in tuple_strategy(5)
            ) {
                prop_assert!(bruhat_leq(&a, &a).unwrap());
                if bruhat_leq(&a, &b).unwrap() && bruhat_leq(&b, &a).unwrap() {
                    prop_assert_eq!(&a, &b);
                }
                if bruhat_leq(&a, &b).unwrap() && bruhat_leq(&b, &c).unwrap() {
                    prop_assert!(bruhat_leq(&a, &c).unwrap());
                }
            }
        }
    }
}
