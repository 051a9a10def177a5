//! v-chains, their intertwined components and projection sets, and the
//! new-form construction with its auxiliary split.
//!
//! Chain order: `(r, c) > (r', c')` when `r > r'` and `c < c'`. Diagonal
//! points `(r, star(r))` are compared by row, a larger row being "greater".

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice::{IsotropicIndex, LatticeError, Root, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("{0} is not in N(v)")]
    NotInN(Root),
    #[error("{0} is not in ON(v)")]
    NotInOn(Root),
    #[error("{0} > {1} fails in the chain order")]
    NotDecreasing(Root, Root),
    #[error("the chain is empty")]
    Empty,
    #[error("cut-off {cutoff} is outside 1..={len}")]
    BadCutoff { cutoff: usize, len: usize },
    #[error("no choice is taken when |proj| is odd, got {0}")]
    ChoiceNotAllowed(Root),
    #[error("a choice is required; eligible: {}", fmt_roots(.0))]
    ChoiceRequired(Vec<Root>),
    #[error("{choice} is not an eligible choice; eligible: {}", fmt_roots(.eligible))]
    IneligibleChoice { choice: Root, eligible: Vec<Root> },
    #[error("{0} is not a diagonal point")]
    NotDiagonal(Root),
    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn fmt_roots(roots: &[Root]) -> String {
    let parts: Vec<String> = roots.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// A strictly decreasing sequence of roots in `N(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VChain {
    elements: Vec<Root>,
    all_in_on: bool,
}

impl VChain {
    pub fn empty() -> Self {
        Self { elements: Vec::new(), all_in_on: true }
    }

    /// Validates membership in `N(v)` and the strict chain order. Roots are
    /// re-derived from `sys`, so only `(row, col)` of the input matters.
    pub fn new(sys: &RootSystem, elements: &[Root]) -> Result<Self, ChainError> {
        let mut out = Vec::with_capacity(elements.len());
        for e in elements {
            let r = sys.root(e.row, e.col)?;
            if !r.in_n() {
                return Err(ChainError::NotInN(r));
            }
            out.push(r);
        }
        for w in out.windows(2) {
            if !w[0].chain_gt(&w[1]) {
                return Err(ChainError::NotDecreasing(w[0], w[1]));
            }
        }
        let all_in_on = out.iter().all(Root::in_on);
        Ok(Self { elements: out, all_in_on })
    }

    pub fn from_pairs(sys: &RootSystem, pairs: &[(usize, usize)]) -> Result<Self, ChainError> {
        let roots = pairs.iter().map(|&(r, c)| sys.root(r, c)).collect::<Result<Vec<_>, _>>()?;
        Self::new(sys, &roots)
    }

    pub fn elements(&self) -> &[Root] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn all_in_on(&self) -> bool {
        self.all_in_on
    }

    pub fn first(&self) -> Option<&Root> {
        self.elements.first()
    }

    pub fn last(&self) -> Option<&Root> {
        self.elements.last()
    }

    fn slice(&self, range: std::ops::Range<usize>) -> Self {
        let elements = self.elements[range].to_vec();
        let all_in_on = elements.iter().all(Root::in_on);
        Self { elements, all_in_on }
    }

    /// Elements `1..=j` (1-based).
    pub fn prefix(&self, j: usize) -> Self {
        self.slice(0..j.min(self.len()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("roots serialize")
    }
}

impl Serialize for VChain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.elements)
    }
}

impl fmt::Display for VChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elements.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" > "))
    }
}

/// Whether `alpha > beta` is intertwined: `p_v(beta)` dominates `p_h(alpha)`.
pub fn is_intertwined(sys: &RootSystem, alpha: &Root, beta: &Root) -> Result<bool, ChainError> {
    if !alpha.chain_gt(beta) {
        return Err(ChainError::NotDecreasing(*alpha, *beta));
    }
    Ok(sys.p_v(beta).dominates(&sys.p_h(alpha)))
}

fn intertwined(sys: &RootSystem, alpha: &Root, beta: &Root) -> bool {
    sys.p_v(beta).dominates(&sys.p_h(alpha))
}

/// Maximal runs of consecutive intertwined elements.
pub fn decompose(sys: &RootSystem, chain: &VChain) -> Vec<VChain> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=chain.len() {
        if i == chain.len() || !intertwined(sys, &chain.elements[i - 1], &chain.elements[i]) {
            if i > start {
                out.push(chain.slice(start..i));
            }
            start = i;
        }
    }
    out
}

/// A set of diagonal points, listed in decreasing order (largest row first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ProjectionSet {
    rows: BTreeSet<usize>,
    two_d: usize,
}

impl ProjectionSet {
    fn new(two_d: usize) -> Self {
        Self { rows: BTreeSet::new(), two_d }
    }

    pub fn from_points(sys: &RootSystem, points: &[Root]) -> Result<Self, ChainError> {
        let mut set = Self::new(sys.dim().two_d());
        for p in points {
            let r = sys.root(p.row, p.col)?;
            if !r.on_diagonal() {
                return Err(ChainError::NotDiagonal(r));
            }
            set.rows.insert(r.row);
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows of the points, largest first.
    pub fn rows_desc(&self) -> Vec<usize> {
        self.rows.iter().rev().copied().collect()
    }

    /// The points `(r, star(r))`, largest first.
    pub fn points(&self) -> Vec<(usize, usize)> {
        self.rows.iter().rev().map(|&r| (r, self.two_d + 1 - r)).collect()
    }

    pub fn contains_row(&self, row: usize) -> bool {
        self.rows.contains(&row)
    }

    pub fn contains(&self, p: &Root) -> bool {
        p.row + p.col == self.two_d + 1 && self.rows.contains(&p.row)
    }

    pub fn smallest(&self) -> Option<usize> {
        self.rows.iter().next().copied()
    }

    pub fn insert_row(&mut self, row: usize) {
        self.rows.insert(row);
    }

    pub fn remove_row(&mut self, row: usize) -> bool {
        self.rows.remove(&row)
    }

    pub fn union(&self, other: &ProjectionSet) -> ProjectionSet {
        ProjectionSet { rows: self.rows.union(&other.rows).copied().collect(), two_d: self.two_d.max(other.two_d) }
    }

    pub fn is_subset(&self, other: &ProjectionSet) -> bool {
        self.rows.is_subset(&other.rows)
    }
}

impl Serialize for ProjectionSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.points().iter().map(|&(row, col)| serde_json::json!({"row": row, "col": col})))
    }
}

impl fmt::Display for ProjectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points().iter().map(|(r, c)| format!("({r},{c})")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn raw_proj(sys: &RootSystem, elements: &[Root]) -> ProjectionSet {
    let mut set = ProjectionSet::new(sys.dim().two_d());
    for e in elements {
        set.rows.insert(e.row);
        set.rows.insert(sys.star(e.col));
    }
    set
}

fn make_even(mut set: ProjectionSet) -> ProjectionSet {
    if set.len() % 2 == 1 {
        let low = set.smallest().expect("odd set is non-empty");
        set.rows.remove(&low);
    }
    set
}

/// `proj(F)` of an intertwined chain: every projection of every element.
pub fn proj_set(sys: &RootSystem, f: &VChain) -> Result<ProjectionSet, ChainError> {
    if f.is_empty() {
        return Err(ChainError::Empty);
    }
    Ok(raw_proj(sys, &f.elements))
}

/// `projeven(F)`: `proj(F)` without its smallest point when `|proj(F)|` is odd.
pub fn projeven_set(sys: &RootSystem, f: &VChain) -> Result<ProjectionSet, ChainError> {
    proj_set(sys, f).map(make_even)
}

/// `proj` of an arbitrary chain: `projeven` of every component but the
/// last, `proj` of the last.
pub fn proj_chain(sys: &RootSystem, c: &VChain) -> ProjectionSet {
    let comps = decompose(sys, c);
    let mut out = ProjectionSet::new(sys.dim().two_d());
    for (i, comp) in comps.iter().enumerate() {
        let p = raw_proj(sys, &comp.elements);
        let p = if i + 1 == comps.len() { p } else { make_even(p) };
        out = out.union(&p);
    }
    out
}

/// `projeven` of an arbitrary chain: the union of `projeven` of every
/// component.
pub fn projeven_chain(sys: &RootSystem, c: &VChain) -> ProjectionSet {
    let mut out = ProjectionSet::new(sys.dim().two_d());
    for comp in decompose(sys, c) {
        out = out.union(&make_even(raw_proj(sys, &comp.elements)));
    }
    out
}

/// `D` dominates `C`: `D` is at least as long and dominates `C` termwise.
pub fn chain_dominates(d: &VChain, c: &VChain) -> bool {
    d.len() >= c.len() && c.elements.iter().zip(&d.elements).all(|(mu, nu)| nu.dominates(mu))
}

/// Choices for the even case: points of `proj(F)` strictly between the
/// horizontal and vertical projections of the last element of `F`.
pub fn eligible_choices(sys: &RootSystem, f: &VChain) -> Result<Vec<Root>, ChainError> {
    let last = f.last().ok_or(ChainError::Empty)?;
    let proj = proj_set(sys, f)?;
    let (low, high) = (last.row, sys.star(last.col));
    proj.rows_desc()
        .into_iter()
        .filter(|&r| r > low && r < high)
        .map(|r| sys.diagonal_at_row(r).map_err(ChainError::from))
        .collect()
}

/// `new(F)` for one intertwined chain, with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewComponent {
    pub chain: VChain,
    /// `r_1 > ... > r_t`.
    pub rows: Vec<usize>,
    pub s: usize,
    pub t: usize,
    pub choice: Option<Root>,
    pub proj_odd: bool,
}

/// Why a new form does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Undefined {
    SingletonComponent,
    NoEligibleChoice,
}

impl fmt::Display for Undefined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Undefined::SingletonComponent => write!(f, "last component of C has a single element"),
            Undefined::NoEligibleChoice => write!(f, "|proj| is even and nothing lies strictly between the projections of the last element"),
        }
    }
}

fn check_construction(sys: &RootSystem, f: &VChain) -> Result<(), ChainError> {
    if f.is_empty() {
        return Err(ChainError::Empty);
    }
    if let Some(bad) = f.elements.iter().find(|r| !r.in_on()) {
        return Err(ChainError::NotInOn(*bad));
    }
    if decompose(sys, f).len() != 1 {
        return Err(ChainError::ConstructionInvariant(format!("{f} is not intertwined")));
    }
    Ok(())
}

fn build_chain(sys: &RootSystem, pairs: &[(usize, usize)], what: &str) -> Result<VChain, ChainError> {
    let roots = pairs
        .iter()
        .map(|&(r, c)| sys.root(r, c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ChainError::ConstructionInvariant(format!("{what}: {e}")))?;
    VChain::new(sys, &roots).map_err(|e| ChainError::ConstructionInvariant(format!("{what}: {e}")))
}

/// `new(F)` for an intertwined chain `F` in `ON(v)`.
pub fn new_component(
    sys: &RootSystem,
    f: &VChain,
    choice: Option<Root>,
) -> Result<Result<NewComponent, Undefined>, ChainError> {
    check_construction(sys, f)?;
    if f.len() < 2 {
        return Ok(Err(Undefined::SingletonComponent));
    }
    let last = *f.last().expect("non-empty");
    let proj = proj_set(sys, f)?;
    let proj_odd = proj.len() % 2 == 1;
    let mut kept = proj.clone();
    if proj_odd {
        if let Some(c) = choice {
            return Err(ChainError::ChoiceNotAllowed(c));
        }
        kept = make_even(kept);
    } else {
        let eligible = eligible_choices(sys, f)?;
        let choice = match (choice, eligible.is_empty()) {
            (_, true) => {
                return match choice {
                    Some(c) => Err(ChainError::IneligibleChoice { choice: c, eligible }),
                    None => Ok(Err(Undefined::NoEligibleChoice)),
                }
            }
            (None, false) => return Err(ChainError::ChoiceRequired(eligible)),
            (Some(c), false) => c,
        };
        if !eligible.contains(&choice) {
            return Err(ChainError::IneligibleChoice { choice, eligible });
        }
        let lambda = proj.smallest().expect("non-empty");
        kept.remove_row(lambda);
        kept.remove_row(choice.row);
    }
    let rows = kept.rows_desc();
    let t = rows.len();
    let pv_last = sys.star(last.col);
    let s = rows
        .iter()
        .position(|&r| r == pv_last)
        .map(|i| i + 1)
        .ok_or_else(|| ChainError::ConstructionInvariant(format!("p_v({last}) was discarded from proj")))?;
    if t % 2 == 1 || 2 * s <= t || (2 * s - t) % 2 == 1 {
        return Err(ChainError::ConstructionInvariant(format!("s = {s}, t = {t}: need t even and 2s - t even and positive")));
    }
    let star = |k: usize| sys.star(k);
    let r = |i: usize| rows[i - 1];
    let mut pairs = Vec::with_capacity(t / 2);
    for i in 1..=(2 * s - t) / 2 {
        pairs.push((r(2 * i), star(r(2 * i - 1))));
    }
    for j in (s + 1)..=t {
        pairs.push((r(j), star(r(j + s - t))));
    }
    let chain = build_chain(sys, &pairs, "new(F)")?;
    Ok(Ok(NewComponent { chain, rows, s, t, choice: if proj_odd { None } else { choice }, proj_odd }))
}

/// `spnew(F)`: pairs up consecutive points of `projeven(F)`.
pub fn spnew(sys: &RootSystem, f: &VChain) -> Result<VChain, ChainError> {
    let rows = projeven_set(sys, f)?.rows_desc();
    let pairs: Vec<(usize, usize)> = rows.chunks(2).map(|p| (p[1], sys.star(p[0]))).collect();
    build_chain(sys, &pairs, "spnew(F)")
}

/// A defined new form of `E = C > D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewForm {
    pub chain: VChain,
    pub components: Vec<VChain>,
    pub last: NewComponent,
    pub spnew: Vec<VChain>,
    /// `D_1`: the part of `D` in the same intertwined component as `C_l`.
    pub d1: VChain,
    pub d: VChain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NewFormResult {
    Defined(Box<NewForm>),
    Undefined(Undefined),
}

impl NewFormResult {
    pub fn defined(&self) -> Option<&NewForm> {
        match self {
            NewFormResult::Defined(nf) => Some(nf),
            NewFormResult::Undefined(_) => None,
        }
    }
}

/// The new form of `E` for cut-off `cutoff` (1-based position of the last
/// element of `C`) and, in the even case, the chosen diagonal point.
pub fn new_form(
    sys: &RootSystem,
    e: &VChain,
    cutoff: usize,
    choice: Option<Root>,
) -> Result<NewFormResult, ChainError> {
    if e.is_empty() {
        return Err(ChainError::Empty);
    }
    if let Some(bad) = e.elements.iter().find(|r| !r.in_on()) {
        return Err(ChainError::NotInOn(*bad));
    }
    if cutoff == 0 || cutoff > e.len() {
        return Err(ChainError::BadCutoff { cutoff, len: e.len() });
    }
    let c = e.prefix(cutoff);
    let d = e.slice(cutoff..e.len());
    let components = decompose(sys, &c);
    let c_last = components.last().expect("C is non-empty").clone();
    let mut d1_len = 0;
    let mut prev = *c_last.last().expect("non-empty");
    for x in d.elements() {
        if !intertwined(sys, &prev, x) {
            break;
        }
        d1_len += 1;
        prev = *x;
    }
    let d1 = d.prefix(d1_len);
    let last = match new_component(sys, &c_last, choice)? {
        Ok(nc) => nc,
        Err(u) => return Ok(NewFormResult::Undefined(u)),
    };
    let mut sp = Vec::with_capacity(components.len() - 1);
    for comp in &components[..components.len() - 1] {
        sp.push(spnew(sys, comp)?);
    }
    let mut all: Vec<Root> = sp.iter().flat_map(|x| x.elements().iter().copied()).collect();
    all.extend_from_slice(last.chain.elements());
    all.extend_from_slice(d.elements());
    let chain = VChain::new(sys, &all).map_err(|err| ChainError::ConstructionInvariant(format!("new(E): {err}")))?;
    Ok(NewFormResult::Defined(Box::new(NewForm { chain, components, last, spnew: sp, d1, d })))
}

/// Every admissible `(cutoff, choice)` pair for `E`: one entry with no
/// choice when none is taken or none is eligible, otherwise one entry per
/// eligible diagonal point.
pub fn new_form_options(sys: &RootSystem, e: &VChain) -> Result<Vec<(usize, Option<Root>)>, ChainError> {
    let mut out = Vec::new();
    for cutoff in 1..=e.len() {
        let comps = decompose(sys, &e.prefix(cutoff));
        let last = comps.last().expect("non-empty");
        let eligible = if last.len() < 2 || proj_set(sys, last)?.len() % 2 == 1 {
            Vec::new()
        } else {
            eligible_choices(sys, last)?
        };
        if eligible.is_empty() {
            out.push((cutoff, None));
        } else {
            out.extend(eligible.into_iter().map(|c| (cutoff, Some(c))));
        }
    }
    Ok(out)
}

/// Every `(cutoff, choice)` pair for which a new form of `E` is defined,
/// together with the result.
pub fn all_new_forms(sys: &RootSystem, e: &VChain) -> Result<Vec<(usize, Option<Root>, NewForm)>, ChainError> {
    let mut out = Vec::new();
    for (cutoff, choice) in new_form_options(sys, e)? {
        if let NewFormResult::Defined(nf) = new_form(sys, e, cutoff, choice)? {
            out.push((cutoff, choice, *nf));
        }
    }
    Ok(out)
}

/// The split `F > D = F_1 > F_2` and the sub-chains `F̈_1`, `F̈_2` of
/// `new(F) > D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxSplit {
    pub new_f: NewComponent,
    pub d: VChain,
    pub f1: Vec<Root>,
    pub f2: Vec<Root>,
    pub fdd1: Vec<Root>,
    pub fdd2: Vec<Root>,
}

/// Builds the auxiliary split for `F > D` intertwined with `new(F)` defined.
pub fn aux_split(sys: &RootSystem, f: &VChain, d: &VChain, choice: Option<Root>) -> Result<Result<AuxSplit, Undefined>, ChainError> {
    let new_f = match new_component(sys, f, choice)? {
        Ok(nc) => nc,
        Err(u) => return Ok(Err(u)),
    };
    let (s, t) = (new_f.s, new_f.t);
    let head: BTreeSet<usize> = new_f.rows[..2 * s - t].iter().copied().collect();
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    for x in f.elements() {
        if head.contains(&sys.star(x.col)) {
            f1.push(*x);
        } else {
            f2.push(*x);
        }
    }
    let f2_cols: BTreeSet<usize> = f2.iter().map(|x| x.col).collect();
    f2.extend_from_slice(d.elements());
    let split = (2 * s - t) / 2;
    let fdd1 = new_f.chain.elements()[..split].to_vec();
    let mut fdd2: Vec<Root> = new_f.chain.elements()[split..]
        .iter()
        .filter(|x| f2_cols.contains(&x.col))
        .copied()
        .collect();
    fdd2.extend_from_slice(d.elements());
    Ok(Ok(AuxSplit { new_f, d: d.clone(), f1, f2, fdd1, fdd2 }))
}

/// Outcome of one numbered check on an [`AuxSplit`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxCheck {
    pub item: usize,
    pub holds: bool,
    pub detail: String,
}

fn is_subsequence(small: &[Root], big: &[Root]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

impl AuxSplit {
    /// The six properties of the split, numbered 1 to 6.
    pub fn checks(&self, sys: &RootSystem) -> Vec<AuxCheck> {
        let mut out = Vec::with_capacity(6);
        let mut push = |item: usize, holds: bool, detail: String| out.push(AuxCheck { item, holds, detail });

        // 1: F̈1 > F̈2 is a sub-chain of new(F) > D
        let mut big = self.new_f.chain.elements().to_vec();
        big.extend_from_slice(self.d.elements());
        let mut joined = self.fdd1.clone();
        joined.extend_from_slice(&self.fdd2);
        push(1, is_subsequence(&joined, &big) && VChain::new(sys, &joined).is_ok(), "F̈1 > F̈2 within new(F) > D".into());

        // 2: projections of F̈1 are even in number and all in N(v)
        let proj = raw_proj(sys, &self.fdd1);
        let in_n = proj.rows.iter().all(|&r| r > sys.star(r));
        push(2, proj.len().is_multiple_of(2) && in_n, format!("proj(F̈1) = {proj}"));

        // 3: no two consecutive elements of F̈1 intertwine
        let none = self.fdd1.windows(2).all(|w| !intertwined(sys, &w[0], &w[1]));
        push(3, none, "F̈1 has no intertwined pair".into());

        // 4: last of F̈1 and first of F̈2 do not intertwine
        let junction = match (self.fdd1.last(), self.fdd2.first()) {
            (Some(a), Some(b)) => !intertwined(sys, a, b),
            _ => true,
        };
        push(4, junction, "junction F̈1 / F̈2 not intertwined".into());

        // 5: every p_v of F1 is a projection of F̈1
        let covered = self.f1.iter().all(|x| proj.contains_row(sys.star(x.col)));
        push(5, covered, "p_v(F1) within proj(F̈1)".into());

        // 6: order-preserving bijection F2 <-> F̈2 with equal columns,
        // identity on D, rows no smaller (strictly larger off D)
        let d_len = self.d.len();
        let mut ok = self.f2.len() == self.fdd2.len();
        if ok {
            let n = self.f2.len();
            for (i, (a, b)) in self.f2.iter().zip(&self.fdd2).enumerate() {
                let on_d = i + d_len >= n;
                if a.col != b.col || (on_d && a != b) || (!on_d && b.row <= a.row) {
                    ok = false;
                }
            }
        }
        push(6, ok, format!("F2 = {} / F̈2 = {}", fmt_roots(&self.f2), fmt_roots(&self.fdd2)));
        out
    }
}

/// `Gamma_j` for the prefix `A_j` of `a` (1-based `j`).
pub fn gamma_set(sys: &RootSystem, a: &VChain, j: usize) -> Result<ProjectionSet, ChainError> {
    if j == 0 || j > a.len() {
        return Err(ChainError::BadCutoff { cutoff: j, len: a.len() });
    }
    let aj = a.prefix(j);
    let mut g = projeven_chain(sys, &aj);
    if proj_chain(sys, &aj).len().is_multiple_of(2) {
        let alpha = a.elements[j - 1];
        g.remove_row(sys.star(alpha.col));
        g.remove_row(alpha.row);
    }
    Ok(g)
}

/// The element of `I(d)` obtained from `v` by exchanging `star(r)` for `r`
/// for each diagonal point `(r, star(r))` in `gamma`.
pub fn index_from_diagonal(sys: &RootSystem, gamma: &ProjectionSet) -> Result<IsotropicIndex, ChainError> {
    let v = sys.v();
    let mut entries: BTreeSet<usize> = v.entries().iter().copied().collect();
    for (r, c) in gamma.points() {
        let p = sys.root(r, c)?;
        if !p.on_diagonal() {
            return Err(ChainError::NotDiagonal(p));
        }
        entries.remove(&c);
        entries.insert(r);
    }
    Ok(IsotropicIndex::new(v.d(), entries.into_iter().collect())?)
}

/// Every chain of length `1..=max_len` in the given roots, in lexicographic
/// order of `(row desc, col asc)` sequences.
pub fn enumerate_chains(sys: &RootSystem, roots: &[Root], max_len: usize) -> Vec<VChain> {
    let mut sorted = roots.to_vec();
    sorted.sort_by(|a, b| b.row.cmp(&a.row).then(a.col.cmp(&b.col)));
    let mut out = Vec::new();
    fn rec(sys: &RootSystem, sorted: &[Root], cur: &mut Vec<Root>, max_len: usize, out: &mut Vec<VChain>) {
        for (i, x) in sorted.iter().enumerate() {
            if cur.last().is_some_and(|l| !l.chain_gt(x)) {
                continue;
            }
            cur.push(*x);
            out.push(VChain::new(sys, cur).expect("decreasing by construction"));
            if cur.len() < max_len {
                rec(sys, &sorted[i + 1..], cur, max_len, out);
            }
            cur.pop();
        }
    }
    rec(sys, &sorted, &mut Vec::new(), max_len, &mut out);
    out
}

/// Every chain of length at most `max_len` in `ON(v)`.
pub fn on_chains(sys: &RootSystem, max_len: usize) -> Vec<VChain> {
    enumerate_chains(sys, &sys.on_roots(), max_len)
}
