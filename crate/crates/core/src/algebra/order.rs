//! Variables `X_beta`, `beta` in `OR(v)`, and term orders on their monomials.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use super::field::Field;
use super::poly::{Monomial, PolyCtx, Polynomial};
use crate::lattice::{Root, RootMonomial, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("ranking is not a permutation of OR(v): {0}")]
    BadRanking(String),
    #[error("monomials over different variable sets ({0} vs {1} variables)")]
    AmbientMismatch(usize, usize),
    #[error("unknown term order {0:?}; expected hlex, rlex or diagproj")]
    UnknownOrder(String),
    #[error("root {0} is not a variable (not in OR(v))")]
    NotAVariable(Root),
    #[error("cannot parse {0:?} as a polynomial in the alias variables")]
    Parse(String),
}

/// The polynomial ring variables: `OR(v)` sorted by `(row, col)`.
#[derive(Debug, Clone)]
pub struct VariableSet {
    roots: Vec<Root>,
    aliases: Option<Vec<String>>,
}

impl VariableSet {
    pub fn new(sys: &RootSystem) -> Self {
        let roots = sys.or_roots();
        // the a..j naming used for d = 5, v = (1,...,5)
        let aliases = (sys.d() == 5 && sys.v().entries() == [1, 2, 3, 4, 5])
            .then(|| (0..roots.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect());
        Self { roots, aliases }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, index: usize) -> Root {
        self.roots[index]
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.roots.binary_search(root).ok()
    }

    pub fn has_aliases(&self) -> bool {
        self.aliases.is_some()
    }

    pub fn alias_index(&self, name: &str) -> Option<usize> {
        self.aliases.as_ref()?.iter().position(|a| a == name)
    }

    pub fn name(&self, index: usize, use_alias: bool) -> String {
        match (&self.aliases, use_alias) {
            (Some(a), true) => a[index].clone(),
            _ => format!("X[{},{}]", self.roots[index].row, self.roots[index].col),
        }
    }

    pub fn monomial_from_roots(&self, m: &RootMonomial) -> Result<Monomial, OrderError> {
        let mut e = vec![0u16; self.len()];
        for (r, mult) in m.iter() {
            let i = self.index_of(r).ok_or(OrderError::NotAVariable(*r))?;
            e[i] += *mult as u16;
        }
        Ok(Monomial::from_exponents(e))
    }

    pub fn to_root_monomial(&self, m: &Monomial) -> RootMonomial {
        let mut out = RootMonomial::one();
        for (i, &e) in m.exponents().iter().enumerate() {
            out.insert(self.roots[i], e as u32);
        }
        out
    }

    /// The product of the named aliases, e.g. `"agi"`.
    pub fn alias_monomial(&self, word: &str) -> Option<Monomial> {
        let mut e = vec![0u16; self.len()];
        for ch in word.chars() {
            e[self.alias_index(&ch.to_string())?] += 1;
        }
        Some(Monomial::from_exponents(e))
    }

    /// Parses a signed sum of alias words with optional integer
    /// coefficients, such as `"di - cf + bg"` or `"2ag-3ce"`.
    pub fn parse_alias_polynomial<F: Field>(&self, ctx: &PolyCtx<F>, text: &str) -> Result<Polynomial<F>, OrderError> {
        let err = || OrderError::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Polynomial::zero(self.len()));
        }
        let mut p = Polynomial::zero(self.len());
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ if p.is_zero() && rest.len() == compact.len() => (1, rest),
                _ => return Err(err()),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let coeff: i64 = if split == 0 { 1 } else { term[..split].parse().map_err(|_| err())? };
            let word = &term[split..];
            let m = if word.is_empty() {
                if split == 0 {
                    return Err(err());
                }
                Monomial::one(self.len())
            } else {
                self.alias_monomial(word).ok_or_else(err)?
            };
            p.add_term(m, F::from_i64(&ctx.field, sign * coeff));
            rest = &body[end..];
        }
        Ok(p)
    }

    pub fn format_monomial(&self, m: &Monomial, use_alias: bool) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let alias = use_alias && self.aliases.is_some();
        let mut s = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() && !alias {
                s.push('*');
            }
            s.push_str(&self.name(i, alias));
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    /// Canonical text form: terms in descending order under `order`.
    pub fn format_polynomial<F: Field>(&self, p: &Polynomial<F>, order: &TermOrder, use_alias: bool) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = p.terms().collect();
        terms.sort_by(|a, b| order.compare(b.0, a.0));
        let mut s = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(s, "{abs}");
            } else {
                if !abs.is_one() {
                    let _ = write!(s, "{abs}*");
                }
                s.push_str(&self.format_monomial(m, use_alias));
            }
        }
        s
    }

    pub fn monomial_json(&self, m: &Monomial) -> serde_json::Value {
        let factors: Vec<_> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| serde_json::json!({"row": self.roots[i].row, "col": self.roots[i].col, "exp": e}))
            .collect();
        serde_json::Value::Array(factors)
    }

    /// JSON form with exponent vectors over the listed variables.
    pub fn polynomial_json<F: Field>(&self, p: &Polynomial<F>, order: &TermOrder) -> serde_json::Value {
        let mut terms: Vec<_> = p.terms().collect();
        terms.sort_by(|a, b| order.compare(b.0, a.0));
        serde_json::json!({
            "variables": self.roots,
            "terms": terms
                .into_iter()
                .map(|(m, c)| serde_json::json!({"coeff": c.to_string(), "exponents": m.exponents()}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Which of the two variable orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VariableOrderKind {
    /// Smaller rows are larger.
    Order1,
    /// Larger rows are larger.
    Order2,
}

/// A total order on `OR(v)`, stored greatest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableOrder {
    kind: VariableOrderKind,
    greatest_first: Vec<usize>,
    rank: Vec<usize>,
}

impl VariableOrder {
    /// Within a row `ON` comes before `OR \ ON` and larger columns first;
    /// rows ascend for `Order1` and descend for `Order2`.
    pub fn new(vars: &VariableSet, kind: VariableOrderKind) -> Self {
        let mut idx: Vec<usize> = (0..vars.len()).collect();
        idx.sort_by(|&a, &b| {
            let (ra, rb) = (vars.root(a), vars.root(b));
            let rows = match kind {
                VariableOrderKind::Order1 => ra.row.cmp(&rb.row),
                VariableOrderKind::Order2 => rb.row.cmp(&ra.row),
            };
            rows.then(rb.in_on().cmp(&ra.in_on())).then(rb.col.cmp(&ra.col))
        });
        Self::from_greatest_first(kind, idx)
    }

    fn from_greatest_first(kind: VariableOrderKind, greatest_first: Vec<usize>) -> Self {
        let mut rank = vec![0; greatest_first.len()];
        for (pos, &i) in greatest_first.iter().enumerate() {
            rank[i] = pos;
        }
        Self { kind, greatest_first, rank }
    }

    pub fn kind(&self) -> VariableOrderKind {
        self.kind
    }

    pub fn greatest_first(&self) -> &[usize] {
        &self.greatest_first
    }

    /// Compare two variables by index.
    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        self.rank[b].cmp(&self.rank[a])
    }

    /// Every defining constraint that must hold for `alpha > beta`.
    pub fn violations(&self, vars: &VariableSet) -> Vec<(Root, Root)> {
        let mut bad = Vec::new();
        for a in 0..vars.len() {
            for b in 0..vars.len() {
                if a == b {
                    continue;
                }
                let (ra, rb) = (vars.root(a), vars.root(b));
                if !ra.in_on() {
                    continue;
                }
                let mut must_be_greater = ra.row == rb.row && (!rb.in_on() || ra.col > rb.col);
                let mut must_be_smaller = false;
                if ra.row < rb.row {
                    match self.kind {
                        VariableOrderKind::Order1 => must_be_greater = true,
                        VariableOrderKind::Order2 => must_be_smaller = true,
                    }
                }
                let got = self.compare(a, b);
                if (must_be_greater && got != Ordering::Greater) || (must_be_smaller && got != Ordering::Less) {
                    bad.push((ra, rb));
                }
            }
        }
        bad
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TermOrderKind {
    /// Homogeneous lexicographic with respect to order 1.
    HLex,
    /// Homogeneous reverse lexicographic with respect to order 2.
    RLex,
    /// Degree, then projection rows, then column sequences at the lowest row.
    DiagProj,
    /// Degree-lexicographic with respect to a caller-supplied ranking.
    DegLex,
}

impl TermOrderKind {
    pub fn parse(s: &str) -> Result<Self, OrderError> {
        match s {
            "hlex" => Ok(Self::HLex),
            "rlex" => Ok(Self::RLex),
            "diagproj" => Ok(Self::DiagProj),
            other => Err(OrderError::UnknownOrder(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::HLex => "hlex",
            Self::RLex => "rlex",
            Self::DiagProj => "diagproj",
            Self::DegLex => "deglex",
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct DiagVar {
    row: usize,
    col: usize,
    col_star: usize,
}

/// A term order on monomials in `OR(v)`.
#[derive(Debug, Clone)]
pub struct TermOrder {
    kind: TermOrderKind,
    nvars: usize,
    greatest_first: Vec<usize>,
    diag: Vec<DiagVar>,
}

impl TermOrder {
    pub fn new(kind: TermOrderKind, sys: &RootSystem, vars: &VariableSet) -> Self {
        let greatest_first = match kind {
            TermOrderKind::HLex | TermOrderKind::DegLex => {
                VariableOrder::new(vars, VariableOrderKind::Order1).greatest_first
            }
            TermOrderKind::RLex => VariableOrder::new(vars, VariableOrderKind::Order2).greatest_first,
            TermOrderKind::DiagProj => (0..vars.len()).collect(),
        };
        let diag = vars
            .roots()
            .iter()
            .map(|r| DiagVar { row: r.row, col: r.col, col_star: sys.star(r.col) })
            .collect();
        Self { kind, nvars: vars.len(), greatest_first, diag }
    }

    pub fn hlex(sys: &RootSystem, vars: &VariableSet) -> Self {
        Self::new(TermOrderKind::HLex, sys, vars)
    }

    pub fn rlex(sys: &RootSystem, vars: &VariableSet) -> Self {
        Self::new(TermOrderKind::RLex, sys, vars)
    }

    pub fn diagproj(sys: &RootSystem, vars: &VariableSet) -> Self {
        Self::new(TermOrderKind::DiagProj, sys, vars)
    }

    /// Degree-lexicographic order from an explicit ranking of `OR(v)`,
    /// greatest first.
    pub fn deglex(sys: &RootSystem, vars: &VariableSet, ranking: &[Root]) -> Result<Self, OrderError> {
        let mut seen = vec![false; vars.len()];
        let mut greatest_first = Vec::with_capacity(vars.len());
        for r in ranking {
            let i = vars.index_of(r).ok_or(OrderError::NotAVariable(*r))?;
            if seen[i] {
                return Err(OrderError::BadRanking(format!("{r} listed twice")));
            }
            seen[i] = true;
            greatest_first.push(i);
        }
        if greatest_first.len() != vars.len() {
            return Err(OrderError::BadRanking(format!(
                "{} of {} variables ranked",
                greatest_first.len(),
                vars.len()
            )));
        }
        let mut order = Self::new(TermOrderKind::DegLex, sys, vars);
        order.greatest_first = greatest_first;
        Ok(order)
    }

    pub fn kind(&self) -> TermOrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, OrderError> {
        if a.nvars() != self.nvars || b.nvars() != self.nvars {
            return Err(OrderError::AmbientMismatch(a.nvars(), b.nvars()));
        }
        Ok(self.compare(a, b))
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.degree().cmp(&b.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            TermOrderKind::HLex | TermOrderKind::DegLex => {
                for &i in &self.greatest_first {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            TermOrderKind::RLex => {
                for &i in self.greatest_first.iter().rev() {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
            TermOrderKind::DiagProj => self.compare_diagonal(ea, eb),
        }
    }

    fn compare_diagonal(&self, ea: &[u16], eb: &[u16]) -> Ordering {
        let mut a = ea.to_vec();
        let mut b = eb.to_vec();
        loop {
            if a == b {
                return Ordering::Equal;
            }
            let ra = self.projection_rows(&a);
            let rb = self.projection_rows(&b);
            for (x, y) in ra.iter().zip(&rb) {
                if x != y {
                    return x.cmp(y);
                }
            }
            // the lowest projection is always a horizontal one
            let low = *ra.last().expect("equal nonzero degree");
            let ca = self.columns_in_row(&a, low);
            let cb = self.columns_in_row(&b, low);
            if let Some((x, y)) = ca.iter().zip(&cb).find(|(x, y)| x != y) {
                let x_on = low > *x;
                let y_on = low > *y;
                return match (x_on, y_on) {
                    (false, false) => y.cmp(x),
                    (true, false) => Ordering::Greater,
                    (false, true) => Ordering::Less,
                    (true, true) => x.cmp(y),
                };
            }
            for (i, dv) in self.diag.iter().enumerate() {
                if dv.row == low {
                    a[i] = 0;
                    b[i] = 0;
                }
            }
        }
    }

    fn projection_rows(&self, e: &[u16]) -> Vec<usize> {
        let mut rows = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                rows.push(self.diag[i].row);
                rows.push(self.diag[i].col_star);
            }
        }
        rows.sort_unstable_by(|x, y| y.cmp(x));
        rows
    }

    fn columns_in_row(&self, e: &[u16], row: usize) -> Vec<usize> {
        let mut cols = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            if self.diag[i].row == row {
                cols.extend(std::iter::repeat_n(self.diag[i].col, k as usize));
            }
        }
        cols.sort_unstable_by(|x, y| y.cmp(x));
        cols
    }

    /// Sort descending (greatest first).
    pub fn sort_desc(&self, monomials: &mut [Monomial]) {
        monomials.sort_by(|a, b| self.compare(b, a));
    }
}

/// A deglex order with `d > j > a > (rest)` style prefixes: the listed roots
/// first, in order, followed by the remaining variables in `(row, col)` order.
pub fn deglex_counterexample_order(
    sys: &RootSystem,
    vars: &VariableSet,
    prefix: &[Root],
) -> Result<TermOrder, OrderError> {
    let mut ranking: Vec<Root> = prefix.to_vec();
    for r in vars.roots() {
        if !prefix.contains(r) {
            ranking.push(*r);
        }
    }
    TermOrder::deglex(sys, vars, &ranking)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::monomials_of_degree;
    use crate::lattice::{enumerate_isotropic, IsotropicIndex};

    fn example() -> (RootSystem, VariableSet) {
        let sys = RootSystem::new(IsotropicIndex::bottom(5).unwrap());
        let vars = VariableSet::new(&sys);
        (sys, vars)
    }

    #[test]
    fn alias_parser_round_trips() {
        use crate::algebra::field::Rational;
        let (sys, vars) = example();
        let ctx = PolyCtx::<Rational>::new((), vars.len());
        let order = TermOrder::hlex(&sys, &vars);
        let p = vars.parse_alias_polynomial(&ctx, "di - cf + bg").unwrap();
        assert_eq!(vars.format_polynomial(&p, &order, true), "di - cf + bg");
        let q = vars.parse_alias_polynomial(&ctx, "-2ag+3+ce").unwrap();
        assert_eq!(q.num_terms(), 3);
        assert!(vars.parse_alias_polynomial(&ctx, "dz").is_err());
        assert!(vars.parse_alias_polynomial(&ctx, "d--i").is_err());
        assert!(vars.parse_alias_polynomial(&ctx, "0").unwrap().is_zero());
    }

    #[test]
    fn aliases_follow_row_major_order() {
        let (_, vars) = example();
        let names: String = (0..10).map(|i| vars.name(i, true)).collect();
        assert_eq!(names, "abcdefghij");
        let d = vars.root(vars.alias_index("d").unwrap());
        assert_eq!((d.row, d.col), (6, 4));
        let j = vars.root(vars.alias_index("j").unwrap());
        assert_eq!((j.row, j.col), (9, 1));
    }

    #[test]
    fn variable_orders_satisfy_constraints() {
        for d in 2..=6 {
            for v in enumerate_isotropic(d).unwrap() {
                let sys = RootSystem::new(v);
                let vars = VariableSet::new(&sys);
                for kind in [VariableOrderKind::Order1, VariableOrderKind::Order2] {
                    let ord = VariableOrder::new(&vars, kind);
                    assert!(ord.violations(&vars).is_empty(), "{kind:?} {}", sys.v());
                }
            }
        }
    }

    #[test]
    fn example_orders_on_variables() {
        let (_, vars) = example();
        let o1: String =
            VariableOrder::new(&vars, VariableOrderKind::Order1).greatest_first().iter().map(|&i| vars.name(i, true)).collect();
        assert_eq!(o1, "dcbagfeihj");
        let o2: String =
            VariableOrder::new(&vars, VariableOrderKind::Order2).greatest_first().iter().map(|&i| vars.name(i, true)).collect();
        assert_eq!(o2, "jihgfedcba");
    }

    #[test]
    fn di_is_greatest_under_all_three() {
        let (sys, vars) = example();
        let m = |w: &str| vars.alias_monomial(w).unwrap();
        for kind in [TermOrderKind::HLex, TermOrderKind::RLex, TermOrderKind::DiagProj] {
            let ord = TermOrder::new(kind, &sys, &vars);
            assert_eq!(ord.compare(&m("di"), &m("cf")), Ordering::Greater, "{kind:?}");
            assert_eq!(ord.compare(&m("di"), &m("bg")), Ordering::Greater, "{kind:?}");
            assert_eq!(ord.compare(&m("di"), &m("di")), Ordering::Equal);
            assert_eq!(ord.compare(&m("a"), &m("bg")), Ordering::Less);
        }
    }

    #[test]
    fn deglex_ranking_validation() {
        let (sys, vars) = example();
        let r = |w: &str| vars.root(vars.alias_index(w).unwrap());
        let ord = deglex_counterexample_order(&sys, &vars, &[r("d"), r("j"), r("a")]).unwrap();
        let m = |w: &str| vars.alias_monomial(w).unwrap();
        assert_eq!(ord.compare(&m("agi"), &m("cfh")), Ordering::Greater);
        assert!(TermOrder::deglex(&sys, &vars, &[r("d"), r("d")]).is_err());
        assert!(TermOrder::deglex(&sys, &vars, &[r("d")]).is_err());
        assert_eq!(ord.compare(&Monomial::one(10), &m("a")), Ordering::Less);
    }

    #[test]
    fn order1_ranking_agrees_with_hlex_on_squarefree() {
        let (sys, vars) = example();
        let hlex = TermOrder::hlex(&sys, &vars);
        let ranking: Vec<Root> = VariableOrder::new(&vars, VariableOrderKind::Order1)
            .greatest_first()
            .iter()
            .map(|&i| vars.root(i))
            .collect();
        let deglex = TermOrder::deglex(&sys, &vars, &ranking).unwrap();
        for k in 0..=3 {
            let ms: Vec<_> = monomials_of_degree(10, k).into_iter().filter(Monomial::is_squarefree).collect();
            for a in &ms {
                for b in &ms {
                    assert_eq!(hlex.compare(a, b), deglex.compare(a, b));
                }
            }
        }
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let (sys, vars) = example();
        let ord = TermOrder::hlex(&sys, &vars);
        assert!(matches!(
            ord.try_compare(&Monomial::one(3), &Monomial::one(10)),
            Err(OrderError::AmbientMismatch(3, 10))
        ));
    }
}
