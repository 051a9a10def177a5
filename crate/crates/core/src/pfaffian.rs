//! Matrices that are skew-symmetric along the anti-diagonal, their
//! Pfaffians, the generic patch matrix around `e^v` and the Pfaffian
//! generators `f_tau`.
//!
//! For a `2n x 2n` matrix write `k* = 2n + 1 - k`; the matrix is anti-skew
//! when `a[i][j] = -a[j*][i*]`. Deleting rows `R` and columns `R*` from such
//! a matrix leaves another anti-skew matrix, so a sub-Pfaffian is determined
//! by the set of surviving rows alone. All recursions below memoize on that
//! row set as a bitmask.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::algebra::field::{Field, Ring};
use crate::algebra::order::VariableSet;
use crate::algebra::poly::{Monomial, PolyCtx, Polynomial};
use crate::lattice::{enumerate_isotropic, IsotropicIndex, LatticeError, Root, RootSystem};

/// Largest half-size accepted for symbolic (polynomial) Pfaffians.
pub const MAX_SYMBOLIC_N: usize = 6;
/// Largest half-size for any Pfaffian; rows are tracked in a `u64`.
pub const MAX_N: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfaffianError {
    #[error("matrix is {rows}x{cols}; expected a square matrix of even size")]
    Shape { rows: usize, cols: usize },
    #[error("entries ({i},{j}) and ({sj},{si}) are not negatives of each other")]
    NotAntiSkew { i: usize, j: usize, sj: usize, si: usize },
    #[error("index {index} is outside 1..={size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("indices must satisfy a != j and a != k (got a={a}, j={j}, k={k})")]
    IndexCollision { a: usize, j: usize, k: usize },
    #[error("half-size {n} exceeds the cap of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("v = {v} is not below w = {w} in the Bruhat order")]
    NotBelow { v: String, w: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A `2n x 2n` matrix with `a[i][j] = -a[j*][i*]`, together with the
/// context needed to create ring constants.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiSkewMatrix<R: Ring> {
    n: usize,
    ctx: R::Ctx,
    rows: Vec<Vec<R>>,
}

impl<R: Ring> AntiSkewMatrix<R> {
    /// Validates shape and the anti-skew rule.
    pub fn new(ctx: R::Ctx, rows: Vec<Vec<R>>) -> Result<Self, PfaffianError> {
        let size = rows.len();
        if size % 2 == 1 {
            return Err(PfaffianError::Shape { rows: size, cols: rows.first().map_or(0, Vec::len) });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(PfaffianError::Shape { rows: size, cols: bad.len() });
        }
        if size / 2 > MAX_N {
            return Err(PfaffianError::TooLarge { n: size / 2, max: MAX_N });
        }
        let star = |k: usize| size + 1 - k;
        for i in 1..=size {
            for j in 1..=size {
                let (si, sj) = (star(i), star(j));
                if rows[i - 1][j - 1] != rows[sj - 1][si - 1].neg() {
                    return Err(PfaffianError::NotAntiSkew { i, j, sj, si });
                }
            }
        }
        Ok(Self { n: size / 2, ctx, rows })
    }

    /// Builds the matrix from its independent entries, those strictly above
    /// the anti-diagonal (`i + j < 2n + 1`).
    pub fn from_generic<G: FnMut(usize, usize) -> R>(ctx: R::Ctx, n: usize, mut generic: G) -> Self {
        let size = 2 * n;
        let mut rows = vec![vec![R::zero(&ctx); size]; size];
        for i in 1..=size {
            for j in 1..=size {
                if i + j < size + 1 {
                    let x = generic(i, j);
                    rows[size - j][size - i] = x.neg();
                    rows[i - 1][j - 1] = x;
                }
            }
        }
        Self { n, ctx, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        2 * self.n
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.rows
    }

    /// 1-based entry.
    pub fn entry(&self, i: usize, j: usize) -> &R {
        &self.rows[i - 1][j - 1]
    }

    pub fn star(&self, k: usize) -> usize {
        2 * self.n + 1 - k
    }

    fn full_mask(&self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    fn check_index(&self, k: usize) -> Result<(), PfaffianError> {
        if k == 0 || k > self.size() {
            return Err(PfaffianError::IndexOutOfRange { index: k, size: self.size() });
        }
        Ok(())
    }

    /// The square submatrix with the given (1-based) rows and columns
    /// deleted, as a plain dense matrix.
    pub fn minor(&self, deleted_rows: &[usize], deleted_cols: &[usize]) -> Vec<Vec<R>> {
        (1..=self.size())
            .filter(|i| !deleted_rows.contains(i))
            .map(|i| {
                (1..=self.size())
                    .filter(|j| !deleted_cols.contains(j))
                    .map(|j| self.entry(i, j).clone())
                    .collect()
            })
            .collect()
    }
}

fn sign(i: usize, j: usize) -> i32 {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Greater => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

fn signed<R: Ring>(x: R, s: i32) -> R {
    if s < 0 {
        x.neg()
    } else {
        x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Strategy {
    First,
    Last,
}

struct PfaffianMemo<'a, R: Ring> {
    a: &'a AntiSkewMatrix<R>,
    strategy: Strategy,
    memo: HashMap<u64, R>,
}

impl<'a, R: Ring> PfaffianMemo<'a, R> {
    fn new(a: &'a AntiSkewMatrix<R>, strategy: Strategy) -> Self {
        Self { a, strategy, memo: HashMap::new() }
    }

    /// Pfaffian of the submatrix on the row set `mask` (columns are the
    /// stars of those rows).
    fn pf(&mut self, mask: u64) -> R {
        if mask == 0 {
            return R::one(&self.a.ctx);
        }
        if let Some(q) = self.memo.get(&mask) {
            return q.clone();
        }
        let rows: Vec<usize> = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        let m = match self.strategy {
            Strategy::First => 1,
            Strategy::Last => rows.len(),
        };
        let q = self.expand_row(&rows, mask, m);
        self.memo.insert(mask, q.clone());
        q
    }

    /// One step of the expansion with local row `m` held fixed. The local
    /// entry `(i, j*)` is `A[r_i][star(r_j)]`.
    fn expand_row(&mut self, rows: &[usize], mask: u64, m: usize) -> R {
        let size = rows.len();
        let mut q = R::zero(&self.a.ctx);
        for j in 1..=size {
            if j == m {
                continue;
            }
            q = q.add(&self.term(rows, mask, m, j));
        }
        q
    }

    fn expand_col(&mut self, rows: &[usize], mask: u64, j: usize) -> R {
        let size = rows.len();
        let mut q = R::zero(&self.a.ctx);
        for m in 1..=size {
            if m == j {
                continue;
            }
            q = q.add(&self.term(rows, mask, m, j));
        }
        q
    }

    /// `(-1)^(m + j*) sign(mj) a_{m,j*} Q_{mj,j*m*}` in local indices.
    fn term(&mut self, rows: &[usize], mask: u64, m: usize, j: usize) -> R {
        let size = rows.len();
        let (rm, rj) = (rows[m - 1], rows[j - 1]);
        let entry = self.a.entry(rm, self.a.star(rj));
        if entry.is_zero() {
            return R::zero(&self.a.ctx);
        }
        let j_star = size + 1 - j;
        let parity = if (m + j_star).is_multiple_of(2) { 1 } else { -1 };
        let sub = self.pf(mask & !(1u64 << (rm - 1)) & !(1u64 << (rj - 1)));
        signed(entry.mul(&sub), parity * sign(m, j))
    }
}

/// Pfaffian by expansion along row `m` (default 1).
pub fn pfaffian<R: Ring>(a: &AntiSkewMatrix<R>, m: Option<usize>) -> Result<R, PfaffianError> {
    let m = m.unwrap_or(1);
    if a.n == 0 {
        if m != 1 {
            a.check_index(m)?;
        }
        return Ok(R::one(&a.ctx));
    }
    a.check_index(m)?;
    let mut memo = PfaffianMemo::new(a, Strategy::First);
    let rows: Vec<usize> = (1..=a.size()).collect();
    Ok(memo.expand_row(&rows, a.full_mask(), m))
}

/// Pfaffian by the column form of the expansion: `j` fixed, summing over `m`.
pub fn pfaffian_by_column<R: Ring>(a: &AntiSkewMatrix<R>, j: usize) -> Result<R, PfaffianError> {
    if a.n == 0 {
        return Ok(R::one(&a.ctx));
    }
    a.check_index(j)?;
    let mut memo = PfaffianMemo::new(a, Strategy::First);
    let rows: Vec<usize> = (1..=a.size()).collect();
    Ok(memo.expand_col(&rows, a.full_mask(), j))
}

/// Pfaffian expanding every sub-Pfaffian along its last row instead of its
/// first; a second, independent recursion.
pub fn pfaffian_expand_last<R: Ring>(a: &AntiSkewMatrix<R>) -> R {
    let mut memo = PfaffianMemo::new(a, Strategy::Last);
    memo.pf(a.full_mask())
}

/// `Q_{R}` with the given rows (and their stars as columns) deleted.
pub fn sub_pfaffian<R: Ring>(a: &AntiSkewMatrix<R>, deleted_rows: &[usize]) -> Result<R, PfaffianError> {
    let mut mask = a.full_mask();
    for &r in deleted_rows {
        a.check_index(r)?;
        mask &= !(1u64 << (r - 1));
    }
    let mut memo = PfaffianMemo::new(a, Strategy::First);
    Ok(memo.pf(mask))
}

/// `(2n - 1)(2n - 3)...3.1`, with the empty product equal to 1.
pub fn pfaffian_term_count(n: usize) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

/// Determinant by Laplace expansion along successive rows, memoized on the
/// set of columns still available. Works over any commutative ring.
pub fn determinant<R: Ring>(ctx: &R::Ctx, rows: &[Vec<R>]) -> Result<R, PfaffianError> {
    let size = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != size) {
        return Err(PfaffianError::Shape { rows: size, cols: bad.len() });
    }
    if size > 63 {
        return Err(PfaffianError::TooLarge { n: size, max: 63 });
    }
    fn rec<R: Ring>(ctx: &R::Ctx, rows: &[Vec<R>], cols: u64, memo: &mut HashMap<u64, R>) -> R {
        if cols == 0 {
            return R::one(ctx);
        }
        if let Some(d) = memo.get(&cols) {
            return d.clone();
        }
        let row = rows.len() - cols.count_ones() as usize;
        let mut total = R::zero(ctx);
        let mut position = 0;
        for c in 0..rows.len() {
            if cols >> c & 1 == 0 {
                continue;
            }
            let x = &rows[row][c];
            if !x.is_zero() {
                let sub = rec(ctx, rows, cols & !(1u64 << c), memo);
                total = total.add(&signed(x.mul(&sub), if position % 2 == 0 { 1 } else { -1 }));
            }
            position += 1;
        }
        memo.insert(cols, total.clone());
        total
    }
    let mut memo = HashMap::new();
    Ok(rec(ctx, rows, (1u64 << size) - 1, &mut memo))
}

/// Checks `D = (-1)^n Q^2`.
pub fn verify_det_identity<R: Ring>(a: &AntiSkewMatrix<R>) -> Result<bool, PfaffianError> {
    let d = determinant(&a.ctx, &a.rows)?;
    let q = pfaffian(a, None)?;
    let q2 = q.mul(&q);
    Ok(d == signed(q2, if a.n.is_multiple_of(2) { 1 } else { -1 }))
}

/// Checks `D_{aj,k*a*} = (-1)^(n-1) Q_{aj,j*a*} Q_{ak,k*a*}`.
pub fn verify_minor_identity<R: Ring>(
    a: &AntiSkewMatrix<R>,
    ai: usize,
    j: usize,
    k: usize,
) -> Result<bool, PfaffianError> {
    for idx in [ai, j, k] {
        a.check_index(idx)?;
    }
    if ai == j || ai == k {
        return Err(PfaffianError::IndexCollision { a: ai, j, k });
    }
    let minor = a.minor(&[ai, j], &[a.star(k), a.star(ai)]);
    let d = determinant(&a.ctx, &minor)?;
    let qj = sub_pfaffian(a, &[ai, j])?;
    let qk = sub_pfaffian(a, &[ai, k])?;
    let rhs = signed(qj.mul(&qk), if (a.n - 1).is_multiple_of(2) { 1 } else { -1 });
    Ok(d == rhs)
}

/// A random anti-skew matrix over a field, independent entries drawn from
/// `-bound..=bound`.
pub fn random_anti_skew<F: Field, G: Rng>(ctx: &F::Ctx, n: usize, bound: i64, rng: &mut G) -> AntiSkewMatrix<F> {
    AntiSkewMatrix::from_generic(ctx.clone(), n, |_, _| F::from_i64(ctx, rng.gen_range(-bound..=bound)))
}

/// The fully generic symbolic matrix: one variable per position strictly
/// above the anti-diagonal, `n(2n - 1)` in all.
pub fn generic_anti_skew<F: Field>(field: &F::Ctx, n: usize) -> Result<AntiSkewMatrix<Polynomial<F>>, PfaffianError> {
    if n > MAX_SYMBOLIC_N {
        return Err(PfaffianError::TooLarge { n, max: MAX_SYMBOLIC_N });
    }
    let ctx = PolyCtx::<F>::new(field.clone(), 2 * n * n - n);
    let mut next = 0;
    Ok(AntiSkewMatrix::from_generic(ctx.clone(), n, |_, _| {
        next += 1;
        ctx.var(next - 1)
    }))
}

/// One entry of the patch matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatchEntry {
    Zero,
    One,
    Var { root: Root, negated: bool },
}

impl fmt::Display for PatchEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatchEntry::Zero => write!(f, "0"),
            PatchEntry::One => write!(f, "1"),
            PatchEntry::Var { root, negated } => {
                write!(f, "{}X[{},{}]", if *negated { "-" } else { "" }, root.row, root.col)
            }
        }
    }
}

/// The generic `2d x d` matrix whose column span is a point of the affine
/// patch around `e^v`. Rows are `1..=2d`, columns are the entries of `v`.
#[derive(Debug, Clone)]
pub struct PatchMatrix {
    sys: RootSystem,
    entries: Vec<Vec<PatchEntry>>,
}

pub fn build_patch_matrix(v: &IsotropicIndex) -> PatchMatrix {
    let sys = RootSystem::new(v.clone());
    let two_d = sys.dim().two_d();
    let mut entries = Vec::with_capacity(two_d);
    for r in 1..=two_d {
        let row = sys
            .cols()
            .iter()
            .map(|&c| {
                if v.contains(r) {
                    return if r == c { PatchEntry::One } else { PatchEntry::Zero };
                }
                let sc = sys.star(c);
                if r < sc {
                    PatchEntry::Var { root: sys.root(r, c).expect("root"), negated: false }
                } else if r == sc {
                    PatchEntry::Zero
                } else {
                    PatchEntry::Var { root: sys.root(sc, sys.star(r)).expect("root"), negated: true }
                }
            })
            .collect();
        entries.push(row);
    }
    PatchMatrix { sys, entries }
}

impl PatchMatrix {
    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn v(&self) -> &IsotropicIndex {
        self.sys.v()
    }

    /// Entry in row `r` and the column labelled `c` (an entry of `v`).
    pub fn entry(&self, r: usize, c: usize) -> Result<PatchEntry, PfaffianError> {
        let two_d = self.sys.dim().two_d();
        if r == 0 || r > two_d {
            return Err(PfaffianError::IndexOutOfRange { index: r, size: two_d });
        }
        let j = self.sys.cols().iter().position(|&x| x == c).ok_or(PfaffianError::Lattice(
            LatticeError::NotARoot { row: r, col: c, v: self.sys.cols().to_vec() },
        ))?;
        Ok(self.entries[r - 1][j])
    }

    pub fn rows(&self) -> &[Vec<PatchEntry>] {
        &self.entries
    }

    /// Every variable that occurs, i.e. `OR(v)`, sorted.
    pub fn variables(&self) -> Vec<Root> {
        let mut roots: Vec<Root> = self
            .entries
            .iter()
            .flatten()
            .filter_map(|e| match e {
                PatchEntry::Var { root, .. } => Some(*root),
                _ => None,
            })
            .collect();
        roots.sort();
        roots.dedup();
        roots
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> =
            self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        serde_json::json!({ "v": self.sys.v(), "columns": self.sys.cols(), "rows": rows })
    }

    fn polynomial<F: Field>(&self, e: PatchEntry, vars: &VariableSet, ctx: &PolyCtx<F>) -> Polynomial<F> {
        match e {
            PatchEntry::Zero => Polynomial::zero(ctx.nvars),
            PatchEntry::One => ctx.constant(1),
            PatchEntry::Var { root, negated } => {
                let i = vars.index_of(&root).expect("patch variable lies in OR(v)");
                let c = F::from_i64(&ctx.field, if negated { -1 } else { 1 });
                Polynomial::term(c, Monomial::var(ctx.nvars, i))
            }
        }
    }

    /// The symbolic submatrix on the given rows and columns, both ascending.
    pub fn submatrix<F: Field>(
        &self,
        rows: &[usize],
        cols: &[usize],
        vars: &VariableSet,
        ctx: &PolyCtx<F>,
    ) -> Result<Vec<Vec<Polynomial<F>>>, PfaffianError> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| Ok(self.polynomial(self.entry(r, c)?, vars, ctx))).collect())
            .collect()
    }
}

impl fmt::Display for PatchMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        write!(f, "{:>4} ", "")?;
        for c in self.sys.cols() {
            write!(f, " {c:>width$}")?;
        }
        writeln!(f)?;
        for (i, row) in cells.iter().enumerate() {
            write!(f, "{:>4} ", i + 1)?;
            for cell in row {
                write!(f, " {cell:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The anti-skew submatrix of the patch matrix on rows `tau \ v` and
/// columns `v \ tau`.
pub fn f_tau_matrix<F: Field>(
    patch: &PatchMatrix,
    tau: &IsotropicIndex,
    vars: &VariableSet,
    ctx: &PolyCtx<F>,
) -> Result<AntiSkewMatrix<Polynomial<F>>, PfaffianError> {
    let v = patch.v();
    if tau.d() != v.d() {
        return Err(LatticeError::DimensionMismatch(v.d(), tau.d()).into());
    }
    let rows = tau.tuple().difference(v.tuple());
    let cols = v.tuple().difference(tau.tuple());
    let sub = patch.submatrix(&rows, &cols, vars, ctx)?;
    AntiSkewMatrix::new(ctx.clone(), sub).map_err(|e| {
        PfaffianError::Internal(format!("submatrix for tau = {tau} is not anti-skew: {e}"))
    })
}

/// `f_tau`: the Pfaffian of the submatrix of the patch matrix on rows
/// `tau \ v` and columns `v \ tau`.
pub fn f_tau<F: Field>(
    patch: &PatchMatrix,
    tau: &IsotropicIndex,
    vars: &VariableSet,
    ctx: &PolyCtx<F>,
) -> Result<Polynomial<F>, PfaffianError> {
    let m = f_tau_matrix(patch, tau, vars, ctx)?;
    if m.n() > MAX_SYMBOLIC_N {
        return Err(PfaffianError::TooLarge { n: m.n(), max: MAX_SYMBOLIC_N });
    }
    pfaffian(&m, None)
}

/// A generator `f_tau` tagged with its index.
#[derive(Debug, Clone)]
pub struct Generator<F: Field> {
    pub tau: IsotropicIndex,
    pub poly: Polynomial<F>,
}

fn collect_generators<F: Field>(
    v: &IsotropicIndex,
    w: &IsotropicIndex,
    field: &F::Ctx,
    require_above_v: bool,
) -> Result<Vec<Generator<F>>, PfaffianError> {
    if !v.leq(w)? {
        return Err(PfaffianError::NotBelow { v: v.to_string(), w: w.to_string() });
    }
    let patch = build_patch_matrix(v);
    let vars = VariableSet::new(patch.system());
    let ctx = PolyCtx::<F>::new(field.clone(), vars.len());
    let mut out = Vec::new();
    for tau in enumerate_isotropic(v.d())? {
        if tau.leq(w)? || (require_above_v && !v.leq(&tau)?) {
            continue;
        }
        let poly = f_tau(&patch, &tau, &vars, &ctx)?;
        out.push(Generator { tau, poly });
    }
    Ok(out)
}

/// `f_tau` for every `tau` with `v <= tau` and `tau` not below `w`, in
/// lexicographic order of `tau`.
pub fn generators<F: Field>(
    v: &IsotropicIndex,
    w: &IsotropicIndex,
    field: &F::Ctx,
) -> Result<Vec<Generator<F>>, PfaffianError> {
    collect_generators(v, w, field, true)
}

/// `f_tau` for every `tau` not below `w`, without the `v <= tau` filter.
pub fn full_generators<F: Field>(
    v: &IsotropicIndex,
    w: &IsotropicIndex,
    field: &F::Ctx,
) -> Result<Vec<Generator<F>>, PfaffianError> {
    collect_generators(v, w, field, false)
}

/// The two-block `w = (2r-1, ..., d, 2d-2r+3, ..., 2d)`.
pub fn special_case_w(d: usize, r: usize) -> Result<IsotropicIndex, PfaffianError> {
    if r == 0 || 2 * r > d + 1 {
        return Err(PfaffianError::IndexOutOfRange { index: r, size: d.div_ceil(2) });
    }
    let mut entries: Vec<usize> = (2 * r - 1..=d).collect();
    entries.extend(2 * d + 3 - 2 * r..=2 * d);
    Ok(IsotropicIndex::new(d, entries)?)
}

/// All degree-`r` Pfaffians of the bottom `d x d` block of the patch matrix
/// for `v = (1, ..., d)`: for each `2r`-subset `S` of the block's rows, the
/// Pfaffian of the block restricted to rows `S` and the mirrored columns.
pub fn bottom_block_pfaffians<F: Field>(d: usize, r: usize, field: &F::Ctx) -> Result<Vec<Polynomial<F>>, PfaffianError> {
    let v = IsotropicIndex::bottom(d)?;
    let patch = build_patch_matrix(&v);
    let vars = VariableSet::new(patch.system());
    let ctx = PolyCtx::<F>::new(field.clone(), vars.len());
    // the block in local coordinates 1..=d, local star k -> d + 1 - k
    let block: Vec<Vec<Polynomial<F>>> = patch.submatrix(&((d + 1)..=(2 * d)).collect::<Vec<_>>(), v.entries(), &vars, &ctx)?;
    let mut out = Vec::new();
    for mask in 0u32..(1 << d) {
        if mask.count_ones() as usize != 2 * r {
            continue;
        }
        let rows: Vec<usize> = (1..=d).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let mut cols: Vec<usize> = rows.iter().map(|&i| d + 1 - i).collect();
        cols.sort_unstable();
        let sub: Vec<Vec<Polynomial<F>>> =
            rows.iter().map(|&i| cols.iter().map(|&j| block[i - 1][j - 1].clone()).collect()).collect();
        let m = AntiSkewMatrix::new(ctx.clone(), sub)?;
        out.push(pfaffian(&m, None)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rational};
    use crate::algebra::order::TermOrder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn int_matrix(rows: Vec<Vec<i64>>) -> AntiSkewMatrix<Rational> {
        AntiSkewMatrix::new((), rows.into_iter().map(|r| r.into_iter().map(Rational::integer).collect()).collect())
            .unwrap()
    }

    #[test]
    fn empty_and_two_by_two() {
        let empty = AntiSkewMatrix::<Rational>::new((), vec![]).unwrap();
        assert_eq!(pfaffian(&empty, None).unwrap(), Rational::integer(1));
        let m = int_matrix(vec![vec![5, 0], vec![0, -5]]);
        assert_eq!(pfaffian(&m, None).unwrap(), Rational::integer(5));
        assert_eq!(pfaffian(&m, Some(2)).unwrap(), Rational::integer(5));
        assert_eq!(determinant(&(), m.rows()).unwrap(), Rational::integer(-25));
    }

    #[test]
    fn rejects_malformed() {
        let bad = vec![vec![Rational::integer(1), Rational::integer(1)], vec![Rational::integer(0), Rational::integer(-1)]];
        assert!(matches!(AntiSkewMatrix::new((), bad), Err(PfaffianError::NotAntiSkew { .. })));
        let odd = vec![vec![Rational::integer(0)]];
        assert!(matches!(AntiSkewMatrix::new((), odd), Err(PfaffianError::Shape { .. })));
        let m = int_matrix(vec![vec![5, 0], vec![0, -5]]);
        assert!(matches!(pfaffian(&m, Some(3)), Err(PfaffianError::IndexOutOfRange { .. })));
    }

    #[test]
    fn four_by_four_symbolic() {
        let pf = PrimeField::new(101).unwrap();
        let a = generic_anti_skew::<crate::algebra::field::Fp>(&pf, 2).unwrap();
        let q = pfaffian(&a, None).unwrap();
        assert_eq!(q.num_terms(), 3);
        assert!(q.is_homogeneous());
    }

    #[test]
    fn term_counts() {
        assert_eq!(pfaffian_term_count(0), 1);
        assert_eq!(pfaffian_term_count(2), 3);
        assert_eq!(pfaffian_term_count(4), 105);
        for n in 0..=4 {
            let a = generic_anti_skew::<Rational>(&(), n).unwrap();
            assert_eq!(pfaffian(&a, None).unwrap().num_terms() as u128, pfaffian_term_count(n));
        }
        assert!(matches!(generic_anti_skew::<Rational>(&(), 7), Err(PfaffianError::TooLarge { .. })));
    }

    #[test]
    fn expansions_agree_and_square_to_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            for _ in 0..10 {
                let a = random_anti_skew::<Rational, _>(&(), n, 9, &mut rng);
                let q = pfaffian(&a, None).unwrap();
                for m in 1..=2 * n {
                    assert_eq!(pfaffian(&a, Some(m)).unwrap(), q);
                    assert_eq!(pfaffian_by_column(&a, m).unwrap(), q);
                }
                assert_eq!(pfaffian_expand_last(&a), q);
                assert!(verify_det_identity(&a).unwrap());
                for ai in 1..=2 * n {
                    for j in 1..=2 * n {
                        for k in 1..=2 * n {
                            if ai != j && ai != k {
                                assert!(verify_minor_identity(&a, ai, j, k).unwrap());
                            }
                        }
                    }
                }
            }
        }
        let a = random_anti_skew::<Rational, _>(&(), 2, 9, &mut rng);
        assert!(matches!(verify_minor_identity(&a, 1, 1, 2), Err(PfaffianError::IndexCollision { .. })));
    }

    #[test]
    fn determinant_oracle_small_cases() {
        let m: Vec<Vec<Rational>> =
            vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]].into_iter().map(|r| r.into_iter().map(Rational::integer).collect()).collect();
        // 2(12 - 1) - 1(4 - 0) = 18
        assert_eq!(determinant(&(), &m).unwrap(), Rational::integer(18));
        assert_eq!(determinant::<Rational>(&(), &[]).unwrap(), Rational::integer(1));
    }

    #[test]
    fn patch_matrix_matches_printed_example() {
        let v = IsotropicIndex::new(5, vec![1, 3, 4, 6, 9]).unwrap();
        let p = build_patch_matrix(&v);
        let var = |r, c, negated| PatchEntry::Var { root: p.system().root(r, c).unwrap(), negated };
        assert_eq!(p.entry(5, 9).unwrap(), var(2, 6, true));
        assert_eq!(p.entry(2, 1).unwrap(), var(2, 1, false));
        assert_eq!(p.entry(1, 1).unwrap(), PatchEntry::One);
        assert_eq!(p.entry(3, 1).unwrap(), PatchEntry::Zero);
        assert_eq!(p.entry(10, 1).unwrap(), PatchEntry::Zero);
        assert_eq!(p.entry(10, 9).unwrap(), var(2, 1, true));
        assert_eq!(p.entry(8, 4).unwrap(), var(7, 3, true));
        assert_eq!(p.entry(7, 6).unwrap(), var(5, 4, true));
        for &c in v.entries() {
            assert_eq!(p.entry(p.system().star(c), c).unwrap(), PatchEntry::Zero);
        }
        assert_eq!(p.variables(), p.system().or_roots());
    }

    #[test]
    fn paper_example_generators() {
        let v = IsotropicIndex::bottom(5).unwrap();
        let w = IsotropicIndex::new(5, vec![3, 4, 5, 9, 10]).unwrap();
        let gens = generators::<Rational>(&v, &w, &()).unwrap();
        let sys = RootSystem::new(v.clone());
        let vars = VariableSet::new(&sys);
        let order = TermOrder::hlex(&sys, &vars);
        let text: Vec<String> = gens.iter().map(|g| vars.format_polynomial(&g.poly, &order, true)).collect();
        assert_eq!(text, vec!["di - cf + bg", "dh - ce + ag", "dj - be + af", "cj - bh + ai", "gj - fh + ei"]);
        let taus: Vec<String> = gens.iter().map(|g| g.tau.to_string()).collect();
        assert_eq!(taus, vec!["(1,6,7,8,9)", "(2,6,7,8,10)", "(3,6,7,9,10)", "(4,6,8,9,10)", "(5,7,8,9,10)"]);
    }

    #[test]
    fn trivial_generator_cases() {
        let v = IsotropicIndex::bottom(4).unwrap();
        let top = IsotropicIndex::top(4).unwrap();
        assert!(generators::<Rational>(&v, &top, &()).unwrap().is_empty());
        assert!(matches!(generators::<Rational>(&top, &v, &()), Err(PfaffianError::NotBelow { .. })));
        let patch = build_patch_matrix(&v);
        let vars = VariableSet::new(patch.system());
        let ctx = PolyCtx::<Rational>::new((), vars.len());
        assert_eq!(f_tau(&patch, &v, &vars, &ctx).unwrap(), ctx.constant(1));
    }

    #[test]
    fn special_case_block_ideal() {
        assert_eq!(special_case_w(5, 2).unwrap().entries(), &[3, 4, 5, 9, 10]);
        assert!(special_case_w(5, 4).is_err());
        assert_eq!(bottom_block_pfaffians::<Rational>(5, 2, &()).unwrap().len(), 5);
    }
}
