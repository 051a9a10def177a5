//! Python bindings. Polynomials and monomials cross the boundary as strings
//! in the a..j alias notation when it exists, `X[r,c]` otherwise.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use orthocone_core::algebra::{
    buchberger, Field, FieldSpec, Fp, GroebnerError, GroebnerLimits, MonomialIdeal, Polynomial, Rational, TermOrder,
    TermOrderKind, VariableSet,
};
use orthocone_core::chains::{new_form_options, new_form, NewFormResult, VChain};
use orthocone_core::complex::SimplicialComplex;
use orthocone_core::lattice::{self, RootSystem};
use orthocone_core::pfaffian::{self, AntiSkewMatrix};
use orthocone_core::verify::{self, Suite, VerifyOptions};

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn groebner_err(e: GroebnerError) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// An element of I(d).
#[pyclass(name = "IsotropicIndex", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyIsotropicIndex(lattice::IsotropicIndex);

#[pymethods]
impl PyIsotropicIndex {
    #[new]
    fn new(d: usize, entries: Vec<usize>) -> PyResult<Self> {
        lattice::IsotropicIndex::new(d, entries).map(Self).map_err(value_err)
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    #[getter]
    fn entries(&self) -> Vec<usize> {
        self.0.entries().to_vec()
    }

    /// Bruhat order: `self <= other` entrywise.
    fn leq(&self, other: &Self) -> PyResult<bool> {
        self.0.leq(&other.0).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("IsotropicIndex({}, {:?})", self.0.d(), self.0.entries())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// I(d) in lexicographic order.
#[pyfunction]
fn enumerate_isotropic(d: usize) -> PyResult<Vec<PyIsotropicIndex>> {
    Ok(lattice::enumerate_isotropic(d).map_err(value_err)?.into_iter().map(PyIsotropicIndex).collect())
}

fn parse_field(field: &str) -> PyResult<FieldSpec> {
    FieldSpec::parse(field).map_err(value_err)
}

fn pf_numeric<F: Field>(ctx: &F::Ctx, rows: Vec<Vec<i64>>) -> PyResult<String> {
    let rows = rows.into_iter().map(|r| r.into_iter().map(|x| F::from_i64(ctx, x)).collect()).collect();
    let a = AntiSkewMatrix::new(ctx.clone(), rows).map_err(value_err)?;
    Ok(pfaffian::pfaffian(&a, None).map_err(value_err)?.to_string())
}

/// Pfaffian of an integer matrix with `a[i][j] = -a[j*][i*]`, as a string.
#[pyfunction]
#[pyo3(signature = (matrix, field = "rat"))]
fn pfaffian_of(matrix: Vec<Vec<i64>>, field: &str) -> PyResult<String> {
    match parse_field(field)? {
        FieldSpec::Rational => pf_numeric::<Rational>(&(), matrix),
        FieldSpec::Prime(p) => pf_numeric::<Fp>(&p, matrix),
    }
}

/// The tangent-cone ideal for `v <= w` with a chosen term order and field.
#[pyclass(frozen)]
struct Job {
    v: lattice::IsotropicIndex,
    w: lattice::IsotropicIndex,
    order: TermOrderKind,
    field: FieldSpec,
    limits: GroebnerLimits,
}

/// Facets, f-vector and dimension of a Stanley-Reisner complex.
#[pyclass(frozen, get_all)]
struct Complex {
    vertices: Vec<String>,
    minimal_nonfaces: Vec<Vec<String>>,
    facets: Vec<Vec<String>>,
    f_vector: Vec<u64>,
    dimension: i64,
}

struct Computed {
    generators: Vec<String>,
    basis: Vec<String>,
    initial: Vec<String>,
    ideal: MonomialIdeal,
    vars: VariableSet,
}

impl Job {
    fn ring<F: Field>(&self, ctx: &F::Ctx, with_basis: bool) -> PyResult<Computed> {
        let gens = pfaffian::generators::<F>(&self.v, &self.w, ctx).map_err(value_err)?;
        let sys = RootSystem::new(self.v.clone());
        let vars = VariableSet::new(&sys);
        let order = TermOrder::new(self.order, &sys, &vars);
        let show = |p: &Polynomial<F>| vars.format_polynomial(p, &order, true);
        let generators = gens.iter().map(|g| show(&g.poly)).collect();
        let (basis, initial, ideal) = if with_basis {
            let polys: Vec<_> = gens.into_iter().map(|g| g.poly).collect();
            let gb = buchberger(&polys, &order, &self.limits).map_err(groebner_err)?;
            let ideal = gb.initial_ideal();
            let initial = ideal.generators().iter().map(|m| vars.format_monomial(m, true)).collect();
            (gb.polynomials().iter().map(show).collect(), initial, ideal)
        } else {
            (Vec::new(), Vec::new(), MonomialIdeal::new(vars.len(), Vec::new()))
        };
        Ok(Computed { generators, basis, initial, ideal, vars })
    }

    fn compute(&self, with_basis: bool) -> PyResult<Computed> {
        match self.field {
            FieldSpec::Rational => self.ring::<Rational>(&(), with_basis),
            FieldSpec::Prime(p) => self.ring::<Fp>(&p, with_basis),
        }
    }
}

#[pymethods]
impl Job {
    #[new]
    #[pyo3(signature = (v, w, order = "hlex", field = "rat", max_degree = None, max_basis = None))]
    fn new(
        v: Vec<usize>,
        w: Vec<usize>,
        order: &str,
        field: &str,
        max_degree: Option<u32>,
        max_basis: Option<usize>,
    ) -> PyResult<Self> {
        let d = v.len();
        let v = lattice::IsotropicIndex::new(d, v).map_err(value_err)?;
        let w = lattice::IsotropicIndex::new(d, w).map_err(value_err)?;
        if !v.leq(&w).map_err(value_err)? {
            return Err(value_err(format!("v = {v} is not below w = {w} in the Bruhat order")));
        }
        let mut limits = GroebnerLimits::default();
        if let Some(x) = max_degree {
            limits.max_degree = x;
        }
        if let Some(x) = max_basis {
            limits.max_basis_size = x;
        }
        let order = TermOrderKind::parse(order).map_err(value_err)?;
        Ok(Self { v, w, order, field: parse_field(field)?, limits })
    }

    /// The Pfaffians `f_tau` generating the ideal.
    fn generators(&self) -> PyResult<Vec<String>> {
        Ok(self.compute(false)?.generators)
    }

    /// The reduced Gröbner basis.
    fn groebner_basis(&self) -> PyResult<Vec<String>> {
        Ok(self.compute(true)?.basis)
    }

    /// Minimal generators of the initial ideal.
    fn initial_ideal(&self) -> PyResult<Vec<String>> {
        Ok(self.compute(true)?.initial)
    }

    fn is_squarefree(&self) -> PyResult<bool> {
        Ok(self.compute(true)?.ideal.is_squarefree())
    }

    /// The Stanley-Reisner complex of the initial ideal.
    fn complex(&self) -> PyResult<Complex> {
        let c = self.compute(true)?;
        let k = SimplicialComplex::from_initial_ideal(&c.ideal, &c.vars).map_err(value_err)?;
        let names = |xs: &[usize]| xs.iter().map(|&i| c.vars.name(i, true)).collect::<Vec<_>>();
        Ok(Complex {
            vertices: names(k.vertex_order()),
            minimal_nonfaces: k.minimal_nonfaces().iter().map(|x| names(x)).collect(),
            facets: k.maximal_faces().iter().map(|x| names(x)).collect(),
            f_vector: k.f_vector(),
            dimension: k.dimension(),
        })
    }

    fn __repr__(&self) -> String {
        format!("Job(v={}, w={}, order={}, field={})", self.v, self.w, self.order.name(), self.field)
    }
}

/// Every `(cutoff, choice)` for the chain given as `(row, col)` pairs, with
/// the new form as pairs or `None` when undefined.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn new_forms(
    v: Vec<usize>,
    chain: Vec<(usize, usize)>,
) -> PyResult<Vec<(usize, Option<(usize, usize)>, Option<Vec<(usize, usize)>>)>> {
    let v = lattice::IsotropicIndex::new(v.len(), v).map_err(value_err)?;
    let sys = RootSystem::new(v);
    let e = VChain::from_pairs(&sys, &chain).map_err(value_err)?;
    let mut out = Vec::new();
    for (cutoff, choice) in new_form_options(&sys, &e).map_err(value_err)? {
        let result = match new_form(&sys, &e, cutoff, choice).map_err(value_err)? {
            NewFormResult::Defined(nf) => Some(nf.chain.elements().iter().map(|r| (r.row, r.col)).collect()),
            NewFormResult::Undefined(_) => None,
        };
        out.push((cutoff, choice.map(|c| (c.row, c.col)), result));
    }
    Ok(out)
}

/// Runs a verification suite; returns `(passed, report text)`.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0, samples = None))]
fn run_suite(py: Python<'_>, suite: &str, seed: u64, samples: Option<usize>) -> PyResult<(bool, String)> {
    let suite = Suite::parse(suite).ok_or_else(|| value_err(format!("unknown suite {suite:?}")))?;
    let mut opts = VerifyOptions { seed, ..VerifyOptions::default() };
    if let Some(n) = samples {
        opts.samples = n;
    }
    let report = py.detach(|| verify::run(suite, &opts)).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((report.passed(), report.to_string()))
}

#[pymodule]
fn orthocone(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIsotropicIndex>()?;
    m.add_class::<Job>()?;
    m.add_class::<Complex>()?;
    m.add_function(wrap_pyfunction!(enumerate_isotropic, m)?)?;
    m.add_function(wrap_pyfunction!(pfaffian_of, m)?)?;
    m.add_function(wrap_pyfunction!(new_forms, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_and_order_names() {
        assert_eq!(parse_field("rat").unwrap(), FieldSpec::Rational);
        assert!(matches!(parse_field("fp:32003").unwrap(), FieldSpec::Prime(_)));
        assert_eq!(TermOrderKind::parse("diagproj").unwrap(), TermOrderKind::DiagProj);
    }
}
