use std::fmt::Write;

use clap::Args;
use serde_json::{json, Value};

use orthocone_core::algebra::{
    buchberger, Field, FieldSpec, Fp, GroebnerError, MonomialIdeal, PolyCtx, Polynomial, Rational, TermOrder,
    VariableSet,
};
use orthocone_core::chains::{new_form, new_form_options, ChainError, NewFormResult, VChain};
use orthocone_core::complex::{ComplexError, SimplicialComplex};
use orthocone_core::lattice::{enumerate_isotropic, IsotropicIndex, LatticeError, Root, RootSystem};
use orthocone_core::pfaffian::{
    build_patch_matrix, f_tau, full_generators, generators as tau_generators, pfaffian as pf, AntiSkewMatrix,
    Generator, PfaffianError,
};
use orthocone_core::verify::{self, Suite, VerifyError, VerifyOptions};

use crate::job::JobSpec;
use crate::output::Output;
use crate::{CliError, EXIT_FAILURE, EXIT_RESOURCE};

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<PfaffianError> for CliError {
    fn from(e: PfaffianError) -> Self {
        match e {
            PfaffianError::TooLarge { .. } => CliError::new(EXIT_RESOURCE, e.to_string()),
            PfaffianError::Internal(_) => CliError::failure(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::ResourceLimit { .. } => CliError::new(EXIT_RESOURCE, e.to_string()),
            _ => CliError::failure(e.to_string()),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::TooManyVertices(_) => CliError::new(EXIT_RESOURCE, e.to_string()),
            ComplexError::NotSquareFree(_) => CliError::failure(format!("initial ideal is not square-free: {e}")),
            ComplexError::BadVertexOrder { .. } => CliError::failure(e.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::ConstructionInvariant(_) => CliError::failure(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Groebner(g) => g.into(),
            VerifyError::Pfaffian(p) => p.into(),
            VerifyError::Complex(c) => c.into(),
            VerifyError::Workers(_) => CliError::usage(e.to_string()),
            _ => CliError::failure(e.to_string()),
        }
    }
}

fn tuple_text(t: &IsotropicIndex) -> String {
    t.entries().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn enum_id(job: &JobSpec) -> Result<Output, CliError> {
    let d = job.require_d()?;
    let all = enumerate_isotropic(d)?;
    let mut text = String::new();
    for t in &all {
        let _ = writeln!(text, "{t}");
    }
    let json = json!({ "d": d, "count": all.len(), "indices": all });
    let rows = all.iter().enumerate().map(|(i, t)| vec![(i + 1).to_string(), tuple_text(t)]).collect();
    Ok(Output::new(text, json).table(&["index", "tuple"], rows))
}

pub fn patch_matrix(job: &JobSpec) -> Result<Output, CliError> {
    let v = job.require_v()?;
    let patch = build_patch_matrix(v);
    let text = format!("patch matrix at v = {v}\n{patch}");
    let mut header = vec!["row".to_string()];
    header.extend(patch.system().cols().iter().map(|c| format!("col {c}")));
    let rows = patch
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| std::iter::once((i + 1).to_string()).chain(r.iter().map(ToString::to_string)).collect())
        .collect();
    let mut out = Output::new(text, patch.to_json());
    out.header = header;
    out.rows = rows;
    Ok(out)
}

/// Runs `body` with the coefficient field chosen by the job.
macro_rules! with_field {
    ($job:expr, $body:ident ( $($arg:expr),* )) => {
        match $job.field {
            FieldSpec::Rational => $body::<Rational>(&(), $($arg),*),
            FieldSpec::Prime(p) => $body::<Fp>(&p, $($arg),*),
        }
    };
}

#[derive(Debug, Clone, Args)]
pub struct PfaffianArgs {
    /// Numeric matrix, rows separated by ';' and entries by ',' (integers or p/q).
    #[arg(long)]
    matrix: Option<String>,
    /// Row to expand along (1-based).
    #[arg(long)]
    row: Option<usize>,
}

fn parse_scalar<F: Field>(ctx: &F::Ctx, s: &str) -> Result<F, CliError> {
    let bad = || CliError::usage(format!("--matrix: {s:?} is not an integer or a fraction p/q"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    F::from_i64(ctx, num)
        .div(&F::from_i64(ctx, den))
        .ok_or_else(|| CliError::usage(format!("--matrix: zero denominator in {s:?}")))
}

fn numeric_pfaffian<F: Field>(ctx: &F::Ctx, text: &str, row: Option<usize>) -> Result<Output, CliError> {
    let rows = text
        .split(';')
        .map(|r| r.split(',').map(|x| parse_scalar::<F>(ctx, x)).collect::<Result<Vec<F>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let a = AntiSkewMatrix::new(ctx.clone(), rows)?;
    let value = pf(&a, row)?;
    let text = format!("Pf = {value}");
    let json = json!({ "n": a.n(), "row": row.unwrap_or(1), "pfaffian": value.to_string() });
    Ok(Output::new(text, json).table(&["n", "pfaffian"], vec![vec![a.n().to_string(), value.to_string()]]))
}

fn symbolic_pfaffian<F: Field>(ctx: &F::Ctx, job: &JobSpec) -> Result<Output, CliError> {
    let v = job.require_v()?;
    let tau = job.require_tau()?;
    let patch = build_patch_matrix(v);
    let vars = VariableSet::new(patch.system());
    let pctx = PolyCtx::<F>::new(ctx.clone(), vars.len());
    let f = f_tau(&patch, tau, &vars, &pctx)?;
    let order = TermOrder::new(job.order, patch.system(), &vars);
    let shown = vars.format_polynomial(&f, &order, job.alias);
    let degree = f.degree().unwrap_or(0);
    let text = format!("f_tau for v = {v}, tau = {tau}\n{shown}\ndegree {degree}, {} terms", f.num_terms());
    let json = json!({
        "v": v, "tau": tau, "degree": degree, "terms": f.num_terms(),
        "text": shown, "polynomial": vars.polynomial_json(&f, &order),
    });
    let row = vec![tuple_text(tau), degree.to_string(), f.num_terms().to_string(), shown];
    Ok(Output::new(text, json).table(&["tau", "degree", "terms", "polynomial"], vec![row]))
}

pub fn pfaffian(job: &JobSpec, args: &PfaffianArgs) -> Result<Output, CliError> {
    match &args.matrix {
        Some(m) => with_field!(job, numeric_pfaffian(m, args.row)),
        None => {
            if args.row.is_some() {
                return Err(CliError::usage("--row applies only to --matrix"));
            }
            with_field!(job, symbolic_pfaffian(job))
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct IdealArgs {
    /// Use every tau not below w, not only those above v.
    #[arg(long)]
    all: bool,
}

struct Setup<F: Field> {
    v: IsotropicIndex,
    w: IsotropicIndex,
    vars: VariableSet,
    order: TermOrder,
    gens: Vec<Generator<F>>,
}

fn setup<F: Field>(ctx: &F::Ctx, job: &JobSpec, args: &IdealArgs) -> Result<Setup<F>, CliError> {
    let v = job.require_v()?.clone();
    let w = job.require_w()?.clone();
    let gens = if args.all { full_generators::<F>(&v, &w, ctx)? } else { tau_generators::<F>(&v, &w, ctx)? };
    let sys = RootSystem::new(v.clone());
    let vars = VariableSet::new(&sys);
    let order = TermOrder::new(job.order, &sys, &vars);
    Ok(Setup { v, w, vars, order, gens })
}

fn header_line(s: &Setup<impl Field>, job: &JobSpec) -> String {
    format!("v = {}, w = {}, order = {}, field = {}", s.v, s.w, job.order.name(), job.field)
}

fn polys_output<F: Field>(s: &Setup<F>, job: &JobSpec, title: &str, polys: &[(String, Polynomial<F>)]) -> Output {
    let mut text = format!("{}\n{title}: {}\n", header_line(s, job), polys.len());
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for (label, p) in polys {
        let shown = s.vars.format_polynomial(p, &s.order, job.alias);
        let _ = writeln!(text, "  {label:<16} {shown}");
        rows.push(vec![label.clone(), p.degree().unwrap_or(0).to_string(), shown.clone()]);
        items.push(json!({ "label": label, "text": shown, "polynomial": s.vars.polynomial_json(p, &s.order) }));
    }
    let json = json!({
        "v": s.v, "w": s.w, "order": job.order.name(), "field": job.field.to_string(),
        "variables": s.vars.roots(), "polynomials": items,
    });
    Output::new(text, json).table(&["label", "degree", "polynomial"], rows)
}

fn generators_with<F: Field>(ctx: &F::Ctx, job: &JobSpec, args: &IdealArgs) -> Result<Output, CliError> {
    let s = setup::<F>(ctx, job, args)?;
    let polys: Vec<_> = s.gens.iter().map(|g| (format!("tau={}", tuple_text(&g.tau)), g.poly.clone())).collect();
    Ok(polys_output(&s, job, "generators", &polys))
}

pub fn generators(job: &JobSpec, args: &IdealArgs) -> Result<Output, CliError> {
    with_field!(job, generators_with(job, args))
}

fn basis<F: Field>(s: &Setup<F>, job: &JobSpec) -> Result<Vec<Polynomial<F>>, CliError> {
    let gens: Vec<_> = s.gens.iter().map(|g| g.poly.clone()).collect();
    Ok(buchberger(&gens, &s.order, &job.limits)?.polynomials())
}

fn groebner_with<F: Field>(ctx: &F::Ctx, job: &JobSpec, args: &IdealArgs) -> Result<Output, CliError> {
    let s = setup::<F>(ctx, job, args)?;
    let gb = basis(&s, job)?;
    let polys: Vec<_> = gb.into_iter().enumerate().map(|(i, p)| (format!("g{}", i + 1), p)).collect();
    Ok(polys_output(&s, job, "reduced Groebner basis", &polys))
}

pub fn groebner(job: &JobSpec, args: &IdealArgs) -> Result<Output, CliError> {
    with_field!(job, groebner_with(job, args))
}

fn initial<F: Field>(s: &Setup<F>, job: &JobSpec) -> Result<MonomialIdeal, CliError> {
    let gens: Vec<_> = s.gens.iter().map(|g| g.poly.clone()).collect();
    Ok(buchberger(&gens, &s.order, &job.limits)?.initial_ideal())
}

fn initial_ideal_with<F: Field>(ctx: &F::Ctx, job: &JobSpec, args: &IdealArgs) -> Result<Output, CliError> {
    let s = setup::<F>(ctx, job, args)?;
    let init = initial(&s, job)?;
    let sq = init.is_squarefree();
    let mut text = format!("{}\ninitial ideal: {} minimal generators, square-free: {sq}\n", header_line(&s, job), init.generators().len());
    let mut rows = Vec::new();
    for m in init.generators() {
        let shown = s.vars.format_monomial(m, job.alias);
        let _ = writeln!(text, "  {shown}");
        rows.push(vec![shown, m.degree().to_string(), m.is_squarefree().to_string()]);
    }
    let json = json!({
        "v": s.v, "w": s.w, "order": job.order.name(), "square_free": sq,
        "generators": init.generators().iter().map(|m| s.vars.monomial_json(m)).collect::<Vec<Value>>(),
        "text": rows.iter().map(|r| r[0].clone()).collect::<Vec<_>>(),
    });
    Ok(Output::new(text, json).table(&["monomial", "degree", "square_free"], rows))
}

pub fn initial_ideal(job: &JobSpec, args: &IdealArgs) -> Result<Output, CliError> {
    with_field!(job, initial_ideal_with(job, args))
}

fn complex_with<F: Field>(ctx: &F::Ctx, job: &JobSpec, args: &IdealArgs) -> Result<Output, CliError> {
    let s = setup::<F>(ctx, job, args)?;
    let init = initial(&s, job)?;
    let k = SimplicialComplex::from_initial_ideal(&init, &s.vars)?;
    let name = |i: &usize| s.vars.name(*i, job.alias);
    let facets = k.maximal_faces();
    let f = k.f_vector();
    let mut text = format!(
        "{}\nvertices: {}\nminimal nonfaces: {}\nf-vector: {:?}\ndimension: {}\nfacets: {}\n",
        header_line(&s, job),
        k.vertex_order().iter().map(name).collect::<Vec<_>>().join(" "),
        k.minimal_nonfaces().len(),
        f,
        k.dimension(),
        facets.len()
    );
    let mut rows = Vec::new();
    for facet in &facets {
        let names: Vec<String> = facet.iter().map(name).collect();
        let _ = writeln!(text, "  {{{}}}", names.join(", "));
        rows.push(vec![facet.len().to_string(), names.join(" ")]);
    }
    let root_list = |xs: &[usize]| xs.iter().map(|&i| s.vars.root(i)).collect::<Vec<Root>>();
    let json = json!({
        "v": s.v, "w": s.w, "order": job.order.name(),
        "vertices": root_list(k.vertex_order()),
        "minimal_nonfaces": k.minimal_nonfaces().iter().map(|x| root_list(x)).collect::<Vec<_>>(),
        "facets": facets.iter().map(|x| root_list(x)).collect::<Vec<_>>(),
        "f_vector": f,
        "dimension": k.dimension(),
    });
    Ok(Output::new(text, json).table(&["size", "facet"], rows))
}

pub fn complex(job: &JobSpec, args: &IdealArgs) -> Result<Output, CliError> {
    with_field!(job, complex_with(job, args))
}

#[derive(Debug, Clone, Args)]
pub struct NewformArgs {
    /// The chain E as row:col pairs, greatest first, e.g. 7:1,5:2.
    #[arg(long)]
    chain: String,
    /// Position of the last element of C (1-based); all cut-offs when omitted.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Diagonal point row:col for the even case.
    #[arg(long)]
    choice: Option<String>,
}

fn parse_root(sys: &RootSystem, s: &str) -> Result<Root, CliError> {
    let (r, c) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| CliError::usage(format!("{s:?} is not of the form row:col")))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| CliError::usage(format!("{x:?} is not a positive integer")));
    Ok(sys.root(num(r)?, num(c)?)?)
}

pub fn newform(job: &JobSpec, args: &NewformArgs) -> Result<Output, CliError> {
    let v = job.require_v()?;
    let sys = RootSystem::new(v.clone());
    let roots = args
        .chain
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| parse_root(&sys, x))
        .collect::<Result<Vec<_>, _>>()?;
    let e = VChain::new(&sys, &roots)?;
    let choice = args.choice.as_deref().map(|c| parse_root(&sys, c)).transpose()?;
    let cases = match args.cutoff {
        Some(k) => vec![(k, choice)],
        None if choice.is_some() => return Err(CliError::usage("--choice needs --cutoff")),
        None => new_form_options(&sys, &e)?,
    };
    let mut text = format!("v = {v}, E = {e}\n");
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for (cutoff, choice) in cases {
        let choice_text = choice.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        match new_form(&sys, &e, cutoff, choice)? {
            NewFormResult::Defined(nf) => {
                let comps: Vec<String> = nf.components.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "cutoff {cutoff}, choice {choice_text}: new(E) = {}", nf.chain);
                let _ = writeln!(text, "  components of C: {}", comps.join(" | "));
                let _ = writeln!(text, "  new(C_l) = {} (|proj| {})", nf.last.chain, if nf.last.proj_odd { "odd" } else { "even" });
                rows.push(vec![cutoff.to_string(), choice_text, "defined".into(), nf.chain.to_string()]);
                items.push(json!({
                    "cutoff": cutoff, "choice": choice, "defined": true,
                    "new_form": nf.chain, "components": nf.components, "new_last": nf.last.chain,
                    "spnew": nf.spnew, "proj_odd": nf.last.proj_odd, "d": nf.d,
                }));
            }
            NewFormResult::Undefined(why) => {
                let _ = writeln!(text, "cutoff {cutoff}, choice {choice_text}: undefined ({why})");
                rows.push(vec![cutoff.to_string(), choice_text, "undefined".into(), why.to_string()]);
                items.push(json!({ "cutoff": cutoff, "choice": choice, "defined": false, "reason": why }));
            }
        }
    }
    let json = json!({ "v": v, "chain": e, "new_forms": items });
    Ok(Output::new(text, json).table(&["cutoff", "choice", "status", "result"], rows))
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// paper-example, pfaffian-identities, newform-props, theorem-smalld,
    /// order-axioms, homogeneity, special-case or hilbert.
    suite: String,
    /// Random samples per size for randomized checks.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    samples: Option<u64>,
    /// Largest d for theorem-smalld, or for exhaustive new-form chains.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=8))]
    max_d: Option<u64>,
}

pub fn verify(job: &JobSpec, args: &VerifyArgs) -> Result<Output, CliError> {
    let suite = Suite::parse(&args.suite).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
        CliError::usage(format!("unknown suite {:?}; expected one of {}", args.suite, names.join(", ")))
    })?;
    let mut opts = VerifyOptions { seed: job.seed, field: job.field, limits: job.limits, ..VerifyOptions::default() };
    if let Some(n) = args.samples {
        opts.samples = n as usize;
        opts.newform_random = n as usize;
    }
    if let Some(d) = args.max_d {
        let d = d as usize;
        opts.theorem_max_d = d;
        opts.newform_dims = (3..=d).collect();
    }
    let report = verify::run(suite, &opts)?;
    let status = if report.resource_cap.is_some() {
        EXIT_RESOURCE
    } else if report.passed() {
        0
    } else {
        EXIT_FAILURE
    };
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![c.name.clone(), c.cases.to_string(), c.failures.to_string(), if c.passed() { "pass" } else { "fail" }.into()]
        })
        .collect();
    let mut json = serde_json::to_value(&report).map_err(|e| CliError::failure(e.to_string()))?;
    json["passed"] = Value::Bool(report.passed());
    Ok(Output::new(report.to_string(), json).table(&["check", "cases", "failures", "status"], rows).with_status(status))
}
