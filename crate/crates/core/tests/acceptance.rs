//! Acceptance criteria 1 to 9. Every criterion prints one PASS/FAIL line;
//! all comparisons are exact and each criterion has a wall-clock budget.

use std::time::{Duration, Instant};

use orthocone_core::algebra::{
    buchberger, deglex_counterexample_order, initial_term, GroebnerLimits, Monomial, PolyCtx, Polynomial, Rational,
    Ring, TermOrder, VariableSet,
};
use orthocone_core::lattice::{IsotropicIndex, Root, RootSystem};
use orthocone_core::pfaffian::generators;
use orthocone_core::verify::{run, Report, Suite, VerifyOptions};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

struct Example {
    sys: RootSystem,
    vars: VariableSet,
    ctx: PolyCtx<Rational>,
    gens: Vec<Polynomial<Rational>>,
}

impl Example {
    fn new() -> Self {
        let v = IsotropicIndex::new(5, vec![1, 2, 3, 4, 5]).unwrap();
        let w = IsotropicIndex::new(5, vec![3, 4, 5, 9, 10]).unwrap();
        let sys = RootSystem::new(v.clone());
        let vars = VariableSet::new(&sys);
        let ctx = PolyCtx::new((), vars.len());
        let gens = generators::<Rational>(&v, &w, &()).unwrap().into_iter().map(|g| g.poly).collect();
        Self { sys, vars, ctx, gens }
    }

    fn poly(&self, s: &str) -> Polynomial<Rational> {
        self.vars.parse_alias_polynomial(&self.ctx, s).unwrap()
    }

    fn mono(&self, s: &str) -> Monomial {
        self.vars.alias_monomial(s).unwrap()
    }

    /// `-h f_1 + i f_2` from the computed generators.
    fn element(&self) -> Polynomial<Rational> {
        let h = self.ctx.var(self.vars.alias_index("h").unwrap());
        let i = self.ctx.var(self.vars.alias_index("i").unwrap());
        h.mul(&self.gens[0]).neg().add(&i.mul(&self.gens[1]))
    }
}

fn criterion_1() -> Outcome {
    let ex = Example::new();
    let expected = ["di-cf+bg", "dh-ce+ag", "dj-be+af", "cj-bh+ai", "gj-fh+ei"];
    let mut got = ex.gens.clone();
    let mut want: Vec<Polynomial<Rational>> = expected.iter().map(|s| ex.poly(s)).collect();
    let key = |p: &Polynomial<Rational>| format!("{p:?}");
    got.sort_by_key(key);
    want.sort_by_key(key);
    let order = TermOrder::hlex(&ex.sys, &ex.vars);
    let shown: Vec<String> = ex.gens.iter().map(|p| ex.vars.format_polynomial(p, &order, true)).collect();
    outcome(got == want, format!("{} generators: {}", ex.gens.len(), shown.join(", ")))
}

fn criterion_2() -> Outcome {
    let ex = Example::new();
    let element = ex.element();
    let exact = element == ex.poly("cfh-bgh-cei+agi");
    let leads: Vec<Monomial> = ["di", "dh", "dj", "cj", "gj"].iter().map(|s| ex.mono(s)).collect();
    let undivided = element.monomials().all(|m| !leads.iter().any(|l| l.divides(m)));
    let order = TermOrder::hlex(&ex.sys, &ex.vars);
    let gb = buchberger(&ex.gens, &order, &GroebnerLimits::default()).unwrap();
    let larger = gb.len() > 5;
    outcome(
        exact && undivided && larger && element.num_terms() == 4,
        format!("element exact: {exact}, no term divisible: {undivided}, reduced basis size {}", gb.len()),
    )
}

fn criterion_3() -> Outcome {
    let ex = Example::new();
    let ranking: Vec<Root> = ["d", "j", "a"].iter().map(|s| ex.vars.root(ex.vars.alias_index(s).unwrap())).collect();
    let order = deglex_counterexample_order(&ex.sys, &ex.vars, &ranking).unwrap();
    let (_, m) = initial_term(&order, &ex.element()).unwrap();
    outcome(m == ex.mono("agi"), format!("initial term {}", ex.vars.format_monomial(&m, true)))
}

fn suite_outcome(report: &Report, required: &[(&str, u64)]) -> Outcome {
    let mut ok = report.passed();
    let mut parts = Vec::new();
    for (name, min_cases) in required {
        match report.check(name) {
            Some(c) => {
                ok &= c.cases >= *min_cases && c.passed();
                parts.push(format!("{name}: {}/{}", c.cases - c.failures, c.cases));
            }
            None => {
                ok = false;
                parts.push(format!("{name}: missing"));
            }
        }
    }
    if !report.passed() {
        parts.push(format!("\n{report}"));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_4() -> Outcome {
    let opts = VerifyOptions { theorem_max_d: 4, ..VerifyOptions::default() };
    let r = run(Suite::TheoremSmalld, &opts).unwrap();
    // 48 pairs v <= w over d = 2, 3, 4
    suite_outcome(&r, &[("in_hlex(I) is square-free", 48), ("in_hlex = in_rlex = in_diagproj", 48)])
}

fn criterion_5() -> Outcome {
    let opts = VerifyOptions { samples: 200, seed: 5, ..VerifyOptions::default() };
    let r = run(Suite::PfaffianIdentities, &opts).unwrap();
    // 200 matrices x 5 sizes x 2 fields
    suite_outcome(
        &r,
        &[
            ("det = (-1)^n Pf^2", 2000),
            ("minor identity", 2000),
            ("expansion is independent of the row or column", 2000),
            ("generic Pfaffian has (2n-1)!! terms", 5),
        ],
    )
}

fn criterion_6() -> Outcome {
    let opts = VerifyOptions { newform_dims: vec![3, 4, 5], chain_len: 4, newform_random: 0, ..VerifyOptions::default() };
    let r = run(Suite::NewformProps, &opts).unwrap();
    let names = [
        "fewer (1): no two elements of new(C) share a projection",
        "fewer (2): proj(new(C)) is even, = projeven(C) when proj(C) is odd",
        "fewer (3): |new(C)| < |C| and |new(E)| < |E|",
        "aux (1): sub-chain of new(F) > D",
        "aux (2): proj(F1'') even and in N(v)",
        "aux (3): no intertwining inside F1''",
        "aux (4): no intertwining at the F1''/F2'' junction",
        "aux (5): p_v(F1) within proj(F1'')",
        "aux (6): F2 and F2'' in order-preserving bijection",
    ];
    let required: Vec<(&str, u64)> = names.iter().map(|n| (*n, 1)).collect();
    suite_outcome(&r, &required)
}

fn criterion_7() -> Outcome {
    let r = run(Suite::Homogeneity, &VerifyOptions::default()).unwrap();
    // |I(d)|^2 summed over d = 1..5
    suite_outcome(&r, &[("f_tau is homogeneous of degree |v \\ tau| / 2", 341)])
}

fn criterion_8() -> Outcome {
    let r = run(Suite::SpecialCase, &VerifyOptions::default()).unwrap();
    let name = "d = 5, r = 2: generators for w = (3,4,5,9,10) and degree-2 block Pfaffians span one ideal";
    suite_outcome(&r, &[(name, 1)])
}

fn criterion_9() -> Outcome {
    let opts = VerifyOptions { hilbert_max_k: 6, ..VerifyOptions::default() };
    let r = run(Suite::Hilbert, &opts).unwrap();
    // (1 + 3 + 10 pairs for d <= 3, plus the d = 5 example) x 7 degrees
    suite_outcome(&r, &[("dim (P/I)_k = dim (P/in(I))_k", 15 * 7)])
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("d=5 example: the five generators", Duration::from_secs(1), criterion_1),
        ("d=5 example: generators are not a Groebner basis", Duration::from_secs(10), criterion_2),
        ("d=5 example: deglex picks agi", Duration::from_secs(1), criterion_3),
        ("square-free initial ideals, three orders agree (d <= 4)", Duration::from_secs(600), criterion_4),
        ("Pfaffian identities and term counts", Duration::from_secs(120), criterion_5),
        ("new-form properties (d in 3..5, length <= 4)", Duration::from_secs(300), criterion_6),
        ("f_tau homogeneous of the v-degree (d <= 5)", Duration::from_secs(60), criterion_7),
        ("two-block w gives the block Pfaffian ideal (d=5, r=2)", Duration::from_secs(30), criterion_8),
        ("Hilbert functions of P/I and P/in(I) agree (k <= 6)", Duration::from_secs(300), criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (label, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= *budget;
        let pass = out.passed && in_budget;
        println!(
            "criterion {}: {} - {label} ({:.3} s, budget {} s) {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
