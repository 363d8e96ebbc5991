//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use riccati_core::aim::{aim_iterate, branches, solve_theorem1, SimpleForm, SolveOptions};
use riccati_core::fixtures::{
    example_cases, run_cases, table_cases, CaseOutcome, TableId, CUBIC, CUBIC_SOLUTION, EULER,
    EULER_PARAMS, OSCILLATOR_LAMBDA0, OSCILLATOR_S0, OSCILLATOR_SOLUTIONS, QUICK_FUNCTIONS,
    QUOTIENT_LAMBDA0, QUOTIENT_PARAMS, QUOTIENT_S0, QUOTIENT_SOLUTION,
};
use riccati_core::riccati::{
    quick_particular, solve, solve_branches, to_linear_exprs, RiccatiEquation, Strategy,
};
use riccati_core::symcore::{eliminate, normalize, normalize_exp_sum, parse, NormalForm, Var};
use riccati_core::verify::{verify_solution, VerifyOptions};
use riccati_core::TransformId;

const RESIDUAL_TOL: f64 = 1e-8;
const RK_TOL: f64 = 1e-6;
const PROPERTY_CASES: u64 = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn quotient() -> Outcome {
    let start = Instant::now();
    let l0 = parse(QUOTIENT_LAMBDA0, QUOTIENT_PARAMS).map_err(fail)?;
    let s0 = parse(QUOTIENT_S0, QUOTIENT_PARAMS).map_err(fail)?;
    let tr = aim_iterate(&l0, &s0, 2).map_err(fail)?;
    ensure(!tr.delta(1).map_err(fail)?.is_zero(), "delta_1 vanishes")?;
    ensure(
        tr.delta(2).map_err(fail)?.is_zero(),
        "delta_2 does not vanish",
    )?;
    let sol = solve_theorem1(&l0, &s0, 24).map_err(fail)?;
    let eq = RiccatiEquation::simple(SimpleForm::First, &l0, &s0, Vec::new()).map_err(fail)?;
    ensure(
        eq.residual(&sol.expression).map_err(fail)?.is_zero(),
        "nonzero residual",
    )?;
    let want =
        normalize(&parse(QUOTIENT_SOLUTION, QUOTIENT_PARAMS).map_err(fail)?).map_err(fail)?;
    let got = sol.normal.clone().ok_or("no normal form")?;
    ensure(
        got == want || got == want.neg(),
        format!("unexpected solution {got}"),
    )?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), format!("took {}", secs(t)))?;
    Ok(format!("n = {}, matched up to sign, {}", sol.n, secs(t)))
}

fn cubic() -> Outcome {
    let start = Instant::now();
    let eq = RiccatiEquation::parse(CUBIC[0], CUBIC[1], CUBIC[2], &[]).map_err(fail)?;
    let (l0, s0) = to_linear_exprs(&eq, TransformId::T3).map_err(fail)?;
    let (l0n, s0n) = (normalize(&l0).map_err(fail)?, normalize(&s0).map_err(fail)?);
    ensure(
        l0n == normalize(&parse("3*x^3", &[]).map_err(fail)?).map_err(fail)?
            && s0n == normalize(&parse("-27*x^2", &[]).map_err(fail)?).map_err(fail)?,
        format!("linearized to l0 = {l0n}, s0 = {s0n}"),
    )?;
    let tr = aim_iterate(&l0, &s0, 9).map_err(fail)?;
    for k in 1..9 {
        ensure(
            !tr.delta(k).map_err(fail)?.is_zero(),
            format!("delta_{k} vanishes"),
        )?;
    }
    ensure(
        tr.delta(9).map_err(fail)?.is_zero(),
        "delta_9 does not vanish",
    )?;
    let sol = solve(&eq, Strategy::Auto, &SolveOptions::default()).map_err(fail)?;
    ensure(sol.n == 9, format!("terminated at n = {}", sol.n))?;
    let want = normalize_exp_sum(&parse(CUBIC_SOLUTION, &[]).map_err(fail)?).map_err(fail)?;
    let got = normalize_exp_sum(&sol.expression).map_err(fail)?;
    ensure(
        got == want,
        format!("unexpected solution {}", sol.expression),
    )?;
    ensure(
        eq.residual(&sol.expression).map_err(fail)?.is_zero(),
        "nonzero residual",
    )?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), format!("took {}", secs(t)))?;
    Ok(format!("n = 9, {}", secs(t)))
}

fn cauchy_euler() -> Outcome {
    let eq = RiccatiEquation::parse(EULER[0], EULER[1], EULER[2], EULER_PARAMS).map_err(fail)?;
    let opts = SolveOptions {
        eliminate: Some(Var::new("c")),
        ..SolveOptions::with_n_max(3)
    };
    let found = solve_branches(&eq, TransformId::T3, &opts).map_err(fail)?;
    ensure(found.len() == 3, format!("{} branches", found.len()))?;
    for (m, (branch, sol)) in (1..=3).zip(found) {
        let branch = branch.ok_or("unconditional termination")?;
        ensure(
            branch.n == m,
            format!("branch {branch} expected at n = {m}"),
        )?;
        let want = normalize(
            &parse(&format!("a*c - {m}*(n + b) + {m}*({m} - 1)"), EULER_PARAMS).map_err(fail)?,
        )
        .map_err(fail)?;
        let got = NormalForm::from_poly(branch.constraint.polynomial().clone());
        ensure(
            got == want || got == want.neg(),
            format!("constraint {got} at m = {m}"),
        )?;
        let sol = sol.map_err(fail)?;
        let y = normalize_exp_sum(&sol.expression).map_err(fail)?;
        let w =
            normalize_exp_sum(&parse(&format!("-{m}/(a*x^(n + 1))"), EULER_PARAMS).map_err(fail)?)
                .map_err(fail)?;
        ensure(
            y == w && sol.certified,
            format!("m = {m}: {}", sol.expression),
        )?;
    }
    Ok("m = 1, 2, 3 with c eliminated".into())
}

fn tables_match(outcomes: &[CaseOutcome]) -> Outcome {
    let bad: Vec<String> = outcomes
        .iter()
        .filter(|o| !(o.matches_table && o.residual_zero && o.error.is_none()))
        .map(|o| format!("table {} row {} n {}", o.table, o.row, o.n))
        .collect();
    ensure(bad.is_empty(), bad.join(", "))?;
    Ok(format!("{} cases", outcomes.len()))
}

fn oscillator() -> Outcome {
    let l0 = parse(OSCILLATOR_LAMBDA0, &["a"]).map_err(fail)?;
    let s0 = parse(OSCILLATOR_S0, &["a"]).map_err(fail)?;
    let eq =
        RiccatiEquation::simple(SimpleForm::Second, &l0, &s0, vec!["a".into()]).map_err(fail)?;
    let tr = aim_iterate(&l0, &s0, 6).map_err(fail)?;
    let bs = branches(&tr).map_err(fail)?;
    let mut map = Vec::new();
    for (i, y) in OSCILLATOR_SOLUTIONS.iter().enumerate() {
        let y = parse(y, &[]).map_err(fail)?;
        let mut hit = None;
        for b in &bs {
            let elims = eliminate(
                std::slice::from_ref(&b.constraint),
                &BTreeSet::new(),
                Some(&Var::new("a")),
            )
            .map_err(fail)?;
            let reduced = eq.reduce(&elims).map_err(fail)?;
            if reduced.residual(&y).map_err(fail)?.is_zero() {
                hit = Some(b);
                break;
            }
        }
        let b = hit.ok_or(format!("solution {} solves no branch", i + 1))?;
        map.push(format!("y{} <- [{b}]", 2 * (i + 1)));
    }
    Ok(map.join("; "))
}

fn numeric(outcomes: &[CaseOutcome]) -> Outcome {
    let mut bad = Vec::new();
    let (mut worst_res, mut worst_rk) = (0f64, 0f64);
    for o in outcomes {
        match &o.verification {
            Some(v) if v.passes(RESIDUAL_TOL, RK_TOL) => {
                worst_res = worst_res.max(v.max_numeric_residual);
                worst_rk = worst_rk.max(v.rk_max_deviation.unwrap_or(0.0));
            }
            _ => bad.push(format!("table {} row {} n {}", o.table, o.row, o.n)),
        }
    }
    let examples = example_cases().map_err(fail)?;
    for c in &examples {
        let opts = VerifyOptions {
            interval: c.interval,
            ..VerifyOptions::default()
        };
        match verify_solution(&c.equation, &c.solution, &opts) {
            Ok(v) if v.passes(RESIDUAL_TOL, RK_TOL) => {
                worst_res = worst_res.max(v.max_numeric_residual);
                worst_rk = worst_rk.max(v.rk_max_deviation.unwrap_or(0.0));
            }
            Ok(v) => bad.push(format!(
                "{}: residual {:e}, rk {:?} {}",
                c.name,
                v.max_numeric_residual,
                v.rk_max_deviation,
                v.rk_note.unwrap_or_default()
            )),
            Err(e) => bad.push(format!("{}: {e}", c.name)),
        }
    }
    ensure(bad.is_empty(), bad.join("; "))?;
    Ok(format!(
        "{} table cases and {} examples, max residual {worst_res:.1e}, max rk deviation {worst_rk:.1e}",
        outcomes.len(),
        examples.len()
    ))
}

fn properties() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (name, check) in common::SUITES {
        for i in 0..PROPERTY_CASES {
            if let Err(e) = check(0x5eed_0000 + i) {
                bad.push(format!("{name}: {e}"));
                break;
            }
        }
    }
    let t = start.elapsed();
    ensure(bad.is_empty(), bad.join("; "))?;
    ensure(t < Duration::from_secs(120), format!("took {}", secs(t)))?;
    Ok(format!(
        "{} suites x {PROPERTY_CASES} instances, {}",
        common::SUITES.len(),
        secs(t)
    ))
}

fn quick() -> Outcome {
    let minus_inv_x = normalize(&parse("-1/x", &[]).map_err(fail)?).map_err(fail)?;
    for f in QUICK_FUNCTIONS {
        let eq = RiccatiEquation::parse(&format!("-x*({f})"), "-1", f, &[]).map_err(fail)?;
        let y = quick_particular(&eq)
            .map_err(fail)?
            .ok_or(format!("f = {f}: criterion not met"))?;
        ensure(
            normalize(&y).map_err(fail)? == minus_inv_x,
            format!("f = {f}: y = {y}"),
        )?;
        ensure(
            eq.residual(&y).map_err(fail)?.is_zero(),
            format!("f = {f}: nonzero residual"),
        )?;
        let perturbed =
            RiccatiEquation::parse(&format!("-x*({f})"), "-1", &format!("{f} + 1"), &[])
                .map_err(fail)?;
        ensure(
            quick_particular(&perturbed).map_err(fail)?.is_none(),
            format!("f = {f}: perturbed equation accepted"),
        )?;
    }
    Ok(format!("{} choices of f", QUICK_FUNCTIONS.len()))
}

fn main() {
    let mut first = Vec::new();
    for t in [TableId::T1, TableId::T2] {
        first.extend(run_cases(&table_cases(t, &t.default_ns()), true, 11));
    }
    let mut all = first.clone();
    for t in [TableId::T4, TableId::T5, TableId::T6] {
        all.extend(run_cases(&table_cases(t, &t.default_ns()), true, 11));
    }
    let criteria: Vec<Criterion> = vec![
        ("quotient example", Box::new(quotient)),
        ("cubic exponential example", Box::new(cubic)),
        ("cauchy-euler branches", Box::new(cauchy_euler)),
        (
            "first and second tables",
            Box::new(move || tables_match(&first)),
        ),
        ("oscillator branches", Box::new(oscillator)),
        ("numeric coherence", Box::new(move || numeric(&all))),
        ("property suites", Box::new(properties)),
        ("quick criterion", Box::new(quick)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
