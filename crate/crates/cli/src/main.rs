use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use riccati_core::aim::{solve_simple, SimpleForm, SolveOptions};
use riccati_core::fixtures::{run_cases, table_cases, TableId};
use riccati_core::riccati::{
    generate_family, FamilyKind, FamilyOptions, RiccatiEquation, Strategy,
};
use riccati_core::symcore::{normalize, parse};
use riccati_core::verify::{verify_solution, VerifyOptions};
use riccati_core::{Error, Method, Solution};

mod report;

use report::{canonical, equation_text, sci, trace_summary, Response};

#[derive(Parser)]
#[command(
    name = "riccati",
    version,
    about = "Closed-form solutions of Riccati equations by asymptotic iteration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an equation and verify the result.
    Solve(SolveArgs),
    /// Reproduce a built-in table of closed forms.
    Tables(TablesArgs),
    /// Generate an equation from a terminating seed and a free function.
    Families(FamiliesArgs),
    /// Check a candidate solution against an equation.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    /// y' - l0 y + y^2 = s0
    Simple1,
    /// y' - l0 y - y^2 = -s0
    Simple2,
    /// y' + P y + Q y^2 = R
    General,
}

#[derive(Args)]
struct EquationArgs {
    #[arg(long, value_enum, default_value = "general")]
    form: Form,
    #[arg(long, allow_hyphen_values = true)]
    lambda0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s0: Option<String>,
    #[arg(long = "P", allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long = "Q", allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long = "R", allow_hyphen_values = true)]
    r: Option<String>,
    /// Symbolic parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 24)]
    n_max: usize,
    /// Interval for the numeric checks.
    #[arg(long, value_parser = parse_interval, default_value = "0.1,0.4", allow_hyphen_values = true)]
    interval: (f64, f64),
    /// Seed for random parameter bindings.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    equation: EquationArgs,
    /// auto, t3, t4, t5 or t6.
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Parameter to solve constraints for.
    #[arg(long)]
    eliminate: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TablesArgs {
    /// 1, 2, 4, 5 or 6.
    #[arg(long, value_parser = parse_table)]
    table: TableId,
    /// Values of n; defaults to 0..3 (1..3 for table 5).
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    #[arg(long, default_value_t = 11)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FamiliesArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda0: String,
    #[arg(long, allow_hyphen_values = true)]
    s0: String,
    /// The free P (t3, t4, t6) or R (t3r, t5r).
    #[arg(long, allow_hyphen_values = true)]
    free: String,
    /// t3, t3r, t4, t5r or t6.
    #[arg(long, value_parser = parse_family)]
    transform: FamilyKind,
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    equation: EquationArgs,
    /// Candidate solution y(x).
    #[arg(long, allow_hyphen_values = true)]
    solution: String,
    #[command(flatten)]
    common: Common,
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err("empty interval".into());
    }
    Ok((lo, hi))
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    Strategy::parse(s).ok_or_else(|| format!("unknown strategy `{s}`"))
}

fn parse_table(s: &str) -> Result<TableId, String> {
    TableId::parse(s).ok_or_else(|| format!("unknown table `{s}`"))
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    FamilyKind::parse(s).ok_or_else(|| format!("unknown transform `{s}`"))
}

fn required<'a>(v: &'a Option<String>, flag: &str, form: &str) -> Result<&'a str, Error> {
    v.as_deref()
        .ok_or_else(|| Error::InvalidInput(format!("--{flag} is required for --form {form}")))
}

fn names(params: &[String]) -> Vec<&str> {
    params.iter().map(String::as_str).collect()
}

fn build_equation(a: &EquationArgs) -> Result<(RiccatiEquation, Option<SimpleForm>), Error> {
    let ps = names(&a.params);
    let simple = match a.form {
        Form::Simple1 => Some((SimpleForm::First, "simple1")),
        Form::Simple2 => Some((SimpleForm::Second, "simple2")),
        Form::General => None,
    };
    match simple {
        Some((form, name)) => {
            let l0 = parse(required(&a.lambda0, "lambda0", name)?, &ps)?;
            let s0 = parse(required(&a.s0, "s0", name)?, &ps)?;
            Ok((
                RiccatiEquation::simple(form, &l0, &s0, a.params.clone())?,
                Some(form),
            ))
        }
        None => {
            let eq = RiccatiEquation::parse(
                required(&a.p, "P", "general")?,
                required(&a.q, "Q", "general")?,
                required(&a.r, "R", "general")?,
                &ps,
            )?;
            Ok((eq, None))
        }
    }
}

fn is_no_termination(e: &Error) -> bool {
    match e {
        Error::NoTermination { .. } => true,
        Error::AllTransformsFailed { attempts } => {
            attempts.iter().any(|(_, e)| is_no_termination(e))
                && attempts.iter().all(|(_, e)| {
                    is_no_termination(e) || matches!(e, Error::TransformInapplicable { .. })
                })
        }
        _ => false,
    }
}

fn failure(e: Error) -> (Response, u8) {
    if is_no_termination(&e) {
        let mut r = Response::error("no_termination", e.to_string());
        if let Error::NoTermination { trace } = &e {
            r.trace = trace_summary(trace, trace.len());
        }
        (r, 2)
    } else {
        (Response::error("error", e.to_string()), 1)
    }
}

fn verify_opts(c: &Common) -> VerifyOptions {
    VerifyOptions {
        interval: c.interval,
        seed: c.seed,
        ..Default::default()
    }
}

fn solve(args: &SolveArgs) -> Result<Response, Error> {
    let (eq, simple) = build_equation(&args.equation)?;
    let mut opts = SolveOptions::with_n_max(args.common.n_max);
    opts.eliminate = args
        .eliminate
        .as_deref()
        .map(riccati_core::symcore::Var::new);
    let sol = match simple {
        Some(form) => {
            let ps = names(&args.equation.params);
            let l0 = parse(args.equation.lambda0.as_deref().unwrap_or_default(), &ps)?;
            let s0 = parse(args.equation.s0.as_deref().unwrap_or_default(), &ps)?;
            solve_simple(form, &l0, &s0, &opts)?
        }
        None => riccati_core::riccati::solve(&eq, args.strategy, &opts)?,
    };
    let report = verify_solution(&eq, &sol, &verify_opts(&args.common))?;
    let mut r = Response::solved(&sol, Some(&report));
    r.equation = Some(equation_text(&eq));
    Ok(r)
}

fn families(args: &FamiliesArgs) -> Result<Response, Error> {
    let ps = names(&args.params);
    let l0 = parse(&args.lambda0, &ps)?;
    let s0 = parse(&args.s0, &ps)?;
    let free = parse(&args.free, &ps)?;
    let opts = FamilyOptions {
        aim: riccati_core::aim::AimOptions::with_n_max(args.common.n_max),
        ..Default::default()
    };
    let fam = generate_family(args.transform, &l0, &s0, &free, args.params.clone(), &opts)?;
    let report = verify_solution(&fam.equation, &fam.solution, &verify_opts(&args.common))?;
    let mut r = Response::solved(&fam.solution, Some(&report));
    r.equation = Some(equation_text(&fam.equation));
    Ok(r)
}

fn verify(args: &VerifyArgs) -> Result<(Response, bool), Error> {
    let (eq, _) = build_equation(&args.equation)?;
    let y = parse(&args.solution, &names(&args.equation.params))?;
    let sol = Solution {
        normal: normalize(&y).ok(),
        expression: y,
        method: Method::Quick,
        n: 0,
        constraints: Vec::new(),
        eliminations: Vec::new(),
        certified: false,
        notes: Vec::new(),
        trace: None,
    };
    let report = verify_solution(&eq, &sol, &verify_opts(&args.common))?;
    let ok = report.passes(1e-8, 1e-6);
    let mut r = Response::error(if ok { "verified" } else { "failed" }, String::new());
    r.error = None;
    r.solution = Some(canonical(&sol.expression));
    r.verification = Some((&report).into());
    r.equation = Some(equation_text(&eq));
    Ok((r, ok))
}

fn tables(args: &TablesArgs) -> u8 {
    let ns = if args.n.is_empty() {
        args.table.default_ns()
    } else {
        args.n.clone()
    };
    let outcomes = run_cases(&table_cases(args.table, &ns), true, args.seed);
    let ok = |o: &riccati_core::fixtures::CaseOutcome| {
        o.passed()
            && o.verification
                .as_ref()
                .is_some_and(|v| v.passes(1e-8, 1e-6))
    };
    let failed = outcomes.iter().filter(|o| !ok(o)).count();
    let mut text = String::new();
    if args.json {
        text = serde_json::to_string_pretty(&outcomes).expect("serializable") + "\n";
    } else {
        for o in &outcomes {
            let v = o.verification.as_ref();
            let free = match o.table {
                TableId::T4 | TableId::T5 => format!(" P = {}", o.free),
                TableId::T6 => format!(" R = {}", o.free),
                _ => String::new(),
            };
            let _ = writeln!(
                text,
                "{} table {} row {:>2} n {}{free}: match {} residual {} numeric {} rk {}{}",
                if ok(o) { "PASS" } else { "FAIL" },
                o.table,
                o.row,
                o.n,
                o.matches_table,
                o.residual_zero,
                sci(v.map(|v| v.max_numeric_residual)),
                sci(v.and_then(|v| v.rk_max_deviation)),
                o.error
                    .as_ref()
                    .map_or(String::new(), |e| format!(" ({e})")),
            );
        }
        let _ = writeln!(
            text,
            "{} of {} cases passed",
            outcomes.len() - failed,
            outcomes.len()
        );
    }
    out(&text);
    u8::from(failed > 0)
}

/// Writes to stdout, ignoring a closed pipe.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit(r: &Response, json: bool) {
    if json {
        out(&(serde_json::to_string_pretty(r).expect("serializable") + "\n"));
    } else {
        out(&r.text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Tables(a) => tables(a),
        Command::Solve(a) => {
            let (r, code) = solve(a).map_or_else(failure, |r| (r, 0));
            emit(&r, a.common.json);
            code
        }
        Command::Families(a) => {
            let (r, code) = families(a).map_or_else(failure, |r| (r, 0));
            emit(&r, a.common.json);
            code
        }
        Command::Verify(a) => {
            let (r, code) = verify(a).map_or_else(failure, |(r, ok)| (r, u8::from(!ok)));
            emit(&r, a.common.json);
            code
        }
    };
    ExitCode::from(code)
}
