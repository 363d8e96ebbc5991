//! The worked examples as solved fixtures.

use crate::aim::{aim_iterate, branches, solve_branch, solve_simple, SimpleForm, SolveOptions};
use crate::error::Result;
use crate::riccati::{solve, solve_branches, RiccatiEquation, Strategy};
use crate::solution::{Solution, TransformId};
use crate::symcore::{parse, Var};

pub const QUOTIENT_PARAMS: &[&str] = &["a", "b", "c", "m"];
pub const QUOTIENT_LAMBDA0: &str = "-((m - a)*x^2 + (2*c*m - 1)*x - c)/(a*x^3 + b*x^2 + c*x)";
pub const QUOTIENT_S0: &str = "-(-2*m*x + 1)/(a*x^3 + b*x^2 + c*x)";
pub const QUOTIENT_SOLUTION: &str =
    "(2*(m + a)*x + 4*c*m + 2*b - 1)/((m + a)*x^2 + (4*c*m + 2*b - 1)*(x + c))";

pub const OSCILLATOR_LAMBDA0: &str = "3*a*x + 1/x";
pub const OSCILLATOR_S0: &str = "a^2";
pub const OSCILLATOR_SOLUTIONS: [&str; 3] = [
    "-2/x",
    "-2*(18*x^2 + 1)/(x*(1 + 9*x^2))",
    "-2*(729*x^4 + 108*x^2 + 2)/(x*(243*x^4 + 54*x^2 + 2))",
];

pub const CUBIC: [&str; 3] = ["1", "exp((3/4)*x^4 + x)", "-27*x^2*exp(-(3/4)*x^4 - x)"];
pub const CUBIC_SOLUTION: &str = "(9*x^8 - 30*x^4 + 5)/(x*exp((3/4)*x^4 + x)*(x^8 - 6*x^4 + 5))";

pub const EULER_PARAMS: &[&str] = &["a", "b", "c", "n"];
pub const EULER: [&str; 3] = ["-b/x", "-a*x^n", "c/x^(n + 2)"];

pub const QUICK_FUNCTIONS: [&str; 4] = ["1", "x", "x^2", "1/(1 + x^2)"];

/// A solved example with the interval used for numeric checks.
#[derive(Clone, Debug)]
pub struct ExampleCase {
    pub name: String,
    pub equation: RiccatiEquation,
    pub solution: Solution,
    pub interval: (f64, f64),
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Every worked example, including each reported constraint branch.
pub fn example_cases() -> Result<Vec<ExampleCase>> {
    let mut out = Vec::new();

    let l0 = parse(QUOTIENT_LAMBDA0, QUOTIENT_PARAMS)?;
    let s0 = parse(QUOTIENT_S0, QUOTIENT_PARAMS)?;
    out.push(ExampleCase {
        name: "quotient".into(),
        equation: RiccatiEquation::simple(SimpleForm::First, &l0, &s0, strings(QUOTIENT_PARAMS))?,
        solution: solve_simple(SimpleForm::First, &l0, &s0, &SolveOptions::default())?,
        interval: (0.1, 0.5),
    });

    let l0 = parse(OSCILLATOR_LAMBDA0, &["a"])?;
    let s0 = parse(OSCILLATOR_S0, &["a"])?;
    let eq = RiccatiEquation::simple(SimpleForm::Second, &l0, &s0, strings(&["a"]))?;
    let trace = aim_iterate(&l0, &s0, 6)?;
    for b in branches(&trace)? {
        out.push(ExampleCase {
            name: format!("oscillator {b}"),
            equation: eq.clone(),
            solution: solve_branch(SimpleForm::Second, &trace, &b, &SolveOptions::default())?,
            interval: (0.1, 0.5),
        });
    }

    let eq = RiccatiEquation::parse(CUBIC[0], CUBIC[1], CUBIC[2], &[])?;
    out.push(ExampleCase {
        name: "cubic exponential".into(),
        solution: solve(&eq, Strategy::Auto, &SolveOptions::default())?,
        equation: eq,
        interval: (1.55, 1.95),
    });

    let eq = RiccatiEquation::parse(EULER[0], EULER[1], EULER[2], EULER_PARAMS)?;
    let opts = SolveOptions {
        eliminate: Some(Var::new("c")),
        ..SolveOptions::with_n_max(3)
    };
    for (b, sol) in solve_branches(&eq, TransformId::T3, &opts)? {
        let name = b.map_or("cauchy-euler".to_string(), |b| format!("cauchy-euler {b}"));
        out.push(ExampleCase {
            name,
            equation: eq.clone(),
            solution: sol?,
            interval: (0.5, 1.5),
        });
    }

    for f in QUICK_FUNCTIONS {
        let eq = RiccatiEquation::parse(&format!("-x*({f})"), "-1", f, &[])?;
        out.push(ExampleCase {
            name: format!("quick f = {f}"),
            solution: solve(&eq, Strategy::Auto, &SolveOptions::default())?,
            equation: eq,
            interval: (0.2, 0.8),
        });
    }
    Ok(out)
}
