//! Built-in regression fixtures: the solution tables and the worked
//! examples, with a parallel harness that solves, compares and verifies.

mod examples;
mod tables;

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::aim::{solve_simple, SimpleForm, SolveOptions};
use crate::error::{Error, Result};
use crate::hyper::HyperSpec;
use crate::riccati::{generate_family, FamilyKind, FamilyOptions, RiccatiEquation};
use crate::solution::Solution;
use crate::symcore::{
    exp_of_integral, normalize, normalize_exp_sum, parse, ExpSum, Expr, NormalForm, Rational, Var,
};
use crate::verify::{verify_solution, VerificationReport, VerifyOptions};

pub use examples::*;
pub use tables::{SEEDS, TABLE4, TABLE5, TABLE6};

const NAMES: &[&str] = &["n", "a", "b", "c", "k"];

/// Parameters of one side of a hypergeometric ratio.
#[derive(Clone, Copy, Debug)]
pub struct Hyp {
    pub num: &'static [&'static str],
    pub den: &'static [&'static str],
}

/// A row of the simple-form tables: `y = extra + prefactor * top/bottom`.
#[derive(Clone, Copy, Debug)]
pub struct SeedRow {
    pub row: usize,
    pub lambda0: &'static str,
    pub s0: &'static str,
    pub extra: &'static str,
    pub prefactor: &'static str,
    pub top: Hyp,
    pub bottom: Hyp,
    pub argument: &'static str,
    /// Pole-free for every checked `n` at the default parameters.
    pub interval: (f64, f64),
    pub erratum: Option<&'static str>,
}

/// A row of a family table, built from a seed row.
#[derive(Clone, Copy, Debug)]
pub struct DerivedRow {
    pub row: usize,
    pub seed: usize,
    /// `(name, numerator, denominator)` replacing a default.
    pub overrides: &'static [(&'static str, i64, i64)],
    pub interval: (f64, f64),
    pub erratum: Option<&'static str>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    T1,
    T2,
    T4,
    T5,
    T6,
}

impl TableId {
    pub const ALL: [TableId; 5] = [
        TableId::T1,
        TableId::T2,
        TableId::T4,
        TableId::T5,
        TableId::T6,
    ];

    pub fn parse(s: &str) -> Option<TableId> {
        match s {
            "1" => Some(TableId::T1),
            "2" => Some(TableId::T2),
            "4" => Some(TableId::T4),
            "5" => Some(TableId::T5),
            "6" => Some(TableId::T6),
            _ => None,
        }
    }

    /// Table indices shown in the headers; the family tables built on the
    /// second construction start at `n = 1`.
    pub fn default_ns(self) -> Vec<u32> {
        match self {
            TableId::T5 => vec![1, 2, 3],
            _ => vec![0, 1, 2, 3],
        }
    }

    pub fn rows(self) -> usize {
        match self {
            TableId::T1 | TableId::T2 => SEEDS.len(),
            TableId::T4 => TABLE4.len(),
            TableId::T5 => TABLE5.len(),
            TableId::T6 => TABLE6.len(),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            TableId::T1 => 1,
            TableId::T2 => 2,
            TableId::T4 => 4,
            TableId::T5 => 5,
            TableId::T6 => 6,
        };
        write!(f, "{n}")
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Default parameter values: `a = 2`, `b = 3`, `c = 1/2`, `k = 1`.
pub fn default_parameters() -> BTreeMap<&'static str, Rational> {
    [
        ("a", q(2, 1)),
        ("b", q(3, 1)),
        ("c", q(1, 2)),
        ("k", q(1, 1)),
    ]
    .into()
}

struct Scope {
    values: BTreeMap<&'static str, Rational>,
}

impl Scope {
    fn new(n: u32, overrides: &[(&'static str, i64, i64)]) -> Scope {
        let mut values = default_parameters();
        values.insert("n", q(n as i64, 1));
        for &(name, num, den) in overrides {
            values.insert(name, q(num, den));
        }
        Scope { values }
    }

    fn expr(&self, s: &str) -> Result<Expr> {
        let e = parse(s, NAMES)?;
        Ok(self.values.iter().fold(e, |acc, (v, val)| {
            acc.substitute(&Var::new(v), &Expr::num(val.clone()))
        }))
    }

    fn normal(&self, s: &str) -> Result<NormalForm> {
        normalize(&self.expr(s)?)
    }

    fn number(&self, s: &str) -> Result<Expr> {
        let v = self
            .normal(s)?
            .constant_value()
            .ok_or_else(|| Error::InvalidInput(format!("{s} is not a constant")))?;
        Ok(Expr::num(v))
    }

    fn hyper(&self, h: &Hyp, argument: &str) -> Result<NormalForm> {
        let num = h
            .num
            .iter()
            .map(|p| self.number(p))
            .collect::<Result<_>>()?;
        let den = h
            .den
            .iter()
            .map(|p| self.number(p))
            .collect::<Result<_>>()?;
        HyperSpec::new(num, den, self.expr(argument)?)?.expand_normal()
    }

    /// The tabulated first-form solution, expanded to a rational function.
    fn seed_solution(&self, row: &SeedRow) -> Result<NormalForm> {
        let extra = self.normal(row.extra)?;
        let pref = self.normal(row.prefactor)?;
        if pref.is_zero() {
            return Ok(extra);
        }
        let ratio = self
            .hyper(&row.top, row.argument)?
            .div(&self.hyper(&row.bottom, row.argument)?)?;
        extra.add(&pref.mul(&ratio))
    }
}

/// One table entry at one `n`.
#[derive(Clone, Debug)]
pub struct TableCase {
    pub table: TableId,
    pub row: usize,
    pub n: u32,
    pub seed: SeedRow,
    pub overrides: &'static [(&'static str, i64, i64)],
    pub interval: (f64, f64),
    pub erratum: Option<&'static str>,
    /// `P = 0` or `1` for the third and fourth tables, `R = 1` for the fifth.
    pub free: &'static str,
}

fn seed_row(i: usize) -> SeedRow {
    SEEDS[i - 1]
}

/// Every case of `table` for the given `ns`, one per row per `n` (two per
/// `n` for the tables taking a free `P`).
pub fn table_cases(table: TableId, ns: &[u32]) -> Vec<TableCase> {
    let mut out = Vec::new();
    let base = |row: usize, seed: SeedRow, d: Option<&DerivedRow>, n: u32, free| TableCase {
        table,
        row,
        n,
        seed,
        overrides: d.map_or(&[][..], |d| d.overrides),
        interval: d.map_or(seed.interval, |d| d.interval),
        erratum: d.map_or(seed.erratum, |d| d.erratum),
        free,
    };
    match table {
        TableId::T1 | TableId::T2 => {
            for s in SEEDS {
                for &n in ns {
                    out.push(base(s.row, *s, None, n, "0"));
                }
            }
        }
        TableId::T4 | TableId::T5 | TableId::T6 => {
            let (rows, frees): (&[DerivedRow], &[&'static str]) = match table {
                TableId::T4 => (TABLE4, &["0", "1"]),
                TableId::T5 => (TABLE5, &["0", "1"]),
                _ => (TABLE6, &["1"]),
            };
            for d in rows {
                for &n in ns {
                    for &free in frees {
                        out.push(base(d.row, seed_row(d.seed), Some(d), n, free));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseOutcome {
    pub table: TableId,
    pub row: usize,
    pub n: u32,
    pub free: String,
    pub equation: String,
    pub solution: Option<String>,
    pub aim_n: Option<usize>,
    pub matches_table: bool,
    pub residual_zero: bool,
    pub verification: Option<VerificationReport>,
    pub erratum: Option<String>,
    pub error: Option<String>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.matches_table && self.residual_zero
    }
}

struct Solved {
    equation: RiccatiEquation,
    solution: Solution,
    expected: ExpSum,
}

fn rational_base(x: f64) -> Rational {
    q((x * 100.0).round() as i64, 100)
}

fn solve_case(case: &TableCase) -> Result<Solved> {
    let scope = Scope::new(case.n, case.overrides);
    let l0 = scope.expr(case.seed.lambda0)?;
    let s0 = scope.expr(case.seed.s0)?;
    let y1 = scope.seed_solution(&case.seed)?;
    let aim_n = 24;
    match case.table {
        TableId::T1 | TableId::T2 => {
            let (form, expected) = match case.table {
                TableId::T1 => (SimpleForm::First, y1),
                _ => (SimpleForm::Second, y1.neg()),
            };
            let solution = solve_simple(form, &l0, &s0, &SolveOptions::with_n_max(aim_n))?;
            Ok(Solved {
                equation: RiccatiEquation::simple(form, &l0, &s0, Vec::new())?,
                solution,
                expected: ExpSum::from_normal(expected),
            })
        }
        _ => {
            let free = scope.expr(case.free)?;
            let base = rational_base(case.interval.0);
            let kind = match case.table {
                TableId::T4 => FamilyKind::T3,
                TableId::T5 => FamilyKind::T4,
                _ => FamilyKind::T5R,
            };
            let opts = FamilyOptions {
                aim: crate::aim::AimOptions::with_n_max(aim_n),
                base: base.clone(),
            };
            let fam = generate_family(kind, &l0, &s0, &free, Vec::new(), &opts)?;
            let y1 = ExpSum::from_normal(y1);
            let expected = match kind {
                FamilyKind::T3 => {
                    let g = Expr::add(l0.clone(), free.clone());
                    y1.mul(&normalize_exp_sum(&exp_of_integral(&g, -1, &base))?)?
                }
                FamilyKind::T4 => {
                    let g = Expr::sub(l0.clone(), free.clone());
                    normalize_exp_sum(&exp_of_integral(&g, 1, &base))?.div(&y1)?
                }
                _ => {
                    let r = normalize_exp_sum(&free)?;
                    let l0 = normalize_exp_sum(&l0)?;
                    let den = y1.add(&r.derivative()?.div(&r)?)?.sub(&l0)?;
                    r.div(&den)?
                }
            };
            Ok(Solved {
                equation: fam.equation,
                solution: fam.solution,
                expected,
            })
        }
    }
}

/// Solves one case, compares with the tabulated closed form and verifies.
pub fn run_case(case: &TableCase, verify: bool, seed: u64) -> CaseOutcome {
    let mut out = CaseOutcome {
        table: case.table,
        row: case.row,
        n: case.n,
        free: case.free.to_string(),
        equation: String::new(),
        solution: None,
        aim_n: None,
        matches_table: false,
        residual_zero: false,
        verification: None,
        erratum: case.erratum.map(str::to_string),
        error: None,
    };
    let solved = match solve_case(case) {
        Ok(s) => s,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.equation = solved.equation.to_string();
    out.solution = Some(solved.solution.expression.to_string());
    out.aim_n = Some(solved.solution.n);
    out.matches_table = normalize_exp_sum(&solved.solution.expression)
        .map(|y| y == solved.expected)
        .unwrap_or(false);
    out.residual_zero = solved
        .equation
        .residual(&solved.solution.expression)
        .map(|r| r.is_zero())
        .unwrap_or(false);
    if verify {
        let opts = VerifyOptions {
            interval: case.interval,
            seed,
            ..Default::default()
        };
        match verify_solution(&solved.equation, &solved.solution, &opts) {
            Ok(r) => out.verification = Some(r),
            Err(e) => out.error = Some(format!("verification: {e}")),
        }
    }
    out
}

/// Runs every case in parallel; results keep the input order.
pub fn run_cases(cases: &[TableCase], verify: bool, seed: u64) -> Vec<CaseOutcome> {
    cases
        .par_iter()
        .map(|c| run_case(c, verify, seed))
        .collect()
}
