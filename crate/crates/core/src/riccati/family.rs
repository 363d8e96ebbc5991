//! Solvable families generated from a terminating seed `(l0, s0)` and a
//! free function.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::equation::RiccatiEquation;
use crate::aim::{run, terminal, AimOptions, AimTrace, Termination};
use crate::error::{Error, Result};
use crate::solution::{Method, Solution, TransformId};
use crate::symcore::{
    exp_of_integral, normalize, normalize_exp_sum, ExpSum, Expr, NormalForm, Rational,
};

/// Family constructions. `T3`, `T4` and `T6` take a free `P`; `T3R` and
/// `T5R` take a free `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    /// `Q = e^{int(l0+P)}`, `R = s0 e^{-int(l0+P)}`.
    T3,
    /// `P = s0'/s0 - R'/R - l0`, `Q = s0/R`.
    T3R,
    /// `R = e^{int(l0-P)}`, `Q = s0 e^{-int(l0-P)}`.
    T4,
    /// `P = R'/R - l0`, `Q = s0/R + (R'/R^2 - l0/R)'`.
    T5R,
    /// `Q = e^{int(l0-P)}`, `R = s0 e^{-int(l0-P)} - (P e^{-int(l0-P)})'`,
    /// `y = -(alpha + P) e^{-int(l0-P)}`.
    T6,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::T3,
        FamilyKind::T3R,
        FamilyKind::T4,
        FamilyKind::T5R,
        FamilyKind::T6,
    ];

    pub fn parse(s: &str) -> Option<FamilyKind> {
        match s.to_ascii_lowercase().as_str() {
            "t3" => Some(FamilyKind::T3),
            "t3r" => Some(FamilyKind::T3R),
            "t4" => Some(FamilyKind::T4),
            "t5r" => Some(FamilyKind::T5R),
            "t6" => Some(FamilyKind::T6),
            _ => None,
        }
    }

    /// The transform that linearizes the generated equation back to the seed.
    pub fn transform(self) -> TransformId {
        match self {
            FamilyKind::T3 | FamilyKind::T3R => TransformId::T3,
            FamilyKind::T4 => TransformId::T4,
            FamilyKind::T5R => TransformId::T5,
            FamilyKind::T6 => TransformId::T6,
        }
    }

    /// Whether the free function plays the role of `R` rather than `P`.
    pub fn free_is_r(self) -> bool {
        matches!(self, FamilyKind::T3R | FamilyKind::T5R)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::T3 => "T3",
            FamilyKind::T3R => "T3R",
            FamilyKind::T4 => "T4",
            FamilyKind::T5R => "T5R",
            FamilyKind::T6 => "T6",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct FamilyOptions {
    pub aim: AimOptions,
    /// Lower limit of formal integrals; must avoid singularities.
    pub base: Rational,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            aim: AimOptions::default(),
            base: Rational::from_integer(0.into()),
        }
    }
}

/// A generated equation with its certified particular solution.
#[derive(Clone, Debug)]
pub struct Family {
    pub kind: FamilyKind,
    pub lambda0: Expr,
    pub s0: Expr,
    pub free: Expr,
    pub equation: RiccatiEquation,
    pub solution: Solution,
}

struct Seed {
    trace: AimTrace,
    n: usize,
    /// `s_{n-1}/lambda_{n-1}`.
    alpha: NormalForm,
}

fn seed(lambda0: &Expr, s0: &Expr, opts: &AimOptions) -> Result<Seed> {
    let (trace, term) = run(normalize(lambda0)?, normalize(s0)?, opts)?;
    match term {
        Termination::Exact { n } => {
            let alpha = terminal(&trace, n, &[], &Default::default(), None)?.ratio()?;
            Ok(Seed { trace, n, alpha })
        }
        Termination::Conditional { n, constraints } => Err(Error::InvalidInput(format!(
            "the seed terminates at n = {n} only if {}",
            constraints
                .iter()
                .map(|c| format!("{c} = 0"))
                .collect::<Vec<_>>()
                .join(" or ")
        ))),
        Termination::None => Err(Error::NoTermination {
            trace: Box::new(trace),
        }),
    }
}

fn form(e: &Expr) -> Result<ExpSum> {
    normalize_exp_sum(e)
}

fn nf(n: &NormalForm) -> ExpSum {
    ExpSum::from_normal(n.clone())
}

/// Builds the family of `kind` from the seed `(lambda0, s0)` and the free
/// function, and certifies the solution symbolically.
pub fn generate_family(
    kind: FamilyKind,
    lambda0: &Expr,
    s0: &Expr,
    free: &Expr,
    params: Vec<String>,
    opts: &FamilyOptions,
) -> Result<Family> {
    let sd = seed(lambda0, s0, &opts.aim)?;
    let l0 = form(lambda0)?;
    let s0f = form(s0)?;
    let alpha = nf(&sd.alpha);
    let base = &opts.base;
    let (p, q, r, y) = match kind {
        FamilyKind::T3 | FamilyKind::T6 | FamilyKind::T4 => {
            let p = form(free)?;
            let sign = if kind == FamilyKind::T3 { 1 } else { -1 };
            let g = Expr::add(lambda0.clone(), Expr::mul(Expr::int(sign), free.clone()));
            let up = form(&exp_of_integral(&g, 1, base))?;
            let down = form(&exp_of_integral(&g, -1, base))?;
            match kind {
                FamilyKind::T3 => (p, up, s0f.mul(&down)?, alpha.neg().mul(&down)?),
                FamilyKind::T6 => {
                    let r = s0f.mul(&down)?.sub(&p.mul(&down)?.derivative()?)?;
                    let y = alpha.add(&p)?.neg().mul(&down)?;
                    (p, up, r, y)
                }
                _ => {
                    if alpha.is_zero() {
                        return Err(Error::Degenerate("s_{n-1} vanishes identically".into()));
                    }
                    (p, s0f.mul(&down)?, up.clone(), up.neg().div(&alpha)?)
                }
            }
        }
        FamilyKind::T3R => {
            let r = form(free)?;
            if s0f.is_zero() {
                return Err(Error::InvalidInput("s0 vanishes identically".into()));
            }
            let p = s0f
                .derivative()?
                .div(&s0f)?
                .sub(&r.derivative()?.div(&r)?)?
                .sub(&l0)?;
            let q = s0f.div(&r)?;
            let y = r.div(&s0f)?.mul(&alpha)?.neg();
            (p, q, r, y)
        }
        FamilyKind::T5R => {
            let r = form(free)?;
            let log_r = r.derivative()?.div(&r)?;
            let p = log_r.sub(&l0)?;
            let inner = r.derivative()?.div(&r.mul(&r)?)?.sub(&l0.div(&r)?)?;
            let q = s0f.div(&r)?.add(&inner.derivative()?)?;
            let den = p.sub(&alpha)?;
            if den.is_zero() {
                return Err(Error::Degenerate(
                    "the solution denominator vanishes identically".into(),
                ));
            }
            (p, q, r.clone(), r.div(&den)?)
        }
    };
    let equation = RiccatiEquation::new(p.to_expr(), q.to_expr(), r.to_expr(), params)?;
    if !equation.residual_form(&y)?.is_zero() {
        return Err(Error::Uncertified(format!("family solution {y}")));
    }
    let solution = Solution {
        expression: y.to_expr(),
        normal: y.as_normal(),
        method: Method::Transform(kind.transform()),
        n: sd.n,
        constraints: Vec::new(),
        eliminations: Vec::new(),
        certified: true,
        notes: vec![format!("{kind} family")],
        trace: Some(Arc::new(sd.trace)),
    };
    Ok(Family {
        kind,
        lambda0: lambda0.clone(),
        s0: s0.clone(),
        free: free.clone(),
        equation,
        solution,
    })
}

pub fn generate_family_t3(lambda0: &Expr, s0: &Expr, p: &Expr, n_max: usize) -> Result<Family> {
    generate_family(
        FamilyKind::T3,
        lambda0,
        s0,
        p,
        Vec::new(),
        &with_n_max(n_max),
    )
}

pub fn generate_family_t3_r(lambda0: &Expr, s0: &Expr, r: &Expr, n_max: usize) -> Result<Family> {
    generate_family(
        FamilyKind::T3R,
        lambda0,
        s0,
        r,
        Vec::new(),
        &with_n_max(n_max),
    )
}

pub fn generate_family_t5_r(lambda0: &Expr, s0: &Expr, r: &Expr, n_max: usize) -> Result<Family> {
    generate_family(
        FamilyKind::T5R,
        lambda0,
        s0,
        r,
        Vec::new(),
        &with_n_max(n_max),
    )
}

pub fn generate_family_t6(lambda0: &Expr, s0: &Expr, p: &Expr, n_max: usize) -> Result<Family> {
    generate_family(
        FamilyKind::T6,
        lambda0,
        s0,
        p,
        Vec::new(),
        &with_n_max(n_max),
    )
}

fn with_n_max(n_max: usize) -> FamilyOptions {
    FamilyOptions {
        aim: AimOptions::with_n_max(n_max),
        ..Default::default()
    }
}
