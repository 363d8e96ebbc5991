use std::collections::BTreeSet;
use std::fmt;

use crate::aim::SimpleForm;
use crate::error::{Error, Result};
use crate::symcore::{
    differentiate, normalize_exp_sum, parse, reduce, Elimination, ExpSum, Expr, NormalForm, Var,
};

/// `y' + P y + Q y^2 = R`.
#[derive(Clone, Debug)]
pub struct RiccatiEquation {
    pub p: Expr,
    pub q: Expr,
    pub r: Expr,
    pub params: Vec<String>,
    pf: ExpSum,
    qf: ExpSum,
    rf: ExpSum,
}

impl RiccatiEquation {
    pub fn new(p: Expr, q: Expr, r: Expr, params: Vec<String>) -> Result<Self> {
        let pf = normalize_exp_sum(&p)?;
        let qf = normalize_exp_sum(&q)?;
        let rf = normalize_exp_sum(&r)?;
        if qf.is_zero() {
            return Err(Error::InvalidEquation(
                "Q vanishes identically; the equation is linear".into(),
            ));
        }
        Ok(RiccatiEquation {
            p,
            q,
            r,
            params,
            pf,
            qf,
            rf,
        })
    }

    pub fn parse(p: &str, q: &str, r: &str, params: &[&str]) -> Result<Self> {
        RiccatiEquation::new(
            parse(p, params)?,
            parse(q, params)?,
            parse(r, params)?,
            params.iter().map(|s| s.to_string()).collect(),
        )
    }

    /// The simple forms as generalized equations: `P = -l0` with
    /// `Q = 1, R = s0` (first form) or `Q = -1, R = -s0` (second form).
    pub fn simple(
        form: SimpleForm,
        lambda0: &Expr,
        s0: &Expr,
        params: Vec<String>,
    ) -> Result<Self> {
        let (q, r) = match form {
            SimpleForm::First => (Expr::one(), s0.clone()),
            SimpleForm::Second => (Expr::int(-1), Expr::neg(s0.clone())),
        };
        RiccatiEquation::new(Expr::neg(lambda0.clone()), q, r, params)
    }

    pub fn p_form(&self) -> &ExpSum {
        &self.pf
    }

    pub fn q_form(&self) -> &ExpSum {
        &self.qf
    }

    pub fn r_form(&self) -> &ExpSum {
        &self.rf
    }

    /// Parameters occurring in exponents of `x`; these are never
    /// eliminated by default.
    pub fn exponent_parameters(&self) -> BTreeSet<Var> {
        [&self.pf, &self.qf, &self.rf]
            .into_iter()
            .flat_map(|f| {
                f.terms()
                    .flat_map(|(_, c)| c.x_power().vars())
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// `y' + P y + Q y^2 - R` in canonical form.
    pub fn residual_form(&self, y: &ExpSum) -> Result<ExpSum> {
        y.derivative()?
            .add(&self.pf.mul(y)?)?
            .add(&self.qf.mul(&y.mul(y)?)?)?
            .sub(&self.rf)
    }

    pub fn residual(&self, y: &Expr) -> Result<ExpSum> {
        self.residual_form(&normalize_exp_sum(y)?)
    }

    /// The residual as an expression tree, for numeric evaluation.
    pub fn residual_expr(&self, y: &Expr) -> Expr {
        Expr::sum(vec![
            differentiate(y),
            Expr::mul(self.p.clone(), y.clone()),
            Expr::mul(self.q.clone(), Expr::powi(y.clone(), 2)),
            Expr::neg(self.r.clone()),
        ])
    }

    /// The equation after substituting solved constraints.
    pub fn reduce(&self, elims: &[Elimination]) -> Result<RiccatiEquation> {
        if elims.is_empty() {
            return Ok(self.clone());
        }
        let red = |f: &ExpSum| f.try_map(|c| reduce(c, elims));
        let (pf, qf, rf) = (red(&self.pf)?, red(&self.qf)?, red(&self.rf)?);
        let mut params = self.params.clone();
        params.retain(|p| !elims.iter().any(|e| e.var.name() == p));
        Ok(RiccatiEquation {
            p: pf.to_expr(),
            q: qf.to_expr(),
            r: rf.to_expr(),
            params,
            pf,
            qf,
            rf,
        })
    }

    /// Every coefficient is free of formal integrals.
    pub fn is_closed_form(&self) -> bool {
        [&self.pf, &self.qf, &self.rf]
            .iter()
            .all(|f| f.as_normal().is_some())
    }

    pub(crate) fn normal(f: &ExpSum, what: &str) -> Result<NormalForm> {
        f.as_normal().ok_or_else(|| {
            Error::UnsupportedForm(format!("{what} carries an unresolved formal integral"))
        })
    }
}

impl fmt::Display for RiccatiEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y' + ({})*y + ({})*y^2 = {}", self.p, self.q, self.r)
    }
}
