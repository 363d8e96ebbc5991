//! JSON and text renderings of solver results.

use serde::Serialize;

use riccati_core::aim::AimTrace;
use riccati_core::riccati::RiccatiEquation;
use riccati_core::symcore::{normalize_exp_sum, zero_constraints, Expr};
use riccati_core::verify::VerificationReport;
use riccati_core::Solution;

macro_rules! line {
    ($o:expr, $($t:tt)*) => {{
        $o.push_str(&format!($($t)*));
        $o.push('\n');
    }};
}

#[derive(Debug, Serialize)]
pub struct Verification {
    pub symbolic: bool,
    pub max_residual: Option<f64>,
    pub rk_deviation: Option<f64>,
}

impl From<&VerificationReport> for Verification {
    fn from(r: &VerificationReport) -> Self {
        Verification {
            symbolic: r.symbolic_residual_zero,
            max_residual: r
                .max_numeric_residual
                .is_finite()
                .then_some(r.max_numeric_residual),
            rk_deviation: r.rk_max_deviation,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceEntry {
    pub n: usize,
    pub delta_zero: bool,
    pub constraints: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Response {
    pub status: &'static str,
    pub solution: Option<String>,
    pub theorem: Option<String>,
    pub n: Option<usize>,
    pub constraints: Vec<String>,
    pub verification: Option<Verification>,
    pub trace: Vec<TraceEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Response {
    pub fn error(status: &'static str, message: String) -> Self {
        Response {
            status,
            solution: None,
            theorem: None,
            n: None,
            constraints: Vec::new(),
            verification: None,
            trace: Vec::new(),
            equation: None,
            error: Some(message),
        }
    }

    pub fn solved(sol: &Solution, report: Option<&VerificationReport>) -> Self {
        Response {
            status: "solved",
            solution: Some(canonical(&sol.expression)),
            theorem: Some(sol.method.to_string()),
            n: Some(sol.n),
            constraints: sol.constraints.iter().map(|c| format!("{c} = 0")).collect(),
            verification: report.map(Verification::from),
            trace: sol
                .trace
                .as_deref()
                .map(|t| trace_summary(t, sol.n))
                .unwrap_or_default(),
            equation: None,
            error: None,
        }
    }

    pub fn text(&self) -> String {
        let mut o = String::new();
        if let Some(eq) = &self.equation {
            line!(o, "equation: {eq}");
        }
        if let Some(e) = &self.error {
            line!(o, "{}: {e}", self.status);
        }
        if let Some(y) = &self.solution {
            line!(o, "y = {y}");
        }
        if let (Some(t), Some(n)) = (&self.theorem, self.n) {
            line!(o, "theorem {t}, n = {n}");
        }
        for c in &self.constraints {
            line!(o, "provided {c}");
        }
        for t in &self.trace {
            let flag = if t.delta_zero { "zero" } else { "nonzero" };
            if t.constraints.is_empty() {
                line!(o, "delta_{} {flag}", t.n);
            } else {
                line!(
                    o,
                    "delta_{} {flag}, vanishes when {}",
                    t.n,
                    t.constraints.join(" or ")
                );
            }
        }
        if let Some(v) = &self.verification {
            line!(
                o,
                "verification: symbolic {}, max residual {}, rk deviation {}",
                if v.symbolic { "zero" } else { "nonzero" },
                sci(v.max_residual),
                sci(v.rk_deviation)
            );
        }
        o
    }
}

pub fn sci(v: Option<f64>) -> String {
    v.map_or("n/a".to_string(), |v| format!("{v:.2e}"))
}

/// Expanded canonical printing, falling back to the raw expression.
pub fn canonical(e: &Expr) -> String {
    normalize_exp_sum(e).map_or_else(|_| e.to_string(), |n| n.to_string())
}

pub fn equation_text(eq: &RiccatiEquation) -> String {
    format!(
        "y' + ({})*y + ({})*y^2 = {}",
        canonical(&eq.p),
        canonical(&eq.q),
        canonical(&eq.r)
    )
}

/// Discriminant flags for `delta_1 .. delta_n`.
pub fn trace_summary(trace: &AimTrace, n: usize) -> Vec<TraceEntry> {
    (1..=n.min(trace.len()))
        .filter_map(|k| trace.delta(k).ok().map(|d| (k, d)))
        .map(|(k, d)| TraceEntry {
            n: k,
            delta_zero: d.is_zero(),
            constraints: if d.is_zero() {
                Vec::new()
            } else {
                zero_constraints(d)
                    .iter()
                    .map(|c| format!("{c} = 0"))
                    .collect()
            },
        })
        .collect()
}
