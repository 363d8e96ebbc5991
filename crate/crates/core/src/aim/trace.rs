use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symcore::{normalize, Expr, NormalForm, Polynomial, RatFun, Rational, Var};

/// Default iteration bound.
pub const DEFAULT_N_MAX: usize = 24;
/// Default bound on the total degree of any numerator in the trace.
pub const DEFAULT_DEGREE_BOUND: u32 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AimOptions {
    pub n_max: usize,
    pub degree_bound: u32,
}

impl Default for AimOptions {
    fn default() -> Self {
        AimOptions {
            n_max: DEFAULT_N_MAX,
            degree_bound: DEFAULT_DEGREE_BOUND,
        }
    }
}

impl AimOptions {
    pub fn with_n_max(n_max: usize) -> Self {
        AimOptions {
            n_max,
            ..Default::default()
        }
    }
}

/// The sequences `lambda_n`, `s_n` for `n = -1..=N` and the discriminants
/// `delta_n` for `n = 1..=N`. Discriminants are computed on first access.
#[derive(Debug)]
pub struct AimTrace {
    lambda: Vec<NormalForm>,
    s: Vec<NormalForm>,
    delta: Vec<OnceLock<NormalForm>>,
    n_max: usize,
    probe: Vec<BTreeMap<Var, Rational>>,
}

impl Clone for AimTrace {
    fn clone(&self) -> Self {
        AimTrace {
            lambda: self.lambda.clone(),
            s: self.s.clone(),
            delta: self
                .delta
                .iter()
                .map(|d| {
                    let c = OnceLock::new();
                    if let Some(v) = d.get() {
                        let _ = c.set(v.clone());
                    }
                    c
                })
                .collect(),
            n_max: self.n_max,
            probe: self.probe.clone(),
        }
    }
}

impl AimTrace {
    /// Trace holding only `lambda_{-1} = 1, s_{-1} = 0, lambda_0, s_0`.
    pub fn start(lambda0: NormalForm, s0: NormalForm, n_max: usize) -> Self {
        let mut vars: Vec<Var> = Vec::new();
        for nf in [&lambda0, &s0] {
            for p in [nf.numerator(), nf.denominator(), nf.x_power(), nf.exp_arg()] {
                for v in p.vars() {
                    if !vars.contains(&v) {
                        vars.push(v);
                    }
                }
            }
        }
        if !vars.contains(&Var::x()) {
            vars.push(Var::x());
        }
        AimTrace {
            lambda: vec![NormalForm::one(), lambda0],
            s: vec![NormalForm::zero(), s0],
            delta: Vec::new(),
            n_max,
            probe: probe_points(&vars),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Largest `n` for which `lambda_n`, `s_n` and `delta_n` are available.
    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn lambda0(&self) -> &NormalForm {
        &self.lambda[1]
    }

    pub fn s0(&self) -> &NormalForm {
        &self.s[1]
    }

    /// `lambda_n` for `-1 <= n <= len`.
    pub fn lambda(&self, n: isize) -> &NormalForm {
        &self.lambda[(n + 1) as usize]
    }

    /// `s_n` for `-1 <= n <= len`.
    pub fn s(&self, n: isize) -> &NormalForm {
        &self.s[(n + 1) as usize]
    }

    /// `delta_n = lambda_n s_{n-1} - lambda_{n-1} s_n` for `1 <= n <= len`.
    pub fn delta(&self, n: usize) -> Result<&NormalForm> {
        assert!(n >= 1 && n <= self.len(), "delta index out of range");
        if let Some(d) = self.delta[n - 1].get() {
            return Ok(d);
        }
        let n = n as isize;
        let d = self
            .lambda(n)
            .mul(self.s(n - 1))
            .sub(&self.lambda(n - 1).mul(self.s(n)))?;
        Ok(self.delta[n as usize - 1].get_or_init(|| d))
    }

    /// All discriminants, forcing each one.
    pub fn deltas(&self) -> Result<Vec<&NormalForm>> {
        (1..=self.len()).map(|n| self.delta(n)).collect()
    }

    /// Cheap certificate that `delta_n != 0`: evaluates the discriminant
    /// exactly at a few rational points. `false` means "possibly zero".
    pub fn delta_certainly_nonzero(&self, n: usize) -> bool {
        if let Some(d) = self.delta[n - 1].get() {
            return !d.is_zero();
        }
        let n = n as isize;
        let parts = [self.lambda(n), self.s(n - 1), self.lambda(n - 1), self.s(n)];
        let keys_match = parts[0].x_power() == parts[2].x_power()
            && parts[1].x_power() == parts[3].x_power()
            && parts[0].exp_arg() == parts[2].exp_arg()
            && parts[1].exp_arg() == parts[3].exp_arg();
        if !keys_match {
            return false;
        }
        for point in &self.probe {
            let vals: Option<Vec<Rational>> = parts
                .iter()
                .map(|p| eval_exact(p.ratfun(), point))
                .collect();
            if let Some(v) = vals {
                let d = &v[0] * &v[1] - &v[2] * &v[3];
                if !d.is_zero() {
                    return true;
                }
            }
        }
        false
    }

    /// Appends `lambda_{N+1}`, `s_{N+1}` (and the lazy `delta_{N+1}`).
    pub fn step(&mut self, degree_bound: u32) -> Result<()> {
        let n = self.len() as isize;
        let l0 = self.lambda0().clone();
        let s0 = self.s0().clone();
        let lp = self.lambda(n);
        let sp = self.s(n);
        // when extending from n, the new index is n + 1
        let lam = lp.derivative().add(sp)?.add(&l0.mul(lp))?;
        let s = sp.derivative().add(&s0.mul(lp))?;
        for nf in [&lam, &s] {
            let deg = nf
                .numerator()
                .total_degree()
                .max(nf.denominator().total_degree());
            if deg > degree_bound {
                return Err(Error::Resource(format!(
                    "degree {deg} exceeds the bound {degree_bound} at n = {}",
                    n + 1
                )));
            }
        }
        self.lambda.push(lam);
        self.s.push(s);
        self.delta.push(OnceLock::new());
        Ok(())
    }

    /// Extends the trace up to `n` (capped at `n_max`).
    pub fn extend_to(&mut self, n: usize, degree_bound: u32) -> Result<()> {
        while self.len() < n.min(self.n_max) {
            self.step(degree_bound)?;
        }
        Ok(())
    }
}

fn probe_points(vars: &[Var]) -> Vec<BTreeMap<Var, Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_da11);
    (0..3)
        .map(|_| {
            vars.iter()
                .map(|v| {
                    let num: i64 = rng.gen_range(-97..=97);
                    let den: i64 = rng.gen_range(1..=31);
                    let q = Rational::new(BigInt::from(num), BigInt::from(den));
                    (v.clone(), q)
                })
                .collect()
        })
        .collect()
}

fn eval_exact(r: &RatFun, point: &BTreeMap<Var, Rational>) -> Option<Rational> {
    let at = |p: &Polynomial| -> Option<Rational> {
        p.eval_partial(|v| point.get(v).cloned()).constant_value()
    };
    let den = at(r.denominator())?;
    if den.is_zero() {
        return None;
    }
    Some(at(r.numerator())? / den)
}

/// Runs the recurrence up to `n_max` with default options.
pub fn aim_iterate(lambda0: &Expr, s0: &Expr, n_max: usize) -> Result<AimTrace> {
    aim_iterate_with(lambda0, s0, AimOptions::with_n_max(n_max))
}

pub fn aim_iterate_with(lambda0: &Expr, s0: &Expr, opts: AimOptions) -> Result<AimTrace> {
    if opts.n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let mut t = AimTrace::start(normalize(lambda0)?, normalize(s0)?, opts.n_max);
    t.extend_to(opts.n_max, opts.degree_bound)?;
    Ok(t)
}
