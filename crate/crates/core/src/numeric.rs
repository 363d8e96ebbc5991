//! Adaptive Gauss–Kronrod quadrature and a fixed-step RK4 integrator.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: (Kronrod estimate, error estimate).
fn gk15<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx)? + f(c + dx)?;
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Ok((kronrod * h, ((kronrod - gauss) * h).abs()))
}

/// Integrates `f` over `[a, b]` to the combined tolerance
/// `max(abs_tol, rel_tol * |I|)`. Reversed limits flip the sign.
pub fn integrate<F: Fn(f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, abs_tol, rel_tol).map(|v| -v);
    }
    const MAX_PANELS: usize = 2000;
    let (v, e) = gk15(&f, a, b)?;
    let mut panels = vec![(a, b, v, e)];
    for _ in 0..MAX_PANELS {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::Quadrature { a, b });
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        let (i, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (lo, hi, _, _) = panels.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Quadrature { a, b });
        }
        let (v1, e1) = gk15(&f, lo, mid)?;
        let (v2, e2) = gk15(&f, mid, hi)?;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
    Err(Error::Quadrature { a, b })
}

/// Magnitude treated as a blow-up by [`rk4`].
pub const ESCAPE: f64 = 1e12;

/// Classic fourth-order Runge–Kutta for `y' = f(x, y)` with `steps` equal
/// steps from `x0` to `x1`. Returns the mesh including both endpoints.
pub fn rk4<F: Fn(f64, f64) -> Result<f64>>(
    f: F,
    x0: f64,
    y0: f64,
    x1: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    if steps == 0 {
        return Err(Error::InvalidInput("rk4 needs at least one step".into()));
    }
    let h = (x1 - x0) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push((x0, y));
    for i in 0..steps {
        let x = x0 + h * i as f64;
        let k1 = f(x, y)?;
        let k2 = f(x + 0.5 * h, y + 0.5 * h * k1)?;
        let k3 = f(x + 0.5 * h, y + 0.5 * h * k2)?;
        let k4 = f(x + h, y + h * k3)?;
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let xn = if i + 1 == steps {
            x1
        } else {
            x0 + h * (i + 1) as f64
        };
        if !y.is_finite() || y.abs() > ESCAPE {
            return Err(Error::IntegrationEscaped { x: xn });
        }
        out.push((xn, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| Ok(x * x * x - 2.0 * x), 0.0, 2.0, 1e-13, 1e-13).unwrap();
        assert!((v - 0.0).abs() < 1e-12);
        let w = integrate(|x| Ok(x.powi(6)), -1.0, 1.0, 1e-14, 1e-14).unwrap();
        assert!((w - 2.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn peaked_integrand_adapts() {
        let v = integrate(|x| Ok(1.0 / (1e-4 + x * x)), -1.0, 1.0, 1e-10, 1e-12).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v - exact).abs() / exact < 1e-10);
    }

    #[test]
    fn reversed_limits() {
        let v = integrate(|x| Ok(x.exp()), 1.0, 0.0, 1e-13, 1e-13).unwrap();
        assert!((v + (1f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn rk4_fourth_order() {
        // y' = -y^2, y(0) = 1 has y = 1/(1+x)
        let err = |n| {
            let mesh = rk4(|_, y| Ok(-y * y), 0.0, 1.0, 1.0, n).unwrap();
            mesh.iter()
                .map(|&(x, y)| (y - 1.0 / (1.0 + x)).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(40) / err(20);
        assert!(ratio < 1.0 / 12.0, "ratio {ratio}");
    }

    #[test]
    fn rk4_detects_escape() {
        // y' = y^2, y(0) = 1 blows up at x = 1
        assert!(matches!(
            rk4(|_, y| Ok(y * y), 0.0, 1.0, 2.0, 2000),
            Err(Error::IntegrationEscaped { .. })
        ));
    }
}
