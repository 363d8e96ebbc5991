//! Rows of the solution tables. Strings use the parameters `n`, `a`, `b`,
//! `c`, `k`.

use super::{DerivedRow, Hyp, SeedRow};

const fn hyp(num: &'static [&'static str], den: &'static [&'static str]) -> Hyp {
    Hyp { num, den }
}

/// Rows of the first simple form `y' - l0 y + y^2 = s0`; the second form
/// shares `(l0, s0)` and negates every solution.
pub const SEEDS: &[SeedRow] = &[
    SeedRow {
        row: 1,
        lambda0: "2*x",
        s0: "-4*n",
        extra: "0",
        prefactor: "-4*n*x",
        top: hyp(&["-n + 1"], &["3/2"]),
        bottom: hyp(&["-n"], &["1/2"]),
        argument: "x^2",
        interval: (-0.15, 0.15),
        erratum: None,
    },
    SeedRow {
        row: 2,
        lambda0: "2*x",
        s0: "-2*(2*n + 1)",
        extra: "1/x",
        prefactor: "-4*n*x/3",
        top: hyp(&["-n + 1"], &["5/2"]),
        bottom: hyp(&["-n"], &["3/2"]),
        argument: "x^2",
        interval: (-0.38, -0.08),
        erratum: None,
    },
    SeedRow {
        row: 3,
        lambda0: "a*x + b",
        s0: "-2*n*a",
        extra: "0",
        prefactor: "-2*n*(a*x + b)",
        top: hyp(&["-n + 1"], &["3/2"]),
        bottom: hyp(&["-n"], &["1/2"]),
        argument: "(a*x + b)^2/(2*a)",
        interval: (0.24, 0.54),
        erratum: None,
    },
    SeedRow {
        row: 4,
        lambda0: "a*x + b",
        s0: "-(2*n + 1)*a",
        extra: "a/(a*x + b)",
        prefactor: "-2*n*(a*x + b)/3",
        top: hyp(&["-n + 1"], &["5/2"]),
        bottom: hyp(&["-n"], &["3/2"]),
        argument: "(a*x + b)^2/(2*a)",
        interval: (0.61, 0.91),
        erratum: None,
    },
    SeedRow {
        row: 5,
        lambda0: "b - c/x",
        s0: "-n*b/x",
        extra: "0",
        prefactor: "-n*b/c",
        top: hyp(&["-n + 1"], &["c + 1"]),
        bottom: hyp(&["-n"], &["c"]),
        argument: "b*x",
        interval: (-0.38, -0.08),
        erratum: None,
    },
    SeedRow {
        row: 6,
        lambda0: "((b - n + 1)*x - c)/(x*(1 - x))",
        s0: "-n*b/(x*(1 - x))",
        extra: "0",
        prefactor: "-n*b/c",
        top: hyp(&["-n + 1", "b + 1"], &["c + 1"]),
        bottom: hyp(&["-n", "b"], &["c"]),
        argument: "x",
        interval: (-0.38, -0.08),
        erratum: None,
    },
    SeedRow {
        row: 7,
        lambda0: "((-2*n + 1)*x - c)/(x*(1 - x))",
        s0: "n^2/(x*(1 - x))",
        extra: "0",
        prefactor: "n^2/c",
        top: hyp(&["-n + 1", "-n + 1"], &["c + 1"]),
        bottom: hyp(&["-n", "-n"], &["c"]),
        argument: "x",
        interval: (0.08, 0.38),
        erratum: None,
    },
    SeedRow {
        row: 8,
        lambda0: "x/(1 - x^2)",
        s0: "-n^2/(1 - x^2)",
        extra: "0",
        prefactor: "n^2",
        top: hyp(&["-n + 1", "n + 1"], &["3/2"]),
        bottom: hyp(&["-n", "n"], &["1/2"]),
        argument: "(1 - x)/2",
        interval: (-0.38, -0.08),
        erratum: None,
    },
    SeedRow {
        row: 9,
        lambda0: "2*x/(1 - x^2)",
        s0: "-n*(n + 1)/(1 - x^2)",
        extra: "0",
        prefactor: "n*(n + 1)/2",
        top: hyp(&["-n + 1", "n + 2"], &["2"]),
        bottom: hyp(&["-n", "n + 1"], &["1"]),
        argument: "(1 - x)/2",
        interval: (-0.38, -0.08),
        erratum: None,
    },
    SeedRow {
        row: 10,
        lambda0: "3*x/(1 - x^2)",
        s0: "-n*(n + 2)/(1 - x^2)",
        extra: "0",
        prefactor: "n*(n + 2)/3",
        top: hyp(&["-n + 1", "n + 3"], &["5/2"]),
        bottom: hyp(&["-n", "n + 2"], &["3/2"]),
        argument: "(1 - x)/2",
        interval: (-0.38, -0.08),
        erratum: None,
    },
    SeedRow {
        row: 11,
        lambda0: "a*x/(1 - x^2)",
        s0: "-n*(n + a - 1)/(1 - x^2)",
        extra: "0",
        prefactor: "n*(n + a - 1)/a",
        top: hyp(&["-n + 1", "n + a"], &["a/2 + 1"]),
        bottom: hyp(&["-n", "n + a - 1"], &["a/2"]),
        argument: "(1 - x)/2",
        interval: (-0.38, -0.08),
        erratum: None,
    },
    SeedRow {
        row: 12,
        lambda0: "((a + b + 2)*x - b + a)/(1 - x^2)",
        s0: "-n*(n + a + b + 1)/(1 - x^2)",
        extra: "0",
        prefactor: "n*(n + a + b + 1)/(2*(a + 1))",
        top: hyp(&["-n + 1", "n + a + b + 2"], &["a + 2"]),
        bottom: hyp(&["-n", "n + a + b + 1"], &["a + 1"]),
        argument: "(1 - x)/2",
        interval: (-0.85, -0.55),
        erratum: None,
    },
    SeedRow {
        row: 13,
        lambda0: "(1 + 2*k)*x/(1 - x^2)",
        s0: "-n*(n + 2*k)/(1 - x^2)",
        extra: "0",
        prefactor: "n*(n + 2*k)/(2*k + 1)",
        top: hyp(&["-n + 1", "n + 2*k + 1"], &["k + 3/2"]),
        bottom: hyp(&["-n", "n + 2*k"], &["k + 1/2"]),
        argument: "(1 - x)/2",
        interval: (-0.38, -0.08),
        erratum: Some("prefactor printed as n(n+2k)/2; n(n+2k)/(2k+1) is required"),
    },
    SeedRow {
        row: 14,
        lambda0: "2*(1 + k)*x/(1 - x^2)",
        s0: "-n*(n + 2*k + 1)/(1 - x^2)",
        extra: "0",
        prefactor: "n*(n + 2*k + 1)/(2*(k + 1))",
        top: hyp(&["-n + 1", "n + 2*k + 2"], &["k + 2"]),
        bottom: hyp(&["-n", "n + 2*k + 1"], &["k + 1"]),
        argument: "(1 - x)/2",
        interval: (-1.38, -1.08),
        erratum: None,
    },
    SeedRow {
        row: 15,
        lambda0: "-2*(x + 1)/x^2",
        s0: "n*(n + 1)/x^2",
        extra: "0",
        prefactor: "n*(n + 1)/2",
        top: hyp(&["-n + 1", "n + 2"], &[]),
        bottom: hyp(&["-n", "n + 1"], &[]),
        argument: "-x/2",
        interval: (0.08, 0.38),
        erratum: None,
    },
    SeedRow {
        row: 16,
        lambda0: "-(a*x + b)/x^2",
        s0: "n*(n + a - 1)/x^2",
        extra: "0",
        prefactor: "n*(n + a - 1)/b",
        top: hyp(&["-n + 1", "n + a"], &[]),
        bottom: hyp(&["-n", "n + a - 1"], &[]),
        argument: "-x/b",
        interval: (-0.38, -0.08),
        erratum: None,
    },
];

const BC1: &[(&str, i64, i64)] = &[("b", 1, 1), ("c", 1, 1)];

const fn derived(row: usize, seed: usize, interval: (f64, f64)) -> DerivedRow {
    DerivedRow {
        row,
        seed,
        overrides: &[],
        interval,
        erratum: None,
    }
}

/// Third table: `Q = e^{int(l0+P)}`, `R = s0 e^{-int(l0+P)}`.
pub const TABLE4: &[DerivedRow] = &[
    derived(1, 1, (-1.09, -0.79)),
    derived(2, 2, (-0.38, -0.08)),
    DerivedRow {
        overrides: BC1,
        ..derived(3, 5, (1.08, 1.38))
    },
    derived(4, 5, (0.99, 1.29)),
    derived(5, 7, (0.08, 0.38)),
    derived(6, 6, (-0.38, -0.08)),
    derived(7, 8, (-0.38, -0.08)),
    derived(8, 9, (-0.38, -0.08)),
    derived(9, 10, (-0.38, -0.08)),
    derived(10, 11, (-0.38, -0.08)),
    derived(11, 14, (-1.38, -1.08)),
    derived(12, 13, (-0.38, -0.08)),
    derived(13, 15, (1.0, 1.3)),
    derived(14, 16, (1.0, 1.3)),
    derived(15, 12, (-0.85, -0.55)),
];

/// Fourth table: `R = e^{int(l0-P)}`, `Q = s0 e^{-int(l0-P)}`.
pub const TABLE5: &[DerivedRow] = &[
    derived(1, 1, (-0.38, -0.08)),
    derived(2, 2, (-1.09, -0.79)),
    derived(3, 3, (0.08, 0.38)),
    derived(4, 4, (0.24, 0.54)),
    DerivedRow {
        overrides: BC1,
        ..derived(5, 5, (0.08, 0.38))
    },
    derived(6, 5, (0.59, 0.89)),
    DerivedRow {
        erratum: Some(
            "hypergeometric functions printed as 1F1 with two numerator parameters; 2F1 is meant",
        ),
        ..derived(7, 6, (-0.38, -0.08))
    },
    DerivedRow {
        erratum: Some(
            "hypergeometric functions printed as 1F1 with two numerator parameters; 2F1 is meant",
        ),
        ..derived(8, 7, (0.08, 0.38))
    },
    derived(9, 9, (-0.83, -0.53)),
    derived(10, 12, (-0.61, -0.31)),
    derived(11, 8, (-0.38, -0.08)),
    derived(12, 10, (-0.79, -0.49)),
    derived(13, 13, (-0.79, -0.49)),
    derived(14, 14, (-0.76, -0.46)),
    derived(15, 15, (-0.38, -0.08)),
    DerivedRow {
        erratum: Some("last 2F0 argument printed as -x/2; -x/b is required"),
        ..derived(16, 16, (-0.38, -0.08))
    },
];

/// Fifth table: free `R`, `P = R'/R - l0`.
pub const TABLE6: &[DerivedRow] = &[
    derived(1, 1, (-0.38, -0.08)),
    DerivedRow {
        erratum: Some("the 1/x term and the ratio in the solution's denominator carry the wrong sign"),
        ..derived(2, 2, (-0.15, 0.15))
    },
    derived(3, 3, (0.61, 0.91)),
    DerivedRow {
        erratum: Some("the a/(ax+b) term and the ratio in the solution's denominator carry the wrong sign"),
        ..derived(4, 4, (0.94, 1.24))
    },
    derived(5, 5, (-0.38, -0.08)),
    derived(6, 7, (0.08, 0.38)),
    DerivedRow {
        erratum: Some("denominator 2F1(-n,-n;c;x) printed; 2F1(-n,b;c;x) is required"),
        ..derived(7, 6, (-0.38, -0.08))
    },
    derived(8, 16, (-0.38, -0.08)),
    DerivedRow {
        erratum: Some("P printed as R'/R + 2(k+1)x/(1-x^2); the equation and solution need R'/R - 2(k+1)x/(1-x^2)"),
        ..derived(9, 14, (-1.38, -1.08))
    },
    DerivedRow {
        erratum: Some("P printed as R'/R + (2k+1)x/(1-x^2); the equation and solution need R'/R - (2k+1)x/(1-x^2)"),
        ..derived(10, 13, (-1.38, -1.08))
    },
];
