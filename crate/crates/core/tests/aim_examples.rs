use riccati_core::aim::{
    aim_iterate, find_termination, solve_theorem1, solve_theorem2, Termination,
};
use riccati_core::symcore::{normalize, parse};

const ABCM: &[&str] = &["a", "b", "c", "m"];

#[test]
fn quotient_example_terminates_at_two() {
    let l0 = parse(
        "-((m - a)*x^2 + (2*c*m - 1)*x - c)/(a*x^3 + b*x^2 + c*x)",
        ABCM,
    )
    .unwrap();
    let s0 = parse("-(-2*m*x + 1)/(a*x^3 + b*x^2 + c*x)", ABCM).unwrap();
    let tr = aim_iterate(&l0, &s0, 3).unwrap();
    assert!(!tr.delta(1).unwrap().is_zero());
    assert!(tr.delta(2).unwrap().is_zero());
    let sol = solve_theorem1(&l0, &s0, 24).unwrap();
    assert_eq!(sol.n, 2);
    let want = parse(
        "(2*(m + a)*x + 4*c*m + 2*b - 1)/((m + a)*x^2 + (4*c*m + 2*b - 1)*(x + c))",
        ABCM,
    )
    .unwrap();
    let got = sol.normal.clone().unwrap();
    let w = normalize(&want).unwrap();
    assert!(got == w || got == w.neg(), "{got}");
}

#[test]
fn cubic_seed_terminates_at_nine() {
    let tr = aim_iterate(
        &parse("3*x^3", &[]).unwrap(),
        &parse("-27*x^2", &[]).unwrap(),
        9,
    )
    .unwrap();
    assert_eq!(find_termination(&tr).unwrap(), Termination::Exact { n: 9 });
}

#[test]
fn table_one_first_row() {
    let sol = solve_theorem1(&parse("2*x", &[]).unwrap(), &parse("-4", &[]).unwrap(), 24).unwrap();
    assert_eq!(
        sol.normal.unwrap(),
        normalize(&parse("-4*x/(1 - 2*x^2)", &[]).unwrap()).unwrap()
    );
}

#[test]
fn no_termination() {
    let tr = aim_iterate(&parse("x", &[]).unwrap(), &parse("1", &[]).unwrap(), 6).unwrap();
    assert_eq!(find_termination(&tr).unwrap(), Termination::None);
}

#[test]
fn oscillator_branches() {
    let l0 = parse("3*a*x + 1/x", &["a"]).unwrap();
    let s0 = parse("a^2", &["a"]).unwrap();
    let sol = solve_theorem2(&l0, &s0, 24).unwrap();
    assert!(!sol.constraints.is_empty());
    assert!(sol.certified);
}
