//! Misprinted table entries fail as printed and hold once corrected.

use riccati_core::fixtures::{run_case, table_cases, SeedRow, TableCase, TableId};
use riccati_core::riccati::{generate_family_t6, RiccatiEquation};
use riccati_core::symcore::parse;

#[test]
fn legendre_type_prefactor() {
    for case in table_cases(TableId::T1, &[1, 2, 3])
        .into_iter()
        .filter(|c| c.row == 13)
    {
        assert!(run_case(&case, false, 11).passed(), "n = {}", case.n);
        let printed = SeedRow {
            prefactor: "n*(n + 2*k)/2",
            ..case.seed
        };
        let out = run_case(&case_with(case.clone(), printed), false, 11);
        assert!(out.residual_zero && !out.matches_table, "n = {}", case.n);
    }
}

fn case_with(mut case: TableCase, seed: SeedRow) -> TableCase {
    case.seed = seed;
    case
}

#[test]
fn sixth_transform_needs_p_in_back_map() {
    let (l0, s0) = (parse("2*x", &[]).unwrap(), parse("-4", &[]).unwrap());
    let fam = generate_family_t6(&l0, &s0, &parse("1", &[]).unwrap(), 24).unwrap();
    let eq: &RiccatiEquation = &fam.equation;
    let alpha = "4*x/(1 - 2*x^2)";
    let without = parse(&format!("-({alpha})*exp(x - x^2)"), &[]).unwrap();
    let with = parse(&format!("-({alpha} + 1)*exp(x - x^2)"), &[]).unwrap();
    assert!(!eq.residual(&without).unwrap().is_zero());
    assert!(eq.residual(&with).unwrap().is_zero());
}
