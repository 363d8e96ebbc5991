use riccati_core::fixtures::{run_cases, table_cases, CaseOutcome, TableId};

fn check(table: TableId) -> Vec<CaseOutcome> {
    let cases = table_cases(table, &table.default_ns());
    let out = run_cases(&cases, true, 11);
    let bad: Vec<String> = out
        .iter()
        .filter(|o| {
            !o.passed()
                || !o
                    .verification
                    .as_ref()
                    .is_some_and(|v| v.passes(1e-8, 1e-6))
        })
        .map(|o| {
            format!(
                "table {} row {} n {} free {}: match={} residual={} err={:?} sol={:?} verify={:?}",
                o.table,
                o.row,
                o.n,
                o.free,
                o.matches_table,
                o.residual_zero,
                o.error,
                o.solution,
                o.verification.as_ref().map(|v| (
                    v.max_numeric_residual,
                    v.rk_max_deviation,
                    v.grid.len(),
                    v.rk_note.clone()
                ))
            )
        })
        .collect();
    assert!(
        bad.is_empty(),
        "{} failing cases:\n{}",
        bad.len(),
        bad.join("\n")
    );
    out
}

#[test]
fn first_table() {
    assert_eq!(check(TableId::T1).len(), 64);
}

#[test]
fn second_table() {
    assert_eq!(check(TableId::T2).len(), 64);
}

#[test]
fn third_family_table() {
    check(TableId::T4);
}

#[test]
fn fourth_family_table() {
    check(TableId::T5);
}

#[test]
fn fifth_family_table() {
    check(TableId::T6);
}
