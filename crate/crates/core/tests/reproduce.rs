use fanodist::reproduce::{manifest, reproduce_fuzz, reproduce_tables, CellSpec, Status, TablesReport, WINDOW};

#[test]
fn every_cell_but_the_quartic_chain_h1_passes() {
    let rep = reproduce_tables().unwrap();
    assert_eq!(rep.window, WINDOW);
    let failing: Vec<&str> = rep
        .cells
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.id.as_str())
        .collect();
    assert_eq!(failing, ["table2/Y[quartic]/h1_omega2"]);
    let cell = rep.cell("table2/Y[quartic]/h1_omega2").unwrap();
    assert_eq!(cell.computed, "t>7 (quartic)");
    assert!(cell.note.contains("certified nonzero"), "{}", cell.note);
    assert_eq!(rep.passed + rep.failed, manifest().unwrap().len());
}

#[test]
fn table_one_is_sharp() {
    let rep = reproduce_tables().unwrap();
    for c in rep.cells.iter().filter(|c| c.table == "table1" && c.column != "index") {
        assert_eq!(c.status, Status::Pass, "{}", c.id);
        assert_eq!(c.expected, c.computed.split(' ').next().unwrap(), "{}", c.id);
    }
}

#[test]
fn manifest_covers_both_tables() {
    let cells = manifest().unwrap();
    let thresholds = |t: &str| {
        cells
            .iter()
            .filter(|c| matches!(c, CellSpec::Threshold { table, .. } if table == t))
            .count()
    };
    assert_eq!(thresholds("table1"), 8);
    assert_eq!(thresholds("table2"), 10);
}

#[test]
fn report_json_roundtrips_byte_identically() {
    let rep = reproduce_tables().unwrap();
    let a = serde_json::to_string_pretty(&rep).unwrap();
    let back: TablesReport = serde_json::from_str(&a).unwrap();
    assert_eq!(back, rep);
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), a);
    assert_eq!(reproduce_tables().unwrap().to_text(), rep.to_text());
}

#[test]
fn fuzz_suites_pass_at_full_size() {
    let rep = reproduce_fuzz(2024, 1000, 500).unwrap();
    assert!(rep.all_pass(), "{}", rep.to_text());
    assert_eq!(rep, reproduce_fuzz(2024, 1000, 500).unwrap());
}
