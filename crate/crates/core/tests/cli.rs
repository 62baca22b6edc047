use hp2::atlas;
use hp2::cli::run;

fn hp2(args: &[&str]) -> hp2::cli::RunOutcome {
    run(std::iter::once("hp2").chain(args.iter().copied()))
}

#[test]
fn check_cp2() {
    let out = hp2(&["check", "cp2_9"]);
    assert_eq!(out.code, 0, "{}", out.summary);
    let report = out.report.unwrap();
    let row = &report.result[0];
    assert_eq!(row["f_vector"], serde_json::json!([9, 36, 84, 90, 36]));
    assert_eq!(row["euler_characteristic"], 3);
    assert_eq!(row["complementarity"], "ok");
    assert_eq!(report.inputs_digest.len(), 64);
}

#[test]
fn check_failure_and_usage_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l1star.dat");
    std::fs::write(&path, atlas::save_dat(&[atlas::table_sphere("L1star").unwrap()])).unwrap();
    let out = hp2(&["check", path.to_str().unwrap(), "--dim", "3"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.report.unwrap().result[0]["orientable"], false);
    assert_eq!(hp2(&["no-such-command"]).code, 2);
    assert_eq!(hp2(&["check", "no_such_entry"]).code, 2);
    assert_eq!(hp2(&["check", "cp2_9", "--coeff", "F4"]).code, 2);
}

#[test]
fn iso_and_symm() {
    assert_eq!(hp2(&["iso", "L1", "L1"]).code, 0);
    assert_eq!(hp2(&["iso", "L1", "cp2_9"]).code, 1);
    let out = hp2(&["symm", "rp2_6"]);
    assert_eq!(out.report.unwrap().result["order"], 60);
}

#[test]
fn find_writes_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("rp2.dat");
    let out_str = out_path.to_str().unwrap();
    let out = hp2(&[
        "find", "--dim", "2", "--nverts", "6", "--min-facets", "10", "--out", out_str,
    ]);
    assert_eq!(out.code, 0, "{}", out.summary);
    let report = out.report.unwrap();
    assert_eq!(report.counters["solutions"], 12);
    assert_eq!(report.counters["iso_classes"], 1);
    assert_eq!(report.artifacts, vec![out_str.to_string()]);
    let out = hp2(&["verify", out_str, "--dim", "2", "--min-facets", "10", "--star"]);
    assert_eq!(out.code, 0, "{}", out.summary);
    let out = hp2(&["iso-group", out_str]);
    assert_eq!(out.report.unwrap().counters["classes"], 1);
}

#[test]
fn find_with_named_group() {
    let out = hp2(&[
        "--threads", "2", "find", "--dim", "8", "--nverts", "15", "--min-facets", "490", "--group", "A5",
    ]);
    assert_eq!(out.code, 0, "{}", out.summary);
    let report = out.report.unwrap();
    assert_eq!(report.counters["solutions"], 6);
    assert_eq!(report.result["classes"][0]["sym_order"], 60);
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("cp2.json");
    let dat = dir.path().join("cp2.dat");
    assert_eq!(hp2(&["atlas", "cp2_9", "--out", json.to_str().unwrap()]).code, 0);
    assert_eq!(hp2(&["convert", json.to_str().unwrap(), dat.to_str().unwrap()]).code, 0);
    let back = atlas::load_dat(&std::fs::read_to_string(&dat).unwrap()).unwrap();
    assert_eq!(back, vec![atlas::cp2_9()]);
}

#[test]
fn atlas_listing() {
    let out = hp2(&["atlas"]);
    let names = &out.report.unwrap().result["complexes"];
    assert!(names.as_array().unwrap().iter().any(|n| n == "L9"));
}

#[test]
fn flip_graph_of_cp2() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let out = hp2(&["flip-graph", "cp2_9", "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.summary);
    let report = out.report.unwrap();
    assert_eq!(report.counters["nodes"], 1);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));
}

#[test]
fn fixed_points_and_fvect() {
    let out = hp2(&["fixed", "L1", "--group", "C5_free"]);
    assert_eq!(out.code, 2, "C5_free acts on 15 slots");
    let out = hp2(&["fixed", "L1", "--gen", "(1 2 3 4 5)(6 7 8 9 10)"]);
    assert_eq!(out.code, 0, "{}", out.summary);
    let out = hp2(&["fvect", "L1"]);
    assert_eq!(out.report.unwrap().result[0]["euler_characteristic"], 0);
}

#[test]
fn find_with_cycle_generators_then_cert() {
    let gens: Vec<String> = atlas::named_group("A5")
        .unwrap()
        .generators()
        .iter()
        .map(|g| g.to_string())
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("a5.dat");
    let out_str = out_path.to_str().unwrap();
    let group = gens.join(";");
    let out = hp2(&[
        "find", "--dim", "8", "--nverts", "15", "--min-facets", "490", "--group", &group, "--star",
        "--out", out_str,
    ]);
    assert_eq!(out.code, 0, "{}", out.summary);
    assert_eq!(out.report.unwrap().counters["solutions"], 6);
    let out = hp2(&["cert", out_str]);
    let rows = out.report.unwrap().result;
    assert_eq!(rows.as_array().unwrap().len(), 6);
    assert_eq!(rows[0]["m"], serde_json::json!([1170, 1740, 870, 360, 60, 30]));
    assert_eq!(rows[0]["t"], 5);
}
