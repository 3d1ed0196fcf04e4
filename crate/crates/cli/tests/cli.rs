use std::path::PathBuf;
use std::process::{Command, Output};

fn algres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("family_Iab_a_2_b_2_n_1", &["--family", "Iab", "--a", "2", "--b", "2", "--n", "1"]),
    ("family_Iab_a_2_b_2_n_2", &["--family", "Iab", "--a", "2", "--b", "2", "--n", "2"]),
    ("family_I2ap1_a_3_n_2", &["--family", "I2a+1", "--a", "3", "--n", "2"]),
    ("family_I2ap4_a_2_n_2", &["--family", "I2a+4", "--a", "2", "--n", "2"]),
    ("family_Iap5_a_4_n_2", &["--family", "Ia+5", "--a", "4", "--n", "2"]),
    ("family_I10star_n_1", &["--family", "I10star", "--n", "1"]),
    ("family_I10star_n_2", &["--family", "I10star", "--n", "2"]),
];

#[test]
fn table_output_matches_golden_files() {
    for (stem, args) in GOLDEN {
        for json in [false, true] {
            let mut full = vec!["table"];
            full.extend_from_slice(args);
            if json {
                full.push("--json");
            }
            let out = algres(&full);
            assert!(out.status.success(), "{stem}: {}", stderr(&out));
            let ext = if json { "json" } else { "txt" };
            let expected = std::fs::read(golden_dir().join(format!("{stem}.{ext}"))).unwrap();
            assert_eq!(out.stdout, expected, "{stem}.{ext}");
        }
    }
}

#[test]
fn table_json_schema() {
    let out = algres(&["table", "--family", "I10star", "--n", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["classes", "family", "n", "notes", "params"]);
    assert_eq!(v["family"], "I10star");
    assert_eq!(v["n"], 2);
    let classes = v["classes"].as_array().unwrap();
    let mu: Vec<u64> = classes.iter().map(|c| c["mu"].as_u64().unwrap()).collect();
    assert_eq!(mu, [0, 1, 2, 3]);
    let iota: Vec<serde_json::Value> = classes.iter().map(|c| c["iota"].clone()).collect();
    assert_eq!(iota, [serde_json::json!(0), serde_json::json!(1), serde_json::json!(2), serde_json::json!("inf")]);
    for (i, c) in classes.iter().enumerate() {
        assert_eq!(c["index"], i);
        assert_eq!(c["cod"], c["mu"]);
        assert_eq!(c["realizable"], true);
        assert_eq!(c["normal_form"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn qh_check_reports_weights() {
    let out = algres(&["qh-check", "--vars", "y,z", "--ideal", "y^2, z^4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "weights (2, 1), degrees (4, 4)\n");

    let out = algres(&["qh-check", "--vars", "y,z", "--ideal", "y^2 + z^3 + z^4, y*z"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "not quasi-homogeneous in given coordinates\n");
}

#[test]
fn restrict_basis_example() {
    let out = algres(&["restrict-basis", "--vars", "y,z", "--ideal", "y^2, z^4", "--p", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "dim 3: dy^dz, z*dy^dz, z^2*dy^dz\n");

    let out = algres(&["restrict-basis", "--vars", "y,z", "--ideal", "y^2, z^4", "--closed", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 3);
}

#[test]
fn reduce_gives_rational_coordinates() {
    let out = algres(&[
        "reduce", "--vars", "y,z", "--ideal", "y^2, z^4", "--form", "(1 + 1/2*z - 3*z^2 + y)*dy^dz", "--json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coords"], serde_json::json!(["1", "1/2", "-3"]));
}

#[test]
fn primitive_is_printed() {
    let out = algres(&["primitive", "--vars", "y,z", "--ideal", "y^2, z^4", "--form", "y^2*dy^dz"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "-1/7*y^2*z*dy + 2/7*y^3*dz\n");
}

#[test]
fn invariants_of_standard_classes() {
    let out = algres(&["invariants", "--n", "2", "--ideal", "p1^2, p2^4, q1, q2 + p1*p2^2", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mu"], 2);
    assert_eq!(v["iota"], 2);
    assert_eq!(v["zero_restriction"], false);
    assert_eq!(v["realizable"], true);

    let out = algres(&["invariants", "--n", "2", "--ideal", "p1^2, p2^4, q1, q2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["iota"], "inf");
    assert_eq!(v["zero_restriction"], true);
}

#[test]
fn invariants_on_a_plane_in_c4() {
    let out = algres(&["invariants", "--n", "2", "--vars", "y,z", "--ideal", "y^2, z^4", "--form", "z*dy^dz", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coords"], serde_json::json!(["0", "1", "0"]));
    assert_eq!(v["iota"], 1);
    assert_eq!(v["realizable"], true);
}

#[test]
fn classify_reports_class() {
    let out = algres(&["classify", "--n", "2", "--ideal", "p1^2, p2^4, q1, q2 + p1*p2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("I*_{10}^1 "), "{}", stdout(&out));

    let out = algres(&["classify", "--n", "2", "--family", "Iab", "--ideal", "p1^2, p2^4, q1, q2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("precondition"));
}

#[test]
fn input_file_supplies_missing_flags() {
    let dir = std::env::temp_dir().join(format!("algres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("problem.txt");
    std::fs::write(&path, "# example\nvars: y, z\nideal: y^2, z^4\nform: z^2*dy^dz\n").unwrap();
    let p = path.to_str().unwrap();
    let out = algres(&["--input", p, "reduce", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coords"], serde_json::json!(["0", "0", "1"]));

    let out = algres(&["--input", p, "reduce", "--form", "dy^dz", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coords"], serde_json::json!(["1", "0", "0"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(algres(&["--help"]).status.code(), Some(0));
    assert_eq!(algres(&["--version"]).status.code(), Some(0));
    assert_eq!(algres(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(algres(&["table", "--family", "Iab"]).status.code(), Some(1));

    let out = algres(&["reduce", "--vars", "y,z", "--ideal", "y^2, z^4", "--form", "dy^dy"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("column"), "{}", stderr(&out));

    let out = algres(&["qh-check", "--vars", "y,y", "--ideal", "y"]);
    assert_eq!(out.status.code(), Some(1));

    let out = algres(&["table", "--family", "Iab", "--a", "1", "--b", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: "));

    let out = algres(&["restrict-basis", "--vars", "y,z", "--ideal", "y*z"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("zero-dimensional"));

    let out = algres(&["primitive", "--vars", "y,z", "--ideal", "y^2, z^4", "--form", "y*dy^dz"]);
    assert_eq!(out.status.code(), Some(2));

    let out = algres(&["restrict-basis", "--vars", "y,z", "--ideal", "y^2, z^30", "--trunc-cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_is_callable_in_process() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = algres_cli::run(["algres", "table", "--family", "I10*", "--n", "1"], &mut out, &mut err);
    assert_eq!(code, 0);
    let expected = std::fs::read(golden_dir().join("family_I10star_n_1.txt")).unwrap();
    assert_eq!(out, expected);
    assert!(err.is_empty());
}
