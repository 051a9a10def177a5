use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthocone")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const EXAMPLE: [&str; 4] = ["--v", "1,2,3,4,5", "--w", "3,4,5,9,10"];

fn with_example<'a>(cmd: &[&'a str]) -> Vec<&'a str> {
    [cmd, &EXAMPLE[..]].concat()
}

#[test]
fn enum_id_lists_two_tuples_for_d_2() {
    let o = run(&["enum-id", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1,2)\n(3,4)\n");
    let json: serde_json::Value = serde_json::from_slice(&run(&["enum-id", "--d", "2", "--out", "json"]).stdout).unwrap();
    assert_eq!(json["indices"], serde_json::json!([[1, 2], [3, 4]]));
}

#[test]
fn paper_example_suite_passes() {
    let o = run(&["verify", "paper-example"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("suite paper-example: PASS"));
    assert!(text.contains("di - cf + bg, dh - ce + ag, dj - be + af, cj - bh + ai, gj - fh + ei"));
}

#[test]
fn generators_of_the_example() {
    let o = run(&with_example(&["generators", "--out", "csv"]));
    assert_eq!(o.status.code(), Some(0));
    let polys: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(polys, ["di - cf + bg", "dh - ce + ag", "dj - be + af", "cj - bh + ai", "gj - fh + ei"]);
}

#[test]
fn example_initial_ideal_and_complex() {
    let o = run(&with_example(&["initial-ideal", "--out", "json"]));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["square_free"], true);
    assert_eq!(json["text"], serde_json::json!(["gj", "dj", "di", "dh", "cj", "cfh"]));
    let o = run(&with_example(&["complex", "--out", "json"]));
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["f_vector"], serde_json::json!([1, 10, 40, 85, 105, 76, 30, 5]));
    assert_eq!(json["dimension"], 6);
}

#[test]
fn top_w_gives_empty_basis_and_full_simplex() {
    let args = ["--v", "1,2,3", "--w", "3,5,6"];
    let o = run(&[&["groebner", "--out", "json"][..], &args].concat());
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["polynomials"], serde_json::json!([]));
    let o = run(&[&["complex", "--out", "json"][..], &args].concat());
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["minimal_nonfaces"], serde_json::json!([]));
    assert_eq!(json["f_vector"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(json["facets"].as_array().unwrap().len(), 1);
}

#[test]
fn invalid_indices_are_usage_errors() {
    let cases: [&[&str]; 4] = [
        &["generators", "--v", "1,2,4", "--w", "3,5,6"],
        &["generators", "--v", "3,5,6", "--w", "1,2,3"],
        &["generators", "--v", "1,2,3", "--w", "1,2"],
        &["enum-id", "--d", "0"],
    ];
    let needles = ["odd number of entries", "Bruhat order", "length", "dimension"];
    for (args, needle) in cases.iter().zip(needles) {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["groebner", "--v", "1,2,3", "--w", "3,5,6", "--order", "lex"]).status.code(), Some(2));
    assert_eq!(run(&["groebner", "--v", "1,2,3", "--w", "3,5,6", "--field", "fp:4"]).status.code(), Some(2));
    assert_eq!(run(&["groebner", "--v", "1,2,3", "--w", "3,5,6", "--max-degree", "0"]).status.code(), Some(2));
}

#[test]
fn resource_cap_exits_with_3() {
    let o = run(&with_example(&["groebner", "--max-basis", "2"]));
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource cap"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        with_example(&["complex", "--out", "json"]),
        with_example(&["groebner", "--order", "diagproj"]),
        vec!["verify", "order-axioms", "--seed", "7", "--out", "csv"],
        vec!["newform", "--v", "1,2,3,4,5,6", "--chain", "11:1,10:2,9:3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn orders_and_fields_agree_on_the_example() {
    let base = stdout(&run(&with_example(&["initial-ideal", "--out", "csv"])));
    for extra in [["--order", "rlex"], ["--order", "diagproj"], ["--field", "fp:32003"]] {
        let o = run(&[&with_example(&["initial-ideal", "--out", "csv"])[..], &extra].concat());
        assert_eq!(stdout(&o), base, "{extra:?}");
    }
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("orthocone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.toml");
    std::fs::write(&path, "v = [1, 2, 3, 4, 5]\nw = \"3,4,5,9,10\"\norder = \"rlex\"\nout = \"csv\"\n").unwrap();
    let cfg = path.to_str().unwrap();
    let o = run(&["generators", "--config", cfg]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("label,degree,polynomial\n"));
    let o = run(&["generators", "--config", cfg, "--out", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["order"], "rlex");
    std::fs::write(&path, "colour = \"blue\"\n").unwrap();
    assert_eq!(run(&["enum-id", "--d", "2", "--config", cfg]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pfaffians_symbolic_and_numeric() {
    let o = run(&["pfaffian", "--v", "1,2,3,4,5", "--tau", "1,6,7,8,9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("di - cf + bg"));
    // the anti-skew condition pairs (i, j) with (j*, i*)
    let o = run(&["pfaffian", "--matrix", "2,0;0,-2", "--row", "2"]);
    assert_eq!(stdout(&o), "Pf = 2\n");
    assert_eq!(run(&["pfaffian", "--matrix", "1,2;3,4"]).status.code(), Some(2));
}

#[test]
fn newform_lists_every_cutoff() {
    let o = run(&["newform", "--v", "1,2,3,4,5,6", "--chain", "11:1,10:2,9:3", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("2,-,defined,"));
    assert_eq!(run(&["newform", "--v", "1,2,3,4,5", "--chain", "10:1"]).status.code(), Some(2));
}
