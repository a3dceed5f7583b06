//! Golden transcripts for the `ekrlab` binary: outputs and exit codes.

use std::process::{Command, Output};

fn ekrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekrlab"))
        .args(args)
        .env_remove("EKRLAB_SCALE_GUARD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value, String) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = ekrlab(&full);
    let text = stdout(&o);
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (o.status.code().unwrap(), value, text)
}

#[test]
fn exhaustive_check_reports_the_142_family() {
    let o = ekrlab(&[
        "check",
        "--n",
        "11",
        "--r",
        "5",
        "--X",
        "{4,7}",
        "--scope",
        "exhaustive",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("max |A(X)| = 142"), "{text}");
    assert!(text.contains("|S(X)|     = 140"), "{text}");
    assert!(text.contains("NOT EKR"), "{text}");
}

#[test]
fn single_generator_check_is_ekr_at_the_same_point() {
    let (code, doc, _) = json(&["check", "--n", "11", "--r", "5", "--X", "{4,7}"]);
    assert_eq!(code, 0);
    let result = &doc["results"][0];
    assert_eq!(result["max_hits"], "140");
    assert_eq!(
        result["per_s"],
        serde_json::json!(["140", "121", "136", "140", "105"])
    );
    assert_eq!(result["scope"], "single_generator");
    assert_eq!(doc["violations"], serde_json::json!([]));
}

#[test]
fn slice_prints_121() {
    let o = ekrlab(&["slice", "--n", "11", "--r", "5", "--s", "2", "--case", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("|A_{11,5,2}({4,7})| = 121\n"));
}

#[test]
fn csv_has_the_fixed_header() {
    let o = ekrlab(&[
        "--format", "csv", "slice", "--n", "11", "--r", "5", "--s", "2", "--case", "2",
    ]);
    assert_eq!(
        stdout(&o),
        "n,r,s_or_scope,X,hits,star,verdict\n\
         11,5,s=2,\"{4,7}\",121,140,leq_star\n\
         11,5,s=2,\"{4,7}\",121,140,leq_star\n"
    );
    let o = ekrlab(&["--format", "csv", "maximal", "--n", "6", "--r", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    let runs: [&[&str]; 4] = [
        &[
            "count",
            "--family",
            "n=11 r=5 gens=[{2,3,4};{3,4,6,7}]",
            "--X",
            "{4,7}",
            "--method",
            "both",
        ],
        &["scan", "--r", "4", "--n-lo", "8", "--n-hi", "12"],
        &["cover", "--n", "10", "--r", "4"],
        &[
            "bench", "--n", "12", "--r", "4", "--gens", "3", "--seed", "7",
        ],
    ];
    for args in runs {
        let (code, doc, text) = json(args);
        assert_eq!(code, 0, "{args:?}");
        let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
        let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["query", "results", "timing_ms", "violations"]);
    }
}

#[test]
fn count_methods_agree() {
    let (code, doc, _) = json(&[
        "count",
        "--family",
        "n=11 r=5 gens=[{2,3,4};{3,4,6,7}]",
        "--X",
        "{4,7}",
        "--method",
        "both",
    ]);
    assert_eq!(code, 0);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert!(results
        .iter()
        .all(|r| r["hits"] == "142" && r["star"] == "140" && r["leq_star"] == false));
}

#[test]
fn star_counts() {
    let o = ekrlab(&["star", "--n", "11", "--r", "5", "--t", "2"]);
    assert_eq!(stdout(&o), "|S_{11,5}(X)| with |X| = 2: 140\n");
    assert_eq!(
        ekrlab(&["star", "--n", "11", "--r", "5", "--t", "11"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn scan_exit_codes() {
    // failures at n = 2r sit below phi^2 r and are not violations
    let (code, doc, _) = json(&[
        "scan", "--r", "5", "--n-lo", "10", "--n-hi", "14", "--scope", "single",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["violations"], serde_json::json!([]));
    let rows = doc["results"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["n"] == 10 && r["is_ekr_here"] == false && r["above_phi_squared"] == false));
    assert!(rows
        .iter()
        .filter(|r| r["above_phi_squared"] == true)
        .all(|r| r["is_ekr_here"] == true));
}

#[test]
fn maximal_lists_generator_literals() {
    let o = ekrlab(&["maximal", "--n", "4", "--r", "2"]);
    let text = stdout(&o);
    assert!(
        text.starts_with("2 maximal compressed intersecting families\n"),
        "{text}"
    );
    assert!(text.contains("n=4 r=2 gens=[{1,4}]"));
    assert!(text.contains("n=4 r=2 gens=[{2,3}]"));
}

#[test]
fn golden_suite_all_passes() {
    let o = ekrlab(&["paper-check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.ends_with("20 checks, 0 failed\n"), "{text}");
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["frobnicate"][..],
        &["check", "--n", "11", "--r", "5"],
        &["check", "--n", "11", "--r", "5", "--X", "{4,4}"],
        &["check", "--n", "9", "--r", "5", "--X", "{4,7}"],
        &["count", "--family", "n=11 r=5 gens=[{2,3,4}", "--X", "{4}"],
        &["slice", "--n", "11", "--r", "5", "--s", "2", "--case", "4"],
        &[
            "--format", "xml", "star", "--n", "5", "--r", "2", "--t", "1",
        ],
    ] {
        let o = ekrlab(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(ekrlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn scale_guard_env_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_ekrlab"))
        .args([
            "check",
            "--n",
            "11",
            "--r",
            "5",
            "--X",
            "{4,7}",
            "--scope",
            "exhaustive",
        ])
        .env("EKRLAB_SCALE_GUARD", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("scale guard"));
    let o = Command::new(env!("CARGO_BIN_EXE_ekrlab"))
        .args([
            "check",
            "--n",
            "8",
            "--r",
            "4",
            "--X",
            "{2,4,6}",
            "--scope",
            "exhaustive",
        ])
        .env("EKRLAB_SCALE_GUARD", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn jobs_do_not_change_results() {
    let args = ["scan", "--r", "4", "--n-lo", "8", "--n-hi", "11"];
    let (_, one, _) = json(&[&["--jobs", "1"][..], &args].concat());
    let (_, four, _) = json(&[&["--jobs", "4"][..], &args].concat());
    assert_eq!(one["results"], four["results"]);
}
