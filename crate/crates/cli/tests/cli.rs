//! Behavior of the command pipelines and the binary's exit codes.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use veerkit_cli::{
    cmd_covers, cmd_example, cmd_gen, cmd_qp, cmd_reduce, cmd_survey, cmd_veering, parse_cover,
    Options, EXAMPLE_TARGET, EXIT_INVALID, EXIT_USAGE,
};

fn opts() -> Options {
    Options::default()
}

fn lines(sink: &[u8]) -> Vec<String> {
    String::from_utf8(sink.to_vec())
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("veerkit-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn gen_reports_the_fixture_braids() {
    let mut sink = Vec::new();
    let report = cmd_gen(2, None, &opts(), &mut sink).unwrap();
    assert_eq!(report.results["braid"], serde_json::json!([2, -1, -1, -2, 1, 2]));
    assert_eq!(report.results["sl"], serde_json::json!(-3));
    assert_eq!(report.results["slMatches"], serde_json::json!(true));
    let text = lines(&sink);
    assert_eq!(text[0], "braid: 2 -1 -1 -2 1 2");
    let payload: Value = serde_json::from_str(&text[1]).unwrap();
    assert_eq!(payload["strands"], serde_json::json!(3));

    let report = cmd_gen(-4, None, &opts(), &mut Vec::new()).unwrap();
    assert_eq!(report.results["braid"], serde_json::json!([2, -1, 2, 1, 1, 2]));
    assert_eq!(report.results["sl"], serde_json::json!(1));
    assert_eq!(report.results["family"], serde_json::json!("EvenNegative"));
}

#[test]
fn gen_rejects_parameters_outside_the_families() {
    let e = cmd_gen(0, None, &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
    let e = cmd_gen(2, Some(1), &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
    let e = cmd_gen(-6, Some(3), &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
}

#[test]
fn covers_stream_one_record_per_cover() {
    let mut sink = Vec::new();
    let report = cmd_covers("2 -1 -1 -2 1 2", Some(2), None, &opts(), &mut sink).unwrap();
    let text = lines(&sink);
    assert_eq!(text.len(), 1);
    assert_eq!(text[0], r#"{"k":2,"initial":[[2,1],[2,1],[2,1]]}"#);
    assert_eq!(report.results["total"], serde_json::json!(1));
    // records round-trip through the cover parser
    let c = parse_cover(&text[0]).unwrap();
    assert_eq!(c.k(), 2);

    let mut sink = Vec::new();
    let report = cmd_covers("2 -1 -1 -2 1 2", None, Some(3), &opts(), &mut sink).unwrap();
    assert_eq!(lines(&sink).len(), 3);
    assert_eq!(report.results["counts"]["3"], serde_json::json!(1));
}

#[test]
fn covers_reject_degrees_outside_the_envelope() {
    let e = cmd_covers("1", Some(0), None, &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
    let e = cmd_covers("1", Some(8), None, &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
    let e = cmd_covers("1", None, None, &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_USAGE);
    let e = cmd_covers("zebra", Some(2), None, &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
}

#[test]
fn survey_covers_the_trefoil_side_and_flags_vacuous_runs() {
    let mut sink = Vec::new();
    let report = cmd_survey(2, 3, &opts(), &mut sink).unwrap();
    assert_eq!(report.results["allNontrivialLeftVeering"], serde_json::json!(true));
    assert_eq!(report.results["vacuous"], serde_json::json!(false));
    assert_eq!(
        report.results["summary"],
        serde_json::json!("all nontrivial covers left-veering: yes")
    );
    // one record per cover plus the closing report, all parseable
    let text = lines(&sink);
    assert_eq!(text.len(), 4);
    for line in &text {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v.is_object());
    }
    let first: Value = serde_json::from_str(&text[0]).unwrap();
    assert_eq!(first["k"], serde_json::json!(1));
    assert_eq!(first["verdict"], serde_json::json!("noWitnessFound"));
    let second: Value = serde_json::from_str(&text[1]).unwrap();
    assert_eq!(second["verdict"], serde_json::json!("leftVeering"));
    assert_eq!(second["condition"], serde_json::json!(1));

    let report = cmd_survey(2, 1, &opts(), &mut Vec::new()).unwrap();
    assert_eq!(report.results["vacuous"], serde_json::json!(true));
    assert_eq!(report.results["nontrivialCovers"], serde_json::json!(0));
}

#[test]
fn survey_reports_no_witness_on_the_quasipositive_side() {
    let mut sink = Vec::new();
    let report = cmd_survey(-4, 2, &opts(), &mut sink).unwrap();
    assert_eq!(report.results["allNontrivialLeftVeering"], serde_json::json!(false));
    assert_eq!(
        report.results["summary"],
        serde_json::json!("all nontrivial covers left-veering: no")
    );
    assert_eq!(report.results["inconclusive"], serde_json::json!(0));
    let text = lines(&sink);
    let cyclic: Value = serde_json::from_str(&text[1]).unwrap();
    assert_eq!(cyclic["verdict"], serde_json::json!("noWitnessFound"));
    // the quasipositive family has no closed-form condition
    assert!(cyclic.get("condition").is_none());
}

#[test]
fn survey_rejects_bad_arguments() {
    assert_eq!(cmd_survey(1, 3, &opts(), &mut Vec::new()).unwrap_err().code, EXIT_INVALID);
    assert_eq!(cmd_survey(2, 0, &opts(), &mut Vec::new()).unwrap_err().code, EXIT_INVALID);
    assert_eq!(cmd_survey(2, 8, &opts(), &mut Vec::new()).unwrap_err().code, EXIT_INVALID);
}

#[test]
fn example_chain_ends_at_the_short_form() {
    let mut sink = Vec::new();
    let report = cmd_example(&opts(), &mut sink).unwrap();
    let chain = report.results["chain"].as_array().unwrap();
    assert_eq!(chain.last().unwrap(), &serde_json::json!(EXAMPLE_TARGET));
    let forms = report.results["irreducible"].as_array().unwrap();
    assert!(forms.contains(&serde_json::json!(EXAMPLE_TARGET)));
    let text = lines(&sink);
    assert_eq!(*text.last().unwrap(), format!("irreducible forms: {}", forms.len()));

    // byte-identical results on a second run
    let again = cmd_example(&opts(), &mut Vec::new()).unwrap();
    assert_eq!(report.results, again.results);
}

#[test]
fn qp_verifies_the_stored_factorizations() {
    let report = cmd_qp(-4, None, &opts(), &mut Vec::new()).unwrap();
    assert_eq!(report.results["verified"], serde_json::json!(true));
    let report = cmd_qp(-6, Some(2), &opts(), &mut Vec::new()).unwrap();
    assert_eq!(report.results["verified"], serde_json::json!(true));
    assert_eq!(cmd_qp(2, None, &opts(), &mut Vec::new()).unwrap_err().code, EXIT_INVALID);
    assert_eq!(cmd_qp(-3, None, &opts(), &mut Vec::new()).unwrap_err().code, EXIT_INVALID);
}

#[test]
fn reduce_prints_every_irreducible_form() {
    let cover = temp_file("cover2.json", r#"{"k":2,"initial":[[2,1],[2,1],[2,1]]}"#);
    let mut sink = Vec::new();
    let report = cmd_reduce(&cover, "A1{1->2} A1{2->1}'", &opts(), &mut sink).unwrap();
    assert_eq!(report.results["count"], serde_json::json!(1));
    assert_eq!(lines(&sink), vec!["(empty)".to_string()]);

    let e = cmd_reduce(&cover, "A1{1->1}", &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
    let missing = PathBuf::from("/nonexistent/veerkit-cover.json");
    let e = cmd_reduce(&missing, "A1{1->2}", &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
    std::fs::remove_file(cover).ok();
}

#[test]
fn veering_prints_the_report_for_both_verdicts() {
    let cover = temp_file("veer-cover2.json", r#"{"k":2,"initial":[[2,1],[2,1],[2,1]]}"#);
    let mut sink = Vec::new();
    let report = cmd_veering("2 -1 -1 -2 1 2", &cover, &opts(), &mut sink).unwrap();
    assert_eq!(report.results["verdict"], serde_json::json!("leftVeering"));
    let doc: Value = serde_json::from_str(&lines(&sink)[0]).unwrap();
    assert_eq!(doc["witness"]["cut"], serde_json::json!(1));

    let report = cmd_veering("2 -1 2 1 1 2", &cover, &opts(), &mut Vec::new()).unwrap();
    assert_eq!(report.results["verdict"], serde_json::json!("noWitnessFound"));

    // braid and cover strand counts must agree
    let e = cmd_veering("1 1 1", &cover, &opts(), &mut Vec::new()).unwrap_err();
    assert_eq!(e.code, EXIT_INVALID);
    std::fs::remove_file(cover).ok();
}

#[test]
fn cover_parsing_revalidates_the_permutations() {
    assert_eq!(parse_cover(r#"{"k":2,"initial":[[1,1]]}"#).unwrap_err().code, EXIT_INVALID);
    assert_eq!(parse_cover(r#"{"k":3,"initial":[[2,1]]}"#).unwrap_err().code, EXIT_INVALID);
    assert_eq!(parse_cover("not json").unwrap_err().code, EXIT_INVALID);
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let mut first = Vec::new();
    let mut second = Vec::new();
    let a = cmd_survey(2, 2, &opts(), &mut first).unwrap();
    let b = cmd_survey(2, 2, &opts(), &mut second).unwrap();
    assert_eq!(a.results, b.results);
    // streamed records are identical; the closing reports differ only in timing
    let strip = |sink: &[u8]| {
        let mut ls = lines(sink);
        let mut last: Value = serde_json::from_str(&ls.pop().unwrap()).unwrap();
        last.as_object_mut().unwrap().remove("timing_ms");
        (ls, last)
    };
    assert_eq!(strip(&first), strip(&second));
}

fn run_binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_veerkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn binary_maps_failures_to_exit_codes() {
    assert_eq!(run_binary(&["gen", "--m", "2"]).status.code(), Some(0));
    assert_eq!(run_binary(&["gen", "--m", "0"]).status.code(), Some(2));
    assert_eq!(run_binary(&["qp", "--m", "2"]).status.code(), Some(2));
    // usage errors: missing required group, unknown subcommand, no arguments
    assert_eq!(run_binary(&["covers", "--braid", "1"]).status.code(), Some(1));
    assert_eq!(run_binary(&["warble"]).status.code(), Some(1));
    assert_eq!(run_binary(&[]).status.code(), Some(1));
    assert_eq!(run_binary(&["--help"]).status.code(), Some(0));
}

#[test]
fn binary_rejects_bad_thread_caps() {
    let out = Command::new(env!("CARGO_BIN_EXE_veerkit"))
        .args(["gen", "--m", "2"])
        .env("VEERKIT_THREADS", "zebra")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_veerkit"))
        .args(["gen", "--m", "2"])
        .env("VEERKIT_THREADS", "2")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn binary_streams_and_reports() {
    let out = run_binary(&["covers", "--braid", "2 -1 -1 -2 1 2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"k":2,"initial":[[2,1],[2,1],[2,1]]}"#
    );

    let out = run_binary(&["example"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.ends_with(EXAMPLE_TARGET)));
    assert!(text.trim_end().ends_with("irreducible forms: 32"));

    let out = run_binary(&["example", "--json"]);
    let report: Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report["command"], serde_json::json!("example"));
    assert_eq!(
        report["results"]["chain"].as_array().unwrap().last().unwrap(),
        &serde_json::json!(EXAMPLE_TARGET)
    );
}
