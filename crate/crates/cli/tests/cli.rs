use std::io::Cursor;

use antiramsey_cli::{run, CommandResult, Status};
use serde_json::json;

fn cli(args: &[&str], stdin: &str) -> CommandResult {
    let argv = std::iter::once("antiramsey").chain(args.iter().copied());
    run(argv, &mut Cursor::new(stdin.as_bytes().to_vec()))
}

const K5: &str = "0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

fn j_text() -> String {
    let r = cli(&["witness-j"], "");
    assert_eq!(r.status, Status::Ok);
    r.output
}

#[test]
fn colour_k5_is_p0_and_verifies() {
    let r = cli(&["colour", "--k", "5", "--input", "-"], K5);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.payload["stage"], "P0");
    assert_eq!(r.payload["colouring"]["edges"].as_array().unwrap().len(), 2);

    let path = std::env::temp_dir().join(format!("antiramsey-cli-{}.json", std::process::id()));
    std::fs::write(&path, r.payload["colouring"].to_string()).unwrap();
    let v = cli(&["verify", "--k", "5", "--input", "-", "--colouring", path.to_str().unwrap()], K5);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v.exit_code, 0);
    assert_eq!(v.payload["rainbow"], json!(null));
}

#[test]
fn verify_reports_a_rainbow_clique() {
    let path = std::env::temp_dir().join(format!("antiramsey-cli-empty-{}.txt", std::process::id()));
    std::fs::write(&path, "").unwrap();
    let v = cli(&["verify", "--k", "5", "--input", "-", "--colouring", path.to_str().unwrap()], K5);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v.status, Status::Error);
    assert_eq!(v.exit_code, 1);
    assert_eq!(v.payload["rainbow"]["clique"], json!([0, 1, 2, 3, 4]));
}

#[test]
fn j_density_and_forcing() {
    let j = j_text();
    let d = cli(&["density", "--input", "-"], &j);
    assert_eq!(d.payload["m"], "15/7");
    assert_eq!(d.payload["m2"], "14/5");
    let f = cli(&["force-check", "--k", "4", "--input", "-"], &j);
    assert_eq!(f.payload["forced"], json!(true));
    let guarded = cli(&["force-check", "--k", "4", "--input", "-", "--guard-edges", "10"], &j);
    assert_eq!(guarded.exit_code, 1);
}

#[test]
fn dense_input_is_a_domain_error() {
    let r = cli(&["colour", "--k", "4", "--input", "-"], &j_text());
    assert_eq!(r.exit_code, 1);
    assert!(r.diagnostics[0].message.contains("density"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["nonsense"], "").exit_code, 2);
    assert_eq!(cli(&["colour", "--input", "-"], K5).exit_code, 2);
    assert_eq!(cli(&["gnp", "--n", "5", "--p", "0.5"], "").exit_code, 2);
    assert_eq!(cli(&["witness-j", "--format", "csv"], "").exit_code, 2);
    assert_eq!(cli(&["density", "--input", "/no/such/file"], "").exit_code, 2);
}

#[test]
fn strict_mode_turns_findings_into_exit_3() {
    let hub = antiramsey::fixtures::petal_hub().to_edge_list();
    let lenient = cli(&["colour", "--k", "5", "--input", "-"], &hub);
    assert_eq!(lenient.exit_code, 0);
    assert!(lenient.diagnostics.iter().any(|d| d.level == "finding"));
    let strict = cli(&["colour", "--k", "5", "--input", "-", "--strict"], &hub);
    assert_eq!(strict.exit_code, 3);
}

#[test]
fn outputs_are_reproducible() {
    let a = cli(&["gnp", "--n", "20", "--p", "0.3", "--seed", "9"], "");
    let b = cli(&["gnp", "--n", "20", "--p", "0.3", "--seed", "9"], "");
    assert_eq!(a.output, b.output);
    let args = ["scan", "--n", "30", "--c", "0.4,0.6", "--trials", "10", "--seed", "3", "--format", "csv"];
    let s1 = cli(&args, "");
    assert_eq!(s1.output, cli(&args, "").output);
    assert!(s1.output.starts_with("n,c,p,trials,rate_j,rate_colourable,rate_census,seed\n"));
    assert_eq!(s1.output.lines().count(), 3);
}

#[test]
fn structure_subcommands() {
    let two = "0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n0 5\n0 6\n0 7\n1 5\n1 6\n1 7\n5 6\n5 7\n6 7\n";
    let c = cli(&["cliques", "--k", "5", "--input", "-"], two);
    assert_eq!(c.payload["count"], 2);
    let comps = cli(&["components", "--k", "5", "--input", "-"], two);
    assert_eq!(comps.payload["components"].as_array().unwrap().len(), 1);
    assert_eq!(comps.payload["components"][0]["badness"], 0);
    let peel = cli(&["peel", "--k", "5", "--input", "-"], two);
    let step = &peel.payload["traces"][0]["steps"][0];
    assert_eq!(step["config"], "X3");
    assert_eq!(step["bDelta"], 0);
    let census = cli(&["census", "--input", "-"], &j_text());
    assert_eq!(census.payload["count"], 1);
}

#[test]
fn colour_formats() {
    let text = cli(&["colour", "--k", "5", "--input", "-", "--format", "text"], K5);
    assert_eq!(text.output, "0 1 1\n2 3 1\n");
    let csv = cli(&["colour", "--k", "5", "--input", "-", "--format", "csv"], K5);
    assert_eq!(csv.output, "u,v,colour\n0,1,1\n2,3,1\n");
}
