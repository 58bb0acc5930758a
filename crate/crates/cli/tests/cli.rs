//! End-to-end tests of the `symlab` binary: exit codes, report schemas,
//! cache behavior, and byte determinism, all against a temporary cache.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use symlab_cli::schema::validate;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn symlab(cache: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_symlab"))
        .args(args)
        .env("SYMLAB_CACHE_DIR", cache)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    }
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file exists"))
        .expect("schema parses")
}

/// Parse a JSON report, check the envelope and the result schema, and hand
/// back the result value.
fn checked_result(run: &Run, result_schema: &str) -> Value {
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let report: Value = serde_json::from_str(&run.stdout).expect("stdout is JSON");
    let errs = validate(&schema("envelope"), &report);
    assert!(errs.is_empty(), "envelope violations: {errs:?}");
    let result = report["result"].clone();
    let errs = validate(&schema(result_schema), &result);
    assert!(errs.is_empty(), "{result_schema} violations: {errs:?}");
    result
}

#[test]
fn build_fermat_reports_degrees_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let run = symlab(dir.path(), &["ideal", "build", "--family", "fermat:3"]);
    let result = checked_result(&run, "ideal-report");
    assert_eq!(result["degree_profile"]["alpha"], 4);
    assert_eq!(result["degree_profile"]["omega"], 4);
    assert_eq!(result["ideal"]["kind"]["family"], "fermat");
    assert!(run.stderr.contains("stored ideal"));
}

#[test]
fn sympow_resolves_hash_prefix_references() {
    let dir = tempfile::tempdir().unwrap();
    let build = symlab(dir.path(), &["ideal", "build", "--family", "fermat:3"]);
    let built = checked_result(&build, "ideal-report");
    let hash = built["ideal"]["hash"].as_str().unwrap();

    let run = symlab(dir.path(), &["sympow", "--ideal", &hash[..10], "-m", "2"]);
    let result = checked_result(&run, "sympow-report");
    assert_eq!(result["base_hash"], hash);
    assert_eq!(result["m"], 2);
    assert_eq!(result["degree_profile"]["alpha"], 8);
}

#[test]
fn contain_reports_the_fermat_failure_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let build = symlab(dir.path(), &["ideal", "build", "--family", "fermat:3"]);
    let hash = checked_result(&build, "ideal-report")["ideal"]["hash"]
        .as_str()
        .unwrap()
        .to_string();

    let run = symlab(
        dir.path(),
        &["contain", "--ideal", &hash, "-m", "3", "-t", "0", "-r", "2"],
    );
    let cert = checked_result(&run, "containment-certificate");
    assert_eq!(cert["verdict"], "fails");
    assert!(cert["witness"].is_string());
    assert_eq!(cert["target_gb_stats"]["wall_ms"], 0);
}

#[test]
fn threshold_and_lemma_answers_are_exact() {
    let dir = tempfile::tempdir().unwrap();
    let grifo = symlab(dir.path(), &["threshold", "grifo", "--h", "2", "--c", "5"]);
    assert_eq!(checked_result(&grifo, "grifo-report")["r0"], 10);

    let t31 = symlab(
        dir.path(),
        &[
            "threshold", "theorem31", "--h", "2", "--c", "3", "--ell", "-1,1,0", "--alpha", "1",
        ],
    );
    let report = checked_result(&t31, "threshold-report");
    assert_eq!(report["hypothesis_ok"], true);

    let count = symlab(dir.path(), &["lemma", "count", "--k", "5", "--n", "3"]);
    let report = checked_result(&count, "count-report");
    assert_eq!(report["holds"], true);
    assert_eq!(report["regimes"], serde_json::json!([1]));
    assert_eq!(report["lhs"], "125");
    assert_eq!(report["rhs"], "165");
}

#[test]
fn audit_validates_and_passes_on_fermat() {
    let dir = tempfile::tempdir().unwrap();
    let build = symlab(dir.path(), &["ideal", "build", "--family", "fermat:3"]);
    let hash = checked_result(&build, "ideal-report")["ideal"]["hash"]
        .as_str()
        .unwrap()
        .to_string();
    let run = symlab(
        dir.path(),
        &["audit", "chudnovsky", "--ideal", &hash, "--mmax", "2"],
    );
    let report = checked_result(&run, "audit-report");
    assert_eq!(report["all_pass"], true);
    assert_eq!(report["bound"], "5/2");
}

#[test]
fn waldschmidt_and_resurgence_validate() {
    let dir = tempfile::tempdir().unwrap();
    let build = symlab(dir.path(), &["ideal", "build", "--family", "fermat:3"]);
    let hash = checked_result(&build, "ideal-report")["ideal"]["hash"]
        .as_str()
        .unwrap()
        .to_string();

    let wald = symlab(dir.path(), &["waldschmidt", "--ideal", &hash, "--mmax", "2"]);
    let table = checked_result(&wald, "waldschmidt-table");
    assert_eq!(table["rows"][0]["alpha"], 4);

    let res = symlab(
        dir.path(),
        &["resurgence", "scan", "--ideal", &hash, "--amax", "3", "--bmax", "2"],
    );
    let table = checked_result(&res, "resurgence-table");
    assert_eq!(table["lower_bound"], "3/2");
}

#[test]
fn point_files_build_fat_point_ideals() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pts.txt");
    std::fs::write(&file, "# fat triangle\n1 0 0 | 2\n0 1 0\n0 0 1\n").unwrap();
    let run = symlab(
        dir.path(),
        &["ideal", "build", "--points", file.to_str().unwrap()],
    );
    let result = checked_result(&run, "ideal-report");
    assert_eq!(result["ideal"]["kind"]["family"], "points");
    assert_eq!(result["degree_profile"]["alpha"], 2);
    assert_eq!(
        result["ideal"]["kind"]["multiplicities"],
        serde_json::json!([2, 1, 1])
    );
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // Unknown subcommand (clap).
    assert_eq!(symlab(dir.path(), &["frobnicate"]).code, 1);
    // Unknown family (domain parse error).
    let run = symlab(dir.path(), &["ideal", "build", "--family", "frobnicate:7"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("unknown family"));
    // Missing ideal reference.
    let run = symlab(dir.path(), &["sympow", "--ideal", "deadbeefdeadbeef", "-m", "2"]);
    assert_eq!(run.code, 1);
    // Help and version are not errors.
    assert_eq!(symlab(dir.path(), &["--help"]).code, 0);
    assert_eq!(symlab(dir.path(), &["--version"]).code, 0);
}

#[test]
fn resource_guards_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let build = symlab(dir.path(), &["ideal", "build", "--family", "fermat:3"]);
    let hash = checked_result(&build, "ideal-report")["ideal"]["hash"]
        .as_str()
        .unwrap()
        .to_string();
    let run = symlab(
        dir.path(),
        &["sympow", "--ideal", &hash, "-m", "2", "--max-pairs", "3"],
    );
    assert_eq!(run.code, 2, "stderr: {}", run.stderr);
    assert!(run.stderr.contains("resource guard"));
}

#[test]
fn warm_cache_replays_byte_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let args: Vec<Vec<&str>> = vec![
        vec!["ideal", "build", "--family", "fermat:3"],
        vec!["threshold", "grifo", "--h", "3", "--c", "4"],
        vec!["lemma", "count", "--k", "4", "--n", "4"],
    ];
    let mut hash = String::new();
    for a in &args {
        let first = symlab(dir.path(), a);
        assert_eq!(first.code, 0);
        let second = symlab(dir.path(), a);
        assert_eq!(second.code, 0);
        assert_eq!(first.stdout, second.stdout, "replay differs for {a:?}");
        if a[0] == "ideal" {
            hash = serde_json::from_str::<Value>(&first.stdout).unwrap()["result"]["ideal"]["hash"]
                .as_str()
                .unwrap()
                .to_string();
        }
    }
    // A compute-heavy command too: certificate JSON replays exactly.
    let q = vec!["contain", "--ideal", hash.as_str(), "-m", "2", "-r", "1"];
    let first = symlab(dir.path(), &q);
    let second = symlab(dir.path(), &q);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn text_format_is_cached_separately() {
    let dir = tempfile::tempdir().unwrap();
    let json = symlab(dir.path(), &["threshold", "grifo", "--h", "2", "--c", "5"]);
    let text = symlab(
        dir.path(),
        &["threshold", "grifo", "--h", "2", "--c", "5", "--format", "text"],
    );
    assert_eq!(json.code, 0);
    assert_eq!(text.code, 0);
    assert!(serde_json::from_str::<Value>(&json.stdout).is_ok());
    assert!(serde_json::from_str::<Value>(&text.stdout).is_err());
    assert!(text.stdout.contains("r0 = 10"));
    assert!(text.stdout.ends_with('\n'));
}

#[test]
fn prime_fields_flow_through_every_layer() {
    let dir = tempfile::tempdir().unwrap();
    let build = symlab(
        dir.path(),
        &["ideal", "build", "--family", "fermat:3", "--field", "prime:101"],
    );
    let result = checked_result(&build, "ideal-report");
    assert_eq!(result["ideal"]["field"], "prime:101");
    assert_eq!(result["degree_profile"]["alpha"], 4);
    let hash = result["ideal"]["hash"].as_str().unwrap().to_string();

    let run = symlab(
        dir.path(),
        &[
            "contain", "--ideal", &hash, "-m", "3", "-r", "2", "--field", "prime:101",
        ],
    );
    let cert = checked_result(&run, "containment-certificate");
    assert_eq!(cert["verdict"], "fails");
    assert_eq!(cert["field"], "prime:101");

    // The same record is rejected under the default field.
    let wrong = symlab(dir.path(), &["sympow", "--ideal", &hash, "-m", "2"]);
    assert_eq!(wrong.code, 1);
    assert!(wrong.stderr.contains("configured for"));
}
