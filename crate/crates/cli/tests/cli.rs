use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const KB: &str = "\
<urn:a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:Person> .
<urn:a> <urn:name> \"Ann Lee\" .
<urn:a> <urn:mail> \"ann@x.org\" .
<urn:a> <urn:gender> \"f\" .
<urn:b> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:Person> .
<urn:b> <urn:name> \"Bob Ray\" .
<urn:b> <urn:gender> \"m\" .
<urn:c> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:Person> .
<urn:c> <urn:name> \"Cy Young\" .
<urn:c> <urn:mail> \"cy@x.org\" .
<urn:c> <urn:gender> \"m\" .
";

fn slcmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slcmatch"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

#[test]
fn weights_writes_table_and_config() {
    let dir = TempDir::new().unwrap();
    let kb = write(&dir, "kb.nt", KB);
    let out_path = dir.path().join("w.json");
    let out = slcmatch(&["weights", p(&kb), "-o", p(&out_path), "--top", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let table: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(table["weights"].as_object().unwrap().len(), 3);
    assert!(stdout(&out).contains("most discriminative"));
    let cfg: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("w.config.json")).unwrap()).unwrap();
    assert_eq!(cfg["command"], "weights");
    assert_eq!(cfg["args"]["weights"]["delta"], 0.7);
}

#[test]
fn weight_modes_share_keys() {
    let dir = TempDir::new().unwrap();
    let kb = write(&dir, "kb.nt", KB);
    let table = |mode: &str| -> Value {
        let out = slcmatch(&["weights", p(&kb), "--mode", mode]);
        assert_eq!(code(&out), 0);
        serde_json::from_str(&stdout(&out)).unwrap()
    };
    let (lin, log) = (table("linear"), table("log"));
    let keys = |v: &Value| v["weights"].as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    assert_eq!(keys(&lin), keys(&log));
    assert_ne!(lin["weights"], log["weights"]);
}

#[test]
fn missing_input_is_an_input_error_without_output() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("w.json");
    let out = slcmatch(&["weights", p(&dir.path().join("nope.nt")), "-o", p(&out_path)]);
    assert_eq!(code(&out), 2);
    assert!(listing(dir.path()).is_empty());
}

#[test]
fn malformed_triples_report_the_line() {
    let dir = TempDir::new().unwrap();
    let kb = write(&dir, "kb.nt", &format!("{KB}<urn:z> <urn:name> \"open .\n"));
    let out = slcmatch(&["weights", p(&kb)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 12"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&slcmatch(&["frobnicate"])), 1);
    assert_eq!(code(&slcmatch(&["weights"])), 1);
    let dir = TempDir::new().unwrap();
    let kb = write(&dir, "kb.nt", KB);
    assert_eq!(code(&slcmatch(&["match", p(&kb), p(&kb), "--delta2", "1.5"])), 1);
    assert_eq!(code(&slcmatch(&["weights", p(&kb), "--mode", "cubic"])), 1);
}

#[test]
fn help_shows_defaults() {
    let out = slcmatch(&["match", "--help"]);
    assert_eq!(code(&out), 0);
    let help = stdout(&out);
    for needle in [
        "--delta2 <DELTA2>",
        "[default: 0.7]",
        "[default: 0.5]",
        "[default: 1]",
        "[default: 0.6]",
        "[default: 0.2]",
        "[default: 0.1]",
        "[default: log]",
        "SLCMATCH_DELTA2",
        "--no-weights",
        "--jobs",
    ] {
        assert!(help.contains(needle), "missing {needle}");
    }
}

#[test]
fn env_overrides_flags() {
    let dir = TempDir::new().unwrap();
    let kb = write(&dir, "kb.nt", KB);
    let out = Command::new(env!("CARGO_BIN_EXE_slcmatch"))
        .args(["weights", p(&kb)])
        .env("SLCMATCH_MODE", "linear")
        .output()
        .unwrap();
    let table: Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(table["config"]["mode"], "linear");
}

#[test]
fn kb_matched_against_itself() {
    let dir = TempDir::new().unwrap();
    let kb = write(&dir, "kb.nt", KB);
    for extra in [&[][..], &["--no-weights"][..]] {
        let mut args = vec!["match", p(&kb), p(&kb)];
        args.extend_from_slice(extra);
        let out = slcmatch(&args);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let rows: Vec<String> = stdout(&out)
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(String::from)
            .collect();
        assert_eq!(rows.len(), 3);
        for row in rows {
            let cols: Vec<&str> = row.split('\t').collect();
            assert_eq!(cols[0], cols[1]);
            assert_eq!(cols[3].parse::<f64>().unwrap(), 1.0);
        }
        assert!(stderr(&out).contains("3 pairs"));
    }
}

#[test]
fn unknown_alignment_iris_are_ignored() {
    let dir = TempDir::new().unwrap();
    let kb = write(&dir, "kb.nt", KB);
    let al = write(&dir, "al.tsv", "urn:nothing\turn:else\t=\t1.0\n");
    let out = slcmatch(&["match", p(&kb), p(&kb), "--alignment", p(&al)]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("ignored"));
}

fn genbench(dir: &Path, family: &str, intensity: &str) -> Output {
    slcmatch(&[
        "genbench", "-o", p(dir), "--family", family, "--intensity", intensity, "--instances", "60", "--seed", "4",
    ])
}

#[test]
fn genbench_refuses_non_empty_directory() {
    let dir = TempDir::new().unwrap();
    write(&dir, "keep.txt", "x");
    let out = genbench(dir.path(), "value", "0.3");
    assert_eq!(code(&out), 2);
    assert_eq!(listing(dir.path()), vec!["keep.txt"]);
    let forced = slcmatch(&["genbench", "-o", p(dir.path()), "--instances", "10", "--force"]);
    assert_eq!(code(&forced), 0);
}

#[test]
fn genbench_is_reproducible() {
    let root = TempDir::new().unwrap();
    let (a, b) = (root.path().join("a"), root.path().join("b"));
    assert_eq!(code(&genbench(&a, "combined", "0.4")), 0);
    assert_eq!(code(&genbench(&b, "combined", "0.4")), 0);
    assert_eq!(
        listing(&a),
        vec!["base.nt", "gold.tsv", "manifest.json", "schema_alignment.tsv", "transformed.nt"]
    );
    for name in listing(&a) {
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap(), "{name}");
    }
    let manifest: Value = serde_json::from_str(&fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["spec"]["seed"], 4);
}

#[test]
fn eval_identical_and_disjoint() {
    let dir = TempDir::new().unwrap();
    let gold = write(&dir, "gold.tsv", "urn:a\turn:x\t=\t1.0\nurn:b\turn:y\t=\t1.0\n");
    let other = write(&dir, "other.tsv", "urn:a\turn:y\t=\t1.0\n");
    let report = |pred: &Path| -> Value {
        let out = slcmatch(&["eval", p(pred), p(&gold)]);
        assert_eq!(code(&out), 0);
        serde_json::from_str(&stdout(&out)).unwrap()
    };
    assert_eq!(report(&gold)["f_measure"], 1.0);
    assert_eq!(report(&other)["f_measure"], 0.0);
}

#[test]
fn eval_rejects_malformed_tsv() {
    let dir = TempDir::new().unwrap();
    let gold = write(&dir, "gold.tsv", "urn:a\turn:x\t=\t1.0\n");
    let bad = write(&dir, "bad.tsv", "urn:a\turn:x\t=\t1.0\nurn:b\turn:y\t=\t7\n");
    let out = slcmatch(&["eval", p(&bad), p(&gold)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn eval_fixture_with_known_precision_and_recall() {
    // 72 of 100 predictions correct, 91 gold pairs: P 0.72, R 0.791.
    let dir = TempDir::new().unwrap();
    let mut gold = String::new();
    let mut pred = String::new();
    for i in 0..91 {
        gold.push_str(&format!("urn:l{i}\turn:r{i}\t=\t1.0\n"));
    }
    for i in 0..72 {
        pred.push_str(&format!("urn:l{i}\turn:r{i}\t=\t1.0\n"));
    }
    for i in 0..28 {
        pred.push_str(&format!("urn:l{i}\turn:wrong{i}\t=\t0.8\n"));
    }
    let g = write(&dir, "gold.tsv", &gold);
    let pr = write(&dir, "pred.tsv", &pred);
    let out = slcmatch(&["eval", p(&pr), p(&g)]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["precision"], 0.72);
    let f = report["f_measure"].as_f64().unwrap();
    assert!((f - 0.7534).abs() < 0.001, "{f}");
}

#[test]
fn benchmark_round_trip_through_the_cli() {
    let root = TempDir::new().unwrap();
    let bench = root.path().join("bench");
    assert_eq!(code(&genbench(&bench, "value", "0.3")), 0);
    let pred = root.path().join("pred.tsv");
    let out = slcmatch(&[
        "match",
        p(&bench.join("base.nt")),
        p(&bench.join("transformed.nt")),
        "-o",
        p(&pred),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(root.path().join("pred.config.json").exists());
    let out = slcmatch(&[
        "eval",
        p(&pred),
        p(&bench.join("gold.tsv")),
        "--manifest",
        p(&bench.join("manifest.json")),
    ]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["family"], "value");
    assert!(report["f_measure"].as_f64().unwrap() >= 0.95, "{report}");
}

#[test]
fn output_is_independent_of_thread_count() {
    let root = TempDir::new().unwrap();
    let bench = root.path().join("bench");
    assert_eq!(code(&genbench(&bench, "structural", "0.3")), 0);
    let run = |jobs: &str| {
        let out = slcmatch(&[
            "--jobs",
            jobs,
            "match",
            p(&bench.join("base.nt")),
            p(&bench.join("transformed.nt")),
            "--alignment",
            p(&bench.join("schema_alignment.tsv")),
        ]);
        assert_eq!(code(&out), 0);
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert!(!one.is_empty());
}

#[test]
fn pipeline_emits_one_row_per_cell() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("grid.csv");
    let out = slcmatch(&[
        "pipeline",
        "--families",
        "value,logical",
        "--intensities",
        "0.1,0.3",
        "--instances",
        "40",
        "-o",
        p(&csv),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,intensity,delta2,precision,recall,f_measure");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("value,0.1,0.7,"));
    assert!(lines[4].starts_with("logical,0.3,0.7,"));
    assert!(dir.path().join("grid.config.json").exists());
}

#[test]
fn stats_dump() {
    let dir = TempDir::new().unwrap();
    let kb = write(&dir, "kb.nt", KB);
    let out = slcmatch(&["stats", p(&kb)]);
    let stats: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(stats["instance_count"], 3);
    assert_eq!(stats["properties"]["urn:mail"]["carriers"], 2);
}
