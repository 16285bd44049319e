use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn cicy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cicy"))
        .args(args)
        .env_remove("CICY_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn value(o: &Output, key: &str) -> String {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")).map(str::to_owned))
        .unwrap_or_else(|| panic!("no {key}= in {}", stdout(o)))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn compute_sample_writes_two_rows() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("inv.csv");
    let o = cicy(&[
        "compute",
        "--in",
        p(&data("sample.jsonl")),
        "--hodge",
        p(&data("sample_hodge.csv")),
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(
        csv,
        "id,m,k,h11,h21,favorable,d1,d2,d3,dp,euler,tensor,c2_contracted\n\
         quintic,1,1,1,101,true,5,5,5,50,-200,(1 1 1):5,50\n\
         bicubic,2,1,2,83,true,3,3,18,36,-162,(1 1 2):3;(1 2 2):3,36;36\n"
    );
    assert_eq!(value(&o, "records"), "2");
    assert_eq!(value(&o, "favorable"), "2");
    assert_eq!(value(&o, "buckets"), "2");
    assert!(stdout(&o).contains("elapsed_ms="));
}

#[test]
fn missing_input_is_a_usage_error() {
    let o = cicy(&["compute", "--in", "definitely-missing.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("definitely-missing.json"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn bad_flags_are_usage_errors() {
    for args in [
        &["compute"][..],
        &["compute", "--in", "x.json", "--workers", "0"],
        &["compute", "--in", "x.json", "--convention", "other"],
        &["features", "--in", "x.json", "--out", "d", "--frame", "12"],
        &["frobnicate"],
    ] {
        assert_eq!(cicy(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn worker_count_does_not_change_exports() {
    let dir = TempDir::new().unwrap();
    for (input, hodge) in [
        ("sample.jsonl", "sample_hodge.csv"),
        ("corpus.jsonl", "corpus_hodge.csv"),
    ] {
        for format in ["csv", "json"] {
            let outs: Vec<Vec<u8>> = ["1", "8"]
                .iter()
                .map(|w| {
                    let out = dir.path().join(format!("{input}.{w}.{format}"));
                    let o = cicy(&[
                        "compute",
                        "--in",
                        p(&data(input)),
                        "--hodge",
                        p(&data(hodge)),
                        "--workers",
                        w,
                        "--format",
                        format,
                        "--out",
                        p(&out),
                    ]);
                    assert!(o.status.success(), "{}", stderr(&o));
                    fs::read(out).unwrap()
                })
                .collect();
            assert_eq!(outs[0], outs[1], "{input} {format}");
        }
    }
}

#[test]
fn text_and_json_inputs_agree() {
    let dir = TempDir::new().unwrap();
    let run = |input: &Path, name: &str| {
        let out = dir.path().join(name);
        let o = cicy(&["compute", "--in", p(input), "--out", p(&out)]);
        assert!(o.status.success(), "{}", stderr(&o));
        fs::read_to_string(out).unwrap()
    };
    assert_eq!(run(&data("sample.cicy"), "a.csv"), run(&data("sample.jsonl"), "b.csv"));
}

#[test]
fn json_export_carries_convention() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("inv.json");
    let o = cicy(&[
        "compute",
        "--in",
        p(&data("sample.jsonl")),
        "--convention",
        "cubic-form",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success());
    let doc = read_json_value(&out);
    assert_eq!(doc["convention"], "cubic-form");
    assert_eq!(doc["records"][1]["invariants"]["d3"], 9);
}

fn read_json_value(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn malformed_record_is_reported_and_the_rest_computed() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "three.jsonl",
        "{\"id\":\"quintic\",\"ambient\":[4],\"degrees\":[[5]]}\n\
         {\"id\":\"broken\",\"ambient\":[4],\"degrees\":[[5, 1]\n\
         {\"id\":\"bicubic\",\"ambient\":[2,2],\"degrees\":[[3],[3]]}\n",
    );
    let out = dir.path().join("inv.csv");
    let o = cicy(&["compute", "--in", p(&input), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert_eq!(value(&o, "computed"), "2");
    assert_eq!(fs::read_to_string(out).unwrap().lines().count(), 3);
}

#[test]
fn invalid_configuration_fails_its_record_only() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "bad.jsonl",
        "{\"id\":\"quartic\",\"ambient\":[4],\"degrees\":[[4]]}\n\
         {\"id\":\"quintic\",\"ambient\":[4],\"degrees\":[[5]]}\n",
    );
    let o = cicy(&["compute", "--in", p(&input)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("quartic"));
    assert_eq!(value(&o, "failed"), "1");
    assert_eq!(value(&o, "computed"), "1");
}

#[test]
fn unmatched_hodge_rows_are_warnings() {
    let dir = TempDir::new().unwrap();
    let hodge = write(&dir, "h.csv", "id,h11,h21\nquintic,1,101\n");
    let o = cicy(&["compute", "--in", p(&data("sample.jsonl")), "--hodge", p(&hodge)]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("bicubic"));
    assert_eq!(value(&o, "favorable"), "1");
}

#[test]
fn duplicate_hodge_ids_are_rejected() {
    let dir = TempDir::new().unwrap();
    let hodge = write(&dir, "h.csv", "id,h11,h21\nquintic,1,101\nquintic,1,101\n");
    let o = cicy(&["compute", "--in", p(&data("sample.jsonl")), "--hodge", p(&hodge)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("quintic"));
}

#[test]
fn features_for_sample() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("feat");
    let o = cicy(&[
        "features",
        "--in",
        p(&data("sample.jsonl")),
        "--hodge",
        p(&data("sample_hodge.csv")),
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let features = fs::read_to_string(out.join("features.csv")).unwrap();
    let lines: Vec<&str> = features.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        assert_eq!(line.split(',').count(), 180);
    }
    // bicubic: degree 3 at (0,0) and at (1,0).
    let second: Vec<u32> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!((second[0], second[15], second.iter().sum::<u32>()), (3, 3, 6));
    assert_eq!(
        fs::read_to_string(out.join("labels.csv")).unwrap(),
        "5,5,5,50\n3,3,18,36\n"
    );
    let manifest = read_json_value(&out.join("manifest.json"));
    assert_eq!(manifest["frame"]["rows"], 12);
    assert_eq!(manifest["frame"]["cols"], 15);
    assert_eq!(manifest["convention"], "literal");
    assert_eq!(manifest["ids"][0], "quintic");
    assert_eq!(value(&o, "written"), "2");
}

#[test]
fn features_for_empty_corpus() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.jsonl", "");
    let out = dir.path().join("feat");
    let o = cicy(&["features", "--in", p(&input), "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(out.join("features.csv")).unwrap(), "");
    assert_eq!(fs::read_to_string(out.join("labels.csv")).unwrap(), "");
    assert_eq!(value(&o, "written"), "0");
}

#[test]
fn features_frame_overflow() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("feat");
    let o = cicy(&[
        "features",
        "--in",
        p(&data("sample.jsonl")),
        "--out",
        p(&out),
        "--frame",
        "1x1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bicubic"), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(out.join("features.csv")).unwrap(), "5\n");
    assert_eq!(value(&o, "excluded"), "1");
}

#[test]
fn classify_sample_and_duplicates() {
    let dir = TempDir::new().unwrap();
    let o = cicy(&[
        "classify",
        "--in",
        p(&data("sample.jsonl")),
        "--hodge",
        p(&data("sample_hodge.csv")),
    ]);
    assert!(o.status.success());
    assert_eq!(value(&o, "buckets"), "2");
    assert_eq!(value(&o, "histogram.1"), "2");

    let input = write(
        &dir,
        "dup.jsonl",
        "{\"id\":\"a\",\"ambient\":[4],\"degrees\":[[5]]}\n{\"id\":\"b\",\"ambient\":[4],\"degrees\":[[5]]}\n",
    );
    let hodge = write(&dir, "h.csv", "id,h11,h21\na,1,101\nb,1,101\n");
    let buckets = dir.path().join("buckets.csv");
    let histogram = dir.path().join("hist.csv");
    let o = cicy(&[
        "classify",
        "--in",
        p(&input),
        "--hodge",
        p(&hodge),
        "--out",
        p(&buckets),
        "--histogram",
        p(&histogram),
    ]);
    assert!(o.status.success());
    assert_eq!(value(&o, "buckets"), "1");
    assert_eq!(
        fs::read_to_string(buckets).unwrap(),
        "h11,h21,d1,d2,d3,dp,size,ids\n1,101,5,5,5,50,2,a;b\n"
    );
    assert_eq!(fs::read_to_string(histogram).unwrap(), "size,buckets\n2,1\n");
}

#[test]
fn classify_without_hodge_leaves_records_unclassified() {
    let o = cicy(&["classify", "--in", p(&data("sample.jsonl"))]);
    assert!(o.status.success());
    assert_eq!(value(&o, "buckets"), "0");
    assert_eq!(value(&o, "unclassified"), "2");
}

#[test]
fn check_sample_passes() {
    let o = cicy(&[
        "check",
        "--in",
        p(&data("sample.jsonl")),
        "--hodge",
        p(&data("sample_hodge.csv")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(value(&o, "violations"), "0");
    assert_eq!(value(&o, "checked"), "2");
}

#[test]
fn check_names_a_corrupted_hodge_entry() {
    let dir = TempDir::new().unwrap();
    let hodge = write(&dir, "h.csv", "id,h11,h21\nquintic,1,101\nbicubic,2,84\n");
    let o = cicy(&["check", "--in", p(&data("sample.jsonl")), "--hodge", p(&hodge)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&o, "violations"), "1");
    let err = stderr(&o);
    assert!(err.contains("bicubic: euler-hodge"), "{err}");
}

#[test]
fn check_empty_corpus_passes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.json", "[]");
    let o = cicy(&["check", "--in", p(&input)]);
    assert!(o.status.success());
    assert_eq!(value(&o, "checked"), "0");
    assert_eq!(value(&o, "violations"), "0");
}

#[test]
fn workers_env_default() {
    let o = Command::new(env!("CARGO_BIN_EXE_cicy"))
        .args(["compute", "--in", p(&data("sample.jsonl"))])
        .env("CICY_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
