mod common;

use std::path::Path;

use common::{fixtures, golden, line_count, p, read, run, run_ok, synthetic_dataset};
use serde_json::Value;

fn small(name: &str) -> String {
    p(&fixtures().join("small").join(name)).to_owned()
}

fn field(stdout: &str, key: &str) -> usize {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
        .unwrap_or_else(|| panic!("no `{key}` in {stdout}"))
        .parse()
        .unwrap()
}

fn provenance(path: &Path) -> Value {
    serde_json::from_slice(&read(path)).unwrap()
}

#[test]
fn ingest_small_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.jsonl");
    let stdout = run_ok(&[
        "ingest",
        "--dump",
        &small("dump.xml"),
        "--lang",
        "zh-yue",
        "--out",
        p(&out),
    ]);
    assert_eq!(field(&stdout, "pages"), 4);
    assert_eq!(field(&stdout, "articles"), 3);
    assert_eq!(field(&stdout, "redirects"), 1);
    assert_eq!(line_count(&out), 3);
    let first: Value = serde_json::from_str(
        std::str::from_utf8(&read(&out))
            .unwrap()
            .lines()
            .next()
            .unwrap(),
    )
    .unwrap();
    assert_eq!(first["title"], "香港");
    assert_eq!(first["lang"], "zh-yue");
    assert_eq!(first["paragraphs"][0], "香港係一個城市。");

    let prov = provenance(&dir.path().join("a.jsonl.provenance.json"));
    assert_eq!(prov["command"], "ingest");
    let digest = prov["inputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert!(prov["config"]["mining"]["threshold"].is_number());
}

#[test]
fn ingest_empty_and_missing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.jsonl");
    let stdout = run_ok(&[
        "ingest",
        "--dump",
        &small("empty.xml"),
        "--lang",
        "zh",
        "--out",
        p(&out),
    ]);
    assert_eq!(field(&stdout, "articles"), 0);
    assert_eq!(line_count(&out), 0);

    let zero = dir.path().join("zero.xml");
    std::fs::write(&zero, "").unwrap();
    let stdout = run_ok(&[
        "ingest",
        "--dump",
        p(&zero),
        "--lang",
        "zh",
        "--out",
        p(&out),
    ]);
    assert_eq!(field(&stdout, "articles"), 0);

    let r = run(&[
        "ingest",
        "--dump",
        p(&dir.path().join("nope.xml")),
        "--lang",
        "zh",
        "--out",
        p(&out),
    ]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn ingest_malformed_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.xml");
    std::fs::write(&bad, "<mediawiki><page><title>A</title></mediawiki>").unwrap();
    let r = run(&[
        "ingest",
        "--dump",
        p(&bad),
        "--lang",
        "zh",
        "--out",
        p(&dir.path().join("a.jsonl")),
    ]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("byte"));
}

#[test]
fn pair_small() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pairs.jsonl");
    let args = |links: &str| {
        run(&[
            "pair",
            "--src",
            &small("src.jsonl"),
            "--tgt",
            &small("tgt.jsonl"),
            "--links",
            &small(links),
            "--out",
            p(&out),
        ])
    };
    let r = args("links.tsv");
    assert!(r.status.success());
    let stdout = String::from_utf8(r.stdout).unwrap();
    assert_eq!(field(&stdout, "pairs"), 2);
    assert_eq!(field(&stdout, "unmatched"), 1);
    assert_eq!(
        String::from_utf8(read(&out)).unwrap(),
        "{\"src_title\":\"九龙\",\"tgt_title\":\"九龍\"}\n{\"src_title\":\"香港\",\"tgt_title\":\"香港\"}\n"
    );

    let r = args("no_links.tsv");
    assert!(r.status.success());
    assert_eq!(field(&String::from_utf8(r.stdout).unwrap(), "pairs"), 0);

    assert_eq!(args("bad_links.tsv").status.code(), Some(2));
    assert_eq!(args("missing.tsv").status.code(), Some(2));
}

#[test]
fn pair_exclude_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pairs.jsonl");
    let stdout = run_ok(&[
        "pair",
        "--src",
        &small("src.jsonl"),
        "--tgt",
        &small("tgt.jsonl"),
        "--links",
        &small("links.tsv"),
        "--exclude",
        "^九",
        "--out",
        p(&out),
    ]);
    assert_eq!(field(&stdout, "pairs"), 1);
    assert_eq!(field(&stdout, "excluded"), 1);
}

fn mine_inputs() -> Vec<String> {
    [
        "--pairs",
        "pairs.jsonl",
        "--src",
        "zh.jsonl",
        "--tgt",
        "zh-yue.jsonl",
    ]
    .iter()
    .enumerate()
    .map(|(i, a)| {
        if i % 2 == 0 {
            a.to_string()
        } else {
            p(&golden(a)).to_owned()
        }
    })
    .collect()
}

fn mine_with(extra: &[&str]) -> std::process::Output {
    let mut args = vec!["mine".to_string()];
    args.extend(mine_inputs());
    args.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    run(&refs)
}

#[test]
fn mine_threshold_one_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.tsv");
    let r = mine_with(&["--threshold", "1.0", "--out", p(&out)]);
    assert!(r.status.success());
    assert!(read(&out).is_empty());
}

#[test]
fn mine_rejects_bad_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let r = mine_with(&["--threshold", "1.5", "--out", p(&dir.path().join("m.tsv"))]);
    assert_eq!(r.status.code(), Some(1));
    let r = mine_with(&["--workers", "0", "--out", p(&dir.path().join("m.tsv"))]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn mine_config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(
        &config,
        r#"{"mining":{"threshold":0.95,"digit_filter":false},"workers":2}"#,
    )
    .unwrap();
    let out = dir.path().join("m.tsv");
    let r = mine_with(&["--config", p(&config), "--out", p(&out)]);
    assert!(r.status.success());
    let at95 = line_count(&out);
    let r = mine_with(&[
        "--config",
        p(&config),
        "--threshold",
        "0.9",
        "--out",
        p(&out),
    ]);
    assert!(r.status.success());
    assert!(line_count(&out) > at95);
    let prov = provenance(&dir.path().join("m.tsv.provenance.json"));
    assert_eq!(prov["config"]["mining"]["threshold"], 0.9);
    assert_eq!(prov["config"]["mining"]["digit_filter"], false);
    assert_eq!(prov["config"]["workers"], 2);
    assert_eq!(prov["inputs"].as_array().unwrap().len(), 4);

    std::fs::write(&config, r#"{"threshold":0.9}"#).unwrap();
    assert_eq!(
        mine_with(&["--config", p(&config), "--out", p(&out)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn mine_jsonl_matches_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.jsonl");
    assert!(mine_with(&["--format", "jsonl", "--out", p(&out)])
        .status
        .success());
    let tsv = String::from_utf8(read(&golden("mined.tsv"))).unwrap();
    let jsonl = String::from_utf8(read(&out)).unwrap();
    assert_eq!(tsv.lines().count(), jsonl.lines().count());
    for (t, j) in tsv.lines().zip(jsonl.lines()) {
        let cols: Vec<&str> = t.split('\t').collect();
        let v: Value = serde_json::from_str(j).unwrap();
        assert_eq!(v["src"], cols[0]);
        assert_eq!(v["tgt"], cols[1]);
        assert_eq!(format!("{:.6}", v["score"].as_f64().unwrap()), cols[2]);
        assert_eq!(v["article_pair_id"].to_string(), cols[3]);
    }
}

#[test]
fn sweep_three_rows_non_increasing() {
    let mut args = vec![
        "sweep".to_string(),
        "--thresholds".into(),
        "0.9,0.93,0.95".into(),
    ];
    args.extend(mine_inputs());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let stdout = run_ok(&refs);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "threshold\tcount");
    let counts: Vec<usize> = lines[1..]
        .iter()
        .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(counts.len(), 3);
    assert!(counts.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn split_kaifang_sized_dataset() {
    let dir = tempfile::tempdir().unwrap();
    synthetic_dataset(&dir.path().join("kaifang.tsv"), 10823);
    std::fs::write(
        dir.path().join("manifest.json"),
        r#"[{"name":"kaifang","path":"kaifang.tsv","format":"tsv","split":{"kind":"811"},"exclude_from_merged_valid":false}]"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    run_ok(&[
        "split",
        "--manifest",
        p(&dir.path().join("manifest.json")),
        "--out",
        p(&out),
    ]);
    assert_eq!(line_count(&out.join("kaifang.train.tsv")), 8658);
    assert_eq!(line_count(&out.join("kaifang.valid.tsv")), 1082);
    assert_eq!(line_count(&out.join("kaifang.test.tsv")), 1083);
    assert_eq!(line_count(&out.join("merged_valid.tsv")), 1082);
    let prov = provenance(&out.join("provenance.json"));
    assert_eq!(prov["outputs"].as_array().unwrap().len(), 4);
}

#[test]
fn split_seed_changes_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = fixtures().join("toy/manifest.json");
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    run_ok(&["split", "--manifest", p(&manifest), "--out", p(&a)]);
    run_ok(&[
        "split",
        "--manifest",
        p(&manifest),
        "--out",
        p(&b),
        "--seed",
        "5",
    ]);
    assert_eq!(
        line_count(&a.join("daily.test.tsv")),
        line_count(&b.join("daily.test.tsv"))
    );
    assert_ne!(
        read(&a.join("daily.test.tsv")),
        read(&b.join("daily.test.tsv"))
    );
}

#[test]
fn bleu_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let refs = dir.path().join("ref.txt");
    let hyp = dir.path().join("hyp.txt");
    std::fs::write(&refs, "我哋去飲茶。\n佢係學生。\n").unwrap();
    assert_eq!(
        run_ok(&["bleu", "--hyp", p(&refs), "--ref", p(&refs)]).trim(),
        "100.00"
    );
    std::fs::write(&hyp, "我哋去飲茶。\n").unwrap();
    assert_eq!(
        run(&["bleu", "--hyp", p(&hyp), "--ref", p(&refs)])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn report_one_row_per_test_set() {
    let manifest = fixtures().join("toy/manifest.json");
    let stdout = run_ok(&["report", "--manifest", p(&manifest), "--systems", "copy"]);
    let rows: Vec<&str> = stdout.lines().skip(2).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("daily"));
}

#[test]
fn report_file_system() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = fixtures().join("toy/manifest.json");
    let split = dir.path().join("split");
    run_ok(&["split", "--manifest", p(&manifest), "--out", p(&split)]);
    let hyps = dir.path().join("hyps");
    std::fs::create_dir(&hyps).unwrap();
    for name in ["daily", "phrasebook", "wiki_sample"] {
        let test = String::from_utf8(read(&split.join(format!("{name}.test.tsv")))).unwrap();
        let refs: String = test
            .lines()
            .map(|l| format!("{}\n", l.split('\t').nth(1).unwrap()))
            .collect();
        std::fs::write(hyps.join(format!("{name}.txt")), refs).unwrap();
    }
    let system = format!("file:oracle={}", p(&hyps));
    let out = dir.path().join("r.tsv");
    run_ok(&[
        "report",
        "--manifest",
        p(&manifest),
        "--systems",
        &format!("copy,{system}"),
        "--out",
        p(&out),
    ]);
    let tsv = String::from_utf8(read(&out)).unwrap();
    assert_eq!(
        tsv.lines()
            .filter(|l| l.ends_with("\toracle\t100.00"))
            .count(),
        3
    );

    assert_eq!(
        run(&[
            "report",
            "--manifest",
            p(&manifest),
            "--systems",
            "copy,copy"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&["report", "--manifest", p(&manifest), "--systems", "nmt"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn mine_with_external_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("pairs.jsonl");
    run_ok(&[
        "pair",
        "--src",
        &small("src.jsonl"),
        "--tgt",
        &small("tgt.jsonl"),
        "--links",
        &small("links.tsv"),
        "--out",
        p(&pairs),
    ]);
    let vectors = dir.path().join("vectors.tsv");
    std::fs::write(
        &vectors,
        "香港是一個城市。\t1,0,0\n香港係一個城市。\t1,0,0\n九龙是香港的一部分。\t0,1,0\n九龍係香港嘅一部份。\t0,0,1\n",
    )
    .unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(
        &config,
        format!(
            r#"{{"embedder":{{"kind":"external-file","path":{}}}}}"#,
            serde_json::to_string(p(&vectors)).unwrap()
        ),
    )
    .unwrap();
    let out = dir.path().join("m.tsv");
    run_ok(&[
        "mine",
        "--pairs",
        p(&pairs),
        "--src",
        &small("src.jsonl"),
        "--tgt",
        &small("tgt.jsonl"),
        "--config",
        p(&config),
        "--out",
        p(&out),
    ]);
    assert_eq!(
        String::from_utf8(read(&out)).unwrap(),
        "香港是一個城市。\t香港係一個城市。\t1.000000\t1\n"
    );
    let prov = provenance(&dir.path().join("m.tsv.provenance.json"));
    assert_eq!(prov["inputs"].as_array().unwrap().len(), 5);
}
