#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden(name: &str) -> PathBuf {
    fixtures().join("golden").join(name)
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantomine"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

pub fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "cantomine {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

pub fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn line_count(path: &Path) -> usize {
    read(path).iter().filter(|&&b| b == b'\n').count()
}

/// Writes a TSV dataset of `n` distinct pairs.
pub fn synthetic_dataset(path: &Path, n: usize) {
    let mut s = String::with_capacity(n * 24);
    for i in 0..n {
        s.push_str(&format!("第{i}句。\t第{i}句呀。\n"));
    }
    std::fs::write(path, s).unwrap();
}
