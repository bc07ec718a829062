#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const STANDARD_RI: [(usize, f64); 7] = [
    (3, 0.58),
    (4, 0.90),
    (5, 1.12),
    (6, 1.24),
    (7, 1.32),
    (8, 1.41),
    (9, 1.45),
];

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the CLI in-process.
pub fn ahp(args: &[&str]) -> Output {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("ahp").chain(args.iter().copied());
    let code = ahp_cli::run(argv, &mut stdout, &mut stderr);
    Output {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

/// Run the built binary with extra environment variables.
pub fn ahp_bin(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ahp"));
    cmd.args(args).env_remove("AHP_RI_TABLE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/cigarette-efficiency.ahp.json")
}

pub fn verbatim_fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures/cigarette-efficiency-verbatim.ahp.json")
}

/// Goal with three leaves judged as the cycle x > y > z > x.
pub const CYCLIC_TRIAD: &str = r#"{
  "version": "1.0",
  "hierarchy": {
    "root": {"id": "G", "label": "goal", "children": [
      {"id": "x", "label": "X"}, {"id": "y", "label": "Y"}, {"id": "z", "label": "Z"}
    ]}
  },
  "matrices": {
    "G": [[1, 3, 0.3333333333333333], [0.3333333333333333, 1, 3], [3, 0.3333333333333333, 1]]
  }
}
"#;

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn parse_ri(stdout: &str) -> f64 {
    stdout
        .trim()
        .rsplit_once("ri=")
        .and_then(|(_, v)| v.parse().ok())
        .unwrap_or_else(|| panic!("no ri in {stdout:?}"))
}
