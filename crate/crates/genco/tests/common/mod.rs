#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

/// Environment variable that rewrites golden files instead of comparing.
pub const BLESS_VAR: &str = "GENCO_BLESS";

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Bundled configs, sorted by file name.
pub fn corpus() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(manifest_dir().join("tests/corpus"))
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    out
}

pub fn stem(path: &Path) -> String {
    path.file_stem().unwrap().to_string_lossy().into_owned()
}

pub fn is_cohen(path: &Path) -> bool {
    std::fs::read_to_string(path).unwrap().contains("\"cohen\"")
}

/// The build subcommand for a corpus config.
pub fn build_command(path: &Path) -> &'static str {
    if is_cohen(path) {
        "cohen"
    } else {
        "build"
    }
}

pub fn golden(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(name)
}

pub fn bless() -> bool {
    std::env::var_os(BLESS_VAR).is_some()
}

/// Runs the CLI in-process.
pub fn call<S: AsRef<str>>(args: &[S]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("genco").chain(args.iter().map(AsRef::as_ref));
    let code = genco::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Runs the installed binary as a separate process.
pub fn binary(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_genco"));
    cmd.args(args).env_remove("GENCO_FUEL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn genco")
}
