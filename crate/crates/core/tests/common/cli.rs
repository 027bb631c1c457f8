use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
pub struct BundledCase {
    pub name: String,
    pub args: Vec<String>,
    pub input: Option<String>,
    pub config: Option<String>,
}

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn bundled_cases() -> Vec<BundledCase> {
    let text = std::fs::read_to_string(data_dir().join("manifest.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub struct Run {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI in-process.
pub fn run(args: &[&str], stdin: &str) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("flowsched").chain(args.iter().copied());
    let status = flowsched::cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run { status, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

impl BundledCase {
    pub fn argv(&self, oracle: bool) -> Vec<String> {
        let mut argv = self.args.clone();
        let dir = data_dir();
        if let Some(input) = &self.input {
            argv.extend(["--input".into(), dir.join(input).display().to_string()]);
        }
        if let Some(config) = &self.config {
            argv.extend(["--config".into(), dir.join(config).display().to_string()]);
        }
        if oracle {
            argv.push("--oracle".into());
        }
        argv
    }

    pub fn run(&self, oracle: bool) -> Run {
        let argv = self.argv(oracle);
        run(&argv.iter().map(String::as_str).collect::<Vec<_>>(), "")
    }

    /// Schema files for this case's input, config and output.
    pub fn schemas(&self) -> (Option<&'static str>, Option<&'static str>, &'static str) {
        let args: Vec<&str> = self.args.iter().map(String::as_str).collect();
        match args[..2] {
            ["link", _] => (Some("link.input"), Some("link.config"), "link.output"),
            ["color", _] => (Some("color.input"), None, "color.output"),
            ["tree", "build"] => (Some("tree.build.input"), None, "tree.build.output"),
            ["tree", _] => (Some("tree.ops.input"), None, "tree.ops.output"),
            ["revpath", _] => (Some("revpath.input"), Some("revpath.config"), "revpath.output"),
            ["wireless", "mobile"] => (Some("wireless.mobile.input"), Some("wireless.mobile.config"), "wireless.mobile.output"),
            ["wireless", "sensor"] => (Some("wireless.sensor.input"), None, "wireless.sensor.output"),
            _ => (None, None, "permcount.output"),
        }
    }
}
