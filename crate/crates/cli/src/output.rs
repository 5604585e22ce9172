//! Artifact writing and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use capwave::spectral::fmt_f64;

use crate::Failure;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Resolved parameters; valid input for `--config`.
    pub params: Map<String, Value>,
    pub artifacts: Vec<String>,
    pub version: String,
    pub wall_time_s: f64,
}

pub struct Run {
    out: PathBuf,
    command: &'static str,
    params: Map<String, Value>,
    artifacts: Vec<String>,
    started: Instant,
}

fn io(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

impl Run {
    pub fn new(out: &Path, command: &'static str) -> Result<Self, Failure> {
        fs::create_dir_all(out).map_err(|e| io(out, e))?;
        Ok(Self {
            out: out.to_path_buf(),
            command,
            params: Map::new(),
            artifacts: Vec::new(),
            started: Instant::now(),
        })
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("parameters serialize");
        self.params.insert(key.to_string(), v);
    }

    pub fn manifest_name(&self) -> String {
        format!("{}.manifest.json", self.command)
    }

    fn write(&mut self, name: &str, body: &str) -> Result<PathBuf, Failure> {
        let path = self.out.join(name);
        fs::write(&path, body).map_err(|e| io(&path, e))?;
        self.artifacts.push(name.to_string());
        Ok(path)
    }

    /// Writes `value` with a `manifest` key added when it is an object.
    pub fn json(&mut self, name: &str, value: impl Serialize) -> Result<PathBuf, Failure> {
        let mut v = serde_json::to_value(value).expect("artifacts serialize");
        if let Value::Object(m) = &mut v {
            m.insert("manifest".into(), Value::String(self.manifest_name()));
        }
        let text = serde_json::to_string_pretty(&v).expect("artifacts serialize") + "\n";
        self.write(name, &text)
    }

    pub fn csv(&mut self, name: &str, header: &str, rows: &[Vec<String>]) -> Result<PathBuf, Failure> {
        let mut s = String::with_capacity(32 * rows.len() * header.len().max(1));
        s.push_str(header);
        s.push('\n');
        for r in rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        self.write(name, &s)
    }

    pub fn finish(self) -> Result<PathBuf, Failure> {
        let manifest = RunManifest {
            command: self.command.to_string(),
            params: self.params,
            artifacts: self.artifacts,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: self.started.elapsed().as_secs_f64(),
        };
        let path = self.out.join(format!("{}.manifest.json", self.command));
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        fs::write(&path, text).map_err(|e| io(&path, e))?;
        Ok(path)
    }
}

pub fn num(x: f64) -> String {
    fmt_f64(x)
}
