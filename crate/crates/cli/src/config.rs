//! `--config` values, overridden by flags.

use std::path::Path;

use serde_json::{Map, Value};

use crate::Failure;

const KEYS: &[&str] = &[
    "g",
    "sigma",
    "gamma",
    "k_min",
    "k_max",
    "samples",
    "G",
    "V",
    "width",
    "branch",
    "sign",
    "eps",
    "eps_ladder",
    "delta",
    "n",
    "length",
    "newton_tol",
    "max_iter",
    "jacobian",
    "linear_solver",
    "v_min",
    "v_max",
];

#[derive(Debug, Default)]
pub struct Config {
    map: Map<String, Value>,
}

impl Config {
    /// Reads a parameter object, or the `params` of a run manifest.
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let mut map = match value {
            Value::Object(m) => m,
            _ => return Err(Failure::Usage("config must be a JSON object".into())),
        };
        if map.contains_key("command") {
            map = match map.remove("params") {
                Some(Value::Object(m)) => m,
                _ => return Err(Failure::Usage("manifest without a params object".into())),
            };
        }
        if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Failure::Usage(format!("unknown config key {k:?}")));
        }
        Ok(Self { map })
    }

    pub fn f64(&self, flag: Option<f64>, key: &str, default: f64) -> Result<f64, Failure> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(default),
            Some(v) => v
                .as_f64()
                .ok_or_else(|| Failure::Usage(format!("config {key}: expected a number"))),
        }
    }

    pub fn opt_f64(&self, flag: Option<f64>, key: &str) -> Result<Option<f64>, Failure> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| Failure::Usage(format!("config {key}: expected a number"))),
        }
    }

    pub fn usize(&self, flag: Option<usize>, key: &str, default: usize) -> Result<usize, Failure> {
        Ok(self.opt_usize(flag, key)?.unwrap_or(default))
    }

    pub fn opt_usize(&self, flag: Option<usize>, key: &str) -> Result<Option<usize>, Failure> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|x| Some(x as usize))
                .ok_or_else(|| Failure::Usage(format!("config {key}: expected an integer"))),
        }
    }

    pub fn string(&self, flag: Option<String>, key: &str, default: &str) -> Result<String, Failure> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(default.to_string()),
            Some(Value::String(s)) => Ok(s.clone()),
            Some(_) => Err(Failure::Usage(format!("config {key}: expected a string"))),
        }
    }

    /// A list given as an array of numbers or a comma-separated string.
    pub fn list(&self, flag: Option<Vec<f64>>, key: &str, default: &[f64]) -> Result<Vec<f64>, Failure> {
        if let Some(v) = flag {
            return Ok(v);
        }
        let bad = || Failure::Usage(format!("config {key}: expected a list of numbers"));
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(default.to_vec()),
            Some(Value::Array(a)) => a.iter().map(|x| x.as_f64().ok_or_else(bad)).collect(),
            Some(Value::String(s)) => {
                s.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| bad())).collect()
            }
            Some(_) => Err(bad()),
        }
    }
}
