use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use sinrsched_core::format::{canonical_instance, parse_instance};
use sinrsched_core::{Instance, PowerAssignment, SinrError};

/// A failed command and the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed files. Exit 2.
    Usage(String),
    /// Infeasible input or a failed verification. Exit 1.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<SinrError> for CliError {
    fn from(e: SinrError) -> Self {
        match e {
            SinrError::Parse { .. } | SinrError::OracleScale { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Reads and validates an instance; every failure is an input error.
pub fn load_instance(path: &Path) -> CliResult<Instance> {
    let text = read_file(path)?;
    parse_instance(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Hex SHA-256 of the canonical instance serialization.
pub fn digest(inst: &Instance) -> String {
    hex::encode(Sha256::digest(canonical_instance(inst).as_bytes()))
}

/// `None` stands for power control.
pub fn parse_power(spec: &str, alpha: f64) -> CliResult<Option<PowerAssignment>> {
    let p = match spec {
        "control" => return Ok(None),
        "uniform" => PowerAssignment::uniform(),
        "linear" => PowerAssignment::linear(alpha),
        "mean" => PowerAssignment::mean(alpha),
        "psi" => PowerAssignment::psi(alpha),
        "log" => PowerAssignment::logarithmic(),
        other => {
            let body = other
                .strip_prefix("custom:")
                .ok_or_else(|| CliError::Usage(format!("unknown power {other:?}")))?;
            let parts: Vec<&str> = body.split(',').collect();
            let [g, d] = parts[..] else {
                return Err(CliError::Usage(format!("custom power needs GAMMA,DELTA, got {body:?}")));
            };
            let num = |s: &str| {
                s.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("custom power {s:?}: {e}")))
            };
            PowerAssignment::new(num(g)?, num(d)?, 1.0).map_err(|e| CliError::Usage(e.to_string()))?
        }
    };
    Ok(Some(p))
}

/// The name `parse_power` accepts for `p`.
pub fn power_label(p: Option<&PowerAssignment>, alpha: f64) -> String {
    let Some(p) = p else { return "control".into() };
    let named = [
        ("uniform", PowerAssignment::uniform()),
        ("linear", PowerAssignment::linear(alpha)),
        ("mean", PowerAssignment::mean(alpha)),
        ("psi", PowerAssignment::psi(alpha)),
        ("log", PowerAssignment::logarithmic()),
    ];
    named
        .iter()
        .find(|(_, q)| q == p)
        .map_or_else(|| p.to_string(), |(name, _)| name.to_string())
}

pub fn finite(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// One JSON-lines record. Keys are sorted, so identical runs print identical
/// lines apart from `wall_ms`.
#[derive(Debug, Default)]
pub struct Report(pub Map<String, Value>);

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.set("command", command);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn line(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    /// `key: value` pairs, one per line, for `--format text`.
    pub fn text(&self) -> String {
        let width = self.0.keys().map(String::len).max().unwrap_or(0);
        let mut s = String::new();
        for (k, v) in &self.0 {
            let shown = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k:<width$}  {shown}\n"));
        }
        s
    }
}
