//! Output reports. Exact numbers are written as strings ("p/q" for
//! rationals), and object keys come out sorted, so equal inputs give
//! byte-identical files.

use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tropint::lattice::IntVector;
use tropint::polytope::{format_rational, Rational};

use crate::error::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn int_vector(v: &IntVector) -> Value {
    Value::Array(v.entries().iter().map(int).collect())
}

pub fn int_vectors(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(int_vector).collect())
}

pub fn point(x: &[Rational]) -> Value {
    Value::Array(x.iter().map(rational).collect())
}

/// `{command, input_digest, results, tool_version}`.
pub fn envelope(command: Value, input: &[u8], results: Value) -> Value {
    json!({
        "command": command,
        "input_digest": digest(input),
        "results": results,
        "tool_version": TOOL_VERSION,
    })
}

pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("values serialize");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
