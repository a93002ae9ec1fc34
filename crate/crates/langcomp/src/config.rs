//! Parameter files: one `key = value` pair per line, `#` starts a comment.
//!
//! ```text
//! # coexistence run
//! s_m1 = 0.3
//! s_m2 = 0.7
//! s_b = 0.1
//! lambda = 400
//! alpha = 1.1
//! beta = 3.6
//! ```
//!
//! The format is a subset of TOML, so any TOML reader also accepts it.
//! Every value must be a number; unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use langcomp_core::baselines::{MPParams, MWParams, VazParams};
use langcomp_core::model::{ModelParams, STANDARD_LAMBDA, STANDARD_S_M1, STANDARD_S_M2};

use crate::error::{CliError, Result};

pub const MODEL_KEYS: [&str; 6] = ["s_m1", "s_m2", "s_b", "lambda", "alpha", "beta"];
pub const MW_KEYS: [&str; 7] = ["s_x", "c_zx", "c_zy", "c_xz", "c_yz", "a", "mu"];
pub const MP_KEYS: [&str; 4] = ["s_x", "c", "k", "a"];
pub const VAZ_KEYS: [&str; 2] = ["s", "a"];

pub type KeyValues = BTreeMap<String, f64>;

pub fn parse_key_values(text: &str, allowed: &[&str]) -> Result<KeyValues> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::validation(format!("params: {}", e.message())))?;
    let mut out = KeyValues::new();
    for (key, value) in table {
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::validation(format!(
                "params: unknown key `{key}` (expected one of {})",
                allowed.join(", ")
            )));
        }
        let v = match value {
            toml::Value::Float(f) => f,
            toml::Value::Integer(i) => i as f64,
            _ => return Err(CliError::validation(format!("params: `{key}` must be a number"))),
        };
        out.insert(key, v);
    }
    Ok(out)
}

pub fn read_key_values(path: &Path, allowed: &[&str]) -> Result<KeyValues> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_key_values(&text, allowed).map_err(|e| match e {
        CliError::Validation(m) => CliError::Validation(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn require(kv: &KeyValues, key: &str) -> Result<f64> {
    kv.get(key)
        .copied()
        .ok_or_else(|| CliError::validation(format!("missing parameter `{key}`")))
}

/// Monolingual statuses and λ fall back to the standard values.
pub fn model_params(kv: &KeyValues) -> Result<ModelParams> {
    let get = |k: &str, default: f64| kv.get(k).copied().unwrap_or(default);
    Ok(ModelParams::new(
        get("s_m1", STANDARD_S_M1),
        get("s_m2", STANDARD_S_M2),
        require(kv, "s_b")?,
        get("lambda", STANDARD_LAMBDA),
        require(kv, "alpha")?,
        require(kv, "beta")?,
    )?)
}

pub fn mw_params(kv: &KeyValues) -> Result<MWParams> {
    let p = MWParams {
        s_x: require(kv, "s_x")?,
        c_zx: require(kv, "c_zx")?,
        c_zy: require(kv, "c_zy")?,
        c_xz: require(kv, "c_xz")?,
        c_yz: require(kv, "c_yz")?,
        a: require(kv, "a")?,
        mu: require(kv, "mu")?,
    };
    p.validate()?;
    Ok(p)
}

pub fn mp_params(kv: &KeyValues) -> Result<MPParams> {
    let p = MPParams { s_x: require(kv, "s_x")?, c: require(kv, "c")?, k: require(kv, "k")?, a: require(kv, "a")? };
    p.validate()?;
    Ok(p)
}

pub fn vaz_params(kv: &KeyValues) -> Result<VazParams> {
    let p = VazParams { s: require(kv, "s")?, a: require(kv, "a")? };
    p.validate()?;
    Ok(p)
}

/// Inverse of [`model_params`]; values use the shortest round-trip form.
pub fn format_model_params(p: &ModelParams) -> String {
    let mut out = String::new();
    for (k, v) in [
        ("s_m1", p.s_m1),
        ("s_m2", p.s_m2),
        ("s_b", p.s_b),
        ("lambda", p.lambda),
        ("alpha", p.alpha),
        ("beta", p.beta),
    ] {
        let _ = writeln!(out, "{k} = {v:?}");
    }
    out
}
