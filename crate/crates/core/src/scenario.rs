//! Scenario files: one `key = value` per line, `#` starts a comment.
//!
//! Keys are the parameter names (`theta`, `theta_x`, `r`, `mu`, `eta`,
//! `alpha`, `a`, `delta`, `epsilon`, `beta`, `rho`, `d`, `e`, `saving_mode`).
//! Rates are given net and stored gross.

use std::path::Path;

use thiserror::Error;

use crate::error::ModelError;
use crate::params::{SavingMode, ScenarioParams};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("scenario sets neither `r` nor `mu`")]
    NoRate,
    #[error("invalid scenario: {0}")]
    Invalid(#[from] ModelError),
}

const KEYS: [&str; 14] = [
    "theta",
    "theta_x",
    "r",
    "mu",
    "eta",
    "alpha",
    "a",
    "delta",
    "epsilon",
    "beta",
    "rho",
    "d",
    "e",
    "saving_mode",
];

pub fn load(path: &Path) -> Result<ScenarioParams, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<ScenarioParams, ScenarioError> {
    let mut values: [Option<f64>; 14] = [None; 14];
    let mut seen = [false; 14];
    let mut saving_mode = SavingMode::default();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |msg: String| ScenarioError::Syntax { line, msg };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected `key = value`, got `{content}`")))?;
        let key = key.trim();
        let value = value.trim();
        let slot = KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| syntax(format!("unknown key `{key}`")))?;
        if seen[slot] {
            return Err(syntax(format!("duplicate key `{key}`")));
        }
        seen[slot] = true;
        if key == "saving_mode" {
            saving_mode = value
                .parse()
                .map_err(|e: ModelError| syntax(e.to_string()))?;
            continue;
        }
        let x: f64 = value
            .parse()
            .map_err(|_| syntax(format!("`{key}` expects a number, got `{value}`")))?;
        if !x.is_finite() {
            return Err(syntax(format!("`{key}` must be finite")));
        }
        values[slot] = Some(x);
    }

    let get = |k: &'static str| values[KEYS.iter().position(|x| *x == k).unwrap()];
    let need = |k: &'static str| get(k).ok_or(ScenarioError::Missing(k));
    let params = ScenarioParams {
        theta: need("theta")?,
        theta_x: need("theta_x")?,
        gross_r: get("r").map(|r| 1.0 + r),
        gross_mu: get("mu").map(|m| 1.0 + m),
        eta: need("eta")?,
        alpha: need("alpha")?,
        a: need("a")?,
        delta: need("delta")?,
        epsilon: get("epsilon").unwrap_or(0.0),
        beta: get("beta"),
        rho: get("rho"),
        d: get("d"),
        e: get("e"),
        saving_mode,
    };
    if params.gross_r.is_none() && params.gross_mu.is_none() {
        return Err(ScenarioError::NoRate);
    }
    params.validate()?;
    Ok(params)
}

/// Renders parameters back into scenario syntax.
pub fn render(params: &ScenarioParams) -> String {
    let mut out = String::new();
    let mut put = |k: &str, v: Option<f64>| {
        if let Some(v) = v {
            out.push_str(&format!("{k} = {v}\n"));
        }
    };
    put("theta", Some(params.theta));
    put("theta_x", Some(params.theta_x));
    put("r", params.gross_r.map(|g| g - 1.0));
    put("mu", params.gross_mu.map(|g| g - 1.0));
    put("eta", Some(params.eta));
    put("alpha", Some(params.alpha));
    put("a", Some(params.a));
    put("delta", Some(params.delta));
    put("epsilon", Some(params.epsilon));
    put("beta", params.beta);
    put("rho", params.rho);
    put("d", params.d);
    put("e", params.e);
    out.push_str(&format!("saving_mode = {}\n", params.saving_mode.as_str()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: &str = "# open baseline\ntheta = 0.5\ntheta_x = 0.6\nr = 0.55\neta = 0.4\nalpha = 0.33\na = 15\ndelta = 0.2\n";

    #[test]
    fn parses_and_converts_rates() {
        let p = parse(P2).unwrap();
        assert_eq!(p.gross_r, Some(1.55));
        assert_eq!(p.epsilon, 0.0);
        assert_eq!(p, ScenarioParams::open_baseline());
    }

    #[test]
    fn render_round_trips() {
        let mut p = ScenarioParams::monetary_baseline();
        p.beta = Some(0.9);
        p.saving_mode = SavingMode::LogUtility;
        let q = parse(&render(&p)).unwrap();
        assert_eq!(p.theta, q.theta);
        assert_eq!(p.saving_mode, q.saving_mode);
        assert!((p.gross_mu.unwrap() - q.gross_mu.unwrap()).abs() < 1e-15);
    }

    #[test]
    fn unknown_key_reports_line() {
        let err = parse("theta = 0.5\nthetax = 0.6\n").unwrap_err();
        assert!(
            matches!(err, ScenarioError::Syntax { line: 2, .. }),
            "{err}"
        );
    }

    #[test]
    fn duplicate_and_malformed_lines() {
        assert!(matches!(
            parse("theta = 0.5\ntheta = 0.4\n").unwrap_err(),
            ScenarioError::Syntax { line: 2, .. }
        ));
        assert!(matches!(
            parse("theta 0.5\n").unwrap_err(),
            ScenarioError::Syntax { line: 1, .. }
        ));
        assert!(matches!(
            parse("theta = abc\n").unwrap_err(),
            ScenarioError::Syntax { line: 1, .. }
        ));
    }

    #[test]
    fn empty_and_rateless_files_fail() {
        assert!(matches!(
            parse("").unwrap_err(),
            ScenarioError::Missing("theta")
        ));
        let rateless = P2.replace("r = 0.55\n", "");
        assert!(matches!(
            parse(&rateless).unwrap_err(),
            ScenarioError::NoRate
        ));
    }

    #[test]
    fn out_of_range_values_fail_validation() {
        let bad = P2.replace("eta = 0.4", "eta = 1.4");
        assert!(matches!(
            parse(&bad).unwrap_err(),
            ScenarioError::Invalid(_)
        ));
    }
}
