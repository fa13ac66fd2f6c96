//! Parsing of fan, degree, and polynomial arguments.

use std::fmt::Display;
use std::path::Path;

use serde_json::Value;
use torimod::generators::GeneratorPoly;
use torimod::geom::{examples, DegreeFunction, DegreeSpec, Fan, FanSpec};

pub enum CliError {
    /// Bad input; exit status 2.
    Usage(String),
    /// A mathematical error from the library; exit status 1.
    Domain(String),
}

impl CliError {
    pub fn usage(field: &str, msg: impl Display) -> CliError {
        CliError::Usage(format!("--{field}: {msg}"))
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::Domain(e.to_string())
    }
}

/// Inline JSON, or the contents of a file.
fn json_arg(field: &str, arg: &str) -> Result<Value, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| CliError::usage(field, format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::usage(field, e))
}

/// A named example fan, inline JSON, or a JSON file.
pub fn fan(arg: &str) -> Result<Fan, CliError> {
    if let Some(f) = examples::by_name(arg) {
        return Ok(f);
    }
    let spec: FanSpec =
        serde_json::from_value(json_arg("fan", arg)?).map_err(|e| CliError::usage("fan", e))?;
    Ok(Fan::from_spec(&spec)?)
}

pub fn degree(fan: &Fan, arg: &str) -> Result<DegreeFunction, CliError> {
    let spec: DegreeSpec =
        serde_json::from_value(json_arg("deg", arg)?).map_err(|e| CliError::usage("deg", e))?;
    if spec.values.len() != fan.rays().len() {
        return Err(CliError::usage(
            "deg",
            format!("{} values for {} rays", spec.values.len(), fan.rays().len()),
        ));
    }
    Ok(DegreeFunction::from_spec(fan, &spec)?)
}

pub fn poly(arg: &str) -> Result<GeneratorPoly, CliError> {
    GeneratorPoly::from_json(&json_arg("poly", arg)?).map_err(|e| CliError::usage("poly", e))
}

pub fn prec(p: i64) -> Result<i64, CliError> {
    if p < 1 {
        return Err(CliError::usage(
            "prec",
            format!("must be at least 1, got {p}"),
        ));
    }
    Ok(p)
}
