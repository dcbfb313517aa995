//! The line-description config file: a single JSON document holding the four
//! per-unit-length constant matrices in SI units per meter.

use std::path::Path;

use serde::{Deserialize, Serialize};
use telegrapher::line::{LineConstants, RealMatrix};

use crate::CliError;

pub const UNITS: &str = "si_per_meter";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineConfig {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: Vec<Vec<f64>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<f64>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<f64>>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<f64>>,
    pub units: String,
}

fn to_matrix(name: &str, rows: &[Vec<f64>], n: usize) -> Result<RealMatrix, CliError> {
    if rows.len() != n || rows.iter().any(|row| row.len() != n) {
        return Err(CliError::Parse(format!(
            "matrix {name} must be {n}x{n} to match the declared conductor count"
        )));
    }
    Ok(RealMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

impl LineConfig {
    /// Validation report for the raw matrices, without constructing anything.
    pub fn validation_report(&self) -> Result<telegrapher::line::ValidationReport, CliError> {
        let n = self.n;
        let l = to_matrix("L", &self.l, n)?;
        let c = to_matrix("C", &self.c, n)?;
        let r = to_matrix("R", &self.r, n)?;
        let g = to_matrix("G", &self.g, n)?;
        LineConstants::validate(&l, &c, &r, &g).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let config: LineConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        if config.units != UNITS {
            return Err(CliError::Parse(format!(
                "units must be \"{UNITS}\", got \"{}\"",
                config.units
            )));
        }
        Ok(config)
    }

    /// Validates the matrices and builds the symmetrized constants.
    pub fn into_constants(self) -> Result<LineConstants, CliError> {
        let n = self.n;
        let l = to_matrix("L", &self.l, n)?;
        let c = to_matrix("C", &self.c, n)?;
        let r = to_matrix("R", &self.r, n)?;
        let g = to_matrix("G", &self.g, n)?;
        LineConstants::new(l, c, r, g).map_err(|e| CliError::Validation(e.to_string()))
    }

    /// Canonical re-emission of validated constants. Serialized floats
    /// round-trip exactly, and symmetrization is idempotent, so emitting and
    /// re-parsing reproduces the matrices bit for bit.
    pub fn from_constants(line: &LineConstants) -> Self {
        let dump = |m: &RealMatrix| -> Vec<Vec<f64>> {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
                .collect()
        };
        LineConfig {
            n: line.n(),
            l: dump(line.l()),
            c: dump(line.c()),
            r: dump(line.r()),
            g: dump(line.g()),
            units: UNITS.to_owned(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    /// Built-in two-conductor example emitted by `params --emit-config`.
    pub fn template() -> Self {
        LineConfig {
            n: 2,
            l: vec![vec![1.0, 0.2], vec![0.2, 1.0]],
            c: vec![vec![0.9, -0.1], vec![-0.1, 1.1]],
            r: vec![vec![0.08, 0.01], vec![0.01, 0.09]],
            g: vec![vec![0.06, 0.0], vec![0.0, 0.07]],
            units: UNITS.to_owned(),
        }
    }
}

pub fn load_constants(path: &Path) -> Result<LineConstants, CliError> {
    LineConfig::load(path)?.into_constants()
}
