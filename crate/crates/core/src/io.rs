//! File formats: params JSON, matrix JSON, pattern and state text, and the
//! JSON shapes of reports. All structured output is JSON with stable field
//! order so runs diff cleanly; vectors of spins and activations are plain
//! text, one record per line.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopfield::ConvergenceReport;
use crate::matrix::SquareMatrix;
use crate::network::{NetworkState, TwoState};
use crate::oracle::BoltzmannExact;
use crate::spectral::PerronCertificate;

/// `{ "n": int, "w": row-major n*n numbers, "theta": n numbers }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsFile {
    pub n: usize,
    pub w: Vec<f64>,
    pub theta: Vec<f64>,
}

impl ParamsFile {
    pub fn from_parts(w: &SquareMatrix, theta: &[f64]) -> Self {
        Self {
            n: w.dim(),
            w: w.as_slice().to_vec(),
            theta: theta.to_vec(),
        }
    }

    pub fn into_parts(self) -> Result<(SquareMatrix, Vec<f64>)> {
        let w = SquareMatrix::from_row_major(self.n, self.w)?;
        if self.theta.len() != self.n {
            return Err(Error::DimensionMismatch {
                what: "threshold vector",
                expected: self.n,
                got: self.theta.len(),
            });
        }
        Ok((w, self.theta))
    }
}

pub fn read_params(path: &Path) -> Result<(SquareMatrix, Vec<f64>)> {
    let text = fs::read_to_string(path).map_err(|e| at_path(path, &e))?;
    let file: ParamsFile = serde_json::from_str(&text).map_err(|e| at_path(path, &e))?;
    file.into_parts()
}

/// Prefix an error with the file it came from; serde_json errors already
/// carry line and column.
fn at_path(path: &Path, e: &dyn std::fmt::Display) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

pub fn write_params(path: &Path, w: &SquareMatrix, theta: &[f64]) -> Result<()> {
    let text = to_json(&ParamsFile::from_parts(w, theta))?;
    fs::write(path, text)?;
    Ok(())
}

/// `{ "dim": int, "a": row-major dim*dim numbers }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub a: Vec<f64>,
}

impl MatrixFile {
    pub fn from_matrix(a: &SquareMatrix) -> Self {
        Self {
            dim: a.dim(),
            a: a.as_slice().to_vec(),
        }
    }

    pub fn into_matrix(self) -> Result<SquareMatrix> {
        SquareMatrix::from_row_major(self.dim, self.a)
    }
}

pub fn read_matrix(path: &Path) -> Result<SquareMatrix> {
    let text = fs::read_to_string(path).map_err(|e| at_path(path, &e))?;
    let file: MatrixFile = serde_json::from_str(&text).map_err(|e| at_path(path, &e))?;
    file.into_matrix()
}

/// One line of space-separated activation values.
pub fn parse_state_line(line: &str, domain: TwoState) -> Result<NetworkState> {
    let values = parse_numbers(line)?;
    NetworkState::new(values, domain)
}

pub fn read_state(path: &Path, domain: TwoState) -> Result<NetworkState> {
    let text = fs::read_to_string(path).map_err(|e| at_path(path, &e))?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Parse(format!("{}: no state line found", path.display())))?;
    parse_state_line(line, domain)
}

pub fn format_state(state: &NetworkState) -> String {
    state
        .act()
        .iter()
        .map(|a| format!("{a}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One pattern per line, space-separated `+1` / `-1` tokens.
pub fn parse_patterns(text: &str) -> Result<Vec<NetworkState>> {
    let mut patterns = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let values = parse_numbers(line)
            .map_err(|e| Error::Parse(format!("pattern line {}: {e}", lineno + 1)))?;
        let spins = values
            .iter()
            .map(|&v| {
                if v == 1.0 {
                    Ok(1i8)
                } else if v == -1.0 {
                    Ok(-1i8)
                } else {
                    Err(Error::Parse(format!(
                        "pattern line {}: token {v} is not +1/-1",
                        lineno + 1
                    )))
                }
            })
            .collect::<Result<Vec<i8>>>()?;
        patterns.push(NetworkState::from_spins(&spins)?);
    }
    if patterns.is_empty() {
        return Err(Error::Parse("no patterns found".into()));
    }
    Ok(patterns)
}

pub fn read_patterns(path: &Path) -> Result<Vec<NetworkState>> {
    let text = fs::read_to_string(path).map_err(|e| at_path(path, &e))?;
    parse_patterns(&text).map_err(|e| at_path(path, &e))
}

fn parse_numbers(line: &str) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {tok:?}")))
        })
        .collect()
}

/// `{ "steps": .., "full_cycles": .., "final": [..], "energy": [..], "pluses": [..] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceReportFile {
    pub steps: u64,
    pub full_cycles: u64,
    #[serde(rename = "final")]
    pub final_state: Vec<f64>,
    pub energy: Vec<f64>,
    pub pluses: Vec<usize>,
}

impl From<&ConvergenceReport> for ConvergenceReportFile {
    fn from(r: &ConvergenceReport) -> Self {
        Self {
            steps: r.steps,
            full_cycles: r.full_cycles,
            final_state: r.final_state.act().to_vec(),
            energy: r.energy_trace.clone(),
            pluses: r.pluses_trace.clone(),
        }
    }
}

/// `{ "root": .., "lower": .., "upper": .., "residual": .., "v": [..] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub root: f64,
    pub lower: f64,
    pub upper: f64,
    pub residual: f64,
    pub v: Vec<f64>,
}

impl From<&PerronCertificate> for CertificateFile {
    fn from(c: &PerronCertificate) -> Self {
        Self {
            root: c.root,
            lower: c.lower,
            upper: c.upper,
            residual: c.residual,
            v: c.vector.as_slice().to_vec(),
        }
    }
}

/// `{ "c": partition constant, "pi": [..], "encoding": .. }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoltzmannExactFile {
    pub c: f64,
    pub pi: Vec<f64>,
    /// How state indices map to spin vectors.
    pub encoding: String,
}

/// The frozen index convention, stamped into distribution dumps.
pub const STATE_ENCODING: &str = "little-endian: bit i of the index is 1 iff act_i = +1";

impl From<&BoltzmannExact> for BoltzmannExactFile {
    fn from(e: &BoltzmannExact) -> Self {
        Self {
            c: e.partition,
            pi: e.pi.as_slice().to_vec(),
            encoding: STATE_ENCODING.to_string(),
        }
    }
}

/// Pretty JSON with a trailing newline; field order is struct order, so
/// output is byte-stable across runs.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_roundtrip() {
        let w = SquareMatrix::from_rows(&[vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        let theta = vec![0.5, -0.5];
        let file = ParamsFile::from_parts(&w, &theta);
        let json = to_json(&file).unwrap();
        let back: ParamsFile = serde_json::from_str(&json).unwrap();
        let (w2, theta2) = back.into_parts().unwrap();
        assert_eq!(w, w2);
        assert_eq!(theta, theta2);
    }

    #[test]
    fn params_dimension_mismatch() {
        let file = ParamsFile {
            n: 2,
            w: vec![0.0; 4],
            theta: vec![0.0; 3],
        };
        assert!(file.into_parts().is_err());
    }

    #[test]
    fn state_lines() {
        let s = parse_state_line("1 0 0", TwoState::binary()).unwrap();
        assert_eq!(s.act(), &[1.0, 0.0, 0.0]);
        assert!(parse_state_line("1 2 0", TwoState::binary()).is_err());
        let spin = parse_state_line("-1 1 -1 1", TwoState::spin()).unwrap();
        assert_eq!(format_state(&spin), "-1 1 -1 1");
    }

    #[test]
    fn pattern_files_accept_signs_and_comments() {
        let text = "# stored patterns\n+1 +1 -1 -1\n\n-1 +1 -1 +1\n";
        let ps = parse_patterns(text).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].act(), &[1.0, 1.0, -1.0, -1.0]);
        assert_eq!(ps[1].act(), &[-1.0, 1.0, -1.0, 1.0]);
        assert!(parse_patterns("1 0 1\n").is_err());
        assert!(parse_patterns("\n").is_err());
    }

    #[test]
    fn json_is_byte_stable() {
        let file = MatrixFile {
            dim: 2,
            a: vec![0.25, 0.75, 0.75, 0.25],
        };
        assert_eq!(to_json(&file).unwrap(), to_json(&file).unwrap());
    }
}
