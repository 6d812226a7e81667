//! JSON input formats shared by the CLI and the C bindings.
//!
//! Configs arrive as `{"r": 2, "pmfs": [[0.5, 0.0, 0.5], ...]}` and bare
//! coefficient sequences as `{"coeffs": [...], "order": m}` (`order`
//! optional). Entries are JSON numbers or strings; the rational backend
//! parses strings exactly (`"1/3"`, `"0.15"`) and embeds numbers as their
//! exact IEEE values.

use crate::dist::{CoeffSeq, FinitePmf, SumConfig};
use crate::error::{Error, Result};
use crate::scalar::{rat_from_str, Scalar};
use serde::Deserialize;

/// A pmf entry before backend resolution.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RawValue {
    Number(f64),
    Literal(String),
}

impl RawValue {
    pub fn resolve<T: Scalar>(&self) -> Result<T> {
        match self {
            RawValue::Number(x) => {
                if !x.is_finite() {
                    return Err(Error::parse(format!("non-finite entry {x}")));
                }
                Ok(T::from_f64(*x))
            }
            RawValue::Literal(s) => Ok(T::from_rational(&rat_from_str(s)?)),
        }
    }
}

/// `{"r": ..., "pmfs": [[...], ...]}`
#[derive(Debug, Clone, Deserialize)]
pub struct RawConfig {
    pub r: usize,
    pub pmfs: Vec<Vec<RawValue>>,
}

/// `{"coeffs": [...], "order": m}`
#[derive(Debug, Clone, Deserialize)]
pub struct RawSequence {
    pub coeffs: Vec<RawValue>,
    #[serde(default)]
    pub order: Option<usize>,
}

/// Either input shape, distinguished by its fields.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RawInput {
    Config(RawConfig),
    Sequence(RawSequence),
}

pub fn parse_config_json(text: &str) -> Result<RawConfig> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(format!(
            "config JSON (line {}, column {}): {e}",
            e.line(),
            e.column()
        ))
    })
}

pub fn parse_input_json(text: &str) -> Result<RawInput> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(format!(
            "input JSON (line {}, column {}): expected {{\"r\", \"pmfs\"}} or {{\"coeffs\"}}: {e}",
            e.line(),
            e.column()
        ))
    })
}

impl RawConfig {
    pub fn resolve<T: Scalar>(&self) -> Result<SumConfig<T>> {
        let pmfs = self
            .pmfs
            .iter()
            .enumerate()
            .map(|(i, entries)| {
                if entries.len() != self.r + 1 {
                    return Err(Error::parse(format!(
                        "pmf {i} has {} entries, expected r + 1 = {}",
                        entries.len(),
                        self.r + 1
                    )));
                }
                let probs = entries
                    .iter()
                    .map(RawValue::resolve::<T>)
                    .collect::<Result<Vec<T>>>()?;
                FinitePmf::new(probs)
            })
            .collect::<Result<Vec<_>>>()?;
        SumConfig::new(pmfs)
    }
}

impl RawSequence {
    pub fn resolve<T: Scalar>(&self) -> Result<CoeffSeq<T>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(RawValue::resolve::<T>)
            .collect::<Result<Vec<T>>>()?;
        match self.order {
            Some(m) => CoeffSeq::new(coeffs, m),
            None => CoeffSeq::from_coeffs(coeffs),
        }
    }
}
