use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Time-stamped norm values with a descriptor such as `L2`, `Hdot:s=1`, `L6`, `Linf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormSeries {
    label: String,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl NormSeries {
    pub fn new(label: impl Into<String>) -> Self {
        Self { label: label.into(), times: Vec::new(), values: Vec::new() }
    }

    pub fn from_parts(label: impl Into<String>, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let mut s = Self::new(label);
        if times.len() != values.len() {
            return Err(invalid("times and values differ in length"));
        }
        for (t, v) in times.into_iter().zip(values) {
            s.push(t, v)?;
        }
        Ok(s)
    }

    /// Appends a sample; times must be positive and strictly increasing.
    pub fn push(&mut self, t: f64, value: f64) -> Result<()> {
        if !(t > 0.0) {
            return Err(invalid(format!("series times must be positive (got {t})")));
        }
        if let Some(&last) = self.times.last() {
            if t <= last {
                return Err(invalid(format!("series times must increase ({t} after {last})")));
            }
        }
        if !(value >= 0.0) {
            return Err(invalid(format!("norm values must be non-negative (got {value})")));
        }
        self.times.push(t);
        self.values.push(value);
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Samples with `t_min <= t <= t_max`.
    pub fn window(&self, t_min: f64, t_max: f64) -> NormSeries {
        let (times, values) = self
            .times
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t >= t_min && **t <= t_max)
            .map(|(t, v)| (*t, *v))
            .unzip();
        NormSeries { label: self.label.clone(), times, values }
    }

    /// Multiplies each value by `weight(t)`.
    pub fn weighted(&self, label: impl Into<String>, weight: impl Fn(f64) -> f64) -> NormSeries {
        NormSeries {
            label: label.into(),
            times: self.times.clone(),
            values: self.times.iter().zip(&self.values).map(|(t, v)| v * weight(*t)).collect(),
        }
    }
}

/// Writes series as CSV with columns `t,label,value`.
pub fn write_series_csv<W: Write>(mut out: W, series: &[NormSeries]) -> Result<()> {
    writeln!(out, "t,label,value")?;
    for s in series {
        for (t, v) in s.times.iter().zip(&s.values) {
            writeln!(out, "{t},{},{v}", s.label)?;
        }
    }
    Ok(())
}

/// Reads `t,label,value` CSV, grouping rows by label in order of first appearance.
pub fn read_series_csv<R: BufRead>(input: R) -> Result<Vec<NormSeries>> {
    let mut out: Vec<NormSeries> = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.starts_with('t')) {
            continue;
        }
        let mut parts = line.splitn(3, ',');
        let (t, label, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(t), Some(l), Some(v)) => (t, l, v),
            _ => return Err(Error::Format(format!("line {}: expected t,label,value", lineno + 1))),
        };
        let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Format(format!("line {}: {e}", lineno + 1)));
        let (t, v) = (parse(t)?, parse(v)?);
        match out.iter_mut().find(|s| s.label == label) {
            Some(s) => s.push(t, v)?,
            None => {
                let mut s = NormSeries::new(label);
                s.push(t, v)?;
                out.push(s);
            }
        }
    }
    Ok(out)
}
