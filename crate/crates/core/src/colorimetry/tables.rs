//! Tabulated spectral data shipped with the crate.

use crate::error::{Error, Result};

const CIE1931_2DEG: &str = include_str!("../../data/cie1931_2deg_5nm.csv");
const D65: &str = include_str!("../../data/cie_d65_5nm.csv");
const HEMOGLOBIN: &str = include_str!("../../data/hemoglobin_extinction_2nm.csv");

/// Columns of values on an increasing wavelength grid, linearly interpolated
/// between rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTable {
    wavelengths: Vec<f64>,
    columns: Vec<Vec<f64>>,
}

impl SpectralTable {
    pub fn new(wavelengths: Vec<f64>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if wavelengths.len() < 2 {
            return Err(Error::InvalidParameter {
                field: "table",
                reason: "need at least two rows".into(),
            });
        }
        if wavelengths.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter {
                field: "table",
                reason: "wavelengths must increase".into(),
            });
        }
        if columns.iter().any(|c| c.len() != wavelengths.len()) {
            return Err(Error::InvalidParameter {
                field: "table",
                reason: "ragged columns".into(),
            });
        }
        Ok(SpectralTable {
            wavelengths,
            columns,
        })
    }

    /// Parses `wavelength,v1,v2,...` lines; `#` starts a comment line.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut wavelengths = Vec::new();
        let mut columns: Vec<Vec<f64>> = Vec::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let values = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<f64>, _>>()
                .map_err(|e| Error::InvalidParameter {
                    field: "table",
                    reason: format!("bad row `{line}`: {e}"),
                })?;
            if columns.is_empty() {
                columns = vec![Vec::new(); values.len().saturating_sub(1)];
            }
            if values.len() != columns.len() + 1 {
                return Err(Error::InvalidParameter {
                    field: "table",
                    reason: format!("row `{line}` has the wrong number of columns"),
                });
            }
            wavelengths.push(values[0]);
            for (col, v) in columns.iter_mut().zip(&values[1..]) {
                col.push(*v);
            }
        }
        Self::new(wavelengths, columns)
    }

    pub fn wavelengths(&self) -> &[f64] {
        &self.wavelengths
    }

    pub fn column(&self, col: usize) -> &[f64] {
        &self.columns[col]
    }

    pub fn columns(&self) -> usize {
        self.columns.len()
    }

    pub fn range(&self) -> (f64, f64) {
        (
            self.wavelengths[0],
            self.wavelengths[self.wavelengths.len() - 1],
        )
    }

    pub fn contains(&self, lambda: f64) -> bool {
        let (lo, hi) = self.range();
        lambda >= lo && lambda <= hi
    }

    /// Interpolated value of column `col`, or `None` outside the table.
    pub fn value_at(&self, col: usize, lambda: f64) -> Option<f64> {
        if !self.contains(lambda) {
            return None;
        }
        let w = &self.wavelengths;
        let hi = w.partition_point(|&g| g < lambda);
        if w[hi] == lambda {
            return Some(self.columns[col][hi]);
        }
        let lo = hi - 1;
        let t = (lambda - w[lo]) / (w[hi] - w[lo]);
        let c = &self.columns[col];
        Some(c[lo] + t * (c[hi] - c[lo]))
    }

    /// Copy with every column divided by `scale`.
    pub fn scaled(&self, scale: f64) -> Self {
        SpectralTable {
            wavelengths: self.wavelengths.clone(),
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|v| v / scale).collect())
                .collect(),
        }
    }
}

/// CIE 1931 2° standard observer (x̄, ȳ, z̄), 360–780 nm at 5 nm.
pub fn cie1931_observer() -> SpectralTable {
    SpectralTable::parse_csv(CIE1931_2DEG).expect("bundled observer table is valid")
}

/// CIE D65 relative spectral power, 360–780 nm at 5 nm.
pub fn d65_illuminant() -> SpectralTable {
    SpectralTable::parse_csv(D65).expect("bundled D65 table is valid")
}

/// Molar extinction of oxy- (column 0) and deoxyhemoglobin (column 1) in
/// cm⁻¹/M, 450–650 nm at 2 nm.
pub fn hemoglobin_extinction() -> SpectralTable {
    SpectralTable::parse_csv(HEMOGLOBIN).expect("bundled hemoglobin table is valid")
}
