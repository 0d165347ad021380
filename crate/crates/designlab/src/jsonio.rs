//! JSON wire formats for matrices and spectra.
//!
//! Complex matrices are serialized row-major as `[re, im]` pairs:
//!
//! ```json
//! { "rows": 2, "cols": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]] }
//! ```

use crate::entropy::Spectrum;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JsonIoError {
    #[error("entry count {entries} does not match rows x cols = {expected}")]
    ShapeMismatch { entries: usize, expected: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &DMatrix<Complex64>) -> Self {
        let mut entries = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>, JsonIoError> {
        if self.entries.len() != self.rows * self.cols {
            return Err(JsonIoError::ShapeMismatch {
                entries: self.entries.len(),
                expected: self.rows * self.cols,
            });
        }
        Ok(DMatrix::from_fn(self.rows, self.cols, |i, j| {
            let [re, im] = self.entries[i * self.cols + j];
            Complex64::new(re, im)
        }))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpectrumJson {
    pub values: Vec<f64>,
}

impl SpectrumJson {
    pub fn from_spectrum(s: &Spectrum) -> Self {
        SpectrumJson {
            values: s.values().to_vec(),
        }
    }
}
