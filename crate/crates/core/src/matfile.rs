//! Versioned JSON container for a `GenMatrixSet`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qarith::C64;
use crate::rep::{BasisLabel, CMat, GenMatrixSet, Generator, Meta};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub format_version: u32,
    pub meta: Meta,
    pub basis: Vec<BasisLabel>,
    /// Generator name to rows of [re, im] pairs.
    pub matrices: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

impl MatrixFile {
    pub fn from_set(set: &GenMatrixSet) -> Self {
        let matrices = set
            .matrices
            .iter()
            .map(|(g, m)| {
                let rows = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
                (g.name().to_string(), rows)
            })
            .collect();
        MatrixFile { format_version: FORMAT_VERSION, meta: set.meta.clone(), basis: set.basis.clone(), matrices }
    }

    pub fn to_set(&self) -> Result<GenMatrixSet> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::MatrixFile(format!("unsupported format version {}", self.format_version)));
        }
        let n = self.basis.len();
        let mut set = GenMatrixSet::new(self.basis.clone(), self.meta.clone());
        for (name, rows) in &self.matrices {
            let g: Generator = name.parse()?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::MatrixFile(format!("{name} is not {n}x{n}")));
            }
            let m = CMat::from_fn(n, n, |i, j| C64::new(rows[i][j][0], rows[i][j][1]));
            set.insert(g, m)?;
        }
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix file serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MatrixFile(e.to_string()))
    }
}
