//! JSON instance files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 2,
//!   "bundle_dim": 2,
//!   "zeta": [[[3.0, 0.0], [0.0, 1.0]], [[0.0, 1.0], [1.0, 0.0]]],
//!   "ambient": {"kind": "complex_lagrangian", "c": 0.0},
//!   "structure": {"kind": "slant", "theta": 1.5707963267948966}
//! }
//! ```
//!
//! `zeta[r][i][j]` is indexed by bundle slot, then the two tangent slots.
//! `ambient` and `structure` are optional. Numbers are written in the
//! shortest form that parses back to the identical double.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ambient::AmbientModel;
use crate::error::Error;
use crate::structures::SlantStructure;
use crate::tensor::{BundleValuedForm, Dimensions};

pub const FORMAT_VERSION: u32 = 1;
/// Largest accepted `|zeta[r][i][j] − zeta[r][j][i]|`.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid field `{field}`: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> InstanceError {
    InstanceError::Validation {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StructureModel {
    Slant { theta: f64 },
    CTotallyReal,
}

/// On-disk layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub n: usize,
    pub bundle_dim: usize,
    pub zeta: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureModel>,
}

/// A validated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub zeta: BundleValuedForm,
    pub ambient: Option<AmbientModel>,
    pub structure: Option<StructureModel>,
}

impl Instance {
    pub fn new(zeta: BundleValuedForm) -> Self {
        Self {
            zeta,
            ambient: None,
            structure: None,
        }
    }

    pub fn with_ambient(mut self, ambient: AmbientModel) -> Self {
        self.ambient = Some(ambient);
        self
    }

    pub fn with_structure(mut self, structure: StructureModel) -> Self {
        self.structure = Some(structure);
        self
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            version: FORMAT_VERSION,
            n: self.zeta.n(),
            bundle_dim: self.zeta.bundle_dim(),
            zeta: self.zeta.to_nested(),
            ambient: self.ambient,
            structure: self.structure,
        }
    }

    pub fn from_file(file: &InstanceFile) -> Result<Self, InstanceError> {
        if file.version != FORMAT_VERSION {
            return Err(invalid(
                "version",
                format!("unsupported version {}, expected {FORMAT_VERSION}", file.version),
            ));
        }
        let dims = Dimensions::new(file.n, file.bundle_dim).map_err(|e| invalid("n/bundle_dim", e.to_string()))?;
        let (n, m) = (dims.n(), dims.bundle());
        if file.zeta.len() != m {
            return Err(invalid(
                "zeta",
                format!("expected {m} bundle slots, found {}", file.zeta.len()),
            ));
        }
        for (r, slot) in file.zeta.iter().enumerate() {
            if slot.len() != n {
                return Err(invalid(
                    format!("zeta[{r}]"),
                    format!("expected {n} rows, found {}", slot.len()),
                ));
            }
            for (i, row) in slot.iter().enumerate() {
                if row.len() != n {
                    return Err(invalid(
                        format!("zeta[{r}][{i}]"),
                        format!("expected {n} entries, found {}", row.len()),
                    ));
                }
                if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                    return Err(invalid(format!("zeta[{r}][{i}][{j}]"), "entry must be finite"));
                }
            }
        }
        let zeta = BundleValuedForm::from_nested(&file.zeta, SYMMETRY_TOL).map_err(|e| match e {
            Error::AsymmetricForm { r, i, j, upper, lower } => invalid(
                format!("zeta[{r}][{i}][{j}]"),
                format!("zeta[{r}][{i}][{j}] = {upper} differs from zeta[{r}][{j}][{i}] = {lower}"),
            ),
            other => invalid("zeta", other.to_string()),
        })?;
        if let Some(ambient) = &file.ambient {
            ambient.validate().map_err(|e| invalid("ambient", e.to_string()))?;
            if n < 2 {
                return Err(invalid("ambient", "ambient models need n >= 2"));
            }
        }
        match file.structure {
            Some(StructureModel::Slant { theta }) => {
                SlantStructure::build(n, theta).map_err(|e| invalid("structure.theta", e.to_string()))?;
            }
            Some(StructureModel::CTotallyReal) if m <= n => {
                return Err(invalid(
                    "structure",
                    "c_totally_real needs bundle_dim > n for the characteristic slot",
                ));
            }
            _ => {}
        }
        Ok(Self {
            zeta,
            ambient: file.ambient,
            structure: file.structure,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| InstanceError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("instance serializes");
        s.push('\n');
        s
    }

    /// SHA-256 of the compact canonical serialization, hex encoded.
    pub fn sha256(&self) -> String {
        let canonical = serde_json::to_vec(&self.to_file()).expect("instance serializes");
        hex::encode(Sha256::digest(&canonical))
    }
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, InstanceError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| InstanceError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Instance::from_json(&text)
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<(), InstanceError> {
    let path = path.as_ref();
    fs::write(path, instance.to_json()).map_err(|e| InstanceError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
