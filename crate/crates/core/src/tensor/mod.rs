//! Pointwise tensor algebra: bundle-valued symmetric forms and
//! curvature-like 4-tensors on an n-dimensional inner product space.
//!
//! Indices are 0-based throughout the API; bundle slot `r` stands for the
//! (r+1)-th member of an orthonormal frame of the bundle fibre.

mod curvature;
mod form;

pub use curvature::{CurvatureLikeTensor, SymmetryReport};
pub use form::BundleValuedForm;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Largest tangent dimension accepted.
pub const MAX_TANGENT_DIM: usize = 16;
/// Largest bundle dimension accepted.
pub const MAX_BUNDLE_DIM: usize = 32;

/// Tangent dimension `n` and bundle (fibre) dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dimensions {
    n: usize,
    bundle: usize,
}

impl Dimensions {
    pub fn new(n: usize, bundle: usize) -> Result<Self> {
        if n == 0 || bundle == 0 || n > MAX_TANGENT_DIM || bundle > MAX_BUNDLE_DIM {
            return Err(Error::InvalidDimensions { n, bundle });
        }
        Ok(Self { n, bundle })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bundle(&self) -> usize {
        self.bundle
    }
}

/// A tangent vector of Euclidean length one (within 1e-12).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitVector(Vec<f64>);

impl UnitVector {
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let norm = linalg::norm(&coords);
        if (norm - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(coords))
    }

    /// Rescales a nonzero vector to unit length.
    pub fn normalize(coords: &[f64]) -> Result<Self> {
        let norm = linalg::norm(coords);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(linalg::scale(coords, 1.0 / norm)))
    }

    /// The canonical basis vector `e_i` of R^n.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Flips the sign so that the largest-magnitude coordinate is positive
    /// (the first one wins ties).
    pub fn canonical_sign(mut self) -> Self {
        let mut lead = 0;
        for (k, x) in self.0.iter().enumerate() {
            if x.abs() > self.0[lead].abs() {
                lead = k;
            }
        }
        if self.0.get(lead).is_some_and(|x| *x < 0.0) {
            for x in &mut self.0 {
                *x = -*x;
            }
        }
        self
    }
}

impl AsRef<[f64]> for UnitVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_guards() {
        assert!(Dimensions::new(0, 1).is_err());
        assert!(Dimensions::new(1, 0).is_err());
        assert!(Dimensions::new(17, 2).is_err());
        assert!(Dimensions::new(2, 33).is_err());
        assert!(Dimensions::new(16, 32).is_ok());
    }

    #[test]
    fn unit_vector_checks_norm() {
        assert!(UnitVector::new(vec![1.0, 0.0]).is_ok());
        assert!(matches!(UnitVector::new(vec![1.0, 1.0]), Err(Error::NotUnit { .. })));
        let v = UnitVector::normalize(&[3.0, 4.0]).unwrap();
        assert!((v.as_slice()[0] - 0.6).abs() < 1e-15);
        assert!(UnitVector::normalize(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn canonical_sign_makes_lead_positive() {
        let v = UnitVector::normalize(&[0.1, -0.9, 0.2]).unwrap().canonical_sign();
        assert!(v.as_slice()[1] > 0.0);
    }
}
