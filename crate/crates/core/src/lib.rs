//! Curvature-like tensors built from bundle-valued symmetric forms, the
//! Chen-Ricci inequality and its improved form, and exact equality
//! configurations for submanifolds of real, complex and Sasakian space forms.
//!
//! ```
//! use curvlike::gauss::{check_bound, BoundMode, EqualityClass};
//! use curvlike::structures::{construct_family, FamilyParams};
//!
//! let zeta = construct_family(&FamilyParams::HUmbilical { n: 2, lambda: 3.0, mu: 1.0 }).unwrap();
//! let report = check_bound(&zeta, BoundMode::Improved, 1e-9).unwrap();
//! assert_eq!(report.gap, 0.0);
//! assert!(matches!(report.equality_class, EqualityClass::HUmbilicalSurface { .. }));
//! ```

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod ambient;
pub mod cli;
pub mod error;
pub mod gauss;
pub mod instance;
pub mod linalg;
pub mod optim;
pub mod report;
pub mod sampling;
pub mod structures;
pub mod tensor;

pub use error::{Error, Result};

/// Environment variable overriding [`gauss::DEFAULT_TOL`].
pub const TOL_ENV: &str = "CURVLIKE_TOL";

/// The working tolerance: `CURVLIKE_TOL` when set, otherwise `1e-9`.
/// A value that is not a positive finite number is an error.
pub fn default_tolerance() -> Result<f64> {
    match std::env::var(TOL_ENV) {
        Ok(raw) => parse_tolerance(&raw),
        Err(_) => Ok(gauss::DEFAULT_TOL),
    }
}

pub fn parse_tolerance(raw: &str) -> Result<f64> {
    match raw.trim().parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(Error::InvalidParams(format!(
            "{TOL_ENV} must be a positive number, got {raw:?}"
        ))),
    }
}
