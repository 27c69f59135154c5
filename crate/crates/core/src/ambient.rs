//! Space-form ambients. Each model contributes a constant `Δ` with
//! `Ric(X) = Ric_T(X) + Δ` for every unit tangent `X`, turning the abstract
//! bounds into statements about the intrinsic Ricci curvature.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{chen_ricci_bound, gauss_tensor, improved_bound};
use crate::linalg::Matrix;
use crate::optim::max_ricci;
use crate::tensor::{BundleValuedForm, CurvatureLikeTensor, UnitVector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmbientModel {
    /// Real space form of constant sectional curvature `c`.
    RealSpaceForm { c: f64 },
    /// Lagrangian submanifold of a complex space form of holomorphic curvature `c`.
    ComplexLagrangian { c: f64 },
    /// Slant submanifold with angle `theta ∈ (0, π/2]` of a complex space form.
    ComplexSlant { c: f64, theta: f64 },
    /// C-totally real submanifold of a Sasakian space form of φ-sectional curvature `c`.
    SasakianCTotallyReal { c: f64 },
}

/// `cos²θ`, snapped to zero at `θ = π/2` so slant quantities collapse
/// exactly onto the Lagrangian ones.
pub fn cos_sq(theta: f64) -> f64 {
    if theta == FRAC_PI_2 {
        0.0
    } else {
        let c = theta.cos();
        c * c
    }
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Error::InvalidAngle { theta });
    }
    Ok(())
}

// The Lagrangian case goes through the slant expressions with cos²θ = 0 so
// the two agree bit for bit.
fn complex_offset(m: f64, c: f64, cos2: f64) -> f64 {
    0.25 * m * c + 0.75 * c * cos2
}

/// `¼((n−1)n‖H‖² + (n−1)c + 3c cos²θ)` with `nh_sq = n‖H‖²`.
fn complex_bound(m: f64, nh_sq: f64, c: f64, cos2: f64) -> f64 {
    0.25 * (m * nh_sq + m * c + 3.0 * c * cos2)
}

impl AmbientModel {
    pub fn c(&self) -> f64 {
        match *self {
            AmbientModel::RealSpaceForm { c }
            | AmbientModel::ComplexLagrangian { c }
            | AmbientModel::ComplexSlant { c, .. }
            | AmbientModel::SasakianCTotallyReal { c } => c,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AmbientModel::RealSpaceForm { .. } => "real_space_form",
            AmbientModel::ComplexLagrangian { .. } => "complex_lagrangian",
            AmbientModel::ComplexSlant { .. } => "complex_slant",
            AmbientModel::SasakianCTotallyReal { .. } => "sasakian_c_totally_real",
        }
    }

    /// Checks finiteness of `c` and the slant angle range.
    pub fn validate(&self) -> Result<()> {
        if !self.c().is_finite() {
            return Err(Error::InvalidParams(format!(
                "curvature parameter must be finite, got {}",
                self.c()
            )));
        }
        if let AmbientModel::ComplexSlant { theta, .. } = *self {
            check_theta(theta)?;
        }
        Ok(())
    }

    /// Whether the model's bound relies on the totally symmetric hypothesis.
    pub fn uses_improved_bound(&self) -> bool {
        !matches!(self, AmbientModel::RealSpaceForm { .. })
    }

    /// The constant `Δ` in `Ric(X) = Ric_T(X) + Δ`.
    pub fn ricci_offset(&self, n: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::InvalidDimension {
                n,
                reason: "ricci offsets need n >= 2",
            });
        }
        self.validate()?;
        let m = (n - 1) as f64;
        Ok(match *self {
            AmbientModel::RealSpaceForm { c } => m * c,
            AmbientModel::ComplexLagrangian { c } => complex_offset(m, c, 0.0),
            AmbientModel::ComplexSlant { c, theta } => complex_offset(m, c, cos_sq(theta)),
            AmbientModel::SasakianCTotallyReal { c } => 0.25 * m * (c + 3.0),
        })
    }

    /// The right-hand side of the model's Ricci inequality, written in terms
    /// of `H = trace ζ / n`.
    pub fn application_bound(&self, zeta: &BundleValuedForm) -> Result<f64> {
        let n = zeta.n();
        if n < 2 {
            return Err(Error::InvalidDimension {
                n,
                reason: "ricci offsets need n >= 2",
            });
        }
        self.validate()?;
        let nf = n as f64;
        let m = nf - 1.0;
        let h_sq = zeta.trace_norm_sq() / (nf * nf);
        Ok(match *self {
            AmbientModel::RealSpaceForm { c } => nf * nf * h_sq / 4.0 + m * c,
            AmbientModel::ComplexLagrangian { c } => complex_bound(m, nf * h_sq, c, 0.0),
            AmbientModel::ComplexSlant { c, theta } => complex_bound(m, nf * h_sq, c, cos_sq(theta)),
            AmbientModel::SasakianCTotallyReal { c } => m / 4.0 * (c + 3.0 + nf * h_sq),
        })
    }

    /// `application_bound − (abstract bound + ricci_offset)`.
    pub fn bound_identity_residual(&self, zeta: &BundleValuedForm) -> Result<f64> {
        let abstract_bound = if self.uses_improved_bound() {
            improved_bound(zeta)
        } else {
            chen_ricci_bound(zeta)
        };
        Ok(self.application_bound(zeta)? - abstract_bound - self.ricci_offset(zeta.n())?)
    }

    /// `Ric(X) = Ric_T(X) + Δ` with `T` the Gauss tensor of ζ.
    pub fn intrinsic_ricci(&self, zeta: &BundleValuedForm, x: &UnitVector) -> Result<f64> {
        Ok(gauss_tensor(zeta).ricci(x)? + self.ricci_offset(zeta.n())?)
    }

    /// Maximum of `Ric(X)` over unit tangent vectors and a maximizing direction.
    pub fn intrinsic_ricci_max(&self, zeta: &BundleValuedForm) -> Result<(f64, UnitVector)> {
        let (value, dir) = max_ricci(&gauss_tensor(zeta).ricci_form()?)?;
        Ok((value + self.ricci_offset(zeta.n())?, dir))
    }

    /// The ambient curvature tensor restricted to the tangent space, in an
    /// orthonormal tangent frame. For the slant model the tangential part of
    /// `J` is the canonical block operator `P` of that angle.
    pub fn tangential_curvature(&self, n: usize) -> Result<CurvatureLikeTensor> {
        self.validate()?;
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        let base = |i: usize, j: usize, k: usize, l: usize| d(i, l) * d(j, k) - d(i, k) * d(j, l);
        Ok(match *self {
            AmbientModel::RealSpaceForm { c } => CurvatureLikeTensor::from_fn(n, |i, j, k, l| c * base(i, j, k, l)),
            AmbientModel::ComplexLagrangian { c } => {
                CurvatureLikeTensor::from_fn(n, |i, j, k, l| 0.25 * c * base(i, j, k, l))
            }
            AmbientModel::SasakianCTotallyReal { c } => {
                CurvatureLikeTensor::from_fn(n, |i, j, k, l| 0.25 * (c + 3.0) * base(i, j, k, l))
            }
            AmbientModel::ComplexSlant { c, theta } => {
                let p = crate::structures::SlantStructure::build(n, theta)?.p().clone();
                // g(P e_a, e_b) = P[b][a]
                let g_p = |a: usize, b: usize| p[(b, a)];
                CurvatureLikeTensor::from_fn(n, |i, j, k, l| {
                    0.25 * c
                        * (base(i, j, k, l) + g_p(i, l) * g_p(j, k) - g_p(i, k) * g_p(j, l)
                            + 2.0 * g_p(j, i) * g_p(k, l))
                })
            }
        })
    }

    /// Largest deviation of the tangential Ricci form from `Δ · g`.
    pub fn offset_residual(&self, n: usize) -> Result<f64> {
        let ricci = self.tangential_curvature(n)?.ricci_form()?;
        Ok(ricci.max_abs_diff(&Matrix::identity(n).scaled(self.ricci_offset(n)?)))
    }
}
