//! Structure models on the tangent space and constructors for the named
//! second-fundamental-form families.
//!
//! The families are written in an adapted orthonormal normal frame whose
//! slot `i` is `J e_i` (Lagrangian), `csc θ · F e_i` (slant) or `φ e_i`
//! (C-totally real). All of them share one component pattern.

use serde::{Deserialize, Serialize};

use crate::ambient::{check_theta, cos_sq};
use crate::error::{Error, Result};
use crate::gauss::is_totally_symmetric;
use crate::linalg::Matrix;
use crate::tensor::{BundleValuedForm, Dimensions};

/// Tangential part `P` of the complex structure for a slant angle θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlantStructure {
    n: usize,
    theta: f64,
    p: Matrix,
    /// Gram matrix of `F e_i`, i.e. `I − PᵀP`.
    f_gram: Matrix,
}

/// Largest violation of each slant identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlantResiduals {
    /// `Pᵀ + P`
    pub skew: f64,
    /// `P² + cos²θ I`
    pub square: f64,
    /// `PᵀP − cos²θ I`
    pub p_gram: f64,
    /// `FᵀF − sin²θ I`
    pub f_gram: f64,
    /// `csc²θ FᵀF − I`, orthonormality of the adapted normal frame.
    pub adapted_frame: f64,
}

impl SlantResiduals {
    pub fn max(&self) -> f64 {
        [self.skew, self.square, self.p_gram, self.f_gram, self.adapted_frame]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

impl SlantStructure {
    /// Canonical block model `P e_{2i−1} = cos θ e_{2i}`, `P e_{2i} = −cos θ e_{2i−1}`.
    /// Odd `n` is accepted only for `θ = π/2`, where `P = 0`.
    pub fn build(n: usize, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "slant structures need n >= 1",
            });
        }
        let cos2 = cos_sq(theta);
        if n % 2 == 1 && cos2 != 0.0 {
            return Err(Error::OddDimension { n });
        }
        let cos = cos2.sqrt();
        let mut p = Matrix::zeros(n, n);
        if cos2 != 0.0 {
            for b in 0..n / 2 {
                let (a, a2) = (2 * b, 2 * b + 1);
                // columns are images of basis vectors
                p[(a2, a)] = cos;
                p[(a, a2)] = -cos;
            }
        }
        let ptp = p.transpose().matmul(&p)?;
        let f_gram = Matrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - ptp[(i, j)]);
        Ok(Self { n, theta, p, f_gram })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn f_gram(&self) -> &Matrix {
        &self.f_gram
    }

    pub fn is_lagrangian(&self) -> bool {
        cos_sq(self.theta) == 0.0
    }

    pub fn residuals(&self) -> SlantResiduals {
        let n = self.n;
        let cos2 = cos_sq(self.theta);
        let sin2 = 1.0 - cos2;
        let id = Matrix::identity(n);
        let p = &self.p;
        let pt = p.transpose();
        let skew = Matrix::from_fn(n, n, |i, j| pt[(i, j)] + p[(i, j)]).max_abs();
        let square = p.matmul(p).expect("square").max_abs_diff(&id.scaled(-cos2));
        let p_gram = pt.matmul(p).expect("square").max_abs_diff(&id.scaled(cos2));
        let f_gram = self.f_gram.max_abs_diff(&id.scaled(sin2));
        let adapted_frame = self.f_gram.scaled(1.0 / sin2).max_abs_diff(&id);
        SlantResiduals {
            skew,
            square,
            p_gram,
            f_gram,
            adapted_frame,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    HUmbilical,
    Slumbilical,
    HSlumbilical,
    HUmbilicalCTotallyReal,
    TotallyUmbilical,
    TotallyGeodesic,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::HUmbilical,
        Family::Slumbilical,
        Family::HSlumbilical,
        Family::HUmbilicalCTotallyReal,
        Family::TotallyUmbilical,
        Family::TotallyGeodesic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::HUmbilical => "h-umbilical",
            Family::Slumbilical => "slumbilical",
            Family::HSlumbilical => "h-slumbilical",
            Family::HUmbilicalCTotallyReal => "h-umbilical-c-totally-real",
            Family::TotallyUmbilical => "totally-umbilical",
            Family::TotallyGeodesic => "totally-geodesic",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Parameters for [`construct_family`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyParams {
    HUmbilical { n: usize, lambda: f64, mu: f64 },
    Slumbilical { n: usize, lambda: f64, theta: f64 },
    HSlumbilical { n: usize, lambda: f64, mu: f64, theta: f64 },
    HUmbilicalCTotallyReal { n: usize, lambda: f64, mu: f64 },
    TotallyUmbilical { n: usize, h0: Vec<f64> },
    TotallyGeodesic { n: usize, bundle_dim: usize },
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::HUmbilical { .. } => Family::HUmbilical,
            FamilyParams::Slumbilical { .. } => Family::Slumbilical,
            FamilyParams::HSlumbilical { .. } => Family::HSlumbilical,
            FamilyParams::HUmbilicalCTotallyReal { .. } => Family::HUmbilicalCTotallyReal,
            FamilyParams::TotallyUmbilical { .. } => Family::TotallyUmbilical,
            FamilyParams::TotallyGeodesic { .. } => Family::TotallyGeodesic,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilyParams::HUmbilical { n, .. }
            | FamilyParams::Slumbilical { n, .. }
            | FamilyParams::HSlumbilical { n, .. }
            | FamilyParams::HUmbilicalCTotallyReal { n, .. }
            | FamilyParams::TotallyUmbilical { n, .. }
            | FamilyParams::TotallyGeodesic { n, .. } => n,
        }
    }

    /// Slant angle carried by the slant families.
    pub fn theta(&self) -> Option<f64> {
        match *self {
            FamilyParams::Slumbilical { theta, .. } | FamilyParams::HSlumbilical { theta, .. } => Some(theta),
            _ => None,
        }
    }
}

fn finite(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParams(format!("{name} must be finite, got {value}")));
    }
    Ok(())
}

/// `ζ[0][0][0] = λ`, `ζ[0][j][j] = μ`, `ζ[j][0][j] = μ` for `j ≥ 1`.
fn adapted_pattern(dims: Dimensions, lambda: f64, mu: f64) -> BundleValuedForm {
    BundleValuedForm::from_fn(dims, |r, i, j| match (r, i, j) {
        (0, 0, 0) => lambda,
        (0, i, j) if i == j => mu,
        (r, 0, j) if r > 0 && r == j => mu,
        _ => 0.0,
    })
}

pub fn construct_family(params: &FamilyParams) -> Result<BundleValuedForm> {
    let n = params.n();
    if let Some(theta) = params.theta() {
        check_theta(theta)?;
        SlantStructure::build(n, theta)?;
    }
    let square = |n| Dimensions::new(n, n);
    match params {
        FamilyParams::HUmbilical { lambda, mu, .. } | FamilyParams::HSlumbilical { lambda, mu, .. } => {
            finite("lambda", *lambda)?;
            finite("mu", *mu)?;
            Ok(adapted_pattern(square(n)?, *lambda, *mu))
        }
        FamilyParams::Slumbilical { lambda, .. } => {
            finite("lambda", *lambda)?;
            Ok(adapted_pattern(square(n)?, *lambda, *lambda))
        }
        FamilyParams::HUmbilicalCTotallyReal { lambda, mu, .. } => {
            finite("lambda", *lambda)?;
            finite("mu", *mu)?;
            Ok(adapted_pattern(Dimensions::new(n, n + 1)?, *lambda, *mu))
        }
        FamilyParams::TotallyUmbilical { h0, .. } => {
            if h0.is_empty() {
                return Err(Error::InvalidParams("h0 must have at least one component".into()));
            }
            for x in h0 {
                finite("h0", *x)?;
            }
            let dims = Dimensions::new(n, h0.len())?;
            Ok(BundleValuedForm::from_fn(
                dims,
                |r, i, j| if i == j { h0[r] } else { 0.0 },
            ))
        }
        FamilyParams::TotallyGeodesic { bundle_dim, .. } => {
            Ok(BundleValuedForm::zeros(Dimensions::new(n, *bundle_dim)?))
        }
    }
}

/// Cubic symmetry `A_{FX}Y = A_{FY}X` for a form whose bundle is exactly
/// the adapted normal frame.
pub fn lagrangian_symmetry_check(zeta: &BundleValuedForm, tol: f64) -> Result<bool> {
    if zeta.bundle_dim() != zeta.n() {
        return Err(Error::BundleDimensionMismatch {
            expected: zeta.n(),
            found: zeta.bundle_dim(),
        });
    }
    Ok(is_totally_symmetric(zeta, tol)?.holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RigidityVerdict {
    /// Total symmetry forces `H0 = 0`: the umbilical point is geodesic.
    ForcedGeodesic,
    Dimension1,
    /// A nonzero umbilical form passed the symmetry check.
    SymmetricNonzero,
}

/// Threshold below which `‖H0‖` counts as zero.
pub const RIGIDITY_ZERO_TOL: f64 = 1e-12;

/// Tests whether a totally umbilical form `ζ = g ⊗ H0` can satisfy the
/// cubic symmetry without vanishing.
pub fn umbilical_rigidity_witness(n: usize, h0: &[f64]) -> Result<RigidityVerdict> {
    if n == 0 {
        return Err(Error::InvalidDimension {
            n,
            reason: "tangent dimension must be >= 1",
        });
    }
    if n == 1 {
        return Ok(RigidityVerdict::Dimension1);
    }
    // the symmetry check needs the bundle to contain the adapted frame
    let mut h = h0.to_vec();
    if h.len() < n {
        h.resize(n, 0.0);
    }
    let zeta = construct_family(&FamilyParams::TotallyUmbilical { n, h0: h.clone() })?;
    let symmetric = is_totally_symmetric(&zeta, RIGIDITY_ZERO_TOL)?.holds;
    let zero = h.iter().all(|x| x.abs() <= RIGIDITY_ZERO_TOL);
    Ok(if symmetric && !zero {
        RigidityVerdict::SymmetricNonzero
    } else {
        RigidityVerdict::ForcedGeodesic
    })
}
