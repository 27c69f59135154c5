//! Curvature-like tensors built from a bundle-valued symmetric form through
//! the algebraic Gauss equation
//!
//! ```text
//! T(X,Y,Z,W) = g_B(ζ(X,W), ζ(Y,Z)) − g_B(ζ(X,Z), ζ(Y,W)),
//! ```
//!
//! the two Ricci bounds it satisfies and the classification of their
//! equality configurations.
//!
//! Tolerances passed to this module are applied to unit-scaled quantities:
//! comparisons on ζ use `tol · max(1, max|ζ|)` and comparisons on T or its
//! Ricci form use `tol · max(1, ‖ζ‖²)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::optim::{max_ricci, symmetric_eigen};
use crate::tensor::{BundleValuedForm, CurvatureLikeTensor, UnitVector};

/// Default tolerance for bound and equality decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

pub(crate) fn form_scale(zeta: &BundleValuedForm) -> f64 {
    zeta.max_abs().max(1.0)
}

pub(crate) fn tensor_scale(zeta: &BundleValuedForm) -> f64 {
    zeta.norm_sq().max(1.0)
}

/// `T[i][j][k][l] = Σ_r (ζ[r][i][l] ζ[r][j][k] − ζ[r][i][k] ζ[r][j][l])`.
///
/// Entries come from one Gram matrix of the vectors `ζ(e_i, e_j)`, so both
/// antisymmetries and the pair exchange hold exactly in floating point.
pub fn gauss_tensor(zeta: &BundleValuedForm) -> CurvatureLikeTensor {
    let n = zeta.n();
    let values: Vec<Vec<f64>> = (0..n * n).map(|p| zeta.value(p / n, p % n)).collect();
    let gram = Matrix::from_fn(n * n, n * n, |p, q| {
        if p <= q {
            linalg::dot(&values[p], &values[q])
        } else {
            linalg::dot(&values[q], &values[p])
        }
    });
    let pair = |a: usize, b: usize| a * n + b;
    CurvatureLikeTensor::from_fn(n, |i, j, k, l| {
        gram[(pair(i, l), pair(j, k))] - gram[(pair(i, k), pair(j, l))]
    })
}

/// Largest `|T − Gauss(ζ)|` over all index quadruples.
pub fn verify_gauss(tensor: &CurvatureLikeTensor, zeta: &BundleValuedForm) -> Result<f64> {
    if tensor.n() != zeta.n() {
        return Err(Error::DimensionMismatch {
            expected: zeta.n(),
            found: tensor.n(),
        });
    }
    let reference = gauss_tensor(zeta);
    Ok(tensor
        .components()
        .iter()
        .zip(reference.components())
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())))
}

/// `¼ ‖trace ζ‖²`, valid for every ζ.
pub fn chen_ricci_bound(zeta: &BundleValuedForm) -> f64 {
    0.25 * zeta.trace_norm_sq()
}

/// `(n−1)/(4n) ‖trace ζ‖²`, valid when ζ is totally symmetric.
pub fn improved_bound(zeta: &BundleValuedForm) -> f64 {
    let n = zeta.n() as f64;
    (n - 1.0) / (4.0 * n) * zeta.trace_norm_sq()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TotalSymmetry {
    pub holds: bool,
    pub residual: f64,
}

/// Checks that the first `n` bundle slots carry a totally symmetric cubic
/// form `C[a][b][c] = ζ[a][b][c]` and that every further slot vanishes.
pub fn is_totally_symmetric(zeta: &BundleValuedForm, tol: f64) -> Result<TotalSymmetry> {
    let (n, m) = (zeta.n(), zeta.bundle_dim());
    if m < n {
        return Err(Error::BundleTooSmall { n, bundle: m });
    }
    let mut residual = 0.0_f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = zeta.get(a, b, c);
                for w in [zeta.get(b, a, c), zeta.get(c, b, a), zeta.get(a, c, b)] {
                    residual = residual.max((v - w).abs());
                }
            }
        }
    }
    for r in n..m {
        for i in 0..n {
            for j in i..n {
                residual = residual.max(zeta.get(r, i, j).abs());
            }
        }
    }
    Ok(TotalSymmetry {
        holds: residual <= tol * form_scale(zeta),
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// `Ric_T(X) ≤ ¼‖trace ζ‖²`, no hypothesis.
    General,
    /// `Ric_T(X) ≤ (n−1)/(4n)‖trace ζ‖²` for totally symmetric ζ.
    Improved,
}

impl BoundMode {
    pub fn bound(self, zeta: &BundleValuedForm) -> f64 {
        match self {
            BoundMode::General => chen_ricci_bound(zeta),
            BoundMode::Improved => improved_bound(zeta),
        }
    }
}

/// Which configuration realizes equality for every unit direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum EqualityClass {
    ZeroForm,
    /// n = 2 with `ζ(e₁,e₁) = ζ(e₂,e₂) = h` and `ζ(e₁,e₂) = 0`.
    UmbilicalSurface {
        mean_curvature: Vec<f64>,
    },
    /// n = 2 with `ζ(e₁,e₁) = 3μu`, `ζ(e₂,e₂) = μu`, `ζ(e₁,e₂) = μu⊥`.
    HUmbilicalSurface {
        mu: f64,
        tangent_frame: [Vec<f64>; 2],
        normal_frame: [Vec<f64>; 2],
    },
    NoEquality,
}

impl EqualityClass {
    pub fn tag(&self) -> &'static str {
        match self {
            EqualityClass::ZeroForm => "ZeroForm",
            EqualityClass::UmbilicalSurface { .. } => "UmbilicalSurface",
            EqualityClass::HUmbilicalSurface { .. } => "HUmbilicalSurface",
            EqualityClass::NoEquality => "NoEquality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub mode: BoundMode,
    pub bound_value: f64,
    pub ricci_max: f64,
    pub argmax_direction: UnitVector,
    /// `bound_value − ricci_max`
    pub gap: f64,
    pub symmetry_certified: bool,
    /// Total-symmetry residual (improved mode with bundle ≥ n only).
    pub symmetry_residual: Option<f64>,
    pub equality_class: EqualityClass,
    pub tolerance: f64,
}

impl BoundReport {
    /// True when the bound's hypothesis is certified and the gap is
    /// non-negative up to the scaled tolerance.
    pub fn holds(&self) -> bool {
        self.symmetry_certified && !self.violated()
    }

    pub fn violated(&self) -> bool {
        self.gap < -self.tolerance * self.ricci_max.abs().max(self.bound_value.abs()).max(1.0)
    }
}

/// Builds T, maximizes `Ric_T` over unit directions and compares it with the
/// requested bound. The improved bound is still evaluated when ζ is not
/// totally symmetric; `symmetry_certified` is then false.
pub fn check_bound(zeta: &BundleValuedForm, mode: BoundMode, tol: f64) -> Result<BoundReport> {
    let ricci_form = gauss_tensor(zeta).ricci_form()?;
    let (ricci_max, argmax_direction) = max_ricci(&ricci_form)?;
    let (symmetry_certified, symmetry_residual) = match mode {
        BoundMode::General => (true, None),
        BoundMode::Improved => match is_totally_symmetric(zeta, tol) {
            Ok(sym) => (sym.holds, Some(sym.residual)),
            Err(Error::BundleTooSmall { .. }) => (false, None),
            Err(e) => return Err(e),
        },
    };
    let bound_value = mode.bound(zeta);
    Ok(BoundReport {
        mode,
        bound_value,
        ricci_max,
        argmax_direction,
        gap: bound_value - ricci_max,
        symmetry_certified,
        symmetry_residual,
        equality_class: classify_all_equality(zeta, mode, tol)?,
        tolerance: tol,
    })
}

/// Whether `x` satisfies `ζ(X, Y) = 0` for all `Y ⊥ X` and `ζ(X, X) = ½ trace ζ`.
pub fn attains_general_equality(zeta: &BundleValuedForm, x: &UnitVector, tol: f64) -> bool {
    let t = tol * form_scale(zeta);
    let xs = x.as_slice();
    let off_diagonal_ok = linalg::orthogonal_complement(xs)
        .iter()
        .all(|y| linalg::norm(&zeta.apply(xs, y)) <= t);
    let half_trace = linalg::scale(&zeta.trace(), 0.5);
    off_diagonal_ok && linalg::norm(&linalg::sub(&zeta.apply(xs, xs), &half_trace)) <= t
}

/// Unit directions attaining `Ric_T(X) = ¼‖trace ζ‖²`, taken from the top
/// eigenspace of `S_T` and certified against the pointwise conditions.
pub fn equality_directions(zeta: &BundleValuedForm, tol: f64) -> Result<Vec<UnitVector>> {
    let bound = chen_ricci_bound(zeta);
    let eig = symmetric_eigen(&gauss_tensor(zeta).ricci_form()?)?;
    let t = tol * tensor_scale(zeta);
    Ok(eig
        .sorted_descending()
        .into_iter()
        .filter(|(value, _)| (value - bound).abs() <= t)
        .filter_map(|(_, v)| UnitVector::normalize(&v).ok().map(UnitVector::canonical_sign))
        .filter(|x| attains_general_equality(zeta, x, tol))
        .collect())
}

/// Decides whether equality holds for every unit direction, i.e. whether
/// `S_T = bound · g`, and if so which configuration realizes it.
pub fn classify_all_equality(zeta: &BundleValuedForm, mode: BoundMode, tol: f64) -> Result<EqualityClass> {
    let n = zeta.n();
    let ricci_form = gauss_tensor(zeta).ricci_form()?;
    let target = Matrix::identity(n).scaled(mode.bound(zeta));
    if ricci_form.max_abs_diff(&target) > tol * tensor_scale(zeta) {
        return Ok(EqualityClass::NoEquality);
    }
    if zeta.is_zero(tol) {
        return Ok(EqualityClass::ZeroForm);
    }
    if n != 2 {
        return Ok(EqualityClass::NoEquality);
    }
    let Some(frame) = CanonicalFrame::new(zeta)? else {
        return Ok(EqualityClass::NoEquality);
    };
    let t = tol * form_scale(zeta);
    let class = match mode {
        BoundMode::General => frame.umbilical(zeta, t),
        BoundMode::Improved => frame.h_umbilical(zeta, t),
    };
    Ok(class.unwrap_or(EqualityClass::NoEquality))
}

/// Surface frame adapted to the trace direction: `u = trace ζ / ‖trace ζ‖`
/// and the tangent basis diagonalizing `g_B(ζ(·,·), u)` with eigenvalues in
/// descending order.
struct CanonicalFrame {
    u: Vec<f64>,
    trace_norm: f64,
    e1: Vec<f64>,
    e2: Vec<f64>,
}

impl CanonicalFrame {
    fn new(zeta: &BundleValuedForm) -> Result<Option<Self>> {
        let trace = zeta.trace();
        let trace_norm = linalg::norm(&trace);
        if trace_norm <= f64::EPSILON * form_scale(zeta) {
            return Ok(None);
        }
        let u = linalg::scale(&trace, 1.0 / trace_norm);
        let pairs = symmetric_eigen(&zeta.contract_bundle(&u))?.sorted_descending();
        let unit = |v: &[f64]| UnitVector::normalize(v).map(|x| x.canonical_sign().into_inner());
        Ok(Some(Self {
            e1: unit(&pairs[0].1)?,
            e2: unit(&pairs[1].1)?,
            u,
            trace_norm,
        }))
    }

    fn components(&self, zeta: &BundleValuedForm) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        (
            zeta.apply(&self.e1, &self.e1),
            zeta.apply(&self.e2, &self.e2),
            zeta.apply(&self.e1, &self.e2),
        )
    }

    fn umbilical(&self, zeta: &BundleValuedForm, t: f64) -> Option<EqualityClass> {
        let (z11, z22, z12) = self.components(zeta);
        (linalg::norm(&z12) <= t && linalg::norm(&linalg::sub(&z11, &z22)) <= t).then(|| {
            EqualityClass::UmbilicalSurface {
                mean_curvature: linalg::scale(&zeta.trace(), 0.5),
            }
        })
    }

    fn h_umbilical(&self, zeta: &BundleValuedForm, t: f64) -> Option<EqualityClass> {
        let mu = self.trace_norm / 4.0;
        let (z11, z22, z12) = self.components(zeta);
        let along = |c: f64| linalg::scale(&self.u, c);
        let diagonal_ok = linalg::norm(&linalg::sub(&z11, &along(3.0 * mu))) <= t
            && linalg::norm(&linalg::sub(&z22, &along(mu))) <= t;
        let off = linalg::norm(&z12);
        let off_ok = linalg::dot(&z12, &self.u).abs() <= t && (off - mu).abs() <= t;
        if !(diagonal_ok && off_ok) || off == 0.0 {
            return None;
        }
        Some(EqualityClass::HUmbilicalSurface {
            mu,
            tangent_frame: [self.e1.clone(), self.e2.clone()],
            normal_frame: [self.u.clone(), linalg::scale(&z12, 1.0 / off)],
        })
    }
}

/// The three statements linked by "any two imply the third".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryTriple {
    /// X attains `Ric_T(X) = ¼‖trace ζ‖²`.
    pub equality: bool,
    pub trace_zero: bool,
    /// X lies in the relative null space of ζ.
    pub in_null_space: bool,
    /// No row of the truth table has exactly two true statements.
    pub verified: bool,
}

pub fn corollary_triple(zeta: &BundleValuedForm, x: &UnitVector, tol: f64) -> CorollaryTriple {
    let t = tol * form_scale(zeta);
    let equality = attains_general_equality(zeta, x, tol);
    let trace_zero = linalg::norm(&zeta.trace()) <= t;
    let n = zeta.n();
    let in_null_space =
        (0..n).all(|j| linalg::norm(&zeta.apply(x.as_slice(), UnitVector::basis(n, j).as_slice())) <= t);
    let count = [equality, trace_zero, in_null_space].iter().filter(|b| **b).count();
    CorollaryTriple {
        equality,
        trace_zero,
        in_null_space,
        verified: count != 2,
    }
}
