use serde::{Deserialize, Serialize};

use super::UnitVector;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Tolerance applied to curvature symmetries before contracting a tensor,
/// relative to `max(1, max|T|)`.
pub(crate) const CONTRACTION_SYMMETRY_TOL: f64 = 1e-9;

/// Dense (0,4)-tensor `T[i][j][k][l] = T(e_i, e_j, e_k, e_l)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureLikeTensor {
    n: usize,
    data: Vec<f64>,
}

/// Largest violation of each curvature identity over all index quadruples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    /// `T(X,Y,Z,W) + T(Y,X,Z,W)`
    pub antisymmetry_first: f64,
    /// `T(X,Y,Z,W) + T(X,Y,W,Z)`
    pub antisymmetry_last: f64,
    /// `T(X,Y,Z,W) + T(X,Z,W,Y) + T(X,W,Y,Z)`
    pub bianchi: f64,
    /// `T(X,Y,Z,W) - T(Z,W,X,Y)`; implied by the other three, reported only.
    pub pair_exchange: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SymmetryReport {
    pub fn max_residual(&self) -> f64 {
        self.antisymmetry_first.max(self.antisymmetry_last).max(self.bianchi)
    }
}

impl CurvatureLikeTensor {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n.pow(4)],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self { n, data }
    }

    /// Wraps a row-major `n⁴` component array. Symmetries are not checked
    /// here; see [`CurvatureLikeTensor::validate_symmetries`].
    pub fn from_components(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n.pow(4) {
            return Err(Error::LengthMismatch {
                expected: n.pow(4),
                found: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[f64] {
        &self.data
    }

    pub fn into_components(self) -> Vec<f64> {
        self.data
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.data[self.idx(i, j, k, l)]
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.data)
    }

    /// Entrywise sum; both tensors must share `n`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Multilinear evaluation `T(X, Y, Z, W)`.
    pub fn eval(&self, x: &[f64], y: &[f64], z: &[f64], w: &[f64]) -> f64 {
        let n = self.n;
        assert!(
            x.len() == n && y.len() == n && z.len() == n && w.len() == n,
            "eval: vector length must be n"
        );
        let mut acc = 0.0;
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0.0 {
                    continue;
                }
                let xy = x[i] * y[j];
                for k in 0..n {
                    if z[k] == 0.0 {
                        continue;
                    }
                    let base = self.idx(i, j, k, 0);
                    let inner: f64 = (0..n).map(|l| self.data[base + l] * w[l]).sum();
                    acc += xy * z[k] * inner;
                }
            }
        }
        acc
    }

    /// Max absolute violation of each identity; passes iff all three are `<= tol`.
    pub fn validate_symmetries(&self, tol: f64) -> SymmetryReport {
        let n = self.n;
        let (mut first, mut last, mut bianchi, mut pair) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let t = self.get(i, j, k, l);
                        first = first.max((t + self.get(j, i, k, l)).abs());
                        last = last.max((t + self.get(i, j, l, k)).abs());
                        bianchi = bianchi.max((t + self.get(i, k, l, j) + self.get(i, l, j, k)).abs());
                        pair = pair.max((t - self.get(k, l, i, j)).abs());
                    }
                }
            }
        }
        let passed = first <= tol && last <= tol && bianchi <= tol;
        SymmetryReport {
            antisymmetry_first: first,
            antisymmetry_last: last,
            bianchi,
            pair_exchange: pair,
            tolerance: tol,
            passed,
        }
    }

    fn ensure_curvature_like(&self) -> Result<()> {
        let tol = CONTRACTION_SYMMETRY_TOL * self.max_abs().max(1.0);
        let report = self.validate_symmetries(tol);
        if report.passed {
            Ok(())
        } else {
            Err(Error::InvalidTensor {
                residual: report.max_residual(),
            })
        }
    }

    /// `K_T(X ∧ Y) = T(X, Y, Y, X)` for an orthonormal pair.
    pub fn sectional(&self, x: &UnitVector, y: &UnitVector) -> Result<f64> {
        if x.dim() != self.n || y.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim().max(y.dim()),
            });
        }
        let inner = linalg::dot(x.as_slice(), y.as_slice());
        if inner.abs() > 1e-9 {
            return Err(Error::NonOrthonormalPair { inner });
        }
        let (x, y) = (x.as_slice(), y.as_slice());
        Ok(self.eval(x, y, y, x))
    }

    /// `S_T[i][k] = Σ_j T[j][i][k][j]`, symmetrized.
    pub fn ricci_form(&self) -> Result<Matrix> {
        self.ensure_curvature_like()?;
        let n = self.n;
        let raw = Matrix::from_fn(n, n, |i, k| (0..n).map(|j| self.get(j, i, k, j)).sum());
        Ok(raw.symmetrized())
    }

    /// `Ric_T(X) = S_T(X, X)`.
    pub fn ricci(&self, x: &UnitVector) -> Result<f64> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        Ok(self.ricci_form()?.quadratic_form(x.as_slice()))
    }

    /// `τ_T = Σ_{i<j} T[i][j][j][i]`.
    pub fn scalar(&self) -> Result<f64> {
        self.ensure_curvature_like()?;
        let n = self.n;
        let mut tau = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                tau += self.get(i, j, j, i);
            }
        }
        Ok(tau)
    }
}
