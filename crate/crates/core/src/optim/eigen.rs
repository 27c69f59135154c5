use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::tensor::UnitVector;

pub const MAX_SWEEPS: usize = 50;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Eigen-decomposition of a real symmetric matrix. `vectors` holds the unit
/// eigenvectors as columns, in the same order as `values`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }

    /// Index of the largest eigenvalue; the lowest index wins exact ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (k, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = k;
            }
        }
        best
    }

    /// Eigenpairs sorted by descending eigenvalue (stable for ties).
    pub fn sorted_descending(&self) -> Vec<(f64, Vec<f64>)> {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]));
        order.into_iter().map(|k| (self.values[k], self.vector(k))).collect()
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)] * a[(i, j)];
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below `1e-12 · ‖A‖_F`.
pub fn symmetric_eigen(a: &Matrix) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let scale = a.frobenius_norm();
    let residual = a.symmetry_residual();
    if residual > 1e-10 * scale.max(1.0) {
        return Err(Error::NotSymmetric { residual });
    }
    let n = a.rows();
    let mut m = a.symmetrized();
    let mut v = Matrix::identity(n);
    let target = OFF_DIAGONAL_TOL * scale;

    let mut converged = off_diagonal_norm(&m) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let (arp, arq) = (m[(r, p)], m[(r, q)]);
                    m[(r, p)] = c * arp - s * arq;
                    m[(p, r)] = m[(r, p)];
                    m[(r, q)] = s * arp + c * arq;
                    m[(q, r)] = m[(r, q)];
                }
                m[(p, p)] -= t * apq;
                m[(q, q)] += t * apq;
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for r in 0..n {
                    let (vrp, vrq) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = c * vrp - s * vrq;
                    v[(r, q)] = s * vrp + c * vrq;
                }
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&m) <= target;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps });
    }
    Ok(SymmetricEigen {
        values: (0..n).map(|i| m[(i, i)]).collect(),
        vectors: v,
    })
}

/// Largest eigenvalue of a symmetric form and a unit eigenvector whose
/// largest-magnitude coordinate is positive.
pub fn max_ricci(form: &Matrix) -> Result<(f64, UnitVector)> {
    let eig = symmetric_eigen(form)?;
    let k = eig.argmax();
    let dir = UnitVector::normalize(&eig.vector(k))?.canonical_sign();
    Ok((eig.values[k], dir))
}
