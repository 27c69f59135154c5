use serde::{Deserialize, Serialize};

use super::{Dimensions, UnitVector};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// A symmetric bilinear form on the tangent space with values in the bundle
/// fibre, stored by components `ζ[r][i][j] = g_B(ζ(e_i, e_j), e_r)`.
///
/// Each bundle slot keeps only the upper triangle `i <= j`; reads of
/// `(i, j)` and `(j, i)` hit the same storage so symmetry is exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleValuedForm {
    dims: Dimensions,
    packed: Vec<f64>,
}

fn packed_len(n: usize) -> usize {
    n * (n + 1) / 2
}

impl BundleValuedForm {
    pub fn zeros(dims: Dimensions) -> Self {
        Self {
            dims,
            packed: vec![0.0; dims.bundle() * packed_len(dims.n())],
        }
    }

    /// Builds a form by evaluating `f(r, i, j)` on `i <= j` only.
    pub fn from_fn(dims: Dimensions, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut form = Self::zeros(dims);
        let n = dims.n();
        for r in 0..dims.bundle() {
            for i in 0..n {
                for j in i..n {
                    let k = form.offset(r, i, j);
                    form.packed[k] = f(r, i, j);
                }
            }
        }
        form
    }

    /// Reads a dense `[r][i][j]` array, rejecting entries whose mirror
    /// differs by more than `sym_tol`. The upper-triangle value is kept.
    pub fn from_nested(components: &[Vec<Vec<f64>>], sym_tol: f64) -> Result<Self> {
        let bundle = components.len();
        let n = components.first().map_or(0, Vec::len);
        let dims = Dimensions::new(n, bundle)?;
        for slot in components {
            if slot.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: slot.len(),
                });
            }
            if let Some(row) = slot.iter().find(|row| row.len() != n) {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for (r, slot) in components.iter().enumerate() {
            for i in 0..n {
                for j in i + 1..n {
                    let (upper, lower) = (slot[i][j], slot[j][i]);
                    if !((upper - lower).abs() <= sym_tol) {
                        return Err(Error::AsymmetricForm { r, i, j, upper, lower });
                    }
                }
            }
        }
        Ok(Self::from_fn(dims, |r, i, j| components[r][i][j]))
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.n();
        (0..self.bundle_dim())
            .map(|r| (0..n).map(|i| (0..n).map(|j| self.get(r, i, j)).collect()).collect())
            .collect()
    }

    fn offset(&self, r: usize, i: usize, j: usize) -> usize {
        let n = self.dims.n();
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        r * packed_len(n) + a * n - a * (a + 1) / 2 + b
    }

    pub fn dims(&self) -> Dimensions {
        self.dims
    }

    pub fn n(&self) -> usize {
        self.dims.n()
    }

    pub fn bundle_dim(&self) -> usize {
        self.dims.bundle()
    }

    pub fn get(&self, r: usize, i: usize, j: usize) -> f64 {
        self.packed[self.offset(r, i, j)]
    }

    /// Copy of `self` with `ζ[r][i][j] = ζ[r][j][i] = value`.
    pub fn with_entry(&self, r: usize, i: usize, j: usize, value: f64) -> Self {
        let mut out = self.clone();
        let k = out.offset(r, i, j);
        out.packed[k] = value;
        out
    }

    /// The bundle vector `ζ(e_i, e_j)`.
    pub fn value(&self, i: usize, j: usize) -> Vec<f64> {
        (0..self.bundle_dim()).map(|r| self.get(r, i, j)).collect()
    }

    /// The bundle vector `ζ(X, Y)`.
    pub fn apply(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert!(x.len() == n && y.len() == n, "apply: vector length must be n");
        (0..self.bundle_dim())
            .map(|r| {
                let mut acc = 0.0;
                for i in 0..n {
                    if x[i] == 0.0 {
                        continue;
                    }
                    for j in 0..n {
                        acc += x[i] * y[j] * self.get(r, i, j);
                    }
                }
                acc
            })
            .collect()
    }

    /// `‖ζ‖² = Σ_{r,i,j} (ζ[r][i][j])²` over all ordered pairs.
    pub fn norm_sq(&self) -> f64 {
        let n = self.n();
        let mut acc = 0.0;
        for r in 0..self.bundle_dim() {
            for i in 0..n {
                for j in 0..n {
                    let v = self.get(r, i, j);
                    acc += v * v;
                }
            }
        }
        acc
    }

    /// `trace ζ = Σ_i ζ(e_i, e_i)`.
    pub fn trace(&self) -> Vec<f64> {
        (0..self.bundle_dim())
            .map(|r| (0..self.n()).map(|i| self.get(r, i, i)).sum())
            .collect()
    }

    pub fn trace_norm_sq(&self) -> f64 {
        let t = self.trace();
        linalg::dot(&t, &t)
    }

    /// `trace ζ / n`, the mean curvature vector when ζ is a second fundamental form.
    pub fn mean_curvature(&self) -> Vec<f64> {
        linalg::scale(&self.trace(), 1.0 / self.n() as f64)
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.packed)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// The real symmetric form `g_B(ζ(e_i, e_j), u)` for a bundle vector `u`.
    pub fn contract_bundle(&self, u: &[f64]) -> Matrix {
        assert_eq!(
            u.len(),
            self.bundle_dim(),
            "contract_bundle: length must be the bundle dimension"
        );
        let n = self.n();
        Matrix::from_fn(n, n, |i, j| {
            (0..self.bundle_dim()).map(|r| u[r] * self.get(r, i, j)).sum()
        })
    }

    /// Changes orthonormal frames: `ζ'[s][a][b] = Σ Qb[s][r] Qt[a][i] Qt[b][j] ζ[r][i][j]`.
    pub fn rotate_frame(&self, q_tangent: &Matrix, q_bundle: &Matrix) -> Result<Self> {
        let (n, m) = (self.n(), self.bundle_dim());
        if q_tangent.rows() != n || !q_tangent.is_square() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: q_tangent.rows(),
            });
        }
        if q_bundle.rows() != m || !q_bundle.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: q_bundle.rows(),
            });
        }
        q_tangent.ensure_orthogonal(1e-10)?;
        q_bundle.ensure_orthogonal(1e-10)?;

        // Tangent conjugation slot by slot, then the bundle mix.
        let tangent_rotated: Vec<Matrix> = (0..m)
            .map(|r| {
                let slot = Matrix::from_fn(n, n, |i, j| self.get(r, i, j));
                let left = q_tangent.matmul(&slot).expect("square");
                left.matmul(&q_tangent.transpose()).expect("square")
            })
            .collect();
        Ok(Self::from_fn(self.dims, |s, a, b| {
            (0..m)
                .map(|r| q_bundle[(s, r)] * 0.5 * (tangent_rotated[r][(a, b)] + tangent_rotated[r][(b, a)]))
                .sum()
        }))
    }

    /// Orthonormal basis of `{X : ζ(X, Y) = 0 for all Y}`.
    ///
    /// The map `X ↦ ζ(X, ·)` is stacked into an `(bundle·n) × n` matrix and
    /// reduced to row echelon form with partial pivoting; pivots below
    /// `rank_tol · max|ζ|` count as zero.
    pub fn null_space(&self, rank_tol: f64) -> Vec<UnitVector> {
        let (n, m) = (self.n(), self.bundle_dim());
        let scale = self.max_abs();
        if scale == 0.0 {
            return (0..n).map(|i| UnitVector::basis(n, i)).collect();
        }
        let threshold = rank_tol * scale;
        let rows = m * n;
        let mut a = Matrix::from_fn(rows, n, |row, col| self.get(row / n, col, row % n));

        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut free = Vec::new();
        let mut next_row = 0;
        for col in 0..n {
            if next_row == rows {
                free.push(col);
                continue;
            }
            let best = (next_row..rows)
                .max_by(|&p, &q| a[(p, col)].abs().total_cmp(&a[(q, col)].abs()))
                .expect("non-empty");
            if a[(best, col)].abs() <= threshold {
                free.push(col);
                continue;
            }
            if best != next_row {
                for k in 0..n {
                    let tmp = a[(best, k)];
                    a[(best, k)] = a[(next_row, k)];
                    a[(next_row, k)] = tmp;
                }
            }
            for row in next_row + 1..rows {
                let factor = a[(row, col)] / a[(next_row, col)];
                if factor != 0.0 {
                    for k in col..n {
                        a[(row, k)] -= factor * a[(next_row, k)];
                    }
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
        }

        let raw: Vec<Vec<f64>> = free
            .iter()
            .map(|&f| {
                let mut x = vec![0.0; n];
                x[f] = 1.0;
                for &(row, col) in pivots.iter().rev() {
                    let tail: f64 = (col + 1..n).map(|k| a[(row, k)] * x[k]).sum();
                    x[col] = -tail / a[(row, col)];
                }
                x
            })
            .collect();
        linalg::gram_schmidt(&raw, 1e-12)
            .into_iter()
            .map(|v| UnitVector::normalize(&v).expect("nonzero after Gram-Schmidt"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(n: usize, m: usize) -> Dimensions {
        Dimensions::new(n, m).unwrap()
    }

    /// ζ(e1,e1) = 3u1, ζ(e2,e2) = u1, ζ(e1,e2) = u2.
    fn h_umbilical() -> BundleValuedForm {
        BundleValuedForm::zeros(dims(2, 2))
            .with_entry(0, 0, 0, 3.0)
            .with_entry(0, 1, 1, 1.0)
            .with_entry(1, 0, 1, 1.0)
    }

    #[test]
    fn storage_is_symmetric() {
        let z = BundleValuedForm::zeros(dims(3, 1)).with_entry(0, 2, 0, 5.0);
        assert_eq!(z.get(0, 0, 2), 5.0);
        assert_eq!(z.get(0, 2, 0), 5.0);
    }

    #[test]
    fn norms_of_zero_form() {
        let z = BundleValuedForm::zeros(dims(3, 2));
        assert_eq!(z.norm_sq(), 0.0);
        assert_eq!(z.trace(), vec![0.0, 0.0]);
        assert_eq!(z.trace_norm_sq(), 0.0);
    }

    #[test]
    fn norms_of_h_umbilical() {
        let z = h_umbilical();
        assert_eq!(z.trace(), vec![4.0, 0.0]);
        assert_eq!(z.trace_norm_sq(), 16.0);
        assert_eq!(z.norm_sq(), 12.0);
    }

    #[test]
    fn nested_rejects_asymmetry() {
        let nested = vec![vec![vec![0.0, 1.0], vec![1.5, 0.0]]];
        let err = BundleValuedForm::from_nested(&nested, 1e-12).unwrap_err();
        assert_eq!(
            err,
            Error::AsymmetricForm {
                r: 0,
                i: 0,
                j: 1,
                upper: 1.0,
                lower: 1.5
            }
        );
    }

    #[test]
    fn nested_round_trip() {
        let z = h_umbilical();
        assert_eq!(BundleValuedForm::from_nested(&z.to_nested(), 0.0).unwrap(), z);
    }

    #[test]
    fn rotate_identity_is_noop() {
        let z = h_umbilical();
        let r = z.rotate_frame(&Matrix::identity(2), &Matrix::identity(2)).unwrap();
        assert_eq!(r, z);
    }

    #[test]
    fn rotate_swap_relabels() {
        let swap = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = h_umbilical().rotate_frame(&swap, &Matrix::identity(2)).unwrap();
        assert_eq!(r.value(0, 0), vec![1.0, 0.0]);
        assert_eq!(r.value(1, 1), vec![3.0, 0.0]);
    }

    #[test]
    fn rotate_rejects_non_orthogonal() {
        let bad = Matrix::from_rows(&[vec![1.0, 0.1], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            h_umbilical().rotate_frame(&bad, &Matrix::identity(2)),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn null_space_of_zero_is_everything() {
        let z = BundleValuedForm::zeros(dims(3, 2));
        assert_eq!(z.null_space(1e-9).len(), 3);
    }

    #[test]
    fn null_space_by_inspection() {
        let z = BundleValuedForm::zeros(dims(3, 1)).with_entry(0, 1, 1, 1.0);
        let basis = z.null_space(1e-9);
        // ζ(X, ·) = 0 iff X_2 = 0, so the kernel is span{e1, e3}
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(v.as_slice()[1].abs() < 1e-15);
        }
    }

    #[test]
    fn null_space_single_direction() {
        // ζ[·][1][·] = 0 (0-based: row 0 of every slot), ζ[1][2][2] = 1, ζ[1][3][3] = 1
        let z = BundleValuedForm::zeros(dims(3, 1))
            .with_entry(0, 1, 1, 1.0)
            .with_entry(0, 2, 2, 1.0);
        let basis = z.null_space(1e-9);
        assert_eq!(basis.len(), 1);
        assert!((basis[0].as_slice()[0].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn null_space_h_umbilical_is_trivial() {
        assert!(h_umbilical().null_space(1e-9).is_empty());
    }

    #[test]
    fn apply_matches_components() {
        let z = h_umbilical();
        assert_eq!(z.apply(&[1.0, 0.0], &[0.0, 1.0]), vec![0.0, 1.0]);
        assert_eq!(z.apply(&[1.0, 0.0], &[1.0, 0.0]), vec![3.0, 0.0]);
    }
}
