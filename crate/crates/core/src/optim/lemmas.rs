//! The two quadratic functions maximized on the hyperplane `a¹ + ⋯ + aⁿ = S`:
//!
//! * `f₁(a) = a¹ Σ_{j≥2} aʲ − Σ_{j≥2} (aʲ)²`, maximum `(n−1)/(4n) · S²`;
//! * `f₂(a) = a¹ Σ_{j≥2} aʲ − (a¹)²`, maximum `S²/8`.
//!
//! Closed forms live next to an oracle that eliminates the constraint,
//! solves the stationarity system and then samples the hyperplane.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Samples drawn by [`brute_force_max`].
pub const ORACLE_SAMPLES: usize = 100_000;
/// Seed used by [`brute_force_max`].
pub const ORACLE_SEED: u64 = 0x5eed_0f1e_44a5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaKind {
    F1,
    F2,
}

/// One of `f₁`, `f₂` in dimension `n ≥ 2` with the constraint sum `S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstrainedQuadratic {
    pub kind: LemmaKind,
    pub n: usize,
    pub sum: f64,
}

/// Closed-form maximum. For `f₂` only `first` and `tail_sum` are pinned
/// and `argmax` is the equal-tail representative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaMaximum {
    pub max: f64,
    pub argmax: Vec<f64>,
    pub first: f64,
    pub tail_sum: f64,
    pub unique: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleMaximum {
    pub max: f64,
    pub argmax: Vec<f64>,
    pub sampled_max: f64,
    pub samples: usize,
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            n,
            reason: "the lemmas need n >= 2",
        });
    }
    Ok(())
}

impl ConstrainedQuadratic {
    pub fn new(kind: LemmaKind, n: usize, sum: f64) -> Result<Self> {
        check_dimension(n)?;
        if !sum.is_finite() {
            return Err(Error::InvalidParams(format!(
                "constraint sum must be finite, got {sum}"
            )));
        }
        Ok(Self { kind, n, sum })
    }

    /// Literal evaluation; the constraint is not enforced.
    pub fn value(&self, a: &[f64]) -> Result<f64> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: a.len(),
            });
        }
        let tail: f64 = a[1..].iter().sum();
        Ok(match self.kind {
            LemmaKind::F1 => a[0] * tail - a[1..].iter().map(|x| x * x).sum::<f64>(),
            LemmaKind::F2 => a[0] * tail - a[0] * a[0],
        })
    }

    /// `|Σ a − S|`.
    pub fn constraint_residual(&self, a: &[f64]) -> f64 {
        (a.iter().sum::<f64>() - self.sum).abs()
    }

    pub fn closed_form(&self) -> LemmaMaximum {
        match self.kind {
            LemmaKind::F1 => f1_closed(self.n, self.sum),
            LemmaKind::F2 => f2_closed(self.n, self.sum),
        }
    }
}

fn f1_closed(n: usize, s: f64) -> LemmaMaximum {
    let nf = n as f64;
    let a = s / (2.0 * nf);
    let first = (nf + 1.0) * a;
    let mut argmax = vec![a; n];
    argmax[0] = first;
    LemmaMaximum {
        max: (nf - 1.0) / (4.0 * nf) * s * s,
        argmax,
        first,
        tail_sum: (nf - 1.0) * a,
        unique: true,
    }
}

fn f2_closed(n: usize, s: f64) -> LemmaMaximum {
    let first = s / 4.0;
    let tail_sum = 3.0 * s / 4.0;
    let mut argmax = vec![tail_sum / (n - 1) as f64; n];
    argmax[0] = first;
    LemmaMaximum {
        max: s * s / 8.0,
        argmax,
        first,
        tail_sum,
        unique: n == 2,
    }
}

/// Maximum of `f₁` subject to `Σ a = S`: `(n−1)/(4n) S²` at
/// `a¹ = (n+1)S/(2n)`, `aʲ = S/(2n)`.
pub fn f1_max_closed(n: usize, sum: f64) -> Result<LemmaMaximum> {
    check_dimension(n)?;
    Ok(f1_closed(n, sum))
}

/// Maximum of `f₂` subject to `Σ a = S`: `S²/8` on the family
/// `a¹ = S/4`, `a² + ⋯ + aⁿ = 3S/4`.
pub fn f2_max_closed(n: usize, sum: f64) -> Result<LemmaMaximum> {
    check_dimension(n)?;
    Ok(f2_closed(n, sum))
}

/// Stationary point of the constraint-eliminated quadratic, in full coordinates.
fn stationary_point(q: &ConstrainedQuadratic) -> Result<Vec<f64>> {
    let (n, s) = (q.n, q.sum);
    match q.kind {
        LemmaKind::F1 => {
            // f = (S − 1ᵀx)·1ᵀx − xᵀx over x = (a²,…,aⁿ); ∇f = 0 ⇔ 2(11ᵀ + I)x = S·1
            let m = n - 1;
            let hessian = Matrix::from_fn(m, m, |i, j| if i == j { 4.0 } else { 2.0 });
            let tail = linalg::solve(&hessian, &vec![s; m])?;
            let mut a = Vec::with_capacity(n);
            a.push(s - tail.iter().sum::<f64>());
            a.extend(tail);
            Ok(a)
        }
        LemmaKind::F2 => {
            // depends on t = Σ_{j≥2} aʲ only: g(t) = (S − t)t − (S − t)², g'(t) = 3S − 4t
            let t = linalg::solve(&Matrix::identity(1).scaled(4.0), &[3.0 * s])?[0];
            let mut a = vec![t / (n - 1) as f64; n];
            a[0] = s - t;
            Ok(a)
        }
    }
}

/// Independent maximum: elimination plus a linear stationarity solve,
/// cross-checked by `ORACLE_SAMPLES` seeded points on the hyperplane.
pub fn brute_force_max(q: &ConstrainedQuadratic) -> Result<OracleMaximum> {
    brute_force_max_with(q, ORACLE_SAMPLES, ORACLE_SEED)
}

pub fn brute_force_max_with(q: &ConstrainedQuadratic, samples: usize, seed: u64) -> Result<OracleMaximum> {
    check_dimension(q.n)?;
    let argmax = stationary_point(q)?;
    let max = q.value(&argmax)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = q.sum.abs().max(1.0);
    let mut sampled_max = f64::NEG_INFINITY;
    let mut point = vec![0.0; q.n];
    for k in 0..samples {
        // alternate broad draws with draws close to the stationary point
        let (center, width) = if k % 2 == 0 {
            (None, 2.0 * spread)
        } else {
            (Some(&argmax), 0.05 * spread)
        };
        for j in 1..q.n {
            let g: f64 = rng.sample(StandardNormal);
            point[j] = center.map_or(0.0, |c| c[j]) + width * g;
        }
        point[0] = q.sum - point[1..].iter().sum::<f64>();
        let v = q.value(&point)?;
        if v > max + 1e-9 {
            return Err(Error::OracleViolation { sampled: v, max });
        }
        sampled_max = sampled_max.max(v);
    }
    Ok(OracleMaximum {
        max,
        argmax,
        sampled_max,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1(n: usize, s: f64) -> ConstrainedQuadratic {
        ConstrainedQuadratic::new(LemmaKind::F1, n, s).unwrap()
    }

    fn f2(n: usize, s: f64) -> ConstrainedQuadratic {
        ConstrainedQuadratic::new(LemmaKind::F2, n, s).unwrap()
    }

    #[test]
    fn literal_values() {
        assert_eq!(f1(3, 0.0).value(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(f1(3, 6.0).value(&[4.0, 1.0, 1.0]).unwrap(), 6.0);
        assert_eq!(f2(3, 4.0).value(&[1.0, 2.0, 1.0]).unwrap(), 2.0);
        assert_eq!(
            f1(3, 6.0).value(&[1.0, 2.0]),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn f1_closed_examples() {
        let m = f1_max_closed(3, 6.0).unwrap();
        assert_eq!(m.max, 6.0);
        assert_eq!(m.argmax, vec![4.0, 1.0, 1.0]);
        let m = f1_max_closed(2, 0.0).unwrap();
        assert_eq!((m.max, m.argmax), (0.0, vec![0.0, 0.0]));
        let m = f1_max_closed(2, 4.0).unwrap();
        assert_eq!((m.max, m.argmax), (2.0, vec![3.0, 1.0]));
    }

    #[test]
    fn f2_closed_examples() {
        let m = f2_max_closed(3, 4.0).unwrap();
        assert_eq!((m.max, m.first, m.tail_sum), (2.0, 1.0, 3.0));
        assert_eq!(m.argmax, vec![1.0, 1.5, 1.5]);
        assert_eq!(f2(3, 4.0).value(&m.argmax).unwrap(), 2.0);
        assert_eq!(f2_max_closed(5, 0.0).unwrap().max, 0.0);
        let m = f2_max_closed(4, 8.0).unwrap();
        assert_eq!((m.max, m.argmax.clone()), (8.0, vec![2.0, 2.0, 2.0, 2.0]));
        assert_eq!(f2(4, 8.0).value(&m.argmax).unwrap(), 8.0);
    }

    #[test]
    fn n_below_two_rejected() {
        assert!(matches!(f1_max_closed(1, 1.0), Err(Error::InvalidDimension { .. })));
        assert!(ConstrainedQuadratic::new(LemmaKind::F2, 1, 1.0).is_err());
    }

    #[test]
    fn oracle_examples() {
        let o = brute_force_max_with(&f1(3, 6.0), 2000, 1).unwrap();
        assert!((o.max - 6.0).abs() < 1e-9);
        for (x, y) in o.argmax.iter().zip([4.0, 1.0, 1.0]) {
            assert!((x - y).abs() < 1e-9);
        }
        let o = brute_force_max_with(&f2(3, 4.0), 2000, 1).unwrap();
        assert!((o.max - 2.0).abs() < 1e-9);
        assert_eq!(brute_force_max_with(&f1(4, 0.0), 2000, 1).unwrap().max, 0.0);
        assert_eq!(brute_force_max_with(&f2(4, 0.0), 2000, 1).unwrap().max, 0.0);
    }

    #[test]
    fn local_samples_approach_the_maximum() {
        let q = f1(3, 6.0);
        let o = brute_force_max_with(&q, 5000, 2).unwrap();
        assert!(o.sampled_max <= o.max + 1e-9);
        assert!(o.sampled_max > o.max - 1e-2, "local draws should approach the maximum");
    }
}
