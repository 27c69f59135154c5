//! Seeded instance generation.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`, a
//! portable stream: the same seed yields the same instances on every
//! platform and release of this crate.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{self, Matrix};
use crate::tensor::{BundleValuedForm, Dimensions, UnitVector};

/// Deterministic source of random forms, frames and directions.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for partition `index` of a campaign seeded by `seed`.
    pub fn for_instance(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn normal_vec(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.normal()).collect()
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty choice")
    }

    /// Independent standard normal entries on the upper triangle of each slot.
    pub fn random_general(&mut self, dims: Dimensions) -> BundleValuedForm {
        BundleValuedForm::from_fn(dims, |_, _, _| self.normal())
    }

    /// A totally symmetric cubic form on the first `n` slots (sorted index
    /// triples get one normal draw each, mirrored to every permutation) and
    /// a zero tail.
    pub fn random_symmetric(&mut self, dims: Dimensions) -> BundleValuedForm {
        let n = dims.n();
        assert!(dims.bundle() >= n, "symmetric sampling needs bundle >= n");
        let mut cubic = vec![0.0; n * n * n];
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let v = self.normal();
                    for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                        cubic[(x * n + y) * n + z] = v;
                    }
                }
            }
        }
        BundleValuedForm::from_fn(dims, |r, i, j| if r < n { cubic[(r * n + i) * n + j] } else { 0.0 })
    }

    pub fn random_unit(&mut self, n: usize) -> UnitVector {
        loop {
            if let Ok(u) = UnitVector::normalize(&self.normal_vec(n)) {
                return u;
            }
        }
    }

    /// Orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
    pub fn random_orthogonal(&mut self, n: usize) -> Matrix {
        loop {
            let cols: Vec<Vec<f64>> = (0..n).map(|_| self.normal_vec(n)).collect();
            let q = linalg::gram_schmidt(&cols, 1e-8);
            if q.len() == n {
                return Matrix::from_fn(n, n, |i, j| q[j][i]);
            }
        }
    }

    /// Applies random orthogonal changes of both the tangent and bundle frames.
    pub fn random_rotation(&mut self, zeta: &BundleValuedForm) -> Result<BundleValuedForm> {
        let qt = self.random_orthogonal(zeta.n());
        let qb = self.random_orthogonal(zeta.bundle_dim());
        zeta.rotate_frame(&qt, &qb)
    }
}
