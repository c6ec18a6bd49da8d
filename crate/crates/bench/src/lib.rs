//! Shared inputs for the criterion benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdc_core::ComplexMatrix4;

/// Deterministic batch of random Hermitian 4×4 matrices.
pub fn hermitian_batch(count: usize, seed: u64) -> Vec<ComplexMatrix4> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut m = ComplexMatrix4::zeros();
            for i in 0..4 {
                m.set(
                    i,
                    i,
                    num_complex::Complex64::new(rng.random_range(-1.0..1.0), 0.0),
                );
                for j in (i + 1)..4 {
                    let v = num_complex::Complex64::new(
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    );
                    m.set(i, j, v);
                    m.set(j, i, v.conj());
                }
            }
            m
        })
        .collect()
}
