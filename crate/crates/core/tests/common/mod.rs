#![allow(dead_code)]

use ahp_core::JudgmentMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Principal eigenvalue by power iteration with a Rayleigh-style ratio,
/// independent of the geometric-mean estimator.
pub fn power_iteration(m: &JudgmentMatrix, iters: usize) -> f64 {
    let n = m.order();
    let mut x = vec![1.0 / n as f64; n];
    let mut lambda = 0.0;
    for _ in 0..iters {
        let mut y = vec![0.0; n];
        for (i, yi) in y.iter_mut().enumerate() {
            for (j, xj) in x.iter().enumerate() {
                *yi += m.get(i, j) * xj;
            }
        }
        let s: f64 = y.iter().sum();
        lambda = s / x.iter().sum::<f64>();
        for v in &mut y {
            *v /= s;
        }
        x = y;
    }
    lambda
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random reciprocal matrix whose judgments are drawn from the 1/9..9 scale.
pub fn random_scale_matrix(rng: &mut ChaCha8Rng, order: usize) -> JudgmentMatrix {
    let scale = ahp_core::saaty_scale();
    let upper: Vec<f64> = (0..order * (order - 1) / 2)
        .map(|_| scale[rng.random_range(0..scale.len())])
        .collect();
    JudgmentMatrix::from_upper_triangle(order, &upper, ahp_core::ScaleMode::StrictScale).unwrap()
}

/// Ratio matrix of random weights with multiplicative log-normal noise of
/// spread `sigma` on each upper-triangle judgment.
pub fn perturbed_matrix(rng: &mut ChaCha8Rng, order: usize, sigma: f64) -> JudgmentMatrix {
    let w: Vec<f64> = (0..order).map(|_| rng.random_range(0.05..1.0)).collect();
    let mut upper = Vec::new();
    for i in 0..order {
        for j in (i + 1)..order {
            let noise: f64 = rng.random_range(-sigma..=sigma);
            upper.push(w[i] / w[j] * noise.exp());
        }
    }
    JudgmentMatrix::from_upper_triangle(order, &upper, ahp_core::ScaleMode::ReciprocalOnly).unwrap()
}
