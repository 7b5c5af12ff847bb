#![allow(dead_code)]

use fkm::poly::FkmPolynomial;
use fkm::system::{sum_of_irreducibles, CliffordSystem};
use nalgebra::DMatrix;

pub const GRAD_STEP: f64 = 1e-5;
pub const HESS_STEP: f64 = 1e-5;

/// The recurring verification fleet: every (m, k, signs) combination the
/// exact identity sweeps run over. Sign classes only differ for m ≡ 0 mod 4,
/// so the two-summand entries for m = 4 and m = 8 appear in both classes.
pub fn survey() -> Vec<(String, CliffordSystem)> {
    let entries: Vec<(u32, Vec<i8>)> = vec![
        (1, vec![1, 1]),
        (1, vec![1, 1, 1]),
        (2, vec![1, 1]),
        (3, vec![1, 1]),
        (4, vec![1]),
        (4, vec![1, 1]),
        (4, vec![1, -1]),
        (5, vec![1]),
        (9, vec![1]),
        (8, vec![1, 1]),
        (8, vec![1, -1]),
    ];
    entries
        .into_iter()
        .map(|(m, signs)| {
            let label = format!(
                "m={m} k={} signs={}",
                signs.len(),
                signs
                    .iter()
                    .map(|s| if *s > 0 { '+' } else { '-' })
                    .collect::<String>()
            );
            let s = sum_of_irreducibles(m, &signs).expect("survey system builds");
            (label, s)
        })
        .collect()
}

/// Central-difference gradient of the quartic, built from nothing but point
/// evaluations.
pub fn gradient_fd(poly: &FkmPolynomial, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        probe[i] = x[i] + GRAD_STEP;
        let up = poly.eval_f64(&probe);
        probe[i] = x[i] - GRAD_STEP;
        let down = poly.eval_f64(&probe);
        probe[i] = x[i];
        out[i] = (up - down) / (2.0 * GRAD_STEP);
    }
    out
}

/// Central-difference Hessian, columns taken as differences of the
/// closed-form gradient. The gradient itself is checked against plain value
/// differences separately, so the chain stays independent of the symbolic
/// Hessian path.
pub fn hessian_fd(poly: &FkmPolynomial, x: &[f64]) -> DMatrix<f64> {
    let n = x.len();
    let mut out = DMatrix::zeros(n, n);
    let mut probe = x.to_vec();
    for j in 0..n {
        probe[j] = x[j] + HESS_STEP;
        let up = poly.gradient_f64(&probe);
        probe[j] = x[j] - HESS_STEP;
        let down = poly.gradient_f64(&probe);
        probe[j] = x[j];
        for i in 0..n {
            out[(i, j)] = (up[i] - down[i]) / (2.0 * HESS_STEP);
        }
    }
    out
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

pub fn rel_err(got: &[f64], want: &[f64]) -> f64 {
    let diff: Vec<f64> = got.iter().zip(want).map(|(a, b)| a - b).collect();
    max_abs(&diff) / max_abs(want).max(1.0)
}
