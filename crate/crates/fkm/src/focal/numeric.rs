//! Floating-point sampling of the moment zero set.
//!
//! Random points of M_+ cannot be written down exactly: the moment equations
//! cut out a variety with no rational parametrization in general, so exact
//! arithmetic only reaches the scripted eigenvector points. This module
//! projects random sphere points onto M_+ numerically and measures the
//! common-kernel dimension there. Ranks are decided against `RANK_TOL`,
//! which sits many orders of magnitude above the projection residual.

use nalgebra::{DMatrix, DVector};

use crate::error::{FkmError, Result};
use crate::sample::Sampler;
use crate::system::CliffordSystem;

pub const RESIDUAL_TOL: f64 = 1e-12;
pub const RANK_TOL: f64 = 1e-8;

const MAX_STEPS: usize = 200;

fn residual_and_jacobian(
    ps: &[DMatrix<f64>],
    x: &DVector<f64>,
) -> (DVector<f64>, DMatrix<f64>) {
    let n = x.len();
    let mut r = DVector::zeros(ps.len() + 1);
    let mut j = DMatrix::zeros(ps.len() + 1, n);
    for (k, p) in ps.iter().enumerate() {
        let px = p * x;
        r[k] = x.dot(&px);
        j.row_mut(k).copy_from(&(2.0 * px.transpose()));
    }
    r[ps.len()] = x.dot(x) - 1.0;
    j.row_mut(ps.len()).copy_from(&(2.0 * x.transpose()));
    (r, j)
}

/// Gauss-Newton projection of `x0` onto the unit-sphere moment zero set
/// {⟨P_i x, x⟩ = 0 for all i, ⟨x, x⟩ = 1}, with minimal-norm steps and a
/// halving line search.
pub fn project_to_plus(s: &CliffordSystem, x0: &[f64]) -> Result<Vec<f64>> {
    let ps: Vec<DMatrix<f64>> = s.matrices.iter().map(|m| m.to_f64()).collect();
    let mut x = DVector::from_column_slice(x0);
    let (mut r, mut j) = residual_and_jacobian(&ps, &x);
    for _ in 0..MAX_STEPS {
        if r.norm() < RESIDUAL_TOL {
            return Ok(x.as_slice().to_vec());
        }
        let jjt = &j * j.transpose();
        let chol = jjt
            .clone()
            .cholesky()
            .ok_or_else(|| FkmError::NoConvergence("singular step system".into()))?;
        let dx = -(j.transpose() * chol.solve(&r));
        let mut step = 1.0;
        loop {
            let trial = &x + step * &dx;
            let (tr, tj) = residual_and_jacobian(&ps, &trial);
            if tr.norm() < r.norm() {
                x = trial;
                r = tr;
                j = tj;
                break;
            }
            step *= 0.5;
            if step < 1e-8 {
                return Err(FkmError::NoConvergence(format!(
                    "projection stalled at residual {:.3e}",
                    r.norm()
                )));
            }
        }
    }
    Err(FkmError::NoConvergence(format!(
        "projection still at residual {:.3e} after {MAX_STEPS} steps",
        r.norm()
    )))
}

/// Draws a random point of M_+ by projecting a random unit vector.
pub fn random_plus_point(s: &CliffordSystem, sampler: &mut Sampler) -> Result<Vec<f64>> {
    let x0 = sampler.unit_f64_vector(s.ambient_dim());
    project_to_plus(s, &x0)
}

/// Common kernel dimension of the shape operators at a numeric M_+ point.
///
/// The kernel of the shape operator for the normal P_a x is spanned by
/// {P_b P_a x : b != a}, so the common kernel is the intersection of those
/// m+1 spans. Each span has an orthonormal basis up to the projection
/// residual (the pairing identity makes the spanning vectors orthonormal on
/// the nose at exact points), so the intersection is the near-null space of
/// G = sum over a of (Id - B_a B_a^T).
pub fn condition_a_dim_f64(s: &CliffordSystem, x: &[f64]) -> usize {
    let n = s.ambient_dim();
    let ps: Vec<DMatrix<f64>> = s.matrices.iter().map(|m| m.to_f64()).collect();
    let xv = DVector::from_column_slice(x);
    let mut g = DMatrix::<f64>::zeros(n, n);
    for a in 0..ps.len() {
        let pax = &ps[a] * &xv;
        let mut basis = DMatrix::zeros(n, ps.len() - 1);
        let mut col = 0;
        for (b, pb) in ps.iter().enumerate() {
            if b == a {
                continue;
            }
            basis.column_mut(col).copy_from(&(pb * &pax));
            col += 1;
        }
        let q = basis.qr().q();
        g += DMatrix::identity(n, n) - &q * q.transpose();
    }
    g.symmetric_eigenvalues()
        .iter()
        .filter(|ev| ev.abs() < RANK_TOL)
        .count()
}
