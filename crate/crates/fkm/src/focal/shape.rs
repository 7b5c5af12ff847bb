//! Shape operator of an intermediate level hypersurface, computed numerically
//! from the exact Hessian, plus the closed-form law it must match.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{FkmError, Result};
use crate::focal::points::SpherePoint;
use crate::poly::FkmPolynomial;
use crate::system::CliffordSystem;
use crate::tol;

/// Group sorted eigenvalues into clusters of width `width` and return
/// (mean, multiplicity) pairs in descending order.
pub fn cluster(values: &[f64], width: f64) -> Vec<(f64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((mean, count)) if (*mean - v).abs() <= width => {
                *mean = (*mean * (*count as f64) + v) / (*count as f64 + 1.0);
                *count += 1;
            }
            _ => out.push((v, 1)),
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeReport {
    pub level: f64,
    /// Normal distance from the plus cone, arccos(level)/4.
    pub t: f64,
    pub clusters: Vec<(f64, usize)>,
    pub predicted: Vec<(f64, usize)>,
    /// Largest |computed - predicted| over matched cluster values.
    pub max_value_error: f64,
    pub multiplicities_match: bool,
    pub trace: f64,
}

/// Predicted principal curvatures cot(t + k·π/4) with multiplicities
/// alternating between the two invariants; zero multiplicities are dropped,
/// so a pair with m₂ = 0 yields two clusters.
pub fn predicted_clusters(s: &CliffordSystem, t: f64) -> Result<Vec<(f64, usize)>> {
    let m1 = s.m1() as usize;
    let m2 = s.m2();
    if m2 < 0 {
        return Err(FkmError::DegenerateSystem { m2 });
    }
    let m2 = m2 as usize;
    let mut out = Vec::new();
    for (k, mult) in [(0usize, m1), (1, m2), (2, m1), (3, m2)] {
        if mult > 0 {
            let angle = t + (k as f64) * std::f64::consts::FRAC_PI_4;
            out.push((angle.cos() / angle.sin(), mult));
        }
    }
    Ok(out)
}

/// Shape operator spectrum at a non-focal point, taken with respect to the
/// unit normal along the spherical gradient (which points toward the plus
/// cone). Eigenvalues are clustered and compared against the closed form.
pub fn shape_spectrum(s: &CliffordSystem, pt: &SpherePoint) -> Result<ShapeReport> {
    let m2 = s.m2();
    if m2 < 0 {
        return Err(FkmError::DegenerateSystem { m2 });
    }
    let n = s.ambient_dim();
    if pt.x.len() != n {
        return Err(FkmError::DimensionMismatch(format!(
            "point has length {}, ambient dimension is {}",
            pt.x.len(),
            n
        )));
    }
    if pt.level.abs() > 1.0 - tol::NEAR_FOCAL {
        return Err(FkmError::NearFocal(pt.level));
    }
    let poly = FkmPolynomial::new(s);
    let norm = pt.x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let x: Vec<f64> = pt.x.iter().map(|v| v / norm).collect();
    let f = poly.eval_f64(&x);
    let grad = poly.gradient_f64(&x);
    let hess = poly.hessian_f64(&x);

    // Spherical gradient and unit normal toward the plus cone.
    let gs: Vec<f64> = grad.iter().zip(&x).map(|(g, xi)| g - 4.0 * f * xi).collect();
    let gs_norm = gs.iter().map(|v| v * v).sum::<f64>().sqrt();
    if gs_norm < tol::FLOAT_IDENTITY {
        return Err(FkmError::NearFocal(f));
    }

    // Orthonormal frame of the level hypersurface's tangent space: QR of
    // [x | gs | Id] and drop the first two columns.
    let mut seed = DMatrix::<f64>::zeros(n, n + 2);
    for i in 0..n {
        seed[(i, 0)] = x[i];
        seed[(i, 1)] = gs[i];
        seed[(i, i + 2)] = 1.0;
    }
    let q = seed.qr().q();
    let frame = q.columns(2, n - 2).into_owned();

    // Second fundamental form in that frame: the spherical Hessian is the
    // ambient one minus 4F⟨·,·⟩ on tangent vectors.
    let mut second = frame.transpose() * &hess * &frame;
    for i in 0..n - 2 {
        second[(i, i)] -= 4.0 * f;
    }
    let shape = second.map(|v| -v / gs_norm);
    let eigen = shape.symmetric_eigen();
    let values: Vec<f64> = eigen.eigenvalues.iter().copied().collect();

    let clusters = cluster(&values, tol::EIGEN_CLUSTER);
    let t = pt.level.acos() / 4.0;
    let predicted = predicted_clusters(s, t)?;
    let multiplicities_match = clusters.len() == predicted.len()
        && clusters
            .iter()
            .zip(&predicted)
            .all(|((_, c), (_, p))| c == p);
    let max_value_error = if clusters.len() == predicted.len() {
        clusters
            .iter()
            .zip(&predicted)
            .map(|((cv, _), (pv, _))| (cv - pv).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(ShapeReport {
        level: pt.level,
        t,
        clusters,
        predicted,
        max_value_error,
        multiplicities_match,
        trace: values.iter().sum(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalLevel {
    pub t: f64,
    pub level: f64,
}

/// Level of the minimal hypersurface in the family: the unique zero of the
/// mean curvature
///   m₁·cot t + m₂·cot(t + π/4) + m₁·cot(t + π/2) + m₂·cot(t + 3π/4)
/// on (0, π/4), found by bisection. The sum telescopes to
/// 2m₁·cot 2t − 2m₂·tan 2t, so the zero is t = ½·arctan √(m₁/m₂); the
/// bisection is the primary path and the closed form is its cross-check.
pub fn minimal_level(s: &CliffordSystem) -> Result<MinimalLevel> {
    let m1 = s.m1() as f64;
    let m2 = s.m2();
    if m2 <= 0 {
        return Err(FkmError::DegenerateSystem { m2 });
    }
    let m2 = m2 as f64;
    let mean = |t: f64| -> f64 {
        let mut h = 0.0;
        for (k, mult) in [(0u32, m1), (1, m2), (2, m1), (3, m2)] {
            let a = t + (k as f64) * std::f64::consts::FRAC_PI_4;
            h += mult * a.cos() / a.sin();
        }
        h
    };
    let mut lo = 1e-9;
    let mut hi = std::f64::consts::FRAC_PI_4 - 1e-9;
    debug_assert!(mean(lo) > 0.0 && mean(hi) < 0.0);
    while hi - lo > tol::BISECTION {
        let mid = 0.5 * (lo + hi);
        if mean(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let closed = 0.5 * (m1 / m2).sqrt().atan();
    debug_assert!((t - closed).abs() < 1e-10, "bisection {t} vs closed form {closed}");
    Ok(MinimalLevel { t, level: (4.0 * t).cos() })
}
