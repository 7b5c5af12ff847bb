//! The isoparametric quartic F(x) = ⟨x,x⟩² - 2 Σ ⟨P_i x, x⟩² attached to a
//! Clifford system, with exact and floating evaluation, the closed-form
//! gradient and Hessian, and the second-order expansion component used by
//! the focal-geometry checks.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use crate::error::{FkmError, Result};
use crate::exact::matrix::ExactMatrix;
use crate::exact::vector::{self, Q};
use crate::system::CliffordSystem;

pub struct FkmPolynomial<'a> {
    pub system: &'a CliffordSystem,
}

impl<'a> FkmPolynomial<'a> {
    pub fn new(system: &'a CliffordSystem) -> Self {
        FkmPolynomial { system }
    }

    fn check_dim(&self, x: &[Q]) -> Result<()> {
        if x.len() != self.system.ambient_dim() {
            return Err(FkmError::DimensionMismatch(format!(
                "point has length {}, ambient is {}",
                x.len(),
                self.system.ambient_dim()
            )));
        }
        Ok(())
    }

    /// ⟨P_i x, x⟩.
    pub fn moment(&self, x: &[Q], i: usize) -> Q {
        vector::dot(&self.system.matrices[i].matvec(x), x)
    }

    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        self.check_dim(x)?;
        let r = vector::norm_sq(x);
        let mut s = Q::zero();
        for i in 0..self.system.matrices.len() {
            let a = self.moment(x, i);
            s += &a * &a;
        }
        Ok(&r * &r - s * vector::qi(2))
    }

    /// grad F = 4⟨x,x⟩ x - 8 Σ ⟨P_i x, x⟩ P_i x.
    pub fn gradient(&self, x: &[Q]) -> Result<Vec<Q>> {
        self.check_dim(x)?;
        let r = vector::norm_sq(x);
        let mut g = vector::scale(x, &(r * vector::qi(4)));
        for p in &self.system.matrices {
            let px = p.matvec(x);
            let a = vector::dot(&px, x);
            if !a.is_zero() {
                g = vector::sub(&g, &vector::scale(&px, &(a * vector::qi(8))));
            }
        }
        Ok(g)
    }

    /// Hess F = 8 x xᵀ + 4⟨x,x⟩ Id - Σ (16 (P_i x)(P_i x)ᵀ + 8⟨P_i x,x⟩ P_i).
    pub fn hessian(&self, x: &[Q]) -> Result<ExactMatrix> {
        self.check_dim(x)?;
        let n = x.len();
        let r = vector::norm_sq(x);
        let mut h = ExactMatrix::from_fn(n, n, |i, j| {
            let mut v = &x[i] * &x[j] * vector::qi(8);
            if i == j {
                v += &r * vector::qi(4);
            }
            v
        });
        for p in &self.system.matrices {
            let px = p.matvec(x);
            let a = vector::dot(&px, x) * vector::qi(8);
            let outer = ExactMatrix::from_fn(n, n, |i, j| &px[i] * &px[j] * vector::qi(16));
            h = h.sub(&outer);
            if !a.is_zero() {
                h = h.sub(&p.scale(&a));
            }
        }
        Ok(h)
    }

    /// Exact residuals of the two defining differential identities at x:
    /// ‖grad F‖² - 16⟨x,x⟩³ and trace Hess F - 8(m2 - m1)⟨x,x⟩.
    pub fn identity_residuals(&self, x: &[Q]) -> Result<(Q, Q)> {
        let g = self.gradient(x)?;
        let r = vector::norm_sq(x);
        let grad_res = vector::norm_sq(&g) - &r * &r * &r * vector::qi(16);
        let c = vector::qi(8 * (self.system.m2() - self.system.m1()));
        let lap_res = self.hessian(x)?.trace() - c * &r;
        Ok((grad_res, lap_res))
    }

    /// ⟨grad F(x), P_i P_j x⟩ for i ≠ j; vanishes identically because the
    /// rotations generated by the skew products P_i P_j preserve every level
    /// set. Equal indices are rejected: P_i P_i is the identity, and the
    /// pairing degenerates to 4F(x).
    pub fn killing_tangency(&self, x: &[Q], i: usize, j: usize) -> Result<Q> {
        let limit = self.system.matrices.len();
        if i >= limit || j >= limit {
            return Err(FkmError::IndexOutOfRange { index: i.max(j), limit });
        }
        if i == j {
            return Err(FkmError::Precondition(
                "tangency needs two distinct indices".into(),
            ));
        }
        let g = self.gradient(x)?;
        let v = self.system.matrices[i].matvec(&self.system.matrices[j].matvec(x));
        Ok(vector::dot(&g, &v))
    }

    // Floating path -------------------------------------------------------

    pub fn matrices_f64(&self) -> Vec<DMatrix<f64>> {
        self.system.matrices.iter().map(ExactMatrix::to_f64).collect()
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let xv = DVector::from_column_slice(x);
        let r = xv.dot(&xv);
        let mut s = 0.0;
        for p in self.matrices_f64() {
            let a = (&p * &xv).dot(&xv);
            s += a * a;
        }
        r * r - 2.0 * s
    }

    pub fn gradient_f64(&self, x: &[f64]) -> Vec<f64> {
        let xv = DVector::from_column_slice(x);
        let r = xv.dot(&xv);
        let mut g = 4.0 * r * xv.clone();
        for p in self.matrices_f64() {
            let px = &p * &xv;
            let a = px.dot(&xv);
            g -= 8.0 * a * px;
        }
        g.as_slice().to_vec()
    }

    pub fn hessian_f64(&self, x: &[f64]) -> DMatrix<f64> {
        let n = x.len();
        let xv = DVector::from_column_slice(x);
        let r = xv.dot(&xv);
        let mut h = 8.0 * &xv * xv.transpose() + 4.0 * r * DMatrix::identity(n, n);
        for p in self.matrices_f64() {
            let px = &p * &xv;
            let a = px.dot(&xv);
            h -= 16.0 * &px * px.transpose() + 8.0 * a * p;
        }
        h
    }

    /// Value of the restriction to the unit sphere at x/‖x‖, via homogeneity.
    pub fn sphere_value_f64(&self, x: &[f64]) -> f64 {
        let r: f64 = x.iter().map(|v| v * v).sum();
        self.eval_f64(x) / (r * r)
    }
}

/// The component of F(x + sN + tk + ub) of multidegree (x⁰, N¹, k¹, b²),
/// extracted by exact polarization over the sixteen sign/scale patterns
/// (s, t) ∈ {±1}², u ∈ {±1, ±2}, together with its closed form
/// -8 Σ ⟨P_i N, k⟩ ⟨P_i b, b⟩.
///
/// Expects x on the cone over M_+ with N in the normal span {P_i x} and k, b
/// orthogonal to x and to every P_i x; kernel/image membership of k and b is
/// the caller's responsibility.
pub fn condition_b_component(
    poly: &FkmPolynomial,
    x: &[Q],
    n: &[Q],
    k: &[Q],
    b: &[Q],
) -> Result<(Q, Q)> {
    let sys = poly.system;
    poly.check_dim(x)?;
    for v in [n, k, b] {
        poly.check_dim(v)?;
    }
    for i in 0..sys.matrices.len() {
        if !poly.moment(x, i).is_zero() {
            return Err(FkmError::NotFocal("M+"));
        }
    }
    // N must lie in the span of the P_i x; k and b must be orthogonal to x
    // and that span.
    let frame: Vec<Vec<Q>> = (0..sys.matrices.len())
        .map(|i| sys.matrices[i].matvec(x))
        .collect();
    let span = crate::exact::Subspace::from_spanning(x.len(), frame.clone());
    if !span.contains_vector(n) {
        return Err(FkmError::Precondition("N is not in the normal span of x".into()));
    }
    for (label, v) in [("k", k), ("b", b)] {
        if !vector::dot(v, x).is_zero() || frame.iter().any(|f| !vector::dot(f, v).is_zero()) {
            return Err(FkmError::Precondition(format!(
                "{label} must be tangent to M+ at x"
            )));
        }
    }

    let eval_shift = |s: i64, t: i64, u: i64| -> Result<Q> {
        let mut y = x.to_vec();
        y = vector::add(&y, &vector::scale(n, &vector::qi(s)));
        y = vector::add(&y, &vector::scale(k, &vector::qi(t)));
        y = vector::add(&y, &vector::scale(b, &vector::qi(u)));
        poly.eval(&y)
    };
    // Odd part in s and t at a fixed b-scale u.
    let odd_st = |u: i64| -> Result<Q> {
        Ok((eval_shift(1, 1, u)? - eval_shift(-1, 1, u)? - eval_shift(1, -1, u)?
            + eval_shift(-1, -1, u)?)
            / vector::qi(4))
    };
    let even1 = (odd_st(1)? + odd_st(-1)?) / vector::qi(2);
    let even2 = (odd_st(2)? + odd_st(-2)?) / vector::qi(2);
    let polarized = (even2 - &even1) / vector::qi(3);

    let mut closed = Q::zero();
    for p in &sys.matrices {
        let pn = p.matvec(n);
        let pb = p.matvec(b);
        closed += vector::dot(&pn, k) * vector::dot(&pb, b);
    }
    closed *= vector::qi(-8);
    Ok((polarized, closed))
}
