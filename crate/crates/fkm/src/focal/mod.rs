//! Focal geometry of the level family cut out by the quartic: exact points on
//! the two focal manifolds, shape operators on both sides, and the rank
//! invariants that separate congruence classes.

pub mod forms;
pub mod invariants;
pub mod numeric;
pub mod points;
pub mod shape;

pub use forms::{focal_shape_minus, focal_shape_plus, MinusShape, PlusShape};
pub use invariants::{
    condition_a, nplus_membership, reconstruct_eplus, sigma_minus, sigma_plus,
    special_eigenspace, special_eigenvector, ConditionA, NPlusReport,
    ReconstructReport, SigmaMinus,
};
pub use points::{
    circle_point_exact, cos4t_exact, level_point, mminus_point, mplus_point,
    normal_circle_profile, CircleSample, SpherePoint,
};
pub use shape::{cluster, minimal_level, shape_spectrum, MinimalLevel, ShapeReport};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{FkmError, Result};
use crate::exact::vector::{self, Q};
use crate::exact::{nullspace, ExactMatrix, Subspace};
use crate::poly::FkmPolynomial;
use crate::system::{CliffordSystem, SphereElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FocalSide {
    Plus,
    Minus,
}

/// A point on one of the two focal cones, stored unnormalized: all downstream
/// predicates are homogeneous, so `x` may have any nonzero rational length.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FocalPoint {
    pub side: FocalSide,
    #[serde(with = "vector::qvec_serde")]
    pub x: Vec<Q>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Witness {
    /// Minus side: a unit element of the span fixing the point, P x = x.
    Element(SphereElement),
    /// Plus side: the balanced decomposition x = y + n with ‖y‖ = ‖n‖,
    /// y in E₊ of some element and n normal to the minus cone at y.
    Pair {
        #[serde(with = "vector::qvec_serde")]
        y: Vec<Q>,
        #[serde(with = "vector::qvec_serde")]
        n: Vec<Q>,
    },
}

impl FocalPoint {
    pub fn norm_sq(&self) -> Q {
        vector::norm_sq(&self.x)
    }

    /// Value of the quartic divided by ⟨x,x⟩²; equals -1 on the minus cone
    /// and +1 on the plus cone.
    pub fn level(&self, s: &CliffordSystem) -> Result<Q> {
        let poly = FkmPolynomial::new(s);
        let r = self.norm_sq();
        if r.is_zero() {
            return Err(FkmError::ZeroProjection);
        }
        Ok(poly.eval(&self.x)? / (&r * &r))
    }

    pub fn verify(&self, s: &CliffordSystem) -> Result<()> {
        let level = self.level(s)?;
        let want = match self.side {
            FocalSide::Plus => vector::qi(1),
            FocalSide::Minus => vector::qi(-1),
        };
        if level != want {
            return Err(FkmError::NotFocal(match self.side {
                FocalSide::Plus => "point is not on the plus cone",
                FocalSide::Minus => "point is not on the minus cone",
            }));
        }
        match &self.witness {
            Some(Witness::Element(p)) => {
                let pm = p.matrix(s)?;
                if pm.matvec(&self.x) != self.x {
                    return Err(FkmError::Precondition(
                        "witness element does not fix the point".into(),
                    ));
                }
            }
            Some(Witness::Pair { y, n }) => {
                let sum = vector::add(y, n);
                if sum != self.x || vector::norm_sq(y) != vector::norm_sq(n) {
                    return Err(FkmError::Precondition(
                        "witness pair is not a balanced decomposition".into(),
                    ));
                }
            }
            None => {}
        }
        Ok(())
    }
}

/// The frame (P_0 x, ..., P_m x); at a plus point these are pairwise
/// orthogonal with squared length ⟨x,x⟩ and they span the normal space.
pub fn normal_frame(s: &CliffordSystem, x: &[Q]) -> Vec<Vec<Q>> {
    s.matrices.iter().map(|p| p.matvec(x)).collect()
}

/// Tangent space of the plus cone's spherical section: everything orthogonal
/// to x and to the normal frame.
pub fn tangent_space_plus(s: &CliffordSystem, x: &[Q]) -> Subspace {
    let mut rows = vec![x.to_vec()];
    rows.extend(normal_frame(s, x));
    nullspace(&ExactMatrix::from_rows(rows))
}

/// Basis of the orthogonal complement of P inside the span, returned as
/// matrices: all unit-sphere directions through P's equator.
pub fn sigma_complement_ops(s: &CliffordSystem, coeffs: &[Q]) -> Result<Vec<ExactMatrix>> {
    if coeffs.len() != s.m as usize + 1 {
        return Err(FkmError::DimensionMismatch(format!(
            "coefficient vector has length {}, system span has dimension {}",
            coeffs.len(),
            s.m + 1
        )));
    }
    let row = ExactMatrix::from_rows(vec![coeffs.to_vec()]);
    let complement = nullspace(&row);
    complement.basis().iter().map(|d| s.combination(d)).collect()
}

/// Normal space of the minus cone's spherical section at y, for witness
/// element P: vectors in E₋(P) orthogonal to Q y for every Q in P's equator.
pub fn minus_normal_space(
    s: &CliffordSystem,
    y: &[Q],
    coeffs: &[Q],
) -> Result<Subspace> {
    let p = s.combination(coeffs)?;
    let eminus = crate::exact::involution_eigenspace(&p, -1)?;
    let ops = sigma_complement_ops(s, coeffs)?;
    let rows: Vec<Vec<Q>> = ops.iter().map(|q| q.matvec(y)).collect();
    if rows.is_empty() {
        return Ok(eminus);
    }
    let constraints = nullspace(&ExactMatrix::from_rows(rows));
    eminus.intersect(&constraints)
}

/// Scale y and n by integers so the results have equal squared length.
/// Possible exactly when the reduced ratio of the squared lengths has
/// square numerator and denominator.
pub fn balance(y: &[Q], n: &[Q]) -> Option<(Vec<Q>, Vec<Q>)> {
    let sy = vector::norm_sq(y);
    let sn = vector::norm_sq(n);
    if sy.is_zero() || sn.is_zero() {
        return None;
    }
    let ratio = sy / sn;
    let (a, b) = (ratio.numer().clone(), ratio.denom().clone());
    let ra = a.sqrt();
    let rb = b.sqrt();
    if &ra * &ra != a || &rb * &rb != b {
        return None;
    }
    let cy = Q::from_integer(rb);
    let cn = Q::from_integer(ra);
    Some((vector::scale(y, &cy), vector::scale(n, &cn)))
}
