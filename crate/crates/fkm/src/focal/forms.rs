//! Second fundamental forms of the two focal submanifolds, in exact
//! arithmetic. The plus side yields an operator matrix on an explicit tangent
//! basis; the minus side yields its three eigenspaces directly.

use num_traits::Zero;

use crate::error::{FkmError, Result};
use crate::exact::vector::{self, Q};
use crate::exact::{involution_eigenspace, nullspace, ExactMatrix, Subspace};
use crate::focal::{
    balance, normal_frame, sigma_complement_ops, tangent_space_plus, FocalPoint, FocalSide,
    Witness,
};
use crate::system::{CliffordSystem, SphereElement};

#[derive(Clone, Debug)]
pub struct PlusShape {
    /// Operator of the normal direction P x, written on `tangent_basis`.
    pub matrix: ExactMatrix,
    pub tangent_basis: Vec<Vec<Q>>,
    /// Ambient kernel of the operator.
    pub kernel: Subspace,
    pub mult_zero: usize,
    pub mult_plus: usize,
    pub mult_minus: usize,
    pub cubed_equals_self: bool,
}

/// Solve B·c = w for each column w, where the columns of B are the given
/// basis vectors. Every w must lie in their span.
fn coords_in_basis(basis: &[Vec<Q>], targets: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = basis[0].len();
    let d = basis.len();
    let t = targets.len();
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(d + t);
        for b in basis {
            row.push(b[i].clone());
        }
        for w in targets {
            row.push(w[i].clone());
        }
        rows.push(row);
    }
    let pivots = crate::exact::subspace::rref(&mut rows);
    // Full column rank in the basis block means pivots 0..d are the basis
    // columns and each target column is a plain combination read off the rows.
    if pivots.len() != d || pivots.iter().enumerate().any(|(r, &c)| c != r) {
        return Err(FkmError::Precondition(
            "target vectors leave the span of the tangent basis".into(),
        ));
    }
    let mut out = vec![vec![Q::zero(); d]; t];
    for (r, row) in rows.iter().enumerate() {
        for k in 0..t {
            out[k][r] = row[d + k].clone();
        }
    }
    Ok(out)
}

/// Shape operator of the plus focal submanifold in the normal direction P x:
/// v ↦ tangential part of -P v. Exact; the result is a cube root of itself
/// with spectrum {0, ±1} and multiplicities (m1, m2, m2).
pub fn focal_shape_plus(
    s: &CliffordSystem,
    x: &FocalPoint,
    p: &SphereElement,
) -> Result<PlusShape> {
    if x.side != FocalSide::Plus {
        return Err(FkmError::NotFocal("plus-side shape operator needs a plus point"));
    }
    x.verify(s)?;
    let pm = p.matrix(s)?;
    let r = x.norm_sq();
    let frame = normal_frame(s, &x.x);

    let tangent = tangent_space_plus(s, &x.x);
    let basis: Vec<Vec<Q>> = tangent.basis().to_vec();
    let d = basis.len();

    let images: Vec<Vec<Q>> = basis
        .iter()
        .map(|v| {
            let pv = pm.matvec(v);
            // Tangential projection: subtract components along x and the
            // normal frame, all of squared length ⟨x,x⟩.
            let mut w = vector::neg(&pv);
            let cx = vector::dot(&pv, &x.x) / &r;
            w = vector::add(&w, &vector::scale(&x.x, &cx));
            for f in &frame {
                let c = vector::dot(&pv, f) / &r;
                w = vector::add(&w, &vector::scale(f, &c));
            }
            vector::neg(&w)
        })
        .collect();

    let coords = coords_in_basis(&basis, &images)?;
    // coords[k] is the coordinate vector of S(basis[k]): columns of S.
    let matrix = ExactMatrix::from_fn(d, d, |i, j| coords[j][i].clone());

    let cubed = matrix.mul(&matrix.mul(&matrix));
    let cubed_equals_self = cubed == matrix;

    let id = ExactMatrix::identity(d);
    let mult_zero = d - matrix.rank();
    let mult_plus = d - matrix.sub(&id).rank();
    let mult_minus = d - matrix.add(&id).rank();

    let kernel_coords = nullspace(&matrix);
    let kernel_vectors: Vec<Vec<Q>> = kernel_coords
        .basis()
        .iter()
        .map(|c| {
            let mut v = vector::zeros(s.ambient_dim());
            for (ck, b) in c.iter().zip(&basis) {
                v = vector::add(&v, &vector::scale(b, ck));
            }
            v
        })
        .collect();
    let kernel = Subspace::from_spanning(s.ambient_dim(), kernel_vectors);

    Ok(PlusShape {
        matrix,
        tangent_basis: basis,
        kernel,
        mult_zero,
        mult_plus,
        mult_minus,
        cubed_equals_self,
    })
}

#[derive(Clone, Debug)]
pub struct MinusShape {
    pub plus_space: Subspace,
    pub minus_space: Subspace,
    pub kernel: Subspace,
    /// Tangent space of the minus submanifold's spherical section at y.
    pub tangent: Subspace,
}

/// Eigenspaces of the minus-side shape operator for normal direction n at a
/// minus point y with witness element P. Requires the balanced scaling
/// ‖y‖ = ‖n‖, which is restored internally when the ratio permits it:
///   E(+1) = span{Q(y+n)},  E(-1) = span{Q(y-n)},  Q running over P's
/// equator, and the kernel is everything in E₊(P) orthogonal to y and to
/// every Q n.
pub fn focal_shape_minus(
    s: &CliffordSystem,
    y: &FocalPoint,
    n: &[Q],
) -> Result<MinusShape> {
    if y.side != FocalSide::Minus {
        return Err(FkmError::NotFocal("minus-side shape operator needs a minus point"));
    }
    y.verify(s)?;
    let coeffs = match &y.witness {
        Some(Witness::Element(p)) => p.coeffs().to_vec(),
        _ => {
            return Err(FkmError::Precondition(
                "minus point must carry its witness element".into(),
            ))
        }
    };
    let pm = s.combination(&coeffs)?;
    if pm.matvec(n) != vector::neg(n) {
        return Err(FkmError::Precondition(
            "normal direction must lie in E-(P)".into(),
        ));
    }
    let ops = sigma_complement_ops(s, &coeffs)?;
    for q in &ops {
        if !vector::dot(&q.matvec(&y.x), n).is_zero() {
            return Err(FkmError::Precondition(
                "direction is not normal to the minus cone at y".into(),
            ));
        }
    }
    let (ys, ns) = balance(&y.x, n).ok_or_else(|| {
        FkmError::NotExactlyRepresentable(
            "squared length ratio of y and n is not a square".into(),
        )
    })?;

    let ambient = s.ambient_dim();
    let plus_vectors: Vec<Vec<Q>> = ops
        .iter()
        .map(|q| q.matvec(&vector::add(&ys, &ns)))
        .collect();
    let minus_vectors: Vec<Vec<Q>> = ops
        .iter()
        .map(|q| q.matvec(&vector::sub(&ys, &ns)))
        .collect();
    let plus_space = Subspace::from_spanning(ambient, plus_vectors);
    let minus_space = Subspace::from_spanning(ambient, minus_vectors);

    let eplus = involution_eigenspace(&pm, 1)?;
    let mut constraint_rows = vec![y.x.clone()];
    for q in &ops {
        constraint_rows.push(q.matvec(n));
    }
    let constraints = nullspace(&ExactMatrix::from_rows(constraint_rows));
    let kernel = eplus.intersect(&constraints)?;

    // Tangent space at y inside the sphere: orthogonal to y and to the
    // normal space {v in E-(P) : v ⊥ Q y}.
    let normal_space = crate::focal::minus_normal_space(s, &y.x, &coeffs)?;
    let mut rows = vec![y.x.clone()];
    rows.extend(normal_space.basis().iter().cloned());
    let tangent = nullspace(&ExactMatrix::from_rows(rows));

    Ok(MinusShape { plus_space, minus_space, kernel, tangent })
}
