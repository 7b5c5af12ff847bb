//! Exact construction of focal points and of points on intermediate level
//! sets along normal circles.

use num_traits::Zero;

use crate::error::{FkmError, Result};
use crate::exact::vector::{self, Q};
use crate::focal::{balance, minus_normal_space, FocalPoint, FocalSide, Witness};
use crate::poly::FkmPolynomial;
use crate::system::{CliffordSystem, SphereElement};
use crate::tol;

/// Project a seed vector onto E₊(P); any seed with nonzero projection gives
/// a minus-cone point fixed by P. The result is scaled to a primitive
/// integer vector.
pub fn mminus_point(
    s: &CliffordSystem,
    p: &SphereElement,
    seed: &[Q],
) -> Result<FocalPoint> {
    let pm = p.matrix(s)?;
    let projected = vector::add(seed, &pm.matvec(seed));
    if vector::is_zero(&projected) {
        return Err(FkmError::ZeroProjection);
    }
    let x = vector::primitive_integer_vector(&projected);
    debug_assert_eq!(pm.matvec(&x), x);
    let point = FocalPoint {
        side: FocalSide::Minus,
        x,
        witness: Some(Witness::Element(p.clone())),
    };
    point.verify(s)?;
    Ok(point)
}

/// Plus-cone point built from the minus cone: take the y_index-th basis
/// vector y of E₊(P), a normal direction n at y, and form x = ŷ + n̂ with the
/// two parts scaled to equal length. Balancing needs the length ratio to be
/// a square; the search walks the normal basis from `normal_index` and then
/// pair sums/differences before giving up.
pub fn mplus_point(
    s: &CliffordSystem,
    p: &SphereElement,
    y_index: usize,
    normal_index: usize,
) -> Result<FocalPoint> {
    let pm = p.matrix(s)?;
    let eplus = crate::exact::involution_eigenspace(&pm, 1)?;
    if y_index >= eplus.dim() {
        return Err(FkmError::IndexOutOfRange { index: y_index, limit: eplus.dim() });
    }
    let y = vector::primitive_integer_vector(&eplus.basis()[y_index]);

    let normals = minus_normal_space(s, &y, p.coeffs())?;
    let k = normals.dim();
    if k == 0 {
        return Err(FkmError::ZeroProjection);
    }
    if normal_index >= k {
        return Err(FkmError::IndexOutOfRange { index: normal_index, limit: k });
    }
    let basis: Vec<Vec<Q>> = normals
        .basis()
        .iter()
        .map(|b| vector::primitive_integer_vector(b))
        .collect();

    let mut candidates: Vec<Vec<Q>> = Vec::new();
    for off in 0..k {
        candidates.push(basis[(normal_index + off) % k].clone());
    }
    for i in 0..k {
        for j in i + 1..k {
            candidates.push(vector::add(&basis[i], &basis[j]));
            candidates.push(vector::sub(&basis[i], &basis[j]));
        }
    }

    for n in &candidates {
        if vector::is_zero(n) {
            continue;
        }
        if let Some((ys, ns)) = balance(&y, n) {
            let x = vector::add(&ys, &ns);
            let point = FocalPoint {
                side: FocalSide::Plus,
                x,
                witness: Some(Witness::Pair { y: ys, n: ns }),
            };
            point.verify(s)?;
            return Ok(point);
        }
    }
    Err(FkmError::NotExactlyRepresentable(format!(
        "no normal direction at the chosen base point balances to a square length ratio \
         (tried {} candidates)",
        candidates.len()
    )))
}

/// A floating-point unit vector on the ambient sphere together with the value
/// the quartic takes there.
#[derive(Clone, Debug)]
pub struct SpherePoint {
    pub x: Vec<f64>,
    pub level: f64,
}

/// Walk distance t = arccos(level)/4 along the normal circle through a plus
/// point in the direction P x. Levels at the endpoints ±1 are focal and
/// rejected.
pub fn level_point(
    s: &CliffordSystem,
    base: &FocalPoint,
    p: &SphereElement,
    level: f64,
) -> Result<SpherePoint> {
    if base.side != FocalSide::Plus {
        return Err(FkmError::NotFocal("level walk starts on the plus cone"));
    }
    if !(-1.0..=1.0).contains(&level) {
        return Err(FkmError::LevelOutOfRange(level));
    }
    if level.abs() > 1.0 - tol::NEAR_FOCAL {
        return Err(FkmError::NearFocal(level));
    }
    base.verify(s)?;
    let poly = FkmPolynomial::new(s);
    let norm = vector::norm_sq(&base.x);
    let scale = 1.0 / crate::exact::vector::q_to_f64(&norm).sqrt();
    let xf: Vec<f64> = base.x.iter().map(|c| vector::q_to_f64(c) * scale).collect();
    let pf = p.matrix(s)?.to_f64();
    let px: Vec<f64> = (0..xf.len())
        .map(|i| (0..xf.len()).map(|j| pf[(i, j)] * xf[j]).sum())
        .collect();
    let t = level.acos() / 4.0;
    let (c, sn) = (t.cos(), t.sin());
    let x: Vec<f64> = xf.iter().zip(&px).map(|(a, b)| c * a + sn * b).collect();
    let got = poly.sphere_value_f64(&x);
    debug_assert!((got - level).abs() < 1e-9, "level walk drifted: {got} vs {level}");
    Ok(SpherePoint { x, level: got })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CircleSample {
    pub t: f64,
    pub value: f64,
    pub predicted: f64,
}

/// Sample the quartic along the normal circle cos(t)·x + sin(t)·Px. The
/// restriction is the pure fourth harmonic cos(4t).
pub fn normal_circle_profile(
    s: &CliffordSystem,
    base: &FocalPoint,
    p: &SphereElement,
    samples: usize,
) -> Result<Vec<CircleSample>> {
    if base.side != FocalSide::Plus {
        return Err(FkmError::NotFocal("normal circles are based on the plus cone"));
    }
    base.verify(s)?;
    let poly = FkmPolynomial::new(s);
    let norm = vector::norm_sq(&base.x);
    let scale = 1.0 / crate::exact::vector::q_to_f64(&norm).sqrt();
    let xf: Vec<f64> = base.x.iter().map(|c| vector::q_to_f64(c) * scale).collect();
    let pf = p.matrix(s)?.to_f64();
    let px: Vec<f64> = (0..xf.len())
        .map(|i| (0..xf.len()).map(|j| pf[(i, j)] * xf[j]).sum())
        .collect();
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let t = std::f64::consts::TAU * (k as f64) / (samples as f64);
        let c: Vec<f64> = xf
            .iter()
            .zip(&px)
            .map(|(a, b)| t.cos() * a + t.sin() * b)
            .collect();
        out.push(CircleSample {
            t,
            value: poly.sphere_value_f64(&c),
            predicted: (4.0 * t).cos(),
        });
    }
    Ok(out)
}

/// cos(4t) for a rational point (c, s) on the unit circle with cos(t) = c:
/// 8c⁴ - 8c² + 1.
pub fn cos4t_exact(c: &Q) -> Q {
    let c2 = c * c;
    let c4 = &c2 * &c2;
    vector::qi(8) * c4 - vector::qi(8) * c2 + vector::qi(1)
}

/// Exact point on the normal circle at a rational angle (cos t, sin t) =
/// (c, sn) with c² + sn² = 1. Returned unnormalized: the base point keeps
/// its integer scale, so callers should evaluate homogeneously.
pub fn circle_point_exact(
    s: &CliffordSystem,
    base: &FocalPoint,
    p: &SphereElement,
    c: &Q,
    sn: &Q,
) -> Result<Vec<Q>> {
    if base.side != FocalSide::Plus {
        return Err(FkmError::NotFocal("normal circles are based on the plus cone"));
    }
    if (c * c + sn * sn) != vector::qi(1) {
        return Err(FkmError::BadCoefficients);
    }
    let px = p.matrix(s)?.matvec(&base.x);
    if vector::dot(&base.x, &px) != Q::zero() {
        return Err(FkmError::NotFocal("direction is not normal at the base point"));
    }
    Ok(vector::add(
        &vector::scale(&base.x, c),
        &vector::scale(&px, sn),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{irreducible_system, sum_of_irreducibles};

    fn basis_element(s: &CliffordSystem, i: usize) -> SphereElement {
        SphereElement::basis(i, s.m as usize + 1)
    }

    #[test]
    fn minus_point_from_basis_seed() {
        let s = irreducible_system(3);
        let p = basis_element(&s, 0);
        let x = mminus_point(&s, &p, &vector::unit(8, 1)).unwrap();
        assert_eq!(x.level(&s).unwrap(), vector::qi(-1));
    }

    #[test]
    fn plus_point_balances_exactly() {
        let systems = vec![
            sum_of_irreducibles(1, &[1, 1]).unwrap(),
            sum_of_irreducibles(2, &[1, 1]).unwrap(),
            sum_of_irreducibles(3, &[1, 1]).unwrap(),
            irreducible_system(5),
            irreducible_system(6),
        ];
        for s in &systems {
            let p = basis_element(s, 0);
            let x = mplus_point(s, &p, 0, 0).unwrap();
            assert_eq!(x.level(s).unwrap(), vector::qi(1), "m = {}", s.m);
            match x.witness {
                Some(Witness::Pair { y, n }) => {
                    assert_eq!(vector::norm_sq(&y), vector::norm_sq(&n));
                    assert!(vector::dot(&y, &n).is_zero());
                }
                _ => panic!("plus point should carry its decomposition"),
            }
        }
    }

    #[test]
    fn circle_profile_is_fourth_harmonic() {
        let s = sum_of_irreducibles(2, &[1, 1]).unwrap();
        let p = basis_element(&s, 1);
        let x = mplus_point(&s, &p, 0, 0).unwrap();
        let profile = normal_circle_profile(&s, &x, &p, 32).unwrap();
        for sample in profile {
            assert!(
                (sample.value - sample.predicted).abs() < tol::FLOAT_IDENTITY,
                "t = {}: {} vs {}",
                sample.t,
                sample.value,
                sample.predicted
            );
        }
    }

    #[test]
    fn circle_point_exact_matches_closed_form() {
        let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
        let p = basis_element(&s, 2);
        let x = mplus_point(&s, &p, 0, 0).unwrap();
        // (3/5, 4/5) is on the unit circle; cos(4t) = -527/625.
        let c = vector::q(3, 5);
        let sn = vector::q(4, 5);
        let pt = circle_point_exact(&s, &x, &p, &c, &sn).unwrap();
        let poly = FkmPolynomial::new(&s);
        let r = vector::norm_sq(&pt);
        assert_eq!(
            poly.eval(&pt).unwrap(),
            cos4t_exact(&c) * &r * &r,
        );
        assert_eq!(cos4t_exact(&c), vector::q(-527, 625));
    }

    #[test]
    fn level_walk_hits_requested_level() {
        let s = irreducible_system(5);
        let p = basis_element(&s, 0);
        let x = mplus_point(&s, &p, 0, 0).unwrap();
        for level in [-0.9, -0.3, 0.0, 0.4, 0.99] {
            let pt = level_point(&s, &x, &p, level).unwrap();
            assert!((pt.level - level).abs() < 1e-12);
        }
        assert!(matches!(
            level_point(&s, &x, &p, 1.0),
            Err(FkmError::NearFocal(_))
        ));
        assert!(matches!(
            level_point(&s, &x, &p, 1.5),
            Err(FkmError::LevelOutOfRange(_))
        ));
    }
}
