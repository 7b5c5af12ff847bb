//! Rank invariants at focal points: common kernels of shape operators,
//! the sigma invariant on both sides, eigenspace reconstruction, and
//! membership in the locus fixed by a product of four elements.

use serde::Serialize;

use crate::error::{FkmError, Result};
use crate::exact::vector::{self, Q};
use crate::exact::{involution_eigenspace, ExactMatrix, Subspace};
use crate::focal::{
    minus_normal_space, sigma_complement_ops, FocalPoint, FocalSide, Witness,
};
use crate::sample::Sampler;
use crate::system::CliffordSystem;

/// How many consecutive random rounds must leave a dimension unchanged
/// before an intersection or sum is considered stable.
const STABLE_ROUNDS: usize = 3;
const MAX_ROUNDS: usize = 60;

/// Joint eigenspace of a family of commuting symmetric involutions.
/// `prefer` gives the sign to try first for each operator; when a choice
/// empties the joint eigenspace the search backtracks and flips signs,
/// deepest operator first. Returns the first nonempty joint eigenspace and
/// the signs that produced it.
pub fn special_eigenspace(
    ops: &[ExactMatrix],
    prefer: &[i8],
) -> Result<(Subspace, Vec<i8>)> {
    if ops.is_empty() || prefer.len() != ops.len() {
        return Err(FkmError::BadOperatorFamily(
            "need one preferred sign per operator".into(),
        ));
    }
    let n = ops[0].rows();
    for (i, op) in ops.iter().enumerate() {
        if !op.is_symmetric_involution() {
            return Err(FkmError::BadOperatorFamily(format!(
                "operator {i} is not a symmetric involution"
            )));
        }
        for (j, other) in ops.iter().enumerate().skip(i + 1) {
            if op.mul(other) != other.mul(op) {
                return Err(FkmError::BadOperatorFamily(format!(
                    "operators {i} and {j} do not commute"
                )));
            }
        }
    }
    for sign in prefer {
        if *sign != 1 && *sign != -1 {
            return Err(FkmError::BadOperatorFamily("signs must be +1 or -1".into()));
        }
    }

    fn descend(
        ops: &[ExactMatrix],
        prefer: &[i8],
        level: usize,
        space: &Subspace,
        signs: &mut Vec<i8>,
    ) -> Result<Option<Subspace>> {
        if space.dim() == 0 {
            return Ok(None);
        }
        if level == ops.len() {
            return Ok(Some(space.clone()));
        }
        for sign in [prefer[level], -prefer[level]] {
            let eig = involution_eigenspace(&ops[level], sign as i64)?;
            let cut = space.intersect(&eig)?;
            signs.push(sign);
            if let Some(found) = descend(ops, prefer, level + 1, &cut, signs)? {
                return Ok(Some(found));
            }
            signs.pop();
        }
        Ok(None)
    }

    let mut signs = Vec::new();
    let full = Subspace::full(n);
    match descend(ops, prefer, 0, &full, &mut signs)? {
        Some(space) => Ok((space, signs)),
        None => Err(FkmError::EmptyJointEigenspace),
    }
}

/// First basis vector of the joint eigenspace, as a primitive integer
/// vector, together with the realized signs.
pub fn special_eigenvector(
    ops: &[ExactMatrix],
    prefer: &[i8],
) -> Result<(Vec<Q>, Vec<i8>)> {
    let (space, signs) = special_eigenspace(ops, prefer)?;
    let v = vector::primitive_integer_vector(&space.basis()[0]);
    Ok((v, signs))
}

#[derive(Clone, Debug)]
pub struct ConditionA {
    /// Dimension of the intersection of all shape-operator kernels.
    pub dim: usize,
    pub kernel: Subspace,
    pub rounds: usize,
    pub stabilized: bool,
}

/// Kernel of the plus-side shape operator for the normal direction P x,
/// where P has coefficient vector `coeffs`: the span of Q P x over Q in P's
/// equator. Any nonzero coefficient vector works; scale drops out.
fn plus_kernel_span(
    s: &CliffordSystem,
    x: &[Q],
    coeffs: &[Q],
) -> Result<Subspace> {
    let p = s.combination(coeffs)?;
    let px = p.matvec(x);
    let ops = sigma_complement_ops(s, coeffs)?;
    let vectors: Vec<Vec<Q>> = ops.iter().map(|q| q.matvec(&px)).collect();
    Ok(Subspace::from_spanning(s.ambient_dim(), vectors))
}

/// Intersection of shape-operator kernels over the listed basis normals
/// P_i x. Used both by the stabilized search and by the four-normal test.
pub fn kernel_intersection_for_elements(
    s: &CliffordSystem,
    x: &[Q],
    indices: &[usize],
) -> Result<Subspace> {
    let mut acc = Subspace::full(s.ambient_dim());
    let k = s.m as usize + 1;
    for &i in indices {
        if i >= k {
            return Err(FkmError::IndexOutOfRange { index: i, limit: k });
        }
        let coeffs = vector::unit(k, i);
        acc = acc.intersect(&plus_kernel_span(s, x, &coeffs)?)?;
    }
    Ok(acc)
}

/// Dimension of the common kernel of all shape operators at a plus point:
/// intersect the kernels for the basis normals, then keep cutting with
/// seeded random directions until the dimension survives three rounds.
pub fn condition_a(
    s: &CliffordSystem,
    x: &FocalPoint,
    seed: u64,
) -> Result<ConditionA> {
    if x.side != FocalSide::Plus {
        return Err(FkmError::NotFocal("condition (A) is tested at plus points"));
    }
    x.verify(s)?;
    let k = s.m as usize + 1;
    let mut acc = kernel_intersection_for_elements(s, &x.x, &(0..k).collect::<Vec<_>>())?;
    let mut rounds = k;
    let mut stable = 0;
    let mut sampler = Sampler::new(seed);
    while stable < STABLE_ROUNDS && rounds < MAX_ROUNDS && acc.dim() > 0 {
        let coeffs = sampler.rational_vector(k);
        let cut = acc.intersect(&plus_kernel_span(s, &x.x, &coeffs)?)?;
        rounds += 1;
        if cut.dim() == acc.dim() {
            stable += 1;
        } else {
            stable = 0;
        }
        acc = cut;
    }
    Ok(ConditionA {
        dim: acc.dim(),
        stabilized: stable >= STABLE_ROUNDS || acc.dim() == 0,
        kernel: acc,
        rounds,
    })
}

/// Rank of {P_i P_j x : i < j}: the sigma invariant at a plus point.
pub fn sigma_plus(s: &CliffordSystem, x: &FocalPoint) -> Result<usize> {
    if x.side != FocalSide::Plus {
        return Err(FkmError::NotFocal("sigma on the plus side needs a plus point"));
    }
    x.verify(s)?;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let k = s.m as usize + 1;
    for i in 0..k {
        for j in i + 1..k {
            rows.push(s.matrices[j].matvec(&s.matrices[i].matvec(&x.x)));
        }
    }
    Ok(ExactMatrix::from_rows(rows).rank())
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaMinus {
    pub sigma: usize,
    pub tangent_dim: usize,
    /// Dimension of the intersection of the equator orbits of all normals.
    pub common_core_dim: usize,
    /// Dimension of the common kernel of all shape operators at y.
    pub min_kernel_dim: usize,
    /// Whether the common kernel has the full dimension m2.
    pub condition_a: bool,
    pub rounds: usize,
    pub stabilized: bool,
}

/// Sigma invariant at a minus point y with witness element P:
///   sigma = dim T_y - m1 - dim of the intersection over normals n of
///           span{Q n : Q in P's equator},
/// stabilized over the basis normals plus seeded random normal directions.
/// The same normal set also yields the common shape-operator kernel
///   {v in E+(P) : v ⊥ y, v ⊥ Q n for all Q, n},
/// whose dimension equals m2 exactly when all kernels coincide.
pub fn sigma_minus(
    s: &CliffordSystem,
    y: &FocalPoint,
    seed: u64,
) -> Result<SigmaMinus> {
    if y.side != FocalSide::Minus {
        return Err(FkmError::NotFocal("sigma on the minus side needs a minus point"));
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
    let ops = sigma_complement_ops(s, &coeffs)?;
    let normal_space = minus_normal_space(s, &y.x, &coeffs)?;
    let nbasis = normal_space.basis();
    if nbasis.is_empty() {
        return Err(FkmError::ZeroProjection);
    }
    let ambient = s.ambient_dim();

    let orbit = |n: &[Q]| -> Subspace {
        let vectors: Vec<Vec<Q>> = ops.iter().map(|q| q.matvec(n)).collect();
        Subspace::from_spanning(ambient, vectors)
    };

    let mut core = Subspace::full(ambient);
    let mut orbit_rows: Vec<Vec<Q>> = Vec::new();
    let mut used: Vec<Vec<Q>> = Vec::new();
    for n in nbasis {
        core = core.intersect(&orbit(n))?;
        used.push(n.clone());
    }
    let mut rounds = nbasis.len();
    let mut stable = 0;
    let mut sampler = Sampler::new(seed);
    while stable < STABLE_ROUNDS && rounds < MAX_ROUNDS && core.dim() > 0 {
        let c = sampler.rational_vector(nbasis.len());
        let mut n = vector::zeros(ambient);
        for (ck, b) in c.iter().zip(nbasis) {
            n = vector::add(&n, &vector::scale(b, ck));
        }
        if vector::is_zero(&n) {
            continue;
        }
        let cut = core.intersect(&orbit(&n))?;
        rounds += 1;
        if cut.dim() == core.dim() {
            stable += 1;
        } else {
            stable = 0;
        }
        core = cut;
        used.push(n);
    }
    for n in &used {
        for q in &ops {
            orbit_rows.push(q.matvec(n));
        }
    }

    // Tangent space at y: orthogonal to y and to the whole normal space.
    let mut rows = vec![y.x.clone()];
    rows.extend(nbasis.iter().cloned());
    let tangent = crate::exact::nullspace(&ExactMatrix::from_rows(rows));

    // Common kernel: E+(P) cut by y and by every equator orbit vector used.
    let p = s.combination(&coeffs)?;
    let eplus = involution_eigenspace(&p, 1)?;
    let mut kernel_rows = vec![y.x.clone()];
    kernel_rows.extend(orbit_rows);
    let constraints = crate::exact::nullspace(&ExactMatrix::from_rows(kernel_rows));
    let min_kernel = eplus.intersect(&constraints)?;

    let m1 = s.m1() as usize;
    let m2 = s.m2() as usize;
    Ok(SigmaMinus {
        sigma: tangent.dim() - m1 - core.dim(),
        tangent_dim: tangent.dim(),
        common_core_dim: core.dim(),
        min_kernel_dim: min_kernel.dim(),
        condition_a: min_kernel.dim() == m2,
        rounds,
        stabilized: stable >= STABLE_ROUNDS || core.dim() == 0,
    })
}

#[derive(Clone, Debug)]
pub struct ReconstructReport {
    pub reconstructed: Subspace,
    pub expected: Subspace,
    pub matches: bool,
    pub rounds: usize,
}

/// Rebuild E+(P) at a minus point from shape-operator kernels: the line
/// through y plus the span of the kernels over enough normal directions.
/// Only valid when m1 <= m2; otherwise the kernels are too small to fill
/// the eigenspace and the call reports the obstruction.
pub fn reconstruct_eplus(
    s: &CliffordSystem,
    y: &FocalPoint,
    seed: u64,
) -> Result<ReconstructReport> {
    if y.side != FocalSide::Minus {
        return Err(FkmError::NotFocal("reconstruction starts from a minus point"));
    }
    y.verify(s)?;
    let m1 = s.m1();
    let m2 = s.m2();
    if m1 > m2 {
        return Err(FkmError::Precondition(format!(
            "reconstruction needs m1 <= m2, got (m1, m2) = ({m1}, {m2}): \
             each kernel has dimension {m2} inside an eigenspace of dimension {}",
            m1 + m2 + 1
        )));
    }
    let coeffs = match &y.witness {
        Some(Witness::Element(p)) => p.coeffs().to_vec(),
        _ => {
            return Err(FkmError::Precondition(
                "minus point must carry its witness element".into(),
            ))
        }
    };
    let ops = sigma_complement_ops(s, &coeffs)?;
    let p = s.combination(&coeffs)?;
    let eplus = involution_eigenspace(&p, 1)?;
    let normal_space = minus_normal_space(s, &y.x, &coeffs)?;
    let nbasis = normal_space.basis();
    let ambient = s.ambient_dim();

    let kernel_for = |n: &[Q]| -> Result<Subspace> {
        let mut rows = vec![y.x.clone()];
        for q in &ops {
            rows.push(q.matvec(n));
        }
        let constraints = crate::exact::nullspace(&ExactMatrix::from_rows(rows));
        eplus.intersect(&constraints)
    };

    let mut acc = Subspace::from_spanning(ambient, vec![y.x.clone()]);
    let mut rounds = 0;
    for n in nbasis {
        acc = acc.sum(&kernel_for(n)?)?;
        rounds += 1;
    }
    let mut stable = 0;
    let mut sampler = Sampler::new(seed);
    while stable < STABLE_ROUNDS && rounds < MAX_ROUNDS && acc.dim() < eplus.dim() {
        let c = sampler.rational_vector(nbasis.len());
        let mut n = vector::zeros(ambient);
        for (ck, b) in c.iter().zip(nbasis) {
            n = vector::add(&n, &vector::scale(b, ck));
        }
        if vector::is_zero(&n) {
            continue;
        }
        let grown = acc.sum(&kernel_for(&n)?)?;
        rounds += 1;
        if grown.dim() == acc.dim() {
            stable += 1;
        } else {
            stable = 0;
        }
        acc = grown;
    }
    let matches = acc == eplus;
    Ok(ReconstructReport { reconstructed: acc, expected: eplus, matches, rounds })
}

#[derive(Clone, Debug, Serialize)]
pub struct NPlusReport {
    pub member: bool,
    /// Indices of the four elements and the sign of the eigenvalue, when a
    /// fixing product exists.
    pub witness: Option<([usize; 4], i8)>,
}

/// Search for four elements whose product fixes x up to sign. Finding one
/// certifies membership in the distinguished locus; for spans of four
/// elements the search is also exhaustive.
pub fn nplus_membership(s: &CliffordSystem, x: &FocalPoint) -> Result<NPlusReport> {
    if x.side != FocalSide::Plus {
        return Err(FkmError::NotFocal("membership test needs a plus point"));
    }
    x.verify(s)?;
    let k = s.m as usize + 1;
    if k < 4 {
        return Ok(NPlusReport { member: false, witness: None });
    }
    let neg: Vec<Q> = vector::neg(&x.x);
    for i in 0..k {
        let pi_x = s.matrices[i].matvec(&x.x);
        for j in i + 1..k {
            let pj = &s.matrices[j];
            let pij_x = pj.matvec(&pi_x);
            for a in j + 1..k {
                let pa = &s.matrices[a];
                let pija_x = pa.matvec(&pij_x);
                for b in a + 1..k {
                    let full = s.matrices[b].matvec(&pija_x);
                    if full == x.x {
                        return Ok(NPlusReport {
                            member: true,
                            // Applied right to left: the product is P_b P_a P_j P_i.
                            witness: Some(([b, a, j, i], 1)),
                        });
                    }
                    if full == neg {
                        return Ok(NPlusReport {
                            member: true,
                            witness: Some(([b, a, j, i], -1)),
                        });
                    }
                }
            }
        }
    }
    Ok(NPlusReport { member: false, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focal::points::mplus_point;
    use crate::system::{irreducible_system, sum_of_irreducibles, SphereElement};

    #[test]
    fn special_eigenvector_backtracks() {
        // P_0 and the product P_0 P_1 P_2 P_3 commute on the quaternionic
        // system; ask for an impossible sign pattern on (P_0, -P_0) to force
        // a flip.
        let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
        let p0 = s.matrices[0].clone();
        let neg_p0 = p0.neg();
        let (v, signs) = special_eigenvector(&[p0.clone(), neg_p0], &[1, 1]).unwrap();
        assert_eq!(signs, vec![1, -1]);
        assert_eq!(p0.matvec(&v), v);
    }

    #[test]
    fn special_eigenvector_rejects_noncommuting() {
        let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
        let fam = [s.matrices[0].clone(), s.matrices[1].clone()];
        assert!(matches!(
            special_eigenvector(&fam, &[1, 1]),
            Err(FkmError::BadOperatorFamily(_))
        ));
    }

    #[test]
    fn common_kernel_dimension_is_bounded_by_m1() {
        let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
        let p = SphereElement::basis(0, 4);
        let x = mplus_point(&s, &p, 0, 0).unwrap();
        let report = condition_a(&s, &x, 11).unwrap();
        assert!(report.stabilized);
        assert!(report.dim <= s.m1() as usize, "dim = {}", report.dim);
    }

    #[test]
    fn quaternionic_volume_eigenvector_satisfies_condition_a() {
        let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
        let vol = ExactMatrix::product_of(&[
            &s.matrices[0],
            &s.matrices[1],
            &s.matrices[2],
            &s.matrices[3],
        ]);
        let (v, _) = special_eigenvector(&[vol], &[1]).unwrap();
        let x = FocalPoint { side: FocalSide::Plus, x: v, witness: None };
        x.verify(&s).unwrap();
        let report = condition_a(&s, &x, 11).unwrap();
        assert!(report.stabilized);
        assert_eq!(report.dim, 3);
    }

    #[test]
    fn sigma_minus_on_small_system() {
        let s = sum_of_irreducibles(2, &[1, 1, 1]).unwrap();
        let p = SphereElement::basis(0, 3);
        let y = crate::focal::points::mminus_point(
            &s,
            &p,
            &vector::unit(s.ambient_dim(), 0),
        )
        .unwrap();
        let report = sigma_minus(&s, &y, 5).unwrap();
        assert!(report.stabilized);
        assert_eq!(report.tangent_dim, 7);
        assert!(report.sigma <= report.tangent_dim);
    }

    #[test]
    fn reconstruction_succeeds_when_kernels_are_large() {
        // (m1, m2) = (2, 3).
        let s = sum_of_irreducibles(2, &[1, 1, 1]).unwrap();
        let p = SphereElement::basis(0, 3);
        let y = crate::focal::points::mminus_point(
            &s,
            &p,
            &vector::unit(s.ambient_dim(), 0),
        )
        .unwrap();
        let report = reconstruct_eplus(&s, &y, 5).unwrap();
        assert!(report.matches, "reached dimension {}", report.reconstructed.dim());
    }

    #[test]
    fn reconstruction_reports_obstruction_when_m1_exceeds_m2() {
        // (m1, m2) = (5, 2).
        let s = irreducible_system(5);
        let p = SphereElement::basis(0, 6);
        let y = crate::focal::points::mminus_point(
            &s,
            &p,
            &vector::unit(s.ambient_dim(), 0),
        )
        .unwrap();
        assert!(matches!(
            reconstruct_eplus(&s, &y, 5),
            Err(FkmError::Precondition(_))
        ));
    }

    #[test]
    fn four_product_locus_is_proper() {
        // Among a handful of balanced coordinate points, at least one must
        // miss the locus, and any member must carry its witness.
        let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
        let p = SphereElement::basis(0, 4);
        let mut outside = 0;
        for (yi, ni) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let x = mplus_point(&s, &p, yi, ni).unwrap();
            let report = nplus_membership(&s, &x).unwrap();
            if report.member {
                assert!(report.witness.is_some());
            } else {
                outside += 1;
            }
        }
        assert!(outside > 0);
    }

    #[test]
    fn volume_eigenvector_is_in_the_four_product_locus() {
        let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
        let vol = ExactMatrix::product_of(&[
            &s.matrices[0],
            &s.matrices[1],
            &s.matrices[2],
            &s.matrices[3],
        ]);
        let (v, _) = special_eigenvector(&[vol], &[1]).unwrap();
        let x = FocalPoint { side: FocalSide::Plus, x: v, witness: None };
        let report = nplus_membership(&s, &x).unwrap();
        assert!(report.member);
        let (idx, _) = report.witness.unwrap();
        assert_eq!(idx, [3, 2, 1, 0]);
    }
}
