//! Symmetric Clifford systems: families P_0..P_m of symmetric matrices on
//! R^{2l} with P_i P_j + P_j P_i = 2 δ_ij Id, their direct sums, orientation
//! flips, and the trace invariant that separates geometric classes.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{FkmError, Result};
use crate::exact::matrix::ExactMatrix;
use crate::exact::vector::{self, Q};
use crate::rep::{irreducible_generators, CliffordRep};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliffordSystem {
    pub m: u32,
    /// Half the ambient dimension: the matrices act on R^{2l}.
    pub l: usize,
    /// m + 1 symmetric anticommuting involutions.
    pub matrices: Vec<ExactMatrix>,
    /// P_0-orientation choice per irreducible summand, when the system was
    /// assembled from irreducible pieces. Flipping P_0 negates every entry.
    pub summand_signs: Vec<i8>,
}

impl CliffordSystem {
    pub fn ambient_dim(&self) -> usize {
        2 * self.l
    }

    /// First multiplicity of the associated isoparametric family.
    pub fn m1(&self) -> i64 {
        self.m as i64
    }

    /// Second multiplicity l - m - 1; nonpositive values mark the
    /// degenerate families.
    pub fn m2(&self) -> i64 {
        self.l as i64 - self.m as i64 - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.m2() <= 0
    }

    /// Linear combination sum_i coeffs[i] * P_i, no normalization imposed.
    pub fn combination(&self, coeffs: &[Q]) -> Result<ExactMatrix> {
        if coeffs.len() != self.matrices.len() {
            return Err(FkmError::BadCoefficients);
        }
        let n = self.ambient_dim();
        let mut acc = ExactMatrix::zeros(n, n);
        for (c, p) in coeffs.iter().zip(&self.matrices) {
            if !c.is_zero() {
                acc = acc.add(&p.scale(c));
            }
        }
        Ok(acc)
    }

    /// Trace of P_0 P_1 ... P_m; its absolute value is the complete
    /// geometric invariant of the system.
    pub fn product_trace(&self) -> Q {
        let refs: Vec<&ExactMatrix> = self.matrices.iter().collect();
        ExactMatrix::product_of(&refs).trace()
    }

    /// Drops the last matrix, turning an m-system into an (m-1)-system on
    /// the same space. The dropped matrix is returned so callers keep an
    /// explicit extension element; a system produced this way is extendable
    /// by construction.
    pub fn restrict_last(&self) -> Result<(CliffordSystem, ExactMatrix)> {
        if self.m < 2 {
            return Err(FkmError::Precondition("cannot restrict below m = 1".into()));
        }
        let dropped = self.matrices.last().cloned().expect("m >= 2 has matrices");
        let mut matrices = self.matrices.clone();
        matrices.pop();
        Ok((
            CliffordSystem {
                m: self.m - 1,
                l: self.l,
                matrices,
                summand_signs: vec![],
            },
            dropped,
        ))
    }
}

/// Unit coefficient vector on the sphere of the span of P_0..P_m.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphereElement {
    #[serde(with = "vector::qvec_serde")]
    coeffs: Vec<Q>,
}

impl SphereElement {
    pub fn new(coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.is_empty() || !vector::norm_sq(&coeffs).is_one() {
            return Err(FkmError::BadCoefficients);
        }
        Ok(SphereElement { coeffs })
    }

    /// The basis element P_i as a sphere element.
    pub fn basis(i: usize, len: usize) -> Self {
        SphereElement { coeffs: vector::unit(len, i) }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn negated(&self) -> Self {
        SphereElement { coeffs: vector::neg(&self.coeffs) }
    }

    pub fn matrix(&self, s: &CliffordSystem) -> Result<ExactMatrix> {
        s.combination(&self.coeffs)
    }
}

/// Builds the standard system on R^{2 delta(m)} from a generator family:
/// P_0 (u, v) = (u, -v), P_1 (u, v) = (v, u), P_{1+i} (u, v) = (E_i v, -E_i u).
pub fn build_system(rep: &CliffordRep) -> CliffordSystem {
    let l = rep.dim;
    let id = ExactMatrix::identity(l);
    let zero = ExactMatrix::zeros(l, l);
    let mut matrices = Vec::with_capacity(rep.m as usize + 1);
    matrices.push(ExactMatrix::from_blocks(&id, &zero, &zero, &id.neg()));
    matrices.push(ExactMatrix::from_blocks(&zero, &id, &id, &zero));
    for e in &rep.generators {
        matrices.push(ExactMatrix::from_blocks(&zero, e, &e.neg(), &zero));
    }
    CliffordSystem { m: rep.m, l, matrices, summand_signs: vec![1] }
}

/// The irreducible system for a given m.
pub fn irreducible_system(m: u32) -> CliffordSystem {
    build_system(&irreducible_generators(m))
}

/// Block-diagonal join of two systems with the same m.
pub fn direct_sum(a: &CliffordSystem, b: &CliffordSystem) -> Result<CliffordSystem> {
    if a.m != b.m {
        return Err(FkmError::MismatchedSummands);
    }
    let matrices = a
        .matrices
        .iter()
        .zip(&b.matrices)
        .map(|(p, q)| p.direct_sum(q))
        .collect();
    let mut summand_signs = a.summand_signs.clone();
    summand_signs.extend(&b.summand_signs);
    Ok(CliffordSystem { m: a.m, l: a.l + b.l, matrices, summand_signs })
}

/// Negates P_0. This swaps the orientation of every summand and negates the
/// product trace (visible only when m ≡ 0 mod 4, the trace vanishes
/// otherwise).
pub fn flip_p0(s: &CliffordSystem) -> CliffordSystem {
    let mut matrices = s.matrices.clone();
    matrices[0] = matrices[0].neg();
    CliffordSystem {
        m: s.m,
        l: s.l,
        matrices,
        summand_signs: s.summand_signs.iter().map(|x| -x).collect(),
    }
}

/// Direct sum of k irreducible summands with the given orientations.
pub fn sum_of_irreducibles(m: u32, signs: &[i8]) -> Result<CliffordSystem> {
    if signs.is_empty() || signs.iter().any(|s| *s != 1 && *s != -1) {
        return Err(FkmError::BadCoefficients);
    }
    let plus = irreducible_system(m);
    let minus = flip_p0(&plus);
    let pick = |s: i8| if s == 1 { plus.clone() } else { minus.clone() };
    let mut acc = pick(signs[0]);
    for &s in &signs[1..] {
        acc = direct_sum(&acc, &pick(s))?;
    }
    Ok(acc)
}

/// The (8,7) system on R^32 obtained by dropping the last element of the
/// irreducible m = 9 system, together with that element. The product trace
/// is zero and the returned element extends the system back to m = 9.
pub fn indefinite_system_with_extension() -> (CliffordSystem, Vec<ExactMatrix>) {
    let nine = irreducible_system(9);
    let (eight, dropped) = nine.restrict_last().expect("m = 9 restricts");
    (eight, vec![dropped])
}

/// An (8,7) system on R^32 in the definite trace class: P_0 is replaced by
/// the product of the other eight elements, which pushes |trace| to its
/// maximum 32. Returns the system together with the two leftover elements
/// of the irreducible m = 9 family (the replaced first element and the
/// dropped ninth). Those two anticommute with each other and with
/// P_1..P_8, but commute with the product P_0.
pub fn definite_system_with_extension() -> (CliffordSystem, Vec<ExactMatrix>) {
    let nine = irreducible_system(9);
    let q = &nine.matrices;
    let middle: Vec<&ExactMatrix> = q[1..9].iter().collect();
    let mut matrices = vec![ExactMatrix::product_of(&middle)];
    matrices.extend_from_slice(&q[1..9]);
    let system = CliffordSystem { m: 8, l: nine.l, matrices, summand_signs: vec![] };
    (system, vec![q[0].clone(), q[9].clone()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SystemViolationKind {
    WrongShape,
    NotSymmetric,
    SquareNotIdentity,
    AnticommutatorNotZero,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SystemViolation {
    pub kind: SystemViolationKind,
    pub i: usize,
    pub j: usize,
}

/// Checks symmetry and P_i P_j + P_j P_i = 2 δ_ij Id; empty result = valid.
pub fn verify_system(s: &CliffordSystem) -> Vec<SystemViolation> {
    let mut out = Vec::new();
    let n = s.ambient_dim();
    for (i, p) in s.matrices.iter().enumerate() {
        if p.rows() != n || p.cols() != n {
            out.push(SystemViolation { kind: SystemViolationKind::WrongShape, i, j: i });
            continue;
        }
        if !p.is_symmetric() {
            out.push(SystemViolation { kind: SystemViolationKind::NotSymmetric, i, j: i });
        }
        if !p.mul(p).is_identity() {
            out.push(SystemViolation { kind: SystemViolationKind::SquareNotIdentity, i, j: i });
        }
    }
    for i in 0..s.matrices.len() {
        for j in i + 1..s.matrices.len() {
            let (a, b) = (&s.matrices[i], &s.matrices[j]);
            if a.rows() != n || b.rows() != n || a.cols() != n || b.cols() != n {
                continue;
            }
            if !a.mul(b).add(&b.mul(a)).is_zero() {
                out.push(SystemViolation {
                    kind: SystemViolationKind::AnticommutatorNotZero,
                    i,
                    j,
                });
            }
        }
    }
    out
}

/// One representative per geometric equivalence class of systems with k
/// irreducible summands.
#[derive(Debug, Clone)]
pub struct ClassRep {
    pub signs: Vec<i8>,
    pub abs_trace: Q,
    pub system: CliffordSystem,
}

/// For m ≡ 0 mod 4 the classes are separated by |Trace(P_0..P_m)| and there
/// are floor(k/2) + 1 of them; otherwise the class is unique.
pub fn enumerate_classes(m: u32, k: usize) -> Result<Vec<ClassRep>> {
    if k == 0 {
        return Err(FkmError::Precondition("need at least one summand".into()));
    }
    let sign_lists: Vec<Vec<i8>> = if m.is_multiple_of(4) {
        (0..=k / 2)
            .map(|j| {
                let mut signs = vec![1i8; k - j];
                signs.extend(std::iter::repeat_n(-1i8, j));
                signs
            })
            .collect()
    } else {
        vec![vec![1i8; k]]
    };
    sign_lists
        .into_iter()
        .map(|signs| {
            let system = sum_of_irreducibles(m, &signs)?;
            let abs_trace = system.product_trace().abs();
            Ok(ClassRep { signs, abs_trace, system })
        })
        .collect()
}
