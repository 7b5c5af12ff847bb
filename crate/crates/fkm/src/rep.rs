//! Representations of Clifford algebras by skew-symmetric orthogonal
//! matrices: E_i E_j + E_j E_i = -2 δ_ij Id on R^{delta(m)}.
//!
//! Generators for small m come from left multiplication by the imaginary
//! units of C, H and O; larger m is reached by tensoring with a fixed
//! representation on R^16, which multiplies the dimension by 16 per step
//! of 8 in m.

use serde::{Deserialize, Serialize};

use crate::exact::matrix::ExactMatrix;
use crate::exact::vector::qi;

/// Dimension of the irreducible representation attached to m generators
/// P_0..P_m downstream, i.e. one more than the Clifford generator count.
pub fn delta(m: u32) -> u64 {
    assert!(m >= 1, "delta is defined for m >= 1");
    const BASE: [u64; 8] = [1, 2, 4, 4, 8, 8, 8, 8];
    let mut m0 = m;
    let mut factor = 1u64;
    while m0 > 8 {
        m0 -= 8;
        factor *= 16;
    }
    BASE[(m0 - 1) as usize] * factor
}

/// A family of Clifford generators acting on R^dim.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliffordRep {
    pub m: u32,
    pub dim: usize,
    /// m - 1 generators E_1..E_{m-1}.
    pub generators: Vec<ExactMatrix>,
}

/// Multiplication table of a Cayley-Dickson algebra of dimension 2^levels:
/// table[p][q] = (sign, r) with e_p * e_q = sign * e_r.
fn cayley_dickson_table(levels: usize) -> Vec<Vec<(i64, usize)>> {
    let mut table = vec![vec![(1i64, 0usize)]];
    for _ in 0..levels {
        let n = table.len();
        // Conjugation negates every imaginary unit at each level.
        let conj = |p: usize| if p == 0 { 1i64 } else { -1i64 };
        let mut next = vec![vec![(0i64, 0usize); 2 * n]; 2 * n];
        for p in 0..2 * n {
            for q in 0..2 * n {
                // (a, b)(c, d) = (ac - d̄ b, d a + b c̄)
                next[p][q] = match (p < n, q < n) {
                    (true, true) => table[p][q],
                    (true, false) => {
                        let (s, r) = table[q - n][p];
                        (s, r + n)
                    }
                    (false, true) => {
                        let (s, r) = table[p - n][q];
                        (s * conj(q), r + n)
                    }
                    (false, false) => {
                        let (s, r) = table[q - n][p - n];
                        (-s * conj(q - n), r)
                    }
                };
            }
        }
        table = next;
    }
    table
}

/// Matrix of left multiplication by the basis unit e_p.
fn left_mult(table: &[Vec<(i64, usize)>], p: usize) -> ExactMatrix {
    let n = table.len();
    let mut m = ExactMatrix::zeros(n, n);
    for (q, &(sign, r)) in table[p].iter().enumerate() {
        *m.at_mut(r, q) = qi(sign);
    }
    m
}

/// Eight anticommuting complex structures on R^16, assembled from the seven
/// octonion left multiplications plus the block swap.
fn generators_on_r16() -> Vec<ExactMatrix> {
    let table = cayley_dickson_table(3);
    let id = ExactMatrix::identity(8);
    let zero = ExactMatrix::zeros(8, 8);
    let mut gens: Vec<ExactMatrix> = (1..8)
        .map(|p| {
            let e = left_mult(&table, p);
            ExactMatrix::from_blocks(&zero, &e, &e, &zero)
        })
        .collect();
    gens.push(ExactMatrix::from_blocks(&zero, &id, &id.neg(), &zero));
    gens
}

/// Irreducible generator family for the given m. Irreducibility is certified
/// by the dimension: the matrices act on R^{delta(m)}.
pub fn irreducible_generators(m: u32) -> CliffordRep {
    assert!(m >= 1);
    let dim = delta(m) as usize;
    if m <= 8 {
        let generators = match m {
            1 => vec![],
            2 => {
                let table = cayley_dickson_table(1);
                vec![left_mult(&table, 1)]
            }
            3 | 4 => {
                let table = cayley_dickson_table(2);
                (1..m as usize).map(|p| left_mult(&table, p)).collect()
            }
            _ => {
                let table = cayley_dickson_table(3);
                (1..m as usize).map(|p| left_mult(&table, p)).collect()
            }
        };
        return CliffordRep { m, dim, generators };
    }

    // m > 8: tensor the (m - 8) family with the R^16 family. With
    // w = f_1 ... f_8 (symmetric, w^2 = Id, anticommuting with each f_j),
    // the matrices E_i ⊗ w and Id ⊗ f_j generate the larger family.
    let base = irreducible_generators(m - 8);
    let f = generators_on_r16();
    let refs: Vec<&ExactMatrix> = f.iter().collect();
    let w = ExactMatrix::product_of(&refs);
    let id_base = ExactMatrix::identity(base.dim);
    let mut generators: Vec<ExactMatrix> =
        base.generators.iter().map(|e| e.kron(&w)).collect();
    generators.extend(f.iter().map(|fj| id_base.kron(fj)));
    CliffordRep { m, dim, generators }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RepViolationKind {
    WrongShape,
    NotSkew,
    NotOrthogonal,
    SquareNotMinusIdentity,
    AnticommutatorNotZero,
}

/// A violated generator identity; i and j are generator indices (j = i for
/// the unary checks).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RepViolation {
    pub kind: RepViolationKind,
    pub i: usize,
    pub j: usize,
}

/// Checks skewness, orthogonality, squares and anticommutators.
/// An empty list means the family is a valid representation.
pub fn verify_rep(rep: &CliffordRep) -> Vec<RepViolation> {
    let mut out = Vec::new();
    let n = rep.dim;
    let id = ExactMatrix::identity(n);
    let minus_id = id.neg();
    for (i, e) in rep.generators.iter().enumerate() {
        if e.rows() != n || e.cols() != n {
            out.push(RepViolation { kind: RepViolationKind::WrongShape, i, j: i });
            continue;
        }
        if !e.is_skew() {
            out.push(RepViolation { kind: RepViolationKind::NotSkew, i, j: i });
        }
        if e.transpose().mul(e) != id {
            out.push(RepViolation { kind: RepViolationKind::NotOrthogonal, i, j: i });
        }
        if e.mul(e) != minus_id {
            out.push(RepViolation { kind: RepViolationKind::SquareNotMinusIdentity, i, j: i });
        }
    }
    for i in 0..rep.generators.len() {
        for j in i + 1..rep.generators.len() {
            let (a, b) = (&rep.generators[i], &rep.generators[j]);
            if a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n {
                continue;
            }
            if !a.mul(b).add(&b.mul(a)).is_zero() {
                out.push(RepViolation { kind: RepViolationKind::AnticommutatorNotZero, i, j });
            }
        }
    }
    out
}
