//! Rational subspaces kept in reduced row echelon form.
//!
//! The RREF basis is a canonical representative, so subspace equality is
//! plain structural equality and intersections/sums stay exact.

use num_traits::Zero;

use crate::error::{FkmError, Result};
use crate::exact::matrix::ExactMatrix;
use crate::exact::vector::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// RREF rows, pivots normalized to 1, no zero rows.
    basis: Vec<Vec<Q>>,
}

/// Reduces rows in place to RREF and returns the pivot columns.
/// Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        rows[r] = vector::scale(&rows[r], &inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                rows[i] = vector::sub(&rows[i], &vector::scale(&rows[r], &f));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| vector::unit(ambient, i)).collect(),
        }
    }

    pub fn from_spanning(ambient: usize, vecs: Vec<Vec<Q>>) -> Self {
        assert!(vecs.iter().all(|v| v.len() == ambient), "spanning vector length mismatch");
        let mut rows: Vec<Vec<Q>> = vecs.into_iter().filter(|v| !vector::is_zero(v)).collect();
        rref(&mut rows);
        Subspace { ambient, basis: rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(FkmError::DimensionMismatch(format!(
                "subspaces live in different ambients ({} vs {})",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Ok(Subspace::from_spanning(self.ambient, vecs))
    }

    /// Intersection via the nullspace of [Uᵀ | -Vᵀ]: a combination of the
    /// U-basis equals a combination of the V-basis exactly on the kernel.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let p = self.dim();
        let q = other.dim();
        let stacked = ExactMatrix::from_fn(self.ambient, p + q, |i, j| {
            if j < p {
                self.basis[j][i].clone()
            } else {
                -&other.basis[j - p][i]
            }
        });
        let kernel = nullspace(&stacked);
        let vecs = kernel
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = vector::zeros(self.ambient);
                for (j, c) in coeffs[..p].iter().enumerate() {
                    if !c.is_zero() {
                        v = vector::add(&v, &vector::scale(&self.basis[j], c));
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_spanning(self.ambient, vecs))
    }

    /// Orthogonal complement for the standard inner product.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        nullspace(&ExactMatrix::from_rows(self.basis.clone()))
    }

    pub fn contains_vector(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("RREF row is nonzero");
            if !w[pivot].is_zero() {
                let f = w[pivot].clone();
                w = vector::sub(&w, &vector::scale(row, &f));
            }
        }
        vector::is_zero(&w)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// First basis vector rescaled to a primitive integer vector, if any.
    pub fn sample_vector(&self) -> Option<Vec<Q>> {
        self.basis.first().map(|v| vector::primitive_integer_vector(v))
    }
}

/// Right kernel {x : Mx = 0} as a subspace of the column-index space.
pub fn nullspace(m: &ExactMatrix) -> Subspace {
    let cols = m.cols();
    let mut rows = m.row_vecs();
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vector::zeros(cols);
        v[free] = vector::qi(1);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&rows[r][free];
        }
        basis.push(v);
    }
    Subspace::from_spanning(cols, basis)
}

/// Span of the matrix columns.
pub fn column_space(m: &ExactMatrix) -> Subspace {
    Subspace::from_spanning(m.rows(), (0..m.cols()).map(|j| m.column(j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::involution_eigenspace;
    use crate::exact::vector::{q, qi, unit};

    #[test]
    fn rref_canonicalizes_spanning_sets() {
        let a = Subspace::from_spanning(3, vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(2), qi(4), qi(6)],
            vec![qi(0), qi(1), qi(1)],
        ]);
        let b = Subspace::from_spanning(3, vec![
            vec![qi(1), qi(0), qi(1)],
            vec![qi(0), qi(3), qi(3)],
        ]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let xy = Subspace::from_spanning(3, vec![unit(3, 0), unit(3, 1)]);
        let yz = Subspace::from_spanning(3, vec![unit(3, 1), unit(3, 2)]);
        let meet = xy.intersect(&yz).unwrap();
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains_vector(&unit(3, 1)));
    }

    #[test]
    fn grassmann_dimension_identity() {
        let u = Subspace::from_spanning(4, vec![
            vec![qi(1), qi(1), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(1), qi(-2)],
        ]);
        let v = Subspace::from_spanning(4, vec![
            vec![qi(1), qi(1), qi(1), qi(-2)],
            vec![qi(1), qi(-1), qi(0), qi(0)],
        ]);
        let s = u.sum(&v).unwrap();
        let m = u.intersect(&v).unwrap();
        assert_eq!(s.dim() + m.dim(), u.dim() + v.dim());
    }

    #[test]
    fn complement_splits_ambient() {
        let u = Subspace::from_spanning(5, vec![
            vec![q(1, 2), qi(0), qi(1), qi(0), qi(3)],
            vec![qi(0), qi(1), qi(1), qi(1), qi(0)],
        ]);
        let c = u.orthogonal_complement();
        assert_eq!(u.dim() + c.dim(), 5);
        assert_eq!(u.intersect(&c).unwrap().dim(), 0);
    }

    #[test]
    fn involution_eigenspaces_split_ambient() {
        let p = ExactMatrix::from_int_rows(&[
            vec![0, 1, 0],
            vec![1, 0, 0],
            vec![0, 0, -1],
        ]);
        let plus = involution_eigenspace(&p, 1).unwrap();
        let minus = involution_eigenspace(&p, -1).unwrap();
        assert_eq!(plus.dim(), 1);
        assert_eq!(minus.dim(), 2);
        assert_eq!(plus.sum(&minus).unwrap().dim(), 3);
        assert_eq!(plus.intersect(&minus).unwrap().dim(), 0);
        let not_involution = ExactMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(involution_eigenspace(&not_involution, 1).is_err());
    }

    #[test]
    fn nullspace_matches_rank() {
        let m = ExactMatrix::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = nullspace(&m);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(vector::is_zero(&m.matvec(v)));
        }
        assert_eq!(m.rank() + k.dim(), 3);
    }
}
