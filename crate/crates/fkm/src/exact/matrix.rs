//! Dense matrices over arbitrary-precision rationals.
//!
//! The geometric layers only ever need exact arithmetic on matrices whose
//! entries stay small (generators are signed permutations, scenario vectors
//! are short integer combinations), so multiplication carries a fast integer
//! path and falls back to generic rational arithmetic otherwise.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::ser::Error as SerError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FkmError, Result};
use crate::exact::vector::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    /// Row-major entries, length rows * cols.
    entries: Vec<Q>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| vector::qi(x)).collect()).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Q {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|x| x * c)
    }

    pub fn map(&self, f: impl Fn(&Q) -> Q) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn matvec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows).map(|i| vector::dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        if let (Some(a), Some(b)) = (self.as_small_ints(), other.as_small_ints()) {
            if let Some(m) = mul_int(&a, &b, self.rows, self.cols, other.cols) {
                return m;
            }
        }
        let bt = other.transpose();
        Self::from_fn(self.rows, other.cols, |i, j| vector::dot(self.row(i), bt.row(j)))
    }

    /// Left-to-right product of a nonempty list of square matrices.
    pub fn product_of(ms: &[&ExactMatrix]) -> ExactMatrix {
        let mut acc = ms[0].clone();
        for m in &ms[1..] {
            acc = acc.mul(m);
        }
        acc
    }

    pub fn trace(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let mut t = Q::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..=i).all(|j| *self.at(i, j) == -self.at(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self.at(i, j).is_one() } else { self.at(i, j).is_zero() }
                })
            })
    }

    /// Some(c) when the matrix equals c * Id.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<Q> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.at(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &c } else { &Q::zero() };
                if self.at(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Checks P = Pᵀ and P² = Id.
    pub fn is_symmetric_involution(&self) -> bool {
        self.is_symmetric() && self.mul(self).is_identity()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        *m.at_mut(i * other.rows + p, j * other.cols + q) = a * other.at(p, q);
                    }
                }
            }
        }
        m
    }

    /// Assembles [[a, b], [c, d]] from equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        for m in [a, b, c, d] {
            assert_eq!((m.rows, m.cols), (n, n), "blocks must be square and equal");
        }
        Self::from_fn(2 * n, 2 * n, |i, j| {
            let block = match (i < n, j < n) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            block.at(i % n, j % n).clone()
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *m.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        m
    }

    /// A * self * Aᵀ.
    pub fn conjugate_by(&self, a: &Self) -> Self {
        a.mul(self).mul(&a.transpose())
    }

    /// Rank by fraction-free elimination on the denominator-cleared matrix.
    pub fn rank(&self) -> usize {
        let cleared: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| vector::clear_denominators(self.row(i)).0)
            .collect();
        integer_rank(cleared)
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| vector::q_to_f64(self.at(i, j)))
    }

    fn as_small_ints(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|x| if x.denom().is_one() { x.numer().to_i64() } else { None })
            .collect()
    }
}

fn mul_int(a: &[i64], b: &[i64], n: usize, k: usize, m: usize) -> Option<ExactMatrix> {
    let mut out = vec![0i128; n * m];
    for i in 0..n {
        for l in 0..k {
            let av = a[i * k + l] as i128;
            if av == 0 {
                continue;
            }
            for j in 0..m {
                let bv = b[l * m + j] as i128;
                if bv != 0 {
                    out[i * m + j] = out[i * m + j].checked_add(av.checked_mul(bv)?)?;
                }
            }
        }
    }
    Some(ExactMatrix {
        rows: n,
        cols: m,
        entries: out.into_iter().map(|x| Q::from_integer(BigInt::from(x))).collect(),
    })
}

/// Rank of an integer matrix via single-step fraction-free (Bareiss)
/// elimination. Rows are consumed; divisions are exact.
fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Serialized shape: {"rows": r, "cols": c, "entries": [[num, den], ...]}
/// in row-major order. Entries are limited to i64 numerators/denominators,
/// which covers every artifact this crate emits.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[i64; 2]>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .entries
            .iter()
            .map(|x| {
                let n = x.numer().to_i64().ok_or_else(|| S::Error::custom("entry overflow"))?;
                let d = x.denom().to_i64().ok_or_else(|| S::Error::custom("entry overflow"))?;
                Ok([n, d])
            })
            .collect::<std::result::Result<Vec<_>, S::Error>>()?;
        MatrixJson { rows: self.rows, cols: self.cols, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(D::Error::custom("entry count does not match rows * cols"));
        }
        if raw.entries.iter().any(|[_, den]| *den == 0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(ExactMatrix {
            rows: raw.rows,
            cols: raw.cols,
            entries: raw.entries.iter().map(|[n, d]| vector::q(*n, *d)).collect(),
        })
    }
}

/// Column space of (Id + sign * P) for a symmetric involution P, i.e. the
/// eigenspace of P for the eigenvalue `sign`.
pub fn involution_eigenspace(p: &ExactMatrix, sign: i64) -> Result<crate::exact::Subspace> {
    if !(sign == 1 || sign == -1) {
        return Err(FkmError::Precondition("eigenvalue sign must be +1 or -1".into()));
    }
    if !p.is_symmetric_involution() {
        return Err(FkmError::NotInvolution(format!("{}x{} matrix", p.rows(), p.cols())));
    }
    let proj = ExactMatrix::identity(p.rows()).add(&p.scale(&vector::qi(sign)));
    Ok(crate::exact::Subspace::from_spanning(
        p.rows(),
        (0..p.cols()).map(|j| proj.column(j)).collect(),
    ))
}
