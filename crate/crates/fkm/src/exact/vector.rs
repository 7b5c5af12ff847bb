//! Helpers for dense vectors with exact rational entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// Rational from an integer pair. Panics on d = 0.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len());
    let mut acc = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn norm_sq(a: &[Q]) -> Q {
    dot(a, a)
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn to_f64(a: &[Q]) -> Vec<f64> {
    a.iter().map(q_to_f64).collect()
}

pub fn q_to_f64(x: &Q) -> f64 {
    // Good enough for the magnitudes that appear here; exact code never
    // round-trips through floats.
    let n = x.numer();
    let d = x.denom();
    bigint_to_f64(n) / bigint_to_f64(d)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

/// Clears denominators: returns (integer vector, common denominator) with
/// v = ints / den entrywise. The scale is the lcm of the denominators.
pub fn clear_denominators(v: &[Q]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (ints, den)
}

/// Divides the vector by the gcd of its entries, flipping sign so the first
/// nonzero entry is positive. Zero vectors pass through unchanged.
pub fn primitive_integer_vector(v: &[Q]) -> Vec<Q> {
    use num_integer::Integer;
    let (ints, _) = clear_denominators(v);
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let first_neg = ints.iter().find(|x| !x.is_zero()).map(Signed::is_negative);
    let sign = if first_neg == Some(true) { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|x| Q::from_integer(x / &g * &sign)).collect()
}

/// Serde adapter writing a rational vector as [[num, den], ...], matching
/// the matrix entry format. Attach with #[serde(with = "qvec_serde")].
pub mod qvec_serde {
    use super::Q;
    use num_traits::ToPrimitive;
    use serde::de::Error as DeError;
    use serde::ser::Error as SerError;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let pairs = v
            .iter()
            .map(|x| {
                let n = x.numer().to_i64().ok_or_else(|| S::Error::custom("entry overflow"))?;
                let d = x.denom().to_i64().ok_or_else(|| S::Error::custom("entry overflow"))?;
                Ok([n, d])
            })
            .collect::<Result<Vec<_>, S::Error>>()?;
        s.collect_seq(pairs)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let pairs = Vec::<[i64; 2]>::deserialize(d)?;
        if pairs.iter().any(|[_, den]| *den == 0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(pairs.iter().map(|[n, d]| super::q(*n, *d)).collect())
    }
}
