//! On R^16 the nine moments of the irreducible m = 8 system satisfy
//! sum <P_i x, x>^2 = <x, x>^2. Splitting the nine elements into
//! complementary subfamilies therefore yields quartics that are exact
//! negatives: the (4, 3) and (3, 4) geometries share one level set family.
//! The identity is special to this dimension; on R^32 it already fails.

use fkm::exact::vector::{self, Q};
use fkm::poly::FkmPolynomial;
use fkm::sample::Sampler;
use fkm::system::{irreducible_system, CliffordSystem};
use num_traits::Zero;

fn square_sum_gap(s: &CliffordSystem, x: &[Q]) -> Q {
    let poly = FkmPolynomial::new(s);
    let norm = vector::dot(x, x);
    let mut sum = Q::zero();
    for i in 0..s.matrices.len() {
        let mom = poly.moment(x, i);
        sum += &mom * &mom;
    }
    sum - &norm * &norm
}

fn main() {
    let s = irreducible_system(8);
    let mut sampler = Sampler::new(7);
    let exact = (0..50)
        .map(|_| sampler.rational_vector(s.ambient_dim()))
        .all(|x| square_sum_gap(&s, &x).is_zero());
    println!(
        "R^16, nine moments: square-sum identity holds at 50 rational points: {exact}"
    );
    assert!(exact);

    let front = CliffordSystem {
        m: 4,
        l: s.l,
        matrices: s.matrices[..5].to_vec(),
        summand_signs: vec![],
    };
    let back = CliffordSystem {
        m: 3,
        l: s.l,
        matrices: s.matrices[5..].to_vec(),
        summand_signs: vec![],
    };
    let fp = FkmPolynomial::new(&front);
    let bp = FkmPolynomial::new(&back);
    let x = sampler.rational_vector(s.ambient_dim());
    let (a, b) = (fp.eval(&x).unwrap(), bp.eval(&x).unwrap());
    let negates = a == -b.clone();
    println!("split 5 + 4: F_front(x) = {a}, F_back(x) = {b}, negatives: {negates}");
    assert!(negates);

    let wide = irreducible_system(9);
    let mut broken = 0;
    for _ in 0..20 {
        let x = sampler.rational_vector(wide.ambient_dim());
        if !square_sum_gap(&wide, &x).is_zero() {
            broken += 1;
        }
    }
    println!(
        "R^{}, ten moments: identity fails at {broken} of 20 rational points",
        wide.ambient_dim()
    );
    assert!(broken > 0);
}
