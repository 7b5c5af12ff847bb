//! The quartic F(x) = |x|^4 - 2 sum <P_i x, x>^2 satisfies
//!
//!   |grad F|^2 = 16 <x,x>^3        delta F = 8 (m2 - m1) <x,x>
//!
//! as polynomial identities. Rational sample points make the check exact:
//! no epsilon appears anywhere in this file.

use fkm::poly::FkmPolynomial;
use fkm::sample::Sampler;
use fkm::system::sum_of_irreducibles;
use num_traits::Zero;

fn main() {
    let mut sampler = Sampler::new(7);
    for (m, signs) in [(2, vec![1, 1]), (3, vec![1, 1]), (4, vec![1, -1]), (9, vec![1])] {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        let poly = FkmPolynomial::new(&s);
        let mut checked = 0;
        for _ in 0..25 {
            let x = sampler.rational_vector(s.ambient_dim());
            let (grad_res, lap_res) = poly.identity_residuals(&x).unwrap();
            assert!(grad_res.is_zero(), "gradient-norm identity failed");
            assert!(lap_res.is_zero(), "laplacian identity failed");
            checked += 1;
        }
        println!(
            "m={m} k={}: both identities exact at {checked} rational points on R^{}",
            signs.len(),
            s.ambient_dim()
        );
    }
}
