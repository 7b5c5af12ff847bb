//! Seeded deterministic sampling. Every randomized check threads a u64 seed
//! through one of these samplers and records it in its report, so reruns
//! are reproducible bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::vector::{self, Q};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Q {
        vector::q(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=8))
    }

    /// A rational vector that is not identically zero.
    pub fn rational_vector(&mut self, n: usize) -> Vec<Q> {
        loop {
            let v: Vec<Q> = (0..n).map(|_| self.rational()).collect();
            if !vector::is_zero(&v) {
                return v;
            }
        }
    }

    /// Exact unit vector via stereographic projection of a small rational
    /// point: (2a, 1 - ‖a‖²) / (1 + ‖a‖²), with the distinguished coordinate
    /// moved to a random slot.
    pub fn unit_rational_vector(&mut self, n: usize) -> Vec<Q> {
        assert!(n >= 1);
        if n == 1 {
            return vec![vector::qi(if self.rng.gen::<bool>() { 1 } else { -1 })];
        }
        let a: Vec<Q> = (0..n - 1)
            .map(|_| vector::q(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=4)))
            .collect();
        let s = vector::norm_sq(&a);
        let denom = (&s + vector::qi(1)).recip();
        let mut c: Vec<Q> = a.iter().map(|x| x * vector::qi(2) * &denom).collect();
        c.push((vector::qi(1) - &s) * &denom);
        let slot = self.rng.gen_range(0..n);
        let last = n - 1;
        c.swap(slot, last);
        c
    }

    pub fn unit_f64_vector(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.gaussian()).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                return v.iter().map(|x| x / norm).collect();
            }
        }
    }

    fn gaussian(&mut self) -> f64 {
        let u1: f64 = self.rng.gen::<f64>().max(1e-12);
        let u2: f64 = self.rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn f64_in(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..10 {
            assert_eq!(a.rational(), b.rational());
        }
        assert_eq!(a.unit_f64_vector(5), b.unit_f64_vector(5));
    }

    #[test]
    fn stereographic_vectors_are_unit() {
        let mut s = Sampler::new(3);
        for n in [1usize, 2, 5, 9] {
            for _ in 0..5 {
                let v = s.unit_rational_vector(n);
                assert!(vector::norm_sq(&v).is_one());
            }
        }
    }
}
