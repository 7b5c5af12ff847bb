//! Randomized structural properties: the identities that must survive any
//! choice of family, sign pattern, sample point, or change of basis.

use fkm::exact::vector::{self, Q};
use fkm::exact::{ExactMatrix, Subspace};
use fkm::focal::{sigma_plus, special_eigenvector, FocalPoint, FocalSide};
use fkm::poly::FkmPolynomial;
use fkm::sample::Sampler;
use fkm::system::{
    irreducible_system, sum_of_irreducibles, verify_system, CliffordSystem,
};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=8).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn rational_vec(len: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(rational(), len)
}

fn small_family() -> impl Strategy<Value = (u32, Vec<i8>)> {
    (1u32..=5, 1usize..=2, prop::collection::vec(prop::bool::ANY, 2)).prop_map(
        |(m, k, flips)| {
            let signs: Vec<i8> =
                (0..k).map(|i| if flips[i] { -1 } else { 1 }).collect();
            (m, signs)
        },
    )
}

/// Exact rotation in the (i, j) coordinate plane built on the 3-4-5 triangle.
fn givens(n: usize, i: usize, j: usize) -> ExactMatrix {
    let mut g = ExactMatrix::identity(n);
    let c = Q::new(3.into(), 5.into());
    let s = Q::new(4.into(), 5.into());
    *g.at_mut(i, i) = c.clone();
    *g.at_mut(j, j) = c;
    *g.at_mut(i, j) = -s.clone();
    *g.at_mut(j, i) = s;
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn clifford_identities_hold_for_any_sign_pattern((m, signs) in small_family()) {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        prop_assert!(verify_system(&s).is_empty());
        prop_assert_eq!(s.matrices.len(), m as usize + 1);
        prop_assert_eq!(s.m2(), s.l as i64 - m as i64 - 1);
    }

    #[test]
    fn conjugation_preserves_the_whole_package(
        (m, signs) in small_family(),
        plane in (0usize..4, 4usize..8),
        x_seed in rational_vec(16),
    ) {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        let n = s.ambient_dim();
        let (i, j) = (plane.0 % n, plane.1 % n);
        prop_assume!(i != j);
        let g = givens(n, i, j);
        let gt = g.transpose();
        let rotated = CliffordSystem {
            m: s.m,
            l: s.l,
            matrices: s.matrices.iter().map(|p| g.mul(p).mul(&gt)).collect(),
            summand_signs: s.summand_signs.clone(),
        };
        prop_assert!(verify_system(&rotated).is_empty());
        prop_assert_eq!(rotated.product_trace(), s.product_trace());

        let x: Vec<Q> = x_seed.iter().cycle().take(n).cloned().collect();
        prop_assume!(!vector::is_zero(&x));
        let (grad_res, lap_res) =
            FkmPolynomial::new(&rotated).identity_residuals(&x).unwrap();
        prop_assert!(grad_res.is_zero());
        prop_assert!(lap_res.is_zero());

        // the polynomial itself just gets carried along: F'(Gx) = F(x)
        let gx = g.matvec(&x);
        prop_assert_eq!(
            FkmPolynomial::new(&rotated).eval(&gx).unwrap(),
            FkmPolynomial::new(&s).eval(&x).unwrap()
        );
    }

    #[test]
    fn span_pairing_identity(
        (m, signs) in small_family(),
        x_seed in rational_vec(16),
        pick in (0usize..6, 0usize..6),
    ) {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        let n = s.ambient_dim();
        let k = s.matrices.len();
        let (a, b) = (pick.0 % k, pick.1 % k);
        let x: Vec<Q> = x_seed.iter().cycle().take(n).cloned().collect();
        prop_assume!(!vector::is_zero(&x));

        let pa = &s.matrices[a];
        let pb = &s.matrices[b];
        let lhs = vector::dot(&pa.matvec(&x), &pb.matvec(&x));
        let inner = pa.mul(pb).trace() / vector::qi(n as i64);
        prop_assert_eq!(lhs, inner * vector::dot(&x, &x));
    }

    #[test]
    fn moment_sum_is_invariant_under_the_sphere_action(
        (m, signs) in small_family(),
        x_seed in rational_vec(16),
        pick in 0usize..6,
    ) {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        let n = s.ambient_dim();
        let x: Vec<Q> = x_seed.iter().cycle().take(n).cloned().collect();
        prop_assume!(!vector::is_zero(&x));
        let poly = FkmPolynomial::new(&s);

        let moment_sum = |y: &[Q]| -> Q {
            (0..s.matrices.len())
                .map(|i| {
                    let v = poly.moment(y, i);
                    &v * &v
                })
                .sum()
        };
        let px = s.matrices[pick % s.matrices.len()].matvec(&x);
        prop_assert_eq!(moment_sum(&px), moment_sum(&x));
    }

    #[test]
    fn sigma_ignores_scaling(scale in (1i64..=20, 1i64..=9)) {
        let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
        let q = &s.matrices;
        let vol = ExactMatrix::product_of(&[&q[0], &q[1], &q[2], &q[3]]);
        let (x, _) = special_eigenvector(std::slice::from_ref(&vol), &[1]).unwrap();
        let base = FocalPoint { side: FocalSide::Plus, x: x.clone(), witness: None };
        let c = Q::new(scale.0.into(), scale.1.into());
        let scaled = FocalPoint {
            side: FocalSide::Plus,
            x: x.iter().map(|v| v * &c).collect(),
            witness: None,
        };
        prop_assert_eq!(
            sigma_plus(&s, &base).unwrap(),
            sigma_plus(&s, &scaled).unwrap()
        );
    }

    #[test]
    fn grassmann_dimension_formula(
        rows_a in prop::collection::vec(rational_vec(6), 1..4),
        rows_b in prop::collection::vec(rational_vec(6), 1..4),
    ) {
        let a = Subspace::from_spanning(6, rows_a);
        let b = Subspace::from_spanning(6, rows_b);
        let meet = a.intersect(&b).unwrap();
        let join = a.sum(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), join.dim() + meet.dim());
    }

    #[test]
    fn sphere_values_stay_in_the_unit_interval(
        (m, signs) in small_family(),
        seed in 0u64..1000,
    ) {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        let poly = FkmPolynomial::new(&s);
        let mut sampler = Sampler::new(seed);
        let x = sampler.unit_f64_vector(s.ambient_dim());
        let f = poly.sphere_value_f64(&x);
        prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&f), "f = {f}");
    }

    #[test]
    fn basis_products_alternate_symmetry_by_length(
        (m, signs) in (3u32..=5, Just(vec![1i8, 1])),
        r in 1usize..=5,
    ) {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        prop_assume!(r <= s.matrices.len());
        let chosen: Vec<&ExactMatrix> = s.matrices.iter().take(r).collect();
        let prod = ExactMatrix::product_of(&chosen);
        let symmetric = matches!(r % 4, 0 | 1);
        prop_assert_eq!(prod.is_symmetric(), symmetric);
        prop_assert_eq!(prod.is_skew(), !symmetric);
    }
}

/// Nine moments squared sum to the squared norm on R^16, and that is where
/// the coincidence stops: the ten-element family on R^32 misses it already
/// at small rational points.
#[test]
fn square_sum_identity_fails_beyond_the_coincidence() {
    let s = irreducible_system(9);
    assert_eq!(s.ambient_dim(), 32);
    let poly = FkmPolynomial::new(&s);
    let mut sampler = Sampler::new(1);
    for _ in 0..20 {
        let x = sampler.rational_vector(32);
        let norm = vector::dot(&x, &x);
        let sum: Q = (0..s.matrices.len())
            .map(|i| {
                let v = poly.moment(&x, i);
                &v * &v
            })
            .sum();
        if sum != &norm * &norm {
            return;
        }
    }
    panic!("the ten-element family satisfied the square-sum identity at 20 random points");
}
