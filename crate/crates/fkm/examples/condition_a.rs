//! Common kernels of the shape operators. Scripted eigenvector points carry
//! a kernel of the largest possible dimension; random points of the same
//! manifold carry none at all.

use fkm::focal::{condition_a, numeric};
use fkm::sample::Sampler;
use fkm::scenario::scenario_point;

fn main() {
    for scenario in ["condition-a-seven", "condition-a-three"] {
        let (s, _, x) = scenario_point(scenario, "x", 7).unwrap();
        let r = condition_a(&s, &x, 7).unwrap();
        println!(
            "{scenario}: kernel dimension {} at the eigenvector point ({} normal directions tried)",
            r.dim, r.rounds
        );

        let mut sampler = Sampler::new(7);
        let mut counts = std::collections::BTreeMap::new();
        for _ in 0..40 {
            let p = numeric::random_plus_point(&s, &mut sampler).unwrap();
            *counts.entry(numeric::condition_a_dim_f64(&s, &p)).or_insert(0u32) += 1;
        }
        let histogram: Vec<String> =
            counts.iter().map(|(d, c)| format!("d={d}: {c}")).collect();
        println!("  40 random points of the same manifold: {}", histogram.join(", "));
    }
}
