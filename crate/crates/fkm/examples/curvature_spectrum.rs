//! Principal curvatures of the level hypersurfaces. Each level carries four
//! eigenvalue clusters sitting on the lattice cot(t + k pi/4), with
//! multiplicities alternating between the two invariants of the family.

use fkm::focal::{level_point, shape_spectrum};
use fkm::pipeline::collect_plus_points;
use fkm::system::{sum_of_irreducibles, SphereElement};

fn main() {
    let s = sum_of_irreducibles(3, &[1, 1]).unwrap();
    println!(
        "(m1, m2) = ({}, {}) on R^{}",
        s.m1(),
        s.m2(),
        s.ambient_dim()
    );
    let base = collect_plus_points(&s, 1).unwrap().remove(0);
    let p = SphereElement::basis(0, s.matrices.len());

    for level in [-0.8, -0.3, 0.0, 0.3, 0.8] {
        let pt = level_point(&s, &base, &p, level).unwrap();
        let rep = shape_spectrum(&s, &pt).unwrap();
        let clusters: Vec<String> = rep
            .clusters
            .iter()
            .map(|(v, mult)| format!("{v:>8.4} (x{mult})"))
            .collect();
        println!(
            "level {level:>5.2}  t = {:.4}  [{}]  max err {:.1e}",
            rep.t,
            clusters.join(", "),
            rep.max_value_error
        );
        assert!(rep.multiplicities_match);
    }
}
