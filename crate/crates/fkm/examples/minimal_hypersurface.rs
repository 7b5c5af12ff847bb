//! Each family contains exactly one minimal level hypersurface: the mean
//! curvature changes sign once as the level runs between the two focal
//! values. Found by bisection, confirmed by a traceless shape operator.

use fkm::focal::{level_point, minimal_level, shape_spectrum};
use fkm::pipeline::collect_plus_points;
use fkm::system::{irreducible_system, sum_of_irreducibles, SphereElement};

fn main() {
    let fleet = [
        sum_of_irreducibles(1, &[1, 1, 1, 1]).unwrap(),
        sum_of_irreducibles(3, &[1, 1]).unwrap(),
        irreducible_system(9),
    ];
    for s in fleet {
        let (m1, m2) = (s.m1(), s.m2());
        let ml = minimal_level(&s).unwrap();
        let closed = (m2 - m1) as f64 / (m2 + m1) as f64;
        let base = collect_plus_points(&s, 1).unwrap().remove(0);
        let p = SphereElement::basis(0, s.matrices.len());
        let pt = level_point(&s, &base, &p, ml.level).unwrap();
        let rep = shape_spectrum(&s, &pt).unwrap();
        println!(
            "(m1, m2) = ({m1}, {m2}): minimal level {:+.6} (closed form {closed:+.6}), \
             shape trace {:+.2e}",
            ml.level, rep.trace
        );
        assert!(rep.trace.abs() < 1e-6);
    }
}
