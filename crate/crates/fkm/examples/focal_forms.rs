//! Second fundamental forms of the focal manifold: every normal direction
//! gives a shape operator with spectrum {0, +1, -1}, multiplicities
//! (m1, m2, m2), and S cubed equal to S. All of it exact.

use fkm::focal::focal_shape_plus;
use fkm::pipeline::collect_plus_points;
use fkm::system::{sum_of_irreducibles, SphereElement};

fn main() {
    for (m, signs) in [(2u32, vec![1i8, 1]), (3, vec![1, 1]), (5, vec![1])] {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        let points = collect_plus_points(&s, 3).unwrap();
        let k = s.matrices.len();
        print!("m={m} k={}: ", signs.len());
        for (i, x) in points.iter().enumerate() {
            let shape = focal_shape_plus(&s, x, &SphereElement::basis(i % k, k)).unwrap();
            assert!(shape.cubed_equals_self);
            print!(
                "point {i}: 0^{} (+1)^{} (-1)^{}  ",
                shape.mult_zero, shape.mult_plus, shape.mult_minus
            );
        }
        println!("S^3 = S everywhere");
    }
}
