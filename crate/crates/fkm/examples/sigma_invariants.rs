//! The span of second-order directions at special points separates the two
//! sign classes of the m = 8, two-summand family: both live on R^32 with the
//! same multiplicities, yet no isometry can match their focal geometry.

use fkm::focal::{sigma_minus, sigma_plus};
use fkm::scenario::scenario_point;

fn main() {
    println!("zero-trace family (kernel extends by two anticommuting elements):");
    for (label, expect) in [("x", "21"), ("u", "15")] {
        let (s, _, p) = scenario_point("indefinite-sigma", label, 7).unwrap();
        let got = sigma_plus(&s, &p).unwrap();
        println!("  sigma at plus point {label}: {got} (expected {expect})");
    }
    for (label, expect) in [("y", "14"), ("v", "7")] {
        let (s, _, p) = scenario_point("indefinite-sigma", label, 7).unwrap();
        let r = sigma_minus(&s, &p, 7).unwrap();
        println!(
            "  sigma at minus point {label}: {} (expected {expect}), kernel core dim {}",
            r.sigma, r.common_core_dim
        );
    }

    println!("full-trace family (kernel extension must commute):");
    for label in ["y", "v"] {
        let (s, _, p) = scenario_point("definite-sigma", label, 7).unwrap();
        let r = sigma_minus(&s, &p, 7).unwrap();
        println!(
            "  sigma at minus point {label}: {}, condition (A): {}",
            r.sigma, r.condition_a
        );
    }

    println!();
    println!("sigma = 7 is the smallest value a minus point can carry and comes");
    println!("with condition (A); the profiles 21/15/14/7 versus 7/13 cannot be");
    println!("matched by any isometry, so the two sign classes are genuinely");
    println!("different geometries. The 15 at u is sharp: all 36 products P_i P_j u");
    println!("stay inside the 16-dimensional eigenspace and are orthogonal to u.");
}
