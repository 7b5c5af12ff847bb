//! Print the dimension table of the irreducible generator families and check
//! the algebra relations for each one.

use fkm::rep::{delta, irreducible_generators, verify_rep};

fn main() {
    println!("{:>3}  {:>6}  {:>10}  relations", "m", "dim", "generators");
    for m in 1..=10 {
        let rep = irreducible_generators(m);
        let violations = verify_rep(&rep);
        println!(
            "{m:>3}  {:>6}  {:>10}  {}",
            rep.dim,
            rep.generators.len(),
            if violations.is_empty() { "ok" } else { "BROKEN" }
        );
        assert_eq!(rep.dim as u64, delta(m));
    }
    println!();
    println!("dimensions double along 1,2,4,4,8,8,8,8 and multiply by 16 every 8 steps");
}
