//! Assemble symmetric Clifford systems as sums of irreducible blocks and
//! compare their geometric classes through the product trace.

use fkm::system::{sum_of_irreducibles, verify_system};

fn show(m: u32, signs: &[i8]) {
    let s = sum_of_irreducibles(m, signs).unwrap();
    let pattern: String = signs.iter().map(|v| if *v > 0 { '+' } else { '-' }).collect();
    println!(
        "m={m} signs={pattern:<4} acts on R^{:<3} (m1, m2) = ({}, {:>2})  |trace P_0..P_m| = {}",
        s.ambient_dim(),
        s.m1(),
        s.m2(),
        s.product_trace()
    );
    assert!(verify_system(&s).is_empty());
}

fn main() {
    show(1, &[1, 1]);
    show(2, &[1, 1, 1]);
    show(3, &[1, 1]);

    println!();
    // flipping the sign of a summand only matters when m is divisible by 4;
    // the trace invariant separates the resulting classes
    show(4, &[1, 1]);
    show(4, &[1, -1]);
    show(5, &[1, -1]);
    show(5, &[1, 1]);

    println!();
    show(8, &[1, 1]);
    show(8, &[1, -1]);
}
