//! Rebuilding the positive eigenspace of a system element from focal data
//! alone. Starting at a minus point y = Px, the kernels of the shape
//! operators along the normal sphere sweep out E_+(P) exactly when m1 <= m2.

use fkm::exact::{vector, ExactMatrix};
use fkm::focal::{mminus_point, reconstruct_eplus, special_eigenspace};
use fkm::system::{sum_of_irreducibles, SphereElement};

fn main() {
    for (m, signs) in [(1u32, vec![1i8, 1, 1, 1]), (2, vec![1, 1, 1, 1]), (3, vec![1, 1])] {
        let s = sum_of_irreducibles(m, &signs).unwrap();
        let seed = vector::unit(s.ambient_dim(), 0);
        let p = SphereElement::basis(0, s.matrices.len());
        let y = mminus_point(&s, &p, &seed).unwrap();
        let r = reconstruct_eplus(&s, &y, 7).unwrap();
        println!(
            "(m1, m2) = ({}, {}): recovered a {}-dimensional space in {} sweeps, exact match: {}",
            s.m1(),
            s.m2(),
            r.reconstructed.dim(),
            r.rounds,
            r.matches
        );
        assert!(r.matches);
        assert_eq!(r.reconstructed, r.expected);
    }

    // When m1 > m2 each shape kernel is too small to sweep out the
    // eigenspace, so recovery is obstructed from the start.
    let s = sum_of_irreducibles(4, &[1, 1]).unwrap();
    let vol = ExactMatrix::product_of(&[
        &s.matrices[0],
        &s.matrices[1],
        &s.matrices[2],
        &s.matrices[3],
    ]);
    let (eplus, _) = special_eigenspace(&[vol], &[1]).unwrap();
    println!(
        "(m1, m2) = ({}, {}): E_+(P0 P1 P2 P3) has dimension {}, but each kernel only offers {} directions",
        s.m1(),
        s.m2(),
        eplus.dim(),
        s.m2()
    );
}
