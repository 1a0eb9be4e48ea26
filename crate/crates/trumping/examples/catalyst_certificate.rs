//! Construct an explicit catalyst for a trumped-but-incomparable pair:
//! snap the entries onto the lattice q^Z, divide the difference polynomial
//! exactly, find a Polya multiplier, and read the catalyst off its
//! coefficients. The result is re-verified with exact arithmetic.

use trumping::scalar::rat_int;
use trumping::trumping::catalyst_certificate;
use trumping::vector::{catalyzes, majorizes, PositiveVector, Relation};

fn pow2(exps: &[u32]) -> PositiveVector {
    PositiveVector::Exact(exps.iter().map(|&e| rat_int(1i64 << e)).collect())
}

fn main() {
    let x = pow2(&[3, 4, 4, 5, 8, 9, 9]);
    let y = pow2(&[2, 2, 6, 6, 6, 7, 10]);
    assert_eq!(majorizes(&x, &y).unwrap().relation, Relation::Incomparable);

    let cert = catalyst_certificate(&x, &y, &rat_int(2), 64, 2).unwrap();
    println!("lattice ratio q = 2, polya exponent n = {}", cert.polya_n);
    println!("max relative snap error: {:.3e}", cert.max_rel_error);

    let catalyst = cert.catalyst.as_ref().unwrap();
    println!("catalyst dimension: {}", catalyst.len());
    println!(
        "exact witness check passes: {}",
        catalyzes(&cert.snapped_x, &cert.snapped_y, catalyst).unwrap()
    );
}
