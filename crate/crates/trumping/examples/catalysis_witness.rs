//! An incomparable pair that becomes comparable after tensoring both sides
//! with the same two-entry catalyst.

use trumping::vector::{catalyzes, majorizes, PositiveVector, Relation};

fn main() {
    let x = PositiveVector::Float(vec![0.4, 0.4, 0.1, 0.1]);
    let y = PositiveVector::Float(vec![0.5, 0.25, 0.25, 0.0]);
    let c = PositiveVector::Float(vec![0.6, 0.4]);

    let direct = majorizes(&x, &y).unwrap().relation;
    assert_eq!(direct, Relation::Incomparable);
    println!("x vs y alone: {direct:?}");

    let with_catalyst = catalyzes(&x, &y, &c).unwrap();
    println!("x (x) c majorized by y (x) c: {with_catalyst}");
    // The catalyst is returned intact: tensoring with c only reorders the
    // comparison, it never changes either distribution.
}
