//! Decide majorization between two integer vectors and show the
//! prefix-sum witness.

use trumping::scalar::{format_rational, rat_int};
use trumping::vector::{majorizes, PositiveVector, PrefixWitness};

fn vec_of(entries: &[i64]) -> PositiveVector {
    PositiveVector::Exact(entries.iter().map(|&e| rat_int(e)).collect())
}

fn main() {
    let x = vec_of(&[5, 5, 5, 5]);
    let y = vec_of(&[2, 2, 6, 10]);

    let verdict = majorizes(&x, &y).unwrap();
    println!("relation: {:?}", verdict.relation);

    if let Some(PrefixWitness::Exact { x, y }) = verdict.witness {
        let fmt = |v: &[trumping::Rational]| {
            v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
        };
        println!("prefix sums of sorted x: {}", fmt(&x));
        println!("prefix sums of sorted y: {}", fmt(&y));
    }

    // The flat vector is majorized by the spread-out one: every prefix sum
    // of sorted x stays below the matching prefix sum of sorted y.
}
