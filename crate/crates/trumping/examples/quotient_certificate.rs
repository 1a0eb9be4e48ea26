//! Exact polynomial certificate for majorization of integer vectors: the
//! difference polynomial has a double root at t = 1 and the quotient by
//! (t - 1)^2 has nonnegative coefficients.

use trumping::poly::{divide_root_one, nested_sum_test, poly_from_pair};
use trumping::scalar::{format_rational, rat_int};
use trumping::vector::PositiveVector;

fn vec_of(entries: &[i64]) -> PositiveVector {
    PositiveVector::Exact(entries.iter().map(|&e| rat_int(e)).collect())
}

fn main() {
    let x = vec_of(&[5, 5, 5, 5]);
    let y = vec_of(&[2, 2, 6, 10]);

    // Entries become exponents: p(t) = sum t^{y_i} - sum t^{x_i}.
    let p = poly_from_pair(&x, &y).unwrap();
    let show = |coeffs: &[trumping::Rational]| {
        coeffs.iter().map(format_rational).collect::<Vec<_>>().join(" ")
    };
    println!("difference polynomial: {}", show(p.coeffs()));

    let cert = divide_root_one(&p, 2).unwrap();
    println!("remainders at t = 1: zero up to order 2: {}", cert.remainder_ok);
    println!("quotient by (t-1)^2: {}", show(cert.quotient.coeffs()));
    println!("certificate holds: {}", cert.holds());

    // Same verdict through iterated cumulative sums of the coefficients.
    println!("nested-sum test: {}", nested_sum_test(p.coeffs(), 2));
}
