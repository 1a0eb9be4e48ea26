//! The analytic route: the difference of generalized Dirichlet polynomials
//! vanishes to second order at s = 0, its mu_2 profile is a nonnegative
//! piecewise-linear bump, and its sign is certified on the whole real line.

use num::Zero;
use trumping::dirichlet::{
    cm_test, gd_eval_exact_neg_int, gd_from_pair, limit_at_root, mu_profile,
    positivity_on_reals,
};
use trumping::scalar::rat_int;
use trumping::vector::PositiveVector;

fn vec_of(entries: &[i64]) -> PositiveVector {
    PositiveVector::Exact(entries.iter().map(|&e| rat_int(e)).collect())
}

fn main() {
    let x = vec_of(&[5, 5, 5, 5]);
    let y = vec_of(&[2, 2, 6, 10]);

    // zeta(s) = sum 1/y_i^s - sum 1/x_i^s.
    let z = gd_from_pair(&x, &y).unwrap();
    for k in 0..2 {
        let v = gd_eval_exact_neg_int(&z, k).unwrap();
        println!("zeta(-{k}) = 0 exactly: {}", v.is_zero());
    }

    let profile = mu_profile(&z, 2);
    print!("mu_2 at the entry values:");
    for t in [2.0, 5.0, 6.0, 10.0] {
        print!(" {:.1}", profile.eval_f64(t));
    }
    println!();

    let report = cm_test(&z, 2);
    println!("zeta(s)/(s(s+1)) completely monotone: {}", report.is_cm);

    println!("positivity on the real line: {:?}", positivity_on_reals(&z, 2, 64.0).unwrap());

    // The removable singularities carry the entropic quantities.
    println!("limit at s = 0:  {:.6} (= f_0(y) - f_0(x))", limit_at_root(&z, 2, 0));
    println!("limit at s = -1: {:.6} (= sigma(x) - sigma(y))", limit_at_root(&z, 2, 1));
}
