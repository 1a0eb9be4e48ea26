//! Decide trumping for a pair of probability vectors by scanning power
//! means and the f_r family over a grid of orders.

use trumping::trumping::{trumping_decision, GridConfig};
use trumping::vector::PositiveVector;

fn main() {
    // Incomparable pair that is nonetheless trumped (a catalyst exists).
    let x = PositiveVector::Float(vec![0.4, 0.4, 0.1, 0.1]);
    let y = PositiveVector::Float(vec![0.5, 0.25, 0.249, 0.001]);

    let verdict = trumping_decision(&x, &y, &GridConfig::default()).unwrap();
    println!("relation: {:?}", verdict.relation);
    println!(
        "geometric means: A_0(x) = {:.6}, A_0(y) = {:.6}",
        verdict.limits.a0_x, verdict.limits.a0_y
    );
    println!(
        "entropies: sigma(x) = {:.6}, sigma(y) = {:.6}",
        verdict.limits.sigma_x, verdict.limits.sigma_y
    );
    if verdict.failures.is_empty() {
        println!("no order nu witnesses a failed strict inequality");
    } else {
        for (nu, ax, ay) in &verdict.failures {
            println!("failure at nu = {nu:.3}: A_nu(x) = {ax:.6}, A_nu(y) = {ay:.6}");
        }
    }
}
