//! Power means, entropy, and the five-case `f_r` family used by the trumping
//! decision procedure.

use crate::error::OrderError;
use crate::vector::PositiveVector;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeanError {
    #[error("power mean with nu <= 0 requires strictly positive entries (zero at index {index})")]
    ZeroEntryWithNonpositiveNu { index: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// The `nu`-power mean `A_nu(x) = ((1/d) sum x_i^nu)^{1/nu}`, continuously
/// extended: `A_0` is the geometric mean (computed through the mean of
/// logarithms), `A_{+inf}` is the maximum, `A_{-inf}` the minimum.
pub fn power_mean(x: &PositiveVector, nu: f64) -> Result<f64, MeanError> {
    let v = x.to_f64();
    if v.is_empty() {
        return Err(MeanError::Order(OrderError::LengthMismatch {
            left: 0,
            right: 0,
        }));
    }
    if nu <= 0.0 {
        if let Some(index) = v.iter().position(|&e| e <= 0.0) {
            return Err(MeanError::ZeroEntryWithNonpositiveNu { index });
        }
    }
    if nu == f64::INFINITY {
        return Ok(v.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    }
    if nu == f64::NEG_INFINITY {
        return Ok(v.iter().cloned().fold(f64::INFINITY, f64::min));
    }
    if nu == 0.0 {
        let mean_log = v.iter().map(|e| e.ln()).sum::<f64>() / v.len() as f64;
        return Ok(mean_log.exp());
    }
    // Factor out the extreme entry to keep the powers in range for large nu.
    let pivot = if nu > 0.0 {
        v.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    } else {
        v.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let mean: f64 = v.iter().map(|e| (e / pivot).powf(nu)).sum::<f64>() / v.len() as f64;
    Ok(pivot * mean.powf(1.0 / nu))
}

/// `sigma(x) = -sum x_i ln x_i`; zero entries contribute 0.
pub fn entropy(x: &PositiveVector) -> f64 {
    x.to_f64()
        .iter()
        .map(|&e| if e > 0.0 { -e * e.ln() } else { 0.0 })
        .sum()
}

/// The `f_r` family:
/// `ln sum x^r` for `r > 1`; `sum x ln x` at `r = 1`; `-ln sum x^r` for
/// `0 < r < 1`; `-sum ln x` at `r = 0`; `ln sum x^r` for `r < 0`.
/// When `x` has a zero component, `f_r(x) = +inf` for every `r <= 0`.
pub fn klimesh_f(x: &PositiveVector, r: f64) -> f64 {
    let v = x.to_f64();
    let has_zero = v.iter().any(|&e| e <= 0.0);
    if has_zero && r <= 0.0 {
        return f64::INFINITY;
    }
    if r == 1.0 {
        return -entropy(x);
    }
    if r == 0.0 {
        return -v.iter().map(|e| e.ln()).sum::<f64>();
    }
    let sum: f64 = v
        .iter()
        .map(|&e| if e > 0.0 { e.powf(r) } else { 0.0 })
        .sum();
    if r > 1.0 || r < 0.0 {
        sum.ln()
    } else {
        -sum.ln()
    }
}
