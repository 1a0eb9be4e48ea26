//! Sturm sequences: exact real-root counting and isolation for rational
//! polynomials, used by the positivity certificates.

use crate::poly::RationalPoly;
use crate::scalar::{rat, Rational};
use num::{Signed, Zero};

/// Sturm chain of `p`: `p, p', -rem(...), ...` down to a constant.
pub fn sturm_chain(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut chain = Vec::new();
    if p.is_zero() {
        return chain;
    }
    chain.push(p.clone());
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, rem) = chain[n - 2].div_rem(&chain[n - 1]);
        if rem.is_zero() {
            break;
        }
        chain.push(rem.neg());
    }
    chain
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign variations of the chain evaluated at `t` (zeros skipped).
pub fn variations_at(chain: &[RationalPoly], t: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in chain {
        let s = sign_of(&p.eval(t));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Sign variations as `t -> +inf` (or `-inf`): leading coefficient signs.
pub fn variations_at_infinity(chain: &[RationalPoly], positive: bool) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in chain {
        let Some(lead) = p.leading() else { continue };
        let deg = p.degree().unwrap_or(0);
        let mut s = sign_of(lead);
        if !positive && deg % 2 == 1 {
            s = -s;
        }
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of `p` in `(a, b]`. Endpoint `a` must not be
/// a root of `p`.
pub fn count_roots_in(chain: &[RationalPoly], a: &Rational, b: &Rational) -> usize {
    variations_at(chain, a).saturating_sub(variations_at(chain, b))
}

/// Number of distinct real roots of `p` in `(0, inf)`. `p(0)` must be nonzero
/// (factor out powers of `t` first).
pub fn count_roots_in_positive_axis(p: &RationalPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    let zero = Rational::zero();
    variations_at(&chain, &zero).saturating_sub(variations_at_infinity(&chain, true))
}

/// An upper bound on the absolute value of all real roots (Cauchy bound).
pub fn root_bound(p: &RationalPoly) -> Rational {
    let Some(lead) = p.leading() else {
        return Rational::zero();
    };
    let mut max = Rational::zero();
    for c in p.coeffs() {
        let ratio = (c / lead).abs();
        if ratio > max {
            max = ratio;
        }
    }
    max + rat(1, 1)
}

/// Isolates the distinct real roots of `p` inside `(a, b]` into disjoint
/// intervals `(lo, hi]`, each containing exactly one distinct root.
/// Endpoint `a` must not be a root.
pub fn isolate_roots(
    chain: &[RationalPoly],
    a: &Rational,
    b: &Rational,
    out: &mut Vec<(Rational, Rational)>,
) {
    let n = count_roots_in(chain, a, b);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push((a.clone(), b.clone()));
        return;
    }
    let mid = (a + b) / rat(2, 1);
    isolate_roots(chain, a, &mid, out);
    isolate_roots(chain, &mid, b, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn poly(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn counts_positive_roots() {
        // (t - 1)(t - 2) = t^2 - 3t + 2: two positive roots
        assert_eq!(count_roots_in_positive_axis(&poly(&[2, -3, 1])), 2);
        // t^2 + 1: none
        assert_eq!(count_roots_in_positive_axis(&poly(&[1, 0, 1])), 0);
        // t^2 - t + 1: none (complex pair)
        assert_eq!(count_roots_in_positive_axis(&poly(&[1, -1, 1])), 0);
        // t - 3: one
        assert_eq!(count_roots_in_positive_axis(&poly(&[-3, 1])), 1);
        // (t + 1)(t - 1): one positive
        assert_eq!(count_roots_in_positive_axis(&poly(&[-1, 0, 1])), 1);
    }

    #[test]
    fn isolates_roots() {
        let p = poly(&[2, -3, 1]); // roots 1, 2
        let chain = sturm_chain(&p);
        let mut out = Vec::new();
        isolate_roots(&chain, &rat(1, 2), &rat_int(10), &mut out);
        assert_eq!(out.len(), 2);
        for (lo, hi) in &out {
            assert_eq!(count_roots_in(&chain, lo, hi), 1);
        }
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (t - 1)^2
        assert_eq!(count_roots_in_positive_axis(&poly(&[1, -2, 1])), 1);
    }
}
