//! Exact rational polynomial algebra: the root-and-quotient order tests, the
//! nested-sum (Karlin-Novikoff style) conditions, and the Polya multiplier
//! search. All arithmetic here is exact; there are no float entry points.

use crate::error::PolyError;
use crate::scalar::{rat_int, Rational};
use crate::vector::PositiveVector;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Dense univariate polynomial with exact rational coefficients; index `i`
/// holds the coefficient of `t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RationalPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn monomial(degree: usize, coeff: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = coeff;
        RationalPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> RationalPoly {
        if self.coeffs.len() <= 1 {
            return RationalPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        RationalPoly::new(coeffs)
    }

    pub fn add(&self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }

    pub fn sub(&self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }

    pub fn neg(&self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPoly::new(coeffs)
    }

    pub fn scale(&self, factor: &Rational) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Synthetic division by `(t - root)`: returns `(quotient, remainder)`
    /// with `self = (t - root) * quotient + remainder`.
    pub fn synthetic_div(&self, root: &Rational) -> (RationalPoly, Rational) {
        if self.is_zero() {
            return (RationalPoly::zero(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![Rational::zero(); n - 1];
        let mut acc = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            quotient[i] = acc.clone();
            acc = &self.coeffs[i] + root * acc;
        }
        (RationalPoly::new(quotient), acc)
    }

    /// Polynomial division: `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder`, `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &RationalPoly) -> (RationalPoly, RationalPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (RationalPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len() - dd + 1];
        let lead = divisor.coeffs.last().unwrap();
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd - 1] / lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd - 1);
        (RationalPoly::new(quot), RationalPoly::new(rem))
    }

    /// `(1 + t)^n * self`, computed incrementally.
    pub fn mul_one_plus_t(&self) -> RationalPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
            coeffs[i + 1] += c;
        }
        RationalPoly::new(coeffs)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn negative_coeff_indices(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_negative())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Outcome of dividing by `(t - 1)^r`.
#[derive(Debug, Clone)]
pub struct QuotientCertificate {
    pub r: u32,
    pub quotient: RationalPoly,
    /// True iff `(t - 1)^r` divides the input exactly.
    pub remainder_ok: bool,
    /// Remainders observed at each of the `r` synthetic divisions.
    pub remainders: Vec<Rational>,
    /// Indices of negative quotient coefficients; empty iff the order holds.
    pub negative_indices: Vec<usize>,
}

impl QuotientCertificate {
    /// The order relation holds iff the division was exact and the quotient
    /// has no negative coefficient.
    pub fn holds(&self) -> bool {
        self.remainder_ok && self.negative_indices.is_empty()
    }
}

/// Builds `sum_i t^{y_i} - sum_i t^{x_i}` with merged coefficients. Entries
/// must be positive integers, or rationals placeable on a common integer
/// lattice after scaling by the least common denominator.
pub fn poly_from_pair(
    x: &PositiveVector,
    y: &PositiveVector,
) -> Result<RationalPoly, PolyError> {
    const MAX_EXPONENT: usize = 200_000;
    let to_exponents = |v: &PositiveVector, scale: &BigInt| -> Result<Vec<usize>, PolyError> {
        match v {
            PositiveVector::Exact(entries) => entries
                .iter()
                .map(|e| {
                    let scaled = e * Rational::from_integer(scale.clone());
                    if !scaled.denom().is_one() {
                        return Err(PolyError::NonIntegerEntries(format!(
                            "entry {e} does not land on the integer lattice"
                        )));
                    }
                    let n = scaled.numer();
                    if !n.is_positive() {
                        return Err(PolyError::NonIntegerEntries(format!(
                            "entry {e} is not positive"
                        )));
                    }
                    n.to_string()
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n <= MAX_EXPONENT)
                        .ok_or_else(|| {
                            PolyError::NonIntegerEntries(format!(
                                "lattice exponent for entry {e} exceeds {MAX_EXPONENT}"
                            ))
                        })
                })
                .collect(),
            PositiveVector::Float(entries) => entries
                .iter()
                .map(|&e| {
                    let r = e.round();
                    if !(e > 0.0) || (e - r).abs() > 1e-9 * e.abs().max(1.0) {
                        return Err(PolyError::NonIntegerEntries(format!(
                            "float entry {e} is not a positive integer"
                        )));
                    }
                    let n = r as usize;
                    if n > MAX_EXPONENT {
                        return Err(PolyError::NonIntegerEntries(format!(
                            "entry {e} exceeds the lattice bound {MAX_EXPONENT}"
                        )));
                    }
                    Ok(n)
                })
                .collect(),
        }
    };

    // Common denominator over both vectors (exact regime only).
    let mut scale = BigInt::one();
    for v in [x, y] {
        if let PositiveVector::Exact(entries) = v {
            for e in entries {
                scale = scale.lcm(e.denom());
            }
        }
    }

    let xe = to_exponents(x, &scale)?;
    let ye = to_exponents(y, &scale)?;
    let deg = xe.iter().chain(ye.iter()).copied().max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for e in ye {
        coeffs[e] += Rational::one();
    }
    for e in xe {
        coeffs[e] -= Rational::one();
    }
    Ok(RationalPoly::new(coeffs))
}

/// Synthetic division by `(t - 1)` performed `r` times. The quotient is
/// returned regardless of whether the intermediate remainders vanish, for
/// diagnostics.
pub fn divide_root_one(p: &RationalPoly, r: u32) -> Result<QuotientCertificate, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    assert!(r >= 1, "order r must be at least 1");
    let one = Rational::one();
    let mut quotient = p.clone();
    let mut remainders = Vec::with_capacity(r as usize);
    let mut remainder_ok = true;
    for _ in 0..r {
        let (q, rem) = quotient.synthetic_div(&one);
        remainder_ok &= rem.is_zero();
        remainders.push(rem);
        quotient = q;
    }
    let negative_indices = quotient.negative_coeff_indices();
    Ok(QuotientCertificate {
        r,
        quotient,
        remainder_ok,
        remainders,
        negative_indices,
    })
}

/// r-fold iterated cumulative sums of a coefficient sequence.
pub fn iterated_cumsum(coeffs: &[Rational], r: u32) -> Vec<Rational> {
    let mut mu: Vec<Rational> = coeffs.to_vec();
    for _ in 0..r {
        let mut acc = Rational::zero();
        for m in mu.iter_mut() {
            acc += &*m;
            *m = acc.clone();
        }
    }
    mu
}

/// Discrete Karlin-Novikoff style test at order `r`: moment conditions
/// `sum n^k a_n = 0` for `k = 0..r-1`, plus `(-1)^r mu_r >= 0` at every index
/// for the r-fold iterated cumulative sums `mu_r`.
pub fn nested_sum_test(coeffs: &[Rational], r: u32) -> bool {
    for k in 0..r {
        let mut moment = Rational::zero();
        for (n, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut term = a.clone();
            for _ in 0..k {
                term *= rat_int(n as i64);
            }
            moment += term;
        }
        if !moment.is_zero() {
            return false;
        }
    }
    let mu = iterated_cumsum(coeffs, r);
    let even = r % 2 == 0;
    mu.iter().all(|m| {
        if even {
            !m.is_negative()
        } else {
            !m.is_positive()
        }
    })
}

/// A Polya multiplier certificate: `f * g = h` with `g = (1 + t)^n` and all
/// coefficients of `g` and `h` nonnegative.
#[derive(Debug, Clone)]
pub struct PolyaCertificate {
    pub g: RationalPoly,
    pub h: RationalPoly,
    pub n: usize,
    /// First negative coefficient index of `f * (1+t)^nMax` when the search
    /// fails, for diagnostics.
    pub first_negative_at_exhaustion: Option<usize>,
}

/// Searches for the least `n <= n_max` with `(1 + t)^n * f` coefficientwise
/// nonnegative. `f` must be strictly positive on `(0, inf)` after factoring
/// out the largest power of `t` dividing it; the positive-real-root check is
/// exact via a Sturm sequence.
pub fn polya_multiplier(
    f: &RationalPoly,
    n_max: usize,
) -> Result<Option<PolyaCertificate>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    // Factor out t^m.
    let m = f.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let reduced = RationalPoly::new(f.coeffs[m..].to_vec());
    if reduced.coeffs[0].is_negative() {
        return Err(PolyError::NotPositiveOnPositiveAxis(
            "negative value at t = 0 after factoring out t^m".into(),
        ));
    }
    if reduced.leading().is_some_and(|c| c.is_negative()) {
        return Err(PolyError::NotPositiveOnPositiveAxis(
            "negative leading coefficient".into(),
        ));
    }
    if crate::sturm::count_roots_in_positive_axis(&reduced) > 0 {
        return Err(PolyError::NotPositiveOnPositiveAxis(
            "polynomial has a positive real root".into(),
        ));
    }
    let mut h = f.clone();
    for n in 0..=n_max {
        if h.has_nonnegative_coeffs() {
            let mut g = RationalPoly::one();
            for _ in 0..n {
                g = g.mul_one_plus_t();
            }
            return Ok(Some(PolyaCertificate {
                g,
                h,
                n,
                first_negative_at_exhaustion: None,
            }));
        }
        h = h.mul_one_plus_t();
    }
    Ok(None)
}

/// First negative coefficient index of `f * (1+t)^n_max`, for diagnostics on
/// an exhausted search.
pub fn polya_exhaustion_diagnostic(f: &RationalPoly, n_max: usize) -> Option<usize> {
    let mut h = f.clone();
    for _ in 0..n_max {
        h = h.mul_one_plus_t();
    }
    h.negative_coeff_indices().first().copied()
}

/// Index range convention for the r-th difference test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifferenceMode {
    /// Evaluate `Delta^r chi_n` for all `n >= 1`, with `chi_k = 0` for `k < 0`.
    Boundary,
    /// Evaluate only `n >= r`, where no zero-padding is involved.
    Interior,
}

/// True iff the r-th finite differences of `chi` (indexed from 0) are all
/// nonnegative under the chosen index convention.
pub fn is_r_convex_sequence(chi: &[Rational], r: u32, mode: DifferenceMode) -> bool {
    if chi.is_empty() {
        return true;
    }
    let binom: Vec<Rational> = {
        let mut row = vec![Rational::one()];
        for _ in 0..r {
            let mut next = vec![Rational::one()];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(Rational::one());
            row = next;
        }
        row
    };
    let start = match mode {
        DifferenceMode::Boundary => 1usize,
        DifferenceMode::Interior => r as usize,
    };
    for n in start..chi.len() {
        let mut d = Rational::zero();
        for (j, b) in binom.iter().enumerate() {
            if j > n {
                break;
            }
            let term = b * &chi[n - j];
            if j % 2 == 0 {
                d += term;
            } else {
                d -= term;
            }
        }
        if d.is_negative() {
            return false;
        }
    }
    true
}

/// Divided difference `f[x_0, ..., x_n]` via the inductive quotient
/// recurrence; equivalently the leading Lagrange coefficient.
pub fn divided_difference(
    nodes: &[Rational],
    values: &[Rational],
) -> Result<Rational, PolyError> {
    assert_eq!(nodes.len(), values.len(), "nodes/values length mismatch");
    assert!(!nodes.is_empty(), "at least one node required");
    for (i, a) in nodes.iter().enumerate() {
        for b in nodes.iter().skip(i + 1) {
            if a == b {
                return Err(PolyError::DuplicateNodes);
            }
        }
    }
    let mut table: Vec<Rational> = values.to_vec();
    for level in 1..nodes.len() {
        for i in 0..nodes.len() - level {
            let num = &table[i + 1] - &table[i];
            let den = &nodes[i + level] - &nodes[i];
            table[i] = num / den;
        }
    }
    Ok(table[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::vector::PositiveVector;

    fn exact(v: &[i64]) -> PositiveVector {
        PositiveVector::Exact(v.iter().map(|&e| rat_int(e)).collect())
    }

    fn poly(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn pair_polynomial_worked_example() {
        let p = poly_from_pair(&exact(&[5, 5, 5, 5]), &exact(&[2, 2, 6, 10])).unwrap();
        // t^10 + t^6 - 4 t^5 + 2 t^2
        let want = poly(&[0, 0, 2, 0, 0, -4, 1, 0, 0, 0, 1]);
        assert_eq!(p, want);
    }

    #[test]
    fn pair_polynomial_cancels() {
        let v = exact(&[1, 2]);
        assert!(poly_from_pair(&v, &v).unwrap().is_zero());
        assert!(poly_from_pair(&exact(&[1, 2]), &exact(&[2, 1]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn pair_polynomial_rational_lattice() {
        let x = PositiveVector::Exact(vec![rat(1, 2), rat(1, 2)]);
        let y = PositiveVector::Exact(vec![rat(1, 4), rat(3, 4)]);
        // scale by 4: x -> (2, 2), y -> (1, 3)
        let p = poly_from_pair(&x, &y).unwrap();
        assert_eq!(p, poly(&[0, 1, -2, 1]));
    }

    #[test]
    fn quotient_worked_example() {
        let p = poly(&[0, 0, 2, 0, 0, -4, 1, 0, 0, 0, 1]);
        let cert = divide_root_one(&p, 2).unwrap();
        assert!(cert.remainder_ok);
        assert!(cert.negative_indices.is_empty());
        // t^8 + 2 t^7 + 3 t^6 + 4 t^5 + 6 t^4 + 4 t^3 + 2 t^2
        assert_eq!(cert.quotient, poly(&[0, 0, 2, 4, 6, 4, 3, 2, 1]));
        assert!(cert.holds());
    }

    #[test]
    fn quotient_cube() {
        let p = poly(&[-1, 3, -3, 1]); // (t-1)^3
        let cert = divide_root_one(&p, 3).unwrap();
        assert!(cert.remainder_ok);
        assert_eq!(cert.quotient, poly(&[1]));
    }

    #[test]
    fn quotient_nonzero_remainder() {
        let p = poly(&[1, 0, 1]); // t^2 + 1
        let cert = divide_root_one(&p, 1).unwrap();
        assert!(!cert.remainder_ok);
        assert_eq!(cert.remainders[0], rat_int(2));
    }

    #[test]
    fn divide_zero_poly_rejected() {
        assert!(matches!(
            divide_root_one(&RationalPoly::zero(), 2),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn nested_sums_worked_example() {
        let coeffs: Vec<Rational> = poly(&[0, 0, 2, 0, 0, -4, 1, 0, 0, 0, 1])
            .coeffs()
            .to_vec();
        assert!(nested_sum_test(&coeffs, 2));
    }

    #[test]
    fn nested_sums_zero_sequence() {
        let zeros = vec![Rational::zero(); 5];
        assert!(nested_sum_test(&zeros, 2));
    }

    #[test]
    fn nested_sums_square_binomial() {
        let coeffs = vec![rat_int(1), rat_int(-2), rat_int(1)];
        assert!(nested_sum_test(&coeffs, 2));
    }

    #[test]
    fn polya_standard_example() {
        // (1 + t)(t^2 - t + 1) = t^3 + 1
        let f = poly(&[1, -1, 1]);
        let cert = polya_multiplier(&f, 16).unwrap().unwrap();
        assert_eq!(cert.n, 1);
        assert_eq!(cert.h, poly(&[1, 0, 0, 1]));
    }

    #[test]
    fn polya_identity_case() {
        let cert = polya_multiplier(&RationalPoly::one(), 16).unwrap().unwrap();
        assert_eq!(cert.n, 0);
        assert_eq!(cert.h, RationalPoly::one());
    }

    #[test]
    fn polya_rejects_positive_root() {
        let f = poly(&[-1, 1]); // t - 1
        assert!(matches!(
            polya_multiplier(&f, 16),
            Err(PolyError::NotPositiveOnPositiveAxis(_))
        ));
    }

    #[test]
    fn r_convex_square_sequence() {
        let chi: Vec<Rational> = (0..8).map(|n| rat_int(n * n)).collect();
        assert!(is_r_convex_sequence(&chi, 2, DifferenceMode::Interior));
        assert!(is_r_convex_sequence(&chi, 2, DifferenceMode::Boundary));
    }

    #[test]
    fn one_convex_is_increasing() {
        let inc: Vec<Rational> = [0, 1, 1, 3, 7].iter().map(|&n| rat_int(n)).collect();
        assert!(is_r_convex_sequence(&inc, 1, DifferenceMode::Boundary));
        let dec: Vec<Rational> = [3, 2, 5].iter().map(|&n| rat_int(n)).collect();
        assert!(!is_r_convex_sequence(&dec, 1, DifferenceMode::Boundary));
    }

    #[test]
    fn cumsums_are_r_convex() {
        let base = vec![rat_int(1), rat_int(0), rat_int(2), rat_int(1)];
        for r in 1..=4u32 {
            let chi = iterated_cumsum(&base, r);
            assert!(is_r_convex_sequence(&chi, r, DifferenceMode::Boundary));
        }
    }

    #[test]
    fn divided_difference_examples() {
        let one = divided_difference(&[rat_int(0), rat_int(1)], &[rat_int(0), rat_int(1)])
            .unwrap();
        assert_eq!(one, rat_int(1));
        let sq = |t: i64| rat_int(t * t);
        let lead = divided_difference(
            &[rat_int(0), rat_int(1), rat_int(2)],
            &[sq(0), sq(1), sq(2)],
        )
        .unwrap();
        assert_eq!(lead, rat_int(1));
        let lead2 = divided_difference(
            &[rat_int(1), rat_int(2), rat_int(4)],
            &[sq(1), sq(2), sq(4)],
        )
        .unwrap();
        assert_eq!(lead2, rat_int(1));
        assert!(matches!(
            divided_difference(&[rat_int(1), rat_int(1)], &[rat_int(0), rat_int(0)]),
            Err(PolyError::DuplicateNodes)
        ));
    }

    #[test]
    fn division_soundness() {
        let p = poly(&[3, -2, 0, 5, 1]);
        let d = poly(&[-1, 2, 1]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), p);
    }
}
