//! Trumping decisions through the power-mean / entropy criteria and the f_r
//! family, cross-checked against real-line positivity of the Dirichlet
//! quotient, plus construction of exact catalyst certificates on a geometric
//! lattice.

use crate::dirichlet::{
    gd_from_pair, positivity_on_reals, rescale_into_domain, PositivityVerdict,
};
use crate::error::{OrderError, TrumpingError};
use crate::means::{entropy, klimesh_f, power_mean};
use crate::poly::{polya_multiplier, RationalPoly};
use crate::scalar::{rat_to_f64, Rational};
use crate::vector::{catalyzes, majorizes, sort_desc, PositiveVector, Relation};
use num::{One, Zero};

/// Equality-within-tolerance threshold for strict-inequality verdicts, on
/// unit-sum-normalized data.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// Margin below which two disagreeing routes are downgraded to `Boundary`
/// instead of being reported as an internal error.
pub const CONFIDENT_MARGIN: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TrumpingRelation {
    Majorized,
    TrumpedStrictly,
    NotTrumped,
    Boundary,
    Equal,
}

/// The limiting comparisons backing the grid: geometric means, entropies,
/// and the max/min asymptotes.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct LimitsRecord {
    pub a0_x: f64,
    pub a0_y: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub max_x: f64,
    pub max_y: f64,
    pub min_x: f64,
    pub min_y: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TrumpingVerdict {
    pub relation: TrumpingRelation,
    /// `(nu or r, lhs, rhs)` for each required strict inequality that fails.
    pub failures: Vec<(f64, f64, f64)>,
    pub limits: LimitsRecord,
}

#[derive(Debug, Clone, Copy)]
pub struct GridConfig {
    pub nu_min: f64,
    pub nu_max: f64,
    pub points: usize,
    pub tolerance: f64,
    /// Half-width of the certified interval for the positivity cross-check.
    pub window: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            nu_min: -40.0,
            nu_max: 40.0,
            points: 201,
            tolerance: BOUNDARY_TOL,
            window: 64.0,
        }
    }
}

fn normalize(v: &PositiveVector) -> Vec<f64> {
    let f = v.to_f64();
    let s: f64 = f.iter().sum();
    f.iter().map(|e| e / s).collect()
}

/// Power mean continuously extended to vectors with zeros: `A_nu = 0` for
/// `nu <= 0` when a zero entry is present.
fn power_mean_ext(v: &PositiveVector, nu: f64) -> f64 {
    if nu <= 0.0 && v.first_nonpositive().is_some() {
        return 0.0;
    }
    power_mean(v, nu).expect("zero entries already handled")
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum RouteVerdict {
    Holds,
    Boundary,
    Fails,
}

struct RouteOutcome {
    verdict: RouteVerdict,
    /// Smallest |margin| observed among decisive samples.
    confidence: f64,
    failures: Vec<(f64, f64, f64)>,
}

/// Signed margin of the strict inequality required at `nu`: positive means
/// the inequality holds in the required direction.
fn turgut_margin(x: &PositiveVector, y: &PositiveVector, nu: f64) -> (f64, f64, f64) {
    let ax = power_mean_ext(x, nu);
    let ay = power_mean_ext(y, nu);
    let m = if nu < 1.0 { ax - ay } else { ay - ax };
    (m, ax, ay)
}

fn classify(margin: f64, scale: f64, tol: f64) -> RouteVerdict {
    if margin > tol * scale {
        RouteVerdict::Holds
    } else if margin < -tol * scale {
        RouteVerdict::Fails
    } else {
        RouteVerdict::Boundary
    }
}

fn turgut_route(x: &PositiveVector, y: &PositiveVector, grid: &GridConfig) -> RouteOutcome {
    let mut verdict = RouteVerdict::Holds;
    let mut confidence = f64::INFINITY;
    let mut failures = Vec::new();
    let mut samples: Vec<(f64, f64, f64, f64)> = Vec::new(); // (nu, margin, ax, ay)

    let mut record = |nu: f64, m: f64, ax: f64, ay: f64| -> RouteVerdict {
        let scale = ax.abs().max(ay.abs()).max(1.0);
        let c = classify(m, scale, grid.tolerance);
        match c {
            RouteVerdict::Fails => failures.push((nu, ax, ay)),
            RouteVerdict::Holds => confidence = confidence.min(m.abs() / scale),
            RouteVerdict::Boundary => {}
        }
        c
    };

    let worst = |v: RouteVerdict, acc: &mut RouteVerdict| {
        if v == RouteVerdict::Fails {
            *acc = RouteVerdict::Fails;
        } else if v == RouteVerdict::Boundary && *acc == RouteVerdict::Holds {
            *acc = RouteVerdict::Boundary;
        }
    };

    for i in 0..grid.points {
        let nu = grid.nu_min
            + (grid.nu_max - grid.nu_min) * i as f64 / (grid.points - 1) as f64;
        if (nu - 1.0).abs() < 1e-6 {
            // A_1 is forced equal on unit-sum data; sigma covers this point.
            continue;
        }
        let (m, ax, ay) = turgut_margin(x, y, nu);
        let v = record(nu, m, ax, ay);
        worst(v, &mut verdict);
        samples.push((nu, m, ax, ay));
    }

    // Adaptive refinement where the margin changes sign between grid points.
    let mut stack: Vec<(f64, f64, f64, f64)> = samples
        .windows(2)
        .filter(|w| w[0].1.signum() != w[1].1.signum())
        .map(|w| (w[0].0, w[1].0, w[0].1, w[1].1))
        .collect();
    while let Some((lo, hi, mlo, mhi)) = stack.pop() {
        if hi - lo < 1e-3 {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        if (mid - 1.0).abs() < 1e-6 {
            continue;
        }
        let (m, ax, ay) = turgut_margin(x, y, mid);
        let v = record(mid, m, ax, ay);
        worst(v, &mut verdict);
        if m.signum() != mlo.signum() {
            stack.push((lo, mid, mlo, m));
        }
        if m.signum() != mhi.signum() {
            stack.push((mid, hi, m, mhi));
        }
    }

    // sigma(x) > sigma(y) covers nu = 1.
    let (sx, sy) = (entropy(x), entropy(y));
    let v = record(1.0, sx - sy, sx, sy);
    worst(v, &mut verdict);

    // Asymptotic comparisons for nu -> +-inf.
    let xf = x.to_f64();
    let yf = y.to_f64();
    let max_x = xf.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let max_y = yf.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_x = xf.iter().cloned().fold(f64::INFINITY, f64::min);
    let min_y = yf.iter().cloned().fold(f64::INFINITY, f64::min);
    // nu -> +inf requires A_nu(x) <= A_nu(y): fail only on max(x) > max(y).
    let scale = max_x.max(max_y).max(1.0);
    if max_x - max_y > grid.tolerance * scale {
        failures.push((f64::INFINITY, max_x, max_y));
        verdict = RouteVerdict::Fails;
    }
    let scale = min_x.max(min_y).max(1.0);
    if min_y - min_x > grid.tolerance * scale {
        failures.push((f64::NEG_INFINITY, min_x, min_y));
        verdict = RouteVerdict::Fails;
    }

    RouteOutcome {
        verdict,
        confidence,
        failures,
    }
}

fn klimesh_route(x: &PositiveVector, y: &PositiveVector, grid: &GridConfig) -> RouteOutcome {
    let mut verdict = RouteVerdict::Holds;
    let mut confidence = f64::INFINITY;
    let mut failures = Vec::new();
    for i in 0..grid.points {
        let r = grid.nu_min
            + (grid.nu_max - grid.nu_min) * i as f64 / (grid.points - 1) as f64;
        let fx = klimesh_f(x, r);
        let fy = klimesh_f(y, r);
        if fy.is_infinite() && fx.is_finite() {
            confidence = confidence.min(1.0);
            continue;
        }
        if fx.is_infinite() {
            if fy.is_infinite() {
                // Both infinite: the family is silent here.
                continue;
            }
            failures.push((r, fx, fy));
            verdict = RouteVerdict::Fails;
            continue;
        }
        // The family requires f_r(x) < f_r(y); margins vanish linearly as
        // r -> 0 and r -> 1 by continuity, so rescale the tolerance there.
        let shape = r.abs().min(1.0) * (r - 1.0).abs().min(1.0);
        let scale = fx.abs().max(fy.abs()).max(1.0) * shape.max(1e-3);
        let m = fy - fx;
        match classify(m, scale, grid.tolerance) {
            RouteVerdict::Fails => {
                failures.push((r, fx, fy));
                verdict = RouteVerdict::Fails;
            }
            RouteVerdict::Boundary => {
                if verdict == RouteVerdict::Holds {
                    verdict = RouteVerdict::Boundary;
                }
            }
            RouteVerdict::Holds => confidence = confidence.min(m.abs() / scale),
        }
    }
    RouteOutcome {
        verdict,
        confidence,
        failures,
    }
}

fn limits_record(x: &PositiveVector, y: &PositiveVector) -> LimitsRecord {
    let xf = x.to_f64();
    let yf = y.to_f64();
    LimitsRecord {
        a0_x: power_mean_ext(x, 0.0),
        a0_y: power_mean_ext(y, 0.0),
        sigma_x: entropy(x),
        sigma_y: entropy(y),
        max_x: xf.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        max_y: yf.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        min_x: xf.iter().cloned().fold(f64::INFINITY, f64::min),
        min_y: yf.iter().cloned().fold(f64::INFINITY, f64::min),
    }
}

/// Decides the trumping relation between `x` and `y` after normalizing both
/// to unit sum. The power-mean/entropy route and the f_r route are always
/// both evaluated; on zero-free pairs the verdict is additionally
/// cross-checked against real-line positivity of the Dirichlet quotient.
/// Confident disagreement between routes is an internal error.
pub fn trumping_decision(
    x: &PositiveVector,
    y: &PositiveVector,
    grid: &GridConfig,
) -> Result<TrumpingVerdict, TrumpingError> {
    if x.len() != y.len() {
        return Err(TrumpingError::Order(OrderError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        }));
    }
    if x.is_empty() {
        return Err(TrumpingError::Order(OrderError::NonPositiveEntry {
            index: 0,
        }));
    }
    if let Some(index) = x.first_nonpositive() {
        return Err(TrumpingError::XHasZeroEntry { index });
    }

    let xn = PositiveVector::Float(normalize(x));
    let yn = PositiveVector::Float(normalize(y));
    let limits = limits_record(&xn, &yn);

    let xs = sort_desc(&xn).to_f64();
    let ys = sort_desc(&yn).to_f64();
    if xs
        .iter()
        .zip(ys.iter())
        .all(|(a, b)| (a - b).abs() <= BOUNDARY_TOL)
    {
        return Ok(TrumpingVerdict {
            relation: TrumpingRelation::Equal,
            failures: Vec::new(),
            limits,
        });
    }
    if majorizes(&xn, &yn)?.relation == Relation::XMajorizedByY {
        return Ok(TrumpingVerdict {
            relation: TrumpingRelation::Majorized,
            failures: Vec::new(),
            limits,
        });
    }

    let turgut = turgut_route(&xn, &yn, grid);
    let klimesh = klimesh_route(&xn, &yn, grid);

    let mut verdict = match (turgut.verdict, klimesh.verdict) {
        (RouteVerdict::Fails, RouteVerdict::Holds)
        | (RouteVerdict::Holds, RouteVerdict::Fails) => {
            if turgut.confidence > CONFIDENT_MARGIN && klimesh.confidence > CONFIDENT_MARGIN
            {
                return Err(TrumpingError::InternalDisagreement(format!(
                    "power-mean route says {:?} but f_r route says {:?}",
                    turgut.verdict, klimesh.verdict
                )));
            }
            RouteVerdict::Boundary
        }
        (RouteVerdict::Fails, _) | (_, RouteVerdict::Fails) => RouteVerdict::Fails,
        (RouteVerdict::Boundary, _) | (_, RouteVerdict::Boundary) => RouteVerdict::Boundary,
        (RouteVerdict::Holds, RouteVerdict::Holds) => RouteVerdict::Holds,
    };

    // Positivity cross-check on zero-free pairs with a decisive verdict.
    if verdict != RouteVerdict::Boundary && yn.first_nonpositive().is_none() {
        if let Ok((xr, yr, _)) = rescale_into_domain(&xn, &yn) {
            if let Ok(zeta) = gd_from_pair(&xr, &yr) {
                match positivity_on_reals(&zeta, 2, grid.window) {
                    Ok(PositivityVerdict::PositiveEverywhere) => {
                        if verdict == RouteVerdict::Fails {
                            let failing = turgut
                                .failures
                                .iter()
                                .chain(klimesh.failures.iter())
                                .map(|(nu, a, b)| ((a - b).abs(), *nu))
                                .fold((0.0f64, 0.0), |acc, v| {
                                    if v.0 > acc.0 {
                                        v
                                    } else {
                                        acc
                                    }
                                });
                            if failing.0 > CONFIDENT_MARGIN {
                                return Err(TrumpingError::InternalDisagreement(format!(
                                    "grid routes refute trumping (worst failure at nu = {}) \
                                     but the Dirichlet quotient is positive on the real line",
                                    failing.1
                                )));
                            }
                            verdict = RouteVerdict::Boundary;
                        }
                    }
                    Ok(PositivityVerdict::ViolationAt(s)) => {
                        if verdict == RouteVerdict::Holds {
                            if turgut.confidence > CONFIDENT_MARGIN
                                && klimesh.confidence > CONFIDENT_MARGIN
                            {
                                return Err(TrumpingError::InternalDisagreement(format!(
                                    "grid routes report trumping but the Dirichlet \
                                     quotient has a sign violation at s = {s}"
                                )));
                            }
                            verdict = RouteVerdict::Boundary;
                        }
                    }
                    Ok(PositivityVerdict::InconclusiveBeyondWindow) | Err(_) => {}
                }
            }
        }
    }

    let relation = match verdict {
        RouteVerdict::Holds => TrumpingRelation::TrumpedStrictly,
        RouteVerdict::Boundary => TrumpingRelation::Boundary,
        RouteVerdict::Fails => TrumpingRelation::NotTrumped,
    };
    let mut failures = turgut.failures;
    failures.extend(klimesh.failures);
    Ok(TrumpingVerdict {
        relation,
        failures,
        limits,
    })
}

/// Snaps every entry to the multiplicative lattice `e^{alpha Z}`:
/// `e -> e^{alpha round(ln e / alpha)}`. Returns the snapped pair and the
/// largest relative change.
pub fn snap_to_lattice(
    x: &PositiveVector,
    y: &PositiveVector,
    alpha: f64,
) -> (PositiveVector, PositiveVector, f64) {
    assert!(alpha > 0.0, "lattice spacing must be positive");
    let mut max_rel = 0.0f64;
    let mut snap = |v: &PositiveVector| -> PositiveVector {
        let out: Vec<f64> = v
            .to_f64()
            .iter()
            .map(|&e| {
                let s = (alpha * (e.ln() / alpha).round()).exp();
                max_rel = max_rel.max((s - e).abs() / e);
                s
            })
            .collect();
        PositiveVector::Float(out)
    };
    let xs = snap(x);
    let ys = snap(y);
    (xs, ys, max_rel)
}

/// An exact, independently checkable catalyst certificate on the lattice
/// `q^Z`.
#[derive(Debug, Clone)]
pub struct CatalystCertificate {
    /// Lattice spacing `alpha = ln q`.
    pub alpha: f64,
    pub q: Rational,
    pub snapped_x: PositiveVector,
    pub snapped_y: PositiveVector,
    /// Coefficients of `g`; the catalyst Dirichlet factor is `g(q^{-s})`.
    pub zeta2: RationalPoly,
    /// `h = f * g`, the certified nonnegative product.
    pub product: RationalPoly,
    pub polya_n: usize,
    /// Catalyst entries `q^j`, each repeated by the integerized coefficient
    /// of `t^j` in `g`.
    pub catalyst: Option<PositiveVector>,
    pub max_rel_error: f64,
    /// True when the input pair was already majorized and the trivial
    /// certificate `g = 1`, `c = (1)` suffices.
    pub trivial: bool,
}

fn rational_pow(q: &Rational, j: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..j {
        out *= q;
    }
    out
}

/// Builds a catalyst certificate for `x` trumped by `y` on the lattice
/// `q^Z`: rescale into `(1, inf)`, snap, re-verify, divide the lattice
/// polynomial by `prod_{k<r} (q^k - t)` exactly, find a Polya multiplier
/// `(1+t)^n`, and emit the catalyst with entries `q^j`. The certificate is
/// re-verified with the exact direct witness check before it is returned.
pub fn catalyst_certificate(
    x: &PositiveVector,
    y: &PositiveVector,
    q: &Rational,
    n_max: usize,
    r: u32,
) -> Result<CatalystCertificate, TrumpingError> {
    if q <= &Rational::one() {
        return Err(TrumpingError::BadLatticeRatio);
    }
    assert!(r >= 1, "order r must be at least 1");
    if x.len() != y.len() {
        return Err(TrumpingError::Order(OrderError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        }));
    }
    if let Some(index) = x.first_nonpositive() {
        return Err(TrumpingError::XHasZeroEntry { index });
    }
    let alpha = rat_to_f64(q).ln();

    // Plain majorization needs no catalyst: trivial certificate, verified.
    let base = majorizes(x, y)?;
    if base.relation == Relation::Equal {
        return Err(TrumpingError::NotTrumpedAfterSnap(
            "the vectors are equal up to rearrangement; nothing to certify".into(),
        ));
    }
    if base.relation == Relation::XMajorizedByY {
        let one = match x {
            PositiveVector::Exact(_) => PositiveVector::Exact(vec![Rational::one()]),
            PositiveVector::Float(_) => PositiveVector::Float(vec![1.0]),
        };
        assert!(catalyzes(x, y, &one)?);
        return Ok(CatalystCertificate {
            alpha,
            q: q.clone(),
            snapped_x: x.clone(),
            snapped_y: y.clone(),
            zeta2: RationalPoly::one(),
            product: RationalPoly::one(),
            polya_n: 0,
            catalyst: Some(one),
            max_rel_error: 0.0,
            trivial: true,
        });
    }

    // (1) rescale into (1, inf); (2) snap to the q-lattice, exactly.
    let (xr, yr, _) = rescale_into_domain(x, y)?;
    let mut max_rel_error = 0.0f64;
    let snap_exact = |v: &PositiveVector, max_rel: &mut f64| -> (PositiveVector, Vec<u32>) {
        let mut entries = Vec::with_capacity(v.len());
        let mut exps = Vec::with_capacity(v.len());
        for &e in &v.to_f64() {
            let j = (e.ln() / alpha).round().max(0.0) as u32;
            let s = rational_pow(q, j);
            *max_rel = max_rel.max((rat_to_f64(&s) - e).abs() / e);
            entries.push(s);
            exps.push(j);
        }
        (PositiveVector::Exact(entries), exps)
    };
    let (sx, xe) = snap_exact(&xr, &mut max_rel_error);
    let (sy, ye) = snap_exact(&yr, &mut max_rel_error);

    // (2b) re-verify the snapped pair before spending effort on the algebra.
    let verdict = trumping_decision(&sx, &sy, &GridConfig::default())?;
    match verdict.relation {
        TrumpingRelation::TrumpedStrictly | TrumpingRelation::Majorized => {}
        other => {
            return Err(TrumpingError::NotTrumpedAfterSnap(format!(
                "snapped pair decision is {other:?} (max relative snap error {max_rel_error:.3e})"
            )))
        }
    }

    // (3) zeta as a polynomial in t = q^{-s}.
    let deg = xe.iter().chain(ye.iter()).copied().max().unwrap() as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for &e in &ye {
        coeffs[e as usize] += Rational::one();
    }
    for &e in &xe {
        coeffs[e as usize] -= Rational::one();
    }
    let p = RationalPoly::new(coeffs);
    if p.is_zero() {
        return Err(TrumpingError::NotTrumpedAfterSnap(
            "snapping collapsed the pair to equal vectors".into(),
        ));
    }

    // (4) exact division by prod_{k<r} (q^k - t).
    let mut f = p.clone();
    for k in 0..r {
        let root = rational_pow(q, k);
        let (quot, rem) = f.synthetic_div(&root);
        if !rem.is_zero() {
            return Err(TrumpingError::DivisionNotExact(format!(
                "remainder {rem} at lattice node q^{k}"
            )));
        }
        // (q^k - t) = -(t - q^k): flip the sign once per factor.
        f = quot.neg();
    }

    // (5) Polya multiplier search on the quotient.
    let polya = match polya_multiplier(&f, n_max) {
        Ok(Some(c)) => c,
        Ok(None) => return Err(TrumpingError::PolyaSearchExhausted(n_max)),
        Err(crate::error::PolyError::NotPositiveOnPositiveAxis(msg)) => {
            return Err(TrumpingError::NotTrumpedAfterSnap(format!(
                "lattice quotient is not positive on the positive axis: {msg}"
            )))
        }
        Err(e) => return Err(TrumpingError::Poly(e)),
    };

    // (6)-(7) assemble zeta2 = g and the catalyst with entries q^j repeated
    // g_j times, after scaling g to integer coefficients.
    let g = polya.g.clone();
    let h = polya.h.clone();
    let mut denom_lcm = num::bigint::BigInt::one();
    for c in g.coeffs() {
        denom_lcm = num::Integer::lcm(&denom_lcm, c.denom());
    }
    let scale = Rational::from_integer(denom_lcm);
    let mut catalyst_entries = Vec::new();
    for (j, c) in g.coeffs().iter().enumerate() {
        let scaled = c * &scale;
        debug_assert!(scaled.denom().is_one());
        let copies: u64 = scaled
            .numer()
            .to_string()
            .parse()
            .expect("nonnegative integer multiplicity");
        let entry = rational_pow(q, j as u32);
        for _ in 0..copies {
            catalyst_entries.push(entry.clone());
        }
    }
    let catalyst = PositiveVector::Exact(catalyst_entries);

    // Certificate invariants, asserted at construction.
    assert!(g.has_nonnegative_coeffs());
    assert!(h.has_nonnegative_coeffs());
    assert_eq!(h, f.mul(&g), "product identity h = f * g");
    let mut check = f.clone();
    for k in 0..r {
        let root = rational_pow(q, k);
        let factor = RationalPoly::new(vec![root, -Rational::one()]);
        check = check.mul(&factor);
    }
    assert_eq!(check, p, "f * prod (q^k - t) reproduces the lattice zeta");
    if !catalyzes(&sx, &sy, &catalyst)? {
        return Err(TrumpingError::InternalDisagreement(
            "constructed catalyst fails the direct witness re-check".into(),
        ));
    }

    Ok(CatalystCertificate {
        alpha,
        q: q.clone(),
        snapped_x: sx,
        snapped_y: sy,
        zeta2: g,
        product: h,
        polya_n: polya.n,
        catalyst: Some(catalyst),
        max_rel_error,
        trivial: false,
    })
}
