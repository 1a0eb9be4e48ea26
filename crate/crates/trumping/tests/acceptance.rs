//! End-to-end acceptance gate: each test exercises one criterion and prints a
//! single PASS line (run with `--nocapture` to see them).

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use trumping::dirichlet::{
    cm_test, gd_from_pair, gd_eval, gd_eval_exact_neg_int, limit_at_root, mu_profile,
    positivity_on_reals, rescale_into_domain, PiecewiseProfile, PositivityVerdict,
};
use trumping::means::{entropy, klimesh_f};
use trumping::poly::{
    divide_root_one, iterated_cumsum, nested_sum_test, poly_from_pair, polya_multiplier,
    RationalPoly,
};
use trumping::scalar::{rat, rat_int, Rational};
use trumping::trumping::{trumping_decision, GridConfig, TrumpingRelation};
use trumping::vector::{catalyzes, convex_order_oracle, majorizes, PositiveVector, Relation};

fn exact(v: &[i64]) -> PositiveVector {
    PositiveVector::Exact(v.iter().map(|&e| rat_int(e)).collect())
}

fn fv(v: &[f64]) -> PositiveVector {
    PositiveVector::Float(v.to_vec())
}

fn poly(coeffs: &[i64]) -> RationalPoly {
    RationalPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
}

/// Frozen oracle-found lattice instances: incomparable but trumped, with a
/// brute-force 2-entry catalyst (1, 4). Entries are 2^exponent.
fn lattice_fixtures() -> Vec<(Vec<u32>, Vec<u32>)> {
    vec![
        (vec![3, 4, 4, 5, 8, 9, 9], vec![2, 2, 6, 6, 6, 7, 10]),
        (vec![3, 5, 5, 6, 9, 10, 10], vec![2, 2, 7, 7, 7, 8, 11]),
        (vec![3, 6, 6, 7, 10, 11, 11], vec![2, 2, 8, 8, 8, 9, 12]),
        (vec![4, 5, 5, 6, 9, 11, 11], vec![3, 3, 7, 7, 7, 8, 12]),
        (vec![3, 4, 4, 5, 8, 12, 12], vec![2, 2, 6, 6, 6, 7, 13]),
        (vec![4, 8, 8, 9, 12, 13, 13], vec![3, 3, 10, 10, 10, 11, 14]),
    ]
}

fn pow2_vec(exps: &[u32]) -> PositiveVector {
    PositiveVector::Exact(exps.iter().map(|&e| rat_int(1i64 << e)).collect())
}

#[test]
fn criterion_1_worked_example_quotient() {
    let start = Instant::now();
    let p = poly_from_pair(&exact(&[5, 5, 5, 5]), &exact(&[2, 2, 6, 10])).unwrap();
    assert_eq!(p, poly(&[0, 0, 2, 0, 0, -4, 1, 0, 0, 0, 1]));
    let cert = divide_root_one(&p, 2).unwrap();
    assert!(cert.remainder_ok);
    assert_eq!(cert.quotient, poly(&[0, 0, 2, 4, 6, 4, 3, 2, 1]));
    assert!(cert.holds());
    let elapsed = start.elapsed();
    assert!(elapsed.as_millis() < 10, "took {elapsed:?}");
    println!("[criterion 1] PASS: worked-example quotient, exact match in {elapsed:?}");
}

#[test]
fn criterion_2_moments_and_mu2_profile() {
    let x = exact(&[5, 5, 5, 5]);
    let y = exact(&[2, 2, 6, 10]);
    let z = gd_from_pair(&x, &y).unwrap();
    assert!(gd_eval_exact_neg_int(&z, 0).unwrap().is_zero());
    assert!(gd_eval_exact_neg_int(&z, 1).unwrap().is_zero());

    let zf = gd_from_pair(&fv(&[5.0; 4]), &fv(&[2.0, 2.0, 6.0, 10.0])).unwrap();
    assert!(gd_eval(&zf, 0.0, 0).abs() < 1e-12);
    assert!(gd_eval(&zf, -1.0, 0).abs() < 1e-12);

    match mu_profile(&z, 2) {
        PiecewiseProfile::Exact(p) => {
            let ts = [2i64, 5, 6, 10];
            let want = [0i64, 6, 4, 0];
            for (t, w) in ts.iter().zip(want.iter()) {
                assert_eq!(p.eval(&rat_int(*t)), rat_int(*w));
            }
        }
        _ => panic!("expected exact profile"),
    }
    println!("[criterion 2] PASS: moment checks and mu_2 breakpoint values (0, 6, 4, 0)");
}

/// Random integer vector of dimension d with entries in 1..=30.
fn random_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(1..=30)).collect()
}

/// Robin Hood transfers: result is majorized by the input.
fn robin_hood(rng: &mut ChaCha8Rng, y: &[i64], steps: usize) -> Vec<i64> {
    let mut x = y.to_vec();
    for _ in 0..steps {
        let hi = (0..x.len()).max_by_key(|&i| x[i]).unwrap();
        let lo = (0..x.len()).min_by_key(|&i| x[i]).unwrap();
        if x[hi] - x[lo] >= 2 {
            let t = rng.gen_range(1..=(x[hi] - x[lo]) / 2);
            x[hi] -= t;
            x[lo] += t;
        }
    }
    x
}

/// Random composition of `total` into `d` parts, each at least 1.
fn random_composition(rng: &mut ChaCha8Rng, total: i64, d: usize) -> Vec<i64> {
    let mut v = vec![1i64; d];
    let mut rest = total - d as i64;
    while rest > 0 {
        let i = rng.gen_range(0..d);
        let take = rng.gen_range(1..=rest.min(8));
        v[i] += take;
        rest -= take;
    }
    v
}

#[test]
fn criterion_3_five_way_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut checked = 0usize;
    while checked < 1000 {
        let d = rng.gen_range(2..=8usize);
        let yv = random_vec(&mut rng, d);
        let xv = if checked % 2 == 0 {
            let steps = rng.gen_range(1..=4);
            robin_hood(&mut rng, &yv, steps)
        } else {
            random_composition(&mut rng, yv.iter().sum(), d)
        };
        let x = exact(&xv);
        let y = exact(&yv);

        let a = matches!(
            majorizes(&x, &y).unwrap().relation,
            Relation::XMajorizedByY | Relation::Equal
        );
        let p = poly_from_pair(&x, &y).unwrap();
        let b = if p.is_zero() {
            true
        } else {
            divide_root_one(&p, 2).unwrap().holds()
        };
        let c = nested_sum_test(p.coeffs(), 2);
        let (xr, yr, _) = rescale_into_domain(&x, &y).unwrap();
        let z = gd_from_pair(&xr, &yr).unwrap();
        let dd = cm_test(&z, 2).is_cm;
        let e = convex_order_oracle(&x, &y).unwrap();
        assert!(
            a == b && b == c && c == dd && dd == e,
            "disagreement on x={xv:?} y={yv:?}: sums={a} quotient={b} nested={c} cm={dd} hinge={e}"
        );
        checked += 1;
    }
    println!("[criterion 3] PASS: five-way equivalence on {checked} random equal-sum pairs");
}

/// Forward r-fold cumulative sum of a basis vector: the truncated-power
/// duality witnesses. Always r-convex under the zero-padded convention.
fn truncated_power(len: usize, j: usize, r: u32) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); len];
    if j < len {
        e[j] = Rational::one();
    }
    iterated_cumsum(&e, r)
}

fn dot(a: &[Rational], chi: &[Rational]) -> Rational {
    a.iter().zip(chi.iter()).map(|(x, y)| x * y).sum()
}

#[test]
fn criterion_4_r_convex_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut true_count = 0usize;
    for case in 0..500 {
        let r = (case % 4 + 1) as u32;
        let len = rng.gen_range(4..=12usize);
        let a: Vec<Rational> = if case % 3 == 0 {
            // Constructed positive case: (t - 1)^r times a nonnegative poly.
            let q: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=4)).collect();
            let mut p = RationalPoly::new(q.into_iter().map(rat_int).collect());
            for _ in 0..r {
                p = p.mul(&RationalPoly::new(vec![rat_int(-1), rat_int(1)]));
            }
            p.coeffs().to_vec()
        } else {
            (0..len)
                .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
                .collect()
        };
        let len = a.len();
        let result = nested_sum_test(&a, r);

        // Sampled r-convex sequences: r-fold cumsums of nonnegative
        // sequences, plus degree < r polynomial sequences of both signs.
        let mut family: Vec<Vec<Rational>> = Vec::new();
        for _ in 0..200 {
            let base: Vec<Rational> =
                (0..len).map(|_| rat_int(rng.gen_range(0..=4))).collect();
            family.push(iterated_cumsum(&base, r));
        }
        for k in 0..r {
            for sign in [1i64, -1] {
                family.push(
                    (0..len)
                        .map(|n| rat_int(sign) * rat_int((n as i64).pow(k)))
                        .collect(),
                );
            }
        }

        if result {
            true_count += 1;
            // Certificate => inequality, exactly, for every sampled sequence.
            for chi in &family {
                assert!(
                    !dot(&a, chi).is_negative(),
                    "r={r}: certificate holds but a sampled r-convex sequence violates"
                );
            }
        } else {
            // No false negatives: an explicit violating r-convex sequence
            // exists among the duality witnesses and the polynomials.
            let mut witnesses: Vec<Vec<Rational>> =
                (0..len).map(|j| truncated_power(len, j, r)).collect();
            for k in 0..r {
                for sign in [1i64, -1] {
                    witnesses.push(
                        (0..len)
                            .map(|n| rat_int(sign) * rat_int((n as i64).pow(k)))
                            .collect(),
                    );
                }
            }
            assert!(
                witnesses.iter().any(|chi| dot(&a, chi).is_negative()),
                "r={r}: test refuted but no duality witness found for a={a:?}"
            );
        }
    }
    println!(
        "[criterion 4] PASS: duality on 500 coefficient vectors ({true_count} certified true)"
    );
}

fn random_prob(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..d).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = v.iter().sum();
    v.iter().map(|e| e / s).collect()
}

fn robin_hood_f(rng: &mut ChaCha8Rng, y: &[f64], steps: usize) -> Vec<f64> {
    let mut x = y.to_vec();
    for _ in 0..steps {
        let hi = (0..x.len())
            .max_by(|&i, &j| x[i].partial_cmp(&x[j]).unwrap())
            .unwrap();
        let lo = (0..x.len())
            .min_by(|&i, &j| x[i].partial_cmp(&x[j]).unwrap())
            .unwrap();
        let gap = x[hi] - x[lo];
        if gap > 1e-6 {
            let t = rng.gen_range(0.1..0.45) * gap;
            x[hi] -= t;
            x[lo] += t;
        }
    }
    x
}

#[test]
fn criterion_5_trumping_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let grid = GridConfig::default();
    let candidates: Vec<PositiveVector> = vec![
        fv(&[1.0]),
        fv(&[1.0, 2.0]),
        fv(&[1.0, 4.0]),
        fv(&[1.0, 8.0]),
        fv(&[1.0, 2.0, 4.0]),
    ];

    let mut pairs: Vec<(PositiveVector, PositiveVector)> = Vec::new();
    for i in 0..200 {
        let d = rng.gen_range(2..=6usize);
        let y = random_prob(&mut rng, d);
        let x = if i % 2 == 0 {
            let steps = rng.gen_range(1..=3);
            robin_hood_f(&mut rng, &y, steps)
        } else {
            random_prob(&mut rng, d)
        };
        pairs.push((fv(&x), fv(&y)));
    }
    // Known trumped lattice instances (as float probability vectors, d = 7).
    for (xe, ye) in lattice_fixtures() {
        let tot: f64 = xe.iter().map(|&e| (1u64 << e) as f64).sum();
        let to_prob = |es: &[u32]| {
            fv(&es
                .iter()
                .map(|&e| (1u64 << e) as f64 / tot)
                .collect::<Vec<_>>())
        };
        pairs.push((to_prob(&xe), to_prob(&ye)));
    }

    let mut trumped = 0usize;
    let mut confirmed = 0usize;
    for (x, y) in &pairs {
        let v = trumping_decision(x, y, &grid)
            .expect("routes must agree up to boundary on random pairs");

        // Independent positivity check (skipped for equal pairs, where the
        // difference polynomial is empty).
        if v.relation != TrumpingRelation::Equal {
            let (xr, yr, _) = rescale_into_domain(x, y).unwrap();
            let z = gd_from_pair(&xr, &yr).unwrap();
            match positivity_on_reals(&z, 2, 64.0) {
                Ok(PositivityVerdict::PositiveEverywhere) => assert_ne!(
                    v.relation,
                    TrumpingRelation::NotTrumped,
                    "positivity contradicts the grid verdict"
                ),
                Ok(PositivityVerdict::ViolationAt(_)) => assert!(
                    matches!(
                        v.relation,
                        TrumpingRelation::NotTrumped | TrumpingRelation::Boundary
                    ),
                    "sign violation contradicts {:?}",
                    v.relation
                ),
                _ => {}
            }
        }

        // Brute-force small catalysts: soundness in both directions.
        let mut any = false;
        for c in &candidates {
            if catalyzes(x, y, c).unwrap() {
                any = true;
                assert_ne!(
                    v.relation,
                    TrumpingRelation::NotTrumped,
                    "a catalyst exists for a NotTrumped verdict"
                );
            }
        }
        if v.relation == TrumpingRelation::TrumpedStrictly {
            trumped += 1;
            if any {
                confirmed += 1;
            }
        }
    }
    assert!(trumped >= lattice_fixtures().len());
    assert!(confirmed >= lattice_fixtures().len());
    println!(
        "[criterion 5] PASS: {} pairs, {trumped} trumped strictly, {confirmed} confirmed by a brute-force catalyst",
        pairs.len()
    );
}

#[test]
fn criterion_6_catalysis_witness() {
    let start = Instant::now();
    let x = fv(&[0.4, 0.4, 0.1, 0.1]);
    let y = fv(&[0.5, 0.25, 0.25, 0.0]);
    let c = fv(&[0.6, 0.4]);
    assert_eq!(majorizes(&x, &y).unwrap().relation, Relation::Incomparable);
    assert!(catalyzes(&x, &y, &c).unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed.as_millis() < 10, "took {elapsed:?}");
    println!("[criterion 6] PASS: catalysis witness reproduced in {elapsed:?}");
}

#[test]
fn criterion_7_certificate_pipeline() {
    let start = Instant::now();
    for (xe, ye) in lattice_fixtures() {
        let x = pow2_vec(&xe);
        let y = pow2_vec(&ye);
        let cert =
            trumping::trumping::catalyst_certificate(&x, &y, &rat_int(2), 512, 2).unwrap();
        assert!(cert.polya_n <= 512);
        assert!(cert.zeta2.has_nonnegative_coeffs());
        assert!(cert.product.has_nonnegative_coeffs());
        // Product identity, re-derived here from scratch: recover the lattice
        // exponents of the snapped entries and rebuild the difference poly.
        let exps = |v: &PositiveVector| -> Vec<usize> {
            let PositiveVector::Exact(entries) = v else { panic!() };
            entries
                .iter()
                .map(|e| {
                    let j = trumping::scalar::rat_to_f64(e).log2().round() as usize;
                    assert_eq!(e, &rat_int(1i64 << j));
                    j
                })
                .collect()
        };
        let deg = 1 + exps(&cert.snapped_x)
            .into_iter()
            .chain(exps(&cert.snapped_y))
            .max()
            .unwrap();
        let mut coeffs = vec![Rational::zero(); deg];
        for j in exps(&cert.snapped_y) {
            coeffs[j] += Rational::one();
        }
        for j in exps(&cert.snapped_x) {
            coeffs[j] -= Rational::one();
        }
        let mut f = RationalPoly::new(coeffs);
        for k in 0..2u32 {
            let root = if k == 0 { rat_int(1) } else { rat_int(2) };
            let (q, rem) = f.synthetic_div(&root);
            assert!(rem.is_zero());
            f = q.neg();
        }
        assert_eq!(f.mul(&cert.zeta2), cert.product);
        let c = cert.catalyst.as_ref().unwrap();
        assert!(catalyzes(&cert.snapped_x, &cert.snapped_y, c).unwrap());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60);
    println!(
        "[criterion 7] PASS: {} lattice fixtures certified end-to-end in {elapsed:?}",
        lattice_fixtures().len()
    );
}

#[test]
fn criterion_8_limit_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..100 {
        let d = rng.gen_range(2..=6usize);
        let x: Vec<f64> = (0..d).map(|_| rng.gen_range(1.5..20.0)).collect();
        let y: Vec<f64> = (0..d).map(|_| rng.gen_range(1.5..20.0)).collect();
        let xv = fv(&x);
        let yv = fv(&y);
        let z = gd_from_pair(&xv, &yv).unwrap();

        let at0 = limit_at_root(&z, 2, 0);
        let expect0 = klimesh_f(&yv, 0.0) - klimesh_f(&xv, 0.0);
        assert!(
            (at0 - expect0).abs() <= 1e-9 * expect0.abs().max(1.0),
            "s=0: {at0} vs {expect0}"
        );

        let at1 = limit_at_root(&z, 2, 1);
        let expect1 = entropy(&xv) - entropy(&yv);
        assert!(
            (at1 - expect1).abs() <= 1e-9 * expect1.abs().max(1.0),
            "s=-1: {at1} vs {expect1}"
        );
    }
    println!("[criterion 8] PASS: limit identities at s = 0 and s = -1 on 100 random pairs");
}

#[test]
fn criterion_9_polya_lemma() {
    // Positive quadratic t^2 - (u/v) t + w with (u/v)^2 < 4w.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let quadratic = |rng: &mut ChaCha8Rng| -> RationalPoly {
        loop {
            let w = rng.gen_range(1..=9i64);
            let v = rng.gen_range(1..=4i64);
            let u = rng.gen_range(1..=(4 * v));
            // Keep away from the double-root boundary so n stays moderate.
            if 10 * u * u <= 36 * v * v * w {
                return RationalPoly::new(vec![rat_int(w), -rat(u, v), rat_int(1)]);
            }
        }
    };
    let mut max_n = 0usize;
    for case in 0..100 {
        let f = if case % 2 == 0 {
            quadratic(&mut rng)
        } else {
            quadratic(&mut rng).mul(&quadratic(&mut rng))
        };
        let cert = polya_multiplier(&f, 512)
            .unwrap()
            .expect("positive polynomial admits a multiplier");
        assert!(cert.h.has_nonnegative_coeffs());
        assert_eq!(f.mul(&cert.g), cert.h, "exact identity f * (1+t)^n = h");
        max_n = max_n.max(cert.n);
    }
    let f = poly(&[1, -1, 1]);
    let cert = polya_multiplier(&f, 512).unwrap().unwrap();
    assert_eq!(cert.n, 1);
    assert_eq!(cert.h, poly(&[1, 0, 0, 1]));
    println!("[criterion 9] PASS: 100 random positive polynomials multiplied to nonnegativity (max n = {max_n})");
}
