//! Vectors, partial-sum majorization, tensor products, and the direct
//! catalysis witness oracle that every certificate is checked against.

use crate::error::OrderError;
use crate::scalar::{rat_to_f64, Rational, EPS_CMP};
use num::{Signed, Zero};
use std::cmp::Ordering;

/// A finite sequence of strictly positive scalars, either exact rationals or
/// floats. A vector is homogeneous in scalar kind; zeros are permitted only
/// where an operation explicitly allows them.
#[derive(Debug, Clone, PartialEq)]
pub enum PositiveVector {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl PositiveVector {
    pub fn exact(entries: Vec<Rational>) -> Self {
        PositiveVector::Exact(entries)
    }

    pub fn float(entries: Vec<f64>) -> Self {
        PositiveVector::Float(entries)
    }

    pub fn len(&self) -> usize {
        match self {
            PositiveVector::Exact(v) => v.len(),
            PositiveVector::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PositiveVector::Exact(_))
    }

    /// Entries as f64, in the stored order.
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            PositiveVector::Exact(v) => v.iter().map(rat_to_f64).collect(),
            PositiveVector::Float(v) => v.clone(),
        }
    }

    /// Checks that every entry is strictly positive.
    pub fn check_positive(&self) -> Result<(), OrderError> {
        let bad = match self {
            PositiveVector::Exact(v) => v.iter().position(|e| !e.is_positive()),
            PositiveVector::Float(v) => v.iter().position(|&e| !(e > 0.0)),
        };
        match bad {
            Some(index) => Err(OrderError::NonPositiveEntry { index }),
            None => Ok(()),
        }
    }

    /// Index of a zero (or negative) entry, if any.
    pub fn first_nonpositive(&self) -> Option<usize> {
        match self {
            PositiveVector::Exact(v) => v.iter().position(|e| !e.is_positive()),
            PositiveVector::Float(v) => v.iter().position(|&e| !(e > 0.0)),
        }
    }

    /// Multiplies every entry by a positive rational factor (exact regime) or
    /// float factor (float regime).
    pub fn scale_exact(&self, factor: &Rational) -> PositiveVector {
        match self {
            PositiveVector::Exact(v) => {
                PositiveVector::Exact(v.iter().map(|e| e * factor).collect())
            }
            PositiveVector::Float(v) => {
                let f = rat_to_f64(factor);
                PositiveVector::Float(v.iter().map(|e| e * f).collect())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Relation {
    XMajorizedByY,
    YMajorizedByX,
    Equal,
    Incomparable,
}

/// Partial-sum witness: prefix sums of both sorted-descending inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum PrefixWitness {
    Exact { x: Vec<Rational>, y: Vec<Rational> },
    Float { x: Vec<f64>, y: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub witness: Option<PrefixWitness>,
}

pub(crate) trait Elem: Clone + Sized {
    fn zero() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// Ordering of self against rhs under the regime's comparison tolerance.
    fn cmp_tol(&self, rhs: &Self) -> Ordering;
    fn sort_desc(entries: &mut [Self]);
}

impl Elem for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn cmp_tol(&self, rhs: &Self) -> Ordering {
        self.cmp(rhs)
    }
    fn sort_desc(entries: &mut [Self]) {
        entries.sort_by(|a, b| b.cmp(a));
    }
}

impl Elem for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn cmp_tol(&self, rhs: &Self) -> Ordering {
        let d = self - rhs;
        if d > EPS_CMP {
            Ordering::Greater
        } else if d < -EPS_CMP {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn sort_desc(entries: &mut [Self]) {
        entries.sort_by(|a, b| b.partial_cmp(a).unwrap());
    }
}

/// Returns the descending rearrangement of `v`.
pub fn sort_desc(v: &PositiveVector) -> PositiveVector {
    match v {
        PositiveVector::Exact(e) => {
            let mut e = e.clone();
            Elem::sort_desc(&mut e[..]);
            PositiveVector::Exact(e)
        }
        PositiveVector::Float(e) => {
            let mut e = e.clone();
            Elem::sort_desc(&mut e[..]);
            PositiveVector::Float(e)
        }
    }
}

fn majorizes_generic<T: Elem>(x: &[T], y: &[T]) -> (Relation, Vec<T>, Vec<T>) {
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    T::sort_desc(&mut xs);
    T::sort_desc(&mut ys);

    let mut px = Vec::with_capacity(xs.len());
    let mut py = Vec::with_capacity(ys.len());
    let mut ax = T::zero();
    let mut ay = T::zero();
    for (a, b) in xs.iter().zip(ys.iter()) {
        ax = ax.add(a);
        ay = ay.add(b);
        px.push(ax.clone());
        py.push(ay.clone());
    }

    let equal = xs
        .iter()
        .zip(ys.iter())
        .all(|(a, b)| a.cmp_tol(b) == Ordering::Equal);
    if equal {
        return (Relation::Equal, px, py);
    }

    // Total sums must agree for either direction to hold.
    let totals = px.last().unwrap().cmp_tol(py.last().unwrap());
    if totals != Ordering::Equal {
        return (Relation::Incomparable, px, py);
    }

    let x_below_y = px
        .iter()
        .zip(py.iter())
        .all(|(a, b)| a.cmp_tol(b) != Ordering::Greater);
    let y_below_x = px
        .iter()
        .zip(py.iter())
        .all(|(a, b)| b.cmp_tol(a) != Ordering::Greater);
    let relation = match (x_below_y, y_below_x) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::XMajorizedByY,
        (false, true) => Relation::YMajorizedByX,
        (false, false) => Relation::Incomparable,
    };
    (relation, px, py)
}

fn normalize_unit_sum(v: &[f64]) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    if s == 0.0 {
        return v.to_vec();
    }
    v.iter().map(|e| e / s).collect()
}

/// Partial-sum majorization verdict. Exact comparison for rational entries;
/// float entries are compared with tolerance `EPS_CMP` after normalizing both
/// vectors to unit sum (a sum mismatch beyond relative `EPS_CMP` is reported
/// as `Incomparable` first). Zeros are permitted here.
pub fn majorizes(x: &PositiveVector, y: &PositiveVector) -> Result<OrderVerdict, OrderError> {
    if x.len() != y.len() {
        return Err(OrderError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    match (x, y) {
        (PositiveVector::Exact(xe), PositiveVector::Exact(ye)) => {
            let (relation, px, py) = majorizes_generic(xe, ye);
            Ok(OrderVerdict {
                relation,
                witness: Some(PrefixWitness::Exact { x: px, y: py }),
            })
        }
        (PositiveVector::Float(xf), PositiveVector::Float(yf)) => {
            let sx: f64 = xf.iter().sum();
            let sy: f64 = yf.iter().sum();
            let scale = sx.abs().max(sy.abs()).max(1.0);
            if (sx - sy).abs() > EPS_CMP * scale {
                let (_, px, py) = majorizes_generic(xf, yf);
                return Ok(OrderVerdict {
                    relation: Relation::Incomparable,
                    witness: Some(PrefixWitness::Float { x: px, y: py }),
                });
            }
            let xn = normalize_unit_sum(xf);
            let yn = normalize_unit_sum(yf);
            let (relation, px, py) = majorizes_generic(&xn, &yn);
            Ok(OrderVerdict {
                relation,
                witness: Some(PrefixWitness::Float { x: px, y: py }),
            })
        }
        _ => Err(OrderError::MixedRegimes),
    }
}

/// All pairwise products `a_i * b_j` in row-major order.
pub fn tensor(a: &PositiveVector, b: &PositiveVector) -> Result<PositiveVector, OrderError> {
    match (a, b) {
        (PositiveVector::Exact(ae), PositiveVector::Exact(be)) => {
            let mut out = Vec::with_capacity(ae.len() * be.len());
            for u in ae {
                for v in be {
                    out.push(u * v);
                }
            }
            Ok(PositiveVector::Exact(out))
        }
        (PositiveVector::Float(af), PositiveVector::Float(bf)) => {
            let mut out = Vec::with_capacity(af.len() * bf.len());
            for u in af {
                for v in bf {
                    out.push(u * v);
                }
            }
            Ok(PositiveVector::Float(out))
        }
        _ => Err(OrderError::MixedRegimes),
    }
}

/// Direct catalysis witness check: true iff `x (x) c` is majorized by (or equal
/// to) `y (x) c`. Zeros are permitted in `x` and `y`; `c` must be positive.
pub fn catalyzes(
    x: &PositiveVector,
    y: &PositiveVector,
    c: &PositiveVector,
) -> Result<bool, OrderError> {
    if x.len() != y.len() {
        return Err(OrderError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if c.is_empty() {
        return Err(OrderError::NonPositiveEntry { index: 0 });
    }
    c.check_positive()?;
    let xc = tensor(x, c)?;
    let yc = tensor(y, c)?;
    let verdict = majorizes(&xc, &yc)?;
    Ok(matches!(
        verdict.relation,
        Relation::XMajorizedByY | Relation::Equal
    ))
}

fn hinge_sum<T: Elem>(v: &[T], theta: &T) -> T {
    let mut acc = T::zero();
    for e in v {
        let d = e.sub(theta);
        if d.cmp_tol(&T::zero()) == Ordering::Greater {
            acc = acc.add(&d);
        }
    }
    acc
}

fn convex_oracle_generic<T: Elem>(x: &[T], y: &[T]) -> bool {
    // Equality constraints via +/- identity and +/- constants.
    let mut sx = T::zero();
    let mut sy = T::zero();
    for e in x {
        sx = sx.add(e);
    }
    for e in y {
        sy = sy.add(e);
    }
    if sx.cmp_tol(&sy) != Ordering::Equal {
        return false;
    }
    // Hinge functions at every entry value of either vector are the extreme
    // rays needed for vectors supported on finitely many points.
    for theta in x.iter().chain(y.iter()) {
        let hx = hinge_sum(x, theta);
        let hy = hinge_sum(y, theta);
        if hx.cmp_tol(&hy) == Ordering::Greater {
            return false;
        }
    }
    true
}

/// Sampling surrogate for the convex-function characterization: true iff
/// `sum Psi(x_i) <= sum Psi(y_i)` for the deterministic test family of hinge
/// functions at all entry values plus the equality constraints.
pub fn convex_order_oracle(x: &PositiveVector, y: &PositiveVector) -> Result<bool, OrderError> {
    if x.len() != y.len() {
        return Err(OrderError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    match (x, y) {
        (PositiveVector::Exact(xe), PositiveVector::Exact(ye)) => {
            Ok(convex_oracle_generic(xe, ye))
        }
        (PositiveVector::Float(xf), PositiveVector::Float(yf)) => {
            let xn = normalize_unit_sum(xf);
            let yn = normalize_unit_sum(yf);
            let sx: f64 = xf.iter().sum();
            let sy: f64 = yf.iter().sum();
            let scale = sx.abs().max(sy.abs()).max(1.0);
            if (sx - sy).abs() > EPS_CMP * scale {
                return Ok(false);
            }
            Ok(convex_oracle_generic(&xn, &yn))
        }
        _ => Err(OrderError::MixedRegimes),
    }
}
