//! A Blaschke product of degree `n` with prescribed `M(B)` and `m(B)`.
//!
//! Boundary triples map to `z^n` or to an extremal product. Strict triples
//! are reached by moving the zeros from the first-kind extremal product with
//! the target `M` towards the second-kind one, rescaling them at each step so
//! that `M` stays on target, until `m` crosses its target.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_traits::One;

use crate::blaschke::{BlaschkeProduct, ExtremaReport};
use crate::error::{Error, Result};
use crate::extremal::extremal_product;
use crate::polynomial::RationalPoly;
use crate::rational::{from_f64, int};

/// Tolerance for feasibility and for routing boundary triples.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Accuracy of `M` along the homotopy.
pub const LAMBDA_TOL: f64 = 1e-9;
/// Accuracy of `m` at the accepted homotopy time.
pub const TIME_TOL: f64 = 1e-6;
/// Accuracy required of the constructed product.
pub const RESULT_TOL: f64 = 1e-4;
/// Uniform pre-scan in `t` before bisection.
pub const TIME_SCAN: usize = 64;
const BISECTION_CAP: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct Feasibility {
    pub n: usize,
    pub min: f64,
    pub max: f64,
    /// `m - n/(M-n+1)`
    pub left_slack: f64,
    /// `n-1+n/M - m`
    pub right_slack: f64,
    pub feasible: bool,
    /// First violated bound, if any.
    pub violation: Option<String>,
}

/// Checks `n/(M-n+1) <= m <= n-1+n/M` and `0 < m <= n <= M`.
pub fn feasibility(n: usize, min: f64, max: f64) -> Feasibility {
    let nf = n as f64;
    let lower = nf / (max - nf + 1.0);
    let upper = nf - 1.0 + nf / max;
    let left_slack = min - lower;
    let right_slack = upper - min;
    let violation = if n == 0 {
        Some("degree must be at least 1".to_string())
    } else if !(min.is_finite() && max.is_finite()) {
        Some("m and M must be finite".to_string())
    } else if !(min > 0.0) {
        Some(format!("m = {min} must be positive"))
    } else if min > nf + BOUNDARY_TOL {
        Some(format!("m = {min} exceeds n = {n}"))
    } else if max < nf - BOUNDARY_TOL {
        Some(format!("M = {max} is below n = {n}"))
    } else if left_slack < -BOUNDARY_TOL {
        Some(format!("m = {min} is below the lower bound n/(M-n+1) = {lower}"))
    } else if right_slack < -BOUNDARY_TOL {
        Some(format!("m = {min} exceeds the upper bound n-1+n/M = {upper}"))
    } else {
        None
    };
    Feasibility {
        n,
        min,
        max,
        left_slack,
        right_slack,
        feasible: violation.is_none(),
        violation,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `M = n`: the monomial `z^n`.
    Monomial,
    /// `m = n/(M-n+1)`: first-kind extremal product.
    FirstKind,
    /// `m = n-1+n/M`: second-kind extremal product.
    SecondKind,
    /// Strict inequalities: homotopy between the two extremal products.
    Homotopy,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Case::Monomial => 1,
            Case::FirstKind => 2,
            Case::SecondKind => 3,
            Case::Homotopy => 4,
        }
    }
}

/// Zero paths `gamma_k(t)` interpolating in log-modulus and argument.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPaths {
    start: Vec<Complex64>,
    end: Vec<Complex64>,
}

impl ZeroPaths {
    /// Pairs the zeros of both endpoints by sorted argument. All zeros must
    /// be nonzero and inside the disk.
    pub fn new(mut start: Vec<Complex64>, mut end: Vec<Complex64>) -> Result<Self> {
        if start.len() != end.len() || start.is_empty() {
            return Err(Error::Parameter(format!(
                "path endpoints have {} and {} zeros",
                start.len(),
                end.len()
            )));
        }
        if let Some(bad) = start
            .iter()
            .chain(&end)
            .find(|a| !(a.norm() > 0.0 && a.norm() < 1.0))
        {
            return Err(Error::Domain(format!("path endpoint {bad} must lie in the punctured disk")));
        }
        start.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        end.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        Ok(ZeroPaths { start, end })
    }

    pub fn len(&self) -> usize {
        self.start.len()
    }

    pub fn is_empty(&self) -> bool {
        self.start.is_empty()
    }

    pub fn at(&self, t: f64) -> Vec<Complex64> {
        self.start
            .iter()
            .zip(&self.end)
            .map(|(a, b)| {
                let log_r = (1.0 - t) * a.norm().ln() + t * b.norm().ln();
                let mut turn = b.arg() - a.arg();
                if turn > PI {
                    turn -= TAU;
                } else if turn <= -PI {
                    turn += TAU;
                }
                Complex64::from_polar(log_r.exp(), a.arg() + t * turn)
            })
            .collect()
    }

    /// `1 / max_k |gamma_k(t)|`, the supremum of admissible zero scalings.
    pub fn lambda_cap(&self, t: f64) -> f64 {
        1.0 / self.at(t).iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Product with zeros `lambda gamma_k(t)`.
    pub fn product(&self, t: f64, lambda: f64) -> Result<BlaschkeProduct> {
        let zeros = self.at(t).into_iter().map(|a| a * lambda).collect();
        BlaschkeProduct::from_zeros(zeros, Complex64::one())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyState {
    pub t: f64,
    pub lambda: f64,
    pub lambda_cap: f64,
    pub max: f64,
    pub min: f64,
}

/// The scaling `lambda` in `(0, cap(t))` with `M(B_{t,lambda}) = target_max`,
/// by bisection using that `M` increases strictly in `lambda`.
pub fn solve_lambda(paths: &ZeroPaths, t: f64, target_max: f64) -> Result<(HomotopyState, BlaschkeProduct)> {
    let n = paths.len() as f64;
    if !(target_max > n) {
        return Err(Error::Parameter(format!("target M = {target_max} must exceed n = {n}")));
    }
    let cap = paths.lambda_cap(t);
    let eval = |lambda: f64| -> Result<(BlaschkeProduct, ExtremaReport)> {
        let b = paths.product(t, lambda)?;
        let e = b.extrema(0)?;
        Ok((b, e))
    };
    let state = |lambda: f64, e: &ExtremaReport| HomotopyState {
        t,
        lambda,
        lambda_cap: cap,
        max: e.max,
        min: e.min,
    };

    let mut lo = 0.0;
    let mut hi = None;
    for k in 1..=60 {
        let lambda = cap * (1.0 - 0.5f64.powi(k));
        let (b, e) = eval(lambda)?;
        if (e.max - target_max).abs() <= LAMBDA_TOL {
            return Ok((state(lambda, &e), b));
        }
        if e.max > target_max {
            hi = Some(lambda);
            break;
        }
        lo = lambda;
    }
    let mut hi = hi.ok_or_else(|| {
        Error::numeric(
            format!("no scaling reaches M = {target_max} at t = {t}; a path touches the circle"),
            cap,
        )
    })?;

    let mut best: Option<(f64, BlaschkeProduct, ExtremaReport)> = None;
    for _ in 0..BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        let (b, e) = eval(mid)?;
        let miss = e.max - target_max;
        if best.as_ref().is_none_or(|(_, _, be)| miss.abs() < (be.max - target_max).abs()) {
            best = Some((mid, b, e.clone()));
        }
        if miss.abs() <= LAMBDA_TOL {
            break;
        }
        if miss > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let (lambda, b, e) = best.expect("bisection ran at least once");
    if (e.max - target_max).abs() > LAMBDA_TOL {
        return Err(Error::numeric(
            format!("scaling bisection stalled at t = {t}, lambda = {lambda}"),
            (e.max - target_max).abs(),
        ));
    }
    Ok((state(lambda, &e), b))
}

/// A time `t` with `m(B_{t,lambda(t)}) = target_min`: uniform pre-scan for the
/// first sign change, then bisection.
pub fn solve_t(paths: &ZeroPaths, target_min: f64, target_max: f64) -> Result<(HomotopyState, BlaschkeProduct)> {
    let at = |t: f64| solve_lambda(paths, t, target_max);
    let gap = |s: &HomotopyState| s.min - target_min;

    let mut prev = at(0.0)?;
    if gap(&prev.0).abs() <= TIME_TOL {
        return Ok(prev);
    }
    if gap(&prev.0) > 0.0 {
        return Err(Error::Invariant(format!(
            "homotopy start has m = {} above the target {target_min}",
            prev.0.min
        )));
    }
    let mut bracket = None;
    for i in 1..=TIME_SCAN {
        let t = i as f64 / TIME_SCAN as f64;
        let next = at(t)?;
        if gap(&next.0).abs() <= TIME_TOL {
            return Ok(next);
        }
        if gap(&next.0) > 0.0 {
            bracket = Some((prev.0.t, t));
            break;
        }
        prev = next;
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        Error::Invariant(format!("m never reaches {target_min} along the homotopy"))
    })?;

    let mut best: Option<(HomotopyState, BlaschkeProduct)> = None;
    for _ in 0..BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        let current = at(mid)?;
        let g = gap(&current.0);
        if best.as_ref().is_none_or(|(s, _)| g.abs() < gap(s).abs()) {
            best = Some(current);
        }
        if g.abs() <= LAMBDA_TOL || hi - lo <= 1e-15 {
            break;
        }
        if g > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (state, _) = best.expect("bisection ran at least once");
    if gap(&state).abs() > TIME_TOL {
        return Err(Error::numeric(
            format!(
                "homotopy stalled at t = {}, lambda = {}, M = {}, m = {}",
                state.t, state.lambda, state.max, state.min
            ),
            gap(&state).abs(),
        ));
    }
    // final pass: re-solve the scaling at the accepted time
    at(state.t)
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub product: BlaschkeProduct,
    pub case: Case,
    /// Exact numerator in the boundary cases.
    pub numerator: Option<RationalPoly>,
    /// Extrema of `product`, from a fresh scan.
    pub achieved: ExtremaReport,
    /// Accepted homotopy state in the strict case.
    pub homotopy: Option<HomotopyState>,
}

/// A product of degree `n` with `M(B) = max` and `m(B) = min`.
pub fn construct(n: usize, min: f64, max: f64) -> Result<Construction> {
    let report = feasibility(n, min, max);
    if let Some(violation) = report.violation {
        return Err(Error::Infeasible(format!("({n}, {min}, {max}) is infeasible: {violation}")));
    }
    let nn = int(n as i64);
    let (case, product, numerator, homotopy) = if (max - n as f64).abs() <= BOUNDARY_TOL {
        let ep = extremal_product(n, &int(0))?;
        (Case::Monomial, ep.product, Some(ep.numerator), None)
    } else if report.left_slack.abs() <= BOUNDARY_TOL {
        let ep = extremal_product(n, &(from_f64(max)? - &nn))?;
        (Case::FirstKind, ep.product, Some(ep.numerator), None)
    } else if report.right_slack.abs() <= BOUNDARY_TOL {
        let ep = extremal_product(n, &(&nn / from_f64(max)? - int(1)))?;
        (Case::SecondKind, ep.product, Some(ep.numerator), None)
    } else {
        let first = extremal_product(n, &(from_f64(max)? - &nn))?;
        let second = extremal_product(n, &(&nn / from_f64(max)? - int(1)))?;
        let paths = ZeroPaths::new(first.product.zeros().to_vec(), second.product.zeros().to_vec())?;
        let (state, product) = solve_t(&paths, min, max)?;
        (Case::Homotopy, product, None, Some(state))
    };

    let achieved = product.extrema(0)?;
    let miss = (achieved.max - max).abs().max((achieved.min - min).abs());
    if miss > RESULT_TOL {
        return Err(Error::numeric(
            format!(
                "constructed product has M = {}, m = {} for targets ({max}, {min})",
                achieved.max, achieved.min
            ),
            miss,
        ));
    }
    Ok(Construction {
        product,
        case,
        numerator,
        achieved,
        homotopy,
    })
}
