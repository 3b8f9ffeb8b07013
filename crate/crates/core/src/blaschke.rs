//! Finite Blaschke products `B(z) = alpha prod (z - a_k)/(1 - conj(a_k) z)`.
//!
//! On the unit circle `|B'(z)|` equals the sum of Poisson kernels at the
//! zeros, which is what every scan in this module evaluates.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polynomial::ComplexPoly;
use crate::tol::Tolerances;

/// Scan density per unit of degree.
pub const SAMPLES_PER_DEGREE: usize = 64;
/// Smallest scan the extrema search accepts.
pub const MIN_SAMPLES: usize = 4096;
/// Largest scan used to resolve zeros close to the circle.
pub const MAX_SAMPLES: usize = 1 << 22;
/// Samples at which a scan is split across threads.
const PARALLEL_WORK: usize = 1 << 17;
const BISECTION_CAP: usize = 200;

/// Scan size actually used for a product of degree `n`.
pub fn scan_samples(requested: usize, n: usize) -> usize {
    requested.max(MIN_SAMPLES).max(SAMPLES_PER_DEGREE * n)
}

/// `t_j = -pi + 2 pi j / samples`.
pub fn grid_angle(j: usize, samples: usize) -> f64 {
    -PI + TAU * j as f64 / samples as f64
}

/// Poisson kernel `(1 - |a|^2) / |z - a|^2` for `a` in the disk and `z` on
/// the circle.
pub fn poisson_kernel(a: Complex64, z: Complex64) -> Result<f64> {
    if !(a.norm() < 1.0) {
        return Err(Error::Domain(format!("kernel pole {a} is not inside the unit disk")));
    }
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("evaluation point {z} is not on the unit circle")));
    }
    Ok(poisson(a, z))
}

/// Unchecked kernel; a zero at the origin contributes exactly one.
#[inline]
fn poisson(a: Complex64, z: Complex64) -> f64 {
    if a.is_zero() {
        return 1.0;
    }
    (1.0 - a.norm_sqr()) / (z - a).norm_sqr()
}

/// `d/dt` of `P(a, e^{it})`.
#[inline]
fn poisson_dt(a: Complex64, z: Complex64) -> f64 {
    let d = (z - a).norm_sqr();
    -2.0 * (1.0 - a.norm_sqr()) * (a.conj() * z).im / (d * d)
}

fn wrap_angle(t: f64) -> f64 {
    let w = (t + PI).rem_euclid(TAU) - PI;
    if w >= PI {
        w - TAU
    } else {
        w
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    alpha: Complex64,
}

impl BlaschkeProduct {
    /// Rejects zeros on or outside the circle and a non-unimodular `alpha`.
    /// An empty zero list gives the constant `alpha`.
    pub fn from_zeros(zeros: Vec<Complex64>, alpha: Complex64) -> Result<Self> {
        if let Some(bad) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::Domain(format!("zero {bad} is not inside the unit disk")));
        }
        if !((alpha.norm() - 1.0).abs() <= 1e-12) {
            return Err(Error::Domain(format!("constant factor {alpha} is not unimodular")));
        }
        Ok(BlaschkeProduct { zeros, alpha })
    }

    /// `alpha z^n`.
    pub fn monomial(n: usize) -> Self {
        BlaschkeProduct {
            zeros: vec![Complex64::zero(); n],
            alpha: Complex64::one(),
        }
    }

    /// The product `z B(z)`.
    pub fn times_z(&self) -> Self {
        let mut zeros = self.zeros.clone();
        zeros.push(Complex64::zero());
        BlaschkeProduct {
            zeros,
            alpha: self.alpha,
        }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// Same zeros, constant factor rotated so that `B(point) = value`.
    pub fn normalized_at(&self, point: Complex64, value: Complex64) -> Result<Self> {
        let current = self.eval(point);
        let rotation = value / current;
        let alpha = self.alpha * rotation / rotation.norm();
        BlaschkeProduct::from_zeros(self.zeros.clone(), alpha)
    }

    fn require_degree(&self, min: usize, what: &str) -> Result<usize> {
        let n = self.degree();
        if n < min {
            return Err(Error::Precondition(format!(
                "{what} needs a product of degree at least {min}, got {n}"
            )));
        }
        Ok(n)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.alpha, |acc, &a| acc * (z - a) / (Complex64::one() - a.conj() * z))
    }

    /// `B'(z)` by the product rule on the factors.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let factors: Vec<Complex64> = self
            .zeros
            .iter()
            .map(|&a| (z - a) / (Complex64::one() - a.conj() * z))
            .collect();
        let mut total = Complex64::zero();
        for (k, &a) in self.zeros.iter().enumerate() {
            let denom = Complex64::one() - a.conj() * z;
            let mut term = Complex64::new(1.0 - a.norm_sqr(), 0.0) / (denom * denom);
            for (j, f) in factors.iter().enumerate() {
                if j != k {
                    term *= f;
                }
            }
            total += term;
        }
        self.alpha * total
    }

    /// `(p, q)` with `B = p/q`, `p = sqrt(alpha) prod (z - a_k)` and `q` the
    /// conjugate reciprocal of `p`.
    pub fn to_rational(&self) -> (ComplexPoly, ComplexPoly) {
        let p = ComplexPoly::from_roots(&self.zeros).scale(self.alpha.sqrt());
        let q = p
            .conj_reciprocal(self.degree())
            .expect("degree of the zero polynomial equals the zero count");
        (p, q)
    }

    /// `|B'(z)|` for `z` on the circle, as the Poisson sum over the zeros.
    pub fn deriv_modulus(&self, z: Complex64) -> f64 {
        self.zeros.iter().map(|&a| poisson(a, z)).sum()
    }

    pub fn deriv_modulus_at(&self, t: f64) -> f64 {
        self.deriv_modulus(Complex64::from_polar(1.0, t))
    }

    /// `d/dt |B'(e^{it})|`.
    pub fn deriv_modulus_dt(&self, t: f64) -> f64 {
        let z = Complex64::from_polar(1.0, t);
        self.zeros.iter().map(|&a| poisson_dt(a, z)).sum()
    }

    /// `|B'(e^{it})|` on the uniform grid of `samples` points in `[-pi, pi)`.
    pub fn profile(&self, samples: usize) -> Vec<(f64, f64)> {
        let values = self.scan(samples, samples * self.degree() >= PARALLEL_WORK);
        values
            .into_iter()
            .enumerate()
            .map(|(j, v)| (grid_angle(j, samples), v))
            .collect()
    }

    fn scan(&self, samples: usize, parallel: bool) -> Vec<f64> {
        let f = |j: usize| self.deriv_modulus_at(grid_angle(j, samples));
        if parallel {
            (0..samples).into_par_iter().map(f).collect()
        } else {
            (0..samples).map(f).collect()
        }
    }

    /// Certified `M(B)` and `m(B)`; see [`BlaschkeProduct::extrema_with`].
    pub fn extrema(&self, samples: usize) -> Result<ExtremaReport> {
        let n = self.degree();
        let samples = self.resolved_samples(samples);
        self.extrema_with(samples, samples * n >= PARALLEL_WORK)
    }

    /// Scan size for this product: at least [`scan_samples`], and fine enough
    /// that each Poisson peak spans several grid cells.
    pub fn resolved_samples(&self, requested: usize) -> usize {
        let base = scan_samples(requested, self.degree());
        let r = self.zeros.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let peak = (8.0 * PI / (1.0 - r)).ceil().min(MAX_SAMPLES as f64) as usize;
        base.max(peak)
    }

    /// Dense scan of `|B'(e^{it})|` followed by derivative-sign bisection
    /// around each discrete local extremum. The scan is raised as in
    /// [`BlaschkeProduct::resolved_samples`]. Serial and parallel scans give
    /// identical results.
    pub fn extrema_with(&self, samples: usize, parallel: bool) -> Result<ExtremaReport> {
        self.require_degree(1, "extrema")?;
        let n = self.degree();
        let samples = self.resolved_samples(samples);
        let values = self.scan(samples, parallel);
        let mean = values.iter().sum::<f64>() / samples as f64;

        if self.zeros.iter().all(|a| a.is_zero()) {
            return Ok(ExtremaReport {
                max: n as f64,
                min: n as f64,
                argmax: -PI,
                argmin: -PI,
                mean,
                samples,
            });
        }

        let h = TAU / samples as f64;
        let mut maxima = Vec::new();
        let mut minima = Vec::new();
        for j in 0..samples {
            let prev = values[(j + samples - 1) % samples];
            let next = values[(j + 1) % samples];
            let v = values[j];
            let t = grid_angle(j, samples);
            if v > prev && v >= next {
                maxima.push(self.refine(t - h, t + h, Extremum::Max));
            }
            if v < prev && v <= next {
                minima.push(self.refine(t - h, t + h, Extremum::Min));
            }
        }

        let sample_best = |better: fn(f64, f64) -> bool| {
            let mut best = (grid_angle(0, samples), values[0]);
            for (j, &v) in values.iter().enumerate() {
                if better(v, best.1) {
                    best = (grid_angle(j, samples), v);
                }
            }
            best
        };
        if maxima.is_empty() {
            maxima.push(sample_best(|a, b| a > b));
        }
        if minima.is_empty() {
            minima.push(sample_best(|a, b| a < b));
        }

        let (argmax, max) = pick(&mut maxima, Extremum::Max);
        let (argmin, min) = pick(&mut minima, Extremum::Min);
        Ok(ExtremaReport {
            max,
            min,
            argmax,
            argmin,
            mean,
            samples,
        })
    }

    /// Bisection on the sign of `d/dt |B'|` within `[lo, hi]`, falling back to
    /// golden-section search when the bracket has no sign change.
    fn refine(&self, mut lo: f64, mut hi: f64, kind: Extremum) -> (f64, f64) {
        let sign = match kind {
            Extremum::Max => 1.0,
            Extremum::Min => -1.0,
        };
        let slope = |t: f64| sign * self.deriv_modulus_dt(t);
        let value = |t: f64| sign * self.deriv_modulus_at(t);
        let tol = 1e-12;

        if slope(lo) >= 0.0 && slope(hi) <= 0.0 {
            for _ in 0..BISECTION_CAP {
                if hi - lo <= tol {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if slope(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        } else {
            let ratio = 0.5 * (5f64.sqrt() - 1.0);
            let mut x1 = hi - ratio * (hi - lo);
            let mut x2 = lo + ratio * (hi - lo);
            let (mut f1, mut f2) = (value(x1), value(x2));
            for _ in 0..BISECTION_CAP {
                if hi - lo <= tol {
                    break;
                }
                if f1 < f2 {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + ratio * (hi - lo);
                    f2 = value(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - ratio * (hi - lo);
                    f1 = value(x1);
                }
            }
        }
        let t = wrap_angle(0.5 * (lo + hi));
        (t, self.deriv_modulus_at(t))
    }

    /// Solutions of `B(z) = lambda` (or `z B(z) = lambda` when `lifted`),
    /// sorted by argument.
    pub fn preimages(&self, lambda: Complex64, lifted: bool, tol: &Tolerances) -> Result<PreimageSet> {
        if !((lambda.norm() - 1.0).abs() <= tol.unimodular.max(1e-12)) {
            return Err(Error::Domain(format!("target {lambda} is not unimodular")));
        }
        let min_degree = if lifted { 0 } else { 1 };
        self.require_degree(min_degree, "preimages")?;

        let (p, q) = self.to_rational();
        let poly = if lifted {
            &p.shift(1) - &q.scale(lambda)
        } else {
            &p - &q.scale(lambda)
        };
        let mut points = poly
            .roots_with(tol.root_residual, crate::polynomial::ROOT_MAX_ITER)?
            .roots;

        let target = |z: Complex64| if lifted { z * self.eval(z) } else { self.eval(z) };
        for &z in &points {
            let off_circle = (z.norm() - 1.0).abs();
            if off_circle > tol.circle {
                return Err(Error::numeric(format!("preimage {z} is off the unit circle"), off_circle));
            }
            let miss = (target(z) - lambda).norm();
            if miss > tol.residue {
                return Err(Error::numeric(format!("preimage {z} misses the target"), miss));
            }
        }
        points.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        for pair in points.windows(2) {
            if (pair[0] - pair[1]).norm() <= tol.circle {
                return Err(Error::numeric("preimages are not distinct", (pair[0] - pair[1]).norm()));
            }
        }
        Ok(PreimageSet {
            lambda,
            lifted,
            points,
            weights: None,
        })
    }

    /// Preimages of `lambda` with residue weights `m_j = 1/|B'(z_j)|`, for a
    /// product with `B(0) = 0` and degree at least 2. Verifies that the
    /// weights sum to one and spot-checks the partial-fraction expansion of
    /// `B(z) / (z (B(z) - lambda))`.
    pub fn residue_weights(&self, lambda: Complex64, tol: &Tolerances) -> Result<PreimageSet> {
        self.require_degree(2, "residue weights")?;
        if self.eval(Complex64::zero()).norm() > 1e-12 {
            return Err(Error::Precondition("residue weights need B(0) = 0".into()));
        }
        let mut set = self.preimages(lambda, false, tol)?;
        let weights: Vec<f64> = set.points.iter().map(|&z| 1.0 / self.deriv_modulus(z)).collect();

        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > tol.residue {
            return Err(Error::Verification(format!("residue weights sum to {total}, not 1")));
        }

        for k in 0..16 {
            let radius = if k % 2 == 0 { 0.5 } else { 1.7 };
            let z = Complex64::from_polar(radius, 0.3 + TAU * k as f64 / 16.0);
            let b = self.eval(z);
            let lhs = b / (z * (b - lambda));
            let rhs: Complex64 = set
                .points
                .iter()
                .zip(&weights)
                .map(|(&zj, &m)| m / (z - zj))
                .sum();
            let dev = (lhs - rhs).norm() / lhs.norm().max(1.0);
            if dev > 1e-8 {
                return Err(Error::Verification(format!(
                    "partial-fraction expansion off by {dev:e} at z = {z}"
                )));
            }
        }
        set.weights = Some(weights);
        Ok(set)
    }

    /// `sum_j 1/(|B'(z_j)| + 1)` over the solutions of `z B(z) = lambda`;
    /// equals one for every product.
    pub fn lifted_residue_sum(&self, lambda: Complex64, tol: &Tolerances) -> Result<f64> {
        let set = self.preimages(lambda, true, tol)?;
        Ok(set
            .points
            .iter()
            .map(|&z| 1.0 / (self.deriv_modulus(z) + 1.0))
            .sum())
    }

    /// Checks `n/(M-n+1) <= m <= n-1+n/M` and `0 < m <= n <= M`.
    pub fn check_main_inequality(&self, tol: &Tolerances) -> Result<MainInequalityReport> {
        let n = self.require_degree(1, "main inequality")?;
        let ext = self.extrema(0)?;
        let report = MainInequalityReport::new(n, ext.max, ext.min);
        let worst = report.worst_slack();
        if worst < -tol.inequality {
            return Err(Error::Invariant(format!(
                "degree {n} product with M = {}, m = {} violates the main inequality (slack {worst:e})",
                ext.max, ext.min
            )));
        }
        Ok(report)
    }

    /// Product with zeros `s a_k` and the same constant factor.
    pub fn scale_zeros(&self, s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("scale {s} must be positive")));
        }
        let zeros: Vec<Complex64> = self.zeros.iter().map(|a| a * s).collect();
        if let Some(bad) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::Domain(format!("scaling by {s} pushes zero {bad} out of the disk")));
        }
        Ok(BlaschkeProduct {
            zeros,
            alpha: self.alpha,
        })
    }

    /// Compares `|B_delta'(z)|` (zeros scaled by `delta`) with the Poisson
    /// average of `|B'|` against `P(delta, conj(zeta) z)` at 32 points.
    pub fn check_semigroup_average(&self, delta: f64, tol: &Tolerances) -> Result<SemigroupReport> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Domain(format!("delta = {delta} must lie in (0, 1)")));
        }
        if self.zeros.iter().all(|a| a.is_zero()) {
            return Err(Error::Precondition("semigroup check needs a nonzero zero".into()));
        }
        let scaled = self.scale_zeros(delta)?;
        let mut max_deviation: f64 = 0.0;
        let mut max_nodes = 0;
        for k in 0..32 {
            let z = Complex64::from_polar(1.0, grid_angle(k, 32) + 0.1);
            let direct = scaled.deriv_modulus(z);
            let (average, nodes) = self.poisson_average(delta, z)?;
            max_deviation = max_deviation.max((direct - average).abs());
            max_nodes = max_nodes.max(nodes);
        }
        if max_deviation > tol.semigroup {
            return Err(Error::Verification(format!(
                "semigroup average off by {max_deviation:e}"
            )));
        }
        Ok(SemigroupReport {
            max_deviation,
            quadrature_nodes: max_nodes,
        })
    }

    /// Trapezoid rule on the circle, doubled until two levels agree.
    fn poisson_average(&self, delta: f64, z: Complex64) -> Result<(f64, usize)> {
        let integrand = |zeta: Complex64| {
            self.deriv_modulus(zeta) * poisson(Complex64::new(delta, 0.0), zeta.conj() * z)
        };
        let rule = |nodes: usize| {
            (0..nodes)
                .map(|j| integrand(Complex64::from_polar(1.0, TAU * j as f64 / nodes as f64)))
                .sum::<f64>()
                / nodes as f64
        };
        let mut nodes = 64;
        let mut previous = rule(nodes);
        while nodes < 1 << 22 {
            nodes *= 2;
            let current = rule(nodes);
            if (current - previous).abs() <= 1e-13 * current.abs().max(1.0) {
                return Ok((current, nodes));
            }
            previous = current;
        }
        Err(Error::numeric("Poisson average did not converge", previous))
    }

    /// Whether `B/z^{n-1}` and `z^{n+1}/B` are circle homeomorphisms or
    /// diffeomorphisms.
    pub fn classify_circle_maps(&self, tol: &Tolerances) -> Result<CircleMapClassification> {
        let n = self.require_degree(1, "classification")?;
        let ext = self.extrema(0)?;
        let nf = n as f64;
        let band = tol.classify;
        Ok(CircleMapClassification {
            degree: n,
            max: ext.max,
            min: ext.min,
            lower_homeomorphism: Verdict::compare(ext.min - (nf - 1.0), band),
            lower_diffeomorphism: Verdict::compare(ext.min - (nf - 1.0), band),
            upper_homeomorphism: Verdict::compare((nf + 1.0) - ext.max, band),
            upper_diffeomorphism: Verdict::compare((nf + 1.0) - ext.max, band),
        })
    }
}

#[derive(Clone, Copy)]
enum Extremum {
    Max,
    Min,
}

/// Extreme value over refined candidates; near-ties go to the smallest angle.
fn pick(candidates: &mut [(f64, f64)], kind: Extremum) -> (f64, f64) {
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let key = |v: f64| match kind {
        Extremum::Max => v,
        Extremum::Min => -v,
    };
    let best = candidates
        .iter()
        .map(|c| key(c.1))
        .fold(f64::NEG_INFINITY, f64::max);
    let margin = 1e-12 * best.abs().max(1.0);
    *candidates
        .iter()
        .find(|c| key(c.1) >= best - margin)
        .expect("at least one candidate")
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremaReport {
    /// `M(B)`
    pub max: f64,
    /// `m(B)`
    pub min: f64,
    pub argmax: f64,
    pub argmin: f64,
    /// Grid mean of `|B'|`; equals the degree.
    pub mean: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreimageSet {
    pub lambda: Complex64,
    pub lifted: bool,
    pub points: Vec<Complex64>,
    pub weights: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainInequalityReport {
    pub degree: usize,
    pub max: f64,
    pub min: f64,
    /// `m - n/(M-n+1)`
    pub left_slack: f64,
    /// `n-1+n/M - m`
    pub right_slack: f64,
    /// Smallest of `m`, `n - m`, `M - n`.
    pub trivial_slack: f64,
}

impl MainInequalityReport {
    pub fn new(n: usize, max: f64, min: f64) -> Self {
        let nf = n as f64;
        MainInequalityReport {
            degree: n,
            max,
            min,
            left_slack: min - nf / (max - nf + 1.0),
            right_slack: nf - 1.0 + nf / max - min,
            trivial_slack: min.min(nf - min).min(max - nf),
        }
    }

    pub fn worst_slack(&self) -> f64 {
        self.left_slack.min(self.right_slack).min(self.trivial_slack)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemigroupReport {
    pub max_deviation: f64,
    pub quadrature_nodes: usize,
}

/// Three-valued comparison result; `Boundary` means equality within the band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Boundary,
}

impl Verdict {
    fn compare(margin: f64, band: f64) -> Self {
        if margin.abs() <= band {
            Verdict::Boundary
        } else if margin > 0.0 {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    /// Reading for a non-strict inequality: equality counts as holding.
    pub fn inclusive(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::Boundary)
    }

    /// Reading for a strict inequality: equality counts as failing.
    pub fn strict(self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleMapClassification {
    pub degree: usize,
    pub max: f64,
    pub min: f64,
    /// `B/z^{n-1}` is a homeomorphism iff `m >= n-1`.
    pub lower_homeomorphism: Verdict,
    /// `B/z^{n-1}` is a diffeomorphism iff `m > n-1`.
    pub lower_diffeomorphism: Verdict,
    /// `z^{n+1}/B` is a homeomorphism iff `M <= n+1`.
    pub upper_homeomorphism: Verdict,
    /// `z^{n+1}/B` is a diffeomorphism iff `M < n+1`.
    pub upper_diffeomorphism: Verdict,
}

impl CircleMapClassification {
    pub fn lower_is_homeomorphism(&self) -> bool {
        self.lower_homeomorphism.inclusive()
    }
    pub fn lower_is_diffeomorphism(&self) -> bool {
        self.lower_diffeomorphism.strict()
    }
    pub fn upper_is_homeomorphism(&self) -> bool {
        self.upper_homeomorphism.inclusive()
    }
    pub fn upper_is_diffeomorphism(&self) -> bool {
        self.upper_diffeomorphism.strict()
    }
}
