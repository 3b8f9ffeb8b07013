//! Univariate polynomials with exact rational or complex double coefficients.
//!
//! Coefficient `k` is the coefficient of `z^k`. Both types keep their
//! coefficient vectors trimmed: the last stored coefficient is nonzero, and
//! the zero polynomial has no coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// Iteration cap of the simultaneous root finder.
pub const ROOT_MAX_ITER: usize = 500;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c z^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    /// Value at `z = 1`, i.e. the coefficient sum.
    pub fn coefficient_sum(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs }
    }

    /// `z^n p(1/z)`: the conjugate-reciprocal polynomial, since coefficients
    /// are real.
    pub fn reciprocal(&self, n: usize) -> Result<Self> {
        check_pad(self.degree(), n)?;
        let mut coeffs: Vec<Rational> = (0..=n).map(|k| self.coeff(k)).collect();
        coeffs.reverse();
        Ok(Self::new(coeffs))
    }

    /// One rounding per coefficient.
    pub fn to_complex(&self) -> ComplexPoly {
        ComplexPoly::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(to_f64(c), 0.0))
                .collect(),
        )
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $f:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: &$ty) -> $ty {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(RationalPoly, Add, add);
forward_owned!(RationalPoly, Sub, sub);
forward_owned!(RationalPoly, Mul, mul);

fn check_pad(degree: Option<usize>, n: usize) -> Result<()> {
    match degree {
        Some(d) if d > n => Err(Error::DegreeMismatch {
            requested: n,
            actual: d,
        }),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::one()];
        for r in roots {
            let mut next = vec![Complex64::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_else(Complex64::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_else(Complex64::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        ComplexPoly { coeffs }
    }

    /// `z^n conj(p(1/conj(z)))`: coefficient `k` of the result is the
    /// conjugate of coefficient `n - k` of `self`.
    pub fn conj_reciprocal(&self, n: usize) -> Result<Self> {
        check_pad(self.degree(), n)?;
        Ok(Self::new((0..=n).map(|k| self.coeff(n - k).conj()).collect()))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// All complex roots with multiplicity, default tolerance.
    pub fn roots(&self) -> Result<RootSet> {
        self.roots_with(1e-10, ROOT_MAX_ITER)
    }

    /// Aberth–Ehrlich simultaneous iteration followed by a guarded Newton
    /// polish. Fails when the scaled residual stays above `tol`.
    pub fn roots_with(&self, tol: f64, max_iter: usize) -> Result<RootSet> {
        let degree = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::Precondition(
                    "root finding needs a polynomial of degree at least 1".into(),
                ))
            }
        };

        // Exact zeros at the origin are split off first.
        let zeros_at_origin = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let reduced = ComplexPoly::new(self.coeffs[zeros_at_origin..].to_vec());
        let mut roots = vec![Complex64::zero(); zeros_at_origin];
        if let Some(d) = reduced.degree().filter(|&d| d > 0) {
            roots.extend(aberth(&reduced, d, max_iter));
        }
        debug_assert_eq!(roots.len(), degree);

        for r in roots.iter_mut() {
            *r = newton_polish(self, *r);
        }
        sort_roots(&mut roots);

        let residual = self.scaled_residual(&roots);
        if !(residual <= tol) {
            return Err(Error::numeric(
                format!("root finder did not reach residual {tol:e} for degree {degree}"),
                residual,
            ));
        }
        Ok(RootSet { roots, residual })
    }

    /// `max |p(r)| / (max_k |c_k| * max(1, |r|)^deg)` over the given points.
    pub fn scaled_residual(&self, roots: &[Complex64]) -> f64 {
        let scale = self.max_abs_coeff();
        let n = self.degree().unwrap_or(0) as i32;
        roots
            .iter()
            .map(|&r| self.eval(r).norm() / (scale * r.norm().max(1.0).powi(n)))
            .fold(0.0, f64::max)
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

forward_owned!(ComplexPoly, Add, add);
forward_owned!(ComplexPoly, Sub, sub);
forward_owned!(ComplexPoly, Mul, mul);

/// The ring operations `wronskian_combo` needs, in either arithmetic.
pub trait PolyRing: Sized {
    fn derivative(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn shift(&self, k: usize) -> Self;
}

impl PolyRing for RationalPoly {
    fn derivative(&self) -> Self {
        RationalPoly::derivative(self)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn shift(&self, k: usize) -> Self {
        RationalPoly::shift(self, k)
    }
}

impl PolyRing for ComplexPoly {
    fn derivative(&self) -> Self {
        ComplexPoly::derivative(self)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn shift(&self, k: usize) -> Self {
        ComplexPoly::shift(self, k)
    }
}

/// `z (f g' - f' g)`, in the arithmetic of the inputs.
pub fn wronskian_combo<P: PolyRing>(f: &P, g: &P) -> P {
    f.times(&g.derivative())
        .minus(&f.derivative().times(g))
        .shift(1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// Sorted by argument, then modulus.
    pub roots: Vec<Complex64>,
    pub residual: f64,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        a.arg()
            .total_cmp(&b.arg())
            .then(a.norm().total_cmp(&b.norm()))
    });
}

fn aberth(p: &ComplexPoly, degree: usize, max_iter: usize) -> Vec<Complex64> {
    let lead = p.leading();
    let monic = p.scale(lead.inv());

    // Start on a circle whose radius is the geometric mean of root moduli,
    // rotated off the real axis so that symmetric configurations do not stall.
    let radius = (monic.coeff(0).norm()).powf(1.0 / degree as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let (v, dv) = monic.eval_with_derivative(z[i]);
            if v.is_zero() {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step <= 4.0 * f64::EPSILON {
            break;
        }
    }
    z
}

/// Newton steps accepted only while they reduce `|p|`.
fn newton_polish(p: &ComplexPoly, mut z: Complex64) -> Complex64 {
    let mut best = p.eval(z).norm();
    for _ in 0..3 {
        if best == 0.0 {
            break;
        }
        let (v, dv) = p.eval_with_derivative(z);
        let candidate = z - v / dv;
        if !candidate.is_finite() {
            break;
        }
        let value = p.eval(candidate).norm();
        if value < best {
            best = value;
            z = candidate;
        } else {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn eval_examples() {
        let p = ComplexPoly::from_real(&[1.0, 3.0, 6.0]);
        assert_eq!(p.eval(c(0.0, 0.0)), c(1.0, 0.0));
        assert_eq!(p.eval(c(1.0, 0.0)), c(10.0, 0.0));
        let id = ComplexPoly::from_real(&[0.0, 1.0]);
        assert_eq!(id.eval(c(0.0, 1.0)), c(0.0, 1.0));
    }

    #[test]
    fn conj_reciprocal_examples() {
        let p = ComplexPoly::from_real(&[1.0, 3.0, 6.0]);
        assert_eq!(p.conj_reciprocal(2).unwrap(), ComplexPoly::from_real(&[6.0, 3.0, 1.0]));
        let one = ComplexPoly::from_real(&[1.0]);
        assert_eq!(
            one.conj_reciprocal(3).unwrap().coeffs(),
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
        let q = ComplexPoly::new(vec![c(1.0, 2.0), c(0.0, -1.0)]);
        assert_eq!(q.conj_reciprocal(1).unwrap().coeffs(), &[c(0.0, 1.0), c(1.0, -2.0)]);
    }

    #[test]
    fn conj_reciprocal_rejects_short_padding() {
        let p = ComplexPoly::from_real(&[1.0, 3.0, 6.0]);
        assert_eq!(
            p.conj_reciprocal(1),
            Err(Error::DegreeMismatch { requested: 1, actual: 2 })
        );
        assert!(RationalPoly::from_ints(&[1, 2, 3]).reciprocal(1).is_err());
    }

    #[test]
    fn roots_of_symmetric_quadratic() {
        let r = ComplexPoly::from_real(&[-1.0, 0.0, 1.0]).roots().unwrap();
        assert_eq!(r.len(), 2);
        for want in [c(1.0, 0.0), c(-1.0, 0.0)] {
            assert!(r.roots.iter().any(|&z| close(z, want, 1e-14)));
        }
    }

    #[test]
    fn roots_of_example_numerator() {
        let r = ComplexPoly::from_real(&[1.0, 3.0, 6.0]).roots().unwrap();
        let s = 15f64.sqrt() / 12.0;
        assert!(close(r.roots[0], c(-0.25, -s), 1e-14));
        assert!(close(r.roots[1], c(-0.25, s), 1e-14));
        assert!(r.residual <= 1e-10);
    }

    #[test]
    fn roots_of_palindromic_cubic_lie_on_circle() {
        // 6 + 2z - 2z^2 - 6z^3 = -2 (z - 1)(3z^2 + 4z + 3)
        let r = ComplexPoly::from_real(&[6.0, 2.0, -2.0, -6.0]).roots().unwrap();
        let s = 5f64.sqrt() / 3.0;
        let expected = [c(-2.0 / 3.0, -s), c(1.0, 0.0), c(-2.0 / 3.0, s)];
        for (got, want) in r.roots.iter().zip(expected) {
            assert!(close(*got, want, 1e-13), "{got} vs {want}");
            assert!((got.norm() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn roots_at_origin_are_exact() {
        let r = ComplexPoly::from_real(&[0.0, 0.0, 1.0]).roots().unwrap();
        assert_eq!(r.roots, vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(ComplexPoly::from_real(&[3.0]).roots().is_err());
    }

    #[test]
    fn wronskian_examples() {
        let f = RationalPoly::from_ints(&[1, 1]);
        let g = RationalPoly::from_ints(&[1, 0, 1]);
        assert_eq!(wronskian_combo(&f, &g), RationalPoly::from_ints(&[0, -1, 2, 1]));
        assert!(wronskian_combo(&g, &g).is_zero());

        let fc = f.to_complex();
        let gc = g.to_complex();
        assert_eq!(wronskian_combo(&fc, &gc), ComplexPoly::from_real(&[0.0, -1.0, 2.0, 1.0]));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let p = RationalPoly::new(vec![rat(1, 3), rat(-2, 7), int(5)]);
        let q = RationalPoly::new(vec![rat(3, 2), int(0), rat(-1, 9), rat(4, 5)]);
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        assert_eq!(lhs, rhs);
        assert_eq!(p.eval(&int(1)), p.coefficient_sum());
        assert!((&p - &p).is_zero());
        assert_eq!(p.reciprocal(2).unwrap().reciprocal(2).unwrap(), p);
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn complex_coeffs(max_len: usize) -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..=max_len)
            .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    }

    proptest! {
        #[test]
        fn conj_reciprocal_is_involution(coeffs in complex_coeffs(8), extra in 0usize..3) {
            let p = ComplexPoly::new(coeffs);
            let n = p.degree().unwrap_or(0) + extra;
            let back = p.conj_reciprocal(n).unwrap().conj_reciprocal(n).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn roots_rebuild_polynomial(coeffs in complex_coeffs(10)) {
            let p = ComplexPoly::new(coeffs);
            prop_assume!(p.degree().unwrap_or(0) >= 1);
            prop_assume!(p.leading().norm() > 0.1);
            let set = p.roots().unwrap();
            prop_assert_eq!(set.len(), p.degree().unwrap());
            let rebuilt = ComplexPoly::from_roots(&set.roots).scale(p.leading());
            let scale = p.max_abs_coeff();
            for k in 0..=p.degree().unwrap() {
                prop_assert!((rebuilt.coeff(k) - p.coeff(k)).norm() <= 1e-8 * scale,
                    "coefficient {} differs: {} vs {}", k, rebuilt.coeff(k), p.coeff(k));
            }
        }

        #[test]
        fn product_rule_holds_exactly(a in prop::collection::vec(-20i64..20, 0..6),
                                      b in prop::collection::vec(-20i64..20, 0..6)) {
            let p = RationalPoly::from_ints(&a);
            let q = RationalPoly::from_ints(&b);
            prop_assert_eq!((&p * &q).derivative(), &(&p.derivative() * &q) + &(&p * &q.derivative()));
        }
    }
}
