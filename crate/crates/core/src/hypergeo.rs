//! Terminating Gauss hypergeometric polynomials `F(-n, b; c; z)` with exact
//! rational coefficients, and exact checks of the identities they satisfy.
//!
//! Pochhammer symbols follow the rising-factorial convention with
//! `(x)_0 = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{wronskian_combo, RationalPoly};
use crate::rational::{format_rational, int, to_f64, Rational};

/// Rising factorial `x (x+1) ... (x+k-1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

fn factorial(k: usize) -> Rational {
    pochhammer(&Rational::one(), k)
}

/// Parameters of `F(a, b; c; z)` with `a = -n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeoParams {
    n: usize,
    b: Rational,
    c: Rational,
}

impl HypergeoParams {
    /// Rejects `c` in `{0, -1, ..., 1-n}`, where some `(c)_k` with `k <= n`
    /// would vanish.
    pub fn new(n: usize, b: Rational, c: Rational) -> Result<Self> {
        if c.is_integer() && !c.is_positive() && c >= int(1 - n as i64) {
            return Err(Error::Parameter(format!(
                "c = {} makes (c)_k vanish for some k <= {n}",
                format_rational(&c)
            )));
        }
        Ok(HypergeoParams { n, b, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> Rational {
        int(-(self.n as i64))
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeoPoly {
    pub params: HypergeoParams,
    pub poly: RationalPoly,
}

/// `F(-n, b; c; z)` from the ratio recursion
/// `c_{k+1}/c_k = (k-n)(k+b)/((k+1)(k+c))`, `c_0 = 1`.
pub fn hyper_poly(n: usize, b: Rational, c: Rational) -> Result<HypergeoPoly> {
    let params = HypergeoParams::new(n, b, c)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut current = Rational::one();
    coeffs.push(current.clone());
    for k in 0..n {
        let kk = int(k as i64);
        let num = (&kk - int(n as i64)) * (&kk + &params.b);
        let den = (&kk + Rational::one()) * (&kk + &params.c);
        current = current * num / den;
        coeffs.push(current.clone());
    }
    Ok(HypergeoPoly {
        params,
        poly: RationalPoly::new(coeffs),
    })
}

fn hp(n: usize, b: &Rational, c: &Rational) -> Result<RationalPoly> {
    Ok(hyper_poly(n, b.clone(), c.clone())?.poly)
}

/// Validates `nu > -1`, and `nu != 0` unless `allow_zero`.
pub fn check_nu(nu: &Rational, allow_zero: bool) -> Result<()> {
    if *nu <= int(-1) {
        return Err(Error::Parameter(format!(
            "nu = {} must exceed -1",
            format_rational(nu)
        )));
    }
    if !allow_zero && nu.is_zero() {
        return Err(Error::Parameter("nu must be nonzero".into()));
    }
    Ok(())
}

/// Parameters `(b, c) = (nu + 2, -n - nu + 1)` of the extremal numerator.
pub fn extremal_numerator_params(n: usize, nu: &Rational) -> (Rational, Rational) {
    (nu + int(2), int(1 - n as i64) - nu)
}

/// The extremal numerator `F(-n, nu+2; -n-nu+1; z)`.
pub fn extremal_numerator(n: usize, nu: &Rational) -> Result<RationalPoly> {
    check_nu(nu, false)?;
    let (b, c) = extremal_numerator_params(n, nu);
    hp(n, &b, &c)
}

/// Closed form of the extremal numerator at `z = 1`: `(2nu+2)_n / (nu)_n`.
pub fn hyper_at_one(n: usize, nu: &Rational) -> Result<Rational> {
    check_nu(nu, false)?;
    Ok(pochhammer(&(nu * int(2) + int(2)), n) / pochhammer(nu, n))
}

/// `kappa = nu (nu+1) / ((n+nu)(n+nu+1))`.
pub fn kappa(n: usize, nu: &Rational) -> Result<Rational> {
    check_nu(nu, false)?;
    let nn = int(n as i64);
    Ok(nu * (nu + int(1)) / ((&nn + nu) * (&nn + nu + int(1))))
}

/// Outcome of one exact identity: `deviation` is `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub deviation: RationalPoly,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, lhs: &RationalPoly, rhs: &RationalPoly) -> Self {
        IdentityReport {
            name: name.into(),
            deviation: lhs - rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.deviation.is_zero()
    }

    pub fn max_deviation(&self) -> Rational {
        self.deviation
            .coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn into_result(self) -> Result<Self> {
        if self.holds() {
            Ok(self)
        } else {
            Err(Error::Verification(format!(
                "{}: deviation polynomial has max coefficient {}",
                self.name,
                format_rational(&self.max_deviation())
            )))
        }
    }
}

/// The two contiguous relations and the two derivative relations, each as an
/// exact polynomial identity.
pub fn check_contiguous(params: &HypergeoParams) -> Result<Vec<IdentityReport>> {
    let n = params.n;
    let a = params.a();
    let b = &params.b;
    let c = &params.c;
    let one = Rational::one();
    let z = RationalPoly::z();
    let one_minus_z = &RationalPoly::constant(one.clone()) - &z;

    let f = hp(n, b, c)?;
    let zf_prime = f.derivative().shift(1);
    let f_a_up = if n == 0 {
        // a + 1 = 1 is not terminating, but the relation multiplies it by a = 0.
        RationalPoly::zero()
    } else {
        hp(n - 1, b, c)?
    };
    let f_a_down = hp(n + 1, b, c)?;
    let f_c_down = hp(n, b, &(c - &one))?;
    let f_c_up = hp(n, b, &(c + &one))?;
    let f_b_up = hp(n, &(b + &one), c)?;

    let mut out = Vec::with_capacity(4);

    // (c-a-1) F(a,b;c) + a F(a+1,b;c) - (c-1) F(a,b;c-1) = 0
    let lhs = &(&f.scale(&(c - &a - &one)) + &f_a_up.scale(&a)) - &f_c_down.scale(&(c - &one));
    out.push(IdentityReport::new("contiguous (c-a-1, a+1, c-1)", &lhs, &RationalPoly::zero()));

    // c(1-z) F(a,b;c) - c F(a-1,b;c) + (c-b) z F(a,b;c+1) = 0
    let lhs = &(&(&one_minus_z * &f).scale(c) - &f_a_down.scale(c)) + &f_c_up.scale(&(c - b)).shift(1);
    out.push(IdentityReport::new("contiguous (1-z, a-1, c+1)", &lhs, &RationalPoly::zero()));

    // z F' = b (F(a,b+1;c) - F)
    let rhs = (&f_b_up - &f).scale(b);
    out.push(IdentityReport::new("derivative via b+1", &zf_prime, &rhs));

    // z F' = (c-1) (F(a,b;c-1) - F)
    let rhs = (&f_c_down - &f).scale(&(c - &one));
    out.push(IdentityReport::new("derivative via c-1", &zf_prime, &rhs));

    Ok(out)
}

/// `z (f g' - f' g) = c (f g - h^2)` for `f = F(a,b+1;c+1)`,
/// `g = F(a,b-1;c-1)`, `h = F(a,b;c)`, with `a = -n` and `c = a - b + 1`.
pub fn check_wronskian_identity(n: usize, b: &Rational) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Parameter("a = -n must be a negative integer".into()));
    }
    let a = int(-(n as i64));
    let c = &a - b + int(1);
    if c.is_integer() && c >= a && c <= int(1) {
        return Err(Error::Parameter(format!(
            "c = a - b + 1 = {} lies in the excluded set {{a, ..., 0, 1}}",
            format_rational(&c)
        )));
    }
    let one = Rational::one();
    let f = hp(n, &(b + &one), &(&c + &one))?;
    let g = hp(n, &(b - &one), &(&c - &one))?;
    let h = hp(n, b, &c)?;
    let lhs = wronskian_combo(&f, &g);
    let rhs = (&(&f * &g) - &(&h * &h)).scale(&c);
    Ok(IdentityReport::new(
        format!("wronskian identity (n={n}, b={})", format_rational(b)),
        &lhs,
        &rhs,
    ))
}

/// `z^n F(-n,b;c;1/z) = (-1)^n (b)_n/(c)_n F(-n, 1-c-n; 1-b-n; z)`.
pub fn check_reciprocal_transform(n: usize, b: &Rational, c: &Rational) -> Result<IdentityReport> {
    let nn = int(n as i64);
    let lhs = hp(n, b, c)?.reciprocal(n)?;
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let constant = sign * pochhammer(b, n) / pochhammer(c, n);
    let rhs = hp(n, &(int(1) - c - &nn), &(int(1) - b - &nn))?.scale(&constant);
    Ok(IdentityReport::new(
        format!(
            "reciprocal transform (n={n}, b={}, c={})",
            format_rational(b),
            format_rational(c)
        ),
        &lhs,
        &rhs,
    ))
}

/// The Pochhammer form `(-1)^n (-n-nu+1)_n / (nu+2)_n` of `kappa` against
/// its closed form.
pub fn check_kappa(n: usize, nu: &Rational) -> Result<IdentityReport> {
    let (b, c) = extremal_numerator_params(n, nu);
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let pochhammer_form = sign * pochhammer(&c, n) / pochhammer(&b, n);
    Ok(IdentityReport::new(
        format!("kappa (n={n}, nu={})", format_rational(nu)),
        &RationalPoly::constant(pochhammer_form),
        &RationalPoly::constant(kappa(n, nu)?),
    ))
}

/// The coefficient sum of the extremal numerator against the
/// Chu–Vandermonde closed form.
pub fn check_chu_vandermonde(n: usize, nu: &Rational) -> Result<IdentityReport> {
    let p = extremal_numerator(n, nu)?;
    Ok(IdentityReport::new(
        format!("value at 1 (n={n}, nu={})", format_rational(nu)),
        &RationalPoly::constant(p.coefficient_sum()),
        &RationalPoly::constant(hyper_at_one(n, nu)?),
    ))
}

/// Gegenbauer polynomial `C_n^(lambda)(x)` by the three-term recurrence.
pub fn gegenbauer(n: usize, lambda: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * x;
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 * x * (kf + lambda) * cur - (kf + 2.0 * lambda - 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `h = F(-n, lambda; -n+1-lambda; z)`, the polynomial tied to `C_n^(lambda)`.
pub fn gegenbauer_companion(n: usize, lambda: &Rational) -> Result<RationalPoly> {
    hp(n, lambda, &(int(1 - n as i64) - lambda))
}

fn check_lambda(lambda: &Rational) -> Result<()> {
    if *lambda <= Rational::new((-1).into(), 2.into()) || lambda.is_zero() {
        return Err(Error::Parameter(format!(
            "lambda = {} must satisfy lambda > -1/2, lambda != 0",
            format_rational(lambda)
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct GegenbauerReport {
    /// Largest deviation, relative to `max(1, max |C_n|)` over the grid.
    pub max_deviation: f64,
    pub worst_theta: f64,
}

/// `C_n^(lambda)(cos t) = e^{i n t} ((lambda)_n / n!) h(e^{-2 i t})` over the grid.
pub fn check_gegenbauer_relation(
    n: usize,
    lambda: &Rational,
    thetas: &[f64],
    tol: f64,
) -> Result<GegenbauerReport> {
    check_lambda(lambda)?;
    let h = gegenbauer_companion(n, lambda)?.to_complex();
    let factor = to_f64(&(pochhammer(lambda, n) / factorial(n)));
    let lam = to_f64(lambda);

    let mut scale: f64 = 1.0;
    let mut worst = (0.0, thetas.first().copied().unwrap_or(0.0));
    for &theta in thetas {
        let lhs = gegenbauer(n, lam, theta.cos());
        let rhs = Complex64::from_polar(factor, n as f64 * theta)
            * h.eval(Complex64::from_polar(1.0, -2.0 * theta));
        scale = scale.max(lhs.abs());
        let dev = (rhs - lhs).norm();
        if dev > worst.0 {
            worst = (dev, theta);
        }
    }
    let report = GegenbauerReport {
        max_deviation: worst.0 / scale,
        worst_theta: worst.1,
    };
    if report.max_deviation > tol {
        return Err(Error::Verification(format!(
            "Gegenbauer relation off by {:e} at theta = {}",
            report.max_deviation, report.worst_theta
        )));
    }
    Ok(report)
}

/// Uniform grid of `count` angles in `[0, pi]`.
pub fn theta_grid(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count)
            .map(|k| PI * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootLocationReport {
    pub roots: Vec<Complex64>,
    pub max_modulus: f64,
    pub max_circle_deviation: f64,
    pub min_separation: f64,
}

impl RootLocationReport {
    fn from_roots(roots: Vec<Complex64>) -> Self {
        let max_modulus = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
        let max_circle_deviation = roots
            .iter()
            .map(|r| (r.norm() - 1.0).abs())
            .fold(0.0, f64::max);
        let mut min_separation = f64::INFINITY;
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                min_separation = min_separation.min((a - b).norm());
            }
        }
        RootLocationReport {
            roots,
            max_modulus,
            max_circle_deviation,
            min_separation,
        }
    }
}

fn roots_of(p: &RationalPoly) -> Result<Vec<Complex64>> {
    Ok(p.to_complex().roots()?.roots)
}

/// Roots of `F(-n, lambda; -n+1-lambda; z)` are simple and on the circle.
pub fn check_roots_on_circle(n: usize, lambda: &Rational, tol: f64) -> Result<RootLocationReport> {
    check_lambda(lambda)?;
    let report = RootLocationReport::from_roots(roots_of(&gegenbauer_companion(n, lambda)?)?);
    if report.max_circle_deviation > tol || report.min_separation <= tol {
        let offending: Vec<String> = report
            .roots
            .iter()
            .filter(|r| (r.norm() - 1.0).abs() > tol)
            .map(|r| r.to_string())
            .collect();
        return Err(Error::Verification(format!(
            "roots of h (n={n}, lambda={}) not simple on the circle: max ||z|-1| = {:e}, min separation = {:e}, off-circle: [{}]",
            format_rational(lambda),
            report.max_circle_deviation,
            report.min_separation,
            offending.join(", ")
        )));
    }
    Ok(report)
}

/// Roots of the extremal numerator lie in the open disk: `|z| <= 1 - margin`.
pub fn check_roots_in_disk(n: usize, nu: &Rational, margin: f64) -> Result<RootLocationReport> {
    let report = RootLocationReport::from_roots(roots_of(&extremal_numerator(n, nu)?)?);
    if report.max_modulus > 1.0 - margin {
        return Err(Error::Verification(format!(
            "extremal numerator (n={n}, nu={}) has a root of modulus {}",
            format_rational(nu),
            report.max_modulus
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// Independent route: `(a)_k (b)_k / ((c)_k k!)` term by term.
    fn direct(n: usize, b: &Rational, c: &Rational) -> RationalPoly {
        let a = int(-(n as i64));
        RationalPoly::new(
            (0..=n)
                .map(|k| pochhammer(&a, k) * pochhammer(b, k) / (pochhammer(c, k) * factorial(k)))
                .collect(),
        )
    }

    fn nu_grid() -> Vec<Rational> {
        vec![rat(-3, 8), rat(-1, 2), rat(-1, 4), rat(1, 4), rat(1, 2), int(1), int(2), int(5)]
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&int(3), 4), int(360));
        assert_eq!(pochhammer(&rat(-7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
    }

    #[test]
    fn pochhammer_splits() {
        for x in [rat(-7, 3), rat(1, 2), int(-4), int(3)] {
            for j in 0..=30 {
                for k in (0..=30 - j).step_by(7) {
                    assert_eq!(
                        pochhammer(&x, j + k),
                        pochhammer(&x, j) * pochhammer(&(&x + int(j as i64)), k)
                    );
                }
            }
        }
    }

    #[test]
    fn hyper_poly_examples() {
        assert_eq!(hyper_poly(2, int(3), int(-2)).unwrap().poly, RationalPoly::from_ints(&[1, 3, 6]));
        assert_eq!(
            hyper_poly(2, int(1), int(-4)).unwrap().poly,
            RationalPoly::new(vec![int(1), rat(1, 2), rat(1, 6)])
        );
        // nu = -1/4: b = 7/4, c = -n - nu + 1 = -3/4
        assert_eq!(
            hyper_poly(2, rat(7, 4), rat(-3, 4)).unwrap().poly,
            RationalPoly::new(vec![int(1), rat(14, 3), rat(-77, 3)])
        );
    }

    #[test]
    fn recursion_matches_direct_formula() {
        for n in 1..=12 {
            for nu in nu_grid() {
                let (b, c) = extremal_numerator_params(n, &nu);
                assert_eq!(hp(n, &b, &c).unwrap(), direct(n, &b, &c), "n={n} nu={nu}");
            }
        }
    }

    #[test]
    fn inadmissible_c_is_rejected() {
        assert!(hyper_poly(3, int(1), int(0)).is_err());
        assert!(hyper_poly(3, int(1), int(-2)).is_err());
        assert!(hyper_poly(3, int(1), int(-3)).is_ok());
        assert!(hyper_poly(3, int(1), rat(-1, 2)).is_ok());
    }

    #[test]
    fn value_at_one_examples() {
        assert_eq!(hyper_at_one(2, &rat(-1, 4)).unwrap(), int(-20));
        assert_eq!(hyper_at_one(2, &int(1)).unwrap(), int(10));
        for n in 1..=10 {
            for nu in [rat(-1, 2), rat(-1, 4), rat(-9, 10)] {
                assert!(hyper_at_one(n, &nu).unwrap().is_negative());
            }
        }
        assert!(hyper_at_one(2, &int(0)).is_err());
        assert!(hyper_at_one(2, &int(-1)).is_err());
    }

    #[test]
    fn value_at_one_is_coefficient_sum() {
        for n in 1..=12 {
            for nu in nu_grid() {
                assert!(check_chu_vandermonde(n, &nu).unwrap().holds());
            }
        }
    }

    #[test]
    fn numerator_sign_pattern() {
        for n in 1..=12 {
            for nu in nu_grid() {
                let p = extremal_numerator(n, &nu).unwrap();
                let coeffs = p.coeffs();
                assert_eq!(coeffs.len(), n + 1);
                assert!(coeffs[..n].iter().all(|c| c.is_positive()), "n={n} nu={nu}");
                assert_eq!(coeffs[n].is_negative(), nu.is_negative(), "n={n} nu={nu}");
            }
        }
    }

    #[test]
    fn contiguous_relations_examples() {
        let cases = [
            (2, int(2), int(-3)),
            (1, rat(3, 7), rat(5, 2)),
            (1, int(-4), rat(-1, 3)),
            (10, rat(5, 2), int(-12)),
        ];
        for (n, b, c) in cases {
            let params = HypergeoParams::new(n, b, c).unwrap();
            for report in check_contiguous(&params).unwrap() {
                assert!(report.holds(), "{}", report.name);
            }
        }
    }

    #[test]
    fn contiguous_rejects_inadmissible_shift() {
        // c - 1 = -1 is inadmissible for n = 2.
        assert!(HypergeoParams::new(2, int(2), int(-1)).is_err());
        let params = HypergeoParams::new(2, int(2), int(-2)).unwrap();
        assert!(check_contiguous(&params).is_err());
    }

    #[test]
    fn a_broken_relation_shows_up() {
        let f = RationalPoly::from_ints(&[1, 3, 6]);
        let g = RationalPoly::from_ints(&[1, 3, 7]);
        let r = IdentityReport::new("probe", &f, &g);
        assert!(!r.holds());
        assert_eq!(r.max_deviation(), int(1));
        assert!(r.into_result().is_err());
    }

    #[test]
    fn wronskian_examples() {
        let report = check_wronskian_identity(2, &int(2)).unwrap();
        assert!(report.holds());
        let f = hp(2, &int(3), &int(-2)).unwrap();
        let g = hp(2, &int(1), &int(-4)).unwrap();
        let h = hp(2, &int(2), &int(-3)).unwrap();
        assert_eq!(h, RationalPoly::new(vec![int(1), rat(4, 3), int(1)]));
        let one = int(1);
        assert_eq!(wronskian_combo(&f, &g).eval(&one), rat(-50, 3));
        assert_eq!((&(&f * &g) - &(&h * &h)).eval(&one) * int(-3), rat(-50, 3));

        assert!(check_wronskian_identity(1, &rat(1, 2)).unwrap().holds());
        assert!(check_wronskian_identity(15, &int(6)).unwrap().holds());
    }

    #[test]
    fn wronskian_excluded_parameters() {
        // a = -2, b = 1 gives c = -2 = a.
        assert!(check_wronskian_identity(2, &int(1)).is_err());
        // b = 0 gives c = a + 1.
        assert!(check_wronskian_identity(3, &int(0)).is_err());
    }

    #[test]
    fn wronskian_grid() {
        for n in 1..=12 {
            for nu in nu_grid() {
                let report = check_wronskian_identity(n, &(&nu + int(1))).unwrap();
                assert!(report.holds(), "{}", report.name);
            }
        }
    }

    #[test]
    fn reciprocal_transform_examples() {
        assert!(check_reciprocal_transform(2, &int(3), &int(-2)).unwrap().holds());
        assert!(check_reciprocal_transform(1, &int(2), &int(-1)).unwrap().holds());
        let constant = pochhammer(&int(3), 2) / pochhammer(&int(-2), 2);
        assert_eq!(constant, int(6));
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(2, &int(1)).unwrap(), rat(1, 6));
        for n in 1..=12 {
            for nu in nu_grid() {
                assert!(check_kappa(n, &nu).unwrap().holds());
            }
        }
    }

    #[test]
    fn gegenbauer_examples() {
        assert!((gegenbauer(1, 1.0, 0.3) - 0.6).abs() < 1e-15);
        assert_eq!(gegenbauer(0, 2.5, 0.7), 1.0);
        assert!(gegenbauer(2, 1.0, 0.5).abs() < 1e-15);
        // Chebyshev U_3(x) = 8x^3 - 4x
        let x: f64 = 0.37;
        assert!((gegenbauer(3, 1.0, x) - (8.0 * x.powi(3) - 4.0 * x)).abs() < 1e-14);
    }

    #[test]
    fn gegenbauer_relation_holds() {
        let report = check_gegenbauer_relation(3, &rat(1, 2), &theta_grid(1000), 1e-10).unwrap();
        assert!(report.max_deviation < 1e-10);
        check_gegenbauer_relation(1, &int(1), &[PI / 2.0], 1e-10).unwrap();
        // theta = 0: C_n(1) = (2 lambda)_n / n!
        for n in 1..=8 {
            let lambda = rat(3, 2);
            check_gegenbauer_relation(n, &lambda, &[0.0], 1e-10).unwrap();
            let closed = to_f64(&(pochhammer(&(&lambda * int(2)), n) / factorial(n)));
            assert!((gegenbauer(n, 1.5, 1.0) - closed).abs() < 1e-10 * closed);
        }
    }

    #[test]
    fn gegenbauer_relation_rejects_bad_lambda() {
        assert!(check_gegenbauer_relation(3, &int(0), &[0.1], 1e-10).is_err());
        assert!(check_gegenbauer_relation(3, &rat(-1, 2), &[0.1], 1e-10).is_err());
    }

    #[test]
    fn roots_on_circle_examples() {
        check_roots_on_circle(2, &int(2), 1e-8).unwrap();
        check_roots_on_circle(20, &rat(1, 2), 1e-8).unwrap();
        check_roots_on_circle(3, &rat(-2, 5), 1e-8).unwrap();
    }

    #[test]
    fn chebyshev_case_has_known_roots() {
        // lambda = 1: C_n is U_n, zeros at cos(k pi/(n+1)); h vanishes at e^{2 i k pi/(n+1)}.
        let n = 9;
        let report = check_roots_on_circle(n, &int(1), 1e-8).unwrap();
        for k in 1..=n {
            let want = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / (n + 1) as f64);
            assert!(report.roots.iter().any(|r| (r - want).norm() < 1e-10));
        }
    }

    #[test]
    fn roots_in_disk_examples() {
        let report = check_roots_in_disk(2, &int(1), 1e-10).unwrap();
        assert!((report.max_modulus - 24f64.sqrt() / 12.0).abs() < 1e-14);
        check_roots_in_disk(15, &int(5), 1e-10).unwrap();
        let report = check_roots_in_disk(15, &rat(-1, 4), 1e-10).unwrap();
        let real_in_unit: Vec<_> = report
            .roots
            .iter()
            .filter(|r| r.im.abs() < 1e-9 && r.re > 0.0 && r.re < 1.0)
            .collect();
        assert_eq!(real_in_unit.len(), 1);
    }
}
