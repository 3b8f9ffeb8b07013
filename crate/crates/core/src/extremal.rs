//! Hypergeometric Blaschke products attaining equality in
//! `n/(M-n+1) <= m <= n-1+n/M`.
//!
//! For `nu > 0` (first kind) `M = n+nu` and `m = n/(nu+1)`; for `-1 < nu < 0`
//! (second kind) `M = n/(nu+1)` and `m = n+nu`. The numerator is
//! `F(-n, nu+2; -n-nu+1; z)` and the denominator its reciprocal.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::blaschke::{BlaschkeProduct, PreimageSet};
use crate::error::{Error, Result};
use crate::hypergeo::{check_nu, extremal_numerator, hyper_poly, IdentityReport};
use crate::polynomial::RationalPoly;
use crate::rational::{format_rational, int, to_f64, Rational};
use crate::tol::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalKind {
    First,
    Second,
    Monomial,
}

impl ExtremalKind {
    pub fn of(nu: &Rational) -> Self {
        if nu.is_positive() {
            ExtremalKind::First
        } else if nu.is_negative() {
            ExtremalKind::Second
        } else {
            ExtremalKind::Monomial
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtremalKind::First => "first",
            ExtremalKind::Second => "second",
            ExtremalKind::Monomial => "monomial",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalSpec {
    pub n: usize,
    pub nu: Rational,
    pub kind: ExtremalKind,
    /// `nu (nu+1) / ((n+nu)(n+nu+1))`
    pub kappa: Rational,
    pub predicted_max: Rational,
    pub predicted_min: Rational,
}

impl ExtremalSpec {
    pub fn new(n: usize, nu: &Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("degree must be at least 1".into()));
        }
        let (predicted_max, predicted_min) = predicted_extrema(n, nu)?;
        let nn = int(n as i64);
        let kappa = nu * (nu + int(1)) / ((&nn + nu) * (&nn + nu + int(1)));
        Ok(ExtremalSpec {
            n,
            nu: nu.clone(),
            kind: ExtremalKind::of(nu),
            kappa,
            predicted_max,
            predicted_min,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "nu": format_rational(&self.nu),
            "kind": self.kind.name(),
            "kappa": format_rational(&self.kappa),
            "M": to_f64(&self.predicted_max),
            "m": to_f64(&self.predicted_min),
        })
    }
}

/// `(M, m)` of the extremal product of degree `n` with offset `nu`.
pub fn predicted_extrema(n: usize, nu: &Rational) -> Result<(Rational, Rational)> {
    check_nu(nu, true)?;
    let nn = int(n as i64);
    let shifted = &nn + nu;
    let divided = &nn / (nu + int(1));
    Ok(match ExtremalKind::of(nu) {
        ExtremalKind::First => (shifted, divided),
        ExtremalKind::Second => (divided, shifted),
        ExtremalKind::Monomial => (nn.clone(), nn),
    })
}

#[derive(Clone, Debug)]
pub struct ExtremalProduct {
    /// Normalized so that `B(1) = 1`.
    pub product: BlaschkeProduct,
    pub spec: ExtremalSpec,
    /// Exact numerator; `z^n` in the monomial case.
    pub numerator: RationalPoly,
}

impl ExtremalProduct {
    /// Exact denominator, the reciprocal of the numerator.
    pub fn denominator(&self) -> RationalPoly {
        self.numerator
            .reciprocal(self.spec.n)
            .expect("numerator has degree n")
    }
}

/// The extremal product of degree `n` with offset `nu`; `nu = 0` gives `z^n`.
pub fn extremal_product(n: usize, nu: &Rational) -> Result<ExtremalProduct> {
    let spec = ExtremalSpec::new(n, nu)?;
    if spec.kind == ExtremalKind::Monomial {
        return Ok(ExtremalProduct {
            product: BlaschkeProduct::monomial(n),
            spec,
            numerator: RationalPoly::monomial(int(1), n),
        });
    }
    let numerator = extremal_numerator(n, nu)?;
    let roots = numerator.to_complex().roots()?.roots;
    if let Some(bad) = roots.iter().find(|r| !(r.norm() < 1.0)) {
        return Err(Error::numeric(
            format!("extremal zero {bad} escaped the unit disk"),
            bad.norm() - 1.0,
        ));
    }
    let product = BlaschkeProduct::from_zeros(roots, Complex64::one())?
        .normalized_at(Complex64::one(), Complex64::one())?;
    Ok(ExtremalProduct {
        product,
        spec,
        numerator,
    })
}

/// `h = F(-n, nu+1; -n-nu; z)`, whose zeros together with `1` solve
/// `z B(z) = 1`.
pub fn extremal_set_polynomial(n: usize, nu: &Rational) -> Result<RationalPoly> {
    check_nu(nu, true)?;
    Ok(hyper_poly(n, nu + int(1), int(-(n as i64)) - nu)?.poly)
}

#[derive(Clone, Debug)]
pub struct ExtremalSetReport {
    /// Solutions of `z B(z) = 1`, sorted by argument.
    pub set: PreimageSet,
    /// `|B'|` at each point of the set.
    pub values: Vec<f64>,
    /// Largest distance between the two computations of the set.
    pub disagreement: f64,
    /// Largest deviation of `|B'|` from its predicted value on the set.
    pub value_deviation: f64,
}

/// Computes `{z : z B(z) = 1}` as lifted preimages and as `{1}` plus the
/// zeros of `h`, and checks `|B'| = n/(nu+1)` at `1` and `n+nu` elsewhere.
pub fn extremal_set(ep: &ExtremalProduct, tol: &Tolerances) -> Result<ExtremalSetReport> {
    let spec = &ep.spec;
    let b = &ep.product;
    let set = b.preimages(Complex64::one(), true, tol)?;

    let h = extremal_set_polynomial(spec.n, &spec.nu)?;
    let mut other = h.to_complex().roots()?.roots;
    other.push(Complex64::one());
    other.sort_by(|a, b| a.arg().total_cmp(&b.arg()));

    if other.len() != set.points.len() {
        return Err(Error::Verification(format!(
            "extremal set sizes differ: {} vs {}",
            set.points.len(),
            other.len()
        )));
    }
    let disagreement = set
        .points
        .iter()
        .map(|z| other.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    if disagreement > tol.circle {
        return Err(Error::Verification(format!(
            "extremal set computations disagree by {disagreement:e}"
        )));
    }

    let nf = spec.n as f64;
    let nu = to_f64(&spec.nu);
    let at_one = nf / (nu + 1.0);
    let elsewhere = nf + nu;
    let values: Vec<f64> = set.points.iter().map(|&z| b.deriv_modulus(z)).collect();
    let mut value_deviation: f64 = 0.0;
    for (z, v) in set.points.iter().zip(&values) {
        let want = if (z - Complex64::one()).norm() <= tol.circle {
            at_one
        } else {
            elsewhere
        };
        value_deviation = value_deviation.max((v - want).abs());
    }
    if value_deviation > tol.circle {
        return Err(Error::Verification(format!(
            "|B'| on the extremal set is off by {value_deviation:e}"
        )));
    }
    Ok(ExtremalSetReport {
        set,
        values,
        disagreement,
        value_deviation,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalClassification {
    pub degree: usize,
    pub max: f64,
    pub min: f64,
    /// `m - n/(M-n+1)`
    pub first_gap: f64,
    /// `m - (n-1+n/M)`
    pub second_gap: f64,
    pub is_extremal: bool,
    pub kind: Option<ExtremalKind>,
    pub nu: Option<f64>,
}

/// Whether `B` attains equality in either bound, and of which kind. Degree
/// one products attain both and are reported as first kind.
pub fn classify_extremal(b: &BlaschkeProduct, tol: f64) -> Result<ExtremalClassification> {
    let ext = b.extrema(0)?;
    let n = b.degree();
    let nf = n as f64;
    let (max, min) = (ext.max, ext.min);
    let first_gap = min - nf / (max - nf + 1.0);
    let second_gap = min - (nf - 1.0 + nf / max);
    let (kind, nu) = if (max - nf).abs() <= tol && (min - nf).abs() <= tol {
        (Some(ExtremalKind::Monomial), Some(0.0))
    } else if first_gap.abs() <= tol {
        (Some(ExtremalKind::First), Some(max - nf))
    } else if second_gap.abs() <= tol {
        (Some(ExtremalKind::Second), Some(min - nf))
    } else {
        (None, None)
    };
    Ok(ExtremalClassification {
        degree: n,
        max,
        min,
        first_gap,
        second_gap,
        is_extremal: kind.is_some(),
        kind,
        nu,
    })
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    /// Differential equation, key identity and `psi` as a constant times `h^2`.
    pub identities: Vec<IdentityReport>,
    /// `psi(0) / h(0)^2`; absent in the monomial case where `psi = 0`.
    pub psi_constant: Option<Rational>,
    /// Largest scaled `|psi|` or `|psi'|` at the zeros of `h`.
    pub double_root_residual: f64,
    /// Largest distance of a zero of `h` from the circle.
    pub circle_deviation: f64,
}

/// Exact checks of
/// `z(1-z)p'' - (n+nu-1)p' - (nu-n+3)z p' + n(nu+2)p = 0`,
/// `nu (z p - q) = (z-1)[(n+nu)p - z p' + q']`, and that
/// `psi = (n+nu)pq - z(p'q - q'p)` is a constant multiple of `h^2`, followed
/// by a numerical check that `psi` has a double root at each zero of `h`.
pub fn verify_uniqueness_structure(ep: &ExtremalProduct, tol: &Tolerances) -> Result<UniquenessReport> {
    let n = ep.spec.n;
    let nu = &ep.spec.nu;
    let nn = int(n as i64);
    let p = &ep.numerator;
    let q = ep.denominator();
    let z = RationalPoly::z();
    let one = RationalPoly::constant(int(1));
    let dp = p.derivative();
    let ddp = dp.derivative();
    let dq = q.derivative();

    let mut identities = Vec::new();

    let ode = &(&(&(&z * &(&one - &z)) * &ddp) - &dp.scale(&(&nn + nu - int(1))))
        - &(&z * &dp).scale(&(nu - &nn + int(3)));
    let ode = &ode + &p.scale(&(&nn * (nu + int(2))));
    identities.push(IdentityReport::new("differential equation", &ode, &RationalPoly::zero()).into_result()?);

    let lhs = (&(&z * p) - &q).scale(nu);
    let bracket = &(&p.scale(&(&nn + nu)) - &(&z * &dp)) + &dq;
    let rhs = &(&z - &one) * &bracket;
    identities.push(IdentityReport::new("key identity", &lhs, &rhs).into_result()?);

    let psi = &(p * &q).scale(&(&nn + nu)) - &(&z * &(&(&dp * &q) - &(&dq * p)));
    if ep.spec.kind == ExtremalKind::Monomial {
        identities.push(IdentityReport::new("psi vanishes", &psi, &RationalPoly::zero()).into_result()?);
        return Ok(UniquenessReport {
            identities,
            psi_constant: None,
            double_root_residual: 0.0,
            circle_deviation: 0.0,
        });
    }

    let h = extremal_set_polynomial(n, nu)?;
    let constant = psi.coeff(0) / (h.coeff(0) * h.coeff(0));
    if constant.is_zero() {
        return Err(Error::Verification("psi vanishes at the origin".into()));
    }
    let square = (&h * &h).scale(&constant);
    identities.push(IdentityReport::new("psi square", &psi, &square).into_result()?);

    let psi_c = psi.to_complex();
    let dpsi_c = psi_c.derivative();
    let scale: f64 = psi_c.coeffs().iter().map(|c| c.norm()).sum();
    let mut double_root_residual: f64 = 0.0;
    let mut circle_deviation: f64 = 0.0;
    for r in h.to_complex().roots()?.roots {
        circle_deviation = circle_deviation.max((r.norm() - 1.0).abs());
        let value = psi_c.eval(r).norm() / scale;
        let slope = dpsi_c.eval(r).norm() / scale;
        double_root_residual = double_root_residual.max(value).max(slope);
    }
    if circle_deviation > tol.double_root || double_root_residual > tol.double_root {
        return Err(Error::Verification(format!(
            "psi lacks double roots on the circle (residual {double_root_residual:e}, circle {circle_deviation:e})"
        )));
    }
    Ok(UniquenessReport {
        identities,
        psi_constant: Some(constant),
        double_root_residual,
        circle_deviation,
    })
}

#[derive(Clone, Debug)]
pub struct SymmetricProduct {
    /// `(z^n + a^n) / (1 + a^n z^n)`
    pub product: BlaschkeProduct,
    /// `n (1+a^n)/(1-a^n)`
    pub max: f64,
    /// `n (1-a^n)/(1+a^n)`
    pub min: f64,
}

/// Product whose zeros are the `n`-th roots of `-a^n`, with closed-form extrema.
pub fn symmetric_product(n: usize, a: f64) -> Result<SymmetricProduct> {
    if n == 0 {
        return Err(Error::Parameter("degree must be at least 1".into()));
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("radius {a} must lie in (0, 1)")));
    }
    let zeros = (0..n)
        .map(|k| Complex64::from_polar(a, std::f64::consts::PI * (2 * k + 1) as f64 / n as f64))
        .collect();
    let an = a.powi(n as i32);
    let nf = n as f64;
    Ok(SymmetricProduct {
        product: BlaschkeProduct::from_zeros(zeros, Complex64::one())?,
        max: nf * (1.0 + an) / (1.0 - an),
        min: nf * (1.0 - an) / (1.0 + an),
    })
}
