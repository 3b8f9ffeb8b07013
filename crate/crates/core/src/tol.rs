//! The tolerance record shared by every numeric check.
//!
//! Exact-arithmetic checks never consult this record; they compare against
//! the zero polynomial.

use crate::error::{Error, Result};

/// Name of the environment variable that overrides the defaults.
///
/// Format: comma-separated `key=value` pairs, e.g.
/// `circle=1e-7,identity=1e-9`. Keys are the field names below.
pub const ENV_VAR: &str = "BLAS_EXT_TOL";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Membership in the unit circle, `||z| - 1|`.
    pub circle: f64,
    /// Floating identity checks (Gegenbauer relation, rational vs. Poisson form).
    pub identity: f64,
    /// Residue sums and preimage equations.
    pub residue: f64,
    /// Scaled root-finder residual.
    pub root_residual: f64,
    /// Unimodularity of the constant factor.
    pub unimodular: f64,
    /// Mean value of `|B'|` against the degree.
    pub mean: f64,
    /// Inequality slack in the main-inequality check.
    pub inequality: f64,
    /// Band for the three-valued circle-map classification.
    pub classify: f64,
    /// Double-root check for the uniqueness oracle.
    pub double_root: f64,
    /// Semigroup averaging check.
    pub semigroup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            circle: 1e-8,
            identity: 1e-10,
            residue: 1e-9,
            root_residual: 1e-10,
            unimodular: 1e-12,
            mean: 1e-8,
            inequality: 1e-9,
            classify: 1e-9,
            double_root: 1e-7,
            semigroup: 1e-7,
        }
    }
}

impl Tolerances {
    /// Defaults, overridden by `BLAS_EXT_TOL` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(spec) => Self::default().with_overrides(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("{ENV_VAR}: expected key=value, got {item:?}")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parameter(format!("{ENV_VAR}: bad number in {item:?}")))?;
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::Parameter(format!("{ENV_VAR}: tolerance must be positive, got {item:?}")));
            }
            let slot = match key.trim() {
                "circle" => &mut self.circle,
                "identity" => &mut self.identity,
                "residue" => &mut self.residue,
                "root_residual" => &mut self.root_residual,
                "unimodular" => &mut self.unimodular,
                "mean" => &mut self.mean,
                "inequality" => &mut self.inequality,
                "classify" => &mut self.classify,
                "double_root" => &mut self.double_root,
                "semigroup" => &mut self.semigroup,
                other => return Err(Error::Parameter(format!("{ENV_VAR}: unknown key {other:?}"))),
            };
            *slot = value;
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let t = Tolerances::default()
            .with_overrides("circle=1e-6, residue = 2e-9")
            .unwrap();
        assert_eq!(t.circle, 1e-6);
        assert_eq!(t.residue, 2e-9);
        assert_eq!(t.identity, 1e-10);
    }

    #[test]
    fn overrides_reject_garbage() {
        assert!(Tolerances::default().with_overrides("circle").is_err());
        assert!(Tolerances::default().with_overrides("bogus=1").is_err());
        assert!(Tolerances::default().with_overrides("circle=-1").is_err());
    }
}
