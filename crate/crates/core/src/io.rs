//! Product JSON and the CSV tables written by the command-line tool.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// `{"degree": n, "alpha": {"re", "im"}, "zeros": [{"re", "im"}, ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductJson {
    pub degree: usize,
    pub alpha: ComplexJson,
    pub zeros: Vec<ComplexJson>,
}

impl From<&BlaschkeProduct> for ProductJson {
    fn from(b: &BlaschkeProduct) -> Self {
        ProductJson {
            degree: b.degree(),
            alpha: b.alpha().into(),
            zeros: b.zeros().iter().map(|&z| z.into()).collect(),
        }
    }
}

impl TryFrom<ProductJson> for BlaschkeProduct {
    type Error = Error;

    fn try_from(p: ProductJson) -> Result<Self> {
        if p.degree != p.zeros.len() {
            return Err(Error::DegreeMismatch {
                requested: p.degree,
                actual: p.zeros.len(),
            });
        }
        BlaschkeProduct::from_zeros(p.zeros.into_iter().map(Into::into).collect(), p.alpha.into())
    }
}

/// Pretty-printed Product JSON; floats use the shortest representation that
/// reads back to the same value.
pub fn product_to_json(b: &BlaschkeProduct) -> String {
    serde_json::to_string_pretty(&ProductJson::from(b)).expect("plain data serializes")
}

pub fn product_from_json(text: &str) -> Result<BlaschkeProduct> {
    let parsed: ProductJson =
        serde_json::from_str(text).map_err(|e| Error::Parameter(format!("malformed product JSON: {e}")))?;
    parsed.try_into()
}

/// `re,im` table of the zeros.
pub fn zeros_csv(b: &BlaschkeProduct) -> String {
    let mut out = String::from("re,im\n");
    for z in b.zeros() {
        writeln!(out, "{:?},{:?}", z.re, z.im).expect("write to string");
    }
    out
}

/// `t,deriv_modulus` table on the uniform grid in `[-pi, pi)`.
pub fn profile_csv(b: &BlaschkeProduct, samples: usize) -> String {
    let mut out = String::from("t,deriv_modulus\n");
    for (t, v) in b.profile(samples) {
        writeln!(out, "{t:?},{v:?}").expect("write to string");
    }
    out
}
