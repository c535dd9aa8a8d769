//! JSON series/module files and exact rational strings.
//!
//! ```json
//! { "numerator": [[2, "3"], [3, "-2"]], "pole_order": 2, "dim": 2, "cm": true }
//! ```
//!
//! `numerator` lists `[exponent, coefficient]` pairs with distinct exponents
//! and nonzero coefficients written as `"p"` or `"p/q"` (plain JSON integers
//! are accepted on input). `dim` and `cm` are only meaningful for module
//! files; `dim` must equal the pole order after normalization.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cm::GradedCMModule;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Rational};
use crate::series::RationalGF;

/// Parses `"p"` or `"p/q"` with `q != 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not an exact rational: {s:?}"));
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// A coefficient as it appears in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Text(String),
    Int(i64),
}

impl CoeffRepr {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            CoeffRepr::Text(s) => parse_rational(s),
            CoeffRepr::Int(n) => Ok(Rational::from_integer(BigInt::from(*n))),
        }
    }
}

impl From<&Rational> for CoeffRepr {
    fn from(r: &Rational) -> Self {
        CoeffRepr::Text(format_rational(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub numerator: Vec<(i64, CoeffRepr)>,
    pub pole_order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm: Option<bool>,
}

impl SeriesFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("malformed series file: {e}")))
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        serde_json::from_value(value)
            .map_err(|e| Error::InvalidArgument(format!("malformed series file: {e}")))
    }

    pub fn from_series(a: &RationalGF) -> Self {
        Self {
            numerator: a
                .numerator()
                .terms()
                .map(|(e, c)| (e, CoeffRepr::from(c)))
                .collect(),
            pole_order: a.pole_order(),
            dim: None,
            cm: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series file serializes")
    }

    /// The canonical series described by the file.
    pub fn to_series(&self) -> Result<RationalGF> {
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.numerator.len());
        for (e, c) in &self.numerator {
            if !seen.insert(*e) {
                return Err(Error::InvalidArgument(format!("exponent {e} appears twice")));
            }
            let c = c.to_rational()?;
            if c.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "coefficient of t^{e} is zero"
                )));
            }
            terms.push((*e, c));
        }
        Ok(RationalGF::new(LaurentPoly::from_terms(terms), self.pole_order))
    }

    /// The module described by the file; `cm` defaults to false and `dim` to
    /// the canonical pole order.
    pub fn to_module(&self) -> Result<GradedCMModule> {
        let series = self.to_series()?;
        let dim = self.dim.unwrap_or(series.pole_order());
        GradedCMModule::new(series, dim, self.cm.unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), Rational::new(BigInt::from(-3), BigInt::from(2)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(format_rational(&Rational::new(BigInt::from(6), BigInt::from(-4))), "-3/2");
        assert_eq!(format_rational(&rat(-1)), "-1");
    }

    #[test]
    fn parse_fixture() {
        let f = SeriesFile::parse(r#"{"numerator": [[2, "3"], [3, -2]], "pole_order": 2}"#).unwrap();
        let a = f.to_series().unwrap();
        assert_eq!(a, RationalGF::new(LaurentPoly::from_i64s(2, &[3, -2]), 2));
        let back = SeriesFile::parse(&SeriesFile::from_series(&a).to_json()).unwrap();
        assert_eq!(back.to_series().unwrap(), a);
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            r#"{"numerator": [[0, "1"], [0, "2"]], "pole_order": 1}"#,
            r#"{"numerator": [[0, "0"]], "pole_order": 1}"#,
            r#"{"numerator": [[0, "x"]], "pole_order": 1}"#,
            r#"{"numerator": [[0, "1"]], "pole_order": -1}"#,
            r#"{"numerator": [[0, "1"]]}"#,
            r#"{"numerator": [[0, "1"]], "pole_order": 1, "extra": 3}"#,
            "not json",
        ] {
            let res = SeriesFile::parse(text).and_then(|f| f.to_series());
            assert!(matches!(res, Err(Error::InvalidArgument(_))), "{text}");
        }
    }

    #[test]
    fn module_dim_checked_after_normalization() {
        let f = SeriesFile::parse(
            r#"{"numerator": [[0, "1"], [2, "-1"]], "pole_order": 3, "dim": 3, "cm": true}"#,
        )
        .unwrap();
        assert!(f.to_module().is_err());
        let f = SeriesFile::parse(
            r#"{"numerator": [[0, "1"], [2, "-1"]], "pole_order": 3, "dim": 2, "cm": true}"#,
        )
        .unwrap();
        let m = f.to_module().unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.cm_declared());
    }
}
