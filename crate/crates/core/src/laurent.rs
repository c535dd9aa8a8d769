//! Exact Laurent polynomials in one variable over the rationals, and
//! binomial coefficients with arbitrary integer upper argument.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Generalized binomial coefficient `n choose k` for any integer `n`.
///
/// `k < 0` gives 0, `k = 0` gives 1, otherwise `n(n-1)...(n-k+1)/k!`.
/// The result is an integer for every integer `n`, including negative ones,
/// so `binomial(n, k) == (-1)^k * binomial(k - n - 1, k)` holds throughout.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        if k > n {
            return BigInt::zero();
        }
        let k = k.min(n - k);
        return falling_over_factorial(n, k);
    }
    // n < 0: reflect to a nonnegative upper argument.
    let c = falling_over_factorial(k - n - 1, k);
    if k % 2 == 0 {
        c
    } else {
        -c
    }
}

// n(n-1)...(n-k+1)/k!; each partial quotient is itself a binomial, so the
// division is exact at every step.
fn falling_over_factorial(n: i64, k: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// A Laurent polynomial `sum c_e t^e` with finitely many nonzero rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Consecutive coefficients, the first one sitting at exponent `start`.
    pub fn from_dense(start: i64, coeffs: &[Rational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (start + k as i64, c.clone())),
        )
    }

    pub fn from_i64s(start: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (start + k as i64, rat(c))),
        )
    }

    /// `(1 - t)^d`.
    pub fn one_minus_t_pow(d: u32) -> Self {
        Self::from_terms((0..=d as i64).map(|k| {
            let c = binomial(d as i64, k);
            (k, Rational::from_integer(if k % 2 == 0 { c } else { -c }))
        }))
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent with a nonzero coefficient; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Greatest exponent with a nonzero coefficient; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Dense coefficient vector over `ord..=deg`; empty for zero.
    pub fn to_dense(&self) -> Vec<Rational> {
        match (self.ord(), self.deg()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coeff(e)).collect(),
            _ => Vec::new(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Multiplies by `t^m`.
    pub fn shift(&self, m: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + m, c.clone())).collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Returns `q` with `(1 - t) q = self`.
    pub fn divide_by_one_minus_t(&self) -> Result<Self> {
        if !self.eval_at_one().is_zero() {
            return Err(Error::NotDivisible);
        }
        let (lo, hi) = match (self.ord(), self.deg()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Ok(Self::zero()),
        };
        // q_k is the prefix sum p_lo + ... + p_k, for k in lo..hi.
        let mut acc = Rational::zero();
        let mut q = Self::zero();
        for e in lo..hi {
            if let Some(c) = self.terms.get(&e) {
                acc += c;
            }
            q.add_term(e, acc.clone());
        }
        Ok(q)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Writes the polynomial in `var` using the crate's output grammar:
    /// ascending exponents, `c*var^e`, unit coefficients elided.
    pub fn write_in(&self, f: &mut impl fmt::Write, var: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_in(&mut s, "t")?;
        f.write_str(&s)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    // Schoolbook convolution.
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
