//! Rational generating functions `h(t) / (1-t)^d` with `h` a Laurent
//! polynomial.
//!
//! A [`RationalGF`] is always stored in canonical form: either `d = 0`, or
//! `h(1) != 0` so no factor `(1-t)` cancels. The zero series is `0 / (1-t)^0`.
//! Canonical form makes the numerator degree, and with it the postulation
//! number and regularity, well defined.
//!
//! Coefficients are recovered from the numerator through
//! `a_k = sum_i h_i * C(d - 1 + k - i, k - i)` and the numerator from a
//! coefficient window through `h_n = sum_k (-1)^k C(d, k) a_{n-k}`.

use std::fmt;
use std::ops::Add;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{binomial, rat, LaurentPoly, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalGF {
    numerator: LaurentPoly,
    pole_order: u32,
}

impl RationalGF {
    /// Canonical representative of `numerator / (1-t)^pole_order`.
    pub fn new(numerator: LaurentPoly, pole_order: u32) -> Self {
        if numerator.is_zero() {
            return Self::zero();
        }
        let mut numerator = numerator;
        let mut pole_order = pole_order;
        while pole_order > 0 {
            match numerator.divide_by_one_minus_t() {
                Ok(q) => {
                    numerator = q;
                    pole_order -= 1;
                }
                Err(_) => break,
            }
        }
        Self {
            numerator,
            pole_order,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// A Laurent polynomial viewed as a series (`d = 0`).
    pub fn polynomial(p: LaurentPoly) -> Self {
        Self::new(p, 0)
    }

    /// `t^shift / (1-t)^d`.
    pub fn monomial(shift: i64, d: u32) -> Self {
        Self::new(LaurentPoly::monomial(Rational::one(), shift), d)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Lowest exponent of the numerator (also the lowest nonzero coefficient).
    pub fn sigma(&self) -> Option<i64> {
        self.numerator.ord()
    }

    /// Degree of the canonical numerator.
    pub fn top_degree(&self) -> Option<i64> {
        self.numerator.deg()
    }

    /// `d - 1`, defined for nonzero series with `d >= 1`.
    pub fn b(&self) -> Option<i64> {
        if self.is_zero() || self.pole_order == 0 {
            None
        } else {
            Some(self.pole_order as i64 - 1)
        }
    }

    /// The coefficient of `t^k`.
    pub fn coefficient(&self, k: i64) -> Rational {
        if self.pole_order == 0 {
            return self.numerator.coeff(k);
        }
        let b = self.pole_order as i64 - 1;
        let mut acc = Rational::zero();
        for (i, h) in self.numerator.terms() {
            if i > k {
                break;
            }
            acc += h * Rational::from_integer(binomial(b + k - i, k - i));
        }
        acc
    }

    /// Coefficients `a_from ..= a_to`, computed by repeated prefix sums of
    /// the numerator. Empty when `from > to`.
    pub fn expand(&self, from: i64, to: i64) -> Vec<Rational> {
        if from > to {
            return Vec::new();
        }
        let width = (to - from + 1) as usize;
        let lo = match self.sigma() {
            Some(lo) if lo <= to => lo,
            _ => return vec![Rational::zero(); width],
        };
        let mut dense: Vec<Rational> = (lo..=to).map(|e| self.numerator.coeff(e)).collect();
        for _ in 0..self.pole_order {
            for k in 1..dense.len() {
                let prev = dense[k - 1].clone();
                dense[k] += prev;
            }
        }
        (from..=to)
            .map(|e| {
                if e < lo {
                    Rational::zero()
                } else {
                    dense[(e - lo) as usize].clone()
                }
            })
            .collect()
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        HilbertPolynomial::of(self)
    }

    /// `deg h - d`: the least `beta` with `a_n = Phi(n)` for all `n > beta`.
    pub fn postulation_number(&self) -> Result<i64> {
        let deg = self
            .top_degree()
            .ok_or(Error::ZeroSeries("postulation number"))?;
        Ok(deg - self.pole_order as i64)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.numerator.scale(c), self.pole_order)
    }

    /// Every numerator coefficient is `>= 0`.
    pub fn has_nonnegative_h(&self) -> bool {
        self.numerator.all_nonnegative()
    }

    /// Reconstructs a series from a window of its coefficients.
    ///
    /// `coeffs[k]` is `a_{start+k}`; coefficients below `start` are taken to
    /// be zero. The last `pole_order + 1` computed h-values must vanish,
    /// otherwise the window may have cut the numerator short.
    pub fn from_coefficients(coeffs: &[Rational], start: i64, pole_order: u32) -> Result<Self> {
        let d = pole_order as i64;
        let alternating: Vec<Rational> = (0..=d)
            .map(|k| {
                let c = Rational::from_integer(binomial(d, k));
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let h: Vec<Rational> = (0..coeffs.len())
            .map(|n| {
                let mut acc = Rational::zero();
                for (k, w) in alternating.iter().enumerate().take(n + 1) {
                    acc += w * &coeffs[n - k];
                }
                acc
            })
            .collect();
        let needed = pole_order as usize + 1;
        let found = h.iter().rev().take_while(|x| x.is_zero()).count();
        if found < needed {
            return Err(Error::WindowTooShort { needed, found });
        }
        Ok(Self::new(LaurentPoly::from_dense(start, &h), pole_order))
    }

    /// Writes `h` over the shared denominator `(1-t)^target`, which must be
    /// at least the current pole order.
    pub(crate) fn numerator_over(&self, target: u32) -> LaurentPoly {
        debug_assert!(target >= self.pole_order);
        &self.numerator * &LaurentPoly::one_minus_t_pow(target - self.pole_order)
    }
}

/// Free-function form of [`RationalGF::from_coefficients`].
pub fn hvector_from_coefficients(
    coeffs: &[Rational],
    start: i64,
    pole_order: u32,
) -> Result<RationalGF> {
    RationalGF::from_coefficients(coeffs, start, pole_order)
}

impl Add for &RationalGF {
    type Output = RationalGF;

    fn add(self, rhs: &RationalGF) -> RationalGF {
        let d = self.pole_order.max(rhs.pole_order);
        RationalGF::new(&self.numerator_over(d) + &rhs.numerator_over(d), d)
    }
}

impl fmt::Display for RationalGF {
    /// `(h) / (1-t)^d`, `(h) / (1-t)` for `d = 1`, and the bare numerator
    /// for `d = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pole_order {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / (1-t)", self.numerator),
            d => write!(f, "({}) / (1-t)^{d}", self.numerator),
        }
    }
}

/// `Phi(n) = sum_i c_i n^i`, agreeing with the series coefficients for all
/// `n` past the postulation number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coefficients: Vec<Rational>,
}

impl HilbertPolynomial {
    fn of(a: &RationalGF) -> Self {
        let Some(b) = a.b() else {
            return Self {
                coefficients: Vec::new(),
            };
        };
        // C(b + n - i, b) = prod_{m=1..b} (n - i + m) / b!
        let mut factorial = Rational::one();
        for m in 1..=b {
            factorial *= rat(m);
        }
        let mut total = vec![Rational::zero(); b as usize + 1];
        for (i, h) in a.numerator().terms() {
            let mut basis = vec![Rational::one()];
            for m in 1..=b {
                let root = rat(m - i);
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (p, c) in basis.iter().enumerate() {
                    next[p + 1] += c;
                    next[p] += c * &root;
                }
                basis = next;
            }
            for (p, c) in basis.into_iter().enumerate() {
                total[p] += c * h / &factorial;
            }
        }
        while total.last().is_some_and(|c| c.is_zero()) {
            total.pop();
        }
        Self {
            coefficients: total,
        }
    }

    /// `c_0, c_1, ...` with no trailing zeros; empty for the zero polynomial.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn eval(&self, n: i64) -> Rational {
        let x = rat(n);
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = LaurentPoly::from_dense(0, &self.coefficients);
        let mut s = String::new();
        p.write_in(&mut s, "n")?;
        f.write_str(&s)
    }
}
