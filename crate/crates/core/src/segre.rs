//! The Segre transform `a (x) b = sum_l a_l b_l t^l` of two rational
//! generating functions.
//!
//! Two independent routes are provided. [`segre_oracle`] expands both
//! operands over a window that provably covers the product numerator,
//! multiplies coefficientwise and reconstructs the numerator.
//! [`segre_closed`] works on the numerators alone:
//!
//! ```text
//! h_n(a (x) b) = sum_i sum_j h_i(a) h_j(b) C(b_a + j - i, n - i) C(b_b + i - j, n - j)
//! ```
//!
//! over the pole order `d_a + d_b - 1`, with `b_x = d_x - 1`. When one
//! operand is a Laurent polynomial the product is the coefficientwise
//! product restricted to its support.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{binomial, LaurentPoly, Rational};
use crate::series::RationalGF;

/// `A_{i,j,n} = C(b1 + j - i, n - i) * C(b2 + i - j, n - j)`, the numerator
/// coefficients of `t^i/(1-t)^(b1+1) (x) t^j/(1-t)^(b2+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialProductTerm {
    pub b1: i64,
    pub b2: i64,
    pub i: i64,
    pub j: i64,
}

impl BinomialProductTerm {
    pub fn new(b1: i64, b2: i64, i: i64, j: i64) -> Self {
        Self { b1, b2, i, j }
    }

    pub fn value(&self, n: i64) -> BigInt {
        let first = binomial(self.b1 + self.j - self.i, n - self.i);
        if first.is_zero() {
            return first;
        }
        first * binomial(self.b2 + self.i - self.j, n - self.j)
    }

    /// Both upper arguments are nonnegative; boundary cases count as in.
    pub fn min_branch(&self) -> bool {
        self.b1 + self.j - self.i >= 0 && self.b2 + self.i - self.j >= 0
    }

    /// `r_{i,j}`: the last `n` with `A_{i,j,n} != 0`.
    pub fn top_degree(&self) -> i64 {
        let x = self.b1 + self.j;
        let y = self.b2 + self.i;
        if self.min_branch() {
            x.min(y)
        } else {
            x.max(y)
        }
    }
}

fn require_nonzero(a: &RationalGF, index: usize) -> Result<()> {
    if a.is_zero() {
        Err(Error::hypothesis(Some(index), "operand is the zero series"))
    } else {
        Ok(())
    }
}

fn require_pole(a: &RationalGF, index: usize) -> Result<()> {
    require_nonzero(a, index)?;
    if a.pole_order() == 0 {
        Err(Error::hypothesis(Some(index), "pole order must be at least 1"))
    } else {
        Ok(())
    }
}

// (sigma, r, b) of a nonzero series with d >= 1.
fn shape(a: &RationalGF) -> (i64, i64, i64) {
    (
        a.sigma().expect("nonzero"),
        a.top_degree().expect("nonzero"),
        a.pole_order() as i64 - 1,
    )
}

/// `max(b_a + r_b, b_b + r_a)`, the a-priori cap on the product numerator degree.
fn degree_cap(a: &RationalGF, b: &RationalGF) -> i64 {
    let (_, ra, ba) = shape(a);
    let (_, rb, bb) = shape(b);
    (ba + rb).max(bb + ra)
}

/// The Segre transform computed from its definition.
pub fn segre_oracle(a: &RationalGF, b: &RationalGF) -> RationalGF {
    if a.is_zero() || b.is_zero() {
        return RationalGF::zero();
    }
    let start = a.sigma().unwrap().max(b.sigma().unwrap());
    let (end, d) = if a.pole_order() == 0 || b.pole_order() == 0 {
        let mut end = i64::MAX;
        for x in [a, b] {
            if x.pole_order() == 0 {
                end = end.min(x.top_degree().unwrap());
            }
        }
        (end + 1, 0)
    } else {
        let d = a.pole_order() + b.pole_order() - 1;
        (degree_cap(a, b) + d as i64 + 1, d)
    };
    if start > end - 1 {
        return RationalGF::zero();
    }
    let products: Vec<Rational> = a
        .expand(start, end)
        .into_iter()
        .zip(b.expand(start, end))
        .map(|(x, y)| x * y)
        .collect();
    // The window reaches d + 1 places past the degree cap.
    RationalGF::from_coefficients(&products, start, d)
        .expect("oracle window covers the product numerator")
}

/// The Segre transform computed from the numerators alone.
pub fn segre_closed(a: &RationalGF, b: &RationalGF) -> Result<RationalGF> {
    require_nonzero(a, 0)?;
    require_nonzero(b, 1)?;
    if a.pole_order() == 0 || b.pole_order() == 0 {
        let (poly, other) = if a.pole_order() == 0 { (a, b) } else { (b, a) };
        let h = LaurentPoly::from_terms(
            poly.numerator()
                .terms()
                .map(|(n, c)| (n, c * other.coefficient(n))),
        );
        return Ok(RationalGF::polynomial(h));
    }
    let (sa, _, ba) = shape(a);
    let (sb, _, bb) = shape(b);
    let cap = degree_cap(a, b);
    let mut terms = Vec::new();
    for n in sa.max(sb)..=cap {
        let mut acc = Rational::zero();
        for (i, hi) in a.numerator().terms() {
            if i > n {
                break;
            }
            for (j, hj) in b.numerator().terms() {
                if j > n {
                    break;
                }
                let coeff = BinomialProductTerm::new(ba, bb, i, j).value(n);
                if !coeff.is_zero() {
                    acc += hi * hj * Rational::from_integer(coeff);
                }
            }
        }
        terms.push((n, acc));
    }
    Ok(RationalGF::new(
        LaurentPoly::from_terms(terms),
        a.pole_order() + b.pole_order() - 1,
    ))
}

/// `t^i/(1-t)^d1 (x) t^j/(1-t)^d2`, summing `A_{i,j,n}` for
/// `max(i, j) <= n <= r_{i,j}`.
pub fn segre_monomial(d1: u32, i: i64, d2: u32, j: i64) -> Result<RationalGF> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidArgument(
            "monomial pole orders must be at least 1".into(),
        ));
    }
    let term = BinomialProductTerm::new(d1 as i64 - 1, d2 as i64 - 1, i, j);
    let numerator = LaurentPoly::from_terms(
        (i.max(j)..=term.top_degree()).map(|n| (n, Rational::from_integer(term.value(n)))),
    );
    Ok(RationalGF::new(numerator, d1 + d2 - 1))
}

/// Left fold of [`segre_closed`] over a nonempty list.
pub fn segre_fold(series: &[RationalGF]) -> Result<RationalGF> {
    let (first, rest) = series
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty list of series".into()))?;
    require_nonzero(first, 0)?;
    let mut acc = first.clone();
    for (k, x) in rest.iter().enumerate() {
        require_nonzero(x, k + 1)?;
        acc = segre_closed(&acc, x)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Checks `0 <= sigma <= r < d` on every input.
pub(crate) fn require_low_degree(series: &[RationalGF]) -> Result<()> {
    for (k, a) in series.iter().enumerate() {
        require_pole(a, k)?;
        let (s, r, _) = shape(a);
        if s < 0 {
            return Err(Error::hypothesis(Some(k), format!("sigma = {s} is negative")));
        }
        if r >= a.pole_order() as i64 {
            return Err(Error::hypothesis(
                Some(k),
                format!("numerator degree {r} is not below pole order {}", a.pole_order()),
            ));
        }
    }
    Ok(())
}

fn is_low_degree(a: &RationalGF) -> bool {
    if a.is_zero() || a.pole_order() == 0 {
        return false;
    }
    let (s, r, _) = shape(a);
    s >= 0 && r < a.pole_order() as i64
}

/// Numerator of the s-fold Segre product as a nested sum of products
/// `h_{i_1}(a_1) h_{l_2}(a_2) ... h_{l_s}(a_s) A_{i_1,l_2,i_2} ... A_{i_{s-1},l_s,i_s}`.
///
/// Requires `s >= 2` and `0 <= sigma_k <= r_k < d_k` for every factor. The
/// intermediate indices `i_tau` run up to
/// `b_1 + ... + b_tau + 1 - min(alpha_1..alpha_tau)` with `alpha = d - r`, the
/// degree cap of the partial product. Inner sums are shared between outer
/// indices, which does not change the value of the sum.
pub fn segre_multi_hvector(series: &[RationalGF]) -> Result<RationalGF> {
    if series.len() < 2 {
        return Err(Error::InvalidArgument(
            "the multi-factor product needs at least two series".into(),
        ));
    }
    require_low_degree(series)?;

    let s = series.len();
    let sigma: Vec<i64> = series.iter().map(|a| a.sigma().unwrap()).collect();
    let top: Vec<i64> = series.iter().map(|a| a.top_degree().unwrap()).collect();
    let bs: Vec<i64> = series.iter().map(|a| a.pole_order() as i64 - 1).collect();
    let alpha: Vec<i64> = series
        .iter()
        .zip(&top)
        .map(|(a, r)| a.pole_order() as i64 - r)
        .collect();
    // partial_b[k] = b_1 + ... + b_{k+1}; cap[k] bounds the partial product's degree.
    let mut partial_b = Vec::with_capacity(s);
    let mut cap = Vec::with_capacity(s);
    let mut sum_b = 0;
    let mut min_alpha = i64::MAX;
    for k in 0..s {
        sum_b += bs[k];
        min_alpha = min_alpha.min(alpha[k]);
        partial_b.push(sum_b);
        cap.push(sum_b + 1 - min_alpha);
    }

    // level[k][i - sigma[k]] = sum over the indices below level k with i_k = i.
    let mut level: Vec<Rational> = (sigma[0]..=cap[0])
        .map(|i| series[0].numerator().coeff(i))
        .collect();
    for k in 1..s {
        let lo = sigma[k];
        let prev_lo = sigma[k - 1];
        let next: Vec<Rational> = (lo..=cap[k])
            .map(|ik| {
                let mut acc = Rational::zero();
                for (l, hl) in series[k].numerator().terms() {
                    let upper = cap[k - 1].min(ik);
                    for iprev in prev_lo..=upper {
                        let inner = &level[(iprev - prev_lo) as usize];
                        if inner.is_zero() {
                            continue;
                        }
                        let a = BinomialProductTerm::new(partial_b[k - 1], bs[k], iprev, l).value(ik);
                        if !a.is_zero() {
                            acc += hl * inner * Rational::from_integer(a);
                        }
                    }
                }
                acc
            })
            .collect();
        level = next;
    }
    let numerator = LaurentPoly::from_dense(sigma[s - 1], &level);
    Ok(RationalGF::new(numerator, (partial_b[s - 1] + 1) as u32))
}

/// `b_b + sigma_a - r_b >= 0` and `b_a + sigma_b - r_a >= 0`.
pub fn condition_star_star(a: &RationalGF, b: &RationalGF) -> Result<bool> {
    require_pole(a, 0)?;
    require_pole(b, 1)?;
    let (sa, ra, ba) = shape(a);
    let (sb, rb, bb) = shape(b);
    Ok(bb + sa - rb >= 0 && ba + sb - ra >= 0)
}

/// Degree bounds for a two- or many-factor Segre product together with the
/// degree actually attained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    /// Bound that always holds.
    pub upper_max: i64,
    /// Bound under condition (**); attained when all h-coefficients are `>= 0`.
    pub upper_min: i64,
    /// Condition (**), chained through the partial products for more than two factors.
    pub star_star_holds: bool,
    pub nonneg_inputs: bool,
    /// Every input has `0 <= sigma <= r < d`, which forces (**).
    pub low_degree_inputs: bool,
    pub actual_degree: i64,
    pub equality_attained: bool,
}

impl BoundsReport {
    fn check(&self, what: &str) -> Result<()> {
        if self.actual_degree > self.upper_max {
            return Err(Error::verification(
                format!("{what}: degree <= upper_max"),
                format!("<= {}", self.upper_max),
                self.actual_degree,
            ));
        }
        if self.star_star_holds && self.nonneg_inputs && !self.equality_attained {
            return Err(Error::verification(
                format!("{what}: degree = upper_min"),
                self.upper_min,
                self.actual_degree,
            ));
        }
        if self.low_degree_inputs && !self.star_star_holds {
            return Err(Error::verification(
                format!("{what}: low-degree inputs satisfy (**)"),
                true,
                false,
            ));
        }
        Ok(())
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "upper_max: {}", self.upper_max)?;
        writeln!(f, "upper_min: {}", self.upper_min)?;
        writeln!(f, "star_star_holds: {}", self.star_star_holds)?;
        writeln!(f, "nonneg_inputs: {}", self.nonneg_inputs)?;
        writeln!(f, "low_degree_inputs: {}", self.low_degree_inputs)?;
        writeln!(f, "actual_degree: {}", self.actual_degree)?;
        write!(f, "equality_attained: {}", self.equality_attained)
    }
}

/// Degree bounds for `a (x) b`. Fails with a verification error if the
/// computed product contradicts a bound that must hold.
pub fn segre_degree_bounds(a: &RationalGF, b: &RationalGF) -> Result<BoundsReport> {
    let star_star = condition_star_star(a, b)?;
    let (_, ra, ba) = shape(a);
    let (_, rb, bb) = shape(b);
    let product = segre_closed(a, b)?;
    let actual_degree = product.top_degree().ok_or(Error::ZeroSeries("degree bound"))?;
    let upper_min = (ba + rb).min(bb + ra);
    let report = BoundsReport {
        upper_max: (ba + rb).max(bb + ra),
        upper_min,
        star_star_holds: star_star,
        nonneg_inputs: a.has_nonnegative_h() && b.has_nonnegative_h(),
        low_degree_inputs: is_low_degree(a) && is_low_degree(b),
        actual_degree,
        equality_attained: actual_degree == upper_min,
    };
    report.check("two-factor bounds")?;
    if star_star && actual_degree > upper_min {
        return Err(Error::verification(
            "two-factor bounds: degree <= upper_min under (**)",
            format!("<= {upper_min}"),
            actual_degree,
        ));
    }
    Ok(report)
}

/// Degree bounds for `a_1 (x) ... (x) a_s`.
pub fn multi_degree_bounds(series: &[RationalGF]) -> Result<BoundsReport> {
    if series.len() < 2 {
        return Err(Error::InvalidArgument(
            "degree bounds need at least two series".into(),
        ));
    }
    for (k, a) in series.iter().enumerate() {
        require_pole(a, k)?;
    }
    let sum_b: i64 = series.iter().map(|a| a.pole_order() as i64 - 1).sum();
    let alphas: Vec<i64> = series
        .iter()
        .map(|a| a.pole_order() as i64 - a.top_degree().unwrap())
        .collect();
    let min_alpha = *alphas.iter().min().unwrap();
    let max_alpha = *alphas.iter().max().unwrap();

    let mut chained = true;
    let mut partial = series[0].clone();
    for next in &series[1..] {
        chained &= condition_star_star(&partial, next)?;
        partial = segre_closed(&partial, next)?;
    }
    let actual_degree = partial.top_degree().ok_or(Error::ZeroSeries("degree bound"))?;
    let upper_min = sum_b + 1 - max_alpha;
    let report = BoundsReport {
        upper_max: sum_b + 1 - min_alpha,
        upper_min,
        star_star_holds: chained,
        nonneg_inputs: series.iter().all(RationalGF::has_nonnegative_h),
        low_degree_inputs: series.iter().all(is_low_degree),
        actual_degree,
        equality_attained: actual_degree == upper_min,
    };
    report.check("multi-factor bounds")?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(start: i64, h: &[i64], d: u32) -> RationalGF {
        RationalGF::new(LaurentPoly::from_i64s(start, h), d)
    }

    #[test]
    fn oracle_examples() {
        let p1 = gf(0, &[1], 2);
        assert_eq!(segre_oracle(&p1, &p1), gf(0, &[1, 1], 3));
        assert!(segre_oracle(&p1, &RationalGF::zero()).is_zero());
        let t20 = RationalGF::monomial(0, 2);
        let t12 = RationalGF::monomial(2, 1);
        assert_eq!(segre_oracle(&t20, &t12), gf(2, &[3, -2], 2));
    }

    #[test]
    fn closed_examples() {
        let p1 = gf(0, &[1], 2);
        assert_eq!(segre_closed(&p1, &p1).unwrap(), gf(0, &[1, 1], 3));
        assert_eq!(segre_closed(&gf(0, &[1, 1], 0), &p1).unwrap(), gf(0, &[1, 2], 0));
        assert_eq!(
            segre_closed(&gf(0, &[1], 1), &gf(5, &[1], 1)).unwrap(),
            gf(5, &[1], 1)
        );
        assert!(matches!(
            segre_closed(&p1, &RationalGF::zero()),
            Err(Error::Hypothesis { index: Some(1), .. })
        ));
    }

    #[test]
    fn closed_can_vanish() {
        // Disjoint supports of two polynomials.
        let a = gf(0, &[1], 0);
        let b = gf(3, &[1], 0);
        assert!(segre_closed(&a, &b).unwrap().is_zero());
        assert!(segre_oracle(&a, &b).is_zero());
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(segre_monomial(2, 0, 2, 0).unwrap(), gf(0, &[1, 1], 3));
        assert_eq!(segre_monomial(1, 0, 1, 5).unwrap(), gf(5, &[1], 1));
        for d in 1..=4 {
            for beta in -3..=3 {
                for alpha in beta..=4 {
                    assert_eq!(
                        segre_monomial(d, alpha, 1, beta).unwrap(),
                        RationalGF::monomial(alpha, d)
                    );
                }
            }
        }
        assert!(segre_monomial(0, 0, 1, 0).is_err());
    }

    #[test]
    fn top_degree_branches() {
        let t = BinomialProductTerm::new(0, 0, 0, 5);
        assert!(!t.min_branch());
        assert_eq!(t.top_degree(), 5);
        let t = BinomialProductTerm::new(1, 1, 0, 0);
        assert!(t.min_branch());
        assert_eq!(t.top_degree(), 1);
    }

    #[test]
    fn binomial_product_vanishing() {
        for b1 in 0..=4 {
            for b2 in 0..=4 {
                for i in -4..=4 {
                    for j in -4..=4 {
                        let t = BinomialProductTerm::new(b1, b2, i, j);
                        let r = t.top_degree();
                        assert!(!t.value(r).is_zero(), "{t:?}");
                        for n in r + 1..r + 12 {
                            assert!(t.value(n).is_zero(), "{t:?} n={n}");
                        }
                        if t.min_branch() {
                            for n in i.min(j) - 3..r + 3 {
                                assert!(t.value(n) >= BigInt::zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multi_examples() {
        let p1 = gf(0, &[1], 2);
        assert_eq!(
            segre_multi_hvector(&[p1.clone(), p1.clone(), p1.clone()]).unwrap(),
            gf(0, &[1, 4, 1], 4)
        );
        let p2 = gf(0, &[1], 3);
        assert_eq!(
            segre_multi_hvector(&[p2.clone(), p1.clone()]).unwrap(),
            gf(0, &[1, 2], 4)
        );
        let a = gf(0, &[1, 1], 3);
        assert_eq!(
            segre_multi_hvector(&[a.clone(), p1.clone()]).unwrap(),
            segre_closed(&a, &p1).unwrap()
        );
    }

    #[test]
    fn multi_rejects_bad_shapes() {
        let p1 = gf(0, &[1], 2);
        let high = gf(2, &[3, -2], 2);
        assert!(matches!(
            segre_multi_hvector(&[p1.clone(), high]),
            Err(Error::Hypothesis { index: Some(1), .. })
        ));
        assert!(matches!(
            segre_multi_hvector(&[p1.clone(), gf(-1, &[1], 2)]),
            Err(Error::Hypothesis { index: Some(1), .. })
        ));
        assert!(matches!(
            segre_multi_hvector(&[p1]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn star_star_examples() {
        let p1 = gf(0, &[1], 2);
        assert!(condition_star_star(&p1, &p1).unwrap());
        assert!(!condition_star_star(&gf(2, &[3, -2], 2), &gf(0, &[1], 1)).unwrap());
    }

    #[test]
    fn bounds_examples() {
        let p1 = gf(0, &[1], 2);
        let r = segre_degree_bounds(&p1, &p1).unwrap();
        assert_eq!((r.upper_min, r.actual_degree, r.equality_attained), (1, 1, true));

        let r = segre_degree_bounds(&gf(2, &[3, -2], 2), &gf(0, &[1], 1)).unwrap();
        assert_eq!((r.upper_max, r.actual_degree), (3, 3));
        assert!(!r.star_star_holds);

        let r = segre_degree_bounds(&gf(0, &[1, 1], 3), &p1).unwrap();
        assert_eq!((r.upper_min, r.actual_degree), (2, 2));
    }

    #[test]
    fn multi_bounds_examples() {
        let p1 = gf(0, &[1], 2);
        let r = multi_degree_bounds(&[p1.clone(), p1.clone(), p1.clone()]).unwrap();
        assert_eq!((r.upper_min, r.actual_degree), (2, 2));
        assert!(r.star_star_holds && r.low_degree_inputs);

        let r = multi_degree_bounds(&[gf(0, &[1], 3), p1.clone()]).unwrap();
        assert_eq!((r.upper_min, r.actual_degree), (1, 1));

        let r = multi_degree_bounds(&[gf(2, &[3, -2], 2), p1]).unwrap();
        assert_eq!(r.upper_max, 4);
        assert!(r.actual_degree <= 4);
    }

    #[test]
    fn scaled_product_is_scaled() {
        let a = gf(-1, &[2, -1, 3], 2);
        let b = gf(0, &[1, -4], 3);
        let c = Rational::new(BigInt::from(-5), BigInt::from(3));
        assert_eq!(
            segre_closed(&a.scale(&c), &b).unwrap(),
            segre_closed(&a, &b).unwrap().scale(&c)
        );
        assert_eq!(segre_closed(&a, &b).unwrap(), segre_oracle(&a, &b));
    }
}
