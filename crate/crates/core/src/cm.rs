//! Regularity of Segre and Segre-Veronese products of Cohen-Macaulay modules.
//!
//! A module is described only by its Hilbert series together with a declared
//! Cohen-Macaulay flag. Hilbert data cannot certify the flag, so every
//! theorem here trusts it. For a Cohen-Macaulay module the regularity is
//! taken to be the degree of the canonical h-polynomial, and
//! `alpha = dim - reg`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::binomial;
use crate::segre::{condition_star_star, segre_closed, segre_multi_hvector};
use crate::series::RationalGF;

/// Hilbert data of a graded module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCMModule {
    hilbert: RationalGF,
    cm_declared: bool,
}

impl GradedCMModule {
    /// `dim` must match the pole order of the canonical Hilbert series.
    pub fn new(hilbert: RationalGF, dim: u32, cm_declared: bool) -> Result<Self> {
        if hilbert.is_zero() {
            return Err(Error::InvalidArgument(
                "a module needs a nonzero Hilbert series".into(),
            ));
        }
        if hilbert.pole_order() != dim {
            return Err(Error::InvalidArgument(format!(
                "dim {dim} does not match pole order {} of the Hilbert series",
                hilbert.pole_order()
            )));
        }
        Ok(Self {
            hilbert,
            cm_declared,
        })
    }

    /// A module declared Cohen-Macaulay with `dim` read off the series.
    pub fn cohen_macaulay(hilbert: RationalGF) -> Result<Self> {
        let dim = hilbert.pole_order();
        Self::new(hilbert, dim, true)
    }

    pub fn hilbert(&self) -> &RationalGF {
        &self.hilbert
    }

    pub fn dim(&self) -> u32 {
        self.hilbert.pole_order()
    }

    pub fn cm_declared(&self) -> bool {
        self.cm_declared
    }

    pub fn sigma(&self) -> i64 {
        self.hilbert.sigma().expect("module series is nonzero")
    }

    fn degree(&self) -> i64 {
        self.hilbert.top_degree().expect("module series is nonzero")
    }

    /// `dim - deg h`.
    pub fn alpha(&self) -> i64 {
        self.dim() as i64 - self.degree()
    }
}

fn require_cm(m: &GradedCMModule, index: usize) -> Result<()> {
    if m.cm_declared {
        Ok(())
    } else {
        Err(Error::hypothesis(
            Some(index),
            "module is not declared Cohen-Macaulay",
        ))
    }
}

/// Castelnuovo-Mumford regularity of a Cohen-Macaulay module: the degree of
/// its h-polynomial.
pub fn regularity(m: &GradedCMModule) -> Result<i64> {
    require_cm(m, 0)?;
    Ok(m.degree())
}

/// The Veronese transform `sum_{l >= 0} a_{nl} t^l`.
pub fn veronese(a: &RationalGF, n: u32) -> Result<RationalGF> {
    if n == 0 {
        return Err(Error::InvalidArgument("Veronese degree must be at least 1".into()));
    }
    let Some(sigma) = a.sigma() else {
        return Ok(RationalGF::zero());
    };
    if sigma < 0 {
        return Err(Error::hypothesis(
            None,
            format!("Veronese transform needs sigma >= 0, got {sigma}"),
        ));
    }
    if n == 1 {
        return Ok(a.clone());
    }
    let d = a.pole_order() as i64;
    let beta = a.postulation_number()?;
    // The transform agrees with Phi(n l) once n l > beta, so its numerator has
    // degree at most floor(max(beta, 0) / n) + d; d + 1 more terms certify it.
    let last = beta.max(0) / n as i64 + 2 * d + 1;
    let step = n as i64;
    let coeffs: Vec<_> = (0..=last).map(|l| a.coefficient(step * l)).collect();
    RationalGF::from_coefficients(&coeffs, 0, a.pole_order())
}

fn ceil_div(x: i64, n: i64) -> i64 {
    (x + n - 1).div_euclid(n)
}

/// `d - ceil(alpha / n)`, cross-checked against the degree of the actual
/// Veronese numerator.
pub fn veronese_regularity_check(m: &GradedCMModule, n: u32) -> Result<i64> {
    require_cm(m, 0)?;
    if n == 0 {
        return Err(Error::InvalidArgument("Veronese degree must be at least 1".into()));
    }
    if m.alpha() < 1 {
        return Err(Error::hypothesis(
            None,
            format!("reg {} is not below dim {}", m.degree(), m.dim()),
        ));
    }
    if m.sigma() != 0 {
        return Err(Error::hypothesis(None, "h-polynomial must start in degree 0"));
    }
    if !m.hilbert.has_nonnegative_h() {
        return Err(Error::hypothesis(None, "h-polynomial has a negative coefficient"));
    }
    let expected = m.dim() as i64 - ceil_div(m.alpha(), n as i64);
    let v = veronese(&m.hilbert, n)?;
    let actual = v.top_degree().ok_or(Error::ZeroSeries("Veronese regularity"))?;
    if actual != expected {
        return Err(Error::verification(
            format!("regularity of the {n}-th Veronese transform"),
            expected,
            actual,
        ));
    }
    Ok(expected)
}

// Hypotheses shared by both Segre regularity formulas.
fn require_positive_dim_family(modules: &[GradedCMModule]) -> Result<()> {
    if modules.is_empty() {
        return Err(Error::InvalidArgument("no modules given".into()));
    }
    for (k, m) in modules.iter().enumerate() {
        require_cm(m, k)?;
        if m.dim() == 0 {
            return Err(Error::hypothesis(Some(k), "dimension must be at least 1"));
        }
        if m.sigma() < 0 {
            return Err(Error::hypothesis(
                Some(k),
                format!("module has generators in negative degree {}", m.sigma()),
            ));
        }
        if m.alpha() < 1 {
            return Err(Error::hypothesis(
                Some(k),
                format!("reg {} is not below dim {}", m.degree(), m.dim()),
            ));
        }
    }
    Ok(())
}

fn product_numerator(series: &[RationalGF]) -> Result<RationalGF> {
    if series.len() == 1 {
        Ok(series[0].clone())
    } else {
        segre_multi_hvector(series)
    }
}

fn chained_star_star(series: &[RationalGF]) -> Result<bool> {
    let mut partial = series[0].clone();
    for next in &series[1..] {
        if !condition_star_star(&partial, next)? {
            return Ok(false);
        }
        partial = segre_closed(&partial, next)?;
    }
    Ok(true)
}

fn check_family_formula(series: &[RationalGF], expected: i64, what: &str) -> Result<()> {
    let product = product_numerator(series)?;
    let actual = product
        .top_degree()
        .ok_or(Error::ZeroSeries("Segre regularity"))?;
    if actual != expected {
        return Err(Error::verification(what, expected, actual));
    }
    if !chained_star_star(series)? {
        return Err(Error::verification(
            format!("{what}: chained condition (**)"),
            true,
            false,
        ));
    }
    Ok(())
}

/// `(b_1 + ... + b_s + 1) - max(alpha_i)` for Cohen-Macaulay modules with
/// `reg < dim`. With `verify` the degree of the product h-polynomial is
/// recomputed and the chained condition (**) is checked.
pub fn segre_regularity_cm(modules: &[GradedCMModule], verify: bool) -> Result<i64> {
    require_positive_dim_family(modules)?;
    let sum_b: i64 = modules.iter().map(|m| m.dim() as i64 - 1).sum();
    let max_alpha = modules.iter().map(GradedCMModule::alpha).max().unwrap();
    let reg = sum_b + 1 - max_alpha;
    if verify {
        let series: Vec<_> = modules.iter().map(|m| m.hilbert.clone()).collect();
        check_family_formula(&series, reg, "regularity of the Segre product")?;
    }
    Ok(reg)
}

/// `(b_1 + ... + b_s + 1) - max(ceil(alpha_i / n_i))` for the Segre product
/// of the `n_i`-th Veronese transforms.
pub fn segre_veronese_regularity(
    modules: &[GradedCMModule],
    ns: &[u32],
    verify: bool,
) -> Result<i64> {
    if modules.len() != ns.len() {
        return Err(Error::InvalidArgument(format!(
            "{} modules but {} Veronese degrees",
            modules.len(),
            ns.len()
        )));
    }
    if let Some(k) = ns.iter().position(|&n| n == 0) {
        return Err(Error::InvalidArgument(format!(
            "Veronese degree #{k} must be at least 1"
        )));
    }
    require_positive_dim_family(modules)?;
    let sum_b: i64 = modules.iter().map(|m| m.dim() as i64 - 1).sum();
    let max_ceil = modules
        .iter()
        .zip(ns)
        .map(|(m, &n)| ceil_div(m.alpha(), n as i64))
        .max()
        .unwrap();
    let reg = sum_b + 1 - max_ceil;
    if verify {
        let series = modules
            .iter()
            .zip(ns)
            .map(|(m, &n)| veronese(&m.hilbert, n))
            .collect::<Result<Vec<_>>>()?;
        check_family_formula(&series, reg, "regularity of the Segre-Veronese product")?;
    }
    Ok(reg)
}

/// Minimum regularity over the zero-dimensional modules of the family.
///
/// With `verify` the Segre product is computed and must be a Laurent
/// polynomial of degree at most that value. Strict inequality is allowed;
/// use [`zero_dim_product_degree`] to see whether it is attained.
pub fn zero_dim_segre_regularity(modules: &[GradedCMModule], verify: bool) -> Result<i64> {
    for (k, m) in modules.iter().enumerate() {
        require_cm(m, k)?;
    }
    let reg = modules
        .iter()
        .filter(|m| m.dim() == 0)
        .map(GradedCMModule::degree)
        .min()
        .ok_or_else(|| Error::hypothesis(None, "no zero-dimensional module in the family"))?;
    if verify {
        if let Some(deg) = zero_dim_product_degree(modules)? {
            if deg > reg {
                return Err(Error::verification(
                    "degree of the zero-dimensional Segre product",
                    format!("<= {reg}"),
                    deg,
                ));
            }
        }
    }
    Ok(reg)
}

/// Degree of the Segre product of a family containing a zero-dimensional
/// module; `None` when the product vanishes.
pub fn zero_dim_product_degree(modules: &[GradedCMModule]) -> Result<Option<i64>> {
    let Some(first) = modules.first() else {
        return Err(Error::InvalidArgument("no modules given".into()));
    };
    let mut product = first.hilbert.clone();
    for m in &modules[1..] {
        product = segre_closed(&product, &m.hilbert)?;
        if product.is_zero() {
            return Ok(None);
        }
    }
    if product.pole_order() != 0 {
        return Err(Error::verification(
            "pole order of the zero-dimensional Segre product",
            0,
            product.pole_order(),
        ));
    }
    Ok(product.top_degree())
}

/// Index data for a Simon Newcomb number `A([b], k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewcombQuery {
    b: Vec<u32>,
    k: i64,
}

impl NewcombQuery {
    pub fn new(b: Vec<u32>, k: i64) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidArgument("b must not be empty".into()));
        }
        Ok(Self { b, k })
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// `b_1 + ... + b_n - max b`, the last index with a nonzero value.
    pub fn max_k(&self) -> i64 {
        max_newcomb_index(&self.b)
    }
}

fn max_newcomb_index(b: &[u32]) -> i64 {
    let sum: i64 = b.iter().map(|&x| x as i64).sum();
    sum - b.iter().copied().max().unwrap_or(0) as i64
}

/// `A([b], k)`: the `k`-th h-coefficient of the Segre product of polynomial
/// rings in `b_1 + 1, ..., b_n + 1` variables, as the nested sum
///
/// ```text
/// sum A_{i_2} A_{i_2,i_3} ... A_{i_{n-1},i_n},   i_n = k
/// A_{i_2}         = C(b_1, i_2) C(b_2, i_2)
/// A_{i_s,i_{s+1}} = C(b_1 + ... + b_s - i_s, i_{s+1} - i_s) C(b_{s+1} + i_s, i_{s+1})
/// ```
///
/// with `0 <= i_tau <= min(b_1 + ... + b_tau - max(b_1..b_tau), i_{tau+1})`.
/// Zero outside `0..=max_k`.
pub fn newcomb(q: &NewcombQuery) -> BigInt {
    let b = &q.b;
    let k = q.k;
    if k < 0 || k > q.max_k() {
        return BigInt::zero();
    }
    if b.len() == 1 {
        return BigInt::one();
    }
    let bi = |idx: usize| b[idx] as i64;
    // caps[t] bounds i_{t+1} (1-based i), i.e. the degree of the partial
    // product of the first t + 1 rings.
    let caps: Vec<i64> = (1..=b.len()).map(|t| max_newcomb_index(&b[..t])).collect();

    // Values of the partial sum indexed by i_2 = 0..=caps[1].
    let mut level: Vec<BigInt> = (0..=caps[1])
        .map(|i| binomial(bi(0), i) * binomial(bi(1), i))
        .collect();
    let mut partial_sum = bi(0) + bi(1);
    for s in 2..b.len() {
        let top = if s + 1 == b.len() { k } else { caps[s] };
        let next: Vec<BigInt> = (0..=top)
            .map(|inext| {
                let upper = caps[s - 1].min(inext);
                let mut acc = BigInt::zero();
                for i in 0..=upper {
                    let v = &level[i as usize];
                    if v.is_zero() {
                        continue;
                    }
                    acc += v
                        * binomial(partial_sum - i, inext - i)
                        * binomial(bi(s) + i, inext);
                }
                acc
            })
            .collect();
        partial_sum += bi(s);
        level = next;
    }
    level[k as usize].clone()
}

/// `A([b], 0), ..., A([b], max_k)`.
pub fn newcomb_row(b: &[u32]) -> Result<Vec<BigInt>> {
    let top = NewcombQuery::new(b.to_vec(), 0)?.max_k();
    (0..=top)
        .map(|k| NewcombQuery::new(b.to_vec(), k).map(|q| newcomb(&q)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn gf(start: i64, h: &[i64], d: u32) -> RationalGF {
        RationalGF::new(LaurentPoly::from_i64s(start, h), d)
    }

    fn cm(start: i64, h: &[i64], d: u32) -> GradedCMModule {
        GradedCMModule::cohen_macaulay(gf(start, h, d)).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(regularity(&cm(0, &[1], 2)), Ok(0));
        assert_eq!(regularity(&cm(0, &[1, 1], 3)), Ok(1));
        assert_eq!(regularity(&cm(0, &[1, 2, 1], 0)), Ok(2));
        let undeclared = GradedCMModule::new(gf(0, &[1], 2), 2, false).unwrap();
        assert!(matches!(regularity(&undeclared), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn module_dim_must_match() {
        assert!(GradedCMModule::new(gf(0, &[1], 2), 3, true).is_err());
        assert!(GradedCMModule::new(RationalGF::zero(), 0, true).is_err());
        // (1 - t^2)/(1-t)^3 normalizes to pole order 2.
        assert!(GradedCMModule::new(gf(0, &[1, 0, -1], 3), 2, true).is_ok());
    }

    #[test]
    fn veronese_examples() {
        let a = gf(0, &[1, 1], 3);
        assert_eq!(veronese(&a, 1).unwrap(), a);
        assert_eq!(veronese(&gf(0, &[1], 2), 2).unwrap(), gf(0, &[1, 1], 2));
        assert_eq!(veronese(&a, 3).unwrap(), gf(0, &[1, 13, 4], 3));
        assert!(veronese(&a, 0).is_err());
        assert!(veronese(&gf(-1, &[1], 2), 2).is_err());
    }

    #[test]
    fn veronese_of_polynomials_and_high_numerators() {
        // 1 + 2t + 3t^2 + 4t^3 + 5t^4, every other coefficient.
        let p = gf(0, &[1, 2, 3, 4, 5], 0);
        assert_eq!(veronese(&p, 2).unwrap(), gf(0, &[1, 3, 5], 0));
        let a = gf(2, &[3, -2], 2);
        let v = veronese(&a, 2).unwrap();
        for l in 0..15 {
            assert_eq!(v.coefficient(l), a.coefficient(2 * l));
        }
    }

    #[test]
    fn veronese_regularity_examples() {
        assert_eq!(veronese_regularity_check(&cm(0, &[1], 2), 2), Ok(1));
        assert_eq!(veronese_regularity_check(&cm(0, &[1, 1], 3), 3), Ok(2));
        assert_eq!(veronese_regularity_check(&cm(0, &[1, 1], 3), 1), Ok(1));
        assert!(matches!(
            veronese_regularity_check(&cm(0, &[1, 1, 1], 2), 2),
            Err(Error::Hypothesis { .. })
        ));
        assert!(matches!(
            veronese_regularity_check(&cm(0, &[1, -1, 1], 4), 2),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn segre_regularity_examples() {
        let p1 = cm(0, &[1], 2);
        let p2 = cm(0, &[1], 3);
        assert_eq!(segre_regularity_cm(&[p1.clone(), p1.clone()], true), Ok(1));
        assert_eq!(
            segre_regularity_cm(&[p1.clone(), p1.clone(), p1.clone()], true),
            Ok(2)
        );
        assert_eq!(segre_regularity_cm(&[p2, p1.clone()], true), Ok(1));
    }

    #[test]
    fn segre_regularity_reports_offending_index() {
        let p1 = cm(0, &[1], 2);
        let bad = cm(0, &[1, 1, 1], 2);
        assert!(matches!(
            segre_regularity_cm(&[p1, bad], false),
            Err(Error::Hypothesis { index: Some(1), .. })
        ));
    }

    #[test]
    fn segre_veronese_examples() {
        let p1 = cm(0, &[1], 2);
        assert_eq!(
            segre_veronese_regularity(&[p1.clone(), p1.clone()], &[2, 2], true),
            Ok(2)
        );
        assert_eq!(
            segre_veronese_regularity(&[p1.clone(), p1.clone()], &[1, 1], true),
            segre_regularity_cm(&[p1.clone(), p1.clone()], true)
        );
        let m = cm(0, &[1, 1], 3);
        assert_eq!(segre_veronese_regularity(std::slice::from_ref(&m), &[3], true), Ok(2));
        assert_eq!(veronese_regularity_check(&m, 3), Ok(2));
        assert!(segre_veronese_regularity(&[p1], &[1, 2], false).is_err());
    }

    #[test]
    fn zero_dim_examples() {
        let m0 = cm(0, &[1, 1], 0);
        let m0b = cm(0, &[1, 0, 1, 0, 0, 1], 0);
        assert_eq!(zero_dim_segre_regularity(&[m0.clone(), cm(0, &[1], 2)], true), Ok(1));
        assert_eq!(zero_dim_product_degree(&[m0.clone(), cm(0, &[1], 2)]), Ok(Some(1)));
        assert_eq!(zero_dim_segre_regularity(&[m0.clone(), m0b.clone()], true), Ok(1));
        assert_eq!(zero_dim_product_degree(&[m0, m0b]), Ok(Some(0)));
        let one = cm(0, &[1], 0);
        assert_eq!(zero_dim_segre_regularity(&[one, cm(0, &[2, 3], 4)], true), Ok(0));
        assert!(matches!(
            zero_dim_segre_regularity(&[cm(0, &[1], 2)], true),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn zero_dim_allows_negative_degrees() {
        let m = cm(-2, &[1, 1], 0);
        assert_eq!(zero_dim_segre_regularity(&[m, cm(-1, &[1], 1)], true), Ok(-1));
    }

    #[test]
    fn newcomb_examples() {
        assert_eq!(newcomb_row(&[1, 1]).unwrap(), ints(&[1, 1]));
        assert_eq!(newcomb_row(&[1, 1, 1]).unwrap(), ints(&[1, 4, 1]));
        assert_eq!(newcomb_row(&[2, 1]).unwrap(), ints(&[1, 2]));
        assert_eq!(newcomb_row(&[1, 1, 1, 1]).unwrap(), ints(&[1, 11, 11, 1]));
        for b in [vec![3], vec![2, 5], vec![1, 0, 2, 4]] {
            assert_eq!(newcomb(&NewcombQuery::new(b, 0).unwrap()), BigInt::one());
        }
        assert_eq!(newcomb(&NewcombQuery::new(vec![1, 1], 2).unwrap()), BigInt::zero());
        assert_eq!(newcomb(&NewcombQuery::new(vec![1, 1], -1).unwrap()), BigInt::zero());
        assert!(NewcombQuery::new(vec![], 0).is_err());
    }
}
