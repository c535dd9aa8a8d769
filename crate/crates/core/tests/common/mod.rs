#![allow(dead_code)]

//! Random generators and brute-force references shared by the integration
//! tests. The references work on plain truncated power series and never call
//! the crate's expansion, reconstruction or closed forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use segre_core::{LaurentPoly, Rational, RationalGF};

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

/// Coefficients `lo..=hi` of `h / (1-t)^d`. Multiplying by the geometric
/// series `1/(1-t)` is a running sum over a dense window, done `d` times.
pub fn brute_coeffs(a: &RationalGF, lo: i64, hi: i64) -> Vec<Rational> {
    if lo > hi {
        return Vec::new();
    }
    let floor = a.sigma().unwrap_or(lo).min(lo);
    let mut dense: Vec<Rational> = (floor..=hi).map(|k| a.numerator().coeff(k)).collect();
    for _ in 0..a.pole_order() {
        let mut acc = Rational::zero();
        for c in dense.iter_mut() {
            acc += &*c;
            *c = acc.clone();
        }
    }
    dense.split_off((lo - floor) as usize)
}

/// Dense `p * (1-t)^d` for `p` given from exponent `start`, truncated at `hi`.
fn times_one_minus_t_pow(start: i64, p: &[Rational], d: u32, hi: i64) -> LaurentPoly {
    let mut v = p.to_vec();
    for _ in 0..d {
        for k in (1..v.len()).rev() {
            let prev = v[k - 1].clone();
            v[k] -= prev;
        }
    }
    LaurentPoly::from_terms((start..).zip(v).filter(|(e, _)| *e <= hi))
}

/// The Segre transform from its definition with a generous window, checking
/// that the reconstructed numerator really stops before the window ends.
pub fn brute_segre(a: &RationalGF, b: &RationalGF) -> RationalGF {
    if a.is_zero() || b.is_zero() {
        return RationalGF::zero();
    }
    let lo = a.sigma().unwrap().max(b.sigma().unwrap());
    let poly_end = [a, b]
        .iter()
        .filter(|x| x.pole_order() == 0)
        .map(|x| x.top_degree().unwrap())
        .min();
    let d = match poly_end {
        Some(_) => 0,
        None => a.pole_order() + b.pole_order() - 1,
    };
    let hi = match poly_end {
        Some(end) => end,
        None => {
            a.top_degree().unwrap().max(b.top_degree().unwrap())
                + (a.pole_order() + b.pole_order()) as i64
                + 12
        }
    };
    if lo > hi {
        return RationalGF::zero();
    }
    let ca = brute_coeffs(a, lo, hi);
    let cb = brute_coeffs(b, lo, hi);
    let product: Vec<Rational> = ca.iter().zip(&cb).map(|(x, y)| x * y).collect();
    let numerator = times_one_minus_t_pow(lo, &product, d, hi);
    let cut = hi - d as i64 - 8;
    if d > 0 {
        assert!(
            numerator.deg().is_none_or(|deg| deg <= cut),
            "brute window too short for {a} (x) {b}"
        );
    }
    RationalGF::new(numerator, d)
}

pub fn brute_fold(series: &[RationalGF]) -> RationalGF {
    let mut acc = series[0].clone();
    for x in &series[1..] {
        acc = brute_segre(&acc, x);
    }
    acc
}

fn random_coeff<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=4);
        if p != 0 {
            return q(p, d);
        }
    }
}

/// Canonical nonzero series with mixed-sign rational numerator supported in
/// `[min_exp, max_exp]`, spanning at most 8 exponents, and pole order up to
/// `max_d` before normalization.
pub fn random_series<R: Rng>(rng: &mut R, min_exp: i64, max_exp: i64, max_d: u32) -> RationalGF {
    loop {
        let lo = rng.gen_range(min_exp..=max_exp);
        let hi = rng.gen_range(lo..=max_exp.min(lo + 7));
        let mut terms = vec![(lo, random_coeff(rng)), (hi, random_coeff(rng))];
        for e in lo + 1..hi {
            if rng.gen_bool(0.6) {
                terms.push((e, random_coeff(rng)));
            }
        }
        let d = rng.gen_range(0..=max_d);
        let a = RationalGF::new(LaurentPoly::from_terms(terms), d);
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_series_with_pole<R: Rng>(rng: &mut R, min_exp: i64, max_exp: i64, max_d: u32) -> RationalGF {
    loop {
        let a = random_series(rng, min_exp, max_exp, max_d);
        if a.pole_order() >= 1 {
            return a;
        }
    }
}

/// `h/(1-t)^d` with integer `h >= 0`, `h_0 >= 1`, `deg h < d`, `1 <= d <= max_d`.
pub fn random_admissible<R: Rng>(rng: &mut R, max_d: u32) -> RationalGF {
    let d = rng.gen_range(1..=max_d);
    let deg = rng.gen_range(0..d as i64);
    let mut h: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..=4)).collect();
    h[0] = rng.gen_range(1..=4);
    h[deg as usize] = rng.gen_range(1..=4);
    let a = RationalGF::new(LaurentPoly::from_i64s(0, &h), d);
    assert_eq!(a.pole_order(), d, "positive h(1) keeps the pole order");
    a
}

/// `sum_l a_{nl} t^l`, read off a brute expansion and turned back into a
/// numerator by multiplying with `(1-t)^d`.
pub fn brute_veronese(a: &RationalGF, n: u32) -> RationalGF {
    let d = a.pole_order();
    let len = a.top_degree().unwrap().max(0) + 2 * d as i64 + 12;
    let dense = brute_coeffs(a, 0, n as i64 * len);
    let picked: Vec<Rational> = (0..=len).map(|l| dense[(l * n as i64) as usize].clone()).collect();
    let numerator = times_one_minus_t_pow(0, &picked, d, len);
    assert!(numerator.deg().is_none_or(|deg| deg <= len - d as i64 - 8), "brute Veronese window too short");
    RationalGF::new(numerator, d)
}

/// `n!/(k_1!...k_m!)`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let fact = |n: u32| (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let total: u32 = parts.iter().sum();
    parts.iter().fold(fact(total), |acc, &p| acc / fact(p))
}

/// All compositions of `n` into positive parts.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// h-coefficients of the Segre product of polynomial rings in `b_j + 1`
/// variables, from the coefficient product `prod_j C(b_j + l, b_j)`.
pub fn newcomb_oracle(b: &[u32]) -> Vec<BigInt> {
    let total: u32 = b.iter().sum();
    let d = total + 1;
    let hi = 2 * d as i64 + 4;
    let binom = |n: i64, k: i64| -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        acc
    };
    let coeffs: Vec<Rational> = (0..=hi)
        .map(|l| {
            Rational::from_integer(
                b.iter()
                    .fold(BigInt::one(), |acc, &bj| acc * binom(bj as i64 + l, bj as i64)),
            )
        })
        .collect();
    let series = LaurentPoly::from_dense(0, &coeffs);
    let h = &series * &LaurentPoly::one_minus_t_pow(d);
    let mut out: Vec<BigInt> = (0..=hi - d as i64 - 1)
        .map(|k| h.coeff(k).to_integer())
        .collect();
    while out.last().is_some_and(|x| x.is_zero()) {
        out.pop();
    }
    out
}
