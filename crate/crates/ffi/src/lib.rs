//! C ABI for `segre-core`.
//!
//! Series are passed around as opaque `SegreSeries` handles created by the
//! `segre_series_*` constructors and released with `segre_series_free`.
//! Every fallible function returns a `SegreStatus`; on failure a message is
//! available from `segre_last_error` until the next call on the same thread.
//! Strings handed out by the library are released with `segre_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use segre_core::format::SeriesFile;
use segre_core::{
    newcomb, segre_closed, segre_oracle, segre_regularity_cm, veronese,
    zero_dim_segre_regularity, Error, GradedCMModule, LaurentPoly, NewcombQuery, RationalGF,
};

/// Status codes; the nonzero values match the `segre` CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegreStatus {
    Ok = 0,
    NullPointer = 1,
    Malformed = 2,
    Hypothesis = 3,
    Verification = 4,
    Panic = 5,
}

/// Opaque handle to a canonical series `h(t) / (1-t)^d`.
pub struct SegreSeries {
    inner: RationalGF,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn status_of(e: &Error) -> SegreStatus {
    match e {
        Error::Hypothesis { .. } => SegreStatus::Hypothesis,
        Error::Verification { .. } => SegreStatus::Verification,
        _ => SegreStatus::Malformed,
    }
}

fn guard<F>(f: F) -> SegreStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SegreStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed for {what}"));
            SegreStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SegreStatus::Panic
        }
    }
}

unsafe fn series_ref<'a>(p: *const SegreSeries, what: &'static str) -> Result<&'a RationalGF, Failure> {
    p.as_ref().map(|s| &s.inner).ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_series(out: *mut *mut SegreSeries, a: RationalGF) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    out.write(Box::into_raw(Box::new(SegreSeries { inner: a })));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    let c = CString::new(s).map_err(|_| Error::InvalidArgument("string contains NUL".into()))?;
    out.write(c.into_raw());
    Ok(())
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn segre_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds `sum_k (num[k]/den[k]) t^exp[k] / (1-t)^pole_order` in canonical
/// form. `denominators` may be NULL for integer coefficients. Repeated
/// exponents are summed.
#[no_mangle]
pub unsafe extern "C" fn segre_series_new(
    exponents: *const i64,
    numerators: *const i64,
    denominators: *const i64,
    len: usize,
    pole_order: u32,
    out: *mut *mut SegreSeries,
) -> SegreStatus {
    guard(|| {
        if len > 0 && (exponents.is_null() || numerators.is_null()) {
            return Err(Failure::Null("exponents/numerators"));
        }
        let mut terms = Vec::with_capacity(len);
        for k in 0..len {
            let e = *exponents.add(k);
            let p = BigInt::from(*numerators.add(k));
            let q = if denominators.is_null() {
                BigInt::from(1)
            } else {
                BigInt::from(*denominators.add(k))
            };
            if q == BigInt::from(0) {
                return Err(Error::InvalidArgument(format!("zero denominator at index {k}")).into());
            }
            terms.push((e, segre_core::Rational::new(p, q)));
        }
        write_series(out, RationalGF::new(LaurentPoly::from_terms(terms), pole_order))
    })
}

/// Parses a series file (JSON, `{"numerator": [[e, "p/q"], ...], "pole_order": d}`).
#[no_mangle]
pub unsafe extern "C" fn segre_series_from_json(
    json: *const c_char,
    out: *mut *mut SegreSeries,
) -> SegreStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Error::InvalidArgument("input is not UTF-8".into()))?;
        let a = SeriesFile::parse(text)?.to_series()?;
        write_series(out, a)
    })
}

#[no_mangle]
pub unsafe extern "C" fn segre_series_free(series: *mut SegreSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

#[no_mangle]
pub unsafe extern "C" fn segre_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Text form, e.g. `(3*t^2 - 2*t^3) / (1-t)^2`.
#[no_mangle]
pub unsafe extern "C" fn segre_series_to_string(
    series: *const SegreSeries,
    out: *mut *mut c_char,
) -> SegreStatus {
    guard(|| {
        let a = series_ref(series, "series")?;
        write_string(out, a.to_string())
    })
}

/// Series-file JSON of the canonical form.
#[no_mangle]
pub unsafe extern "C" fn segre_series_to_json(
    series: *const SegreSeries,
    out: *mut *mut c_char,
) -> SegreStatus {
    guard(|| {
        let a = series_ref(series, "series")?;
        write_string(out, SeriesFile::from_series(a).to_json())
    })
}

#[no_mangle]
pub unsafe extern "C" fn segre_series_pole_order(
    series: *const SegreSeries,
    out: *mut u32,
) -> SegreStatus {
    guard(|| {
        let a = series_ref(series, "series")?;
        write_out(out, a.pole_order(), "out")
    })
}

/// Degree of the canonical numerator; `SEGRE_STATUS_MALFORMED` for zero.
#[no_mangle]
pub unsafe extern "C" fn segre_series_degree(
    series: *const SegreSeries,
    out: *mut i64,
) -> SegreStatus {
    guard(|| {
        let a = series_ref(series, "series")?;
        let deg = a.top_degree().ok_or(Error::ZeroSeries("degree"))?;
        write_out(out, deg, "out")
    })
}

/// Coefficient of `t^k` as a `"p"` or `"p/q"` string.
#[no_mangle]
pub unsafe extern "C" fn segre_series_coefficient(
    series: *const SegreSeries,
    k: i64,
    out: *mut *mut c_char,
) -> SegreStatus {
    guard(|| {
        let a = series_ref(series, "series")?;
        write_string(out, a.coefficient(k).to_string())
    })
}

#[no_mangle]
pub unsafe extern "C" fn segre_series_postulation_number(
    series: *const SegreSeries,
    out: *mut i64,
) -> SegreStatus {
    guard(|| {
        let a = series_ref(series, "series")?;
        write_out(out, a.postulation_number()?, "out")
    })
}

/// Segre transform from the numerators. With `verify` the result is
/// compared against the brute-force expansion and
/// `SEGRE_STATUS_VERIFICATION` is returned on a mismatch.
#[no_mangle]
pub unsafe extern "C" fn segre_product(
    a: *const SegreSeries,
    b: *const SegreSeries,
    verify: bool,
    out: *mut *mut SegreSeries,
) -> SegreStatus {
    guard(|| {
        let (a, b) = (series_ref(a, "a")?, series_ref(b, "b")?);
        let closed = segre_closed(a, b)?;
        if verify {
            let oracle = segre_oracle(a, b);
            if oracle != closed {
                return Err(Error::Verification {
                    what: "Segre transform".into(),
                    expected: oracle.to_string(),
                    actual: closed.to_string(),
                }
                .into());
            }
        }
        write_series(out, closed)
    })
}

/// Segre transform by coefficientwise expansion.
#[no_mangle]
pub unsafe extern "C" fn segre_product_oracle(
    a: *const SegreSeries,
    b: *const SegreSeries,
    out: *mut *mut SegreSeries,
) -> SegreStatus {
    guard(|| {
        let (a, b) = (series_ref(a, "a")?, series_ref(b, "b")?);
        write_series(out, segre_oracle(a, b))
    })
}

#[no_mangle]
pub unsafe extern "C" fn segre_veronese(
    series: *const SegreSeries,
    n: u32,
    out: *mut *mut SegreSeries,
) -> SegreStatus {
    guard(|| {
        let a = series_ref(series, "series")?;
        write_series(out, veronese(a, n)?)
    })
}

/// Regularity of the Segre product of Cohen-Macaulay modules given by their
/// Hilbert series (each declared Cohen-Macaulay, dimension = pole order).
/// Families containing a zero-dimensional module use the minimum of the
/// zero-dimensional regularities.
#[no_mangle]
pub unsafe extern "C" fn segre_regularity(
    series: *const *const SegreSeries,
    len: usize,
    verify: bool,
    out: *mut i64,
) -> SegreStatus {
    guard(|| {
        if series.is_null() && len > 0 {
            return Err(Failure::Null("series"));
        }
        let mut modules = Vec::with_capacity(len);
        for k in 0..len {
            let a = series_ref(*series.add(k), "series element")?;
            modules.push(GradedCMModule::cohen_macaulay(a.clone())?);
        }
        let reg = if modules.iter().any(|m| m.dim() == 0) {
            zero_dim_segre_regularity(&modules, verify)?
        } else {
            segre_regularity_cm(&modules, verify)?
        };
        write_out(out, reg, "out")
    })
}

/// Simon Newcomb number `A([b], k)` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn segre_newcomb(
    b: *const u32,
    len: usize,
    k: i64,
    out: *mut *mut c_char,
) -> SegreStatus {
    guard(|| {
        if b.is_null() && len > 0 {
            return Err(Failure::Null("b"));
        }
        let parts = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(b, len).to_vec()
        };
        let q = NewcombQuery::new(parts, k)?;
        write_string(out, newcomb(&q).to_string())
    })
}
