//! C ABI over the `f64` backend of `tropical-approx`.
//!
//! Vectors cross the boundary as `double` arrays where `-INFINITY` and
//! `INFINITY` stand for the two infinite elements; NaN is rejected. Matrices
//! and generator lists are row-major. Every fallible call returns a
//! [`TaStatus`] and writes its result through an out-pointer; on failure
//! [`ta_last_error_message`] describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tropical_approx::{
    cyclic_solve, hilbert_distance, power_solve, Error, ExtendedReal, GeneratedSemimodule, HalfSpace,
    InequalitySystem, RowVector, Scalar, SolveOptions, SolveStatus, TropicalMatrix, TropicalVector,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    /// No finite answer exists: infinite distance, point inside, nothing to separate.
    Infeasible = 4,
    IterationCap = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaMethod {
    Cyclic = 0,
    Power = 1,
}

/// Half-space `{h | a h >= b h}`.
pub struct TaHalfSpace(HalfSpace<f64>);

/// Semimodule spanned by a finite list of generators.
pub struct TaSemimodule(GeneratedSemimodule<f64>);

/// Two-sided system `A x >= B x`.
pub struct TaSystem(InequalitySystem<f64>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(TaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Dimension { .. } => TaStatus::DimensionMismatch,
            Error::PointInside | Error::InfiniteDistance | Error::NoSeparation => TaStatus::Infeasible,
            Error::IterationCap { .. } => TaStatus::IterationCap,
            _ => TaStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn null(what: &str) -> Failure {
    Failure(TaStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any error and turns panics into [`TaStatus::Panic`].
fn guard(body: impl FnOnce() -> Outcome) -> TaStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TaStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            TaStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` is null or points to `len` readable doubles.
unsafe fn read_entries(ptr: *const f64, len: usize, what: &str) -> Result<Vec<ExtendedReal<f64>>, Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    if len == 0 {
        return Err(Failure(TaStatus::InvalidArgument, format!("{what} has length 0")));
    }
    let raw = std::slice::from_raw_parts(ptr, len);
    if let Some(i) = raw.iter().position(|v| v.is_nan()) {
        return Err(Failure(TaStatus::InvalidArgument, format!("{what}[{i}] is NaN")));
    }
    Ok(raw.iter().map(|&v| v.lift()).collect())
}

unsafe fn read_vector(ptr: *const f64, n: usize, what: &str) -> Result<TropicalVector<f64>, Failure> {
    Ok(TropicalVector::new(read_entries(ptr, n, what)?)?)
}

unsafe fn read_rows(ptr: *const f64, rows: usize, n: usize, what: &str) -> Result<Vec<RowVector<f64>>, Failure> {
    if rows == 0 {
        return Ok(Vec::new());
    }
    let len = rows
        .checked_mul(n)
        .ok_or_else(|| Failure(TaStatus::InvalidArgument, format!("{what} is too large")))?;
    let flat = read_entries(ptr, len, what)?;
    flat.chunks(n)
        .map(|c| RowVector::new(c.to_vec()).map_err(Failure::from))
        .collect()
}

fn to_double(e: ExtendedReal<f64>) -> f64 {
    e.to_f64()
}

unsafe fn write_vector(v: &TropicalVector<f64>, out: *mut f64) {
    for (i, e) in v.iter().enumerate() {
        *out.add(i) = to_double(*e);
    }
}

unsafe fn handle<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or_else(|| null(what))
}

fn check_dim(expected: usize, found: usize) -> Outcome {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found }.into())
    }
}

/// Message for the most recent failed call on this thread, or null. The
/// pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn ta_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Hilbert's projective distance between `x` and `y`.
///
/// # Safety
/// `x` and `y` point to `n` readable doubles, `out` to one writable double.
#[no_mangle]
pub unsafe extern "C" fn ta_hilbert_distance(x: *const f64, y: *const f64, n: usize, out: *mut f64) -> TaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let x = read_vector(x, n, "x")?;
        let y = read_vector(y, n, "y")?;
        *out = to_double(hilbert_distance(&x, &y)?);
        Ok(())
    })
}

/// Builds the half-space `{h | a h >= b h}`; `+INFINITY` coefficients are rejected.
///
/// # Safety
/// `a` and `b` point to `n` readable doubles, `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_halfspace_new(
    a: *const f64,
    b: *const f64,
    n: usize,
    out: *mut *mut TaHalfSpace,
) -> TaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let a = RowVector::new(read_entries(a, n, "a")?)?;
        let b = RowVector::new(read_entries(b, n, "b")?)?;
        let h = HalfSpace::new(a, b)?;
        *out = Box::into_raw(Box::new(TaHalfSpace(h)));
        Ok(())
    })
}

/// # Safety
/// `h` is null or was returned by [`ta_halfspace_new`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ta_halfspace_free(h: *mut TaHalfSpace) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Dimension of the half-space, or 0 for a null handle.
///
/// # Safety
/// `h` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_halfspace_dim(h: *const TaHalfSpace) -> usize {
    h.as_ref().map_or(0, |h| h.0.dim())
}

/// Writes 1 to `out` when `x` lies in the half-space, 0 otherwise.
///
/// # Safety
/// `h` is a live handle, `x` points to `n` readable doubles, `out` to one writable int.
#[no_mangle]
pub unsafe extern "C" fn ta_halfspace_contains(
    h: *const TaHalfSpace,
    x: *const f64,
    n: usize,
    out: *mut i32,
) -> TaStatus {
    guard(|| {
        let h = handle(h, "half-space")?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_dim(h.0.dim(), n)?;
        let x = read_vector(x, n, "x")?;
        *out = i32::from(h.0.contains(&x)?);
        Ok(())
    })
}

/// Greatest point of the half-space below `x`, written to `out`.
///
/// # Safety
/// `h` is a live handle, `x` points to `n` readable doubles, `out` to `n` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ta_halfspace_project(
    h: *const TaHalfSpace,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> TaStatus {
    guard(|| {
        let h = handle(h, "half-space")?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_dim(h.0.dim(), n)?;
        let x = read_vector(x, n, "x")?;
        write_vector(&h.0.project(&x)?, out);
        Ok(())
    })
}

/// Distance from `x` to the half-space.
///
/// # Safety
/// `h` is a live handle, `x` points to `n` readable doubles, `out` to one writable double.
#[no_mangle]
pub unsafe extern "C" fn ta_halfspace_distance(
    h: *const TaHalfSpace,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> TaStatus {
    guard(|| {
        let h = handle(h, "half-space")?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_dim(h.0.dim(), n)?;
        let x = read_vector(x, n, "x")?;
        *out = to_double(h.0.distance(&x)?);
        Ok(())
    })
}

/// Builds the semimodule spanned by `q` generators of length `n`, stored
/// row-major in `generators`. `q` may be 0, in which case `generators` may be null.
///
/// # Safety
/// `generators` points to `q * n` readable doubles, `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_semimodule_new(
    generators: *const f64,
    q: usize,
    n: usize,
    out: *mut *mut TaSemimodule,
) -> TaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if n == 0 {
            return Err(Error::Empty.into());
        }
        let gens = read_rows(generators, q, n, "generators")?
            .into_iter()
            .map(|r| r.to_column())
            .collect();
        *out = Box::into_raw(Box::new(TaSemimodule(GeneratedSemimodule::new(n, gens)?)));
        Ok(())
    })
}

/// # Safety
/// `v` is null or was returned by [`ta_semimodule_new`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ta_semimodule_free(v: *mut TaSemimodule) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Greatest element of the semimodule below `x`, written to `out`.
///
/// # Safety
/// `v` is a live handle, `x` points to `n` readable doubles, `out` to `n` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ta_semimodule_project(
    v: *const TaSemimodule,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> TaStatus {
    guard(|| {
        let v = handle(v, "semimodule")?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_dim(v.0.dim(), n)?;
        let x = read_vector(x, n, "x")?;
        write_vector(&v.0.project(&x)?, out);
        Ok(())
    })
}

/// Distance from `x` to the semimodule.
///
/// # Safety
/// `v` is a live handle, `x` points to `n` readable doubles, `out` to one writable double.
#[no_mangle]
pub unsafe extern "C" fn ta_semimodule_distance(
    v: *const TaSemimodule,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> TaStatus {
    guard(|| {
        let v = handle(v, "semimodule")?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_dim(v.0.dim(), n)?;
        let x = read_vector(x, n, "x")?;
        *out = to_double(v.0.distance_to(&x)?);
        Ok(())
    })
}

/// Builds `A x >= B x` from two row-major `p x n` matrices.
///
/// # Safety
/// `a` and `b` point to `p * n` readable doubles, `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_system_new(
    a: *const f64,
    b: *const f64,
    p: usize,
    n: usize,
    out: *mut *mut TaSystem,
) -> TaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if n == 0 {
            return Err(Error::Empty.into());
        }
        let a = TropicalMatrix::from_rows(read_rows(a, p, n, "a")?, n)?;
        let b = TropicalMatrix::from_rows(read_rows(b, p, n, "b")?, n)?;
        *out = Box::into_raw(Box::new(TaSystem(InequalitySystem::new(a, b)?)));
        Ok(())
    })
}

/// # Safety
/// `s` is null or was returned by [`ta_system_new`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ta_system_free(s: *mut TaSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Greatest solution below `u`, written to `out`. `max_iterations` of 0
/// keeps the default cap. `iterations` may be null.
///
/// # Safety
/// `s` is a live handle, `u` points to `n` readable doubles, `out` to `n`
/// writable doubles, `iterations` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn ta_system_solve(
    s: *const TaSystem,
    method: TaMethod,
    u: *const f64,
    n: usize,
    max_iterations: usize,
    out: *mut f64,
    iterations: *mut usize,
) -> TaStatus {
    guard(|| {
        let s = handle(s, "system")?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_dim(s.0.ncols(), n)?;
        let u = read_vector(u, n, "u")?;
        let mut opts = SolveOptions::default();
        if max_iterations > 0 {
            opts.max_iterations = max_iterations;
        }
        let report = match method {
            TaMethod::Cyclic => cyclic_solve(&s.0, &u, &opts)?,
            TaMethod::Power => power_solve(&s.0, &u, &opts)?,
        };
        write_vector(&report.solution, out);
        if !iterations.is_null() {
            *iterations = report.iterations;
        }
        if report.status == SolveStatus::IterationCapHit {
            return Err(Error::IterationCap {
                iterations: report.iterations,
            }
            .into());
        }
        Ok(())
    })
}
