//! C ABI over `reflap`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` / `*_parse`
//! / solver calls and released with the matching `*_free`. Every fallible
//! call returns a [`ReflapStatus`]; on failure the message is available from
//! [`reflap_last_error`] on the same thread until the next call. Strings
//! returned through `char **` are owned by the caller and released with
//! [`reflap_string_free`]. Panics are caught and reported as
//! `REFLAP_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_rational::BigRational;
use reflap::cli::{emit_problem, parse_problem, run, ProblemSpec, RunOptions, SolverMode};
use reflap::grid::{green_apply, sample, GridFunction, KernelSpec, DEFAULT_TAIL_CUT};
use reflap::nonlinear::{picard_solve, PicardConfig};
use reflap::spectral::{bounded_solution, classify, EquationParams, SpectralData};
use reflap::trigpoly::{FrequencyBasis, TrigPoly};
use reflap::verify::residual_spectral;
use reflap::Error;

/// Outcome of a call. Values 0–6 match the `reflap` exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflapStatus {
    Ok = 0,
    Io = 1,
    Resonance = 2,
    NonContractive = 3,
    Unsupported = 4,
    InvalidInput = 5,
    VerificationMismatch = 6,
    NullPointer = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflapRegime {
    Hyperbolic = 0,
    Oscillatory = 1,
    Mixed = 2,
    Degenerate = 3,
}

/// Trigonometric polynomial over a fixed frequency basis.
pub struct ReflapPoly {
    inner: TrigPoly,
}

/// Parsed problem file.
pub struct ReflapProblem {
    inner: ProblemSpec,
}

/// Samples on the symmetric grid `t_j = (j − N)·h`, `j = 0..2N`.
pub struct ReflapGrid {
    inner: GridFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> ReflapStatus {
    match reflap::cli::exit_code(err) {
        0 => ReflapStatus::Ok,
        1 => ReflapStatus::Io,
        2 => ReflapStatus::Resonance,
        3 => ReflapStatus::NonContractive,
        4 => ReflapStatus::Unsupported,
        6 => ReflapStatus::VerificationMismatch,
        _ => ReflapStatus::InvalidInput,
    }
}

struct Null;

enum Failure {
    Null,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<Null> for Failure {
    fn from(_: Null) -> Self {
        Failure::Null
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ReflapStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ReflapStatus::Ok,
        Ok(Err(Failure::Null)) => {
            set_error("null pointer argument");
            ReflapStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            ReflapStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Null> {
    p.as_ref().ok_or(Null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Null> {
    p.as_mut().ok_or(Null)
}

unsafe fn slice<'a, T>(p: *const T, n: usize) -> Result<&'a [T], Null> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Null);
    }
    Ok(std::slice::from_raw_parts(p, n))
}

fn params(a: f64, b: f64) -> Result<EquationParams, Error> {
    EquationParams::new(a, b)
}

fn to_c_string(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn reflap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn reflap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn reflap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Regime of `(a, b)` and its two rates: `(α, β)` when hyperbolic, `(μ, ν)`
/// when oscillatory, `(real, imaginary)` rates when mixed, zeros otherwise.
///
/// # Safety
/// Output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_classify(
    a: f64,
    b: f64,
    regime: *mut ReflapRegime,
    rate1: *mut f64,
    rate2: *mut f64,
) -> ReflapStatus {
    guard(|| {
        let (regime, rate1, rate2) = (out(regime)?, out(rate1)?, out(rate2)?);
        let (r, x, y) = match classify(&params(a, b)?) {
            SpectralData::Hyperbolic { alpha, beta } => (ReflapRegime::Hyperbolic, alpha, beta),
            SpectralData::Oscillatory { mu, nu } => (ReflapRegime::Oscillatory, mu, nu),
            SpectralData::Mixed { real_rate, imag_rate } => (ReflapRegime::Mixed, real_rate, imag_rate),
            SpectralData::Degenerate => (ReflapRegime::Degenerate, 0.0, 0.0),
        };
        *regime = r;
        *rate1 = x;
        *rate2 = y;
        Ok(())
    })
}

/// Zero polynomial over `n` positive basis generators.
///
/// # Safety
/// `generators` must point to `n` doubles; `poly_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_poly_new(generators: *const f64, n: usize, poly_out: *mut *mut ReflapPoly) -> ReflapStatus {
    guard(|| {
        let dst = out(poly_out)?;
        let basis = FrequencyBasis::new(slice(generators, n)?.to_vec())?;
        *dst = Box::into_raw(Box::new(ReflapPoly {
            inner: TrigPoly::zero(basis),
        }));
        Ok(())
    })
}

/// Adds `cos_coeff·cos(λt) + sin_coeff·sin(λt)` with
/// `λ = Σ (numer[i]/denom[i])·generator[i]`; `n` must equal the basis size.
///
/// # Safety
/// `poly` must be a live handle; `numer` and `denom` must point to `n` values.
#[no_mangle]
pub unsafe extern "C" fn reflap_poly_add_term(
    poly: *mut ReflapPoly,
    numer: *const i64,
    denom: *const i64,
    n: usize,
    cos_coeff: f64,
    sin_coeff: f64,
) -> ReflapStatus {
    guard(|| {
        let p = out(poly)?;
        let (nu, de) = (slice(numer, n)?, slice(denom, n)?);
        let mut coords = Vec::with_capacity(n);
        for (&x, &y) in nu.iter().zip(de) {
            if y == 0 {
                return Err(Error::InvalidArgument("zero denominator".into()).into());
            }
            coords.push(BigRational::new(BigInt::from(x), BigInt::from(y)));
        }
        p.inner.add_term(coords, cos_coeff, sin_coeff)?;
        Ok(())
    })
}

/// # Safety
/// `poly` must be a live handle and `value` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_poly_eval(poly: *const ReflapPoly, t: f64, value: *mut f64) -> ReflapStatus {
    guard(|| {
        *out(value)? = deref(poly)?.inner.evaluate(t);
        Ok(())
    })
}

/// Number of stored frequencies; 0 for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reflap_poly_len(poly: *const ReflapPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.inner.len())
}

/// Frequency value and coefficients of the `index`-th stored term, in
/// canonical (ascending coordinate) order.
///
/// # Safety
/// `poly` must be a live handle; outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_poly_term(
    poly: *const ReflapPoly,
    index: usize,
    frequency: *mut f64,
    cos_coeff: *mut f64,
    sin_coeff: *mut f64,
) -> ReflapStatus {
    guard(|| {
        let p = deref(poly)?;
        let (f, c) = p
            .inner
            .terms()
            .nth(index)
            .ok_or_else(|| Error::InvalidArgument(format!("term index {index} out of range")))?;
        *out(frequency)? = f.value();
        *out(cos_coeff)? = c.cos;
        *out(sin_coeff)? = c.sin;
        Ok(())
    })
}

/// # Safety
/// `poly` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn reflap_poly_free(poly: *mut ReflapPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Bounded solution of `ẍ + a·x + b·x(−t) = g` in closed form.
///
/// # Safety
/// `g` must be a live handle; `x_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_bounded_solution(
    a: f64,
    b: f64,
    g: *const ReflapPoly,
    resonance_tol: f64,
    x_out: *mut *mut ReflapPoly,
) -> ReflapStatus {
    guard(|| {
        let (g, dst) = (deref(g)?, out(x_out)?);
        let x = bounded_solution(&params(a, b)?, &g.inner, resonance_tol)?;
        *dst = Box::into_raw(Box::new(ReflapPoly { inner: x }));
        Ok(())
    })
}

/// Coefficient sum of `ẍ + a·x + b·x(−t) − g`.
///
/// # Safety
/// `x` and `g` must be live handles; `residual` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_residual(
    a: f64,
    b: f64,
    x: *const ReflapPoly,
    g: *const ReflapPoly,
    residual: *mut f64,
) -> ReflapStatus {
    guard(|| {
        *out(residual)? = residual_spectral(&params(a, b)?, &deref(x)?.inner, &deref(g)?.inner)?;
        Ok(())
    })
}

/// Parses a problem file held in a NUL-terminated UTF-8 string.
///
/// # Safety
/// `text` must be a valid C string; `problem_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_problem_parse(text: *const c_char, problem_out: *mut *mut ReflapProblem) -> ReflapStatus {
    guard(|| {
        let dst = out(problem_out)?;
        if text.is_null() {
            return Err(Null.into());
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Error::Semantic("problem text is not UTF-8".into()))?;
        *dst = Box::into_raw(Box::new(ReflapProblem {
            inner: parse_problem(text)?,
        }));
        Ok(())
    })
}

/// Canonical text of the problem.
///
/// # Safety
/// `problem` must be a live handle; `text_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_problem_emit(problem: *const ReflapProblem, text_out: *mut *mut c_char) -> ReflapStatus {
    guard(|| {
        let dst = out(text_out)?;
        *dst = to_c_string(&emit_problem(&deref(problem)?.inner));
        Ok(())
    })
}

/// Copy of the problem's forcing.
///
/// # Safety
/// `problem` must be a live handle; `poly_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_problem_forcing(problem: *const ReflapProblem, poly_out: *mut *mut ReflapPoly) -> ReflapStatus {
    guard(|| {
        let dst = out(poly_out)?;
        *dst = Box::into_raw(Box::new(ReflapPoly {
            inner: deref(problem)?.inner.forcing.clone(),
        }));
        Ok(())
    })
}

/// Solves and verifies the problem as the command line does and returns
/// the `key = value` report. A verification mismatch still fills
/// `report_out` and returns `REFLAP_STATUS_VERIFICATION_MISMATCH`.
/// `tail_cut ≤ 0` selects the default.
///
/// # Safety
/// `problem` must be a live handle; `report_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_problem_run(
    problem: *const ReflapProblem,
    tail_cut: f64,
    report_out: *mut *mut c_char,
) -> ReflapStatus {
    guard(|| {
        let (p, dst) = (deref(problem)?, out(report_out)?);
        let tail_cut = if tail_cut > 0.0 { tail_cut } else { DEFAULT_TAIL_CUT };
        let outcome = run(&p.inner, &RunOptions { tail_cut, csv: false })?;
        *dst = to_c_string(&outcome.report.render());
        if outcome.verified {
            Ok(())
        } else {
            Err(Error::Verification("oracle disagreement, see report".into()).into())
        }
    })
}

/// Solution samples on the problem's grid: the closed form sampled (mode
/// spectral), the Green quadrature (mode grid), or the Picard fixed point
/// (mode picard). `tail_cut ≤ 0` selects the default.
///
/// # Safety
/// `problem` must be a live handle; `grid_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_problem_solve_grid(
    problem: *const ReflapProblem,
    tail_cut: f64,
    grid_out: *mut *mut ReflapGrid,
) -> ReflapStatus {
    guard(|| {
        let (p, dst) = (&deref(problem)?.inner, out(grid_out)?);
        let tail_cut = if tail_cut > 0.0 { tail_cut } else { DEFAULT_TAIL_CUT };
        let (t, h) = (p.solver.halfwidth, p.solver.step);
        let x = match p.solver.mode {
            SolverMode::Spectral => sample(&bounded_solution(&p.params, &p.forcing, p.solver.resonance_tol)?, t, h)?,
            SolverMode::Grid => green_apply(&KernelSpec::new(&p.params, tail_cut)?, &sample(&p.forcing, t, h)?)?.x,
            SolverMode::Picard => {
                let nl = p
                    .nonlinearity
                    .as_ref()
                    .ok_or_else(|| Error::Semantic("mode = picard requires a [nonlinearity] section".into()))?;
                let cfg = PicardConfig {
                    tol: p.solver.tol,
                    max_iter: p.solver.max_iter,
                    halfwidth: t,
                    step: h,
                    tail_cut,
                };
                picard_solve(&p.params, nl, &cfg)?.0
            }
        };
        *dst = Box::into_raw(Box::new(ReflapGrid { inner: x }));
        Ok(())
    })
}

/// # Safety
/// `problem` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn reflap_problem_free(problem: *mut ReflapProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Number of nodes `2N + 1`; 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reflap_grid_len(grid: *const ReflapGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.inner.len())
}

/// Half-width `T` and step `h`.
///
/// # Safety
/// `grid` must be a live handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reflap_grid_shape(grid: *const ReflapGrid, halfwidth: *mut f64, step: *mut f64) -> ReflapStatus {
    guard(|| {
        let g = deref(grid)?;
        *out(halfwidth)? = g.inner.halfwidth();
        *out(step)? = g.inner.step();
        Ok(())
    })
}

/// Borrowed pointer to the samples, valid while the handle lives; null for
/// a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reflap_grid_samples(grid: *const ReflapGrid) -> *const f64 {
    grid.as_ref().map_or(ptr::null(), |g| g.inner.samples().as_ptr())
}

/// # Safety
/// `grid` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn reflap_grid_free(grid: *mut ReflapGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}
