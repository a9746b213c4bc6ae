//! C interface to `fraclap`.
//!
//! Every function returns a [`FraclapStatus`]; on failure the message is
//! available from [`fraclap_last_error`] on the same thread. Handles are
//! opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use fraclap::basis::{eigenvalue, ProblemParams};
use fraclap::diffusion::{self, DiffusionState, DiffusionSystem};
use fraclap::operators::{apply_fractional_laplacian, solve_poisson};
use fraclap::quadrature::build_radial_rule;
use fraclap::transform::{Direction, EvalGrid};
use fraclap::{Error, QuadratureRule};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FraclapStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Index = 3,
    Dimension = 4,
    NoConvergence = 5,
    Singular = 6,
    RuleSize = 7,
    NonFinite = 8,
    Kind = 9,
    Shape = 10,
    Config = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

impl From<&Error> for FraclapStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => Self::Domain,
            Error::Index(_) => Self::Index,
            Error::Dimension(_) => Self::Dimension,
            Error::NoConvergence { .. } => Self::NoConvergence,
            Error::Singular { .. } => Self::Singular,
            Error::RuleSize { .. } => Self::RuleSize,
            Error::NonFinite { .. } => Self::NonFinite,
            Error::Kind { .. } => Self::Kind,
            Error::Shape(..) => Self::Shape,
            Error::Config(_) => Self::Config,
        }
    }
}

/// Opaque radial quadrature rule.
pub struct FraclapQuadrature(QuadratureRule);

/// Opaque assembled diffusion system.
pub struct FraclapDiffusion(DiffusionSystem);

/// Scalar field callback: `x` points at `dim` coordinates.
pub type FraclapField = Option<unsafe extern "C" fn(x: *const f64, dim: usize, user: *mut c_void) -> f64>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Null(&'static str),
    Buffer(usize, usize),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> FraclapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FraclapStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            FraclapStatus::NullPointer
        }
        Ok(Err(Failure::Buffer(need, got))) => {
            set_error(&format!("buffer holds {got} values, {need} required"));
            FraclapStatus::BufferTooSmall
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(&e.to_string());
            FraclapStatus::from(&e)
        }
        Err(_) => {
            set_error("internal panic");
            FraclapStatus::Panic
        }
    }
}

unsafe fn input<'a>(p: *const f64, len: usize, what: &'static str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a>(p: *mut f64, len: usize, what: &'static str) -> Result<&'a mut [f64], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

fn copy_into(src: &[f64], dst: &mut [f64]) -> Result<(), Failure> {
    if dst.len() < src.len() {
        return Err(Failure::Buffer(src.len(), dst.len()));
    }
    dst[..src.len()].copy_from_slice(src);
    Ok(())
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fraclap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Eigenvalue `d_{n,l}` of the weighted basis.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fraclap_eigenvalue(
    alpha: f64,
    dim: usize,
    n: usize,
    l: usize,
    out: *mut f64,
) -> FraclapStatus {
    guard(|| {
        let out = output(out, 1, "out")?;
        out[0] = eigenvalue(&ProblemParams::new(alpha, dim)?, n, l);
        Ok(())
    })
}

/// Builds a `k`-point Gauss rule for `(1-r²)^{α/2}` on `[0,1]`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fraclap_quadrature_new(
    alpha: f64,
    k: usize,
    fine_n: usize,
    out: *mut *mut FraclapQuadrature,
) -> FraclapStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let rule = build_radial_rule(alpha, k, fine_n)?;
        *out = Box::into_raw(Box::new(FraclapQuadrature(rule)));
        Ok(())
    })
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fraclap_quadrature_len(q: *const FraclapQuadrature) -> usize {
    q.as_ref().map_or(0, |q| q.0.len())
}

/// Copies nodes and weights into buffers of length `cap` each.
///
/// # Safety
/// `q` must be a live handle; `nodes` and `weights` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn fraclap_quadrature_copy(
    q: *const FraclapQuadrature,
    nodes: *mut f64,
    weights: *mut f64,
    cap: usize,
) -> FraclapStatus {
    guard(|| {
        let q = q.as_ref().ok_or(Failure::Null("q"))?;
        copy_into(&q.0.nodes, output(nodes, cap, "nodes")?)?;
        copy_into(&q.0.weights, output(weights, cap, "weights")?)?;
        Ok(())
    })
}

/// # Safety
/// `q` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fraclap_quadrature_free(q: *mut FraclapQuadrature) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

unsafe fn grid_from(
    dim: usize,
    radii: *const f64,
    n_radii: usize,
    angles: *const f64,
    n_dirs: usize,
) -> Result<EvalGrid, Failure> {
    let radii = input(radii, n_radii, "radii")?.to_vec();
    let angles = input(angles, 2 * n_dirs, "angles")?;
    let dirs = angles.chunks(2).map(|a| Direction { theta: a[0], phi: a[1] }).collect();
    Ok(EvalGrid::new(dim, radii, dirs)?)
}

type Operator = fn(ProblemParams, &dyn Fn(&[f64]) -> f64, usize, usize, &EvalGrid) -> fraclap::Result<Vec<f64>>;

#[allow(clippy::too_many_arguments)]
unsafe fn run_operator(
    op: Operator,
    alpha: f64,
    dim: usize,
    n_max: usize,
    l_max: usize,
    field: FraclapField,
    user: *mut c_void,
    radii: *const f64,
    n_radii: usize,
    angles: *const f64,
    n_dirs: usize,
    out: *mut f64,
) -> FraclapStatus {
    guard(|| {
        let cb = field.ok_or(Failure::Null("field"))?;
        let params = ProblemParams::new(alpha, dim)?;
        let grid = grid_from(dim, radii, n_radii, angles, n_dirs)?;
        let out = output(out, grid.len(), "out")?;
        let f = |x: &[f64]| cb(x.as_ptr(), x.len(), user);
        let values = op(params, &f, n_max, l_max, &grid)?;
        copy_into(&values, out)
    })
}

/// Evaluates `(-Δ)^{α/2} u` on a tensor grid from the degree-`(n_max,
/// l_max)` expansion of `u`. `angles` holds `(theta, phi)` per direction
/// (`phi` is ignored in 2D); `out` receives `n_radii * n_dirs` values,
/// radius-major.
///
/// # Safety
/// Pointers must be valid for the stated lengths; `field` must be safe to call
/// with `user` at points inside the unit ball.
#[no_mangle]
pub unsafe extern "C" fn fraclap_apply(
    alpha: f64,
    dim: usize,
    n_max: usize,
    l_max: usize,
    u: FraclapField,
    user: *mut c_void,
    radii: *const f64,
    n_radii: usize,
    angles: *const f64,
    n_dirs: usize,
    out: *mut f64,
) -> FraclapStatus {
    run_operator(
        |p, f, n, l, g| apply_fractional_laplacian(p, f, n, l, g),
        alpha,
        dim,
        n_max,
        l_max,
        u,
        user,
        radii,
        n_radii,
        angles,
        n_dirs,
        out,
    )
}

/// Solves `(-Δ)^{α/2} u = f` in the unit ball, `u = 0` outside. Grid and
/// output layout as in [`fraclap_apply`].
///
/// # Safety
/// As for [`fraclap_apply`].
#[no_mangle]
pub unsafe extern "C" fn fraclap_solve(
    alpha: f64,
    dim: usize,
    n_max: usize,
    l_max: usize,
    f: FraclapField,
    user: *mut c_void,
    radii: *const f64,
    n_radii: usize,
    angles: *const f64,
    n_dirs: usize,
    out: *mut f64,
) -> FraclapStatus {
    run_operator(
        |p, f, n, l, g| solve_poisson(p, f, n, l, g),
        alpha,
        dim,
        n_max,
        l_max,
        f,
        user,
        radii,
        n_radii,
        angles,
        n_dirs,
        out,
    )
}

/// Assembles the implicit Euler system for the radial 3D heat equation
/// with `n_modes` modes and step `dt`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fraclap_diffusion_new(
    alpha: f64,
    n_modes: usize,
    dt: f64,
    out: *mut *mut FraclapDiffusion,
) -> FraclapStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let sys = diffusion::assemble(ProblemParams::new(alpha, 3)?, n_modes, dt)?;
        *out = Box::into_raw(Box::new(FraclapDiffusion(sys)));
        Ok(())
    })
}

/// Coefficients of the initial condition `(1-r²)^{α/2}`, `n_modes` values.
///
/// # Safety
/// `s` must be a live handle and `c` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn fraclap_diffusion_initial(
    s: *const FraclapDiffusion,
    c: *mut f64,
    len: usize,
) -> FraclapStatus {
    guard(|| {
        let sys = &s.as_ref().ok_or(Failure::Null("s"))?.0;
        let params = *sys.params();
        let state = diffusion::init_state(params, sys.n_modes(), diffusion::weight_initial(params))?;
        copy_into(&state.c, output(c, len, "c")?)
    })
}

/// Advances the coefficients in `c` (length `n_modes`) by `steps` steps.
///
/// # Safety
/// `s` must be a live handle and `c` valid for `len` reads and writes.
#[no_mangle]
pub unsafe extern "C" fn fraclap_diffusion_step(
    s: *const FraclapDiffusion,
    c: *mut f64,
    len: usize,
    steps: usize,
) -> FraclapStatus {
    guard(|| {
        let sys = &s.as_ref().ok_or(Failure::Null("s"))?.0;
        let c = output(c, len, "c")?;
        let mut state = DiffusionState { c: c.to_vec(), t: 0.0 };
        for _ in 0..steps {
            state = diffusion::step(sys, &state)?;
        }
        c.copy_from_slice(&state.c);
        Ok(())
    })
}

/// Evaluates `u(r)` for coefficients `c` at `n_radii` radii.
///
/// # Safety
/// `s` must be a live handle; pointers valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn fraclap_diffusion_profile(
    s: *const FraclapDiffusion,
    c: *const f64,
    len: usize,
    radii: *const f64,
    n_radii: usize,
    out: *mut f64,
) -> FraclapStatus {
    guard(|| {
        let sys = &s.as_ref().ok_or(Failure::Null("s"))?.0;
        let state = DiffusionState { c: input(c, len, "c")?.to_vec(), t: 0.0 };
        let u = diffusion::profile(*sys.params(), &state, input(radii, n_radii, "radii")?)?;
        copy_into(&u, output(out, n_radii, "out")?)
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fraclap_diffusion_free(s: *mut FraclapDiffusion) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
