//! C ABI for perc-lab.
//!
//! Every fallible function returns a [`PlStatus`]; on failure the message is kept in a
//! thread-local slot readable with [`pl_last_error`]. Objects cross the boundary as
//! opaque handles that the caller releases with the matching `*_free`. Strings returned
//! through `char **` outputs are released with [`pl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use perc_lab::cli::{parse_config, run, CliError, RunOptions};
use perc_lab::explore::{eight_edge_instance, exact_merge};
use perc_lab::graph::{generate, parse_edge_list, GraphSpec};
use perc_lab::renorm::block_connection_prob;
use perc_lab::tail::{solve_v_n, tail_curves, PhiModel};
use perc_lab::{Error, FiniteGraph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    InvalidInput = 1,
    Precondition = 2,
    Budget = 3,
    Parse = 4,
    Io = 5,
    NullPointer = 6,
    Panic = 7,
}

/// Opaque graph handle.
pub struct PlGraph {
    inner: FiniteGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PlStatus {
    match e {
        Error::InvalidInput(_) => PlStatus::InvalidInput,
        Error::Precondition(_) => PlStatus::Precondition,
        Error::Budget(_) => PlStatus::Budget,
        Error::Parse(_) => PlStatus::Parse,
        Error::Io(_) => PlStatus::Io,
    }
}

enum Fail {
    Lib(Error),
    Cli(CliError),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status and the last-error slot.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Cli(e))) => {
            set_error(&e.to_string());
            match e {
                CliError::Experiment(inner) => status_of(&inner),
                CliError::Schema(_) => PlStatus::Parse,
                CliError::Replay(_) => PlStatus::Io,
            }
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            PlStatus::NullPointer
        }
        Err(_) => {
            set_error("internal panic");
            PlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Lib(Error::InvalidInput(format!("{what} is not UTF-8"))))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out_slice<'a, T>(p: *mut T, len: usize, what: &'static str) -> Result<&'a mut [T], Fail> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (truncated, always
/// NUL-terminated when `len > 0`). Returns the full message length, 0 if none.
///
/// # Safety
/// `buf` must point to `len` writable bytes or be null with `len == 0`.
#[no_mangle]
pub unsafe extern "C" fn pl_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if len > 0 && !buf.is_null() {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if len > 0 && !buf.is_null() {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn put_graph(g: FiniteGraph, out: *mut *mut PlGraph) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    unsafe { *out = Box::into_raw(Box::new(PlGraph { inner: g })) };
    Ok(())
}

/// Hypercubic box of side `side` in dimension `dim`.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_zd_box(dim: usize, side: usize, out: *mut *mut PlGraph) -> PlStatus {
    guard(|| put_graph(generate(&GraphSpec::ZdBox { dim, side })?, out))
}

/// Graph from edge-list text (same format as the CLI's `file` graphs).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_from_edge_list(text: *const c_char, out: *mut *mut PlGraph) -> PlStatus {
    guard(|| {
        let t = str_arg(text, "text")?;
        put_graph(parse_edge_list(t)?, out)
    })
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_free(g: *mut PlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_vertex_count(g: *const PlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_edge_count(g: *const PlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Volume and radius tails of the origin cluster truncated at `radius`. Writes
/// `vgrid_len` volume estimates and `rgrid_len` radius estimates.
///
/// # Safety
/// Grids and outputs must point to arrays of the given lengths.
#[no_mangle]
pub unsafe extern "C" fn pl_tail_curves(
    g: *const PlGraph,
    p: f64,
    vgrid: *const u64,
    vgrid_len: usize,
    rgrid: *const u64,
    rgrid_len: usize,
    radius: u32,
    samples: u64,
    seed: u64,
    out_volume: *mut f64,
    out_radius: *mut f64,
) -> PlStatus {
    guard(|| {
        let g = g.as_ref().ok_or(Fail::Null("graph"))?;
        let vg = slice_arg(vgrid, vgrid_len, "vgrid")?;
        let rg = slice_arg(rgrid, rgrid_len, "rgrid")?;
        let ov = out_slice(out_volume, vgrid_len, "out_volume")?;
        let or = out_slice(out_radius, rgrid_len, "out_radius")?;
        let (v, r) = tail_curves(&g.inner, p, vg, rg, radius, samples, seed)?;
        for (o, pt) in ov.iter_mut().zip(&v.points) {
            *o = pt.estimate;
        }
        for (o, pt) in or.iter_mut().zip(&r.points) {
            *o = pt.estimate;
        }
        Ok(())
    })
}

/// Exact merge probability and its bound `(1 - ε)^t` on the built-in eight-edge graph.
///
/// # Safety
/// Outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pl_exact_merge_eight_edge(p: f64, q: f64, t: usize, out_probability: *mut f64, out_bound: *mut f64) -> PlStatus {
    guard(|| {
        if out_probability.is_null() || out_bound.is_null() {
            return Err(Fail::Null("outputs"));
        }
        let (g, s, shell) = eight_edge_instance();
        let r = exact_merge(&g, &s, &shell, p, q, t)?;
        *out_probability = r.probability;
        *out_bound = r.bound;
        Ok(())
    })
}

/// `v_0..=v_{n_max}` for `Φ(t) = coef · t^exponent`; `out` holds `n_max + 1` values.
///
/// # Safety
/// `out` must point to `n_max + 1` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pl_solve_v_n_power(
    size_s: usize,
    c: f64,
    coef: f64,
    exponent: f64,
    n_max: usize,
    degree: usize,
    out: *mut f64,
) -> PlStatus {
    guard(|| {
        let o = out_slice(out, n_max + 1, "out")?;
        let s = solve_v_n(size_s, c, &PhiModel::Power { coef, exponent }, n_max, degree)?;
        o.copy_from_slice(&s.v);
        Ok(())
    })
}

/// Frequency of `B_k ↔ B_k(n)` inside `B_{Cn}` in `ℤ^d`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_block_connection_prob(p: f64, k: u32, n: u32, c: u32, d: usize, samples: u64, seed: u64, out: *mut f64) -> PlStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        *out = block_connection_prob(p, k, n, c, d, samples, seed)?.estimate;
        Ok(())
    })
}

/// Runs a TOML experiment config, writing outputs to `out_dir`. On success
/// `*out_manifest` receives the manifest as JSON (free with [`pl_string_free`]).
///
/// # Safety
/// `config` and `out_dir` must be NUL-terminated strings; `out_manifest` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_run_config(config: *const c_char, out_dir: *const c_char, seed: u64, out_manifest: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let text = str_arg(config, "config")?;
        let dir = str_arg(out_dir, "out_dir")?;
        if out_manifest.is_null() {
            return Err(Fail::Null("out_manifest"));
        }
        let cfg = parse_config(text).map_err(Fail::Cli)?;
        let opts = RunOptions { seed: Some(seed), out: Some(PathBuf::from(dir)), ..Default::default() };
        let m = run(cfg, &opts).map_err(Fail::Cli)?;
        let json = serde_json::to_string(&m).expect("manifest serializes");
        *out_manifest = CString::new(json).expect("json has no nul").into_raw();
        Ok(())
    })
}
