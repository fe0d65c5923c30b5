//! C ABI over the `judicious` crate.
//!
//! Objects cross the boundary as opaque handles created by `jd_*_new`-style
//! functions and released by the matching `jd_*_free`. Every fallible call
//! returns a [`JdStatus`]; on failure [`jd_last_error`] describes the cause
//! for the calling thread. Panics are caught and reported as
//! [`JdStatus::Panic`]. The header is `include/judicious.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use judicious::exact::Rational;
use judicious::hypergraph::{gen_complete, gen_pair_core, gen_random, parse_hypergraph};
use judicious::verify::{full_report, CertificationReport, ReportOptions};
use judicious::{partition, Hypergraph, PartitionConfig, PartitionOutcome, PipelineError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// The pipeline or the verifier reported an error.
    Failed = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque hypergraph handle.
pub struct JdHypergraph(Hypergraph);

/// Opaque result of a partitioning run.
pub struct JdPartition(PartitionOutcome);

/// Opaque certification report.
pub struct JdReport(CertificationReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl ToString) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn guard(f: impl FnOnce() -> Result<(), (JdStatus, String)>) -> JdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            JdStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside judicious");
            JdStatus::Panic
        }
    }
}

fn null() -> (JdStatus, String) {
    (JdStatus::NullPointer, "null pointer argument".into())
}

unsafe fn out_handle<T>(out: *mut *mut T, value: T) -> Result<(), (JdStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, (JdStatus, String)> {
    h.as_ref().ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (JdStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = value;
    Ok(())
}

/// Message for the last failed call on this thread. Valid until the next
/// call on the same thread; never null.
#[no_mangle]
pub extern "C" fn jd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn jd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the `n m` / `u v w` text format.
///
/// # Safety
/// `text` must be a NUL-terminated UTF-8 string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jd_hypergraph_parse(text: *const c_char, out: *mut *mut JdHypergraph) -> JdStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (JdStatus::Parse, e.to_string()))?;
        let h = parse_hypergraph(text).map_err(|e| (JdStatus::Parse, e.to_string()))?;
        out_handle(out, JdHypergraph(h))
    })
}

/// Builds a hypergraph from `m` triples stored contiguously in `edges`.
///
/// # Safety
/// `edges` must point to `3 * m` readable values (or be null when `m` is 0).
#[no_mangle]
pub unsafe extern "C" fn jd_hypergraph_new(
    n: usize,
    edges: *const u32,
    m: usize,
    out: *mut *mut JdHypergraph,
) -> JdStatus {
    guard(|| {
        let flat: &[u32] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(edges, 3 * m)
        };
        let edges = flat
            .chunks_exact(3)
            .map(|e| [e[0] as usize, e[1] as usize, e[2] as usize])
            .collect();
        let h = Hypergraph::new(n, edges).map_err(|e| (JdStatus::InvalidArgument, e.to_string()))?;
        out_handle(out, JdHypergraph(h))
    })
}

/// All triples on `n` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jd_hypergraph_complete(n: usize, out: *mut *mut JdHypergraph) -> JdStatus {
    guard(|| {
        let h = gen_complete(n).map_err(|e| (JdStatus::InvalidArgument, e.to_string()))?;
        out_handle(out, JdHypergraph(h))
    })
}

/// `k` edges `{0, 1, v}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jd_hypergraph_pair_core(k: usize, out: *mut *mut JdHypergraph) -> JdStatus {
    guard(|| {
        let h = gen_pair_core(k).map_err(|e| (JdStatus::InvalidArgument, e.to_string()))?;
        out_handle(out, JdHypergraph(h))
    })
}

/// `m` distinct random triples on `n` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jd_hypergraph_random(
    n: usize,
    m: usize,
    seed: u64,
    out: *mut *mut JdHypergraph,
) -> JdStatus {
    guard(|| {
        let h = gen_random(n, m, seed).map_err(|e| (JdStatus::InvalidArgument, e.to_string()))?;
        out_handle(out, JdHypergraph(h))
    })
}

/// Vertex and edge counts.
///
/// # Safety
/// `h` must be a live handle; `n` and `m` writable.
#[no_mangle]
pub unsafe extern "C" fn jd_hypergraph_size(h: *const JdHypergraph, n: *mut usize, m: *mut usize) -> JdStatus {
    guard(|| {
        let h = handle(h)?;
        write_out(n, h.0.n())?;
        write_out(m, h.0.m())
    })
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jd_hypergraph_free(h: *mut JdHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Runs the full pipeline. Pass `alpha <= 0` for the default 2/7.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jd_partition(
    h: *const JdHypergraph,
    alpha: f64,
    trials: u64,
    seed: u64,
    out: *mut *mut JdPartition,
) -> JdStatus {
    guard(|| {
        let h = handle(h)?;
        let mut config = PartitionConfig {
            trials,
            seed,
            ..PartitionConfig::default()
        };
        if alpha > 0.0 {
            config.alpha = alpha;
        }
        let outcome = partition(&h.0, &config).map_err(|e| {
            let status = match e {
                PipelineError::Split(_) | PipelineError::NoTrials => JdStatus::InvalidArgument,
                _ => JdStatus::Failed,
            };
            (status, e.to_string())
        })?;
        out_handle(out, JdPartition(outcome))
    })
}

/// Edges met by each part, written to `coverage[0..3]`.
///
/// # Safety
/// `p` must be a live handle and `coverage` point to 3 writable values.
#[no_mangle]
pub unsafe extern "C" fn jd_partition_coverage(p: *const JdPartition, coverage: *mut u64) -> JdStatus {
    guard(|| {
        let p = handle(p)?;
        if coverage.is_null() {
            return Err(null());
        }
        std::slice::from_raw_parts_mut(coverage, 3).copy_from_slice(&p.0.coverage());
        Ok(())
    })
}

/// Per-part probabilities for low vertices: `place[i]` of landing in part
/// `i` and `miss[i] = 1 - place[i]`. Either pointer may be null.
///
/// # Safety
/// `p` must be a live handle; non-null `place` and `miss` must point to 3
/// writable values.
#[no_mangle]
pub unsafe extern "C" fn jd_partition_probabilities(
    p: *const JdPartition,
    place: *mut f64,
    miss: *mut f64,
) -> JdStatus {
    guard(|| {
        let p = handle(p)?;
        if !place.is_null() {
            std::slice::from_raw_parts_mut(place, 3).copy_from_slice(&p.0.q.p());
        }
        if !miss.is_null() {
            std::slice::from_raw_parts_mut(miss, 3).copy_from_slice(&p.0.q.q);
        }
        Ok(())
    })
}

/// Copies the part (0, 1 or 2) of every vertex into `parts`. With `len`
/// smaller than the vertex count nothing is written and the required length
/// is stored in `needed`.
///
/// # Safety
/// `p` must be a live handle, `parts` must hold `len` values and `needed`
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn jd_partition_assignment(
    p: *const JdPartition,
    parts: *mut u8,
    len: usize,
    needed: *mut usize,
) -> JdStatus {
    guard(|| {
        let p = handle(p)?;
        let assignment = p.0.assignment();
        write_out(needed, assignment.len())?;
        if len < assignment.len() {
            return Err((JdStatus::BufferTooSmall, format!("need {} entries", assignment.len())));
        }
        if assignment.is_empty() {
            return Ok(());
        }
        if parts.is_null() {
            return Err(null());
        }
        let dst = std::slice::from_raw_parts_mut(parts, assignment.len());
        for (d, &s) in dst.iter_mut().zip(assignment) {
            *d = s as u8;
        }
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jd_partition_free(p: *mut JdPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Certifies every tabulated case. `epsilon_den == 0` keeps the tabulated
/// box sides; otherwise every case uses `epsilon_num / epsilon_den`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jd_verify(epsilon_num: i64, epsilon_den: i64, out: *mut *mut JdReport) -> JdStatus {
    guard(|| {
        let epsilon = if epsilon_den == 0 {
            None
        } else {
            let e = Rational::new(epsilon_num.into(), epsilon_den.into());
            if e <= Rational::from_integer(0) {
                return Err((JdStatus::InvalidArgument, "epsilon must be positive".into()));
            }
            Some(e)
        };
        let options = ReportOptions {
            epsilon,
            displayed: false,
            ..ReportOptions::default()
        };
        let report = full_report(&options).map_err(|e| (JdStatus::Failed, e.to_string()))?;
        out_handle(out, JdReport(report))
    })
}

/// Whether every computed case is certified, and the smallest bound.
///
/// # Safety
/// `r` must be a live handle; `certified` and `min_bound` writable.
#[no_mangle]
pub unsafe extern "C" fn jd_report_summary(
    r: *const JdReport,
    certified: *mut bool,
    computed_cases: *mut usize,
    min_bound: *mut f64,
) -> JdStatus {
    guard(|| {
        let r = handle(r)?;
        write_out(certified, r.0.all_certified())?;
        write_out(computed_cases, r.0.computed().count())?;
        write_out(min_bound, r.0.min_bound().unwrap_or(f64::INFINITY))
    })
}

/// CSV rendering of the report; release with [`jd_string_free`].
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jd_report_csv(r: *const JdReport, out: *mut *mut c_char) -> JdStatus {
    guard(|| {
        let r = handle(r)?;
        let csv = CString::new(r.0.to_csv()).map_err(|e| (JdStatus::Failed, e.to_string()))?;
        write_out(out, csv.into_raw())
    })
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jd_report_free(r: *mut JdReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

