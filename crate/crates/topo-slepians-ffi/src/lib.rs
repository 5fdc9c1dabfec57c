//! C ABI over the topo-slepians core.
//!
//! Conventions:
//! - Every fallible function returns a [`TsStatus`]; `TS_STATUS_OK` is zero.
//! - On failure, a thread-local message is set and can be read with
//!   [`ts_last_error_message`]. The pointer stays valid until the next
//!   failing call on the same thread.
//! - Objects are returned as opaque handles and must be released with the
//!   matching `*_free` function exactly once. Passing null to a `*_free`
//!   function is a no-op.
//! - Output parameters marked optional may be null to skip that value.
//! - Buffers are caller-allocated; functions check the provided capacity and
//!   fail with `TS_STATUS_BUFFER_TOO_SMALL` instead of truncating.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use topo_slepians::complex::SimplicialComplex;
use topo_slepians::dictionary::{
    build_dictionary, concentration_sets, empirical_frame_check, frame_certificate,
    SlepianDictionary,
};
use topo_slepians::sparse::{omp_error, omp_sparsity, SparseCode};
use topo_slepians::spectral::{hodge_spectrum, EdgeSignal, HodgeSpectrum};
use topo_slepians::synth::{add_noise, field_flow, hex_complex, Extent, FieldSpec, Quadrature};
use topo_slepians::Error;

/// Result of an FFI call. Zero means success; anything else is an error and
/// [`ts_last_error_message`] carries the details.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Rejected input: bad indices, malformed simplices, empty sets, zero
    /// signals, or out-of-range parameters.
    InvalidInput = 2,
    /// Two arguments that must agree in size do not.
    DimensionMismatch = 3,
    /// An eigensolve, spectral partition, frame certificate, or pursuit
    /// failed numerically.
    NumericalFailure = 4,
    /// The caller-provided buffer is smaller than the required length.
    BufferTooSmall = 5,
    /// The callee panicked; the library state is still consistent but the
    /// call produced nothing.
    InternalPanic = 6,
}

/// Simplicial complex handle.
pub struct TsComplex {
    inner: SimplicialComplex,
}

/// Edge-space spectrum handle: eigenpairs split into gradient, solenoidal,
/// and harmonic groups.
pub struct TsSpectrum {
    inner: HodgeSpectrum,
}

/// Dictionary handle: concentrated atoms plus the harmonic basis.
pub struct TsDictionary {
    inner: SlepianDictionary,
}

/// Dense vector handle used for flows and noisy signals.
pub struct TsVector {
    inner: EdgeSignal,
}

/// Sparse representation handle produced by the pursuit routines.
pub struct TsSparseCode {
    inner: SparseCode,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: String) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> TsStatus {
    match err {
        Error::DimensionMismatch { .. } => TsStatus::DimensionMismatch,
        Error::EigenFailure
        | Error::PartitionMismatch { .. }
        | Error::NoProgress { .. }
        | Error::DegenerateFrame { .. } => TsStatus::NumericalFailure,
        _ => TsStatus::InvalidInput,
    }
}

fn fail(err: Error) -> TsStatus {
    let status = status_of(&err);
    set_error(format!("{}: {err}", err.code()));
    status
}

fn fail_null(what: &str) -> TsStatus {
    set_error(format!("NULL_POINTER: {what} must not be null"));
    TsStatus::NullPointer
}

fn fail_buffer(what: &str, needed: usize, got: usize) -> TsStatus {
    set_error(format!(
        "BUFFER_TOO_SMALL: {what} needs capacity {needed}, got {got}"
    ));
    TsStatus::BufferTooSmall
}

/// Runs the body, converting panics into a status instead of unwinding
/// across the C boundary.
fn guard(f: impl FnOnce() -> TsStatus) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("INTERNAL_PANIC: call aborted".to_string());
            TsStatus::InternalPanic
        }
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) {
    if !out.is_null() {
        out.write(value);
    }
}

/// Returns the library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns the message of the most recent failure on this thread, or an
/// empty string if none occurred. The pointer is valid until the next
/// failing ts_* call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a simplicial complex from 0-based vertex indices.
///
/// `edges` holds `edge_count` pairs (flattened), `triangles` holds
/// `triangle_count` triples (flattened). Either array may be null when its
/// count is zero. On success `*out` owns the new complex.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable `u32` values, `triangles`
/// to `3 * triangle_count`, and `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_build(
    vertex_count: usize,
    edges: *const u32,
    edge_count: usize,
    triangles: *const u32,
    triangle_count: usize,
    out: *mut *mut TsComplex,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return fail_null("out");
        }
        if edges.is_null() && edge_count > 0 {
            return fail_null("edges");
        }
        if triangles.is_null() && triangle_count > 0 {
            return fail_null("triangles");
        }
        let edge_vec: Vec<[usize; 2]> = (0..edge_count)
            .map(|i| {
                [
                    edges.add(2 * i).read() as usize,
                    edges.add(2 * i + 1).read() as usize,
                ]
            })
            .collect();
        let tri_vec: Vec<[usize; 3]> = (0..triangle_count)
            .map(|i| {
                [
                    triangles.add(3 * i).read() as usize,
                    triangles.add(3 * i + 1).read() as usize,
                    triangles.add(3 * i + 2).read() as usize,
                ]
            })
            .collect();
        match SimplicialComplex::build(vertex_count, &edge_vec, &tri_vec) {
            Ok(inner) => {
                out.write(Box::into_raw(Box::new(TsComplex { inner })));
                TsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a complex handle. Null is a no-op.
///
/// # Safety
/// `c` must be a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_free(c: *mut TsComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Reports vertex, edge, and triangle counts. Each output is optional.
///
/// # Safety
/// `c` must be a live complex handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_counts(
    c: *const TsComplex,
    vertices: *mut usize,
    edges: *mut usize,
    triangles: *mut usize,
) -> TsStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return fail_null("complex");
        };
        write_out(vertices, c.inner.vertex_count());
        write_out(edges, c.inner.edge_count());
        write_out(triangles, c.inner.triangle_count());
        TsStatus::Ok
    })
}

/// Copies the canonical edge list as `2 * edge_count` vertex indices
/// (ascending within each pair, pairs in the library's canonical order).
///
/// # Safety
/// `buf` must be writable for `capacity` `u32` values.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_copy_edges(
    c: *const TsComplex,
    buf: *mut u32,
    capacity: usize,
) -> TsStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return fail_null("complex");
        };
        let needed = 2 * c.inner.edge_count();
        if needed > 0 && buf.is_null() {
            return fail_null("buf");
        }
        if capacity < needed {
            return fail_buffer("edge buffer", needed, capacity);
        }
        for (i, edge) in c.inner.edges().iter().enumerate() {
            buf.add(2 * i).write(edge[0] as u32);
            buf.add(2 * i + 1).write(edge[1] as u32);
        }
        TsStatus::Ok
    })
}

/// Builds the hexagonal benchmark: a triangulated hex-cell grid scaled to
/// the given extent, plus the unit-norm flow of the built-in localized field
/// through the cell interfaces.
///
/// `three_point` selects 3-point Gauss-Legendre flux quadrature when
/// nonzero, midpoint otherwise. `out_flow` may be null to skip the flow.
///
/// # Safety
/// `out_complex` must be writable; `out_flow` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn ts_hex_benchmark(
    rows: usize,
    cols: usize,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    three_point: u8,
    out_complex: *mut *mut TsComplex,
    out_flow: *mut *mut TsVector,
) -> TsStatus {
    guard(|| {
        if out_complex.is_null() {
            return fail_null("out_complex");
        }
        let extent = Extent {
            xmin,
            xmax,
            ymin,
            ymax,
        };
        let (complex, geometry) = match hex_complex(rows, cols, &extent) {
            Ok(pair) => pair,
            Err(e) => return fail(e),
        };
        if !out_flow.is_null() {
            let quadrature = if three_point != 0 {
                Quadrature::ThreePoint
            } else {
                Quadrature::Midpoint
            };
            let flow = field_flow(&geometry, &FieldSpec::default(), quadrature);
            out_flow.write(Box::into_raw(Box::new(TsVector { inner: flow })));
        }
        out_complex.write(Box::into_raw(Box::new(TsComplex { inner: complex })));
        TsStatus::Ok
    })
}

/// Creates a vector handle from raw values.
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_vector_create(
    values: *const f64,
    len: usize,
    out: *mut *mut TsVector,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return fail_null("out");
        }
        if values.is_null() && len > 0 {
            return fail_null("values");
        }
        let inner = EdgeSignal::from_fn(len, |i, _| values.add(i).read());
        out.write(Box::into_raw(Box::new(TsVector { inner })));
        TsStatus::Ok
    })
}

/// Returns the length of a vector, or 0 for null.
///
/// # Safety
/// `v` must be a live vector handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_vector_len(v: *const TsVector) -> usize {
    v.as_ref().map_or(0, |v| v.inner.len())
}

/// Copies vector contents into a caller buffer.
///
/// # Safety
/// `buf` must be writable for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn ts_vector_copy(
    v: *const TsVector,
    buf: *mut f64,
    capacity: usize,
) -> TsStatus {
    guard(|| {
        let Some(v) = v.as_ref() else {
            return fail_null("vector");
        };
        let needed = v.inner.len();
        if needed > 0 && buf.is_null() {
            return fail_null("buf");
        }
        if capacity < needed {
            return fail_buffer("vector buffer", needed, capacity);
        }
        for (i, value) in v.inner.iter().enumerate() {
            buf.add(i).write(*value);
        }
        TsStatus::Ok
    })
}

/// Releases a vector handle. Null is a no-op.
///
/// # Safety
/// `v` must be a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_vector_free(v: *mut TsVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Adds seeded Gaussian noise with standard deviation `sigma`, returning a
/// new vector. The same `(input, sigma, seed)` always yields the same
/// output.
///
/// # Safety
/// `v` must be a live vector handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_vector_add_noise(
    v: *const TsVector,
    sigma: f64,
    seed: u64,
    out: *mut *mut TsVector,
) -> TsStatus {
    guard(|| {
        let Some(v) = v.as_ref() else {
            return fail_null("vector");
        };
        if out.is_null() {
            return fail_null("out");
        }
        if !sigma.is_finite() || sigma < 0.0 {
            set_error(format!(
                "BAD_FORMAT: sigma must be finite and >= 0, got {sigma}"
            ));
            return TsStatus::InvalidInput;
        }
        let noisy = add_noise(&v.inner, sigma, seed);
        out.write(Box::into_raw(Box::new(TsVector { inner: noisy })));
        TsStatus::Ok
    })
}

/// Computes the edge-space spectrum of a complex: eigenpairs of the first
/// Hodge Laplacian, partitioned into gradient, solenoidal, and harmonic
/// groups.
///
/// # Safety
/// `c` must be a live complex handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_spectrum_build(
    c: *const TsComplex,
    out: *mut *mut TsSpectrum,
) -> TsStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return fail_null("complex");
        };
        if out.is_null() {
            return fail_null("out");
        }
        let result = c
            .inner
            .laplacian(1)
            .and_then(|lap| hodge_spectrum(&lap, None));
        match result {
            Ok(inner) => {
                out.write(Box::into_raw(Box::new(TsSpectrum { inner })));
                TsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a spectrum handle. Null is a no-op.
///
/// # Safety
/// `s` must be a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_spectrum_free(s: *mut TsSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Reports the sizes of the three spectral groups. Each output is optional;
/// the three counts always sum to the edge count.
///
/// # Safety
/// `s` must be a live spectrum handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_spectrum_counts(
    s: *const TsSpectrum,
    gradient: *mut usize,
    solenoidal: *mut usize,
    harmonic: *mut usize,
) -> TsStatus {
    guard(|| {
        let Some(s) = s.as_ref() else {
            return fail_null("spectrum");
        };
        write_out(gradient, s.inner.gradient_count());
        write_out(solenoidal, s.inner.solenoidal_count());
        write_out(harmonic, s.inner.harmonic_count());
        TsStatus::Ok
    })
}

/// Builds the concentrated dictionary for a complex: one block of atoms per
/// triangle-adjacency set, one per vertex-adjacency set, plus the harmonic
/// basis. `k_tilde` caps the atoms kept per set; pass 0 to keep every atom
/// with nonzero concentration. `hops` is the adjacency radius used to grow
/// the concentration sets (1 is the default layout).
///
/// # Safety
/// `c` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_dictionary_build(
    c: *const TsComplex,
    s: *const TsSpectrum,
    k_tilde: usize,
    hops: usize,
    out: *mut *mut TsDictionary,
) -> TsStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return fail_null("complex");
        };
        let Some(s) = s.as_ref() else {
            return fail_null("spectrum");
        };
        if out.is_null() {
            return fail_null("out");
        }
        let cap = if k_tilde == 0 { None } else { Some(k_tilde) };
        let result = concentration_sets(&c.inner, &s.inner, hops)
            .and_then(|plan| build_dictionary(&s.inner, &plan, cap));
        match result {
            Ok(inner) => {
                out.write(Box::into_raw(Box::new(TsDictionary { inner })));
                TsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a dictionary handle. Null is a no-op.
///
/// # Safety
/// `d` must be a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_dictionary_free(d: *mut TsDictionary) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Reports dictionary dimensions. Each output is optional.
///
/// # Safety
/// `d` must be a live dictionary handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_dictionary_counts(
    d: *const TsDictionary,
    edge_count: *mut usize,
    atom_count: *mut usize,
) -> TsStatus {
    guard(|| {
        let Some(d) = d.as_ref() else {
            return fail_null("dictionary");
        };
        write_out(edge_count, d.inner.edge_count());
        write_out(atom_count, d.inner.atom_count());
        TsStatus::Ok
    })
}

/// Copies the atom matrix in column-major order: atom `j` occupies entries
/// `[j * edge_count, (j + 1) * edge_count)`.
///
/// # Safety
/// `buf` must be writable for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn ts_dictionary_copy_atoms(
    d: *const TsDictionary,
    buf: *mut f64,
    capacity: usize,
) -> TsStatus {
    guard(|| {
        let Some(d) = d.as_ref() else {
            return fail_null("dictionary");
        };
        let atoms = d.inner.atoms();
        let needed = atoms.nrows() * atoms.ncols();
        if needed > 0 && buf.is_null() {
            return fail_null("buf");
        }
        if capacity < needed {
            return fail_buffer("atom buffer", needed, capacity);
        }
        for (i, value) in atoms.iter().enumerate() {
            buf.add(i).write(*value);
        }
        TsStatus::Ok
    })
}

/// Certifies the frame bounds of a dictionary against the spectrum it was
/// built from. Outputs (each optional):
/// - `lower_bound`: smallest eigenvalue of the frame operator,
/// - `upper_bound`: largest eigenvalue (Rayleigh bound),
/// - `counting_bound`: the set-counting upper bound,
/// - `complete`: 1 when the atoms span both non-harmonic subspaces,
/// - `is_frame`: 1 when the lower bound clears the rank tolerance.
///
/// # Safety
/// `d` and `s` must be live handles; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_frame_certify(
    d: *const TsDictionary,
    s: *const TsSpectrum,
    lower_bound: *mut f64,
    upper_bound: *mut f64,
    counting_bound: *mut f64,
    complete: *mut u8,
    is_frame: *mut u8,
) -> TsStatus {
    guard(|| {
        let Some(d) = d.as_ref() else {
            return fail_null("dictionary");
        };
        let Some(s) = s.as_ref() else {
            return fail_null("spectrum");
        };
        match frame_certificate(&d.inner, &s.inner) {
            Ok(cert) => {
                write_out(lower_bound, cert.lower_bound);
                write_out(upper_bound, cert.upper_bound_rr);
                write_out(counting_bound, cert.upper_bound_thm);
                write_out(
                    complete,
                    u8::from(cert.lower_complete && cert.upper_complete),
                );
                write_out(is_frame, u8::from(cert.is_frame()));
                TsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Validates frame bounds empirically: draws `trials` seeded random unit
/// signals and counts analysis-energy quotients falling outside the
/// certified interval (after tolerance). Writes the violation count.
///
/// # Safety
/// `d` and `s` must be live handles; `violations` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn ts_frame_check_empirical(
    d: *const TsDictionary,
    s: *const TsSpectrum,
    trials: usize,
    seed: u64,
    violations: *mut usize,
) -> TsStatus {
    guard(|| {
        let Some(d) = d.as_ref() else {
            return fail_null("dictionary");
        };
        let Some(s) = s.as_ref() else {
            return fail_null("spectrum");
        };
        match frame_certificate(&d.inner, &s.inner) {
            Ok(cert) => {
                let report = empirical_frame_check(&d.inner, &cert, trials, seed);
                write_out(violations, report.violations);
                TsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Error-constrained pursuit: greedily selects atoms until the residual
/// energy fraction drops to `epsilon`, or `max_iter` atoms were taken
/// (0 means no cap).
///
/// # Safety
/// `d` must be a live dictionary handle, `x` must point to `len` readable
/// doubles, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_omp_error(
    d: *const TsDictionary,
    x: *const f64,
    len: usize,
    epsilon: f64,
    max_iter: usize,
    out: *mut *mut TsSparseCode,
) -> TsStatus {
    guard(|| {
        let Some(d) = d.as_ref() else {
            return fail_null("dictionary");
        };
        if x.is_null() {
            return fail_null("x");
        }
        if out.is_null() {
            return fail_null("out");
        }
        let signal = EdgeSignal::from_fn(len, |i, _| x.add(i).read());
        let cap = if max_iter == 0 { None } else { Some(max_iter) };
        match omp_error(d.inner.atoms(), &signal, epsilon, cap) {
            Ok(inner) => {
                out.write(Box::into_raw(Box::new(TsSparseCode { inner })));
                TsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Sparsity-constrained pursuit: selects at most `s` atoms.
///
/// # Safety
/// `d` must be a live dictionary handle, `x` must point to `len` readable
/// doubles, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_omp_sparsity(
    d: *const TsDictionary,
    x: *const f64,
    len: usize,
    s: usize,
    out: *mut *mut TsSparseCode,
) -> TsStatus {
    guard(|| {
        let Some(d) = d.as_ref() else {
            return fail_null("dictionary");
        };
        if x.is_null() {
            return fail_null("x");
        }
        if out.is_null() {
            return fail_null("out");
        }
        let signal = EdgeSignal::from_fn(len, |i, _| x.add(i).read());
        match omp_sparsity(d.inner.atoms(), &signal, s) {
            Ok(inner) => {
                out.write(Box::into_raw(Box::new(TsSparseCode { inner })));
                TsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Returns the number of selected atoms, or 0 for null.
///
/// # Safety
/// `code` must be a live sparse-code handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_sparse_code_len(code: *const TsSparseCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.support.len())
}

/// Returns the final residual norm, or NaN for null.
///
/// # Safety
/// `code` must be a live sparse-code handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_sparse_code_residual_norm(code: *const TsSparseCode) -> f64 {
    code.as_ref().map_or(f64::NAN, |c| c.inner.residual_norm)
}

/// Copies the selected atom indices and their coefficients. Either output
/// may be null to skip it; `capacity` applies to both.
///
/// # Safety
/// Non-null buffers must be writable for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn ts_sparse_code_copy(
    code: *const TsSparseCode,
    support: *mut usize,
    coefficients: *mut f64,
    capacity: usize,
) -> TsStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return fail_null("code");
        };
        let needed = code.inner.support.len();
        if capacity < needed && !(support.is_null() && coefficients.is_null()) {
            return fail_buffer("sparse code buffer", needed, capacity);
        }
        if !support.is_null() {
            for (i, &atom) in code.inner.support.iter().enumerate() {
                support.add(i).write(atom);
            }
        }
        if !coefficients.is_null() {
            for (i, value) in code.inner.coefficients.iter().enumerate() {
                coefficients.add(i).write(*value);
            }
        }
        TsStatus::Ok
    })
}

/// Reconstructs the signal approximation from a sparse code and the
/// dictionary it was computed against.
///
/// # Safety
/// `code` and `d` must be live handles; `buf` must be writable for
/// `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn ts_sparse_code_reconstruct(
    code: *const TsSparseCode,
    d: *const TsDictionary,
    buf: *mut f64,
    capacity: usize,
) -> TsStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return fail_null("code");
        };
        let Some(d) = d.as_ref() else {
            return fail_null("dictionary");
        };
        let needed = d.inner.edge_count();
        if needed > 0 && buf.is_null() {
            return fail_null("buf");
        }
        if capacity < needed {
            return fail_buffer("reconstruction buffer", needed, capacity);
        }
        if let Some(&bad) = code
            .inner
            .support
            .iter()
            .find(|&&j| j >= d.inner.atom_count())
        {
            set_error(format!(
                "DIMENSION_MISMATCH: sparse code references atom {bad}, dictionary has {}",
                d.inner.atom_count()
            ));
            return TsStatus::DimensionMismatch;
        }
        let x = code.inner.reconstruct(d.inner.atoms());
        for (i, value) in x.iter().enumerate() {
            buf.add(i).write(*value);
        }
        TsStatus::Ok
    })
}

/// Releases a sparse-code handle. Null is a no-op.
///
/// # Safety
/// `code` must be a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_sparse_code_free(code: *mut TsSparseCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}
