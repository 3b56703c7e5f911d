//! C ABI over `pantscx`. Complexes and maps are opaque handles owned by the
//! caller and released with the matching `*_free`. Every fallible call
//! returns a [`PantscxStatus`]; the message of the last failure on the
//! calling thread is available from [`pantscx_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pantscx::complex::{build_with, BuildOptions, TwoComplex};
use pantscx::error::{BuildError, MapError};
use pantscx::graph::enumerate_graphs;
use pantscx::maps::{
    check_fibration_conditions_with, phi_map, psi_map, CellularMap, FibrationOptions,
};
use pantscx::verify::{check_simply_connected_with, h1, FillingLimits, Limits, Verdict};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PantscxStatus {
    Ok = 0,
    NullArgument = 1,
    Domain = 2,
    Resources = 3,
    Parse = 4,
    Map = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PantscxVerdict {
    Trivial = 0,
    NontrivialH1 = 1,
    NontrivialFinite = 2,
    Unknown = 3,
    Disconnected = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PantscxFormat {
    Text = 0,
    Dot = 1,
}

/// Opaque complex handle.
pub struct PantscxComplex(TwoComplex);

/// Opaque cellular map handle.
pub struct PantscxMap(CellularMap);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn guard(f: impl FnOnce() -> Result<(), (PantscxStatus, String)>) -> PantscxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PantscxStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PantscxStatus::Panic
        }
    }
}

fn build_status(e: BuildError) -> (PantscxStatus, String) {
    let s = match e {
        BuildError::Domain(_) => PantscxStatus::Domain,
        BuildError::VertexCap { .. } => PantscxStatus::Resources,
    };
    (s, e.to_string())
}

fn map_status(e: MapError) -> (PantscxStatus, String) {
    match e {
        MapError::Build(b) => build_status(b),
        MapError::Domain(_)
        | MapError::GenusTooSmall(_)
        | MapError::NoSuchLeaf(_)
        | MapError::WrongComplexType { .. } => (PantscxStatus::Domain, e.to_string()),
        _ => (PantscxStatus::Map, e.to_string()),
    }
}

fn null() -> (PantscxStatus, String) {
    (PantscxStatus::NullArgument, "null argument".into())
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), (PantscxStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, (PantscxStatus, String)> {
    p.as_ref().ok_or_else(null)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

/// Message of the last failed call on this thread; valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn pantscx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pantscx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of graphs of type `(g, n)` up to isomorphism.
///
/// # Safety
/// `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pantscx_enumerate_count(
    g: u32,
    n: u32,
    count: *mut usize,
) -> PantscxStatus {
    guard(|| {
        let graphs = enumerate_graphs(g, n).map_err(|e| (PantscxStatus::Domain, e.to_string()))?;
        put(count, graphs.len())
    })
}

/// Builds the complex of type `(g, n)`; `threads == 0` uses the global pool.
///
/// # Safety
/// `out` must be writable; the handle is released with
/// `pantscx_complex_free`.
#[no_mangle]
pub unsafe extern "C" fn pantscx_build(
    g: u32,
    n: u32,
    decorated: bool,
    threads: usize,
    out: *mut *mut PantscxComplex,
) -> PantscxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let opts = BuildOptions {
            decorated,
            threads,
            ..BuildOptions::default()
        };
        let c = build_with(g, n, &opts).map_err(build_status)?;
        put(out, Box::into_raw(Box::new(PantscxComplex(c))))
    })
}

/// Parses the text serialization of a complex.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pantscx_complex_parse(
    text: *const c_char,
    out: *mut *mut PantscxComplex,
) -> PantscxStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (PantscxStatus::InvalidUtf8, e.to_string()))?;
        let c = TwoComplex::parse(s).map_err(|e| (PantscxStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(PantscxComplex(c))))
    })
}

/// # Safety
/// `c` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pantscx_complex_free(c: *mut PantscxComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Vertex, edge and cell counts.
///
/// # Safety
/// `c` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn pantscx_complex_counts(
    c: *const PantscxComplex,
    vertices: *mut usize,
    edges: *mut usize,
    cells: *mut usize,
) -> PantscxStatus {
    guard(|| {
        let c = &handle(c)?.0;
        put(vertices, c.vertices.len())?;
        put(edges, c.edges.len())?;
        put(cells, c.cells.len())
    })
}

/// Serializes a complex; free the result with `pantscx_string_free`.
/// Returns null on failure.
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pantscx_complex_serialize(
    c: *const PantscxComplex,
    format: PantscxFormat,
) -> *mut c_char {
    let Some(c) = c.as_ref() else {
        set_error("null argument");
        return ptr::null_mut();
    };
    match format {
        PantscxFormat::Text => into_c_string(c.0.to_text()),
        PantscxFormat::Dot => into_c_string(c.0.to_dot()),
    }
}

/// Rank of the first homology group.
///
/// # Safety
/// `c` must be a live handle and `betti` writable.
#[no_mangle]
pub unsafe extern "C" fn pantscx_complex_betti1(
    c: *const PantscxComplex,
    betti: *mut usize,
) -> PantscxStatus {
    guard(|| put(betti, h1(&handle(c)?.0).betti))
}

/// Decides simple connectedness. `detail` receives the peak coset count for
/// a trivial verdict, the first Betti number, the group order, the coset cap
/// or the component count, according to `verdict`.
///
/// # Safety
/// `c` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn pantscx_check_simply_connected(
    c: *const PantscxComplex,
    max_cosets: usize,
    verdict: *mut PantscxVerdict,
    detail: *mut usize,
) -> PantscxStatus {
    guard(|| {
        let c = &handle(c)?.0;
        let limits = Limits {
            max_cosets,
            max_time: None,
        };
        let (v, d) = match check_simply_connected_with(c, limits) {
            Verdict::Trivial { cosets } => (PantscxVerdict::Trivial, cosets),
            Verdict::NontrivialH1(h) => (PantscxVerdict::NontrivialH1, h.betti),
            Verdict::NontrivialFinite { order } => (PantscxVerdict::NontrivialFinite, order),
            Verdict::Unknown { max_cosets } => (PantscxVerdict::Unknown, max_cosets),
            Verdict::Disconnected { components } => (PantscxVerdict::Disconnected, components),
        };
        put(verdict, v)?;
        put(detail, d)
    })
}

/// The contraction map from type `(g, n)` to `(g, n - 1)`.
///
/// # Safety
/// `out` must be writable; release with `pantscx_map_free`.
#[no_mangle]
pub unsafe extern "C" fn pantscx_map_phi(
    g: u32,
    n: u32,
    out: *mut *mut PantscxMap,
) -> PantscxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let m = phi_map(g, n).map_err(map_status)?;
        put(out, Box::into_raw(Box::new(PantscxMap(m))))
    })
}

/// The gluing map from type `(g - 1, 2)` to `(g, 0)`.
///
/// # Safety
/// `out` must be writable; release with `pantscx_map_free`.
#[no_mangle]
pub unsafe extern "C" fn pantscx_map_psi(g: u32, out: *mut *mut PantscxMap) -> PantscxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let m = psi_map(g).map_err(map_status)?;
        put(out, Box::into_raw(Box::new(PantscxMap(m))))
    })
}

/// # Safety
/// `m` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pantscx_map_free(m: *mut PantscxMap) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Whether every target vertex, edge and cell has a preimage.
///
/// # Safety
/// `m` must be a live handle and `surjective` writable.
#[no_mangle]
pub unsafe extern "C" fn pantscx_map_is_surjective(
    m: *const PantscxMap,
    surjective: *mut bool,
) -> PantscxStatus {
    guard(|| put(surjective, handle(m)?.0.is_surjective()))
}

/// Runs the fibration checks; `all_proven` is set when nothing failed or
/// stayed unresolved. The report text is returned through `report` unless
/// it is null; free it with `pantscx_string_free`.
///
/// # Safety
/// `m` must be a live handle; `all_proven` writable; `report` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pantscx_map_check(
    m: *const PantscxMap,
    max_area: usize,
    all_proven: *mut bool,
    report: *mut *mut c_char,
) -> PantscxStatus {
    guard(|| {
        let m = &handle(m)?.0;
        let opts = FibrationOptions {
            filling: FillingLimits {
                max_area,
                ..FillingLimits::default()
            },
            ..FibrationOptions::default()
        };
        let r = check_fibration_conditions_with(m, &opts);
        put(all_proven, r.all_proven())?;
        if !report.is_null() {
            report.write(into_c_string(r.to_string()));
        }
        Ok(())
    })
}

/// Text listing of the map's vertex, edge and cell assignments; free with
/// `pantscx_string_free`. Returns null on failure.
///
/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pantscx_map_serialize(m: *const PantscxMap) -> *mut c_char {
    match m.as_ref() {
        Some(m) => into_c_string(m.0.to_text()),
        None => {
            set_error("null argument");
            ptr::null_mut()
        }
    }
}
