//! C interface to the plane-packing library.
//!
//! Point sets and packings are opaque handles created and released through
//! this interface. Every fallible call returns a [`PpStatus`]; the message of
//! the most recent failure on the calling thread is available from
//! [`pp_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use plane_packing::constructions::{double_star_pack, three_trees, two_paths, two_trees, ConstructionError};
use plane_packing::crossing::crossing_family_greedy;
use plane_packing::geom::{GeomError, Point, PointSet};
use plane_packing::hierarchical::{hierarchical_pack, HierarchicalError};
use plane_packing::io::codec::{packing_to_string, PackingDoc, Provenance};
use plane_packing::oracle::{max_tree_packing_exact, OracleError};
use plane_packing::packing::{verify_packing, Ground, Packing};
use plane_packing::wheel::{wheel_partition, wheel_zigzag_paths, WheelConfig};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    GeneralPosition = 3,
    ConstructionFailed = 4,
    BudgetExceeded = 5,
    Panic = 6,
}

/// Packing constructions selectable through [`pp_pack`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PpMethod {
    DoubleStar = 0,
    TwoTrees = 1,
    ThreeTrees = 2,
    TwoPaths = 3,
    WheelPartition = 4,
    WheelPaths = 5,
    Hierarchical = 6,
}

impl PpMethod {
    fn name(self) -> &'static str {
        match self {
            PpMethod::DoubleStar => "double-star",
            PpMethod::TwoTrees => "two-trees",
            PpMethod::ThreeTrees => "three-trees",
            PpMethod::TwoPaths => "two-paths",
            PpMethod::WheelPartition => "wheel-partition",
            PpMethod::WheelPaths => "wheel-paths",
            PpMethod::Hierarchical => "hierarchical",
        }
    }
}

/// Opaque point set (explicit coordinates or a symbolic wheel).
pub struct PpPointSet {
    ground: Ground,
}

/// Opaque packing.
pub struct PpPacking {
    packing: Packing,
    method: &'static str,
    k: Option<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn fail(status: PpStatus, msg: impl Into<String>) -> PpStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> PpStatus) -> PpStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(PpStatus::Panic, "internal panic"))
}

/// Message for the most recent call on this thread: empty after success, the
/// failure reason otherwise, and the first witness after a `pp_verify` that
/// found a violation. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a point set from `n` coordinate pairs, validating general position.
///
/// # Safety
/// `xs` and `ys` must point to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pp_pointset_new(
    xs: *const i64,
    ys: *const i64,
    n: usize,
    out: *mut *mut PpPointSet,
) -> PpStatus {
    guard(|| {
        if xs.is_null() || ys.is_null() || out.is_null() {
            return fail(PpStatus::NullPointer, "null argument");
        }
        let (xs, ys) = (std::slice::from_raw_parts(xs, n), std::slice::from_raw_parts(ys, n));
        let pts = xs.iter().zip(ys).map(|(&x, &y)| Point::new(x, y)).collect();
        match PointSet::new(pts) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(PpPointSet { ground: Ground::Points(s) }));
                PpStatus::Ok
            }
            Err(e @ GeomError::Collinear(..)) => fail(PpStatus::GeneralPosition, e.to_string()),
            Err(e) => fail(PpStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// The regular wheel with `2n - 1` rim points and a hub.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pp_pointset_wheel(n: usize, out: *mut *mut PpPointSet) -> PpStatus {
    guard(|| {
        if out.is_null() {
            return fail(PpStatus::NullPointer, "null argument");
        }
        match WheelConfig::new(n) {
            Ok(w) => {
                *out = Box::into_raw(Box::new(PpPointSet { ground: Ground::Wheel(w) }));
                PpStatus::Ok
            }
            Err(e) => fail(PpStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `ps` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_pointset_len(ps: *const PpPointSet) -> usize {
    ps.as_ref().map_or(0, |p| p.ground.vertex_count())
}

/// # Safety
/// `ps` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pp_pointset_free(ps: *mut PpPointSet) {
    if !ps.is_null() {
        drop(Box::from_raw(ps));
    }
}

fn construction_status(e: ConstructionError) -> PpStatus {
    match e {
        ConstructionError::TooFewPoints { .. } => fail(PpStatus::InvalidArgument, e.to_string()),
        other => fail(PpStatus::ConstructionFailed, other.to_string()),
    }
}

/// Runs a construction. `k` is the tree count for the double-star and
/// hierarchical methods (0 = default) and ignored otherwise.
///
/// # Safety
/// `ps` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_pack(
    ps: *const PpPointSet,
    method: PpMethod,
    k: usize,
    out: *mut *mut PpPacking,
) -> PpStatus {
    guard(|| {
        let Some(ps) = ps.as_ref() else {
            return fail(PpStatus::NullPointer, "null point set");
        };
        if out.is_null() {
            return fail(PpStatus::NullPointer, "null output");
        }
        let needs_points = || fail(PpStatus::InvalidArgument, format!("{} needs explicit coordinates", method.name()));
        let needs_wheel = || fail(PpStatus::InvalidArgument, format!("{} needs a wheel", method.name()));
        let result: Result<Packing, PpStatus> = match (method, &ps.ground) {
            (PpMethod::WheelPartition, Ground::Wheel(w)) => {
                wheel_partition(w.n()).map_err(|e| fail(PpStatus::ConstructionFailed, e.to_string()))
            }
            (PpMethod::WheelPaths, Ground::Wheel(w)) => {
                wheel_zigzag_paths(w.n()).map_err(|e| fail(PpStatus::ConstructionFailed, e.to_string()))
            }
            (PpMethod::WheelPartition | PpMethod::WheelPaths, Ground::Points(_)) => Err(needs_wheel()),
            (_, Ground::Wheel(_)) => Err(needs_points()),
            (PpMethod::DoubleStar, Ground::Points(s)) => {
                let f = crossing_family_greedy(s, k);
                if k > 0 && f.len() < k {
                    Err(fail(PpStatus::ConstructionFailed, format!("crossing family of size {} < {k}", f.len())))
                } else {
                    double_star_pack(s, &f).map_err(construction_status)
                }
            }
            (PpMethod::TwoTrees, Ground::Points(s)) => two_trees(s).map_err(construction_status),
            (PpMethod::ThreeTrees, Ground::Points(s)) => three_trees(s).map_err(construction_status),
            (PpMethod::TwoPaths, Ground::Points(s)) => two_paths(s).map_err(construction_status),
            (PpMethod::Hierarchical, Ground::Points(s)) => hierarchical_pack(s, k.max(1)).map_err(|e| match e {
                HierarchicalError::InvalidK { .. } => fail(PpStatus::InvalidArgument, e.to_string()),
                other => fail(PpStatus::ConstructionFailed, other.to_string()),
            }),
        };
        match result {
            Ok(packing) => {
                let k = matches!(method, PpMethod::DoubleStar | PpMethod::Hierarchical).then_some(k);
                *out = Box::into_raw(Box::new(PpPacking { packing, method: method.name(), k }));
                PpStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Number of members, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_packing_member_count(p: *const PpPacking) -> usize {
    p.as_ref().map_or(0, |p| p.packing.members.len())
}

/// Number of edges of member `i`, or 0 if out of range.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_packing_member_edge_count(p: *const PpPacking, i: usize) -> usize {
    p.as_ref().and_then(|p| p.packing.members.get(i)).map_or(0, |m| m.len())
}

/// Copies the edges of member `i` into `buf` as `a0, b0, a1, b1, ...`.
/// `capacity` counts `size_t` slots and must be at least twice the edge count.
///
/// # Safety
/// `p` must be a live handle and `buf` writable for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn pp_packing_member_edges(
    p: *const PpPacking,
    i: usize,
    buf: *mut usize,
    capacity: usize,
) -> PpStatus {
    guard(|| {
        let Some(p) = p.as_ref() else {
            return fail(PpStatus::NullPointer, "null packing");
        };
        if buf.is_null() {
            return fail(PpStatus::NullPointer, "null buffer");
        }
        let Some(m) = p.packing.members.get(i) else {
            return fail(PpStatus::InvalidArgument, format!("member {i} out of range"));
        };
        if capacity < 2 * m.len() {
            return fail(PpStatus::InvalidArgument, format!("buffer needs {} slots", 2 * m.len()));
        }
        let out = std::slice::from_raw_parts_mut(buf, capacity);
        for (slot, e) in out.chunks_exact_mut(2).zip(m.edges()) {
            slot[0] = e.a();
            slot[1] = e.b();
        }
        PpStatus::Ok
    })
}

/// Runs the verifier; `out_ok` receives whether every required flag holds.
///
/// # Safety
/// `p` must be a live handle and `out_ok` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_verify(p: *const PpPacking, require_partition: bool, out_ok: *mut bool) -> PpStatus {
    guard(|| {
        let Some(p) = p.as_ref() else {
            return fail(PpStatus::NullPointer, "null packing");
        };
        if out_ok.is_null() {
            return fail(PpStatus::NullPointer, "null output");
        }
        let report = verify_packing(&p.packing, require_partition);
        *out_ok = report.all_ok();
        if let Some(w) = report.first_failure() {
            set_error(w);
        }
        PpStatus::Ok
    })
}

/// Serializes the packing in the library's JSON format. Release the string
/// with [`pp_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_packing_to_json(p: *const PpPacking, out: *mut *mut c_char) -> PpStatus {
    guard(|| {
        let Some(p) = p.as_ref() else {
            return fail(PpStatus::NullPointer, "null packing");
        };
        if out.is_null() {
            return fail(PpStatus::NullPointer, "null output");
        }
        let doc = PackingDoc {
            packing: p.packing.clone(),
            provenance: Provenance { method: p.method.into(), seed: None, k: p.k, input: None },
            points_file: None,
        };
        match CString::new(packing_to_string(&doc)) {
            Ok(s) => {
                *out = s.into_raw();
                PpStatus::Ok
            }
            Err(e) => fail(PpStatus::Panic, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact maximum number of edge-disjoint plane spanning trees (at most 16
/// vertices). On `BUDGET_EXCEEDED`, `out_count` holds a lower bound.
///
/// # Safety
/// `ps` must be a live handle and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_oracle_max_trees(ps: *const PpPointSet, budget: u64, out_count: *mut usize) -> PpStatus {
    guard(|| {
        let Some(ps) = ps.as_ref() else {
            return fail(PpStatus::NullPointer, "null point set");
        };
        if out_count.is_null() {
            return fail(PpStatus::NullPointer, "null output");
        }
        match max_tree_packing_exact(&ps.ground, budget) {
            Ok(r) => {
                *out_count = r.count;
                PpStatus::Ok
            }
            Err(OracleError::BudgetExceeded { best }) => {
                *out_count = best.count;
                fail(PpStatus::BudgetExceeded, format!("budget exhausted; lower bound {}", best.count))
            }
            Err(e) => fail(PpStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pp_packing_free(p: *mut PpPacking) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}
