//! C ABI over the floqsync core.
//!
//! Every fallible function returns an [`FsStatus`]; on failure a message is
//! kept per thread and read back with [`fs_last_error`]. Handles are opaque
//! and released with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use floqsync::analysis::{exact_kappa, local_kappa_map, PhaseVariant, TimeWindow};
use floqsync::circuit::{rxxz_matrix, FloquetParams, InitialStateSpec};
use floqsync::lattice::{build_heavy_hex, load_edge_list, LatticeGraph, SizeClass};
use floqsync::mps::{self, MpsConfig};
use floqsync::statevector::{self, SvOptions};
use floqsync::{Error, TrajectoryRecord};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    UnsupportedTopology = 3,
    CapacityExceeded = 4,
    RequiresY = 5,
    OutOfRange = 6,
    Numerical = 7,
    Io = 8,
    Panic = 9,
}

/// Floquet angles in radians.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct FsFloquetParams {
    pub theta_xx: f64,
    pub theta_zz: f64,
    pub theta_z: f64,
    pub n_cycles: usize,
}

/// Opaque lattice handle.
pub struct FsLattice {
    graph: LatticeGraph,
}

/// Opaque trajectory handle.
pub struct FsTrajectory {
    record: TrajectoryRecord,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FsStatus {
    match e {
        Error::UnsupportedTopology(_) => FsStatus::UnsupportedTopology,
        Error::CapacityExceeded(_) => FsStatus::CapacityExceeded,
        Error::RequiresY => FsStatus::RequiresY,
        Error::Numerical(_) => FsStatus::Numerical,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => FsStatus::Io,
        _ => FsStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (FsStatus, String)>) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FsStatus::Panic
        }
    }
}

fn core<T>(r: floqsync::Result<T>) -> Result<T, (FsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (FsStatus, String) {
    (FsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (FsStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn params_of(p: &FsFloquetParams) -> Result<FloquetParams, (FsStatus, String)> {
    let params = FloquetParams::new(p.theta_xx, p.theta_zz, p.theta_z, p.n_cycles);
    if !params.is_finite() {
        return Err((FsStatus::InvalidInput, "angles must be finite".into()));
    }
    Ok(params)
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Built-in heavy-hex lattice with 19, 28, 46 or 156 sites.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn fs_lattice_builtin(num_sites: usize, out: *mut *mut FsLattice) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let size: SizeClass = core(num_sites.to_string().parse())?;
        let graph = core(build_heavy_hex(size))?;
        *out = Box::into_raw(Box::new(FsLattice { graph }));
        Ok(())
    })
}

/// Lattice from edge-list text (`a b` per line, `#` comments).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_lattice_from_edge_list(text: *const c_char, out: *mut *mut FsLattice) -> FsStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| (FsStatus::InvalidInput, e.to_string()))?;
        let graph = core(load_edge_list(s))?;
        *out = Box::into_raw(Box::new(FsLattice { graph }));
        Ok(())
    })
}

/// # Safety
/// `lattice` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_lattice_free(lattice: *mut FsLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Number of sites; 0 for a null handle.
///
/// # Safety
/// `lattice` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_lattice_num_sites(lattice: *const FsLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.graph.num_sites())
}

/// Number of edges; 0 for a null handle.
///
/// # Safety
/// `lattice` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_lattice_num_edges(lattice: *const FsLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.graph.edges().len())
}

/// Number of gate layers; 0 for a null handle.
///
/// # Safety
/// `lattice` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_lattice_num_layers(lattice: *const FsLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.graph.num_layers())
}

/// Endpoints and layer of edge `e`.
///
/// # Safety
/// `lattice` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_lattice_edge(
    lattice: *const FsLattice,
    e: usize,
    a: *mut usize,
    b: *mut usize,
    layer: *mut usize,
) -> FsStatus {
    guard(|| {
        let l = deref(lattice, "lattice")?;
        if a.is_null() || b.is_null() || layer.is_null() {
            return Err(null("output"));
        }
        let &(x, y) = l
            .graph
            .edges()
            .get(e)
            .ok_or_else(|| (FsStatus::OutOfRange, format!("edge {e} of {}", l.graph.edges().len())))?;
        *a = x;
        *b = y;
        *layer = l.graph.layer_of_edge(e);
        Ok(())
    })
}

/// `R_XXZ` as 16 complex entries, row-major, interleaved `re, im` (32 doubles).
///
/// # Safety
/// `out` must point to 32 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fs_rxxz_matrix(theta_xx: f64, theta_zz: f64, out: *mut f64) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = rxxz_matrix(theta_xx, theta_zz);
        let dst = std::slice::from_raw_parts_mut(out, 32);
        for (k, v) in m.iter().flatten().enumerate() {
            dst[2 * k] = v.re;
            dst[2 * k + 1] = v.im;
        }
        Ok(())
    })
}

/// Statevector trajectory from phases drawn uniformly in `[0, phi_max]`.
///
/// # Safety
/// `lattice` and `params` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_run_statevector(
    lattice: *const FsLattice,
    params: *const FsFloquetParams,
    phi_max: f64,
    seed: u64,
    out: *mut *mut FsTrajectory,
) -> FsStatus {
    guard(|| {
        let l = deref(lattice, "lattice")?;
        let p = params_of(deref(params, "params")?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let run = core(statevector::run_trajectory(
            &l.graph,
            &p,
            &InitialStateSpec::new(phi_max, seed),
            &SvOptions::default(),
        ))?;
        *out = Box::into_raw(Box::new(FsTrajectory { record: run.record }));
        Ok(())
    })
}

/// MPS trajectory with bond cap `chi` and relative singular-value `cutoff`.
///
/// # Safety
/// `lattice` and `params` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_run_mps(
    lattice: *const FsLattice,
    params: *const FsFloquetParams,
    phi_max: f64,
    seed: u64,
    chi: usize,
    cutoff: f64,
    out: *mut *mut FsTrajectory,
) -> FsStatus {
    guard(|| {
        let l = deref(lattice, "lattice")?;
        let p = params_of(deref(params, "params")?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if chi == 0 || !(0.0..1.0).contains(&cutoff) {
            return Err((FsStatus::InvalidInput, "chi must be positive and cutoff in [0, 1)".into()));
        }
        let run = core(mps::run_trajectory(&l.graph, &p, &InitialStateSpec::new(phi_max, seed), MpsConfig::new(chi, cutoff)))?;
        *out = Box::into_raw(Box::new(FsTrajectory { record: run.record }));
        Ok(())
    })
}

/// # Safety
/// `traj` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_trajectory_free(traj: *mut FsTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// Recorded steps (`n_cycles + 1`); 0 for a null handle.
///
/// # Safety
/// `traj` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_trajectory_num_steps(traj: *const FsTrajectory) -> usize {
    traj.as_ref().map_or(0, |t| t.record.num_steps())
}

/// # Safety
/// `traj` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_trajectory_num_sites(traj: *const FsTrajectory) -> usize {
    traj.as_ref().map_or(0, |t| t.record.num_sites())
}

/// `<X_j>` and `<Y_j>` at step `n`.
///
/// # Safety
/// `traj` must be live; `x` and `y` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_trajectory_xy(traj: *const FsTrajectory, n: usize, j: usize, x: *mut f64, y: *mut f64) -> FsStatus {
    guard(|| {
        let t = deref(traj, "trajectory")?;
        if x.is_null() || y.is_null() {
            return Err(null("output"));
        }
        let rec = &t.record;
        if n >= rec.num_steps() || j >= rec.num_sites() {
            return Err((FsStatus::OutOfRange, format!("(n, j) = ({n}, {j}) outside record")));
        }
        *x = rec.x[n][j];
        *y = core(rec.y_table())?[n][j];
        Ok(())
    })
}

/// Global order parameter at every step over all sites; `out` holds
/// `fs_trajectory_num_steps` doubles.
///
/// # Safety
/// `traj` must be live; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fs_trajectory_kappa(traj: *const FsTrajectory, out: *mut f64, len: usize) -> FsStatus {
    guard(|| {
        let t = deref(traj, "trajectory")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let all: Vec<usize> = (0..t.record.num_sites()).collect();
        let kappa = core(exact_kappa(&t.record, &all))?;
        if len < kappa.len() {
            return Err((FsStatus::OutOfRange, format!("buffer of {len} for {} steps", kappa.len())));
        }
        std::slice::from_raw_parts_mut(out, kappa.len()).copy_from_slice(&kappa);
        Ok(())
    })
}

/// Local order parameter on radius-`radius` neighborhoods averaged over
/// steps `[start, end]`; `out` holds one double per site.
///
/// # Safety
/// `traj` and `lattice` must be live; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fs_trajectory_local_map(
    traj: *const FsTrajectory,
    lattice: *const FsLattice,
    radius: usize,
    start: usize,
    end: usize,
    out: *mut f64,
    len: usize,
) -> FsStatus {
    guard(|| {
        let t = deref(traj, "trajectory")?;
        let l = deref(lattice, "lattice")?;
        if out.is_null() {
            return Err(null("out"));
        }
        if len < l.graph.num_sites() {
            return Err((FsStatus::OutOfRange, format!("buffer of {len} for {} sites", l.graph.num_sites())));
        }
        let map = core(local_kappa_map(&t.record, &l.graph, radius, TimeWindow::new(start, end), PhaseVariant::Exact))?;
        std::slice::from_raw_parts_mut(out, map.len()).copy_from_slice(&map);
        Ok(())
    })
}
