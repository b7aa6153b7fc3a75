#ifndef FLOQSYNC_H
#define FLOQSYNC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_INPUT = 2,
  FS_STATUS_UNSUPPORTED_TOPOLOGY = 3,
  FS_STATUS_CAPACITY_EXCEEDED = 4,
  FS_STATUS_REQUIRES_Y = 5,
  FS_STATUS_OUT_OF_RANGE = 6,
  FS_STATUS_NUMERICAL = 7,
  FS_STATUS_IO = 8,
  FS_STATUS_PANIC = 9,
} FsStatus;

// Opaque lattice handle.
typedef struct FsLattice FsLattice;

// Opaque trajectory handle.
typedef struct FsTrajectory FsTrajectory;

// Floquet angles in radians.
typedef struct FsFloquetParams {
  double theta_xx;
  double theta_zz;
  double theta_z;
  size_t n_cycles;
} FsFloquetParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *fs_last_error(void);

// Built-in heavy-hex lattice with 19, 28, 46 or 156 sites.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum FsStatus fs_lattice_builtin(size_t num_sites, struct FsLattice **out);

// Lattice from edge-list text (`a b` per line, `#` comments).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum FsStatus fs_lattice_from_edge_list(const char *text, struct FsLattice **out);

// # Safety
// `lattice` must be null or a handle from this library, not yet freed.
void fs_lattice_free(struct FsLattice *lattice);

// Number of sites; 0 for a null handle.
//
// # Safety
// `lattice` must be null or a live handle.
size_t fs_lattice_num_sites(const struct FsLattice *lattice);

// Number of edges; 0 for a null handle.
//
// # Safety
// `lattice` must be null or a live handle.
size_t fs_lattice_num_edges(const struct FsLattice *lattice);

// Number of gate layers; 0 for a null handle.
//
// # Safety
// `lattice` must be null or a live handle.
size_t fs_lattice_num_layers(const struct FsLattice *lattice);

// Endpoints and layer of edge `e`.
//
// # Safety
// `lattice` must be a live handle; the out pointers must be writable.
enum FsStatus fs_lattice_edge(const struct FsLattice *lattice,
                              size_t e,
                              size_t *a,
                              size_t *b,
                              size_t *layer);

// `R_XXZ` as 16 complex entries, row-major, interleaved `re, im` (32 doubles).
//
// # Safety
// `out` must point to 32 writable doubles.
enum FsStatus fs_rxxz_matrix(double theta_xx, double theta_zz, double *out);

// Statevector trajectory from phases drawn uniformly in `[0, phi_max]`.
//
// # Safety
// `lattice` and `params` must be live; `out` must be writable.
enum FsStatus fs_run_statevector(const struct FsLattice *lattice,
                                 const struct FsFloquetParams *params,
                                 double phi_max,
                                 uint64_t seed,
                                 struct FsTrajectory **out);

// MPS trajectory with bond cap `chi` and relative singular-value `cutoff`.
//
// # Safety
// `lattice` and `params` must be live; `out` must be writable.
enum FsStatus fs_run_mps(const struct FsLattice *lattice,
                         const struct FsFloquetParams *params,
                         double phi_max,
                         uint64_t seed,
                         size_t chi,
                         double cutoff,
                         struct FsTrajectory **out);

// # Safety
// `traj` must be null or a handle from this library, not yet freed.
void fs_trajectory_free(struct FsTrajectory *traj);

// Recorded steps (`n_cycles + 1`); 0 for a null handle.
//
// # Safety
// `traj` must be null or a live handle.
size_t fs_trajectory_num_steps(const struct FsTrajectory *traj);

// # Safety
// `traj` must be null or a live handle.
size_t fs_trajectory_num_sites(const struct FsTrajectory *traj);

// `<X_j>` and `<Y_j>` at step `n`.
//
// # Safety
// `traj` must be live; `x` and `y` must be writable.
enum FsStatus fs_trajectory_xy(const struct FsTrajectory *traj,
                               size_t n,
                               size_t j,
                               double *x,
                               double *y);

// Global order parameter at every step over all sites; `out` holds
// `fs_trajectory_num_steps` doubles.
//
// # Safety
// `traj` must be live; `out` must point to `len` writable doubles.
enum FsStatus fs_trajectory_kappa(const struct FsTrajectory *traj, double *out, size_t len);

// Local order parameter on radius-`radius` neighborhoods averaged over
// steps `[start, end]`; `out` holds one double per site.
//
// # Safety
// `traj` and `lattice` must be live; `out` must point to `len` writable doubles.
enum FsStatus fs_trajectory_local_map(const struct FsTrajectory *traj,
                                      const struct FsLattice *lattice,
                                      size_t radius,
                                      size_t start,
                                      size_t end,
                                      double *out,
                                      size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLOQSYNC_H */
