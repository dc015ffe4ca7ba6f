#pragma once

#include <array>
#include <string>
#include <vector>

#include "cosmo/geometry.hpp"
#include "cosmo/materials.hpp"
#include "cosmo/result.hpp"

namespace cosmo {

/// Load and boundary-condition configuration for one linear static solve.
/// Unit system is N-mm-MPa throughout (1 MPa = 1 N/mm^2).
struct SimSetting {
  double pressure = 0;  // MPa along the inward normal of the load faces;
                        // negative values pull (traction)
  std::string fixed_anchor_label = "fixed";
  std::string load_anchor_label = "load";
  int mesh_resolution = 2;
  double solver_tol = 1e-8;  // relative residual, must be in (0, 1e-4]
  double face_eps = 0;       // mm; 0 selects 1e-4 x bbox_diag
};

struct SolveStats {
  int iterations = 0;
  double residual = 0;  // relative, at exit
};

/// Displacements per node (mm) and centroid stress tensors per element
/// (sigma_xx, sigma_yy, sigma_zz, tau_xy, tau_yz, tau_zx in MPa).
struct FemField {
  std::vector<Vec3> nodal_displacements;
  std::vector<std::array<double, 6>> element_stresses;
  SolveStats stats;
};

/// Square symmetric CSR matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Build the sparsity for 3 dof per node from element connectivity, zeros.
  static SparseMatrix structural(int n_nodes,
                                 const std::vector<std::array<int, 8>>& elems);

  int size() const { return static_cast<int>(row_ptr_.size()) - 1; }
  void add(int row, int col, double value);  // entry must exist in pattern
  double at(int row, int col) const;         // 0 if absent
  void multiply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> diagonal() const;

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  /// max |K_ij - K_ji| over stored entries.
  double symmetry_gap() const;

 private:
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// Assembled global stiffness prior to boundary conditions (3 dof per node,
/// dof = 3*node + component).
SparseMatrix assemble_stiffness(const MeshModel& mesh, const Material& mat);

/// 24x24 element stiffness (2x2x2 Gauss, isotropic Hooke from E, nu).
std::array<double, 576> hex8_stiffness(const std::array<Vec3, 8>& corners,
                                       double E, double nu);

/// Consistent nodal forces for a pressure on the listed face groups; pressure
/// acts along each facet's inward normal.
std::vector<double> pressure_load(const MeshModel& mesh,
                                  const std::vector<int>& load_groups,
                                  double pressure);

/// Jacobi-preconditioned conjugate gradient on the free dofs with prescribed
/// values eliminated. Iteration cap: ceil(20*sqrt(n_free)), at least 1000.
/// Errors: SingularSystem (no constraints or indefinite operator),
/// NonConvergence (cap reached above tolerance).
Result<std::vector<double>> solve_constrained(
    const SparseMatrix& K, const std::vector<double>& rhs,
    const std::vector<int>& fixed_dofs, const std::vector<double>& fixed_values,
    double rel_tol, SolveStats* stats = nullptr);

/// Strain -> centroid stress recovery for every element.
std::vector<std::array<double, 6>> recover_centroid_stresses(
    const MeshModel& mesh, const Material& mat, const std::vector<double>& u);

/// Full tool-2 pipeline: anchor-driven face matching, clamped fixed faces,
/// consistent pressure load, PCG solve, centroid stress recovery.
Result<FemField> solve_linear_static(const MeshModel& mesh, const Material& mat,
                                     const SimSetting& setting);

/// All dofs (3 per node) of nodes on the given face groups, sorted unique.
std::vector<int> face_group_dofs(const MeshModel& mesh,
                                 const std::vector<int>& groups);

/// Plain-text result dump (cosmo.result.v1): per-node displacement and
/// per-element stress sections plus the solver log line.
std::string write_result_text(const FemField& field);

}  // namespace cosmo
