#include "cosmo/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "hex8.hpp"

namespace cosmo {

// ---------------------------------------------------------------------------
// SparseMatrix
// ---------------------------------------------------------------------------

SparseMatrix SparseMatrix::structural(
    int n_nodes, const std::vector<std::array<int, 8>>& elems) {
  const int n = 3 * n_nodes;
  std::vector<std::set<int>> pattern(n_nodes);
  for (const auto& e : elems) {
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) pattern[e[a]].insert(e[b]);
    }
  }
  SparseMatrix m;
  m.row_ptr_.assign(n + 1, 0);
  for (int node = 0; node < n_nodes; ++node) {
    const int row_nnz = 3 * static_cast<int>(pattern[node].size());
    for (int c = 0; c < 3; ++c) m.row_ptr_[3 * node + c + 1] = row_nnz;
  }
  for (int r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  m.col_idx_.resize(m.row_ptr_[n]);
  m.values_.assign(m.row_ptr_[n], 0.0);
  for (int node = 0; node < n_nodes; ++node) {
    for (int c = 0; c < 3; ++c) {
      int slot = m.row_ptr_[3 * node + c];
      for (int other : pattern[node]) {
        for (int d = 0; d < 3; ++d) m.col_idx_[slot++] = 3 * other + d;
      }
    }
  }
  return m;
}

void SparseMatrix::add(int row, int col, double value) {
  const auto begin = col_idx_.begin() + row_ptr_[row];
  const auto end = col_idx_.begin() + row_ptr_[row + 1];
  const auto it = std::lower_bound(begin, end, col);
  values_[static_cast<std::size_t>(it - col_idx_.begin())] += value;
}

double SparseMatrix::at(int row, int col) const {
  for (int s = row_ptr_[row]; s < row_ptr_[row + 1]; ++s) {
    if (col_idx_[s] == col) return values_[s];
  }
  return 0.0;
}

void SparseMatrix::multiply(const std::vector<double>& x,
                            std::vector<double>& y) const {
  const int n = size();
  for (int r = 0; r < n; ++r) {
    double acc = 0;
    for (int s = row_ptr_[r]; s < row_ptr_[r + 1]; ++s) {
      acc += values_[s] * x[col_idx_[s]];
    }
    y[r] = acc;
  }
}

std::vector<double> SparseMatrix::diagonal() const {
  const int n = size();
  std::vector<double> d(n, 0.0);
  for (int r = 0; r < n; ++r) d[r] = at(r, r);
  return d;
}

double SparseMatrix::symmetry_gap() const {
  double gap = 0;
  const int n = size();
  for (int r = 0; r < n; ++r) {
    for (int s = row_ptr_[r]; s < row_ptr_[r + 1]; ++s) {
      const int c = col_idx_[s];
      if (c < r) continue;
      gap = std::max(gap, std::abs(values_[s] - at(c, r)));
    }
  }
  return gap;
}

// ---------------------------------------------------------------------------
// Element stiffness and assembly
// ---------------------------------------------------------------------------

namespace {

// Voigt order (xx, yy, zz, xy, yz, zx) with engineering shear strains.
void hooke_matrix(double E, double nu, double D[6][6]) {
  const double lambda = E * nu / ((1 + nu) * (1 - 2 * nu));
  const double mu = E / (2 * (1 + nu));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) D[i][j] = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) D[i][j] = lambda;
    D[i][i] = lambda + 2 * mu;
    D[i + 3][i + 3] = mu;
  }
}

// B (6x24) at one natural point from spatial shape gradients.
void b_matrix(const double dNdx[8][3], double B[6][24]) {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 24; ++j) B[i][j] = 0;
  for (int a = 0; a < 8; ++a) {
    const double gx = dNdx[a][0], gy = dNdx[a][1], gz = dNdx[a][2];
    const int c = 3 * a;
    B[0][c + 0] = gx;
    B[1][c + 1] = gy;
    B[2][c + 2] = gz;
    B[3][c + 0] = gy;
    B[3][c + 1] = gx;
    B[4][c + 1] = gz;
    B[4][c + 2] = gy;
    B[5][c + 0] = gz;
    B[5][c + 2] = gx;
  }
}

}  // namespace

std::array<double, 576> hex8_stiffness(const std::array<Vec3, 8>& corners,
                                       double E, double nu) {
  double D[6][6];
  hooke_matrix(E, nu, D);
  std::array<double, 576> Ke{};
  for (int gp = 0; gp < 8; ++gp) {
    double dNdx[8][3];
    const double det =
        hex8::grad_shape(corners, hex8::kGaussPoint[gp][0],
                         hex8::kGaussPoint[gp][1], hex8::kGaussPoint[gp][2],
                         dNdx);
    double B[6][24];
    b_matrix(dNdx, B);
    double DB[6][24];
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 24; ++j) {
        double acc = 0;
        for (int k = 0; k < 6; ++k) acc += D[i][k] * B[k][j];
        DB[i][j] = acc;
      }
    }
    for (int i = 0; i < 24; ++i) {
      for (int j = 0; j < 24; ++j) {
        double acc = 0;
        for (int k = 0; k < 6; ++k) acc += B[k][i] * DB[k][j];
        Ke[24 * i + j] += acc * det;
      }
    }
  }
  return Ke;
}

SparseMatrix assemble_stiffness(const MeshModel& mesh, const Material& mat) {
  SparseMatrix K = SparseMatrix::structural(
      static_cast<int>(mesh.nodes.size()), mesh.elements);
  for (const auto& conn : mesh.elements) {
    std::array<Vec3, 8> corners;
    for (int c = 0; c < 8; ++c) corners[c] = mesh.nodes[conn[c]];
    const auto Ke = hex8_stiffness(corners, mat.E, mat.nu);
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            K.add(3 * conn[a] + i, 3 * conn[b] + j,
                  Ke[24 * (3 * a + i) + (3 * b + j)]);
          }
        }
      }
    }
  }
  return K;
}

std::vector<double> pressure_load(const MeshModel& mesh,
                                  const std::vector<int>& load_groups,
                                  double pressure) {
  std::vector<double> f(3 * mesh.nodes.size(), 0.0);
  constexpr double g = 0.57735026918962576450914878050196;
  constexpr double quad_pts[4][2] = {{-g, -g}, {g, -g}, {g, g}, {-g, g}};
  for (int gi : load_groups) {
    for (const Facet& facet : mesh.face_groups[gi].facets) {
      std::array<Vec3, 4> p;
      for (int c = 0; c < 4; ++c) p[c] = mesh.nodes[facet.nodes[c]];
      for (const auto& q : quad_pts) {
        const double u = q[0], v = q[1];
        const double N[4] = {0.25 * (1 - u) * (1 - v), 0.25 * (1 + u) * (1 - v),
                             0.25 * (1 + u) * (1 + v),
                             0.25 * (1 - u) * (1 + v)};
        const Vec3 du = (p[1] - p[0]) * (0.25 * (1 - v)) +
                        (p[2] - p[3]) * (0.25 * (1 + v));
        const Vec3 dv = (p[3] - p[0]) * (0.25 * (1 - u)) +
                        (p[2] - p[1]) * (0.25 * (1 + u));
        // du x dv points along the outward normal (vertex order invariant);
        // positive pressure pushes inward.
        const Vec3 da = du.cross(dv);
        for (int c = 0; c < 4; ++c) {
          const int base = 3 * facet.nodes[c];
          f[base + 0] -= pressure * N[c] * da.x;
          f[base + 1] -= pressure * N[c] * da.y;
          f[base + 2] -= pressure * N[c] * da.z;
        }
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Constrained PCG
// ---------------------------------------------------------------------------

Result<std::vector<double>> solve_constrained(
    const SparseMatrix& K, const std::vector<double>& rhs,
    const std::vector<int>& fixed_dofs, const std::vector<double>& fixed_values,
    double rel_tol, SolveStats* stats) {
  using R = Result<std::vector<double>>;
  const int n = K.size();
  if (fixed_dofs.empty()) {
    return R::failure(ErrorCode::SingularSystem,
                      "no constrained dofs: rigid-body modes present");
  }

  std::vector<int> to_free(n, -1);
  std::vector<double> full(n, 0.0);
  {
    std::vector<char> is_fixed(n, 0);
    for (std::size_t i = 0; i < fixed_dofs.size(); ++i) {
      is_fixed[fixed_dofs[i]] = 1;
      full[fixed_dofs[i]] = fixed_values[i];
    }
    int nf = 0;
    for (int d = 0; d < n; ++d) {
      if (!is_fixed[d]) to_free[d] = nf++;
    }
  }
  const int n_free =
      n - static_cast<int>(std::count(to_free.begin(), to_free.end(), -1));

  if (n_free == 0) {
    if (stats) *stats = {0, 0.0};
    return full;
  }

  // Reduced rhs: b_f = f_f - K_fc * u_c.
  std::vector<double> b(n_free, 0.0);
  std::vector<double> diag(n_free, 0.0);
  const auto& rp = K.row_ptr();
  const auto& ci = K.col_idx();
  const auto& vals = K.values();
  for (int r = 0; r < n; ++r) {
    const int fr = to_free[r];
    if (fr < 0) continue;
    double acc = rhs[r];
    for (int s = rp[r]; s < rp[r + 1]; ++s) {
      const int c = ci[s];
      if (to_free[c] < 0) acc -= vals[s] * full[c];
      if (c == r) diag[fr] = vals[s];
    }
    b[fr] = acc;
  }

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int r = 0; r < n; ++r) {
      const int fr = to_free[r];
      if (fr < 0) continue;
      double acc = 0;
      for (int s = rp[r]; s < rp[r + 1]; ++s) {
        const int fc = to_free[ci[s]];
        if (fc >= 0) acc += vals[s] * x[fc];
      }
      y[fr] = acc;
    }
  };

  for (int i = 0; i < n_free; ++i) {
    if (!(diag[i] > 0)) {
      return R::failure(ErrorCode::SingularSystem,
                        "non-positive diagonal in reduced system");
    }
  }

  const double b_norm = std::sqrt(
      std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
  std::vector<double> x(n_free, 0.0);
  if (b_norm == 0) {
    if (stats) *stats = {0, 0.0};
    for (int d = 0; d < n; ++d)
      if (to_free[d] >= 0) full[d] = 0.0;
    return full;
  }

  const int cap = std::max(
      1000, static_cast<int>(std::ceil(20.0 * std::sqrt(double(n_free)))));

  std::vector<double> r = b;  // x0 = 0
  std::vector<double> z(n_free), pdir(n_free), Ap(n_free);
  for (int i = 0; i < n_free; ++i) z[i] = r[i] / diag[i];
  pdir = z;
  double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
  double res_rel = 1.0;
  int it = 0;
  while (it < cap) {
    apply(pdir, Ap);
    const double pAp =
        std::inner_product(pdir.begin(), pdir.end(), Ap.begin(), 0.0);
    if (!(pAp > 0) || !std::isfinite(pAp)) {
      return R::failure(ErrorCode::SingularSystem,
                        "operator not positive definite in PCG");
    }
    const double alpha = rz / pAp;
    for (int i = 0; i < n_free; ++i) {
      x[i] += alpha * pdir[i];
      r[i] -= alpha * Ap[i];
    }
    ++it;
    const double r_norm = std::sqrt(
        std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    res_rel = r_norm / b_norm;
    if (res_rel <= rel_tol) break;
    for (int i = 0; i < n_free; ++i) z[i] = r[i] / diag[i];
    const double rz_new =
        std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n_free; ++i) pdir[i] = z[i] + beta * pdir[i];
  }
  if (stats) *stats = {it, res_rel};
  if (res_rel > rel_tol) {
    return R::failure(ErrorCode::NonConvergence,
                      "PCG hit the iteration cap at relative residual " +
                          std::to_string(res_rel));
  }

  for (int d = 0; d < n; ++d) {
    if (to_free[d] >= 0) full[d] = x[to_free[d]];
  }
  return full;
}

// ---------------------------------------------------------------------------
// Stress recovery and the full solve
// ---------------------------------------------------------------------------

std::vector<std::array<double, 6>> recover_centroid_stresses(
    const MeshModel& mesh, const Material& mat, const std::vector<double>& u) {
  double D[6][6];
  hooke_matrix(mat.E, mat.nu, D);
  std::vector<std::array<double, 6>> out(mesh.elements.size());
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& conn = mesh.elements[e];
    std::array<Vec3, 8> corners;
    for (int c = 0; c < 8; ++c) corners[c] = mesh.nodes[conn[c]];
    double dNdx[8][3];
    hex8::grad_shape(corners, 0, 0, 0, dNdx);
    double strain[6] = {0, 0, 0, 0, 0, 0};
    for (int a = 0; a < 8; ++a) {
      const double ux = u[3 * conn[a] + 0];
      const double uy = u[3 * conn[a] + 1];
      const double uz = u[3 * conn[a] + 2];
      strain[0] += dNdx[a][0] * ux;
      strain[1] += dNdx[a][1] * uy;
      strain[2] += dNdx[a][2] * uz;
      strain[3] += dNdx[a][1] * ux + dNdx[a][0] * uy;
      strain[4] += dNdx[a][2] * uy + dNdx[a][1] * uz;
      strain[5] += dNdx[a][2] * ux + dNdx[a][0] * uz;
    }
    for (int i = 0; i < 6; ++i) {
      double acc = 0;
      for (int j = 0; j < 6; ++j) acc += D[i][j] * strain[j];
      out[e][i] = acc;
    }
  }
  return out;
}

std::vector<int> face_group_dofs(const MeshModel& mesh,
                                 const std::vector<int>& groups) {
  std::set<int> nodes;
  for (int g : groups) {
    for (const Facet& f : mesh.face_groups[g].facets) {
      nodes.insert(f.nodes.begin(), f.nodes.end());
    }
  }
  std::vector<int> dofs;
  dofs.reserve(3 * nodes.size());
  for (int n : nodes) {
    dofs.push_back(3 * n);
    dofs.push_back(3 * n + 1);
    dofs.push_back(3 * n + 2);
  }
  return dofs;
}

Result<FemField> solve_linear_static(const MeshModel& mesh, const Material& mat,
                                     const SimSetting& setting) {
  using R = Result<FemField>;
  if (auto st = validate(mat); !st.ok()) {
    return R::failure(ErrorCode::InvalidParams, st.error().message);
  }
  if (!(setting.solver_tol > 0) || setting.solver_tol > 1e-4) {
    return R::failure(ErrorCode::InvalidParams,
                      "solver_tol must be in (0, 1e-4]");
  }
  if (!std::isfinite(setting.pressure)) {
    return R::failure(ErrorCode::InvalidParams, "pressure must be finite");
  }
  if (mesh.elements.empty()) {
    return R::failure(ErrorCode::EmptyField, "mesh has no elements");
  }

  const double eps =
      setting.face_eps > 0 ? setting.face_eps : default_face_eps(mesh);

  auto groups_for = [&](const std::string& label)
      -> Result<std::vector<int>> {
    const Anchor* anchor = mesh.find_anchor(label);
    if (anchor == nullptr) {
      return Result<std::vector<int>>::failure(
          ErrorCode::InvalidParams, "mesh has no anchor labeled " + label);
    }
    return match_faces(mesh, anchor->point, eps);
  };

  auto fixed_groups = groups_for(setting.fixed_anchor_label);
  if (!fixed_groups.ok()) return R(fixed_groups.error());
  auto load_groups = groups_for(setting.load_anchor_label);
  if (!load_groups.ok()) return R(load_groups.error());

  const SparseMatrix K = assemble_stiffness(mesh, mat);
  const std::vector<double> f =
      pressure_load(mesh, load_groups.value(), setting.pressure);
  const std::vector<int> fixed = face_group_dofs(mesh, fixed_groups.value());
  const std::vector<double> fixed_vals(fixed.size(), 0.0);

  SolveStats stats;
  auto u = solve_constrained(K, f, fixed, fixed_vals, setting.solver_tol,
                             &stats);
  if (!u.ok()) return R(u.error());

  FemField field;
  field.stats = stats;
  field.nodal_displacements.resize(mesh.nodes.size());
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    field.nodal_displacements[i] = {u.value()[3 * i], u.value()[3 * i + 1],
                                    u.value()[3 * i + 2]};
  }
  field.element_stresses = recover_centroid_stresses(mesh, mat, u.value());
  return field;
}

std::string write_result_text(const FemField& field) {
  std::string out = "cosmo.result.v1\n";
  char buf[192];
  std::snprintf(buf, sizeof buf, "solver_log iterations=%d residual=%.17g\n",
                field.stats.iterations, field.stats.residual);
  out += buf;
  out += "displacements " + std::to_string(field.nodal_displacements.size()) +
         "\n";
  for (const Vec3& u : field.nodal_displacements) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", u.x, u.y, u.z);
    out += buf;
  }
  out += "stresses " + std::to_string(field.element_stresses.size()) + "\n";
  for (const auto& s : field.element_stresses) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g\n",
                  s[0], s[1], s[2], s[3], s[4], s[5]);
    out += buf;
  }
  return out;
}

}  // namespace cosmo
