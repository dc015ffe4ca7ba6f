#include "cosmo/geometry.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "hex8.hpp"

namespace cosmo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Category registry
// ---------------------------------------------------------------------------

std::vector<PartCategory> make_categories() {
  std::vector<PartCategory> cats;
  cats.push_back({"rect_plate",
                  {{"L", 60, 200}, {"W", 30, 120}, {"T", 2, 12}},
                  "top",
                  "root",
                  {2},
                  {1},
                  false});
  cats.push_back({"cantilever_beam",
                  {{"L", 60, 200}, {"b", 6, 30}, {"h", 6, 30}},
                  "tip_top",
                  "root",
                  {2},
                  {1},
                  false});
  cats.push_back({"i_beam_cantilever",
                  {{"L", 100, 300},
                   {"H", 40, 120},
                   {"flange_w", 20, 80},
                   {"flange_t", 3, 15},
                   {"web_t", 3, 15}},
                  "tip_top",
                  "root",
                  {1, 3},
                  {2},
                  false});
  cats.push_back({"l_bracket",
                  {{"leg_a", 40, 120},
                   {"leg_b", 40, 120},
                   {"width", 10, 60},
                   {"thickness", 4, 20}},
                  "arm_tip_top",
                  "mount",
                  {3},
                  {2},
                  false});
  cats.push_back({"hollow_box_beam",
                  {{"L", 100, 300},
                   {"W", 30, 100},
                   {"H", 30, 100},
                   {"wall_t", 3, 12}},
                  "top",
                  "root",
                  {2},
                  {3},
                  false});
  cats.push_back({"flat_flange",
                  {{"outer_d", 60, 200}, {"inner_d", 20, 100}, {"T", 4, 20}},
                  "top",
                  "bore",
                  {2},
                  {0},
                  false});
  // Holdout categories for generalization runs.
  cats.push_back({"t_bracket",
                  {{"cross_len", 60, 160},
                   {"cross_t", 6, 20},
                   {"stem_h", 40, 120},
                   {"stem_t", 8, 30},
                   {"width", 10, 50}},
                  "top",
                  "base",
                  {1},
                  {4},
                  true});
  cats.push_back({"stepped_plate",
                  {{"L1", 30, 100},
                   {"L2", 30, 100},
                   {"W", 30, 100},
                   {"T1", 6, 20},
                   {"T2", 3, 12}},
                  "thin_top",
                  "root",
                  {4},
                  {2},
                  true});
  return cats;
}

// ---------------------------------------------------------------------------
// Structured lattice meshing
// ---------------------------------------------------------------------------

// Node coordinates for one axis: each [breaks[i], breaks[i+1]] interval is
// split into ~len/target_h cells, with the per-axis total capped.
std::vector<double> subdivide_axis(std::vector<double> breaks, double target_h,
                                   int cap_total) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double a, double b) {
                             return std::abs(b - a) <=
                                    1e-12 * std::abs(breaks.back());
                           }),
               breaks.end());

  const std::size_t n_int = breaks.size() - 1;
  std::vector<long> counts(n_int);
  long total = 0;
  for (std::size_t i = 0; i < n_int; ++i) {
    const double len = breaks[i + 1] - breaks[i];
    counts[i] = std::max<long>(1, std::llround(len / target_h));
    total += counts[i];
  }
  if (total > cap_total) {
    const double scale = static_cast<double>(cap_total) / total;
    for (auto& c : counts) {
      c = std::max<long>(1, static_cast<long>(std::floor(c * scale)));
    }
  }

  std::vector<double> coords{breaks.front()};
  for (std::size_t i = 0; i < n_int; ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    for (long j = 1; j <= counts[i]; ++j) {
      coords.push_back(a + (b - a) * static_cast<double>(j) /
                               static_cast<double>(counts[i]));
    }
  }
  return coords;
}

// Lattice offsets of the 8 trilinear corners.
constexpr int kCornerOff[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                  {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

// Local corner indices of each cell face, ordered so the right-hand rule
// points outward. Order: -x, +x, -y, +y, -z, +z.
constexpr int kFaceCorners[6][4] = {{0, 4, 7, 3}, {1, 2, 6, 5}, {0, 1, 5, 4},
                                    {3, 7, 6, 2}, {0, 3, 2, 1}, {4, 5, 6, 7}};
constexpr int kFaceDir[6][3] = {{-1, 0, 0}, {1, 0, 0},  {0, -1, 0},
                                {0, 1, 0},  {0, 0, -1}, {0, 0, 1}};

struct BoundaryFacet {
  std::array<int, 4> nodes;
  Vec3 normal;
  Vec3 centroid;
  int face;        // 0..5 as in kFaceDir
  int ci, cj, ck;  // owning cell
};

// Predicate over cell indices; label callback over boundary facets.
using SolidFn = std::function<bool(int, int, int)>;
using LabelFn = std::function<std::string(const BoundaryFacet&)>;

MeshModel build_lattice_mesh(const std::vector<double>& xs,
                             const std::vector<double>& ys,
                             const std::vector<double>& zs,
                             const SolidFn& solid, const LabelFn& label) {
  const int nx = static_cast<int>(xs.size()) - 1;
  const int ny = static_cast<int>(ys.size()) - 1;
  const int nz = static_cast<int>(zs.size()) - 1;

  std::vector<char> is_solid(static_cast<std::size_t>(nx) * ny * nz, 0);
  auto cell_at = [&](int i, int j, int k) -> char {
    if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return 0;
    return is_solid[static_cast<std::size_t>((k * ny + j)) * nx + i];
  };
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        is_solid[static_cast<std::size_t>((k * ny + j)) * nx + i] =
            solid(i, j, k) ? 1 : 0;

  // Keep only lattice nodes that touch a solid cell.
  std::vector<int> node_id(static_cast<std::size_t>(nx + 1) * (ny + 1) *
                               (nz + 1),
                           -1);
  auto node_slot = [&](int i, int j, int k) -> int& {
    return node_id[static_cast<std::size_t>((k * (ny + 1) + j)) * (nx + 1) + i];
  };

  MeshModel mesh;
  for (int k = 0; k <= nz; ++k) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        bool used = false;
        for (int dk = -1; dk <= 0 && !used; ++dk)
          for (int dj = -1; dj <= 0 && !used; ++dj)
            for (int di = -1; di <= 0 && !used; ++di)
              used = cell_at(i + di, j + dj, k + dk);
        if (used) {
          node_slot(i, j, k) = static_cast<int>(mesh.nodes.size());
          mesh.nodes.push_back({xs[i], ys[j], zs[k]});
        }
      }
    }
  }

  std::map<std::string, std::vector<Facet>> groups;
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (!cell_at(i, j, k)) continue;
        std::array<int, 8> conn;
        for (int c = 0; c < 8; ++c) {
          conn[c] = node_slot(i + kCornerOff[c][0], j + kCornerOff[c][1],
                              k + kCornerOff[c][2]);
        }
        mesh.elements.push_back(conn);

        for (int f = 0; f < 6; ++f) {
          if (cell_at(i + kFaceDir[f][0], j + kFaceDir[f][1],
                      k + kFaceDir[f][2]))
            continue;
          BoundaryFacet bf;
          bf.face = f;
          bf.ci = i;
          bf.cj = j;
          bf.ck = k;
          bf.normal = {static_cast<double>(kFaceDir[f][0]),
                       static_cast<double>(kFaceDir[f][1]),
                       static_cast<double>(kFaceDir[f][2])};
          Vec3 centroid{0, 0, 0};
          for (int c = 0; c < 4; ++c) {
            bf.nodes[c] = conn[kFaceCorners[f][c]];
            centroid = centroid + mesh.nodes[bf.nodes[c]];
          }
          bf.centroid = centroid * 0.25;
          groups[label(bf)].push_back(Facet{bf.nodes, bf.normal});
        }
      }
    }
  }

  for (auto& [name, facets] : groups) {
    mesh.face_groups.push_back(FaceGroup{name, std::move(facets)});
  }
  return mesh;
}

void finalize_mesh(MeshModel& mesh) {
  double volume = 0;
  for (const auto& conn : mesh.elements) {
    std::array<Vec3, 8> corners;
    for (int c = 0; c < 8; ++c) corners[c] = mesh.nodes[conn[c]];
    volume += hex_volume(corners);
  }
  mesh.volume_mm3 = volume;

  constexpr double kBig = std::numeric_limits<double>::max();
  Vec3 lo{kBig, kBig, kBig};
  Vec3 hi{-kBig, -kBig, -kBig};
  for (const Vec3& p : mesh.nodes) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  mesh.bbox_diag = (hi - lo).norm();
}

bool near(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(scale));
}

Result<MeshModel> fail_degenerate(const std::string& why) {
  return Result<MeshModel>::failure(ErrorCode::DegenerateGeometry, why);
}

// ---------------------------------------------------------------------------
// Category meshers. Anchors sit on the designated functional faces: at the
// face centroid where that point lies on the surface, otherwise at a
// documented on-surface point (ring-shaped faces have off-surface centroids).
// ---------------------------------------------------------------------------

Result<MeshModel> build_rect_plate(const std::vector<double>& p, int res) {
  const double L = p[0], W = p[1], T = p[2];
  if (L <= 0 || W <= 0 || T <= 0) return fail_degenerate("non-positive dimension");
  const double target = std::min({L, W, T}) / res;
  const int cap = 10 * res;
  auto xs = subdivide_axis({0, L}, target, cap);
  auto ys = subdivide_axis({0, W}, target, cap);
  auto zs = subdivide_axis({0, T}, target, cap);
  MeshModel mesh = build_lattice_mesh(
      xs, ys, zs, [](int, int, int) { return true; },
      [&](const BoundaryFacet& f) -> std::string {
        switch (f.face) {
          case 0: return "root";
          case 1: return "tip";
          case 2: return "side_near";
          case 3: return "side_far";
          case 4: return "bottom";
          default: return "top";
        }
      });
  mesh.anchors = {{"fixed", {0, W / 2, T / 2}}, {"load", {L / 2, W / 2, T}}};
  return mesh;
}

Result<MeshModel> build_cantilever_beam(const std::vector<double>& p, int res) {
  const double L = p[0], b = p[1], h = p[2];
  if (L <= 0 || b <= 0 || h <= 0) return fail_degenerate("non-positive dimension");
  const double target = std::min({L, b, h}) / res;
  const int cap = 10 * res;
  auto xs = subdivide_axis({0, L}, target, cap);
  auto ys = subdivide_axis({0, b}, target, cap);
  auto zs = subdivide_axis({0, h}, target, cap);
  const int last = static_cast<int>(xs.size()) - 2;
  MeshModel mesh = build_lattice_mesh(
      xs, ys, zs, [](int, int, int) { return true; },
      [&](const BoundaryFacet& f) -> std::string {
        switch (f.face) {
          case 0: return "root";
          case 1: return "tip";
          case 2: return "side_near";
          case 3: return "side_far";
          case 4: return "bottom";
          default: return f.ci == last ? "tip_top" : "top";
        }
      });
  mesh.anchors = {{"fixed", {0, b / 2, h / 2}},
                  {"load", {(xs[last] + L) / 2, b / 2, h}}};
  return mesh;
}

Result<MeshModel> build_i_beam(const std::vector<double>& p, int res) {
  const double L = p[0], H = p[1], fw = p[2], ft = p[3], wt = p[4];
  if (L <= 0 || H <= 0 || fw <= 0 || ft <= 0 || wt <= 0)
    return fail_degenerate("non-positive dimension");
  if (2 * ft >= H) return fail_degenerate("flanges overlap: 2*flange_t >= H");
  if (wt >= fw) return fail_degenerate("web wider than flange");
  const double y0 = (fw - wt) / 2, y1 = (fw + wt) / 2;
  const double target = std::min(ft, wt) / res;
  const int cap = 10 * res;
  auto xs = subdivide_axis({0, L}, target, cap);
  auto ys = subdivide_axis({0, y0, y1, fw}, target, cap);
  auto zs = subdivide_axis({0, ft, H - ft, H}, target, cap);
  const int last = static_cast<int>(xs.size()) - 2;
  auto yc = [&](int j) { return (ys[j] + ys[j + 1]) / 2; };
  auto zc = [&](int k) { return (zs[k] + zs[k + 1]) / 2; };
  MeshModel mesh = build_lattice_mesh(
      xs, ys, zs,
      [&](int, int j, int k) {
        return zc(k) < ft || zc(k) > H - ft || (yc(j) > y0 && yc(j) < y1);
      },
      [&](const BoundaryFacet& f) -> std::string {
        if (f.face == 0) return "root";
        if (f.face == 1) return "tip";
        if (f.face == 4 && near(f.centroid.z, 0, H)) return "bottom";
        if (f.face == 5 && near(f.centroid.z, H, H))
          return f.ci == last ? "tip_top" : "top";
        return "wall";
      });
  mesh.anchors = {{"fixed", {0, fw / 2, H / 2}},
                  {"load", {(xs[last] + L) / 2, fw / 2, H}}};
  return mesh;
}

Result<MeshModel> build_l_bracket(const std::vector<double>& p, int res) {
  const double la = p[0], lb = p[1], w = p[2], th = p[3];
  if (la <= 0 || lb <= 0 || w <= 0 || th <= 0)
    return fail_degenerate("non-positive dimension");
  if (th >= la || th >= lb) return fail_degenerate("thickness swallows a leg");
  const double target = th / res;
  const int cap = 10 * res;
  auto xs = subdivide_axis({0, th, la}, target, cap);
  auto ys = subdivide_axis({0, w}, target, cap);
  auto zs = subdivide_axis({0, th, lb}, target, cap);
  const int last = static_cast<int>(xs.size()) - 2;
  auto xc = [&](int i) { return (xs[i] + xs[i + 1]) / 2; };
  auto zc = [&](int k) { return (zs[k] + zs[k + 1]) / 2; };
  MeshModel mesh = build_lattice_mesh(
      xs, ys, zs,
      [&](int i, int, int k) { return xc(i) < th || zc(k) < th; },
      [&](const BoundaryFacet& f) -> std::string {
        if (f.face == 0) return "back";
        if (f.face == 1) return "arm_end";
        if (f.face == 4) return "bottom";
        if (f.face == 5) {
          if (near(f.centroid.z, lb, lb)) return "mount";
          return f.ci == last ? "arm_tip_top" : "arm_top";
        }
        return "wall";
      });
  mesh.anchors = {{"fixed", {th / 2, w / 2, lb}},
                  {"load", {(xs[last] + la) / 2, w / 2, th}}};
  return mesh;
}

Result<MeshModel> build_hollow_box(const std::vector<double>& p, int res) {
  const double L = p[0], W = p[1], H = p[2], wt = p[3];
  if (L <= 0 || W <= 0 || H <= 0 || wt <= 0)
    return fail_degenerate("non-positive dimension");
  if (2 * wt >= W || 2 * wt >= H) return fail_degenerate("walls close the bore");
  const double target = wt / res;
  const int cap = 10 * res;
  auto xs = subdivide_axis({0, L}, target, cap);
  auto ys = subdivide_axis({0, wt, W - wt, W}, target, cap);
  auto zs = subdivide_axis({0, wt, H - wt, H}, target, cap);
  auto yc = [&](int j) { return (ys[j] + ys[j + 1]) / 2; };
  auto zc = [&](int k) { return (zs[k] + zs[k + 1]) / 2; };
  MeshModel mesh = build_lattice_mesh(
      xs, ys, zs,
      [&](int, int j, int k) {
        const bool in_void = yc(j) > wt && yc(j) < W - wt && zc(k) > wt &&
                             zc(k) < H - wt;
        return !in_void;
      },
      [&](const BoundaryFacet& f) -> std::string {
        switch (f.face) {
          case 0: return "root";
          case 1: return "tip";
          case 2: return near(f.centroid.y, 0, W) ? "side_near" : "bore";
          case 3: return near(f.centroid.y, W, W) ? "side_far" : "bore";
          case 4: return near(f.centroid.z, 0, H) ? "bottom" : "bore";
          default: return near(f.centroid.z, H, H) ? "top" : "bore";
        }
      });
  mesh.anchors = {{"fixed", {0, W / 2, wt / 2}}, {"load", {L / 2, W / 2, H}}};
  return mesh;
}

Result<MeshModel> build_t_bracket(const std::vector<double>& p, int res) {
  const double cl = p[0], ct = p[1], sh = p[2], st = p[3], w = p[4];
  if (cl <= 0 || ct <= 0 || sh <= 0 || st <= 0 || w <= 0)
    return fail_degenerate("non-positive dimension");
  if (st >= cl) return fail_degenerate("stem wider than cross bar");
  const double cx = cl / 2;
  const double target = std::min(ct, st) / res;
  const int cap = 10 * res;
  auto xs = subdivide_axis({0, cx - st / 2, cx + st / 2, cl}, target, cap);
  auto ys = subdivide_axis({0, w}, target, cap);
  auto zs = subdivide_axis({0, sh, sh + ct}, target, cap);
  auto xc = [&](int i) { return (xs[i] + xs[i + 1]) / 2; };
  auto zc = [&](int k) { return (zs[k] + zs[k + 1]) / 2; };
  MeshModel mesh = build_lattice_mesh(
      xs, ys, zs,
      [&](int i, int, int k) {
        if (zc(k) > sh) return true;
        return xc(i) > cx - st / 2 && xc(i) < cx + st / 2;
      },
      [&](const BoundaryFacet& f) -> std::string {
        if (f.face == 4 && near(f.centroid.z, 0, sh)) return "base";
        if (f.face == 4) return "cross_under";
        if (f.face == 5) return "top";
        return "wall";
      });
  mesh.anchors = {{"fixed", {cx, w / 2, 0}}, {"load", {cx, w / 2, sh + ct}}};
  return mesh;
}

Result<MeshModel> build_stepped_plate(const std::vector<double>& p, int res) {
  const double L1 = p[0], L2 = p[1], W = p[2], T1 = p[3], T2 = p[4];
  if (L1 <= 0 || L2 <= 0 || W <= 0 || T1 <= 0 || T2 <= 0)
    return fail_degenerate("non-positive dimension");
  if (T2 > T1) return fail_degenerate("thin section thicker than base");
  const double target = T2 / res;
  const int cap = 10 * res;
  auto xs = subdivide_axis({0, L1, L1 + L2}, target, cap);
  auto ys = subdivide_axis({0, W}, target, cap);
  auto zs = subdivide_axis({0, T2, T1}, target, cap);
  auto xc = [&](int i) { return (xs[i] + xs[i + 1]) / 2; };
  auto zc = [&](int k) { return (zs[k] + zs[k + 1]) / 2; };
  MeshModel mesh = build_lattice_mesh(
      xs, ys, zs,
      [&](int i, int, int k) { return xc(i) < L1 ? zc(k) < T1 : zc(k) < T2; },
      [&](const BoundaryFacet& f) -> std::string {
        if (f.face == 0) return "root";
        if (f.face == 1)
          return near(f.centroid.x, L1 + L2, L1 + L2) ? "tip" : "step";
        if (f.face == 4) return "bottom";
        if (f.face == 5)
          return near(f.centroid.z, T1, T1) ? "thick_top" : "thin_top";
        return "wall";
      });
  mesh.anchors = {{"fixed", {0, W / 2, T1 / 2}},
                  {"load", {L1 + L2 / 2, W / 2, T2}}};
  return mesh;
}

Result<MeshModel> build_flat_flange(const std::vector<double>& p, int res) {
  const double od = p[0], id = p[1], T = p[2];
  if (od <= 0 || id <= 0 || T <= 0) return fail_degenerate("non-positive dimension");
  const double r_in = id / 2, r_out = od / 2;
  if (r_out - r_in < 2) return fail_degenerate("annular wall below 2 mm");

  const double target = std::min(T, r_out - r_in) / res;
  const int cap = 10 * res;
  auto rs = subdivide_axis({r_in, r_out}, target, cap);
  auto zs = subdivide_axis({0, T}, target, cap);
  const int n_theta = 8 * res;
  const int nr = static_cast<int>(rs.size()) - 1;
  const int nz = static_cast<int>(zs.size()) - 1;

  MeshModel mesh;
  // Node id layout: radial index fastest, then angular, then axial.
  auto node_of = [&](int i, int j, int k) {
    return (k * n_theta + (j % n_theta)) * (nr + 1) + i;
  };
  for (int k = 0; k <= nz; ++k) {
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2 * kPi * j / n_theta;
      const double c = std::cos(th), s = std::sin(th);
      for (int i = 0; i <= nr; ++i) {
        mesh.nodes.push_back({rs[i] * c, rs[i] * s, zs[k]});
      }
    }
  }

  std::map<std::string, std::vector<Facet>> groups;
  auto add_facet = [&](const std::string& label, std::array<int, 4> nodes) {
    Vec3 p0 = mesh.nodes[nodes[0]], p1 = mesh.nodes[nodes[1]];
    Vec3 p2 = mesh.nodes[nodes[2]], p3 = mesh.nodes[nodes[3]];
    Vec3 n = (p2 - p0).cross(p3 - p1);
    const double len = n.norm();
    groups[label].push_back(Facet{nodes, n * (1.0 / len)});
  };

  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < n_theta; ++j) {
      for (int i = 0; i < nr; ++i) {
        const std::array<int, 8> conn = {
            node_of(i, j, k),         node_of(i + 1, j, k),
            node_of(i + 1, j + 1, k), node_of(i, j + 1, k),
            node_of(i, j, k + 1),     node_of(i + 1, j, k + 1),
            node_of(i + 1, j + 1, k + 1), node_of(i, j + 1, k + 1)};
        mesh.elements.push_back(conn);
        if (k == 0) add_facet("bottom", {conn[0], conn[3], conn[2], conn[1]});
        if (k == nz - 1) add_facet("top", {conn[4], conn[5], conn[6], conn[7]});
        if (i == 0) add_facet("bore", {conn[0], conn[4], conn[7], conn[3]});
        if (i == nr - 1) add_facet("rim", {conn[1], conn[2], conn[6], conn[5]});
      }
    }
  }
  for (auto& [name, facets] : groups) {
    mesh.face_groups.push_back(FaceGroup{name, std::move(facets)});
  }
  // Ring faces have off-surface area centroids, so anchors sit on the theta=0
  // grid line: mid-wall on the top face, mid-height on the bore.
  mesh.anchors = {{"fixed", {r_in, 0, T / 2}},
                  {"load", {(r_in + r_out) / 2, 0, T}}};
  return mesh;
}

// Point-to-triangle distance (Eberly's region decomposition).
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return (p - a).norm();

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return (p - b).norm();

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    const double v = d1 / (d1 - d3);
    return (p - (a + ab * v)).norm();
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return (p - c).norm();

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    const double w = d2 / (d2 - d6);
    return (p - (a + ac * w)).norm();
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (p - (b + (c - b) * w)).norm();
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  return (p - (a + ab * v + ac * w)).norm();
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

const std::vector<PartCategory>& part_categories() {
  static const std::vector<PartCategory> cats = make_categories();
  return cats;
}

const PartCategory* find_category(std::string_view id) {
  for (const PartCategory& c : part_categories()) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<std::string> training_category_ids() {
  std::vector<std::string> out;
  for (const auto& c : part_categories())
    if (!c.holdout) out.push_back(c.id);
  return out;
}

std::vector<std::string> generalization_category_ids() {
  std::vector<std::string> out;
  for (const auto& c : part_categories())
    if (c.holdout) out.push_back(c.id);
  return out;
}

int MeshModel::group_index(std::string_view label) const {
  for (std::size_t g = 0; g < face_groups.size(); ++g) {
    if (face_groups[g].label == label) return static_cast<int>(g);
  }
  return -1;
}

const Anchor* MeshModel::find_anchor(std::string_view label) const {
  for (const Anchor& a : anchors) {
    if (a.label == label) return &a;
  }
  return nullptr;
}

Status validate_params(const PartCategory& cat, const std::vector<double>& p) {
  if (p.size() != cat.params.size()) {
    return Status::failure(ErrorCode::InvalidParams,
                           cat.id + ": expected " +
                               std::to_string(cat.params.size()) +
                               " parameters, got " + std::to_string(p.size()));
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i])) {
      return Status::failure(ErrorCode::InvalidParams,
                             cat.params[i].name + " is not finite");
    }
    if (p[i] < cat.params[i].lo || p[i] > cat.params[i].hi) {
      return Status::failure(
          ErrorCode::InvalidParams,
          cat.params[i].name + "=" + std::to_string(p[i]) + " outside [" +
              std::to_string(cat.params[i].lo) + ", " +
              std::to_string(cat.params[i].hi) + "]");
    }
  }
  return ok_status();
}

Result<MeshModel> build_part(const PartCategory& cat,
                             const std::vector<double>& params,
                             int resolution) {
  if (resolution < 1) {
    return Result<MeshModel>::failure(ErrorCode::InvalidParams,
                                      "resolution must be >= 1");
  }
  if (params.size() != cat.params.size()) {
    return Result<MeshModel>::failure(
        ErrorCode::InvalidParams,
        cat.id + ": expected " + std::to_string(cat.params.size()) +
            " parameters, got " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!std::isfinite(params[i])) {
      return Result<MeshModel>::failure(ErrorCode::InvalidParams,
                                        cat.params[i].name + " is not finite");
    }
  }

  // Degeneracy (non-positive or inverted geometry) is reported ahead of the
  // schema bounds so a zero thickness reads as DegenerateGeometry.
  Result<MeshModel> built = [&]() -> Result<MeshModel> {
    if (cat.id == "rect_plate") return build_rect_plate(params, resolution);
    if (cat.id == "cantilever_beam")
      return build_cantilever_beam(params, resolution);
    if (cat.id == "i_beam_cantilever") return build_i_beam(params, resolution);
    if (cat.id == "l_bracket") return build_l_bracket(params, resolution);
    if (cat.id == "hollow_box_beam") return build_hollow_box(params, resolution);
    if (cat.id == "flat_flange") return build_flat_flange(params, resolution);
    if (cat.id == "t_bracket") return build_t_bracket(params, resolution);
    if (cat.id == "stepped_plate")
      return build_stepped_plate(params, resolution);
    return Result<MeshModel>::failure(ErrorCode::UnknownCategory,
                                      "no mesher for " + cat.id);
  }();
  if (!built.ok()) return built;

  if (auto st = validate_params(cat, params); !st.ok()) {
    return Result<MeshModel>::failure(st.error().code, st.error().message);
  }

  MeshModel mesh = built.take();
  mesh.category = cat.id;
  finalize_mesh(mesh);
  return mesh;
}

Result<MeshModel> build_part(std::string_view category_id,
                             const std::vector<double>& params,
                             int resolution) {
  const PartCategory* cat = find_category(category_id);
  if (cat == nullptr) {
    return Result<MeshModel>::failure(
        ErrorCode::UnknownCategory,
        "unknown part category: " + std::string(category_id));
  }
  return build_part(*cat, params, resolution);
}

double point_facet_distance(const MeshModel& mesh, const Facet& facet,
                            const Vec3& point) {
  const Vec3& a = mesh.nodes[facet.nodes[0]];
  const Vec3& b = mesh.nodes[facet.nodes[1]];
  const Vec3& c = mesh.nodes[facet.nodes[2]];
  const Vec3& d = mesh.nodes[facet.nodes[3]];
  return std::min(point_triangle_distance(point, a, b, c),
                  point_triangle_distance(point, a, c, d));
}

double facet_area(const MeshModel& mesh, const Facet& facet) {
  const Vec3& a = mesh.nodes[facet.nodes[0]];
  const Vec3& b = mesh.nodes[facet.nodes[1]];
  const Vec3& c = mesh.nodes[facet.nodes[2]];
  const Vec3& d = mesh.nodes[facet.nodes[3]];
  return 0.5 * ((b - a).cross(c - a).norm() + (c - a).cross(d - a).norm());
}

double face_group_area(const MeshModel& mesh, int group_index) {
  double area = 0;
  for (const Facet& f : mesh.face_groups[group_index].facets) {
    area += facet_area(mesh, f);
  }
  return area;
}

double default_face_eps(const MeshModel& mesh) {
  return 1e-4 * mesh.bbox_diag;
}

Result<std::vector<int>> match_faces(const MeshModel& mesh, const Vec3& point,
                                     double eps) {
  if (!(eps > 0)) {
    return Result<std::vector<int>>::failure(ErrorCode::InvalidParams,
                                             "eps must be > 0");
  }
  std::vector<int> matched;
  for (std::size_t g = 0; g < mesh.face_groups.size(); ++g) {
    double dmin = std::numeric_limits<double>::max();
    for (const Facet& f : mesh.face_groups[g].facets) {
      dmin = std::min(dmin, point_facet_distance(mesh, f, point));
      if (dmin == 0) break;
    }
    if (dmin <= eps) matched.push_back(static_cast<int>(g));
  }
  if (matched.empty()) {
    return Result<std::vector<int>>::failure(
        ErrorCode::NoFaceMatched, "no face group within tolerance of anchor");
  }
  return matched;
}

double hex_volume(const std::array<Vec3, 8>& corners) {
  double volume = 0;
  for (int gp = 0; gp < 8; ++gp) {
    double J[3][3];
    volume += hex8::jacobian(corners, hex8::kGaussPoint[gp][0],
                             hex8::kGaussPoint[gp][1], hex8::kGaussPoint[gp][2],
                             J);
  }
  return volume;
}

// ---------------------------------------------------------------------------
// Text export (cosmo.mesh.v1)
// ---------------------------------------------------------------------------

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string write_mesh_text(const MeshModel& mesh) {
  std::string out = "cosmo.mesh.v1\n";
  out += "category " + mesh.category + "\n";
  out += "nodes " + std::to_string(mesh.nodes.size()) + "\n";
  for (const Vec3& p : mesh.nodes) {
    append_double(out, p.x);
    out += ' ';
    append_double(out, p.y);
    out += ' ';
    append_double(out, p.z);
    out += '\n';
  }
  out += "elements " + std::to_string(mesh.elements.size()) + "\n";
  for (const auto& e : mesh.elements) {
    for (int c = 0; c < 8; ++c) {
      if (c) out += ' ';
      out += std::to_string(e[c]);
    }
    out += '\n';
  }
  out += "face_groups " + std::to_string(mesh.face_groups.size()) + "\n";
  for (const FaceGroup& g : mesh.face_groups) {
    out += "group " + g.label + " " + std::to_string(g.facets.size()) + "\n";
    for (const Facet& f : g.facets) {
      for (int c = 0; c < 4; ++c) {
        out += std::to_string(f.nodes[c]);
        out += ' ';
      }
      append_double(out, f.normal.x);
      out += ' ';
      append_double(out, f.normal.y);
      out += ' ';
      append_double(out, f.normal.z);
      out += '\n';
    }
  }
  out += "anchors " + std::to_string(mesh.anchors.size()) + "\n";
  for (const Anchor& a : mesh.anchors) {
    out += a.label + " ";
    append_double(out, a.point.x);
    out += ' ';
    append_double(out, a.point.y);
    out += ' ';
    append_double(out, a.point.z);
    out += '\n';
  }
  out += "volume_mm3 ";
  append_double(out, mesh.volume_mm3);
  out += "\nbbox_diag ";
  append_double(out, mesh.bbox_diag);
  out += '\n';
  return out;
}

Result<MeshModel> read_mesh_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  auto fail = [](const std::string& why) {
    return Result<MeshModel>::failure(ErrorCode::ParseError, why);
  };

  std::string word;
  if (!(in >> word) || word != "cosmo.mesh.v1") return fail("bad header");

  MeshModel mesh;
  std::size_t count = 0;
  if (!(in >> word >> mesh.category) || word != "category")
    return fail("missing category");
  if (!(in >> word >> count) || word != "nodes") return fail("missing nodes");
  mesh.nodes.resize(count);
  for (Vec3& p : mesh.nodes) {
    if (!(in >> p.x >> p.y >> p.z)) return fail("bad node record");
  }
  if (!(in >> word >> count) || word != "elements")
    return fail("missing elements");
  mesh.elements.resize(count);
  for (auto& e : mesh.elements) {
    for (int c = 0; c < 8; ++c) {
      if (!(in >> e[c])) return fail("bad element record");
    }
  }
  if (!(in >> word >> count) || word != "face_groups")
    return fail("missing face_groups");
  mesh.face_groups.resize(count);
  for (FaceGroup& g : mesh.face_groups) {
    std::size_t nf = 0;
    if (!(in >> word >> g.label >> nf) || word != "group")
      return fail("bad group header");
    g.facets.resize(nf);
    for (Facet& f : g.facets) {
      for (int c = 0; c < 4; ++c) {
        if (!(in >> f.nodes[c])) return fail("bad facet record");
      }
      if (!(in >> f.normal.x >> f.normal.y >> f.normal.z))
        return fail("bad facet normal");
    }
  }
  if (!(in >> word >> count) || word != "anchors") return fail("missing anchors");
  mesh.anchors.resize(count);
  for (Anchor& a : mesh.anchors) {
    if (!(in >> a.label >> a.point.x >> a.point.y >> a.point.z))
      return fail("bad anchor record");
  }
  if (!(in >> word >> mesh.volume_mm3) || word != "volume_mm3")
    return fail("missing volume");
  if (!(in >> word >> mesh.bbox_diag) || word != "bbox_diag")
    return fail("missing bbox_diag");
  return mesh;
}

}  // namespace cosmo
