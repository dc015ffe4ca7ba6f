#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "cosmo/result.hpp"

namespace cosmo {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

struct ParamSpec {
  std::string name;
  double lo = 0;  // mm
  double hi = 0;  // mm
};

/// A parametric part template. `load_face` / `fixed_face` name the face
/// groups the anchors sit on; `stiffness_params` / `bulk_params` index the
/// schema entries the built-in agents grow (to stiffen) or shrink (to save
/// material).
struct PartCategory {
  std::string id;
  std::vector<ParamSpec> params;
  std::string load_face;
  std::string fixed_face;
  std::vector<int> stiffness_params;
  std::vector<int> bulk_params;
  bool holdout = false;  // reserved for the generalization split
};

/// All bundled categories, fixed order.
const std::vector<PartCategory>& part_categories();
const PartCategory* find_category(std::string_view id);  // nullptr if absent
std::vector<std::string> training_category_ids();
std::vector<std::string> generalization_category_ids();

/// Quadrilateral boundary facet with a unit outward normal. Vertices are
/// ordered so the right-hand rule reproduces the normal.
struct Facet {
  std::array<int, 4> nodes;
  Vec3 normal;
};

struct FaceGroup {
  std::string label;
  std::vector<Facet> facets;
};

struct Anchor {
  std::string label;  // "load" or "fixed"
  Vec3 point;         // mm
};

/// Structured hexahedral mesh in mm. Every boundary facet belongs to exactly
/// one face group; anchors lie on their designated face group's surface.
struct MeshModel {
  std::string category;
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 8>> elements;  // hex8, trilinear corner order
  std::vector<FaceGroup> face_groups;
  std::vector<Anchor> anchors;
  double volume_mm3 = 0;
  double bbox_diag = 0;

  int group_index(std::string_view label) const;  // -1 if absent
  const Anchor* find_anchor(std::string_view label) const;  // first match
};

Status validate_params(const PartCategory& cat, const std::vector<double>& p);

/// Builds the structured hex mesh for one category, with face groups tagged
/// and load/fixed anchors placed on the designated functional faces.
/// `resolution` is the element count across the part's thinnest feature.
/// Deterministic: identical inputs give a bit-identical mesh.
Result<MeshModel> build_part(const PartCategory& cat,
                             const std::vector<double>& params, int resolution);
Result<MeshModel> build_part(std::string_view category_id,
                             const std::vector<double>& params, int resolution);

/// Face-group indices whose minimum point-to-facet distance from `point` is
/// <= eps (exact for the planar facets produced here). Empty match is the
/// NoFaceMatched error.
Result<std::vector<int>> match_faces(const MeshModel& mesh, const Vec3& point,
                                     double eps);

/// Default face-match tolerance: 1e-4 x bounding-box diagonal.
double default_face_eps(const MeshModel& mesh);

double point_facet_distance(const MeshModel& mesh, const Facet& facet,
                            const Vec3& point);
double facet_area(const MeshModel& mesh, const Facet& facet);
double face_group_area(const MeshModel& mesh, int group_index);

/// Volume of one hex by 2x2x2 Gauss quadrature of the Jacobian determinant
/// (exact for trilinear hexes).
double hex_volume(const std::array<Vec3, 8>& corners);

/// Plain-text mesh export (cosmo.mesh.v1): node / element / face-group /
/// anchor sections in fixed field order.
std::string write_mesh_text(const MeshModel& mesh);
Result<MeshModel> read_mesh_text(std::string_view text);

}  // namespace cosmo
