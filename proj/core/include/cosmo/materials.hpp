#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cosmo/result.hpp"

namespace cosmo {

/// Isotropic linear-elastic material with pricing data.
/// Units: E and sigma_allow in MPa, rho in kg/m^3, price in yen/kg.
/// The allowable stress doubles as the stress constraint bound: a design is
/// stress-feasible iff its peak von Mises stress is <= sigma_allow of the
/// chosen material.
struct Material {
  std::string name;
  double E = 0;
  double nu = 0;
  double rho = 0;
  double price = 0;
  double sigma_allow = 0;
};

/// Ordered collection of materials with unique names. Immutable after load;
/// safe to share across threads.
class MaterialLibrary {
 public:
  MaterialLibrary() = default;

  /// The bundled default library (compiled in from core/data/materials.txt).
  static const MaterialLibrary& builtin();

  /// Parse the line format `name|E|nu|rho|price|sigma_allow`; `#` starts a
  /// comment, blank lines are skipped.
  static Result<MaterialLibrary> parse(std::string_view text);
  static Result<MaterialLibrary> load(const std::string& path);

  /// Exact name match after trimming surrounding whitespace from the query.
  Result<Material> lookup(std::string_view name) const;
  bool contains(std::string_view name) const { return lookup(name).ok(); }

  const std::vector<Material>& materials() const { return materials_; }
  std::size_t size() const { return materials_.size(); }
  bool empty() const { return materials_.empty(); }

  /// Serialize back to the line format (no comments).
  std::string to_text() const;

 private:
  std::vector<Material> materials_;
};

/// Field invariants: E > 0, 0 <= nu < 0.5, rho > 0, price >= 0,
/// sigma_allow > 0, non-empty name.
Status validate(const Material& m);

std::string_view trim(std::string_view s);

}  // namespace cosmo
