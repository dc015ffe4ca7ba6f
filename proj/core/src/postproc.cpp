#include "cosmo/postproc.hpp"

#include <cmath>

namespace cosmo {

Result<double> max_displacement(const FemField& field) {
  if (field.nodal_displacements.empty()) {
    return Result<double>::failure(ErrorCode::EmptyField,
                                   "no nodal displacements");
  }
  double best = 0;
  for (const Vec3& u : field.nodal_displacements) {
    best = std::max(best, u.norm());
  }
  return best;
}

double von_mises(const std::array<double, 6>& s) {
  const double d_sigma = (s[0] - s[1]) * (s[0] - s[1]) +
                         (s[1] - s[2]) * (s[1] - s[2]) +
                         (s[2] - s[0]) * (s[2] - s[0]);
  const double d_tau = s[3] * s[3] + s[4] * s[4] + s[5] * s[5];
  return std::sqrt(0.5 * d_sigma + 3.0 * d_tau);
}

Result<double> max_von_mises(const FemField& field) {
  if (field.element_stresses.empty()) {
    return Result<double>::failure(ErrorCode::EmptyField,
                                   "no element stresses");
  }
  double best = 0;
  for (const auto& s : field.element_stresses) {
    best = std::max(best, von_mises(s));
  }
  return best;
}

double compute_cost(double volume_mm3, const Material& mat) {
  const double volume_m3 = volume_mm3 * 1e-9;
  const double mass_kg = mat.rho * volume_m3;
  return mass_kg * mat.price;
}

double display_round(double value) {
  return std::round(value * 100.0) / 100.0;
}

}  // namespace cosmo
