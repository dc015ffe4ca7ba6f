#pragma once

#include <array>

#include "cosmo/fem.hpp"
#include "cosmo/materials.hpp"
#include "cosmo/result.hpp"

namespace cosmo {

/// The per-design scalar feedback: peak displacement magnitude (mm), peak von
/// Mises stress (MPa), and material cost (yen).
struct FeedbackTuple {
  double u_max = 0;
  double sigma_max = 0;
  double cost = 0;
};

/// max_i sqrt(ux^2 + uy^2 + uz^2) over nodes.
Result<double> max_displacement(const FemField& field);

/// Equivalent stress sqrt(0.5*d_sigma + 3*d_tau) from the 6-component tensor
/// (xx, yy, zz, xy, yz, zx), where d_sigma sums the squared normal-component
/// differences and d_tau the squared shear components.
double von_mises(const std::array<double, 6>& stress);

Result<double> max_von_mises(const FemField& field);

/// Volume-mass-price chain: V[m^3] = volume_mm3 * 1e-9, mass = rho * V,
/// cost = mass * price. Unrounded; round only at display boundaries.
double compute_cost(double volume_mm3, const Material& mat);

/// Two-decimal display rounding used in reports.
double display_round(double value);

}  // namespace cosmo
