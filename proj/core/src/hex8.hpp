#pragma once

// Shared trilinear hex-8 shape machinery (internal, not installed).
// Corner order: bottom face counterclockwise (-1,-1,-1)..(-1,+1,-1), then the
// top face in the same sweep.

#include <array>

#include "cosmo/geometry.hpp"

namespace cosmo::hex8 {

inline constexpr double kGaussAbscissa = 0.57735026918962576450914878050196;

inline constexpr int kCornerSign[8][3] = {
    {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
    {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1}};

// 2x2x2 Gauss points (unit weights), corner-ordered.
inline constexpr double kGaussPoint[8][3] = {
    {-kGaussAbscissa, -kGaussAbscissa, -kGaussAbscissa},
    {kGaussAbscissa, -kGaussAbscissa, -kGaussAbscissa},
    {kGaussAbscissa, kGaussAbscissa, -kGaussAbscissa},
    {-kGaussAbscissa, kGaussAbscissa, -kGaussAbscissa},
    {-kGaussAbscissa, -kGaussAbscissa, kGaussAbscissa},
    {kGaussAbscissa, -kGaussAbscissa, kGaussAbscissa},
    {kGaussAbscissa, kGaussAbscissa, kGaussAbscissa},
    {-kGaussAbscissa, kGaussAbscissa, kGaussAbscissa}};

inline void shape_values(double xi, double eta, double zeta, double N[8]) {
  for (int a = 0; a < 8; ++a) {
    N[a] = 0.125 * (1 + kCornerSign[a][0] * xi) * (1 + kCornerSign[a][1] * eta) *
           (1 + kCornerSign[a][2] * zeta);
  }
}

// dN[a][d] = dN_a/d(xi_d) in natural coordinates.
inline void shape_derivs(double xi, double eta, double zeta, double dN[8][3]) {
  for (int a = 0; a < 8; ++a) {
    const double sx = kCornerSign[a][0];
    const double sy = kCornerSign[a][1];
    const double sz = kCornerSign[a][2];
    dN[a][0] = 0.125 * sx * (1 + sy * eta) * (1 + sz * zeta);
    dN[a][1] = 0.125 * sy * (1 + sx * xi) * (1 + sz * zeta);
    dN[a][2] = 0.125 * sz * (1 + sx * xi) * (1 + sy * eta);
  }
}

// Fills J[r][c] = d x_r / d xi_c and returns det J.
inline double jacobian(const std::array<Vec3, 8>& corners, double xi,
                       double eta, double zeta, double J[3][3]) {
  double dN[8][3];
  shape_derivs(xi, eta, zeta, dN);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) J[r][c] = 0;
  for (int a = 0; a < 8; ++a) {
    J[0][0] += corners[a].x * dN[a][0];
    J[0][1] += corners[a].x * dN[a][1];
    J[0][2] += corners[a].x * dN[a][2];
    J[1][0] += corners[a].y * dN[a][0];
    J[1][1] += corners[a].y * dN[a][1];
    J[1][2] += corners[a].y * dN[a][2];
    J[2][0] += corners[a].z * dN[a][0];
    J[2][1] += corners[a].z * dN[a][1];
    J[2][2] += corners[a].z * dN[a][2];
  }
  return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
         J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
         J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
}

inline void invert3(const double J[3][3], double det, double inv[3][3]) {
  const double s = 1.0 / det;
  inv[0][0] = s * (J[1][1] * J[2][2] - J[1][2] * J[2][1]);
  inv[0][1] = s * (J[0][2] * J[2][1] - J[0][1] * J[2][2]);
  inv[0][2] = s * (J[0][1] * J[1][2] - J[0][2] * J[1][1]);
  inv[1][0] = s * (J[1][2] * J[2][0] - J[1][0] * J[2][2]);
  inv[1][1] = s * (J[0][0] * J[2][2] - J[0][2] * J[2][0]);
  inv[1][2] = s * (J[0][2] * J[1][0] - J[0][0] * J[1][2]);
  inv[2][0] = s * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  inv[2][1] = s * (J[0][1] * J[2][0] - J[0][0] * J[2][1]);
  inv[2][2] = s * (J[0][0] * J[1][1] - J[0][1] * J[1][0]);
}

// Spatial gradients dN_a/dx at one natural point; returns det J.
inline double grad_shape(const std::array<Vec3, 8>& corners, double xi,
                         double eta, double zeta, double dNdx[8][3]) {
  double J[3][3];
  const double det = jacobian(corners, xi, eta, zeta, J);
  double inv[3][3];
  invert3(J, det, inv);
  double dN[8][3];
  shape_derivs(xi, eta, zeta, dN);
  for (int a = 0; a < 8; ++a) {
    for (int d = 0; d < 3; ++d) {
      dNdx[a][d] =
          dN[a][0] * inv[0][d] + dN[a][1] * inv[1][d] + dN[a][2] * inv[2][d];
    }
  }
  return det;
}

}  // namespace cosmo::hex8
