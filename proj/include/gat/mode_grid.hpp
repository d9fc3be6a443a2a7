#pragma once

#include <Eigen/Dense>

namespace gat {

class Dispersion;

// Sorted wavevector samples with a common spacing dk. A grid may consist of
// several uniform windows separated by gaps (the mirrored bidirectional case);
// every sample carries the quadrature weight dk.
struct ModeGrid {
  Eigen::VectorXd k;
  double dk = 0.0;

  Eigen::Index size() const { return k.size(); }
  bool all_positive() const { return k.size() > 0 && k.minCoeff() > 0; }
};

void validate(const ModeGrid& grid);

ModeGrid uniform_grid(double k_lo, double k_hi, Eigen::Index n);

// [k_q - K, k_q + K] with n points, K clipped so that every k stays positive.
ModeGrid chiral_grid(double k_q, double K, Eigen::Index n);

// Windows around +k_q and -k_q with n points each, merged into one symmetric
// uniform grid when they overlap.
ModeGrid bidirectional_grid(double k_q, double K, Eigen::Index n);

// Drops samples outside the single-branch band of disp (warns if any dropped).
ModeGrid clip_to_band(const ModeGrid& grid, const Dispersion& disp);

bool same_grid(const ModeGrid& a, const ModeGrid& b);

}  // namespace gat
