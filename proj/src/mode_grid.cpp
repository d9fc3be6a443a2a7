#include "gat/mode_grid.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gat/dispersion.hpp"
#include "gat/errors.hpp"

namespace gat {

void validate(const ModeGrid& grid) {
  if (grid.k.size() < 2) fail(ErrorKind::InvalidConfig, "mode grid needs at least two points");
  if (!(grid.dk > 0)) fail(ErrorKind::InvalidConfig, "mode grid spacing must be positive");
  for (Eigen::Index i = 1; i < grid.k.size(); ++i) {
    const double step = grid.k[i] - grid.k[i - 1];
    const double rel = std::abs(step - grid.dk) / grid.dk;
    if (rel > 1e-9 && step < grid.dk)
      fail(ErrorKind::InvalidConfig, "mode grid is not uniformly spaced at index " + std::to_string(i));
  }
}

ModeGrid uniform_grid(double k_lo, double k_hi, Eigen::Index n) {
  if (n < 2 || !(k_hi > k_lo)) fail(ErrorKind::InvalidConfig, "uniform grid needs n >= 2 and k_hi > k_lo");
  ModeGrid g;
  g.dk = (k_hi - k_lo) / double(n - 1);
  g.k.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) g.k[i] = k_lo + double(i) * g.dk;
  g.k[n - 1] = k_hi;
  return g;
}

ModeGrid chiral_grid(double k_q, double K, Eigen::Index n) {
  if (!(k_q > 0) || !(K > 0)) fail(ErrorKind::InvalidConfig, "chiral grid needs k_q > 0 and K > 0");
  if (n < 2) fail(ErrorKind::InvalidConfig, "chiral grid needs at least two points");
  const double K_max = k_q * double(n - 1) / double(n + 1);
  if (K > K_max) {
    warn("chiral grid half-width " + std::to_string(K) + " clipped to " + std::to_string(K_max) +
         " to keep k > 0");
    K = K_max;
  }
  return uniform_grid(k_q - K, k_q + K, n);
}

ModeGrid bidirectional_grid(double k_q, double K, Eigen::Index n) {
  if (!(k_q > 0) || !(K > 0)) fail(ErrorKind::InvalidConfig, "bidirectional grid needs k_q > 0 and K > 0");
  if (n < 2) fail(ErrorKind::InvalidConfig, "bidirectional grid needs at least two points per window");
  const double dk = 2.0 * K / double(n - 1);
  if (k_q - K <= 0.5 * dk) {
    // Windows overlap: one symmetric uniform grid over [-(k_q+K), k_q+K].
    const Eigen::Index m = Eigen::Index(std::ceil(2.0 * (k_q + K) / dk)) + 1;
    return uniform_grid(-(k_q + K), k_q + K, m);
  }
  ModeGrid right = uniform_grid(k_q - K, k_q + K, n);
  ModeGrid g;
  g.dk = right.dk;
  g.k.resize(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g.k[i] = -right.k[n - 1 - i];
    g.k[n + i] = right.k[i];
  }
  return g;
}

ModeGrid clip_to_band(const ModeGrid& grid, const Dispersion& disp) {
  std::vector<double> kept;
  kept.reserve(grid.k.size());
  for (Eigen::Index i = 0; i < grid.k.size(); ++i)
    if (disp.in_band(grid.k[i])) kept.push_back(grid.k[i]);
  if (kept.size() == size_t(grid.k.size())) return grid;
  if (kept.size() < 2) fail(ErrorKind::OutOfBand, "mode grid lies outside the band");
  warn("mode grid clipped to the band: " + std::to_string(grid.k.size() - Eigen::Index(kept.size())) +
       " of " + std::to_string(grid.k.size()) + " points dropped");
  ModeGrid g;
  g.dk = grid.dk;
  g.k = Eigen::Map<Eigen::VectorXd>(kept.data(), Eigen::Index(kept.size()));
  return g;
}

bool same_grid(const ModeGrid& a, const ModeGrid& b) {
  if (a.k.size() != b.k.size()) return false;
  if (std::abs(a.dk - b.dk) > 1e-12 * a.dk) return false;
  return ((a.k - b.k).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + a.k.cwiseAbs().maxCoeff()));
}

}  // namespace gat
