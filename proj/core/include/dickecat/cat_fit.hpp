#pragma once

#include <span>
#include <vector>

#include "dickecat/spin.hpp"

namespace dickecat {

struct CatFitOptions {
  int grid_points = 400;
  double tolerance = 1e-8;
  /// Fits whose best grid fidelity falls below this are flagged, not rejected.
  double low_quality_threshold = 0.5;
};

struct CatFit {
  double theta_opt = 0.0;
  double fidelity = 0.0;
  double l_opt = 0.0;  ///< sqrt(N) * theta_opt
  Parity parity = Parity::kEven;
  bool low_quality = false;
};

/// F(theta) = |<cat(theta)|psi>|^2 for theta in [0, pi/2]. theta = 0 uses the
/// limit of the cat family: |J,-J> (even) or |J,-J+1> (odd).
std::vector<double> fidelity_curve(const SpinVector& psi, Parity parity,
                                   std::span<const double> thetas);

/// theta_opt = argmax F over (0, pi/2]. psi must be normalized and supported on
/// m + J of the given parity (DomainError otherwise).
CatFit fit_cat(const SpinVector& psi, Parity parity, const CatFitOptions& options = {});

}  // namespace dickecat
