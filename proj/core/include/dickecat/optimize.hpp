#pragma once

#include <functional>

namespace dickecat {

struct Maximum {
  double argument = 0.0;
  double value = 0.0;
  double best_grid_value = 0.0;
};

/// Maximizes f on (lower, upper]: scans `grid_points` equally spaced points
/// lower + i (upper - lower) / grid_points, i = 1..grid_points, then narrows the
/// bracket around the best one by golden-section search down to `tolerance`.
///
/// When `derivative` is given and changes sign across the bracket, its root is
/// also located (TOMS 748) and kept if it scores higher; golden section alone
/// stalls near sqrt(machine epsilon) in the argument because f is flat at the top.
/// The result never scores below the best grid point.
Maximum maximize_on_grid(const std::function<double(double)>& f,
                         const std::function<double(double)>& derivative, double lower,
                         double upper, int grid_points, double tolerance);

}  // namespace dickecat
