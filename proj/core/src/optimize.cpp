#include "dickecat/optimize.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "dickecat/errors.hpp"

namespace dickecat {

Maximum maximize_on_grid(const std::function<double(double)>& f,
                         const std::function<double(double)>& derivative, double lower,
                         double upper, int grid_points, double tolerance) {
  if (grid_points < 2 || !(upper > lower)) throw DomainError("maximize_on_grid: bad interval");
  const double step = (upper - lower) / grid_points;
  int best = 1;
  double best_value = f(lower + step);
  for (int i = 2; i <= grid_points; ++i) {
    const double v = f(lower + i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  Maximum result{lower + best * step, best_value, best_value};

  const double left = lower + (best - 1) * step;
  const double right = best == grid_points ? upper : lower + (best + 1) * step;

  // Golden section on [left, right].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = left;
  double b = right;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double golden = 0.5 * (a + b);
  const double golden_value = f(golden);
  if (golden_value > result.value) {
    result.argument = golden;
    result.value = golden_value;
  }

  if (derivative) {
    const double d_left = derivative(left);
    const double d_right = derivative(right);
    if (d_left > 0.0 && d_right < 0.0) {
      std::uintmax_t iterations = 200;
      const auto root = boost::math::tools::toms748_solve(
          derivative, left, right, d_left, d_right, boost::math::tools::eps_tolerance<double>(50),
          iterations);
      const double x = 0.5 * (root.first + root.second);
      const double v = f(x);
      // The root is the accurate argument; its value may trail the golden-section
      // value by the rounding error of f, which sums many terms.
      const double slack = 1e3 * std::numeric_limits<double>::epsilon() * std::abs(result.value);
      if (v >= result.best_grid_value && v >= result.value - slack) {
        result.argument = x;
        result.value = v;
      }
    }
  }
  return result;
}

}  // namespace dickecat
