#include "dickecat/cat_fit.hpp"

#include <cmath>
#include <numbers>

#include "dickecat/errors.hpp"
#include "dickecat/optimize.hpp"

namespace dickecat {
namespace {

// F(theta) = |<a(theta)|P psi>|^2 / ||P a(theta)||^2 with a = |theta,0> and P the
// parity projector; ||P a||^2 = (1 +/- cos^N theta) / 2 is evaluated with expm1
// and log1p so the odd branch stays accurate as theta -> 0.
class CatFidelity {
 public:
  CatFidelity(const SpinVector& psi, Parity parity) : psi_(psi), parity_(parity) {}

  double value(double theta) const {
    if (theta == 0.0) return std::norm(psi_[parity_bit(parity_)]);
    const auto a = coherent_amplitudes(psi_.spin(), theta);
    return std::norm(overlap(a)) / weight(theta);
  }

  double derivative(double theta) const {
    if (theta == 0.0) return 0.0;  // F is even in theta
    const auto a = coherent_amplitudes(psi_.spin(), theta);
    const auto da = coherent_amplitudes_derivative(psi_.spin(), theta);
    const std::complex<double> o = overlap(a);
    const std::complex<double> d_o = overlap(da);
    const double w = weight(theta);
    const double n = psi_.spin().atoms();
    const double sign = parity_ == Parity::kEven ? -1.0 : 1.0;
    const double dw = sign * 0.5 * n * std::pow(std::cos(theta), n - 1.0) * std::sin(theta);
    return (2.0 * (std::conj(o) * d_o).real() * w - std::norm(o) * dw) / (w * w);
  }

 private:
  std::complex<double> overlap(const Eigen::VectorXd& a) const {
    std::complex<double> acc = 0.0;
    for (int k = parity_bit(parity_); k < a.size(); k += 2) acc += a[k] * psi_[k];
    return acc;
  }

  double weight(double theta) const {
    const double n = psi_.spin().atoms();
    const double c = std::cos(theta);
    if (parity_ == Parity::kEven) return 0.5 * (1.0 + std::pow(c, n));
    if (c <= 0.0) return 0.5;
    const double half_sine = std::sin(0.5 * theta);
    return -0.5 * std::expm1(n * std::log1p(-2.0 * half_sine * half_sine));
  }

  const SpinVector& psi_;
  Parity parity_;
};

void require_fit_input(const SpinVector& psi, Parity parity) {
  if (std::abs(psi.squared_norm() - 1.0) > 1e-10) throw DomainError("fit_cat: psi is not normalized");
  if (off_parity_weight(psi, parity) > 1e-12) {
    throw DomainError("fit_cat: psi has weight outside the requested parity");
  }
}

}  // namespace

std::vector<double> fidelity_curve(const SpinVector& psi, Parity parity,
                                   std::span<const double> thetas) {
  require_fit_input(psi, parity);
  const CatFidelity f(psi, parity);
  std::vector<double> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi)) {
      throw DomainError("fidelity_curve: theta must lie in [0, pi/2]");
    }
    out.push_back(f.value(theta));
  }
  return out;
}

CatFit fit_cat(const SpinVector& psi, Parity parity, const CatFitOptions& options) {
  require_fit_input(psi, parity);
  const CatFidelity f(psi, parity);
  const Maximum best = maximize_on_grid([&f](double t) { return f.value(t); },
                                        [&f](double t) { return f.derivative(t); }, 0.0,
                                        0.5 * std::numbers::pi, options.grid_points,
                                        options.tolerance);
  CatFit fit;
  fit.theta_opt = best.argument;
  fit.fidelity = best.value;
  fit.l_opt = std::sqrt(static_cast<double>(psi.spin().atoms())) * best.argument;
  fit.parity = parity;
  fit.low_quality = best.best_grid_value < options.low_quality_threshold;
  return fit;
}

}  // namespace dickecat
