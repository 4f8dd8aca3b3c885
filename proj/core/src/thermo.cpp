#include "dickecat/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dickecat/errors.hpp"
#include "dickecat/optimize.hpp"
#include "dickecat/special.hpp"

namespace dickecat {
namespace {

constexpr int kInitialCutoff = 40;
constexpr int kMaxCutoff = 640;
constexpr double kTailBudget = 1e-10;

// sign(x)^p * exp(p ln|x|), with 0^0 = 1. Returns {sign, log magnitude};
// sign 0 means the factor vanishes.
std::pair<int, double> signed_log_power(double x, int p) {
  if (p == 0) return {1, 0.0};
  if (x == 0.0) return {0, 0.0};
  const int sign = (x < 0.0 && p % 2 != 0) ? -1 : 1;
  return {sign, p * std::log(std::abs(x))};
}

double row_tail(const Eigen::VectorXd& row) {
  const Eigen::Index n = row.size();
  const Eigen::Index count = std::min<Eigen::Index>(2, n);
  return row.tail(count).squaredNorm();
}

Eigen::VectorXd ground_row(const GaussianGroundState& gs, int photons, int boson_cutoff) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(boson_cutoff + 1);
  for (int l = photons % 2; l <= boson_cutoff; l += 2) row[l] = ground_fock_coefficient(gs, photons, l);
  return row;
}

void require_normalized(const BosonicState& psi, Parity parity) {
  if (std::abs(psi.squared_norm() - 1.0) > 1e-10) {
    throw DomainError("fit_boson_cat: psi is not normalized");
  }
  double off = 0.0;
  for (int j = 1 - parity_bit(parity); j <= psi.cutoff(); j += 2) off += std::norm(psi[j]);
  if (off > 1e-12) throw DomainError("fit_boson_cat: psi has weight outside the requested parity");
}

}  // namespace

double GaussianGroundState::r_plus() const { return std::atanh(tanh_plus); }
double GaussianGroundState::r_minus() const { return std::atanh(tanh_minus); }
double GaussianGroundState::normalization() const {
  return 1.0 / std::sqrt(std::cosh(squeeze_a) * std::cosh(squeeze_b));
}

GaussianGroundState gaussian_ground_near_critical(double omega, double distance) {
  if (!(omega > 0.0)) throw DomainError("gaussian_ground: omega must be positive");
  if (!(distance > 0.0 && distance <= 1.0)) {
    throw DomainError("gaussian_ground: requires 0 <= g/g_c < 1 (normal phase)");
  }
  GaussianGroundState gs;
  gs.omega = omega;
  gs.distance = distance;
  gs.g_over_gc = 1.0 - distance;
  gs.omega_minus = omega * std::sqrt(distance);
  gs.omega_plus = omega * std::sqrt(2.0 - distance);
  gs.squeeze_a = 0.25 * std::log(distance);
  gs.squeeze_b = 0.25 * std::log(2.0 - distance);
  gs.tanh_a = std::tanh(gs.squeeze_a);
  gs.tanh_b = std::tanh(gs.squeeze_b);
  gs.tanh_plus = 0.5 * (gs.tanh_a + gs.tanh_b);
  gs.tanh_minus = 0.5 * (gs.tanh_a - gs.tanh_b);
  return gs;
}

GaussianGroundState gaussian_ground(double omega, double g_over_gc) {
  if (!(g_over_gc >= 0.0 && g_over_gc < 1.0)) {
    throw DomainError("gaussian_ground: requires 0 <= g/g_c < 1 (normal phase)");
  }
  GaussianGroundState gs = gaussian_ground_near_critical(omega, 1.0 - g_over_gc);
  // Keep the caller's ratio exactly and recompute r_b from it.
  gs.g_over_gc = g_over_gc;
  gs.squeeze_b = 0.25 * std::log1p(g_over_gc);
  gs.squeeze_a = 0.25 * std::log1p(-g_over_gc);
  gs.omega_plus = omega * std::sqrt(1.0 + g_over_gc);
  gs.tanh_a = std::tanh(gs.squeeze_a);
  gs.tanh_b = std::tanh(gs.squeeze_b);
  gs.tanh_plus = 0.5 * (gs.tanh_a + gs.tanh_b);
  gs.tanh_minus = 0.5 * (gs.tanh_a - gs.tanh_b);
  return gs;
}

BosonicState::BosonicState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DomainError("BosonicState: empty amplitude vector");
}

std::complex<double> BosonicState::inner(const BosonicState& other) const {
  const Eigen::Index n = std::min(amplitudes_.size(), other.amplitudes_.size());
  return amplitudes_.head(n).dot(other.amplitudes_.head(n));
}

double TwoModeFockState::tail() const {
  const Eigen::Index rows = coefficients.rows();
  const Eigen::Index cols = coefficients.cols();
  const Eigen::Index r = std::min<Eigen::Index>(2, rows);
  const Eigen::Index c = std::min<Eigen::Index>(2, cols);
  const double last_rows = coefficients.bottomRows(r).squaredNorm();
  const double last_cols = coefficients.rightCols(c).squaredNorm();
  const double corner = coefficients.bottomRightCorner(r, c).squaredNorm();
  return last_rows + last_cols - corner;
}

double ground_fock_coefficient(const GaussianGroundState& gs, int photons, int bosons) {
  if (photons < 0 || bosons < 0) throw DomainError("ground_fock_coefficient: negative index");
  if ((photons + bosons) % 2 != 0) return 0.0;
  const double pair_weight = -0.5 * gs.tanh_plus;  // coefficient of a^dag^2 and b^dag^2
  const double cross_weight = gs.tanh_minus;       // coefficient of a^dag b^dag
  const double log_norm = std::log(gs.normalization()) +
                          0.5 * (log_factorial(photons) + log_factorial(bosons));
  double sum = 0.0;
  for (int m = photons % 2; m <= std::min(photons, bosons); m += 2) {
    const int k = (photons - m) / 2;
    const int l = (bosons - m) / 2;
    const auto [pair_sign, pair_log] = signed_log_power(pair_weight, k + l);
    const auto [cross_sign, cross_log] = signed_log_power(cross_weight, m);
    if (pair_sign == 0 || cross_sign == 0) continue;
    const double log_term = pair_log + cross_log - log_factorial(k) - log_factorial(l) -
                            log_factorial(m) + log_norm;
    sum += pair_sign * cross_sign * std::exp(log_term);
  }
  return sum;
}

TwoModeFockState expand_ground_fock(const GaussianGroundState& gs, int photon_cutoff,
                                    int boson_cutoff, double tail_budget) {
  if (photon_cutoff < 1 || boson_cutoff < 1) {
    throw DomainError("expand_ground_fock: cutoffs must be at least 1");
  }
  TwoModeFockState state;
  state.coefficients = Eigen::MatrixXd::Zero(photon_cutoff + 1, boson_cutoff + 1);
  for (int n = 0; n <= photon_cutoff; ++n) {
    for (int l = n % 2; l <= boson_cutoff; l += 2) {
      state.coefficients(n, l) = ground_fock_coefficient(gs, n, l);
    }
  }
  const double tail = state.tail();
  if (tail > tail_budget) {
    throw ResourceError("expand_ground_fock: truncation tail " + std::to_string(tail) +
                        " exceeds budget at cutoffs " + std::to_string(photon_cutoff) + "x" +
                        std::to_string(boson_cutoff) + "; use larger cutoffs");
  }
  return state;
}

TwoModeFockState expand_ground_fock_adaptive(const GaussianGroundState& gs, double tail_budget) {
  for (int cutoff = kInitialCutoff; cutoff <= kMaxCutoff; cutoff *= 2) {
    try {
      return expand_ground_fock(gs, cutoff, cutoff, tail_budget);
    } catch (const ResourceError&) {
      if (cutoff * 2 > kMaxCutoff) throw;
    }
  }
  throw InternalError("expand_ground_fock_adaptive: unreachable");
}

BosonHerald herald_boson(const TwoModeFockState& state, int photons) {
  if (photons < 0 || photons > state.photon_cutoff()) {
    throw DomainError("herald_boson: photon number outside the expansion");
  }
  const Eigen::VectorXd row = state.coefficients.row(photons).transpose();
  const double probability = row.squaredNorm();
  if (!(probability >= 1e-300)) {
    throw DegenerateStateError("herald_boson: outcome n = " + std::to_string(photons) +
                               " has vanishing probability");
  }
  return BosonHerald{photons,
                     BosonicState((row / std::sqrt(probability)).cast<std::complex<double>>()),
                     probability};
}

BosonHerald herald_thermodynamic(const GaussianGroundState& gs, int photons) {
  if (photons < 0) throw DomainError("herald_thermodynamic: negative photon number");
  for (int cutoff = std::max(kInitialCutoff, photons + 2); cutoff <= kMaxCutoff; cutoff *= 2) {
    const Eigen::VectorXd row = ground_row(gs, photons, cutoff);
    const double probability = row.squaredNorm();
    if (!(probability >= 1e-300)) {
      throw DegenerateStateError("herald_thermodynamic: outcome n = " + std::to_string(photons) +
                                 " has vanishing probability");
    }
    if (row_tail(row) <= kTailBudget * probability) {
      return BosonHerald{
          photons, BosonicState((row / std::sqrt(probability)).cast<std::complex<double>>()),
          probability};
    }
  }
  throw ResourceError("herald_thermodynamic: boson cutoff " + std::to_string(kMaxCutoff) +
                      " too small for n = " + std::to_string(photons));
}

BosonicState subtracted_squeezed(int subtractions, double squeeze, int cutoff) {
  if (subtractions < 0) throw DomainError("subtracted_squeezed: negative subtraction count");
  if (cutoff < subtractions + 2) throw ResourceError("subtracted_squeezed: cutoff too small");
  // <2p|S(r)|0> is proportional to (-tanh r / 2)^p sqrt((2p)!) / p!; b^dag^m maps
  // |2p> to sqrt((2p+m)!/(2p)!) |2p+m>.
  const double weight = -0.5 * std::tanh(squeeze);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(cutoff + 1);
  for (int p = 0; 2 * p + subtractions <= cutoff; ++p) {
    const auto [sign, log_pow] = signed_log_power(weight, p);
    if (sign == 0) continue;
    v[2 * p + subtractions] =
        sign * std::exp(log_pow + 0.5 * log_factorial(2 * p + subtractions) - log_factorial(p));
  }
  v /= v.norm();
  if (row_tail(v) > kTailBudget) {
    throw ResourceError("subtracted_squeezed: cutoff " + std::to_string(cutoff) +
                        " leaves a tail above 1e-10");
  }
  return BosonicState(v.cast<std::complex<double>>());
}

namespace {

// Coherent-state amplitudes <j|beta> for real beta >= 0.
double coherent_coefficient(double beta, int j) {
  if (beta == 0.0) return j == 0 ? 1.0 : 0.0;
  return std::exp(-0.5 * beta * beta + j * std::log(beta) - 0.5 * log_factorial(j));
}

class BosonCatFidelity {
 public:
  BosonCatFidelity(const BosonicState& psi, Parity parity) : psi_(psi), parity_(parity) {}

  double value(double beta) const {
    if (beta == 0.0) return std::norm(psi_[parity_bit(parity_)]);
    std::complex<double> o = 0.0;
    for (int j = parity_bit(parity_); j <= psi_.cutoff(); j += 2) o += coherent_coefficient(beta, j) * psi_[j];
    return std::norm(o) / weight(beta);
  }

  double derivative(double beta) const {
    if (beta == 0.0) return 0.0;
    std::complex<double> o = 0.0;
    std::complex<double> d_o = 0.0;
    for (int j = parity_bit(parity_); j <= psi_.cutoff(); j += 2) {
      const double c = coherent_coefficient(beta, j);
      o += c * psi_[j];
      d_o += c * (j / beta - beta) * psi_[j];
    }
    const double w = weight(beta);
    const double sign = parity_ == Parity::kEven ? -1.0 : 1.0;
    const double dw = sign * 2.0 * beta * std::exp(-2.0 * beta * beta);
    return (2.0 * (std::conj(o) * d_o).real() * w - std::norm(o) * dw) / (w * w);
  }

 private:
  // ||P|beta>||^2 = (1 +/- exp(-2 beta^2)) / 2
  double weight(double beta) const {
    const double x = -2.0 * beta * beta;
    return parity_ == Parity::kEven ? 0.5 * (1.0 + std::exp(x)) : -0.5 * std::expm1(x);
  }

  const BosonicState& psi_;
  Parity parity_;
};

}  // namespace

BosonicState boson_cat(double beta, Parity parity, int cutoff) {
  if (!(beta >= 0.0)) throw DomainError("boson_cat: beta must be non-negative");
  if (beta == 0.0 && parity == Parity::kOdd) {
    throw DegenerateStateError("boson_cat: odd cat at beta = 0 is the zero vector");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(cutoff + 1);
  for (int j = parity_bit(parity); j <= cutoff; j += 2) v[j] = coherent_coefficient(beta, j);
  v /= v.norm();
  return BosonicState(v.cast<std::complex<double>>());
}

BosonCatFit fit_boson_cat(const BosonicState& psi, Parity parity,
                          const BosonCatFitOptions& options) {
  require_normalized(psi, parity);
  const BosonCatFidelity f(psi, parity);
  const Maximum best = maximize_on_grid([&f](double b) { return f.value(b); },
                                        [&f](double b) { return f.derivative(b); }, 0.0,
                                        options.beta_max, options.grid_points, options.tolerance);
  return BosonCatFit{best.argument, best.value, parity,
                     best.best_grid_value < options.low_quality_threshold};
}

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw DomainError("fit_power_law: need at least two (x, y) pairs");
  }
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw DomainError("fit_power_law: values must be positive");
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_power_law: abscissae are all equal");
  const double slope = sxy / sxx;
  return PowerLawFit{slope, my - slope * mx};
}

PowerLawFit critical_scaling(int photons, std::span<const double> distances) {
  std::vector<double> probabilities;
  probabilities.reserve(distances.size());
  for (double d : distances) {
    if (!(d > 0.0 && d < 0.1)) {
      throw DomainError("critical_scaling: 1 - g/g_c must lie in (0, 0.1)");
    }
    probabilities.push_back(herald_thermodynamic(gaussian_ground_near_critical(1.0, d), photons).probability);
  }
  return fit_power_law(distances, probabilities);
}

}  // namespace dickecat
