#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dickecat/spin.hpp"

namespace dickecat {

/// Normal-phase ground state of the resonant Dicke model for N -> infinity:
/// two oscillators squeezed by r_a, r_b and mixed on a balanced beam splitter.
struct GaussianGroundState {
  double omega = 1.0;
  double g_over_gc = 0.0;
  double distance = 1.0;      ///< 1 - g/g_c, kept separately for precision near g_c
  double omega_minus = 1.0;   ///< omega sqrt(1 - g/g_c)
  double omega_plus = 1.0;    ///< omega sqrt(1 + g/g_c)
  double squeeze_a = 0.0;     ///< r_a = ln(Omega_-/omega)/2 <= 0
  double squeeze_b = 0.0;     ///< r_b = ln(Omega_+/omega)/2 >= 0
  double tanh_a = 0.0;
  double tanh_b = 0.0;
  double tanh_plus = 0.0;     ///< (tanh r_a + tanh r_b)/2
  double tanh_minus = 0.0;    ///< (tanh r_a - tanh r_b)/2

  double r_plus() const;
  double r_minus() const;
  /// 1/sqrt(cosh r_a cosh r_b)
  double normalization() const;
};

/// Throws DomainError unless 0 <= g/g_c < 1 and omega > 0.
GaussianGroundState gaussian_ground(double omega, double g_over_gc);
/// Same state parameterized by 1 - g/g_c in (0, 1].
GaussianGroundState gaussian_ground_near_critical(double omega, double distance);

/// Single-mode state in a truncated Fock basis |0> .. |cutoff>.
class BosonicState {
 public:
  explicit BosonicState(Eigen::VectorXcd amplitudes);

  int cutoff() const noexcept { return static_cast<int>(amplitudes_.size()) - 1; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  std::complex<double> operator[](int n) const { return amplitudes_[n]; }
  double squared_norm() const { return amplitudes_.squaredNorm(); }
  std::complex<double> inner(const BosonicState& other) const;

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Coefficients c_{n,l} of the photon (n) / collective-boson (l) Fock expansion.
/// All coefficients are real for real squeezing parameters.
struct TwoModeFockState {
  Eigen::MatrixXd coefficients;  ///< (photon_cutoff+1) x (boson_cutoff+1)

  int photon_cutoff() const { return static_cast<int>(coefficients.rows()) - 1; }
  int boson_cutoff() const { return static_cast<int>(coefficients.cols()) - 1; }
  /// Weight in the last two rows and last two columns (both parities).
  double tail() const;
};

/// One coefficient of
///   |G> = exp(-(tanh r_+/2)(a^dag^2 + b^dag^2) + tanh r_- a^dag b^dag)|0,0> / sqrt(cosh r_a cosh r_b),
/// a finite sum over the a^dag^{2k+m} b^dag^{2l+m} terms with 2k+m = n.
double ground_fock_coefficient(const GaussianGroundState& gs, int photons, int bosons);

/// Full truncated expansion. ResourceError if tail() exceeds tail_budget.
TwoModeFockState expand_ground_fock(const GaussianGroundState& gs, int photon_cutoff,
                                    int boson_cutoff, double tail_budget = 1e-10);

/// Square cutoffs 40, 80, ... up to 640 until the tail fits the budget.
TwoModeFockState expand_ground_fock_adaptive(const GaussianGroundState& gs,
                                             double tail_budget = 1e-10);

struct BosonHerald {
  int photons = 0;
  BosonicState state;
  double probability = 0.0;
};

/// Row n of the expansion, renormalized; probability is its squared norm.
BosonHerald herald_boson(const TwoModeFockState& state, int photons);

/// Row n computed directly from the Gaussian parameters with the boson cutoff
/// doubled from 40 until the row tail is below 1e-10 of the row weight (ceiling
/// 640). Unlike the full expansion it needs no photon cutoff, so it stays usable
/// arbitrarily close to g_c where the photon distribution becomes heavy-tailed.
BosonHerald herald_thermodynamic(const GaussianGroundState& gs, int photons);

/// Normalized b^dag^m S(r)|0>, S(r) = exp(r/2 (b^2 - b^dag^2)). ResourceError if
/// the weight in the last two Fock levels exceeds 1e-10.
BosonicState subtracted_squeezed(int subtractions, double squeeze, int cutoff);

/// (|beta> +/- |-beta>) normalized, real beta >= 0, truncated at `cutoff`.
BosonicState boson_cat(double beta, Parity parity, int cutoff);

struct BosonCatFitOptions {
  int grid_points = 400;
  double beta_max = 6.0;
  double tolerance = 1e-8;
  double low_quality_threshold = 0.5;
};

struct BosonCatFit {
  double beta_opt = 0.0;
  double fidelity = 0.0;
  Parity parity = Parity::kEven;
  bool low_quality = false;
};

/// beta_opt = argmax |<cat(beta)|psi>|^2 over (0, beta_max].
BosonCatFit fit_boson_cat(const BosonicState& psi, Parity parity,
                          const BosonCatFitOptions& options = {});

/// Cat size reached for N -> infinity: 2 beta_opt.
inline double lopt_limit(double beta_opt) { return 2.0 * beta_opt; }

struct PowerLawFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
};

/// Least-squares line through (ln x, ln y). DomainError for fewer than two
/// distinct positive abscissae or a non-positive ordinate.
PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

/// Exponent of P(n) against 1 - g/g_c over the caller's window of distances,
/// each in (0, 0.1).
PowerLawFit critical_scaling(int photons, std::span<const double> distances);

}  // namespace dickecat
