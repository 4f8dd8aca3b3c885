#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace dickecat {

enum class Parity { kEven, kOdd };

constexpr Parity parity_of(int value) { return (value % 2 == 0) ? Parity::kEven : Parity::kOdd; }
constexpr Parity flip(Parity p) { return p == Parity::kEven ? Parity::kOdd : Parity::kEven; }
constexpr int parity_bit(Parity p) { return p == Parity::kEven ? 0 : 1; }
std::string_view to_string(Parity p);

/// Total spin J = N/2 of N two-level atoms. Basis index i stands for m = i - J,
/// so the index doubles as the excitation count m + J.
class CollectiveSpin {
 public:
  explicit CollectiveSpin(int atoms);

  int atoms() const noexcept { return atoms_; }
  double j() const noexcept { return 0.5 * atoms_; }
  int dimension() const noexcept { return atoms_ + 1; }
  double m(int index) const noexcept { return index - j(); }

  friend bool operator==(const CollectiveSpin&, const CollectiveSpin&) = default;

 private:
  int atoms_;
};

/// Pure state on the (N+1)-dimensional symmetric subspace.
class SpinVector {
 public:
  SpinVector(CollectiveSpin spin, Eigen::VectorXcd amplitudes);

  const CollectiveSpin& spin() const noexcept { return spin_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  std::complex<double> operator[](int index) const { return amplitudes_[index]; }

  double squared_norm() const { return amplitudes_.squaredNorm(); }
  SpinVector normalized() const;
  /// <this|other>
  std::complex<double> inner(const SpinVector& other) const;

 private:
  CollectiveSpin spin_;
  Eigen::VectorXcd amplitudes_;
};

/// rho_{mm'} stored at (m+J, m'+J).
class SpinDensityMatrix {
 public:
  SpinDensityMatrix(CollectiveSpin spin, Eigen::MatrixXcd elements);

  static SpinDensityMatrix pure(const SpinVector& state);
  static SpinDensityMatrix maximally_mixed(CollectiveSpin spin);

  const CollectiveSpin& spin() const noexcept { return spin_; }
  const Eigen::MatrixXcd& elements() const noexcept { return elements_; }

  /// Throws DomainError unless Hermitian and unit-trace within `tolerance`
  /// and no eigenvalue falls below -1e-10.
  void check_invariants(double tolerance = 1e-12) const;

 private:
  CollectiveSpin spin_;
  Eigen::MatrixXcd elements_;
};

/// Real amplitudes of |theta, 0> for signed theta in [-pi, pi]:
/// sqrt(C(2J, J+m)) cos^{J-m}(theta/2) sin^{J+m}(theta/2).
Eigen::VectorXd coherent_amplitudes(const CollectiveSpin& spin, double theta);

/// d/dtheta of coherent_amplitudes.
Eigen::VectorXd coherent_amplitudes_derivative(const CollectiveSpin& spin, double theta);

/// R(theta, phi)|J,-J> with R = exp(-i theta sin(phi) Jx + i theta cos(phi) Jy).
/// Amplitudes are coherent_amplitudes(theta) times exp(-i (m+J) phi).
SpinVector coherent_spin_state(const CollectiveSpin& spin, double theta, double phi);

/// (|+theta,0> +/- |-theta,0>) / sqrt(2 (1 +/- cos^{2J} theta)), theta in [0, pi/2].
/// theta = 0 with odd parity has no limit vector at the requested normalization
/// and throws DegenerateStateError.
SpinVector cat_state(const CollectiveSpin& spin, double theta, Parity parity);

/// <theta1,0|theta2,0> = cos^{2J}((theta1 - theta2)/2).
std::complex<double> css_overlap(const CollectiveSpin& spin, double theta1, double theta2);

/// |<a|b>|^2.
double fidelity(const SpinVector& a, const SpinVector& b);

/// Squared weight of `state` on basis indices whose parity differs from `parity`.
double off_parity_weight(const SpinVector& state, Parity parity);

/// Collective spin operators in the |J,m> basis (index = m + J).
Eigen::MatrixXd spin_jz(const CollectiveSpin& spin);
Eigen::MatrixXd spin_jplus(const CollectiveSpin& spin);
Eigen::MatrixXcd spin_jx(const CollectiveSpin& spin);
Eigen::MatrixXcd spin_jy(const CollectiveSpin& spin);

}  // namespace dickecat
