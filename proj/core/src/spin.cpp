#include "dickecat/spin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "dickecat/errors.hpp"
#include "dickecat/special.hpp"

namespace dickecat {
namespace {

// sqrt(C(N,k)) * c^a * s^b with c >= 0, evaluated in log space; 0^0 = 1.
double binomial_term(int atoms, int k, double c, double s, int a, int b) {
  if ((a > 0 && c == 0.0) || (b > 0 && s == 0.0)) return 0.0;
  double log_mag = 0.5 * log_binomial(atoms, k);
  if (a != 0) log_mag += a * std::log(std::abs(c));
  if (b != 0) log_mag += b * std::log(std::abs(s));
  const bool negative = (s < 0.0 && (b % 2 != 0)) != (c < 0.0 && (a % 2 != 0));
  const double mag = std::exp(log_mag);
  return negative ? -mag : mag;
}

}  // namespace

std::string_view to_string(Parity p) { return p == Parity::kEven ? "even" : "odd"; }

CollectiveSpin::CollectiveSpin(int atoms) : atoms_(atoms) {
  if (atoms < 1) throw DomainError("CollectiveSpin: atom count must be positive");
}

SpinVector::SpinVector(CollectiveSpin spin, Eigen::VectorXcd amplitudes)
    : spin_(spin), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != spin_.dimension()) {
    throw DomainError("SpinVector: expected " + std::to_string(spin_.dimension()) +
                      " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
}

SpinVector SpinVector::normalized() const {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw DegenerateStateError("SpinVector: cannot normalize the zero vector");
  return SpinVector(spin_, amplitudes_ / n);
}

std::complex<double> SpinVector::inner(const SpinVector& other) const {
  if (!(spin_ == other.spin_)) throw DomainError("SpinVector: dimension mismatch");
  return amplitudes_.dot(other.amplitudes_);
}

SpinDensityMatrix::SpinDensityMatrix(CollectiveSpin spin, Eigen::MatrixXcd elements)
    : spin_(spin), elements_(std::move(elements)) {
  if (elements_.rows() != spin_.dimension() || elements_.cols() != spin_.dimension()) {
    throw DomainError("SpinDensityMatrix: shape does not match the spin dimension");
  }
}

SpinDensityMatrix SpinDensityMatrix::pure(const SpinVector& state) {
  const Eigen::VectorXcd& v = state.amplitudes();
  return SpinDensityMatrix(state.spin(), v * v.adjoint());
}

SpinDensityMatrix SpinDensityMatrix::maximally_mixed(CollectiveSpin spin) {
  const int d = spin.dimension();
  return SpinDensityMatrix(spin, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

void SpinDensityMatrix::check_invariants(double tolerance) const {
  const double asym = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tolerance) {
    throw DomainError("SpinDensityMatrix: not Hermitian (deviation " + std::to_string(asym) + ")");
  }
  const double trace_error = std::abs(elements_.trace() - 1.0);
  if (trace_error > tolerance) {
    throw DomainError("SpinDensityMatrix: trace differs from 1 by " + std::to_string(trace_error));
  }
  const Eigen::MatrixXcd h = 0.5 * (elements_ + elements_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("SpinDensityMatrix: negative eigenvalue");
  }
}

Eigen::VectorXd coherent_amplitudes(const CollectiveSpin& spin, double theta) {
  const int n = spin.atoms();
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Eigen::VectorXd a(spin.dimension());
  for (int k = 0; k <= n; ++k) a[k] = binomial_term(n, k, c, s, n - k, k);
  return a;
}

Eigen::VectorXd coherent_amplitudes_derivative(const CollectiveSpin& spin, double theta) {
  const int n = spin.atoms();
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Eigen::VectorXd d(spin.dimension());
  for (int k = 0; k <= n; ++k) {
    const int a = n - k;
    const int b = k;
    double value = 0.0;
    if (a > 0) value -= 0.5 * a * binomial_term(n, k, c, s, a - 1, b + 1);
    if (b > 0) value += 0.5 * b * binomial_term(n, k, c, s, a + 1, b - 1);
    d[k] = value;
  }
  return d;
}

SpinVector coherent_spin_state(const CollectiveSpin& spin, double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("coherent_spin_state: theta must lie in [0, pi]");
  }
  // Log-space binomials drift by ~1e-13 per entry at large N; restore the norm.
  const Eigen::VectorXd a = coherent_amplitudes(spin, theta).normalized();
  Eigen::VectorXcd v(spin.dimension());
  for (int k = 0; k < spin.dimension(); ++k) v[k] = a[k] * std::polar(1.0, -k * phi);
  return SpinVector(spin, std::move(v));
}

SpinVector cat_state(const CollectiveSpin& spin, double theta, Parity parity) {
  if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi)) {
    throw DomainError("cat_state: theta must lie in [0, pi/2]");
  }
  if (theta == 0.0 && parity == Parity::kOdd) {
    throw DegenerateStateError("cat_state: odd cat at theta = 0 is the zero vector");
  }
  // |+theta,0> and |-theta,0> differ by (-1)^{m+J}, so the sum/difference keeps
  // one parity of m+J with doubled amplitude.
  const Eigen::VectorXd a = coherent_amplitudes(spin, theta);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(spin.dimension());
  for (int k = parity_bit(parity); k < spin.dimension(); k += 2) v[k] = a[k];
  const double norm = v.norm();
  if (norm == 0.0) throw DegenerateStateError("cat_state: component underflowed to zero");
  return SpinVector(spin, v / norm);
}

std::complex<double> css_overlap(const CollectiveSpin& spin, double theta1, double theta2) {
  return int_pow(std::cos(0.5 * (theta1 - theta2)), spin.atoms());
}

double fidelity(const SpinVector& a, const SpinVector& b) {
  if (!(a.spin() == b.spin())) throw DomainError("fidelity: dimension mismatch");
  return std::norm(a.inner(b));
}

double off_parity_weight(const SpinVector& state, Parity parity) {
  double w = 0.0;
  for (int k = 1 - parity_bit(parity); k < state.spin().dimension(); k += 2) {
    w += std::norm(state[k]);
  }
  return w;
}

Eigen::MatrixXd spin_jz(const CollectiveSpin& spin) {
  Eigen::VectorXd diag(spin.dimension());
  for (int k = 0; k < spin.dimension(); ++k) diag[k] = spin.m(k);
  return diag.asDiagonal();
}

Eigen::MatrixXd spin_jplus(const CollectiveSpin& spin) {
  const int n = spin.atoms();
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int k = 0; k < n; ++k) {
    jp(k + 1, k) = std::sqrt(static_cast<double>(n - k) * static_cast<double>(k + 1));
  }
  return jp;
}

Eigen::MatrixXcd spin_jx(const CollectiveSpin& spin) {
  const Eigen::MatrixXd jp = spin_jplus(spin);
  return (0.5 * (jp + jp.transpose())).cast<std::complex<double>>();
}

Eigen::MatrixXcd spin_jy(const CollectiveSpin& spin) {
  const Eigen::MatrixXd jp = spin_jplus(spin);
  const std::complex<double> minus_half_i(0.0, -0.5);
  return minus_half_i * (jp - jp.transpose()).cast<std::complex<double>>();
}

}  // namespace dickecat
