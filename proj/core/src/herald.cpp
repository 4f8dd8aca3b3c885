#include "dickecat/herald.hpp"

#include <string>

#include "dickecat/errors.hpp"

namespace dickecat {
namespace {

// Photon-number slice of the ground state as a dense (N+1)-vector.
Eigen::VectorXd photon_slice(const GroundState& ground, int photons) {
  const DickeBasis& basis = ground.basis;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.params().atoms + 1);
  const std::size_t begin = basis.offset(photons);
  const std::size_t end = basis.offset(photons + 1);
  int k = basis.first_excitation(photons);
  for (std::size_t i = begin; i < end; ++i, k += 2) v[k] = ground.amplitudes[static_cast<Eigen::Index>(i)];
  return v;
}

}  // namespace

HeraldOutcome herald(const GroundState& ground, int photons) {
  const int cutoff = ground.basis.params().photon_cutoff;
  if (photons < 0 || photons > cutoff) {
    throw DomainError("herald: photon number " + std::to_string(photons) + " outside [0, " +
                      std::to_string(cutoff) + "]");
  }
  const Eigen::VectorXd slice = photon_slice(ground, photons);
  const double probability = slice.squaredNorm();
  if (!(probability >= 1e-300)) {
    throw DegenerateStateError("herald: outcome n = " + std::to_string(photons) +
                               " has vanishing probability");
  }
  const Eigen::VectorXcd psi = (slice / std::sqrt(probability)).cast<std::complex<double>>();
  return HeraldOutcome{photons, SpinVector(ground.basis.spin(), psi), probability};
}

std::vector<double> photon_distribution(const GroundState& ground) {
  const int cutoff = ground.basis.params().photon_cutoff;
  std::vector<double> p(static_cast<std::size_t>(cutoff) + 1);
  for (int n = 0; n <= cutoff; ++n) {
    const auto begin = static_cast<Eigen::Index>(ground.basis.offset(n));
    const auto count = static_cast<Eigen::Index>(ground.basis.offset(n + 1)) - begin;
    p[n] = ground.amplitudes.segment(begin, count).squaredNorm();
  }
  return p;
}

SpinDensityMatrix reduced_spin_density(const GroundState& ground) {
  const int dim = ground.basis.params().atoms + 1;
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= ground.basis.params().photon_cutoff; ++n) {
    const Eigen::VectorXd v = photon_slice(ground, n);
    rho.noalias() += v * v.transpose();
  }
  return SpinDensityMatrix(ground.basis.spin(), rho.cast<std::complex<double>>());
}

}  // namespace dickecat
