#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "dickecat/dicke.hpp"
#include "dickecat/errors.hpp"
#include "dickecat/herald.hpp"
#include "dickecat/wigner.hpp"

using namespace dickecat;

namespace {

const GroundState& critical_thirty() {
  static const GroundState g = solve_ground_state(DickeParams::at_ratio(30, 1.0));
  return g;
}

}  // namespace

TEST(Herald, DecoupledGroundState) {
  // The dense solver returns the exact vacuum, so other outcomes vanish identically.
  const GroundState g = dense_ground_state(DickeParams::at_ratio(6, 0.0, 1.0, 8), Parity::kEven);
  const HeraldOutcome zero = herald(g, 0);
  EXPECT_NEAR(zero.probability, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(zero.state[0]), 1.0, 1e-12);
  EXPECT_THROW(herald(g, 1), DegenerateStateError);
  const auto p = photon_distribution(g);
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  for (std::size_t n = 1; n < p.size(); ++n) EXPECT_LT(p[n], 1e-24);
  const SpinDensityMatrix rho = reduced_spin_density(g);
  EXPECT_NEAR(rho.elements()(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(rho.elements().cwiseAbs().sum(), 1.0, 1e-12);
}

TEST(Herald, PhotonNumberOutsideCutoff) {
  const GroundState& g = critical_thirty();
  EXPECT_THROW(herald(g, -1), DomainError);
  EXPECT_THROW(herald(g, 51), DomainError);
}

TEST(Herald, StateIsRenormalizedSlice) {
  const GroundState& g = critical_thirty();
  for (int n = 0; n <= 6; ++n) {
    const HeraldOutcome h = herald(g, n);
    EXPECT_NEAR(h.state.squared_norm(), 1.0, 1e-12);
    const double root = std::sqrt(h.probability);
    for (std::size_t i = g.basis.offset(n); i < g.basis.offset(n + 1); ++i) {
      const int k = g.basis.state(i).excitations;
      EXPECT_NEAR(h.state[k].real() * root, g.amplitudes[static_cast<Eigen::Index>(i)], 1e-15);
    }
  }
}

TEST(Herald, ParityOfOutcomeFixesSpinParity) {
  for (int atoms : {7, 30, 51}) {
    const GroundState g = solve_ground_state(DickeParams::at_ratio(atoms, 0.9, 1.0, 30));
    const auto p = photon_distribution(g);
    for (int n = 0; n <= 30; ++n) {
      if (p[n] <= 1e-12) continue;
      EXPECT_LT(off_parity_weight(herald(g, n).state, parity_of(n)), 1e-24) << atoms << " " << n;
    }
  }
}

TEST(Herald, DistributionSumsToOne) {
  const GroundState g = solve_ground_state(DickeParams::at_ratio(200, 0.9));
  const auto p = photon_distribution(g);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  for (int n : {0, 1, 4, 9}) EXPECT_NEAR(herald(g, n).probability, p[n], 1e-15);
}

TEST(Herald, CriticalThirtyProbabilitiesDecrease) {
  const auto p = photon_distribution(critical_thirty());
  for (int n = 1; n < 6; ++n) EXPECT_GT(p[n], p[n + 1]) << n;
  for (int n = 0; n <= 6; ++n) EXPECT_GT(p[n], 0.0);
}

TEST(Herald, ReducedDensityDecomposes) {
  const GroundState& g = critical_thirty();
  const SpinDensityMatrix rho = reduced_spin_density(g);
  EXPECT_NO_THROW(rho.check_invariants(1e-12));
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(31, 31);
  const auto p = photon_distribution(g);
  for (int n = 0; n <= 50; ++n) {
    if (p[n] < 1e-300) continue;
    const HeraldOutcome h = herald(g, n);
    sum += h.probability * h.state.amplitudes() * h.state.amplitudes().adjoint();
  }
  EXPECT_LT((sum - rho.elements()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Herald, WignerSignAtPoleFollowsPhotonParity) {
  const GroundState& g = critical_thirty();
  const SpinWignerTransform transform{CollectiveSpin(30)};
  for (int n = 0; n <= 6; ++n) {
    const auto rho = SpinDensityMatrix::pure(herald(g, n).state);
    for (double phi : {0.0, 1.0, 2.5}) {
      const double w = transform.value_at(rho, 0.0, phi, SphereFrame::kGroundStatePole);
      if (n % 2 == 0) {
        EXPECT_GT(w, 0.0) << n;
      } else {
        EXPECT_LT(w, 0.0) << n;
      }
    }
  }
}
