#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <gtest/gtest.h>

#include "dickecat/clebsch_gordan.hpp"
#include "dickecat/errors.hpp"
#include "dickecat/spin.hpp"
#include "dickecat/wigner.hpp"

using namespace dickecat;
using cd = std::complex<double>;

namespace {

SpinDensityMatrix random_density(int atoms, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  const int d = atoms + 1;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = cd(gauss(rng), gauss(rng));
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return SpinDensityMatrix(CollectiveSpin(atoms), rho);
}

// Integral of W sin(theta) over the sphere: Gauss-Legendre in cos(theta), trapezoid in phi.
double sphere_integral(const SpinWignerTransform& transform, const SpinDensityMatrix& rho) {
  using Rule = boost::math::quadrature::gauss<double, 40>;
  std::vector<double> thetas;
  std::vector<double> weights;
  const auto& nodes = Rule::abscissa();
  const auto& w = Rule::weights();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    thetas.push_back(std::acos(nodes[i]));
    weights.push_back(w[i]);
    if (nodes[i] != 0.0) {
      thetas.push_back(std::acos(-nodes[i]));
      weights.push_back(w[i]);
    }
  }
  const int phi_points = 2 * rho.spin().atoms() + 3;
  std::vector<double> phis(phi_points);
  for (int j = 0; j < phi_points; ++j) phis[j] = 2.0 * std::numbers::pi * j / phi_points;
  const WignerGrid grid = transform.evaluate(rho, thetas, phis);
  double total = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    total += weights[i] * grid.values.row(static_cast<Eigen::Index>(i)).sum();
  }
  return total * 2.0 * std::numbers::pi / phi_points;
}

}  // namespace

TEST(SphericalHarmonics, MatchStandardLibrary) {
  for (double theta : {0.0, 0.3, 1.2, 2.9, std::numbers::pi}) {
    const auto table = spherical_harmonics_at(40, theta);
    for (int q = 0; q <= 40; ++q) {
      for (int k = q; k <= 40; ++k) {
        EXPECT_NEAR(table[q][k - q], std::sph_legendre(k, q, theta), 1e-12) << k << " " << q << " " << theta;
      }
    }
  }
}

TEST(SpinWigner, MultipolesMatchRacahCoefficients) {
  for (int atoms : {3, 8, 13}) {
    const SpinDensityMatrix rho = random_density(atoms, 7u + atoms);
    const SpinWignerTransform transform{CollectiveSpin(atoms)};
    const auto t = transform.multipoles(rho);
    const HalfInteger j = HalfInteger::from_twice(atoms);
    for (int k = 0; k <= atoms; ++k) {
      for (int q = 0; q <= k; ++q) {
        cd expected = 0.0;
        for (int i = 0; i + q <= atoms; ++i) {
          const HalfInteger m = HalfInteger::from_twice(2 * i - atoms);
          expected += rho.elements()(i + q, i) *
                      clebsch_gordan(j, m, HalfInteger(k), HalfInteger(q), j, m + HalfInteger(q));
        }
        expected *= std::sqrt((2.0 * k + 1.0) / (atoms + 1.0));
        EXPECT_NEAR(std::abs(t[k][q] - expected), 0.0, 1e-13) << atoms << " " << k << " " << q;
      }
    }
  }
}

TEST(SpinWigner, MultipoleTableAccurateAtLargeSpin) {
  // Pure |J,m> states isolate the q = 0 column; compare against the Racah value.
  const int atoms = 200;
  const SpinWignerTransform transform{CollectiveSpin(atoms)};
  const HalfInteger j = HalfInteger::from_twice(atoms);
  for (int i : {0, 37, 100, 181}) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(atoms + 1, atoms + 1);
    e(i, i) = 1.0;
    const auto t = transform.multipoles(SpinDensityMatrix(CollectiveSpin(atoms), e));
    const HalfInteger m = HalfInteger::from_twice(2 * i - atoms);
    for (int k : {1, 17, 90, 150, 200}) {
      const double expected = std::sqrt((2.0 * k + 1.0) / (atoms + 1.0)) *
                              clebsch_gordan(j, m, HalfInteger(k), HalfInteger(0), j, m);
      EXPECT_NEAR(t[k][0].real(), expected, 1e-11) << i << " " << k;
    }
  }
}

TEST(SpinWigner, LowestStatePeaksAtSouthPoleAndIsAxial) {
  const CollectiveSpin spin(4);
  const auto rho = SpinDensityMatrix::pure(coherent_spin_state(spin, 0.0, 0.0));
  std::vector<double> thetas;
  for (int i = 0; i <= 60; ++i) thetas.push_back(std::numbers::pi * i / 60.0);
  std::vector<double> phis;
  for (int j = 0; j < 17; ++j) phis.push_back(2.0 * std::numbers::pi * j / 17.0);
  const WignerGrid grid = spin_wigner(rho, thetas, phis);
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  grid.values.maxCoeff(&row, &col);
  EXPECT_EQ(row, 60);
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    EXPECT_LT(grid.values.row(i).maxCoeff() - grid.values.row(i).minCoeff(), 1e-10);
  }
}

TEST(SpinWigner, MaximallyMixedIsUniform) {
  for (int atoms : {1, 6, 25}) {
    const auto rho = SpinDensityMatrix::maximally_mixed(CollectiveSpin(atoms));
    const auto [thetas, phis] = patch_axes(std::numbers::pi, 23, 19);
    const WignerGrid grid = spin_wigner(rho, thetas, phis);
    EXPECT_LT((grid.values.array() - 1.0 / (4.0 * std::numbers::pi)).abs().maxCoeff(), 1e-10);
  }
}

TEST(SpinWigner, NormalizedForRandomStates) {
  for (int atoms : {1, 2, 5, 10, 17, 30}) {
    const SpinWignerTransform transform{CollectiveSpin(atoms)};
    for (unsigned seed : {1u, 2u, 3u}) {
      EXPECT_NEAR(sphere_integral(transform, random_density(atoms, seed * 97u + atoms)), 1.0, 1e-6)
          << atoms << " " << seed;
    }
  }
}

TEST(SpinWigner, GroundStatePoleFrameMirrorsStandardFrame) {
  const auto rho = random_density(9, 4u);
  const SpinWignerTransform transform{CollectiveSpin(9)};
  for (double theta : {0.0, 0.4, 1.9}) {
    for (double phi : {0.0, 1.0, 4.0}) {
      EXPECT_NEAR(transform.value_at(rho, theta, phi, SphereFrame::kGroundStatePole),
                  transform.value_at(rho, std::numbers::pi - theta, phi, SphereFrame::kStandard), 1e-14);
    }
  }
}

TEST(SpinWigner, CoherentStatePeaksAtItsDirection) {
  const CollectiveSpin spin(20);
  const double theta0 = 0.6;
  const double phi0 = 2.0;
  const auto rho = SpinDensityMatrix::pure(coherent_spin_state(spin, theta0, phi0));
  const SpinWignerTransform transform{spin};
  const double peak = transform.value_at(rho, theta0, phi0, SphereFrame::kGroundStatePole);
  for (double dt : {-0.05, 0.05}) {
    EXPECT_LT(transform.value_at(rho, theta0 + dt, phi0, SphereFrame::kGroundStatePole), peak);
    EXPECT_LT(transform.value_at(rho, theta0, phi0 + dt, SphereFrame::kGroundStatePole), peak);
  }
}

TEST(SpinWigner, CatSignAtGroundStatePole) {
  const CollectiveSpin spin(30);
  const SpinWignerTransform transform{spin};
  for (double theta : {0.2, 0.35, 0.5}) {
    const auto even = SpinDensityMatrix::pure(cat_state(spin, theta, Parity::kEven));
    const auto odd = SpinDensityMatrix::pure(cat_state(spin, theta, Parity::kOdd));
    EXPECT_GT(transform.value_at(even, 0.0, 0.0, SphereFrame::kGroundStatePole), 0.0);
    EXPECT_LT(transform.value_at(odd, 0.0, 0.0, SphereFrame::kGroundStatePole), 0.0);
  }
}

TEST(SpinWigner, RejectsNonHermitianInput) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
  e(0, 2) = cd(0.0, 0.2);
  const SpinDensityMatrix rho(CollectiveSpin(2), e);
  const double t[] = {0.1};
  EXPECT_THROW(spin_wigner(rho, t, t), DomainError);
}

TEST(SpinWigner, RejectsSpinMismatch) {
  const SpinWignerTransform transform{CollectiveSpin(4)};
  EXPECT_THROW(transform.multipoles(SpinDensityMatrix::maximally_mixed(CollectiveSpin(5))), DomainError);
}

TEST(WignerCsv, RoundTripsExactly) {
  const auto rho = SpinDensityMatrix::pure(cat_state(CollectiveSpin(12), 0.4, Parity::kOdd));
  const auto [thetas, phis] = patch_axes(1.0, 7, 9);
  const WignerGrid grid = spin_wigner(rho, thetas, phis, SphereFrame::kGroundStatePole);
  std::stringstream buffer;
  write_wigner_csv(buffer, grid);
  const WignerGrid back = read_wigner_csv(buffer);
  EXPECT_EQ(back.thetas, grid.thetas);
  EXPECT_EQ(back.phis, grid.phis);
  EXPECT_EQ(back.values, grid.values);
}

TEST(WignerCsv, HeaderLayout) {
  WignerGrid grid{{0.0, 0.5}, {0.0, 1.0, 2.0}, Eigen::MatrixXd::Constant(2, 3, 0.25)};
  std::stringstream buffer;
  write_wigner_csv(buffer, grid);
  std::string header;
  std::getline(buffer, header);
  EXPECT_EQ(header, "theta\\phi,0,1,2");
  std::stringstream bad("theta,phi\n0,1\n");
  EXPECT_THROW(read_wigner_csv(bad), FormatError);
  std::stringstream ragged("theta\\phi,0,1\n0,1\n");
  EXPECT_THROW(read_wigner_csv(ragged), FormatError);
}

TEST(PatchAxes, InclusiveEndpoints) {
  const auto [thetas, phis] = patch_axes(0.8, 5, 4);
  EXPECT_DOUBLE_EQ(thetas.front(), 0.0);
  EXPECT_DOUBLE_EQ(thetas.back(), 0.8);
  EXPECT_DOUBLE_EQ(phis.back(), 2.0 * std::numbers::pi);
  EXPECT_THROW(patch_axes(0.8, 1, 4), DomainError);
}
