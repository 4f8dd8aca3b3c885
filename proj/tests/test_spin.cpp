#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "dickecat/errors.hpp"
#include "dickecat/spin.hpp"

using namespace dickecat;
using cd = std::complex<double>;

namespace {

// exp(-i theta sin(phi) Jx + i theta cos(phi) Jy) |J,-J> by dense matrix exponential.
Eigen::VectorXcd rotated_lowest(int atoms, double theta, double phi) {
  const CollectiveSpin spin(atoms);
  const Eigen::MatrixXcd generator =
      cd(0, -theta * std::sin(phi)) * spin_jx(spin) + cd(0, theta * std::cos(phi)) * spin_jy(spin);
  Eigen::VectorXcd lowest = Eigen::VectorXcd::Zero(spin.dimension());
  lowest[0] = 1.0;
  return generator.exp() * lowest;
}

double max_abs_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(CollectiveSpin, DimensionsAndIndices) {
  const CollectiveSpin spin(7);
  EXPECT_EQ(spin.dimension(), 8);
  EXPECT_DOUBLE_EQ(spin.j(), 3.5);
  EXPECT_DOUBLE_EQ(spin.m(0), -3.5);
  EXPECT_DOUBLE_EQ(spin.m(7), 3.5);
  EXPECT_THROW(CollectiveSpin(0), DomainError);
}

TEST(SpinOperators, SatisfyAngularMomentumAlgebra) {
  for (int atoms : {1, 2, 5, 12}) {
    const CollectiveSpin spin(atoms);
    const Eigen::MatrixXcd jx = spin_jx(spin);
    const Eigen::MatrixXcd jy = spin_jy(spin);
    const Eigen::MatrixXcd jz = spin_jz(spin).cast<cd>();
    const Eigen::MatrixXcd comm = jx * jy - jy * jx;
    EXPECT_LT((comm - cd(0, 1) * jz).cwiseAbs().maxCoeff(), 1e-12) << atoms;
    const Eigen::MatrixXcd casimir = jx * jx + jy * jy + jz * jz;
    const double jj = spin.j() * (spin.j() + 1.0);
    EXPECT_LT((casimir - jj * Eigen::MatrixXcd::Identity(atoms + 1, atoms + 1)).cwiseAbs().maxCoeff(),
              1e-11);
  }
}

TEST(CoherentSpinState, NoRotationAndFullFlip) {
  const CollectiveSpin spin(2);
  const auto up = coherent_spin_state(spin, 0.0, 0.0);
  EXPECT_NEAR(std::abs(up[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(up[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(up[2]), 0.0, 1e-15);
  const auto flipped = coherent_spin_state(spin, std::numbers::pi, 0.0);
  EXPECT_NEAR(std::abs(flipped[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(flipped[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(flipped[2] - 1.0), 0.0, 1e-15);
}

TEST(CoherentSpinState, MatchesDenseMatrixExponential) {
  EXPECT_LT(max_abs_diff(coherent_spin_state(CollectiveSpin(4), 0.3, 0.7).amplitudes(),
                         rotated_lowest(4, 0.3, 0.7)),
            1e-13);
  for (int atoms = 1; atoms <= 10; ++atoms) {
    for (double theta : {0.0, 0.11, 0.9, 2.0, std::numbers::pi}) {
      for (double phi : {0.0, 0.4, 2.5, 5.9}) {
        EXPECT_LT(max_abs_diff(coherent_spin_state(CollectiveSpin(atoms), theta, phi).amplitudes(),
                               rotated_lowest(atoms, theta, phi)),
                  1e-12)
            << atoms << " " << theta << " " << phi;
      }
    }
  }
}

TEST(CoherentSpinState, PhiZeroAmplitudesAreRealNonNegative) {
  const auto state = coherent_spin_state(CollectiveSpin(25), 1.1, 0.0);
  for (int i = 0; i <= 25; ++i) {
    EXPECT_EQ(state[i].imag(), 0.0);
    EXPECT_GE(state[i].real(), 0.0);
  }
}

TEST(CoherentSpinState, NormPreservedForAllAngles) {
  for (int atoms : {1, 30, 400, 2000}) {
    for (int step = 0; step <= 50; ++step) {
      const double theta = std::numbers::pi * step / 50.0;
      EXPECT_NEAR(coherent_spin_state(CollectiveSpin(atoms), theta, 0.3).squared_norm(), 1.0, 1e-12)
          << atoms << " " << theta;
    }
  }
}

TEST(CoherentSpinState, RejectsAnglesOutsideRange) {
  EXPECT_THROW(coherent_spin_state(CollectiveSpin(3), -0.1, 0.0), DomainError);
  EXPECT_THROW(coherent_spin_state(CollectiveSpin(3), 3.2, 0.0), DomainError);
}

TEST(CoherentAmplitudes, DerivativeMatchesFiniteDifference) {
  const CollectiveSpin spin(40);
  const double h = 1e-6;
  for (double theta : {0.05, 0.4, 1.3}) {
    const Eigen::VectorXd fd =
        (coherent_amplitudes(spin, theta + h) - coherent_amplitudes(spin, theta - h)) / (2 * h);
    EXPECT_LT((fd - coherent_amplitudes_derivative(spin, theta)).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(CatState, EquatorialEvenCat) {
  const auto cat = cat_state(CollectiveSpin(2), std::numbers::pi / 2, Parity::kEven);
  EXPECT_NEAR(cat[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(cat[1]), 0.0, 1e-15);
  EXPECT_NEAR(cat[2].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(CatState, OddCatIsNormalized) {
  EXPECT_NEAR(cat_state(CollectiveSpin(30), 0.2, Parity::kOdd).squared_norm(), 1.0, 1e-12);
}

TEST(CatState, MatchesSumOfCoherentStates) {
  const CollectiveSpin spin(10);
  const double theta = 0.5;
  // |-theta, 0> is |theta, pi>.
  const Eigen::VectorXcd plus = coherent_spin_state(spin, theta, 0.0).amplitudes();
  const Eigen::VectorXcd minus = coherent_spin_state(spin, theta, std::numbers::pi).amplitudes();
  for (Parity p : {Parity::kEven, Parity::kOdd}) {
    const double sign = p == Parity::kEven ? 1.0 : -1.0;
    const Eigen::VectorXcd sum = plus + sign * minus;
    const Eigen::VectorXcd expected = sum / sum.norm();
    EXPECT_LT(max_abs_diff(cat_state(spin, theta, p).amplitudes(), expected), 1e-14);
  }
}

TEST(CatState, ParitySupport) {
  for (int atoms : {5, 30, 101}) {
    const CollectiveSpin spin(atoms);
    for (double theta : {0.05, 0.3, 1.2}) {
      const Eigen::VectorXcd plus = coherent_spin_state(spin, theta, 0.0).amplitudes();
      const Eigen::VectorXcd minus = coherent_spin_state(spin, theta, std::numbers::pi).amplitudes();
      const Eigen::VectorXcd even = plus + minus;
      const Eigen::VectorXcd odd = plus - minus;
      for (int k = 0; k <= atoms; ++k) {
        if (k % 2 == 1) EXPECT_LT(std::abs(even[k]), 1e-14);
        if (k % 2 == 0) EXPECT_LT(std::abs(odd[k]), 1e-14);
      }
      EXPECT_EQ(off_parity_weight(cat_state(spin, theta, Parity::kEven), Parity::kEven), 0.0);
      EXPECT_EQ(off_parity_weight(cat_state(spin, theta, Parity::kOdd), Parity::kOdd), 0.0);
    }
  }
}

TEST(CatState, DegenerateAndOutOfRange) {
  const CollectiveSpin spin(6);
  EXPECT_THROW(cat_state(spin, 0.0, Parity::kOdd), DegenerateStateError);
  EXPECT_THROW(cat_state(spin, 1.7, Parity::kEven), DomainError);
  EXPECT_THROW(cat_state(spin, -0.2, Parity::kEven), DomainError);
  const auto limit = cat_state(spin, 0.0, Parity::kEven);
  EXPECT_NEAR(std::abs(limit[0]), 1.0, 1e-15);
}

TEST(CssOverlap, ClosedForm) {
  EXPECT_NEAR(std::abs(css_overlap(CollectiveSpin(9), 0.7, 0.7) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(css_overlap(CollectiveSpin(2), 0.0, std::numbers::pi)), 0.0, 1e-15);
  const CollectiveSpin spin(6);
  const cd direct =
      coherent_spin_state(spin, 0.4, 0.0).inner(coherent_spin_state(spin, 0.1, 0.0));
  EXPECT_NEAR(std::abs(css_overlap(spin, 0.4, 0.1) - direct), 0.0, 1e-14);
  EXPECT_NEAR(css_overlap(spin, 0.4, 0.1).real(), std::pow(std::cos(0.15), 6), 1e-14);
}

TEST(CssOverlap, LawHoldsOnGrid) {
  for (int atoms : {1, 8, 27, 50}) {
    const CollectiveSpin spin(atoms);
    for (int a = 0; a <= 12; ++a) {
      for (int b = 0; b <= 12; ++b) {
        const double t1 = std::numbers::pi * a / 12.0;
        const double t2 = std::numbers::pi * b / 12.0;
        const cd direct = coherent_spin_state(spin, t1, 0.0).inner(coherent_spin_state(spin, t2, 0.0));
        EXPECT_NEAR(std::abs(direct - std::pow(std::cos(0.5 * (t1 - t2)), atoms)), 0.0, 1e-10);
      }
    }
  }
}

TEST(Fidelity, BasicCases) {
  const CollectiveSpin spin(12);
  const auto psi = coherent_spin_state(spin, 0.8, 1.3);
  EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-14);
  EXPECT_NEAR(fidelity(coherent_spin_state(spin, 0.0, 0.0),
                       coherent_spin_state(spin, std::numbers::pi, 0.0)),
              0.0, 1e-15);
  // |<cat|+theta>|^2 = (1 + cos^N theta)^2 / (2 (1 + cos^N theta)) = (1 + cos^N theta) / 2
  const double theta = 0.35;
  const double c = std::pow(std::cos(theta), 12);
  EXPECT_NEAR(fidelity(cat_state(spin, theta, Parity::kEven), coherent_spin_state(spin, theta, 0.0)),
              0.5 * (1.0 + c), 1e-14);
  EXPECT_THROW(fidelity(psi, coherent_spin_state(CollectiveSpin(11), 0.1, 0.0)), DomainError);
}

TEST(SpinDensityMatrix, Invariants) {
  const CollectiveSpin spin(4);
  EXPECT_NO_THROW(SpinDensityMatrix::maximally_mixed(spin).check_invariants());
  EXPECT_NO_THROW(SpinDensityMatrix::pure(cat_state(spin, 0.5, Parity::kOdd)).check_invariants());
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(5, 5) / 5.0;
  bad(0, 1) = cd(0.1, 0.0);
  EXPECT_THROW(SpinDensityMatrix(spin, bad).check_invariants(), DomainError);
  Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(5, 5);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(SpinDensityMatrix(spin, negative).check_invariants(), DomainError);
}
