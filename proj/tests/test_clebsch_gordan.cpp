#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "dickecat/clebsch_gordan.hpp"
#include "dickecat/errors.hpp"

using namespace dickecat;

namespace {

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

// Independent construction: for each M, diagonalize J^2 on the product states
// |m1, M - m1> and pick the eigenvector with eigenvalue J(J+1). The phase follows
// Condon-Shortley through an edge entry whose sign is fixed by the lowering
// chain: m1 = j1 is positive; otherwise m2 = j2 (or m1 = -j1 when neither edge
// reaches) carries (-1)^{j1+j2-J}. Doubled units; keys are (2 m1, 2 M).
std::map<std::pair<int, int>, double> eigenvector_table(int tj1, int tj2, int tj) {
  std::map<std::pair<int, int>, double> table;
  const double j1 = 0.5 * tj1, j2 = 0.5 * tj2, j = 0.5 * tj;
  const double phase = ((tj1 + tj2 - tj) / 2) % 2 == 0 ? 1.0 : -1.0;
  for (int tm = -tj; tm <= tj; tm += 2) {
    const int lo = std::max(-tj1, tm - tj2);
    const int hi = std::min(tj1, tm + tj2);
    const int size = (hi - lo) / 2 + 1;
    Eigen::MatrixXd jsq = Eigen::MatrixXd::Zero(size, size);
    for (int a = 0; a < size; ++a) {
      const double m1 = 0.5 * (lo + 2 * a), m2 = 0.5 * tm - m1;
      jsq(a, a) = j1 * (j1 + 1) + j2 * (j2 + 1) + 2 * m1 * m2;
      if (a + 1 < size) {
        // J1+ J2- connects |m1, m2> to |m1 + 1, m2 - 1>.
        jsq(a + 1, a) = jsq(a, a + 1) =
            std::sqrt((j1 - m1) * (j1 + m1 + 1)) * std::sqrt((j2 + m2) * (j2 - m2 + 1));
      }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jsq);
    Eigen::Index pick = 0;
    (solver.eigenvalues().array() - j * (j + 1)).abs().minCoeff(&pick);
    Eigen::VectorXd v = solver.eigenvectors().col(pick);
    int edge = 0;
    double sign = phase;
    if (tm >= tj1 - tj2) {
      edge = (tj1 - lo) / 2;
      sign = 1.0;
    } else if (tm >= tj2 - tj1) {
      edge = (tm - tj2 - lo) / 2;
    }
    if ((v[edge] > 0) != (sign > 0)) v = -v;
    for (int a = 0; a < size; ++a) table[{lo + 2 * a, tm}] = v[a];
  }
  return table;
}

}  // namespace

TEST(ClebschGordan, ScalarCoupling) {
  for (int tj = 0; tj <= 20; ++tj) {
    for (int tm = -tj; tm <= tj; tm += 2) {
      EXPECT_NEAR(clebsch_gordan(half(tj), half(tm), HalfInteger(0), HalfInteger(0), half(tj), half(tm)),
                  1.0, 1e-14);
    }
  }
}

TEST(ClebschGordan, TwoSpinHalves) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(clebsch_gordan(half(1), half(1), half(1), half(-1), HalfInteger(1), HalfInteger(0)), r, 1e-15);
  EXPECT_NEAR(clebsch_gordan(half(1), half(-1), half(1), half(1), HalfInteger(1), HalfInteger(0)), r, 1e-15);
  EXPECT_NEAR(clebsch_gordan(half(1), half(1), half(1), half(-1), HalfInteger(0), HalfInteger(0)), r, 1e-15);
  EXPECT_NEAR(clebsch_gordan(half(1), half(-1), half(1), half(1), HalfInteger(0), HalfInteger(0)), -r, 1e-15);
}

TEST(ClebschGordan, SelectionRulesReturnZero) {
  EXPECT_EQ(clebsch_gordan(HalfInteger(1), HalfInteger(0), HalfInteger(1), HalfInteger(1), HalfInteger(2),
                           HalfInteger(0)),
            0.0);
  EXPECT_EQ(clebsch_gordan(HalfInteger(1), HalfInteger(0), HalfInteger(1), HalfInteger(0), HalfInteger(3),
                           HalfInteger(0)),
            0.0);
}

TEST(ClebschGordan, InvalidQuantumNumbersThrow) {
  EXPECT_THROW(clebsch_gordan(HalfInteger(1), HalfInteger(2), HalfInteger(1), HalfInteger(0),
                              HalfInteger(1), HalfInteger(2)),
               DomainError);
  EXPECT_THROW(clebsch_gordan(half(1), HalfInteger(0), HalfInteger(1), HalfInteger(0), HalfInteger(1),
                              HalfInteger(0)),
               DomainError);
  EXPECT_THROW(clebsch_gordan(HalfInteger(-1), HalfInteger(0), HalfInteger(1), HalfInteger(0),
                              HalfInteger(1), HalfInteger(0)),
               DomainError);
}

TEST(ClebschGordan, MatchesEigenvectorOracleSmall) {
  for (int tj1 = 0; tj1 <= 8; ++tj1) {
    for (int tj2 = 0; tj2 <= 8; ++tj2) {
      for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2) {
        for (const auto& [key, expected] : eigenvector_table(tj1, tj2, tj)) {
          const auto [tm1, tm] = key;
          const double value =
              clebsch_gordan(half(tj1), half(tm1), half(tj2), half(tm - tm1), half(tj), half(tm));
          EXPECT_NEAR(value, expected, 1e-13) << tj1 << " " << tj2 << " " << tj << " " << tm1 << " " << tm;
        }
      }
    }
  }
}

TEST(ClebschGordan, MatchesEigenvectorOracleLarge) {
  // <60, 3; 40, -1 | 60, 2> and the rest of the same multiplet.
  const auto table = eigenvector_table(120, 80, 120);
  EXPECT_NEAR(clebsch_gordan(HalfInteger(60), HalfInteger(3), HalfInteger(40), HalfInteger(-1),
                             HalfInteger(60), HalfInteger(2)),
              table.at({6, 4}), 1e-11);
  double worst = 0.0;
  for (const auto& [key, expected] : table) {
    const auto [tm1, tm] = key;
    const double value =
        clebsch_gordan(half(120), half(tm1), half(80), half(tm - tm1), half(120), half(tm));
    worst = std::max(worst, std::abs(value - expected));
  }
  EXPECT_LT(worst, 1e-11);
}

TEST(ClebschGordan, StableAtTwoJNearFiveHundred) {
  const auto table = eigenvector_table(250, 160, 250);
  for (int tm : {250, 50, 0, -150}) {
    for (int tm1 : {tm - 20, tm - 2, tm, tm + 40}) {
      if (std::abs(tm1) > 250 || std::abs(tm - tm1) > 160 || (tm1 - 250) % 2 != 0) continue;
      const auto it = table.find({tm1, tm});
      const double expected = it == table.end() ? 0.0 : it->second;
      EXPECT_NEAR(clebsch_gordan(half(250), half(tm1), half(160), half(tm - tm1), half(250), half(tm)),
                  expected, 1e-10)
          << tm1 << " " << tm;
    }
  }
}

TEST(ClebschGordan, Orthogonality) {
  for (int tj1 : {1, 4, 9, 17, 40}) {
    for (int tj2 : {2, 5, 13, 40}) {
      for (int tm = -(tj1 + tj2); tm <= tj1 + tj2; tm += 2) {
        std::vector<int> js;
        for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2) {
          if (std::abs(tm) <= tj) js.push_back(tj);
        }
        for (int a : js) {
          for (int b : js) {
            double sum = 0.0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              const int tm2 = tm - tm1;
              if (std::abs(tm2) > tj2) continue;
              sum += clebsch_gordan(half(tj1), half(tm1), half(tj2), half(tm2), half(a), half(tm)) *
                     clebsch_gordan(half(tj1), half(tm1), half(tj2), half(tm2), half(b), half(tm));
            }
            EXPECT_NEAR(sum, a == b ? 1.0 : 0.0, 1e-10) << tj1 << " " << tj2 << " " << a << " " << b;
          }
        }
      }
    }
  }
}
