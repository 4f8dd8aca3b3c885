#include "dickecat/clebsch_gordan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dickecat/errors.hpp"
#include "dickecat/special.hpp"

namespace dickecat {
namespace {

// Integer arguments of the Racah sum
//   sum_z (-1)^z / [z! (a-z)! (b-z)! (c-z)! (d+z)! (e+z)!].
struct RacahSum {
  int a, b, c, d, e;
  int z_min, z_max;

  double log_term(int z) const {
    return -(log_factorial(z) + log_factorial(a - z) + log_factorial(b - z) + log_factorial(c - z) +
             log_factorial(d + z) + log_factorial(e + z));
  }
};

// Returns sign * log|sum| if the double-precision sum keeps enough digits.
std::optional<std::pair<int, double>> sum_in_double(const RacahSum& r) {
  double log_max = -INFINITY;
  for (int z = r.z_min; z <= r.z_max; ++z) log_max = std::max(log_max, r.log_term(z));
  double s = 0.0;
  for (int z = r.z_min; z <= r.z_max; ++z) {
    const double t = std::exp(r.log_term(z) - log_max);
    s += (z % 2 == 0) ? t : -t;
  }
  // Every term is at most 1 after scaling and carries a few ulps from the
  // log-factorials; keeping 13 digits needs the sum to stay near that scale.
  if (std::abs(s) < 0.1) return std::nullopt;
  return std::pair{s > 0 ? 1 : -1, log_max + std::log(std::abs(s))};
}

// Same sum, built from the exact term ratio in `Digits` decimal digits,
// relative to the z_min term.
template <unsigned Digits>
std::optional<std::pair<int, double>> sum_in_multiprecision(const RacahSum& r, bool accept_zero) {
  using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
  Real term = 1;
  Real sum = 1;
  Real largest = 1;
  for (int z = r.z_min; z < r.z_max; ++z) {
    term *= -Real((r.a - z)) * (r.b - z) * (r.c - z);
    term /= Real((z + 1)) * (r.d + z + 1) * (r.e + z + 1);
    sum += term;
    largest = std::max(largest, Real(abs(term)));
  }
  const Real threshold = largest * pow(Real(10), -static_cast<int>(Digits) + 20);
  if (abs(sum) <= threshold) {
    if (accept_zero) return std::pair{0, 0.0};
    return std::nullopt;
  }
  const int sign = (sum > 0) == (r.z_min % 2 == 0) ? 1 : -1;
  const double log_abs = static_cast<double>(log(abs(sum))) + r.log_term(r.z_min);
  return std::pair{sign, log_abs};
}

void require_valid(HalfInteger j, HalfInteger m, const char* label) {
  if (j.twice() < 0) throw DomainError(std::string("clebsch_gordan: negative ") + label);
  if (std::abs(m.twice()) > j.twice()) {
    throw DomainError(std::string("clebsch_gordan: |m| exceeds j for ") + label);
  }
  if ((j.twice() - m.twice()) % 2 != 0) {
    throw DomainError(std::string("clebsch_gordan: j and m differ in integrality for ") + label);
  }
}

}  // namespace

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger j,
                      HalfInteger m) {
  require_valid(j1, m1, "j1");
  require_valid(j2, m2, "j2");
  require_valid(j, m, "j");
  if (m1.twice() + m2.twice() != m.twice()) return 0.0;
  const int tj1 = j1.twice();
  const int tj2 = j2.twice();
  const int tj = j.twice();
  if (tj < std::abs(tj1 - tj2) || tj > tj1 + tj2 || (tj1 + tj2 + tj) % 2 != 0) return 0.0;

  RacahSum r{};
  r.a = (tj1 + tj2 - tj) / 2;
  r.b = (tj1 - m1.twice()) / 2;
  r.c = (tj2 + m2.twice()) / 2;
  r.d = (tj - tj2 + m1.twice()) / 2;
  r.e = (tj - tj1 - m2.twice()) / 2;
  r.z_min = std::max({0, -r.d, -r.e});
  r.z_max = std::min({r.a, r.b, r.c});
  if (r.z_min > r.z_max) return 0.0;

  const double log_prefactor =
      0.5 * (std::log(tj + 1.0) + log_factorial((tj + tj1 - tj2) / 2) +
             log_factorial((tj - tj1 + tj2) / 2) + log_factorial((tj1 + tj2 - tj) / 2) -
             log_factorial((tj1 + tj2 + tj) / 2 + 1) + log_factorial((tj + m.twice()) / 2) +
             log_factorial((tj - m.twice()) / 2) + log_factorial((tj1 - m1.twice()) / 2) +
             log_factorial((tj1 + m1.twice()) / 2) + log_factorial((tj2 - m2.twice()) / 2) +
             log_factorial((tj2 + m2.twice()) / 2));

  auto sum = sum_in_double(r);
  if (!sum) sum = sum_in_multiprecision<50>(r, false);
  if (!sum) sum = sum_in_multiprecision<120>(r, false);
  if (!sum) sum = sum_in_multiprecision<300>(r, true);
  if (sum->first == 0) return 0.0;
  return sum->first * std::exp(log_prefactor + sum->second);
}

}  // namespace dickecat
