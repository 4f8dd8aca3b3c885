#include "dickecat/special.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "dickecat/errors.hpp"

namespace dickecat {
namespace {

constexpr int kTableSize = 1 << 15;

const std::vector<double>& factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kTableSize);
    for (int n = 0; n < kTableSize; ++n) t[n] = std::lgamma(static_cast<double>(n) + 1.0);
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < kTableSize) return factorial_table()[n];
  int sign = 0;
  return ::lgamma_r(static_cast<double>(n) + 1.0, &sign);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double int_pow(double base, int exponent) {
  if (exponent == 0) return 1.0;
  double result = 1.0;
  double factor = base;
  unsigned e = exponent < 0 ? static_cast<unsigned>(-exponent) : static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= factor;
    factor *= factor;
    e >>= 1U;
  }
  return exponent < 0 ? 1.0 / result : result;
}

}  // namespace dickecat
