#pragma once

namespace dickecat {

/// ln(n!) for 0 <= n; tabulated up to 2^15, lgamma beyond.
double log_factorial(int n);

/// ln C(n, k); -inf when k is outside [0, n].
double log_binomial(int n, int k);

/// Integer power that treats 0^0 as 1 and never goes through log().
double int_pow(double base, int exponent);

}  // namespace dickecat
