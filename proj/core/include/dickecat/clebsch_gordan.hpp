#pragma once

#include <compare>

namespace dickecat {

/// Angular-momentum quantum number stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  constexpr explicit HalfInteger(int value) : twice_(2 * value) {}

  static constexpr HalfInteger from_twice(int twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInteger operator-() const { return from_twice(-twice_); }
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
    return from_twice(a.twice_ + b.twice_);
  }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) {
    return from_twice(a.twice_ - b.twice_);
  }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

 private:
  int twice_ = 0;
};

/// <j1 m1; j2 m2 | j m> in the Condon-Shortley convention.
///
/// Racah's closed form with log-factorial prefactors. The alternating sum is
/// evaluated in double precision and re-evaluated with 50, 120 and 300 decimal
/// digits when cancellation eats into the result, which keeps the value accurate
/// to ~1e-13 relative for 2j up to several hundred.
///
/// Throws DomainError for negative j, |m| > j, or j/m of different integrality.
/// Returns 0 when m != m1 + m2 or the triangle rule fails.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger j,
                      HalfInteger m);

}  // namespace dickecat
