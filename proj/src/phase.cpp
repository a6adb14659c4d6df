#include "chpp/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <type_traits>

#include "chpp/errors.hpp"

namespace chpp {

ExactTurn::ExactTurn(std::int64_t num, std::int64_t den) {
  if (den <= 0) {
    throw Error(ErrorCode::DomainError,
                "exact phase denominator must be positive, got " + std::to_string(den));
  }
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

double ExactTurn::radians() const {
  return kTwoPi * static_cast<double>(num_) / static_cast<double>(den_);
}

ExactTurn operator+(ExactTurn a, ExactTurn b) {
  const std::int64_t l = std::lcm(a.den_, b.den_);
  return ExactTurn(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

ExactTurn operator-(ExactTurn a, ExactTurn b) { return a + (-b); }

ExactTurn ExactTurn::operator-() const { return ExactTurn(den_ - num_, den_); }

FloatRadians::FloatRadians(double value) : value_(wrap_phase(value)) {}

double to_radians(const PhaseValue& phase) {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ExactTurn>) {
          return v.radians();
        } else {
          return v.value();
        }
      },
      phase);
}

double wrap_phase(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2*pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circular_distance(double a, double b) {
  const double d = wrap_phase(a - b);
  return std::min(d, kTwoPi - d);
}

}  // namespace chpp
