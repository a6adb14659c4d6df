#pragma once

#include <cstdint>
#include <numbers>
#include <variant>

namespace chpp {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A phase stored as an exact fraction of a full turn: 2*pi*num/den.
/// Always reduced with 0 <= num < den.
class ExactTurn {
 public:
  ExactTurn() = default;
  ExactTurn(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double radians() const;

  friend ExactTurn operator+(ExactTurn a, ExactTurn b);
  friend ExactTurn operator-(ExactTurn a, ExactTurn b);
  ExactTurn operator-() const;
  friend bool operator==(const ExactTurn&, const ExactTurn&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A phase in radians, normalized into [0, 2*pi).
class FloatRadians {
 public:
  FloatRadians() = default;
  explicit FloatRadians(double value);

  double value() const { return value_; }
  friend bool operator==(const FloatRadians&, const FloatRadians&) = default;

 private:
  double value_ = 0.0;
};

using PhaseValue = std::variant<ExactTurn, FloatRadians>;

double to_radians(const PhaseValue& phase);

/// Reduces an angle into [0, 2*pi).
double wrap_phase(double radians);

/// Circular distance min(|d|, 2*pi - |d|) between two angles.
double circular_distance(double a, double b);

}  // namespace chpp
