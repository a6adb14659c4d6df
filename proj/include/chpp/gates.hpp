#pragma once

#include <complex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "chpp/phase.hpp"

namespace chpp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Dense unitary acting on a D-dimensional target.
struct QuditGate {
  CMatrix u;

  int dim() const { return static_cast<int>(u.rows()); }
  static QuditGate identity(int dim) { return {CMatrix::Identity(dim, dim)}; }
};

/// Normal form e^{i theta} * exp(i (beta x + gamma p)) of a Heisenberg-Weyl
/// word. theta is kept in [0, 2*pi).
struct WeylOp {
  double theta = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// X_alpha = exp(-i alpha p).
WeylOp weyl_x(double alpha);
/// Z_{beta,gamma} = exp(i (beta x + gamma p)).
WeylOp weyl_z(double beta, double gamma = 0.0);

/// Product a * b (b acts first). Phases follow from [x, p] = i:
/// theta = theta_a + theta_b + (gamma_a beta_b - beta_a gamma_b) / 2.
WeylOp weyl_compose(const WeylOp& a, const WeylOp& b);
WeylOp weyl_inverse(const WeylOp& a);

QuditGate pauli_x(int dim);
QuditGate pauli_z(int dim);
/// Z^q, with q taken modulo dim (negative powers allowed).
QuditGate pauli_z_power(int dim, long long q);
QuditGate pauli_x_power(int dim, long long q);

using Gate = std::variant<QuditGate, WeylOp>;
enum class GateKind { Qudit, Weyl };

GateKind gate_kind(const Gate& g);
/// Common kind of a non-empty gate list. Throws KindMismatch for mixed lists
/// and DimensionMismatch for qudit gates of different sizes.
GateKind common_kind(std::span<const Gate> gates);

/// A permutation of gate indices in application order: order[0] acts first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> order);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }
  int operator[](int i) const { return order_[i]; }
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> order_;
};

/// U_{perm[N-1]} * ... * U_{perm[1]} * U_{perm[0]}.
QuditGate product_in_order(std::span<const QuditGate> gates, const Permutation& perm);
WeylOp product_in_order(std::span<const WeylOp> gates, const Permutation& perm);
Gate product_in_order(std::span<const Gate> gates, const Permutation& perm);

/// The unit-modulus c with a = c * b, returned as an angle in [0, 2*pi), or
/// nullopt when the two are not proportional within eps. For Weyl operators
/// proportionality means equal displacements.
std::optional<double> phase_ratio(const QuditGate& a, const QuditGate& b, double eps);
std::optional<double> phase_ratio(const WeylOp& a, const WeylOp& b, double eps);
std::optional<double> phase_ratio(const Gate& a, const Gate& b, double eps);

/// max |(U^dag U - I)_{jk}|.
double unitarity_deviation(const CMatrix& u);

}  // namespace chpp
