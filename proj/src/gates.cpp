#include "chpp/gates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chpp/errors.hpp"

namespace chpp {

WeylOp weyl_x(double alpha) { return {0.0, 0.0, -alpha}; }

WeylOp weyl_z(double beta, double gamma) { return {0.0, beta, gamma}; }

WeylOp weyl_compose(const WeylOp& a, const WeylOp& b) {
  const double bch = 0.5 * (a.gamma * b.beta - a.beta * b.gamma);
  return {wrap_phase(a.theta + b.theta + bch), a.beta + b.beta, a.gamma + b.gamma};
}

WeylOp weyl_inverse(const WeylOp& a) { return {wrap_phase(-a.theta), -a.beta, -a.gamma}; }

namespace {

void require_dim(int dim) {
  if (dim < 2) {
    throw Error(ErrorCode::DomainError, "qudit dimension must be >= 2, got " + std::to_string(dim));
  }
}

long long mod(long long q, long long n) {
  q %= n;
  return q < 0 ? q + n : q;
}

}  // namespace

QuditGate pauli_x(int dim) { return pauli_x_power(dim, 1); }

QuditGate pauli_z(int dim) { return pauli_z_power(dim, 1); }

QuditGate pauli_x_power(int dim, long long q) {
  require_dim(dim);
  const long long s = mod(q, dim);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) u(static_cast<int>((j + s) % dim), j) = 1.0;
  return {u};
}

QuditGate pauli_z_power(int dim, long long q) {
  require_dim(dim);
  const long long s = mod(q, dim);
  CMatrix u = CMatrix::Zero(dim, dim);
  // Exact turn fraction keeps omega^j free of accumulated round-off.
  for (int j = 0; j < dim; ++j) u(j, j) = std::polar(1.0, ExactTurn(j * s, dim).radians());
  return {u};
}

GateKind gate_kind(const Gate& g) {
  return std::holds_alternative<QuditGate>(g) ? GateKind::Qudit : GateKind::Weyl;
}

GateKind common_kind(std::span<const Gate> gates) {
  if (gates.empty()) throw Error(ErrorCode::SizeMismatch, "empty gate set");
  const GateKind kind = gate_kind(gates.front());
  for (const Gate& g : gates) {
    if (gate_kind(g) != kind) throw Error(ErrorCode::KindMismatch, "mixed qudit and weyl gates");
    if (kind == GateKind::Qudit &&
        std::get<QuditGate>(g).dim() != std::get<QuditGate>(gates.front()).dim()) {
      throw Error(ErrorCode::DimensionMismatch, "qudit gates of different dimensions");
    }
  }
  return kind;
}

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (int v : order_) {
    if (v < 0 || v >= size() || seen[v]) {
      throw Error(ErrorCode::DomainError, "not a permutation of 0..N-1");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return Permutation(std::move(order));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (order_[i] != i) return false;
  }
  return true;
}

namespace {

void check_lengths(std::size_t gates, const Permutation& perm) {
  if (gates != static_cast<std::size_t>(perm.size()) || gates == 0) {
    throw Error(ErrorCode::SizeMismatch, "permutation length differs from gate count");
  }
}

}  // namespace

QuditGate product_in_order(std::span<const QuditGate> gates, const Permutation& perm) {
  check_lengths(gates.size(), perm);
  CMatrix acc = gates[perm[0]].u;
  for (int i = 1; i < perm.size(); ++i) {
    const CMatrix& next = gates[perm[i]].u;
    if (next.rows() != acc.rows()) {
      throw Error(ErrorCode::DimensionMismatch, "qudit gates of different dimensions");
    }
    acc = next * acc;
  }
  return {acc};
}

WeylOp product_in_order(std::span<const WeylOp> gates, const Permutation& perm) {
  check_lengths(gates.size(), perm);
  WeylOp acc = gates[perm[0]];
  for (int i = 1; i < perm.size(); ++i) acc = weyl_compose(gates[perm[i]], acc);
  return acc;
}

Gate product_in_order(std::span<const Gate> gates, const Permutation& perm) {
  check_lengths(gates.size(), perm);
  if (common_kind(gates) == GateKind::Qudit) {
    std::vector<QuditGate> typed;
    for (const Gate& g : gates) typed.push_back(std::get<QuditGate>(g));
    return product_in_order(std::span<const QuditGate>(typed), perm);
  }
  std::vector<WeylOp> typed;
  for (const Gate& g : gates) typed.push_back(std::get<WeylOp>(g));
  return product_in_order(std::span<const WeylOp>(typed), perm);
}

std::optional<double> phase_ratio(const QuditGate& a, const QuditGate& b, double eps) {
  if (a.u.rows() != b.u.rows() || a.u.cols() != b.u.cols()) return std::nullopt;
  // tr(B^dag A) / |tr(B^dag A)| is the best unit-modulus fit when A ~ c B.
  const Complex overlap = (b.u.adjoint() * a.u).trace();
  if (std::abs(overlap) < 1e-300) return std::nullopt;
  const Complex c = overlap / std::abs(overlap);
  const double dev = (a.u - c * b.u).cwiseAbs().maxCoeff();
  if (dev > eps) return std::nullopt;
  return wrap_phase(std::arg(c));
}

std::optional<double> phase_ratio(const WeylOp& a, const WeylOp& b, double eps) {
  if (std::abs(a.beta - b.beta) > eps || std::abs(a.gamma - b.gamma) > eps) return std::nullopt;
  return wrap_phase(a.theta - b.theta);
}

std::optional<double> phase_ratio(const Gate& a, const Gate& b, double eps) {
  if (gate_kind(a) != gate_kind(b)) throw Error(ErrorCode::KindMismatch, "phase_ratio across kinds");
  if (gate_kind(a) == GateKind::Qudit) {
    return phase_ratio(std::get<QuditGate>(a), std::get<QuditGate>(b), eps);
  }
  return phase_ratio(std::get<WeylOp>(a), std::get<WeylOp>(b), eps);
}

double unitarity_deviation(const CMatrix& u) {
  const CMatrix d = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace chpp
