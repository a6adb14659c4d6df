#include "chpp/promise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "chpp/errors.hpp"

namespace chpp {

unsigned long long factorial(int n) {
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > std::numeric_limits<unsigned long long>::max() / i) {
      return std::numeric_limits<unsigned long long>::max();
    }
    f *= static_cast<unsigned long long>(i);
  }
  return f;
}

PermutationSet::PermutationSet(std::vector<Permutation> perms) : perms_(std::move(perms)) {
  if (perms_.empty()) throw Error(ErrorCode::DomainError, "empty permutation set");
  const int n = perms_.front().size();
  if (n == 0) throw Error(ErrorCode::DomainError, "permutations over zero gates");
  for (const auto& p : perms_) {
    if (p.size() != n) throw Error(ErrorCode::SizeMismatch, "permutations of different lengths");
  }
  if (!perms_.front().is_identity()) {
    throw Error(ErrorCode::DomainError, "first permutation must be the identity ordering");
  }
  if (perms_.size() > factorial(n)) {
    throw Error(ErrorCode::DomainError, "more permutations than N! for N = " + std::to_string(n));
  }
  std::set<Permutation> seen(perms_.begin(), perms_.end());
  if (seen.size() != perms_.size()) throw Error(ErrorCode::DomainError, "duplicate permutations");
}

PermutationSet shift_permutations(int p, int n) {
  if (n < 1 || p < 1) throw Error(ErrorCode::DomainError, "shift family needs p, N >= 1");
  if (p > n) {
    throw Error(ErrorCode::DomainError, "shift family needs p <= N (p = " + std::to_string(p) +
                                            ", N = " + std::to_string(n) + ")");
  }
  std::vector<Permutation> perms;
  for (int j = 0; j < p; ++j) {
    std::vector<int> order;
    for (int i = 1; i <= j; ++i) order.push_back(i);
    order.push_back(0);
    for (int i = j + 1; i < n; ++i) order.push_back(i);
    perms.emplace_back(std::move(order));
  }
  return PermutationSet(std::move(perms));
}

PermutationSet minimal_ch4_permutations() {
  return PermutationSet({Permutation({0, 1, 2}), Permutation({1, 0, 2}), Permutation({1, 2, 0}),
                         Permutation({2, 1, 0})});
}

namespace {

void require_column(const CHMatrix& m, int k) {
  if (k < 0 || k >= m.order()) {
    throw Error(ErrorCode::DomainError, "column " + std::to_string(k) + " out of range");
  }
}

void require_dephased(const CHMatrix& m, double eps_phase) {
  if (!m.is_dephased(eps_phase)) throw Error(ErrorCode::NotDephased, "matrix is not dephased");
}

}  // namespace

void check_instance(const PromiseInstance& inst, double eps_phase) {
  require_dephased(inst.matrix, eps_phase);
  if (inst.perm_set.size() != inst.matrix.order()) {
    throw Error(ErrorCode::SizeMismatch, "number of orderings differs from matrix order");
  }
  if (static_cast<int>(inst.gates.size()) != inst.perm_set.gate_count()) {
    throw Error(ErrorCode::SizeMismatch, "gate count differs from permutation length");
  }
  if (inst.claimed_column && (*inst.claimed_column < 0 || *inst.claimed_column >= inst.matrix.order())) {
    throw Error(ErrorCode::DomainError, "claimed column out of range");
  }
  if (common_kind(inst.gates) == GateKind::Qudit) {
    const int dim = std::get<QuditGate>(inst.gates.front()).dim();
    const BHClass cls = classify_bh(inst.matrix, std::max(dim, 1), eps_phase);
    if (!std::holds_alternative<Butson>(cls)) {
      throw Error(ErrorCode::NotButson, "qudit target needs a Butson matrix with complexity dividing " +
                                            std::to_string(dim));
    }
    if (dim % std::get<Butson>(cls).complexity != 0) {
      throw Error(ErrorCode::IncompatibleDimension, "Butson complexity does not divide dimension");
    }
  }
}

std::vector<WeylOp> build_cv_gates(const CHMatrix& m, int k, double alpha,
                                   const std::vector<double>& gammas) {
  require_column(m, k);
  require_dephased(m, kDefaultEpsPhase);
  if (alpha == 0.0 || !std::isfinite(alpha)) throw Error(ErrorCode::DomainError, "alpha must be nonzero");
  const int p = m.order();
  if (!gammas.empty() && gammas.size() != static_cast<std::size_t>(p - 1)) {
    throw Error(ErrorCode::SizeMismatch, "expected p - 1 gamma values");
  }
  // Moving X_alpha past Z_{beta_j} to its left multiplies by e^{-i alpha beta_j},
  // so the step phases enter with a minus sign.
  std::vector<WeylOp> gates{weyl_x(alpha)};
  for (int j = 1; j < p; ++j) {
    const double step = m.radians(j, k) - m.radians(j - 1, k);
    const double gamma = gammas.empty() ? 0.0 : gammas[j - 1];
    gates.push_back(weyl_z(-step / alpha, gamma));
  }
  return gates;
}

std::vector<QuditGate> build_qudit_gates(const CHMatrix& m, int k, std::optional<int> dim,
                                         double eps_phase) {
  require_column(m, k);
  require_dephased(m, eps_phase);
  const BHClass cls = classify_bh(m, kDefaultButsonSearch, eps_phase);
  const auto* butson = std::get_if<Butson>(&cls);
  if (butson == nullptr) throw Error(ErrorCode::NotButson, "matrix is not Butson-type");
  const long long d = butson->complexity;
  const long long D = dim.value_or(static_cast<int>(std::max<long long>(d, 2)));
  if (D < 2) throw Error(ErrorCode::DomainError, "qudit dimension must be >= 2");
  if (D % d != 0) {
    throw Error(ErrorCode::IncompatibleDimension, "complexity " + std::to_string(d) +
                                                      " does not divide dimension " +
                                                      std::to_string(D));
  }
  auto level = [&](int j) {
    return std::llround(m.radians(j, k) * static_cast<double>(d) / kTwoPi);
  };
  std::vector<QuditGate> gates{pauli_x(static_cast<int>(D))};
  for (int j = 1; j < m.order(); ++j) {
    // Same sign convention as the CV construction: X moving left past Z^s
    // picks up omega^{-s}.
    const long long step = -(level(j) - level(j - 1));
    gates.push_back(pauli_z_power(static_cast<int>(D), step * (D / d)));
  }
  return gates;
}

MinimalCh4 build_minimal_ch4(double a, int k, const MinimalCh4Free& free, double eps_phase) {
  const double pi = std::numbers::pi;
  if (!(a >= 0.0 && a < pi)) throw Error(ErrorCode::DomainError, "a must lie in [0, pi)");
  if (k < 0 || k > 3) throw Error(ErrorCode::DomainError, "column must be in 0..3");

  std::array<double, 3> alpha{0, 0, 0}, beta{0, 0, 0};
  auto need_nonzero = [](double v, const char* name) {
    if (v == 0.0 || !std::isfinite(v)) {
      throw Error(ErrorCode::DomainError, std::string(name) + " must be nonzero");
    }
  };
  switch (k) {
    case 0:
      beta = {free.beta, free.beta, free.beta};
      break;
    case 1: {
      need_nonzero(free.alpha, "alpha_1");
      const double a1 = free.alpha, b1 = free.beta;
      alpha = {0.0, a1, (pi - 2 * a) * a1 / (pi + 2 * a)};
      beta[0] = (pi + 2 * a) / (2 * a1);
      beta[1] = b1;
      beta[2] = (3 * pi + 2 * alpha[2] * b1 - 2 * a) / (2 * a1);
      break;
    }
    case 2: {
      need_nonzero(free.alpha, "alpha_1");
      const double a1 = free.alpha, b1 = free.beta;
      alpha = {0.0, a1, -a1};
      beta[0] = pi / a1;
      beta[1] = b1;
      beta[2] = -beta[0] - b1;
      break;
    }
    case 3:
      if (std::abs(a - pi / 2) <= eps_phase) {
        need_nonzero(free.alpha, "alpha_0");
        const double a0 = free.alpha, a2 = free.alpha2, b0 = free.beta;
        alpha = {a0, 0.0, a2};
        beta = {b0, 0.0, (-pi + a2 * b0) / a0};
      } else {
        need_nonzero(free.alpha, "alpha_1");
        const double a1 = free.alpha, b1 = free.beta;
        alpha = {0.0, a1, (-3 * pi + 2 * a) * a1 / (pi - 2 * a)};
        beta[0] = (-pi + 2 * a) / (2 * a1);
        beta[1] = b1;
        beta[2] = (pi + 2 * alpha[2] * b1 - 2 * a) / (2 * a1);
      }
      break;
  }
  std::vector<WeylOp> gates;
  for (int i = 0; i < 3; ++i) gates.push_back(weyl_compose(weyl_x(alpha[i]), weyl_z(beta[i], 0.0)));
  return {std::move(gates), minimal_ch4_permutations()};
}

std::vector<std::optional<double>> permutation_phases(const PromiseInstance& inst, double eps) {
  const Gate reference = product_in_order(inst.gates, inst.perm_set[0]);
  std::vector<std::optional<double>> out;
  for (int j = 0; j < inst.perm_set.size(); ++j) {
    out.push_back(phase_ratio(product_in_order(inst.gates, inst.perm_set[j]), reference, eps));
  }
  return out;
}

VerifyOutcome verify_promise(const PromiseInstance& inst, double eps) {
  check_instance(inst, eps);
  const auto phases = permutation_phases(inst, eps);
  const int p = inst.matrix.order();

  std::vector<int> matches;
  for (int k = 0; k < p; ++k) {
    bool all = true;
    for (int j = 0; j < p && all; ++j) {
      all = phases[j] && circular_distance(*phases[j], inst.matrix.radians(j, k)) <= eps;
    }
    if (all) matches.push_back(k);
  }
  if (matches.size() > 1) {
    throw Error(ErrorCode::Ambiguous, "columns " + std::to_string(matches[0]) + " and " +
                                          std::to_string(matches[1]) + " both match");
  }
  if (matches.size() == 1 && (!inst.claimed_column || *inst.claimed_column == matches[0])) {
    return PromiseMatch{matches[0]};
  }

  // Report against the claimed column, or else the closest one.
  int reference = 0;
  if (inst.claimed_column) {
    reference = *inst.claimed_column;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < p; ++k) {
      double worst = 0.0;
      for (int j = 0; j < p; ++j) {
        worst = std::max(worst, phases[j] ? circular_distance(*phases[j], inst.matrix.radians(j, k))
                                          : std::numeric_limits<double>::infinity());
      }
      if (worst < best) {
        best = worst;
        reference = k;
      }
    }
  }
  for (int j = 0; j < p; ++j) {
    const double expected = inst.matrix.radians(j, reference);
    if (!phases[j] || circular_distance(*phases[j], expected) > eps) {
      return PromiseViolation{j, expected, phases[j]};
    }
  }
  return PromiseViolation{0, std::nullopt, phases[0]};
}

std::vector<Gate> conjugate_gates(const std::vector<Gate>& gates, const QuditGate& v) {
  std::vector<Gate> out;
  for (const Gate& g : gates) {
    const auto* q = std::get_if<QuditGate>(&g);
    if (q == nullptr) throw Error(ErrorCode::KindMismatch, "conjugation needs qudit gates");
    if (q->dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "conjugating unitary has wrong size");
    out.emplace_back(QuditGate{v.u * q->u * v.u.adjoint()});
  }
  return out;
}

PromiseInstance build_instance(const CHMatrix& m, int k, Target target, const BuildOptions& options) {
  std::vector<Gate> gates;
  if (target == Target::Qudit) {
    for (auto& g : build_qudit_gates(m, k, options.dim, options.eps_phase)) gates.emplace_back(std::move(g));
  } else {
    for (auto& g : build_cv_gates(m, k, options.alpha, options.gammas)) gates.emplace_back(g);
  }
  const int p = m.order();
  return PromiseInstance{m, shift_permutations(p, p), std::move(gates), k};
}

}  // namespace chpp
