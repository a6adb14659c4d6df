#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "chpp/ch_matrix.hpp"
#include "chpp/gates.hpp"

namespace chpp {

/// p distinct orderings of the same N gates; the first is the identity
/// ordering and p <= N!.
class PermutationSet {
 public:
  explicit PermutationSet(std::vector<Permutation> perms);

  int size() const { return static_cast<int>(perms_.size()); }
  int gate_count() const { return perms_.front().size(); }
  const Permutation& operator[](int j) const { return perms_[j]; }
  const std::vector<Permutation>& perms() const { return perms_; }

 private:
  std::vector<Permutation> perms_;
};

/// n! saturated at the largest representable value.
unsigned long long factorial(int n);

/// Gate 0 is moved j slots later in application order for the j-th ordering:
/// [1, 2, ..., j, 0, j+1, ..., N-1]. Requires 1 <= p <= N.
PermutationSet shift_permutations(int p, int n);

/// The four orderings used by the three-gate CH(4) construction.
PermutationSet minimal_ch4_permutations();

struct PromiseInstance {
  CHMatrix matrix;
  PermutationSet perm_set;
  std::vector<Gate> gates;
  std::optional<int> claimed_column;
};

/// Structural checks: dephased matrix, matching sizes, homogeneous gates and,
/// for qudit gates, a Butson matrix whose complexity divides the dimension.
void check_instance(const PromiseInstance& inst, double eps_phase = kDefaultEpsPhase);

/// Shift construction on a continuous-variable target: U_0 = X_alpha and
/// U_j = Z_{beta_j, gamma_j}. gammas (length p-1) default to zero.
std::vector<WeylOp> build_cv_gates(const CHMatrix& m, int k, double alpha,
                                   const std::vector<double>& gammas = {});

/// Shift construction with generalized Pauli gates: U_0 = X and U_j = Z^{s_j}.
/// `dim` defaults to the Butson complexity d and must be a multiple of it.
std::vector<QuditGate> build_qudit_gates(const CHMatrix& m, int k,
                                         std::optional<int> dim = std::nullopt,
                                         double eps_phase = kDefaultEpsPhase);

struct MinimalCh4Free {
  // alpha_1 (alpha_0 on the a = pi/2 branch of column 3); must be nonzero.
  double alpha = 1.0;
  // beta_1 (beta_0 on the a = pi/2 branch of column 3); for column 0 every beta.
  double beta = 0.0;
  // alpha_2 on the a = pi/2 branch of column 3.
  double alpha2 = 1.0;
};

struct MinimalCh4 {
  std::vector<WeylOp> gates;
  PermutationSet perm_set;
};

/// Three displacement gates U_i = X_{alpha_i} Z_{beta_i} solving the CH(4)
/// promise of f4_family(a) for column k over minimal_ch4_permutations().
/// Column 3 switches formulas when a is within eps_phase of pi/2.
MinimalCh4 build_minimal_ch4(double a, int k, const MinimalCh4Free& free = {},
                             double eps_phase = kDefaultEpsPhase);

struct PromiseMatch {
  int column = 0;
};

struct PromiseViolation {
  int row = 0;
  // Phase the reference column predicts for Pi_j / Pi_0 (nullopt when no
  // column is available to compare against).
  std::optional<double> expected;
  // Measured phase of Pi_j / Pi_0, nullopt when Pi_j is not proportional to Pi_0.
  std::optional<double> got;
};

using VerifyOutcome = std::variant<PromiseMatch, PromiseViolation>;

/// Phases of Pi_j / Pi_0 for every ordering (nullopt where not proportional).
std::vector<std::optional<double>> permutation_phases(const PromiseInstance& inst, double eps);

/// Matches the measured phase profile against every column. Throws Ambiguous
/// when more than one column fits.
VerifyOutcome verify_promise(const PromiseInstance& inst, double eps = kDefaultEpsPhase);

std::vector<Gate> conjugate_gates(const std::vector<Gate>& gates, const QuditGate& v);

enum class Target { Qudit, Cv };

struct BuildOptions {
  std::optional<int> dim;
  double alpha = 1.0;
  std::vector<double> gammas;
  double eps_phase = kDefaultEpsPhase;
};

/// Shift-construction instance with N = p gates for column k.
PromiseInstance build_instance(const CHMatrix& m, int k, Target target,
                               const BuildOptions& options = {});

}  // namespace chpp
