#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "chpp/promise.hpp"

namespace chpp {

inline constexpr double kDefaultEpsDet = 1e-9;
inline constexpr double kDefaultEpsNorm = 1e-9;

using ControlState = std::vector<Complex>;

/// Control (p) x target (D) amplitudes; row j is the target branch paired with
/// control basis state |j>.
struct QuditJointState {
  CMatrix amplitudes;
};

/// Continuous-variable joint state kept symbolically: branch j is amplitude_j
/// times (op_j applied to a fixed reference target state).
struct CvBranch {
  Complex amplitude;
  WeylOp op;
};

struct CvJointState {
  std::vector<CvBranch> branches;
};

using JointState = std::variant<QuditJointState, CvJointState>;

QuditJointState product_state(const ControlState& control, const Eigen::VectorXcd& target);
CvJointState product_state_cv(const ControlState& control);

/// Applies Pi_j to the target of branch j.
JointState apply_switch(const JointState& state, const std::vector<Gate>& gates,
                        const PermutationSet& perm_set);

/// Applies a p x p operator to the control register.
JointState apply_control(const JointState& state, const CMatrix& op);

double joint_norm(const QuditJointState& state);

struct SwitchOutcome {
  std::vector<double> distribution;
  int argmax = 0;
  bool deterministic = false;
};

struct ProtocolOptions {
  double eps_det = kDefaultEpsDet;
  double eps_phase = kDefaultEpsPhase;
  double eps_norm = kDefaultEpsNorm;
};

/// (M^dag / sqrt p (x) I) S (M / sqrt p (x) I) on |0> (x) psi, followed by a
/// control measurement. psi is required for qudit gates and ignored for CV
/// gates, whose outcome does not depend on the target state.
SwitchOutcome run_protocol(const CHMatrix& m, const PermutationSet& perm_set,
                           const std::vector<Gate>& gates,
                           const std::optional<Eigen::VectorXcd>& psi = std::nullopt,
                           const ProtocolOptions& options = {});

SwitchOutcome run_protocol(const PromiseInstance& inst,
                           const std::optional<Eigen::VectorXcd>& psi = std::nullopt,
                           const ProtocolOptions& options = {});

/// Seeded Haar-random pure state (normalized complex Gaussian vector).
Eigen::VectorXcd random_state(int dim, std::uint64_t seed);

/// Haar-random unitary via QR of a complex Gaussian matrix.
CMatrix random_unitary(int dim, std::uint64_t seed);

/// Draws `shots` samples from the outcome distribution.
std::vector<int> sample_outcomes(const SwitchOutcome& outcome, int shots, std::uint64_t seed);

enum class Builder { Qudit, Cv, MinimalCh4 };

struct SweepParams {
  Builder builder = Builder::Qudit;
  std::optional<int> dim;
  double alpha = 1.0;
  // Only used by the minimal three-gate construction.
  double a = 0.0;
  std::uint64_t psi_seed = 1;
  ProtocolOptions protocol;
};

struct ColumnReport {
  int column = 0;
  int argmax = 0;
  double probability = 0.0;
  // 1 - probability of the promised column.
  double deviation = 0.0;
  bool recovered = false;
};

struct SweepReport {
  std::vector<ColumnReport> columns;
  double worst_deviation = 0.0;
  bool all_recovered = true;
};

/// Builds the gates for every column, runs the protocol and records how well
/// each column is recovered.
SweepReport sweep_columns(const CHMatrix& m, const SweepParams& params);

}  // namespace chpp
