#include "chpp/switch_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chpp/errors.hpp"
#include "chpp/rng.hpp"

namespace chpp {

namespace {

CMatrix matrix_of(const CHMatrix& m) {
  const int p = m.order();
  CMatrix out(p, p);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) out(j, k) = m.entry(j, k);
  }
  return out;
}

SwitchOutcome outcome_from(std::vector<double> probs, double eps_det) {
  SwitchOutcome out;
  out.argmax = static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
  out.deterministic = probs[out.argmax] >= 1.0 - eps_det;
  out.distribution = std::move(probs);
  return out;
}

}  // namespace

QuditJointState product_state(const ControlState& control, const Eigen::VectorXcd& target) {
  QuditJointState s{CMatrix(static_cast<int>(control.size()), target.size())};
  for (std::size_t j = 0; j < control.size(); ++j) {
    s.amplitudes.row(static_cast<int>(j)) = control[j] * target.transpose();
  }
  return s;
}

CvJointState product_state_cv(const ControlState& control) {
  CvJointState s;
  for (const Complex& c : control) s.branches.push_back({c, WeylOp{}});
  return s;
}

double joint_norm(const QuditJointState& state) { return state.amplitudes.norm(); }

JointState apply_switch(const JointState& state, const std::vector<Gate>& gates,
                        const PermutationSet& perm_set) {
  const GateKind kind = common_kind(gates);
  if (const auto* q = std::get_if<QuditJointState>(&state)) {
    if (kind != GateKind::Qudit) throw Error(ErrorCode::KindMismatch, "qudit state with weyl gates");
    if (q->amplitudes.rows() != perm_set.size()) {
      throw Error(ErrorCode::SizeMismatch, "control dimension differs from number of orderings");
    }
    if (std::get<QuditGate>(gates.front()).dim() != q->amplitudes.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "gate dimension differs from target dimension");
    }
    QuditJointState out{q->amplitudes};
    for (int j = 0; j < perm_set.size(); ++j) {
      const QuditGate pi = std::get<QuditGate>(product_in_order(gates, perm_set[j]));
      out.amplitudes.row(j) = (pi.u * q->amplitudes.row(j).transpose()).transpose();
    }
    return out;
  }
  const auto& cv = std::get<CvJointState>(state);
  if (kind != GateKind::Weyl) throw Error(ErrorCode::KindMismatch, "cv state with qudit gates");
  if (static_cast<int>(cv.branches.size()) != perm_set.size()) {
    throw Error(ErrorCode::SizeMismatch, "control dimension differs from number of orderings");
  }
  CvJointState out = cv;
  for (int j = 0; j < perm_set.size(); ++j) {
    const WeylOp pi = std::get<WeylOp>(product_in_order(gates, perm_set[j]));
    out.branches[j].op = weyl_compose(pi, cv.branches[j].op);
  }
  return out;
}

JointState apply_control(const JointState& state, const CMatrix& op) {
  if (const auto* q = std::get_if<QuditJointState>(&state)) {
    if (op.cols() != q->amplitudes.rows()) throw Error(ErrorCode::SizeMismatch, "control operator size");
    return QuditJointState{op * q->amplitudes};
  }
  const auto& cv = std::get<CvJointState>(state);
  const int p = static_cast<int>(cv.branches.size());
  if (op.cols() != p) throw Error(ErrorCode::SizeMismatch, "control operator size");
  // Branches only interfere once they carry the same displacement; the common
  // displacement is factored out and its phases folded into the amplitudes.
  const WeylOp& ref = cv.branches.front().op;
  std::vector<Complex> folded(p);
  for (int j = 0; j < p; ++j) {
    const auto ratio = phase_ratio(cv.branches[j].op, ref, kDefaultEpsPhase);
    if (!ratio) {
      throw Error(ErrorCode::DomainError,
                  "cv branches carry different displacements; control interference undefined");
    }
    folded[j] = cv.branches[j].amplitude * std::polar(1.0, *ratio);
  }
  CvJointState out;
  for (int l = 0; l < op.rows(); ++l) {
    Complex acc = 0.0;
    for (int j = 0; j < p; ++j) acc += op(l, j) * folded[j];
    out.branches.push_back({acc, ref});
  }
  return out;
}

SwitchOutcome run_protocol(const CHMatrix& m, const PermutationSet& perm_set,
                           const std::vector<Gate>& gates, const std::optional<Eigen::VectorXcd>& psi,
                           const ProtocolOptions& options) {
  if (!m.is_dephased(options.eps_phase)) throw Error(ErrorCode::NotDephased, "matrix is not dephased");
  const int p = m.order();
  if (perm_set.size() != p) throw Error(ErrorCode::SizeMismatch, "number of orderings differs from p");

  const CMatrix prep = matrix_of(m) / std::sqrt(static_cast<double>(p));
  const CMatrix unprep = prep.adjoint();
  ControlState zero(p, 0.0);
  zero[0] = 1.0;

  std::vector<double> probs(p, 0.0);
  if (common_kind(gates) == GateKind::Qudit) {
    const int dim = std::get<QuditGate>(gates.front()).dim();
    Eigen::VectorXcd target = psi.value_or(Eigen::VectorXcd::Unit(dim, 0));
    if (target.size() != dim) throw Error(ErrorCode::DimensionMismatch, "psi has wrong dimension");
    if (std::abs(target.norm() - 1.0) > options.eps_norm) {
      throw Error(ErrorCode::DomainError, "psi is not normalized");
    }
    JointState s = product_state(zero, target);
    s = apply_control(s, prep);
    s = apply_switch(s, gates, perm_set);
    s = apply_control(s, unprep);
    const auto& q = std::get<QuditJointState>(s);
    if (std::abs(joint_norm(q) - 1.0) > options.eps_norm) {
      throw Error(ErrorCode::DomainError, "joint state lost normalization");
    }
    for (int l = 0; l < p; ++l) probs[l] = q.amplitudes.row(l).squaredNorm();
  } else {
    JointState s = product_state_cv(zero);
    s = apply_control(s, prep);
    s = apply_switch(s, gates, perm_set);
    s = apply_control(s, unprep);
    const auto& cv = std::get<CvJointState>(s);
    for (int l = 0; l < p; ++l) probs[l] = std::norm(cv.branches[l].amplitude);
  }
  return outcome_from(std::move(probs), options.eps_det);
}

SwitchOutcome run_protocol(const PromiseInstance& inst, const std::optional<Eigen::VectorXcd>& psi,
                           const ProtocolOptions& options) {
  return run_protocol(inst.matrix, inst.perm_set, inst.gates, psi, options);
}

Eigen::VectorXcd random_state(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = rng::gaussian(gen);
    const double im = rng::gaussian(gen);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

CMatrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = rng::gaussian(gen);
      const double im = rng::gaussian(gen);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

std::vector<int> sample_outcomes(const SwitchOutcome& outcome, int shots, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<int> out;
  for (int s = 0; s < shots; ++s) {
    double u = rng::unit_real(gen), acc = 0.0;
    int pick = static_cast<int>(outcome.distribution.size()) - 1;
    for (std::size_t l = 0; l < outcome.distribution.size(); ++l) {
      acc += outcome.distribution[l];
      if (u < acc) {
        pick = static_cast<int>(l);
        break;
      }
    }
    out.push_back(pick);
  }
  return out;
}

SweepReport sweep_columns(const CHMatrix& m, const SweepParams& params) {
  SweepReport report;
  for (int k = 0; k < m.order(); ++k) {
    PromiseInstance inst{m, shift_permutations(1, 1), {}, k};
    switch (params.builder) {
      case Builder::Qudit:
      case Builder::Cv: {
        BuildOptions opts;
        opts.dim = params.dim;
        opts.alpha = params.alpha;
        opts.eps_phase = params.protocol.eps_phase;
        inst = build_instance(m, k, params.builder == Builder::Qudit ? Target::Qudit : Target::Cv, opts);
        break;
      }
      case Builder::MinimalCh4: {
        auto built = build_minimal_ch4(params.a, k, {}, params.protocol.eps_phase);
        inst.perm_set = built.perm_set;
        inst.gates.assign(built.gates.begin(), built.gates.end());
        break;
      }
    }
    std::optional<Eigen::VectorXcd> psi;
    if (common_kind(inst.gates) == GateKind::Qudit) {
      psi = random_state(std::get<QuditGate>(inst.gates.front()).dim(), params.psi_seed + k);
    }
    const SwitchOutcome out = run_protocol(inst, psi, params.protocol);
    ColumnReport row;
    row.column = k;
    row.argmax = out.argmax;
    row.probability = out.distribution[k];
    row.deviation = std::max(0.0, 1.0 - out.distribution[k]);
    row.recovered = out.argmax == k && out.deterministic;
    report.worst_deviation = std::max(report.worst_deviation, row.deviation);
    report.all_recovered = report.all_recovered && row.recovered;
    report.columns.push_back(row);
  }
  return report;
}

}  // namespace chpp
