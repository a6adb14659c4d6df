#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chpp/errors.hpp"
#include "chpp/switch_sim.hpp"

using namespace chpp;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Gate> as_gates(const std::vector<WeylOp>& w) { return {w.begin(), w.end()}; }

}  // namespace

TEST_CASE("qubit switch with X and Z") {
  const PromiseInstance inst = build_instance(fourier(2), 1, Target::Qudit);
  const SwitchOutcome out = run_protocol(inst);
  CHECK(out.argmax == 1);
  CHECK(out.deterministic);
  CHECK(out.distribution[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.distribution[0] < 1e-12);
}

TEST_CASE("identity gates land on column 0") {
  const std::vector<Gate> gates(3, Gate(QuditGate::identity(3)));
  const SwitchOutcome out = run_protocol(fourier(3), shift_permutations(3, 3), gates, random_state(3, 5));
  CHECK(out.argmax == 0);
  CHECK(out.deterministic);
}

TEST_CASE("outcome does not depend on the target state") {
  for (int d : {3, 5}) {
    for (int k = 0; k < d; ++k) {
      const PromiseInstance inst = build_instance(fourier(d), k, Target::Qudit);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SwitchOutcome out = run_protocol(inst, random_state(d, seed));
        CHECK(out.argmax == k);
        CHECK(out.distribution[k] > 1.0 - 1e-10);
      }
    }
  }
}

TEST_CASE("cv switch recovers each f4 column") {
  for (double a : {0.0, kPi / 7, kPi / 3, kPi / 2, 2.9}) {
    for (int k = 0; k < 4; ++k) {
      const SwitchOutcome shift = run_protocol(build_instance(f4_family(a), k, Target::Cv));
      CHECK(shift.argmax == k);
      CHECK(shift.deterministic);

      const auto minimal = build_minimal_ch4(a, k);
      const SwitchOutcome three = run_protocol(f4_family(a), minimal.perm_set, as_gates(minimal.gates));
      CHECK(three.argmax == k);
      CHECK(three.distribution[k] > 1.0 - 1e-10);
    }
  }
}

TEST_CASE("joint state evolution preserves the norm") {
  const PromiseInstance inst = build_instance(fourier(4), 3, Target::Qudit);
  ControlState control(4, Complex(0.5, 0.0));
  const JointState start = product_state(control, random_state(4, 9));
  CHECK(joint_norm(std::get<QuditJointState>(start)) == doctest::Approx(1.0));
  const JointState after = apply_switch(start, inst.gates, inst.perm_set);
  CHECK(joint_norm(std::get<QuditJointState>(after)) == doctest::Approx(1.0).epsilon(1e-12));
  const JointState mixed = apply_control(after, random_unitary(4, 3));
  CHECK(joint_norm(std::get<QuditJointState>(mixed)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random gates do not give a deterministic outcome") {
  std::vector<Gate> gates;
  for (int i = 0; i < 3; ++i) gates.emplace_back(QuditGate{random_unitary(3, 100 + i)});
  const SwitchOutcome out = run_protocol(fourier(3), shift_permutations(3, 3), gates, random_state(3, 1));
  CHECK_FALSE(out.deterministic);
  double total = 0.0;
  for (double v : out.distribution) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("protocol input checks") {
  const PromiseInstance inst = build_instance(fourier(3), 1, Target::Qudit);
  const CHMatrix twisted = apply_diagonal_phases(fourier(3), std::vector<PhaseValue>(3, ExactTurn(1, 3)),
                                                 std::vector<PhaseValue>(3, ExactTurn(0, 1)));
  try {
    run_protocol(twisted, inst.perm_set, inst.gates);
    FAIL("expected NotDephased");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDephased);
  }
  Eigen::VectorXcd unnormalized = Eigen::VectorXcd::Ones(3);
  CHECK_THROWS_AS(run_protocol(inst, unnormalized), Error);
  CHECK_THROWS_AS(run_protocol(inst, Eigen::VectorXcd(Eigen::VectorXcd::Ones(2) / std::sqrt(2.0))), Error);
}

TEST_CASE("random states and unitaries are seeded") {
  CHECK((random_state(4, 7) - random_state(4, 7)).norm() == 0.0);
  CHECK((random_state(4, 7) - random_state(4, 8)).norm() > 1e-3);
  CHECK(random_state(6, 2).norm() == doctest::Approx(1.0));
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(unitarity_deviation(random_unitary(5, seed)) < 1e-12);
}

TEST_CASE("sampling a deterministic outcome") {
  const SwitchOutcome out = run_protocol(build_instance(fourier(4), 2, Target::Qudit));
  for (int s : sample_outcomes(out, 200, 3)) CHECK(s == 2);
}

TEST_CASE("column sweeps") {
  SUBCASE("fourier, qudit") {
    for (int d = 2; d <= 6; ++d) {
      const SweepReport r = sweep_columns(fourier(d), {});
      CHECK(r.all_recovered);
      CHECK(r.columns.size() == static_cast<std::size_t>(d));
      CHECK(r.worst_deviation < 1e-10);
    }
  }
  SUBCASE("f4, cv and minimal") {
    SweepParams cv;
    cv.builder = Builder::Cv;
    SweepParams minimal;
    minimal.builder = Builder::MinimalCh4;
    for (double a : {0.0, 0.5, kPi / 2, 2.0}) {
      CHECK(sweep_columns(f4_family(a), cv).all_recovered);
      minimal.a = a;
      CHECK(sweep_columns(f4_family(a), minimal).all_recovered);
    }
  }
}
