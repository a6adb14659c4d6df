#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chpp/ch_matrix.hpp"
#include "chpp/errors.hpp"

using namespace chpp;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct evaluation of M M^dag, independent of validate_ch.
double max_gram_deviation(const CHMatrix& m) {
  const int p = m.order();
  double worst = 0.0;
  for (int j = 0; j < p; ++j) {
    for (int l = 0; l < p; ++l) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < p; ++k) {
        acc += std::polar(1.0, m.radians(j, k)) * std::polar(1.0, -m.radians(l, k));
      }
      worst = std::max(worst, std::abs(acc - (j == l ? static_cast<double>(p) : 0.0)));
    }
  }
  return worst;
}

double max_column_overlap(const CHMatrix& m) {
  const int p = m.order();
  double worst = 0.0;
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < p; ++j) acc += m.entry(j, a) * std::conj(m.entry(j, b));
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

std::int64_t complexity(const CHMatrix& m, int d_max = kDefaultButsonSearch) {
  const BHClass cls = classify_bh(m, d_max);
  REQUIRE(std::holds_alternative<Butson>(cls));
  return std::get<Butson>(cls).complexity;
}

const double kIrrationalA = std::fmod(2 * kPi / std::sqrt(2.0), kPi);

}  // namespace

TEST_CASE("exact turns are stored reduced") {
  const ExactTurn t(6, 8);
  CHECK(t.num() == 3);
  CHECK(t.den() == 4);
  CHECK(ExactTurn(-1, 4) == ExactTurn(3, 4));
  CHECK(ExactTurn(4, 4) == ExactTurn(0, 1));
  CHECK(ExactTurn(1, 3) + ExactTurn(2, 3) == ExactTurn(0, 1));
  CHECK(ExactTurn(1, 4) - ExactTurn(1, 2) == ExactTurn(3, 4));
  CHECK_THROWS_AS(ExactTurn(1, 0), Error);
  CHECK(FloatRadians(-kPi / 2).value() == doctest::Approx(3 * kPi / 2));
}

TEST_CASE("fourier(2) is complex Hadamard") {
  const CHMatrix f2 = fourier(2);
  CHECK(f2.radians(1, 1) == doctest::Approx(kPi));
  CHECK(f2.radians(0, 1) == 0.0);
  const auto report = validate_ch(f2);
  CHECK(report.ok);
  CHECK(report.max_row_pair_deviation < 1e-15);
}

TEST_CASE("all-zero phases fail validation") {
  const CHMatrix ones = CHMatrix::from_exact(2, std::vector<ExactTurn>(4));
  const auto report = validate_ch(ones);
  CHECK_FALSE(report.ok);
  CHECK(report.max_row_pair_deviation == doctest::Approx(2.0));
  const CHMatrix fones = CHMatrix::from_radians(2, std::vector<double>(4, 0.0));
  CHECK_FALSE(validate_ch(fones).ok);
}

TEST_CASE("malformed grids are rejected") {
  CHECK_THROWS_AS(CHMatrix::from_exact(2, std::vector<ExactTurn>(3)), Error);
  std::vector<std::vector<PhaseValue>> ragged{{ExactTurn()}, {ExactTurn(), ExactTurn()}};
  CHECK_THROWS_AS(CHMatrix::from_grid(ragged), Error);
  std::vector<std::vector<PhaseValue>> mixed{{ExactTurn(), FloatRadians(0.0)},
                                             {ExactTurn(), ExactTurn(1, 2)}};
  try {
    CHMatrix::from_grid(mixed);
    FAIL("mixed grid accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedMatrix);
  }
}

TEST_CASE("f4 family is complex Hadamard across the parameter range") {
  for (double a : {0.0, 0.1, 0.3, kPi / 7, kPi / 2, 1.234, kIrrationalA, 3.1}) {
    CAPTURE(a);
    const CHMatrix m = f4_family(a);
    CHECK(m.rep() == Rep::Float);
    CHECK(max_gram_deviation(m) < 1e-12);
    CHECK(validate_ch(m, 1e-12).ok);
    CHECK(m.is_dephased());
  }
}

TEST_CASE("f4 family endpoints") {
  CHECK(f4_family(ExactTurn(0, 1)).approx_equal(fourier(4)));
  CHECK(f4_family(0.0).approx_equal(fourier(4)));
  // a = pi/2 gives a real +-1 matrix.
  const CHMatrix real = f4_family(kPi / 2);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const double r = real.radians(j, k);
      CHECK((circular_distance(r, 0.0) < 1e-12 || circular_distance(r, kPi) < 1e-12));
    }
  }
  CHECK(f4_family(ExactTurn(1, 4)).approx_equal(real));
  CHECK_THROWS_AS(f4_family(kPi), Error);
  CHECK_THROWS_AS(f4_family(-0.1), Error);
  CHECK_THROWS_AS(f4_family(ExactTurn(1, 2)), Error);
}

TEST_CASE("generators validate exactly") {
  for (int d = 1; d <= 12; ++d) {
    CAPTURE(d);
    const CHMatrix f = fourier(d);
    CHECK(validate_ch(f).ok);
    CHECK(f.is_dephased());
    CHECK(max_gram_deviation(f) < 1e-9);
    CHECK(max_column_overlap(f) < 1e-9);
  }
  for (int k = 0; k <= 4; ++k) {
    CAPTURE(k);
    const CHMatrix h = sylvester_hadamard(k);
    CHECK(h.order() == (1 << k));
    CHECK(validate_ch(h).ok);
    CHECK(h.is_dephased());
  }
  CHECK(sylvester_hadamard(0).order() == 1);
  CHECK(sylvester_hadamard(1).approx_equal(fourier(2)));
  CHECK(complexity(sylvester_hadamard(2)) == 2);
}

TEST_CASE("exact validation catches a near miss the float check would pass") {
  // Perturbing one entry of F_3 by a tiny exact turn breaks orthogonality by
  // ~1e-3: exact rejects it, a loose float tolerance accepts it.
  std::vector<ExactTurn> phases;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) phases.emplace_back(j * k % 3, 3);
  }
  phases[4] = phases[4] + ExactTurn(1, 6144);
  const CHMatrix near = CHMatrix::from_exact(3, phases);
  CHECK_FALSE(validate_ch(near).ok);
  std::vector<double> radians;
  for (const auto& t : phases) radians.push_back(t.radians());
  CHECK(validate_ch(CHMatrix::from_radians(3, radians), 1e-3).ok);
}

TEST_CASE("dephase leaves dephased matrices alone") {
  const auto d = dephase(fourier(3));
  CHECK(d.matrix.approx_equal(fourier(3)));
  for (const auto& f : d.row_factors) CHECK(to_radians(f) == 0.0);
  for (const auto& f : d.col_factors) CHECK(to_radians(f) == 0.0);
}

TEST_CASE("dephase undoes a row phase") {
  std::vector<ExactTurn> phases{ExactTurn(0, 1), ExactTurn(0, 1), ExactTurn(1, 4), ExactTurn(3, 4)};
  const CHMatrix shifted = CHMatrix::from_exact(2, phases);
  const auto d = dephase(shifted);
  CHECK(d.matrix.approx_equal(fourier(2)));
  CHECK(std::get<ExactTurn>(d.row_factors[1]) == ExactTurn(3, 4));
  CHECK(to_radians(d.row_factors[1]) == doctest::Approx(3 * kPi / 2));
}

TEST_CASE("dephase recovers f4(pi/2) from a random diagonal twirl") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  const CHMatrix base = f4_family(kPi / 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PhaseValue> rows, cols;
    for (int i = 0; i < 4; ++i) {
      rows.emplace_back(FloatRadians(angle(gen)));
      cols.emplace_back(FloatRadians(angle(gen)));
    }
    const CHMatrix twirled = apply_diagonal_phases(base, rows, cols);
    CHECK(validate_ch(twirled).ok);
    const auto d = dephase(twirled);
    CHECK(d.matrix.approx_equal(base, 1e-9));
    CHECK(d.matrix.is_dephased());
    // Applying the factors reproduces the dephased matrix and is invertible.
    CHECK(apply_diagonal_phases(twirled, d.row_factors, d.col_factors).approx_equal(d.matrix, 1e-9));
    std::vector<PhaseValue> inv_rows, inv_cols;
    for (const auto& f : d.row_factors) inv_rows.emplace_back(FloatRadians(-to_radians(f)));
    for (const auto& f : d.col_factors) inv_cols.emplace_back(FloatRadians(-to_radians(f)));
    CHECK(apply_diagonal_phases(d.matrix, inv_rows, inv_cols).approx_equal(twirled, 1e-9));
    // Idempotent.
    CHECK(dephase(d.matrix).matrix.approx_equal(d.matrix, 0.0));
  }
}

TEST_CASE("dephase is idempotent on exact matrices") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<PhaseValue> rows, cols;
    for (int i = 0; i < 5; ++i) {
      rows.emplace_back(ExactTurn(static_cast<std::int64_t>(gen() % 12), 12));
      cols.emplace_back(ExactTurn(static_cast<std::int64_t>(gen() % 12), 12));
    }
    const CHMatrix twirled = apply_diagonal_phases(fourier(5), rows, cols);
    CHECK(validate_ch(twirled).ok);
    const auto once = dephase(twirled).matrix;
    CHECK(once.approx_equal(fourier(5), 0.0));
    CHECK(dephase(once).matrix.approx_equal(once, 0.0));
  }
}

TEST_CASE("Butson classification") {
  CHECK(complexity(f4_family(0.0)) == 4);
  CHECK(complexity(f4_family(kPi / 2)) == 2);
  CHECK(complexity(f4_family(ExactTurn(0, 1))) == 4);
  CHECK(complexity(f4_family(ExactTurn(1, 12))) == 6);
  for (int d = 2; d <= 12; ++d) {
    CAPTURE(d);
    CHECK(complexity(fourier(d)) == d);
    // Float copies classify the same way.
    std::vector<double> radians;
    const CHMatrix f = fourier(d);
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) radians.push_back(f.radians(j, k));
    }
    CHECK(complexity(CHMatrix::from_radians(d, radians)) == d);
  }
}

TEST_CASE("irrational f4 parameter is not Butson") {
  const BHClass cls = classify_bh(f4_family(kIrrationalA), 1000);
  REQUIRE(std::holds_alternative<NotButson>(cls));
  // Row 0 and column 0 are 1; the first irrational entry is (1, 1).
  CHECK(std::get<NotButson>(cls) == NotButson{1, 1});
  CHECK(std::holds_alternative<NotButson>(classify_bh(f4_family(kIrrationalA), 4096)));
}

TEST_CASE("witness for entries that are roots of unity with too large an order") {
  // Every entry is a 7th or 11th root of unity, lcm 77 > d_max = 50.
  std::vector<double> radians(16, 0.0);
  radians[5] = kTwoPi / 7;
  radians[6] = kTwoPi / 11;
  const CHMatrix m = CHMatrix::from_radians(4, radians);
  const BHClass cls = classify_bh(m, 50);
  REQUIRE(std::holds_alternative<NotButson>(cls));
  CHECK(std::get<NotButson>(cls) == NotButson{1, 2});
  CHECK(std::get<Butson>(classify_bh(m, 100)).complexity == 77);
}

TEST_CASE("minimal target dimension") {
  CHECK(min_target_dimension(f4_family(kPi / 2)) == 2);
  CHECK(min_target_dimension(fourier(5)) == 5);
  CHECK_FALSE(min_target_dimension(f4_family(kIrrationalA)).has_value());
  for (int d = 2; d <= 8; ++d) {
    const auto dim = min_target_dimension(fourier(d));
    REQUIRE(dim.has_value());
    for (int mult = 1; mult <= 3; ++mult) CHECK(entries_are_roots_of_unity(fourier(d), *dim * mult));
    if (d > 2) CHECK_FALSE(entries_are_roots_of_unity(fourier(d), *dim - 1));
  }
  const CHMatrix h = f4_family(kPi / 2);
  for (int D : {2, 4, 6}) CHECK(entries_are_roots_of_unity(h, D));
  CHECK_FALSE(entries_are_roots_of_unity(h, 3));
}
