#include <doctest.h>

#include <cmath>

#include "chpp/census.hpp"
#include "chpp/errors.hpp"

using namespace chpp;

namespace {

CensusOptions frontier_only() {
  CensusOptions opts;
  opts.engine = CensusEngine::Frontier;
  return opts;
}

CensusOptions lattice_only() {
  CensusOptions opts;
  opts.engine = CensusEngine::Lattice;
  return opts;
}

void same_row(const CensusRow& a, const CensusRow& b) {
  CHECK(a.combos == b.combos);
  CHECK(a.min_len == b.min_len);
  CHECK(a.max_len == b.max_len);
  CHECK(a.sum_len == b.sum_len);
  CHECK(a.avg_len == b.avg_len);
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(23, 3) == 1771);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(100, 50) == UINT64_MAX);
}

TEST_CASE("three-gate census rows") {
  const CensusRow r34 = census(3, 4);
  CHECK(r34.combos == 10);
  CHECK(r34.min_len == 5);
  CHECK(r34.max_len == 6);
  CHECK(r34.sum_len == 54);
  CHECK(r34.avg_len == 5.4);
  CHECK(r34.avg_qpg == doctest::Approx(1.8).epsilon(1e-15));
  CHECK(r34.switch_qpg == 1.0);

  const CensusRow r36 = census(3, 6);
  CHECK(r36.combos == 1);
  CHECK(r36.min_len == 7);
  CHECK(r36.max_len == 7);
  CHECK(std::round(r36.avg_qpg * 100) / 100 == 2.33);
}

TEST_CASE("four-gate census anchors") {
  const CensusRow r44 = census(4, 4, frontier_only());
  CHECK(r44.combos == 1771);
  CHECK(r44.min_len == 6);
  CHECK(r44.max_len == 9);
  CHECK(std::round(r44.avg_len * 100) / 100 == 7.43);
  CHECK(std::round(r44.avg_qpg * 100) / 100 == 1.86);

  const CensusRow r424 = census(4, 24);
  CHECK(r424.combos == 1);
  CHECK(r424.min_len == 12);
  CHECK(r424.avg_qpg == 3.0);
}

TEST_CASE("three-gate sweep") {
  const auto rows = census_sweep(3, 2, 6);
  REQUIRE(rows.size() == 5);
  CHECK(rows[2].sum_len * 5 == 27 * rows[2].combos);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].p == static_cast<int>(i) + 2);
    CHECK(rows[i].mode == CensusMode::Exhaustive);
    CHECK(rows[i].combos == binomial(5, i + 1));
  }
}

TEST_CASE("four-gate sweep is exhaustive and monotone") {
  const auto rows = census_sweep(4, 2, 24);
  REQUIRE(rows.size() == 23);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].mode == CensusMode::Exhaustive);
    CHECK(rows[i].combos == binomial(23, i + 1));
    if (i > 0) {
      CHECK(rows[i].min_len >= rows[i - 1].min_len);
      CHECK(rows[i].max_len >= rows[i - 1].max_len);
    }
  }
  CHECK(rows[2].combos == 1771);
  CHECK(std::round(rows[2].avg_len * 100) / 100 == 7.43);
  CHECK(rows[22].min_len == 12);
}

TEST_CASE("frontier and lattice engines agree") {
  for (int p : {2, 3, 4, 5, 22, 23, 24}) {
    CAPTURE(p);
    same_row(census(4, p, frontier_only()), census(4, p, lattice_only()));
  }
  for (int p = 2; p <= 6; ++p) same_row(census(3, p, frontier_only()), census(3, p, lattice_only()));
}

TEST_CASE("results do not depend on the thread count") {
  CensusOptions one = frontier_only();
  one.threads = 1;
  CensusOptions four = frontier_only();
  four.threads = 4;
  same_row(census(4, 3, one), census(4, 3, four));
  same_row(census(5, 2, one), census(5, 2, four));
}

TEST_CASE("sampled census") {
  CensusOptions opts;
  opts.mode = CensusMode::Sample;
  opts.sample_count = 300;
  opts.seed = 9;
  const CensusRow a = census(4, 12, opts);
  const CensusRow b = census(4, 12, opts);
  same_row(a, b);
  CHECK(a.mode == CensusMode::Sample);
  CHECK(a.combos == 300);
  CHECK(a.avg_len_stderr > 0.0);
  const CensusRow full = census(4, 12, lattice_only());
  CHECK(a.min_len >= full.min_len);
  CHECK(a.max_len <= full.max_len);
  CHECK(std::abs(a.avg_len - full.avg_len) < 6 * a.avg_len_stderr);

  opts.seed = 10;
  CHECK(census(4, 12, opts).sum_len != a.sum_len);
}

TEST_CASE("budget and domain errors") {
  try {
    census(4, 12, frontier_only());
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
    CHECK(std::string(e.what()).find("1352078") != std::string::npos);
  }
  CHECK_THROWS_AS(census(5, 4), Error);
  CHECK_THROWS_AS(census(3, 7), Error);
  CHECK_THROWS_AS(census(3, 1), Error);
  CHECK_THROWS_AS(census(7, 2), Error);
  CHECK_THROWS_AS(census(5, 2, lattice_only()), Error);

  CensusOptions wide;
  wide.sample_count = 50;
  const auto rows = census_sweep(5, 4, 4, wide);
  CHECK(rows[0].mode == CensusMode::Sample);
  CHECK(rows[0].combos == 50);
}

TEST_CASE("csv rows") {
  CHECK(census_csv_header() == "N,p,combos,mode,min_len,max_len,avg_len,min_qpg,max_qpg,avg_qpg,switch_qpg");
  CHECK(census_csv_row(census(3, 4)) == "3,4,10,exhaustive,5,6,5.400000,1.666667,2.000000,1.800000,1.000000");
}
