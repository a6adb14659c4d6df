#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chpp/scs.hpp"

namespace chpp {

enum class CensusMode { Exhaustive, Sample };

enum class CensusEngine {
  // Frontier search per combination while within budget; the subset lattice
  // beyond it when N <= 4.
  Auto,
  Frontier,
  Lattice,
};

inline constexpr std::uint64_t kDefaultCensusBudget = 10000;
inline constexpr std::uint64_t kDefaultSampleCount = 100000;

struct CensusOptions {
  CensusMode mode = CensusMode::Exhaustive;
  CensusEngine engine = CensusEngine::Auto;
  std::uint64_t sample_count = kDefaultSampleCount;
  std::uint64_t seed = 1;
  // Largest number of combinations solved one by one in exhaustive mode.
  std::uint64_t budget = kDefaultCensusBudget;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  int n_max = kDefaultScsMaxN;
};

/// Aggregate SCS statistics over size-p permutation sets containing the
/// identity ordering. qpg = length / N.
struct CensusRow {
  int n = 0;
  int p = 0;
  std::uint64_t combos = 0;
  CensusMode mode = CensusMode::Exhaustive;
  int min_len = 0;
  int max_len = 0;
  std::uint64_t sum_len = 0;
  double avg_len = 0.0;
  // Standard error of avg_len; zero in exhaustive mode.
  double avg_len_stderr = 0.0;
  double min_qpg = 0.0;
  double max_qpg = 0.0;
  double avg_qpg = 0.0;
  double switch_qpg = 1.0;
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Throws BudgetExceeded (with the required count in the message) when an
/// exhaustive census is too large for the chosen engine.
CensusRow census(int n, int p, const CensusOptions& options = {});

/// One row per p in [p_min, p_max]. Exhaustive rows that exceed the budget
/// and cannot use the lattice fall back to seeded sampling.
std::vector<CensusRow> census_sweep(int n, int p_min, int p_max, const CensusOptions& options = {});

std::string census_csv_header();
std::string census_csv_row(const CensusRow& row);

}  // namespace chpp
