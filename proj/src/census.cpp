#include "chpp/census.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <thread>

#include "chpp/errors.hpp"
#include "chpp/promise.hpp"
#include "chpp/rng.hpp"

namespace chpp {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

void check_args(int n, int p) {
  if (n < 2) throw Error(ErrorCode::DomainError, "N must be >= 2");
  if (p < 2 || static_cast<unsigned long long>(p) > factorial(n)) {
    throw Error(ErrorCode::DomainError, "p must lie in [2, N!]");
  }
}

CensusRow finish(int n, int p, CensusMode mode, const std::vector<int>& lengths) {
  CensusRow row;
  row.n = n;
  row.p = p;
  row.mode = mode;
  row.combos = lengths.size();
  row.min_len = *std::min_element(lengths.begin(), lengths.end());
  row.max_len = *std::max_element(lengths.begin(), lengths.end());
  for (int l : lengths) row.sum_len += static_cast<std::uint64_t>(l);
  row.avg_len = static_cast<double>(row.sum_len) / static_cast<double>(row.combos);
  if (mode == CensusMode::Sample && row.combos > 1) {
    double ss = 0.0;
    for (int l : lengths) ss += (l - row.avg_len) * (l - row.avg_len);
    row.avg_len_stderr = std::sqrt(ss / static_cast<double>(row.combos - 1) / static_cast<double>(row.combos));
  }
  row.min_qpg = static_cast<double>(row.min_len) / n;
  row.max_qpg = static_cast<double>(row.max_len) / n;
  row.avg_qpg = row.avg_len / n;
  return row;
}

// Solves every combination (indices into `perms`, identity implied) and
// returns lengths in input order regardless of scheduling.
std::vector<int> solve_all(const std::vector<Sequence>& perms,
                           const std::vector<std::vector<int>>& combos, const CensusOptions& options) {
  std::vector<int> lengths(combos.size(), 0);
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(combos.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    std::vector<Sequence> set;
    for (std::size_t i = next++; i < combos.size(); i = next++) {
      set.assign(1, perms[0]);
      for (int idx : combos[i]) set.push_back(perms[idx]);
      lengths[i] = scs_exact(set, options.n_max).length;
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return lengths;
}

std::vector<std::vector<int>> all_combos(int total, int choose) {
  // Lexicographic (choose)-subsets of {1, ..., total - 1}.
  std::vector<std::vector<int>> out;
  std::vector<int> c(choose);
  std::iota(c.begin(), c.end(), 1);
  const int top = total - 1;
  while (true) {
    out.push_back(c);
    int i = choose - 1;
    while (i >= 0 && c[i] == top - (choose - 1 - i)) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < choose; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<int>> sampled_combos(int total, int choose, std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<int> pool(total - 1);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<std::vector<int>> out;
  out.reserve(count);
  for (std::uint64_t s = 0; s < count; ++s) {
    // Partial Fisher-Yates: the first `choose` slots become the sample.
    for (int i = 0; i < choose; ++i) {
      const auto j = i + static_cast<int>(rng::bounded(gen, static_cast<std::uint64_t>(pool.size() - i)));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> pick(pool.begin(), pool.begin() + choose);
    std::sort(pick.begin(), pick.end());
    out.push_back(std::move(pick));
  }
  return out;
}

CensusRow lattice_row(int n, int p) {
  const ScsLattice& lattice = ScsLattice::for_n(n);
  const std::uint32_t full = (1u << lattice.perm_count()) - 1u;
  std::vector<int> hist(64, 0);
  std::uint64_t combos = 0, sum = 0;
  int lo = std::numeric_limits<int>::max(), hi = 0;
  // Masks with bit 0 (the identity) and p bits set.
  for (std::uint32_t rest = 0; rest <= (full >> 1); ++rest) {
    if (std::popcount(rest) != p - 1) continue;
    const int len = lattice.length((rest << 1) | 1u);
    ++combos;
    sum += static_cast<std::uint64_t>(len);
    lo = std::min(lo, len);
    hi = std::max(hi, len);
  }
  CensusRow row;
  row.n = n;
  row.p = p;
  row.combos = combos;
  row.min_len = lo;
  row.max_len = hi;
  row.sum_len = sum;
  row.avg_len = static_cast<double>(sum) / static_cast<double>(combos);
  row.min_qpg = static_cast<double>(lo) / n;
  row.max_qpg = static_cast<double>(hi) / n;
  row.avg_qpg = row.avg_len / n;
  return row;
}

CensusRow sample_row(int n, int p, const CensusOptions& options) {
  const auto perms = all_permutations(n);
  const int total = static_cast<int>(perms.size());
  if (options.sample_count == 0) throw Error(ErrorCode::DomainError, "sample count must be positive");
  const auto combos = sampled_combos(total, p - 1, options.sample_count, options.seed);
  return finish(n, p, CensusMode::Sample, solve_all(perms, combos, options));
}

// Returns false when neither engine may run the exhaustive census.
bool exhaustive_row(int n, int p, const CensusOptions& options, CensusRow& row) {
  const unsigned long long total = factorial(n);
  const std::uint64_t count = binomial(total - 1, static_cast<std::uint64_t>(p - 1));
  const bool lattice_ok = n <= 4;
  if (options.engine == CensusEngine::Lattice) {
    if (!lattice_ok) throw Error(ErrorCode::LimitExceeded, "subset lattice supports N <= 4 only");
    row = lattice_row(n, p);
    return true;
  }
  if (count <= options.budget) {
    const auto perms = all_permutations(n);
    const auto combos = all_combos(static_cast<int>(perms.size()), p - 1);
    row = finish(n, p, CensusMode::Exhaustive, solve_all(perms, combos, options));
    return true;
  }
  if (options.engine == CensusEngine::Auto && lattice_ok) {
    row = lattice_row(n, p);
    return true;
  }
  return false;
}

}  // namespace

CensusRow census(int n, int p, const CensusOptions& options) {
  check_args(n, p);
  if (n > options.n_max) {
    throw Error(ErrorCode::LimitExceeded, "N = " + std::to_string(n) + " exceeds the solver limit");
  }
  if (options.mode == CensusMode::Sample) return sample_row(n, p, options);
  CensusRow row;
  if (!exhaustive_row(n, p, options, row)) {
    const std::uint64_t count = binomial(factorial(n) - 1, static_cast<std::uint64_t>(p - 1));
    throw Error(ErrorCode::BudgetExceeded, "exhaustive census needs " + std::to_string(count) +
                                               " combinations, budget is " +
                                               std::to_string(options.budget));
  }
  return row;
}

std::vector<CensusRow> census_sweep(int n, int p_min, int p_max, const CensusOptions& options) {
  if (p_min > p_max) throw Error(ErrorCode::DomainError, "p_min exceeds p_max");
  check_args(n, p_min);
  check_args(n, p_max);
  std::vector<CensusRow> rows;
  for (int p = p_min; p <= p_max; ++p) {
    if (options.mode == CensusMode::Sample) {
      rows.push_back(sample_row(n, p, options));
      continue;
    }
    CensusRow row;
    if (!exhaustive_row(n, p, options, row)) row = sample_row(n, p, options);
    rows.push_back(row);
  }
  return rows;
}

std::string census_csv_header() {
  return "N,p,combos,mode,min_len,max_len,avg_len,min_qpg,max_qpg,avg_qpg,switch_qpg";
}

std::string census_csv_row(const CensusRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%d,%llu,%s,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f", row.n, row.p,
                static_cast<unsigned long long>(row.combos),
                row.mode == CensusMode::Exhaustive ? "exhaustive" : "sample", row.min_len, row.max_len,
                row.avg_len, row.min_qpg, row.max_qpg, row.avg_qpg, row.switch_qpg);
  return buf;
}

}  // namespace chpp
