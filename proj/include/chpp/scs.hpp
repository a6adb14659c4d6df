#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace chpp {

/// Gate indices in application order.
using Sequence = std::vector<int>;

inline constexpr int kDefaultScsMaxN = 6;

struct ScsResult {
  int length = 0;
  // Application order, first-applied first. Reversing every input reverses
  // the witness but leaves the length unchanged.
  Sequence witness;
};

/// True iff t is a (not necessarily contiguous) subsequence of s.
bool is_supersequence(std::span<const int> s, std::span<const int> t);

/// Shortest common supersequence of two sequences (classic LCS table).
Sequence scs_pair(std::span<const int> a, std::span<const int> b);

/// Upper-bound witness: folds scs_pair over the inputs in order.
Sequence scs_greedy(const std::vector<Sequence>& perms);

/// Certified-minimal common supersequence of a set of permutations of
/// 0..N-1. Duplicate inputs are ignored. Throws LimitExceeded when N > n_max.
///
/// A* over frontier vectors (how much of each input has been matched). The
/// heuristic is the largest pairwise SCS of the unmatched suffixes, which is
/// consistent, so the first goal settled is optimal. Bounded above by the
/// greedy witness.
ScsResult scs_exact(const std::vector<Sequence>& perms, int n_max = kDefaultScsMaxN);

/// Test-only oracle: iterative deepening over every string of length L on the
/// alphabet, L = max input length .. l_max. Exponential; keep N <= 4.
std::optional<int> scs_brute_oracle(const std::vector<Sequence>& perms, int l_max);

/// All permutations of 0..n-1 in lexicographic order (identity first).
std::vector<Sequence> all_permutations(int n);

/// Exact SCS length of every subset of S_N (N <= 4), indexed by bitmask over
/// all_permutations(N). Built from the cover sets of all strings by a
/// superset-minimum transform; independent of scs_exact.
class ScsLattice {
 public:
  explicit ScsLattice(int n);

  /// Shared, lazily built table.
  static const ScsLattice& for_n(int n);

  int n() const { return n_; }
  int perm_count() const { return perm_count_; }
  /// SCS length of the subset `mask` (0 for the empty set).
  int length(std::uint32_t mask) const { return lengths_[mask]; }

 private:
  int n_ = 0;
  int perm_count_ = 0;
  std::vector<std::uint8_t> lengths_;
};

}  // namespace chpp
