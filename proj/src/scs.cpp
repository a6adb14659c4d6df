#include "chpp/scs.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "chpp/errors.hpp"

namespace chpp {

bool is_supersequence(std::span<const int> s, std::span<const int> t) {
  std::size_t i = 0;
  for (int c : s) {
    if (i < t.size() && t[i] == c) ++i;
  }
  return i == t.size();
}

Sequence scs_pair(std::span<const int> a, std::span<const int> b) {
  const std::size_t n = a.size(), m = b.size();
  // lcs[i][j] = LCS of a[i:] and b[j:].
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  Sequence out;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j]) {
      out.push_back(a[i]);
      ++i;
      ++j;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
    }
  }
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return out;
}

Sequence scs_greedy(const std::vector<Sequence>& perms) {
  if (perms.empty()) return {};
  Sequence acc = perms.front();
  for (std::size_t i = 1; i < perms.size(); ++i) acc = scs_pair(acc, perms[i]);
  return acc;
}

std::vector<Sequence> all_permutations(int n) {
  Sequence p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Sequence> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

int validate_permutations(const std::vector<Sequence>& perms) {
  if (perms.empty()) throw Error(ErrorCode::DomainError, "empty permutation set");
  const int n = static_cast<int>(perms.front().size());
  if (n == 0) throw Error(ErrorCode::DomainError, "empty permutation");
  for (const auto& p : perms) {
    if (static_cast<int>(p.size()) != n) {
      throw Error(ErrorCode::SizeMismatch, "permutations of different lengths");
    }
    std::vector<bool> seen(n, false);
    for (int v : p) {
      if (v < 0 || v >= n || seen[v]) throw Error(ErrorCode::DomainError, "not a permutation of 0..N-1");
      seen[v] = true;
    }
  }
  return n;
}

// Pairs beyond this many inputs are left out of the heuristic; any subset of
// pairs still gives an admissible bound.
constexpr int kHeuristicInputs = 40;

// A* over frontier vectors. Every term of the heuristic drops by at most one
// per emitted symbol, so it is consistent and each state is settled once.
class FrontierSearch {
 public:
  FrontierSearch(std::vector<Sequence> perms, int n) : perms_(std::move(perms)), n_(n) {
    m_ = static_cast<int>(perms_.size());
    const int h = std::min(m_, kHeuristicInputs);
    for (int i = 0; i < h; ++i) {
      for (int l = i + 1; l < h; ++l) {
        pairs_.push_back({i, l, suffix_scs(perms_[i], perms_[l])});
      }
    }
  }

  ScsResult solve() {
    const int upper = static_cast<int>(scs_greedy(perms_).size());
    std::vector<std::vector<Entry>> buckets(static_cast<std::size_t>(upper) + 1);
    const std::string start(static_cast<std::size_t>(m_), '\0');
    add_state(start, 0, 0, 0);
    buckets[heuristic(start)].push_back({0, 0});

    for (int f = 0; f <= upper; ++f) {
      // LIFO within a bucket favours deeper states, which reach the goal sooner.
      while (!buckets[f].empty()) {
        const Entry e = buckets[f].back();
        buckets[f].pop_back();
        if (e.g != states_[e.id].g) continue;
        if (is_goal(keys_[e.id])) return reconstruct(e.id);
        for (int c = 0; c < n_; ++c) {
          std::string t = keys_[e.id];
          bool advanced = false;
          for (int i = 0; i < m_; ++i) {
            if (t[i] < n_ && perms_[i][t[i]] == c) {
              ++t[i];
              advanced = true;
            }
          }
          if (!advanced) continue;
          const int g = e.g + 1;
          auto it = index_.find(t);
          std::uint32_t id;
          if (it == index_.end()) {
            const int ft = g + heuristic(t);
            if (ft > upper) continue;
            id = add_state(std::move(t), g, e.id, c);
            buckets[ft].push_back({id, g});
          } else {
            id = it->second;
            if (states_[id].g <= g) continue;
            states_[id] = {g, e.id, c, states_[id].h};
            buckets[g + states_[id].h].push_back({id, g});
          }
        }
      }
    }
    // The greedy witness is a valid supersequence, so the loop must return.
    throw Error(ErrorCode::DomainError, "scs search failed to reach the greedy bound");
  }

 private:
  struct PairTable {
    int a = 0, b = 0;
    // rem[x * (n + 1) + y] = SCS length of perms[a][x:] and perms[b][y:].
    std::vector<std::uint8_t> rem;
  };

  struct State {
    int g = 0;
    std::uint32_t parent = 0;
    int symbol = 0;
    int h = 0;
  };

  struct Entry {
    std::uint32_t id = 0;
    int g = 0;
  };

  std::vector<std::uint8_t> suffix_scs(const Sequence& a, const Sequence& b) const {
    const int w = n_ + 1;
    std::vector<int> lcs(static_cast<std::size_t>(w) * w, 0);
    for (int x = n_ - 1; x >= 0; --x) {
      for (int y = n_ - 1; y >= 0; --y) {
        lcs[x * w + y] = a[x] == b[y] ? lcs[(x + 1) * w + y + 1] + 1
                                      : std::max(lcs[(x + 1) * w + y], lcs[x * w + y + 1]);
      }
    }
    std::vector<std::uint8_t> rem(lcs.size());
    for (int x = 0; x <= n_; ++x) {
      for (int y = 0; y <= n_; ++y) {
        rem[x * w + y] = static_cast<std::uint8_t>((n_ - x) + (n_ - y) - lcs[x * w + y]);
      }
    }
    return rem;
  }

  int heuristic(std::string_view state) const {
    int h = 0;
    for (char c : state) h = std::max(h, n_ - c);
    const int w = n_ + 1;
    for (const auto& t : pairs_) h = std::max<int>(h, t.rem[state[t.a] * w + state[t.b]]);
    return h;
  }

  bool is_goal(std::string_view state) const {
    return std::all_of(state.begin(), state.end(), [&](char c) { return c == n_; });
  }

  std::uint32_t add_state(std::string key, int g, std::uint32_t parent, int symbol) {
    const auto id = static_cast<std::uint32_t>(keys_.size());
    states_.push_back({g, parent, symbol, heuristic(key)});
    index_.emplace(key, id);
    keys_.push_back(std::move(key));
    return id;
  }

  ScsResult reconstruct(std::uint32_t id) const {
    Sequence witness;
    for (; id != 0; id = states_[id].parent) witness.push_back(states_[id].symbol);
    std::reverse(witness.begin(), witness.end());
    return {static_cast<int>(witness.size()), std::move(witness)};
  }

  std::vector<Sequence> perms_;
  int n_ = 0;
  int m_ = 0;
  std::vector<PairTable> pairs_;
  std::vector<std::string> keys_;
  std::vector<State> states_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace

ScsResult scs_exact(const std::vector<Sequence>& perms, int n_max) {
  const int n = validate_permutations(perms);
  if (n > n_max) {
    throw Error(ErrorCode::LimitExceeded,
                "N = " + std::to_string(n) + " exceeds the solver limit " + std::to_string(n_max));
  }
  std::vector<Sequence> unique = perms;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (unique.size() == 1) return {n, unique.front()};
  return FrontierSearch(std::move(unique), n).solve();
}

namespace {

bool brute_extend(const std::vector<Sequence>& perms, std::vector<int>& pos, int alphabet,
                  int remaining) {
  bool all = true;
  for (std::size_t i = 0; i < perms.size(); ++i) all = all && pos[i] == static_cast<int>(perms[i].size());
  if (all) return true;
  if (remaining == 0) return false;
  for (int c = 0; c < alphabet; ++c) {
    std::vector<int> saved = pos;
    for (std::size_t i = 0; i < perms.size(); ++i) {
      if (pos[i] < static_cast<int>(perms[i].size()) && perms[i][pos[i]] == c) ++pos[i];
    }
    const bool ok = brute_extend(perms, pos, alphabet, remaining - 1);
    pos = std::move(saved);
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::optional<int> scs_brute_oracle(const std::vector<Sequence>& perms, int l_max) {
  int alphabet = 0;
  int longest = 0;
  for (const auto& p : perms) {
    longest = std::max(longest, static_cast<int>(p.size()));
    for (int v : p) alphabet = std::max(alphabet, v + 1);
  }
  for (int len = longest; len <= l_max; ++len) {
    std::vector<int> pos(perms.size(), 0);
    if (brute_extend(perms, pos, alphabet, len)) return len;
  }
  return std::nullopt;
}

ScsLattice::ScsLattice(int n) : n_(n) {
  if (n < 1 || n > 4) throw Error(ErrorCode::LimitExceeded, "subset lattice supports N <= 4 only");
  const auto perms = all_permutations(n);
  perm_count_ = static_cast<int>(perms.size());
  const std::uint32_t full = (perm_count_ == 32) ? ~0u : ((1u << perm_count_) - 1u);
  lengths_.assign(static_cast<std::size_t>(full) + 1, 0xff);

  // Every string's cover set (inputs it contains) is recorded at the string's
  // length; states with identical frontiers are merged.
  auto cover = [&](const std::string& s) {
    std::uint32_t mask = 0;
    for (int i = 0; i < perm_count_; ++i) {
      if (s[i] == n_) mask |= 1u << i;
    }
    return mask;
  };
  std::vector<std::string> layer{std::string(static_cast<std::size_t>(perm_count_), '\0')};
  for (int depth = 0;; ++depth) {
    bool complete = false;
    for (const auto& s : layer) {
      const std::uint32_t mask = cover(s);
      if (lengths_[mask] == 0xff) lengths_[mask] = static_cast<std::uint8_t>(depth);
      complete = complete || mask == full;
    }
    if (complete) break;
    std::unordered_set<std::string> seen;
    std::vector<std::string> next;
    for (const auto& s : layer) {
      for (int c = 0; c < n_; ++c) {
        std::string t = s;
        bool advanced = false;
        for (int i = 0; i < perm_count_; ++i) {
          if (t[i] < n_ && perms[i][t[i]] == c) {
            ++t[i];
            advanced = true;
          }
        }
        if (advanced && seen.insert(t).second) next.push_back(std::move(t));
      }
    }
    layer = std::move(next);
  }

  // A subset needs no more than the cheapest recorded superset.
  for (int b = 0; b < perm_count_; ++b) {
    const std::uint32_t bit = 1u << b;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      if ((mask & bit) == 0) lengths_[mask] = std::min(lengths_[mask], lengths_[mask | bit]);
      if (mask == full) break;
    }
  }
}

const ScsLattice& ScsLattice::for_n(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<ScsLattice>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<ScsLattice>(n);
  return *slot;
}

}  // namespace chpp
