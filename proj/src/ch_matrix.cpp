#include "chpp/ch_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "chpp/errors.hpp"

namespace chpp {

namespace {

// Largest turn denominator for which unitarity of an exact matrix is decided
// symbolically; larger ones fall back to the float check.
constexpr std::int64_t kMaxCyclotomicOrder = 1 << 13;

using Poly = std::vector<std::int64_t>;

// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const Poly& cyclotomic(std::int64_t n, std::map<std::int64_t, Poly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  // x^n - 1
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const Poly& div = cyclotomic(d, memo);
    const std::size_t deg = div.size() - 1;
    Poly quot(num.size() - deg, 0);
    for (std::size_t i = num.size(); i-- > deg;) {
      const std::int64_t c = num[i];
      quot[i - deg] = c;
      if (c == 0) continue;
      for (std::size_t t = 0; t <= deg; ++t) num[i - deg + t] -= c * div[t];
    }
    num = std::move(quot);
  }
  return memo.emplace(n, std::move(num)).first->second;
}

// Decides whether sum_e counts[e] * zeta_L^e vanishes, by reducing the
// polynomial modulo the L-th cyclotomic polynomial.
bool root_sum_is_zero(Poly counts, std::int64_t order,
                      std::map<std::int64_t, Poly>& memo) {
  const Poly& phi = cyclotomic(order, memo);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = counts.size(); i-- > deg;) {
    const std::int64_t c = counts[i];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= deg; ++t) counts[i - deg + t] -= c * phi[t];
  }
  return std::all_of(counts.begin(), counts.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t nearest_multiple(double radians, std::int64_t d) {
  return std::llround(radians * static_cast<double>(d) / kTwoPi);
}

bool fits_root_of_unity(double radians, std::int64_t d, double eps_phase) {
  const std::int64_t q = nearest_multiple(radians, d);
  return circular_distance(radians, kTwoPi * static_cast<double>(q) / static_cast<double>(d)) <=
         eps_phase;
}

std::vector<double> row_pair_moduli(const CHMatrix& m) {
  const int p = m.order();
  std::vector<double> out;
  for (int j = 0; j < p; ++j) {
    for (int l = j + 1; l < p; ++l) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < p; ++k) acc += m.entry(j, k) * std::conj(m.entry(l, k));
      out.push_back(std::abs(acc));
    }
  }
  return out;
}

}  // namespace

CHMatrix CHMatrix::from_exact(int order, std::vector<ExactTurn> phases) {
  if (order < 1 || phases.size() != static_cast<std::size_t>(order) * order) {
    throw Error(ErrorCode::MalformedMatrix, "phase grid is not square of order " +
                                                std::to_string(order));
  }
  CHMatrix m(order, Rep::Exact);
  m.exact_ = std::move(phases);
  return m;
}

CHMatrix CHMatrix::from_radians(int order, std::vector<double> phases) {
  if (order < 1 || phases.size() != static_cast<std::size_t>(order) * order) {
    throw Error(ErrorCode::MalformedMatrix, "phase grid is not square of order " +
                                                std::to_string(order));
  }
  for (double& v : phases) {
    if (!std::isfinite(v)) throw Error(ErrorCode::MalformedMatrix, "non-finite phase");
    v = wrap_phase(v);
  }
  CHMatrix m(order, Rep::Float);
  m.radians_ = std::move(phases);
  return m;
}

CHMatrix CHMatrix::from_grid(const std::vector<std::vector<PhaseValue>>& grid) {
  const int p = static_cast<int>(grid.size());
  if (p == 0) throw Error(ErrorCode::MalformedMatrix, "empty phase grid");
  for (const auto& row : grid) {
    if (row.size() != grid.size()) {
      throw Error(ErrorCode::MalformedMatrix, "phase grid is not square");
    }
  }
  const bool exact = std::holds_alternative<ExactTurn>(grid[0][0]);
  std::vector<ExactTurn> ex;
  std::vector<double> fl;
  for (const auto& row : grid) {
    for (const auto& v : row) {
      if (std::holds_alternative<ExactTurn>(v) != exact) {
        throw Error(ErrorCode::MalformedMatrix, "mixed exact and float phases");
      }
      if (exact) {
        ex.push_back(std::get<ExactTurn>(v));
      } else {
        fl.push_back(std::get<FloatRadians>(v).value());
      }
    }
  }
  return exact ? from_exact(p, std::move(ex)) : from_radians(p, std::move(fl));
}

std::size_t CHMatrix::index(int row, int col) const {
  return static_cast<std::size_t>(row) * order_ + col;
}

PhaseValue CHMatrix::phase(int row, int col) const {
  if (rep_ == Rep::Exact) return exact_[index(row, col)];
  return FloatRadians(radians_[index(row, col)]);
}

double CHMatrix::radians(int row, int col) const {
  return rep_ == Rep::Exact ? exact_[index(row, col)].radians() : radians_[index(row, col)];
}

std::complex<double> CHMatrix::entry(int row, int col) const {
  return std::polar(1.0, radians(row, col));
}

const ExactTurn& CHMatrix::exact(int row, int col) const {
  if (rep_ != Rep::Exact) throw Error(ErrorCode::DomainError, "matrix is not exact");
  return exact_[index(row, col)];
}

bool CHMatrix::is_dephased(double eps_phase) const {
  for (int i = 0; i < order_; ++i) {
    if (rep_ == Rep::Exact) {
      if (exact(0, i).num() != 0 || exact(i, 0).num() != 0) return false;
    } else if (circular_distance(radians(0, i), 0.0) > eps_phase ||
               circular_distance(radians(i, 0), 0.0) > eps_phase) {
      return false;
    }
  }
  return true;
}

bool CHMatrix::approx_equal(const CHMatrix& other, double eps_phase) const {
  if (order_ != other.order_) return false;
  for (int j = 0; j < order_; ++j) {
    for (int k = 0; k < order_; ++k) {
      if (rep_ == Rep::Exact && other.rep_ == Rep::Exact) {
        if (!(exact(j, k) == other.exact(j, k))) return false;
      } else if (circular_distance(radians(j, k), other.radians(j, k)) > eps_phase) {
        return false;
      }
    }
  }
  return true;
}

ValidationReport validate_ch(const CHMatrix& m, double eps_unitary) {
  const int p = m.order();
  ValidationReport report;
  const auto moduli = row_pair_moduli(m);
  for (double v : moduli) report.max_row_pair_deviation = std::max(report.max_row_pair_deviation, v);

  if (m.rep() == Rep::Exact) {
    std::int64_t order = 1;
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) order = std::lcm(order, m.exact(j, k).den());
    }
    if (order <= kMaxCyclotomicOrder) {
      std::map<std::int64_t, Poly> memo;
      report.ok = true;
      for (int j = 0; j < p && report.ok; ++j) {
        for (int l = j + 1; l < p && report.ok; ++l) {
          Poly counts(order, 0);
          for (int k = 0; k < p; ++k) {
            const ExactTurn diff = m.exact(j, k) - m.exact(l, k);
            counts[diff.num() * (order / diff.den())] += 1;
          }
          report.ok = root_sum_is_zero(std::move(counts), order, memo);
        }
      }
      return report;
    }
  }
  report.ok = std::all_of(moduli.begin(), moduli.end(),
                          [&](double v) { return v <= eps_unitary * p; });
  return report;
}

Dephasing dephase(const CHMatrix& m) {
  const int p = m.order();
  if (m.rep() == Rep::Exact) {
    std::vector<ExactTurn> rows(p), cols(p), out(static_cast<std::size_t>(p) * p);
    for (int j = 0; j < p; ++j) rows[j] = -m.exact(j, 0);
    for (int k = 0; k < p; ++k) cols[k] = -(m.exact(0, k) + rows[0]);
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) out[j * p + k] = m.exact(j, k) + rows[j] + cols[k];
    }
    return {CHMatrix::from_exact(p, std::move(out)),
            std::vector<PhaseValue>(rows.begin(), rows.end()),
            std::vector<PhaseValue>(cols.begin(), cols.end())};
  }
  std::vector<double> rows(p), cols(p), out(static_cast<std::size_t>(p) * p);
  for (int j = 0; j < p; ++j) rows[j] = -m.radians(j, 0);
  for (int k = 0; k < p; ++k) cols[k] = -(m.radians(0, k) + rows[0]);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) out[j * p + k] = m.radians(j, k) + rows[j] + cols[k];
  }
  // Row 0 and column 0 are zero by construction; pin them so round-off in the
  // subtraction cannot leave 2*pi - tiny behind.
  for (int i = 0; i < p; ++i) out[i] = out[static_cast<std::size_t>(i) * p] = 0.0;
  Dephasing result{CHMatrix::from_radians(p, std::move(out)), {}, {}};
  for (double r : rows) result.row_factors.emplace_back(FloatRadians(r));
  for (double c : cols) result.col_factors.emplace_back(FloatRadians(c));
  return result;
}

CHMatrix apply_diagonal_phases(const CHMatrix& m, const std::vector<PhaseValue>& row,
                               const std::vector<PhaseValue>& col) {
  const int p = m.order();
  if (row.size() != static_cast<std::size_t>(p) || col.size() != static_cast<std::size_t>(p)) {
    throw Error(ErrorCode::SizeMismatch, "diagonal factor length differs from matrix order");
  }
  if (m.rep() == Rep::Exact) {
    std::vector<ExactTurn> out;
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) {
        const auto* r = std::get_if<ExactTurn>(&row[j]);
        const auto* c = std::get_if<ExactTurn>(&col[k]);
        if (r == nullptr || c == nullptr) {
          throw Error(ErrorCode::MalformedMatrix, "float factors applied to an exact matrix");
        }
        out.push_back(m.exact(j, k) + *r + *c);
      }
    }
    return CHMatrix::from_exact(p, std::move(out));
  }
  std::vector<double> out;
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      out.push_back(m.radians(j, k) + to_radians(row[j]) + to_radians(col[k]));
    }
  }
  return CHMatrix::from_radians(p, std::move(out));
}

BHClass classify_bh(const CHMatrix& m, int d_max, double eps_phase) {
  const int p = m.order();
  if (m.rep() == Rep::Exact) {
    std::int64_t d = 1;
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) d = std::lcm(d, m.exact(j, k).den());
    }
    return Butson{d};
  }

  for (std::int64_t d = 1; d <= d_max; ++d) {
    bool all = true;
    for (int j = 0; j < p && all; ++j) {
      for (int k = 0; k < p && all; ++k) all = fits_root_of_unity(m.radians(j, k), d, eps_phase);
    }
    if (all) return Butson{d};
  }

  // Witness: the first entry (row-major) that is no d-th root of unity for any
  // d <= d_max, or whose order pushes the running lcm past d_max.
  std::int64_t running = 1;
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      std::int64_t own = 0;
      for (std::int64_t d = 1; d <= d_max; ++d) {
        if (fits_root_of_unity(m.radians(j, k), d, eps_phase)) {
          own = d;
          break;
        }
      }
      if (own == 0) return NotButson{j, k};
      running = std::lcm(running, own);
      if (running > d_max) return NotButson{j, k};
    }
  }
  return NotButson{p - 1, p - 1};
}

std::optional<std::int64_t> min_target_dimension(const CHMatrix& m, int d_max,
                                                 double eps_phase) {
  const BHClass cls = classify_bh(m, d_max, eps_phase);
  if (const auto* b = std::get_if<Butson>(&cls)) return b->complexity;
  return std::nullopt;
}

bool entries_are_roots_of_unity(const CHMatrix& m, std::int64_t D, double eps_phase) {
  if (D < 1) return false;
  const int p = m.order();
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      if (m.rep() == Rep::Exact) {
        if (D % m.exact(j, k).den() != 0) return false;
      } else if (circular_distance(static_cast<double>(D) * m.radians(j, k), 0.0) >
                 static_cast<double>(D) * eps_phase) {
        return false;
      }
    }
  }
  return true;
}

CHMatrix fourier(int d) {
  if (d < 1) throw Error(ErrorCode::DomainError, "fourier order must be >= 1");
  std::vector<ExactTurn> phases;
  phases.reserve(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) phases.emplace_back((static_cast<std::int64_t>(j) * k) % d, d);
  }
  return CHMatrix::from_exact(d, std::move(phases));
}

CHMatrix sylvester_hadamard(int k) {
  if (k < 0 || k > 12) throw Error(ErrorCode::DomainError, "sylvester exponent must be in [0, 12]");
  const int p = 1 << k;
  std::vector<ExactTurn> phases;
  phases.reserve(static_cast<std::size_t>(p) * p);
  for (int j = 0; j < p; ++j) {
    for (int l = 0; l < p; ++l) phases.emplace_back(std::popcount(static_cast<unsigned>(j & l)) % 2, 2);
  }
  return CHMatrix::from_exact(p, std::move(phases));
}

CHMatrix f4_family(double a) {
  if (!(a >= 0.0 && a < std::numbers::pi)) {
    throw Error(ErrorCode::DomainError, "f4 family parameter must lie in [0, pi)");
  }
  const double h = std::numbers::pi / 2.0;
  const double pi = std::numbers::pi;
  return CHMatrix::from_radians(4, {0, 0, 0, 0,                          //
                                    0, h + a, pi, 3 * h + a,             //
                                    0, pi, 0, pi,                        //
                                    0, 3 * h + a, pi, h + a});
}

CHMatrix f4_family(ExactTurn a) {
  // a in [0, pi) is a turn fraction in [0, 1/2).
  if (2 * a.num() >= a.den()) {
    throw Error(ErrorCode::DomainError, "f4 family parameter must lie in [0, pi)");
  }
  const ExactTurn zero(0, 1), quarter(1, 4), half(1, 2), three(3, 4);
  return CHMatrix::from_exact(4, {zero, zero, zero, zero,                  //
                                  zero, quarter + a, half, three + a,      //
                                  zero, half, zero, half,                  //
                                  zero, three + a, half, quarter + a});
}

}  // namespace chpp
