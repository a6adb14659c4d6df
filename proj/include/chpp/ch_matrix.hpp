#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "chpp/phase.hpp"

namespace chpp {

inline constexpr double kDefaultEpsPhase = 1e-9;
inline constexpr double kDefaultEpsUnitary = 1e-9;
inline constexpr int kDefaultButsonSearch = 4096;

enum class Rep { Exact, Float };

// A p x p matrix with unimodular entries, stored through its log-Hadamard
// phases. The representation is homogeneous: either every entry is an exact
// fraction of a turn or every entry is a float angle.
class CHMatrix {
 public:
  static CHMatrix from_exact(int order, std::vector<ExactTurn> phases);
  static CHMatrix from_radians(int order, std::vector<double> phases);
  // Rejects ragged grids and mixed exact/float entries with MalformedMatrix.
  static CHMatrix from_grid(const std::vector<std::vector<PhaseValue>>& grid);

  int order() const { return order_; }
  Rep rep() const { return rep_; }

  PhaseValue phase(int row, int col) const;
  double radians(int row, int col) const;
  std::complex<double> entry(int row, int col) const;
  // Only valid for Rep::Exact.
  const ExactTurn& exact(int row, int col) const;

  // Row 0 and column 0 phases are zero (exactly, or within eps for Float).
  bool is_dephased(double eps_phase = kDefaultEpsPhase) const;

  // Entrywise phase equality up to circular distance eps (exact compare when
  // both are Exact).
  bool approx_equal(const CHMatrix& other, double eps_phase = kDefaultEpsPhase) const;

 private:
  CHMatrix(int order, Rep rep) : order_(order), rep_(rep) {}

  std::size_t index(int row, int col) const;

  int order_ = 0;
  Rep rep_ = Rep::Exact;
  std::vector<ExactTurn> exact_;
  std::vector<double> radians_;
};

struct ValidationReport {
  bool ok = false;
  // Largest |<row_j, row_l>| over distinct row pairs, evaluated in floating
  // point. For exact matrices `ok` is decided exactly, independent of this.
  double max_row_pair_deviation = 0.0;
};

ValidationReport validate_ch(const CHMatrix& m, double eps_unitary = kDefaultEpsUnitary);

struct Dephasing {
  CHMatrix matrix;
  std::vector<PhaseValue> row_factors;
  std::vector<PhaseValue> col_factors;
};

/// Returns D1 * m * D2 in dephased form together with the phases of D1 and D2.
/// Rows are normalized against column 0 first, then columns against the new
/// row 0.
Dephasing dephase(const CHMatrix& m);

/// Applies diag(e^{i row}) * m * diag(e^{i col}). Representations must match.
CHMatrix apply_diagonal_phases(const CHMatrix& m, const std::vector<PhaseValue>& row,
                               const std::vector<PhaseValue>& col);

struct Butson {
  std::int64_t complexity = 1;
  friend bool operator==(const Butson&, const Butson&) = default;
};

struct NotButson {
  int row = 0;
  int col = 0;
  friend bool operator==(const NotButson&, const NotButson&) = default;
};

// NotButson on a float matrix means "no complexity d <= d_max fits".
using BHClass = std::variant<Butson, NotButson>;

BHClass classify_bh(const CHMatrix& m, int d_max = kDefaultButsonSearch,
                    double eps_phase = kDefaultEpsPhase);

/// Smallest finite target dimension able to host the promise, or nullopt when
/// only a continuous-variable target can.
std::optional<std::int64_t> min_target_dimension(const CHMatrix& m,
                                                 int d_max = kDefaultButsonSearch,
                                                 double eps_phase = kDefaultEpsPhase);

/// True iff every entry satisfies M_jk^D = 1 (within eps for Float).
bool entries_are_roots_of_unity(const CHMatrix& m, std::int64_t D,
                                double eps_phase = kDefaultEpsPhase);

CHMatrix fourier(int d);
CHMatrix sylvester_hadamard(int k);
// Family parameter a in [0, pi), as radians or as an exact fraction of a turn
// (which must lie in [0, 1/2)).
CHMatrix f4_family(double a);
CHMatrix f4_family(ExactTurn a);

}  // namespace chpp
