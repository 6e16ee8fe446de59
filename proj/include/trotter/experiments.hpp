#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "trotter/formulas.hpp"
#include "trotter/hamiltonian.hpp"
#include "trotter/linalg.hpp"

namespace trotter {

/// Strictly increasing, uniformly log-spaced values from lo to hi inclusive.
class ExperimentGrid {
 public:
  static ExperimentGrid log_spaced(double lo, double hi, std::size_t count);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t count() const noexcept { return values_.size(); }
  double lo() const noexcept { return values_.front(); }
  double hi() const noexcept { return values_.back(); }

 private:
  explicit ExperimentGrid(std::vector<double> values)
      : values_(std::move(values)) {}
  std::vector<double> values_;
};

/// round(10^x) for `count` points x evenly spaced in [0, log10(max_m)],
/// ties to even, duplicates removed.
std::vector<std::uint64_t> integer_log_grid(std::uint64_t max_m,
                                            std::size_t count = 20);

struct RegressionResult {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares of ln(ys) on ln(xs). Needs >= 3 positive points.
RegressionResult loglog_regress(std::span<const double> xs,
                                std::span<const double> ys);

/// A = [[2.2, 6.9], [4.2, 6.66]] split as B = triu(A, 1) + diag(A)/2 and
/// C = tril(A, -1) + diag(A)/2, so A = B + C with [B, C] != 0.
struct SplitMatrices {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
};
SplitMatrices reference_split_matrices();

struct TimeScalingRow {
  int order;
  double t;
  double rel_error;
};

struct TimeScalingResult {
  std::vector<TimeScalingRow> rows;
  /// Per-order fit of ln(rel_error) on ln(t); absent when the series sits at
  /// the floating-point floor.
  std::map<int, RegressionResult> regressions;
};

/**
 * Single-step relative error ||S_order(t) - e^{z t H}|| / ||e^{z t H}|| for
 * every order and grid time, H = `exact_sum`.
 *
 * Rejects grids with ||H|| * hi > 50.
 */
TimeScalingResult error_vs_time(const TermList& terms,
                                const ComplexMatrix& exact_sum,
                                std::span<const int> orders,
                                const ExperimentGrid& grid, EvolutionMode mode);

struct CostRow {
  int order;
  std::uint64_t m;
  std::uint64_t cost;
  double rel_error;
};

/// Relative error of S_order(t/m)^m against e^{z t sum H}, with cost
/// m * exp_count(order, L), for m over integer_log_grid(max m of the order).
std::vector<CostRow> error_vs_cost(
    const TermList& terms, std::span<const int> orders,
    const std::map<int, std::uint64_t>& per_order_max_m, double t,
    EvolutionMode mode);

/// Largest m tried by the empirical search of theory_vs_empirical.
inline constexpr std::uint64_t kEmpiricalSearchCap = 1000;

struct TightnessRow {
  double epsilon;
  std::uint64_t m_theory;
  /// Smallest m <= kEmpiricalSearchCap with absolute error <= epsilon.
  std::optional<std::uint64_t> m_empirical;
};

/// m_theory (with tau = tau(terms, 1)) against the smallest m whose absolute
/// error ||S_order(1/m)^m - e^{z sum H}|| is within epsilon, found by linear
/// search from m = 1.
std::vector<TightnessRow> theory_vs_empirical(const TermList& terms, int order,
                                              const ExperimentGrid& eps_grid,
                                              EvolutionMode mode);

struct BoundRow {
  std::size_t n;
  std::size_t term_count;
  double tau;
  double bound;
};

/// k-independent N_exp bound for the n-site Ising chain (L = 2n - 1,
/// tau = n) for n in [n_lo, n_hi].
std::vector<BoundRow> ising_bound_curve(std::size_t n_lo, std::size_t n_hi,
                                        double eps);

// CSV output, 17 significant digits, LF line endings.
void write_csv(std::ostream& out, std::span<const TimeScalingRow> rows);
void write_csv(std::ostream& out,
               const std::map<int, RegressionResult>& regressions);
void write_csv(std::ostream& out, std::span<const CostRow> rows);
void write_csv(std::ostream& out, std::span<const TightnessRow> rows);
void write_csv(std::ostream& out, std::span<const BoundRow> rows);

}  // namespace trotter
