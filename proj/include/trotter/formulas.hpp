#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trotter/hamiltonian.hpp"
#include "trotter/linalg.hpp"

namespace trotter {

/// One exponential e^{z * coeff * t * H_term} of a product formula.
struct Factor {
  std::size_t term;
  double coeff;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/**
 * Flattened product formula over L terms.
 *
 * Factors are listed in the written (left-to-right) product order: the first
 * factor is the outermost operator, i.e. the last one applied to a state.
 * Adjacent factors never share a term index.
 */
class Schedule {
 public:
  Schedule(std::size_t term_count, std::vector<Factor> factors, int order);

  std::size_t term_count() const noexcept { return term_count_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  /// Claimed approximation order.
  int order() const noexcept { return order_; }

  /// Sum of coefficients per term index; each should be 1.
  std::vector<double> coefficient_sums() const;

 private:
  std::size_t term_count_;
  std::vector<Factor> factors_;
  int order_;
};

enum class EvolutionMode {
  kReal,       ///< factors are e^{c t H}
  kImaginary,  ///< factors are e^{-i c t H}
};

/// Lie-Trotter: e^{H_1 t} ... e^{H_L t}.
Schedule first_order(std::size_t term_count);

/// Symmetric second-order formula: half steps on H_1..H_{L-1} around a full
/// step on H_L.
Schedule strang(std::size_t term_count);

/// s_k = 1 / (4 - 4^{1/(2k-1)}), the five-factor recursion coefficient.
double suzuki_coefficient(int k);

/// s_k = 1 / (2 - 2^{1/(2k-1)}), the three-factor recursion coefficient.
/// Exceeds 1 for every k, so it is not offered as a schedule.
double triplet_coefficient(int k);

/// a = 1 / ((r-1) - (r-1)^{1/k}), root of (r-1) a^k + (1-(r-1)a)^k = 0.
/// Requires r >= 3 and odd k >= 3 (even k has no real root).
double general_r_coefficient(int r, int k);

/**
 * Suzuki's fractal formula of even `order`:
 * S_{2k}(t) = S_{2k-2}(s_k t)^2 S_{2k-2}((1 - 4 s_k) t) S_{2k-2}(s_k t)^2,
 * expanded and merged down to exp_count(order, L) factors.
 */
Schedule suzuki(int order, std::size_t term_count);

/**
 * Dense product of the schedule's exponentials at time t.
 *
 * Exponentials are cached per call on (term, coeff); the cached path yields
 * bitwise the same result as recomputing each factor.
 */
ComplexMatrix evaluate(const Schedule& schedule, const TermList& terms,
                       double t, EvolutionMode mode);

/// evaluate(schedule, terms, t/m, mode)^m.
ComplexMatrix repeat_evaluate(const Schedule& schedule, const TermList& terms,
                              double t, std::uint64_t steps,
                              EvolutionMode mode);

/// 2(L-1) 5^{order/2-1} + 1, the flattened length of suzuki(order, L).
std::uint64_t exp_count(int order, std::size_t term_count);

/**
 * Steps m = ceil((2 L 5^{k-1} tau)^{1+1/2k} / eps^{1/2k}) that guarantee
 * error <= eps for the order-2k formula.
 *
 * Only defined inside eps <= 1 <= 2 L 5^{k-1} tau; outside that window this
 * throws std::domain_error naming the violated side.
 */
std::uint64_t m_theory(int k, std::size_t term_count, double tau, double eps);

/// L 5^{2k} (L tau)^{1+1/2k} / eps^{1/2k}; same validity window as m_theory.
double nexp_bound(int k, std::size_t term_count, double tau, double eps);

/// round(sqrt(log_5(L tau / eps) + 1) / 2), clamped to >= 1.
int optimal_k(std::size_t term_count, double tau, double eps);

/// 25 L^2 tau 5^{2 sqrt(log_5(L tau / eps) + 1)}.
double nexp_bound_k_free(std::size_t term_count, double tau, double eps);

}  // namespace trotter
