#include "trotter/formulas.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace trotter {

namespace {

void require_even_order(int order, const char* op) {
  if (order < 2 || order % 2 != 0) {
    throw std::invalid_argument(std::string(op) + ": order must be an even " +
                                "integer >= 2, got " + std::to_string(order));
  }
}

void require_terms(std::size_t term_count, const char* op) {
  if (term_count == 0) {
    throw std::invalid_argument(std::string(op) + ": need at least one term");
  }
}

// Appends `factor`, merging it into the last factor when the term repeats.
void push_merged(std::vector<Factor>& out, Factor factor) {
  if (!out.empty() && out.back().term == factor.term) {
    out.back().coeff += factor.coeff;
  } else {
    out.push_back(factor);
  }
}

void append_scaled(std::vector<Factor>& out, const std::vector<Factor>& base,
                   double scale) {
  for (const auto& f : base) push_merged(out, {f.term, f.coeff * scale});
}

void require_window(int k, std::size_t term_count, double tau, double eps,
                    const char* op) {
  if (k < 1) {
    throw std::invalid_argument(std::string(op) + ": k must be >= 1");
  }
  require_terms(term_count, op);
  if (!(eps > 0.0)) {
    throw std::domain_error(std::string(op) + ": eps must be positive");
  }
  if (!(tau >= 0.0)) {
    throw std::domain_error(std::string(op) + ": tau must be nonnegative");
  }
  if (eps > 1.0) {
    throw std::domain_error(std::string(op) +
                            ": validity window requires eps <= 1, got eps = " +
                            std::to_string(eps));
  }
  const double scale = 2.0 * static_cast<double>(term_count) *
                       std::pow(5.0, k - 1) * tau;
  if (scale < 1.0) {
    throw std::domain_error(std::string(op) +
                            ": validity window requires 2 L 5^(k-1) tau >= 1, "
                            "got " + std::to_string(scale));
  }
}

// log_5(L tau / eps) + 1, the radicand shared by the k heuristic and the
// k-independent bound.
double log5_radicand(std::size_t term_count, double tau, double eps,
                     const char* op) {
  require_terms(term_count, op);
  if (!(tau > 0.0) || !(eps > 0.0)) {
    throw std::domain_error(std::string(op) +
                            ": tau and eps must be positive");
  }
  const double ratio = static_cast<double>(term_count) * tau / eps;
  const double radicand = std::log(ratio) / std::log(5.0) + 1.0;
  if (radicand < 0.0) {
    throw std::domain_error(std::string(op) +
                            ": log_5(L tau / eps) + 1 is negative");
  }
  return radicand;
}

}  // namespace

Schedule::Schedule(std::size_t term_count, std::vector<Factor> factors,
                   int order)
    : term_count_(term_count), factors_(std::move(factors)), order_(order) {
  require_terms(term_count_, "Schedule");
  if (order_ < 1) throw std::invalid_argument("Schedule: order must be >= 1");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].term >= term_count_) {
      throw std::invalid_argument("Schedule: term index " +
                                  std::to_string(factors_[i].term) +
                                  " out of range");
    }
    if (i > 0 && factors_[i].term == factors_[i - 1].term) {
      throw std::invalid_argument(
          "Schedule: adjacent factors share a term index");
    }
  }
}

std::vector<double> Schedule::coefficient_sums() const {
  std::vector<double> sums(term_count_, 0.0);
  for (const auto& f : factors_) sums[f.term] += f.coeff;
  return sums;
}

Schedule first_order(std::size_t term_count) {
  require_terms(term_count, "first_order");
  std::vector<Factor> factors;
  factors.reserve(term_count);
  for (std::size_t j = 0; j < term_count; ++j) factors.push_back({j, 1.0});
  return Schedule(term_count, std::move(factors), 1);
}

Schedule strang(std::size_t term_count) {
  require_terms(term_count, "strang");
  std::vector<Factor> factors;
  factors.reserve(2 * term_count - 1);
  const std::size_t last = term_count - 1;
  for (std::size_t j = 0; j < last; ++j) factors.push_back({j, 0.5});
  factors.push_back({last, 1.0});
  for (std::size_t j = last; j-- > 0;) factors.push_back({j, 0.5});
  return Schedule(term_count, std::move(factors), 2);
}

double suzuki_coefficient(int k) {
  if (k < 2) throw std::invalid_argument("suzuki_coefficient: k must be >= 2");
  return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k - 1.0)));
}

double triplet_coefficient(int k) {
  if (k < 2) {
    throw std::invalid_argument("triplet_coefficient: k must be >= 2");
  }
  return 1.0 / (2.0 - std::pow(2.0, 1.0 / (2.0 * k - 1.0)));
}

double general_r_coefficient(int r, int k) {
  if (r < 3) {
    throw std::invalid_argument("general_r_coefficient: r must be >= 3");
  }
  if (k < 3 || k % 2 == 0) {
    throw std::invalid_argument(
        "general_r_coefficient: k must be odd and >= 3; even k has no real "
        "solution");
  }
  const double outer = static_cast<double>(r - 1);
  return 1.0 / (outer - std::pow(outer, 1.0 / k));
}

Schedule suzuki(int order, std::size_t term_count) {
  require_even_order(order, "suzuki");
  std::vector<Factor> current = strang(term_count).factors();
  for (int k = 2; 2 * k <= order; ++k) {
    const double s = suzuki_coefficient(k);
    const double middle = 1.0 - 4.0 * s;
    std::vector<Factor> next;
    next.reserve(5 * current.size());
    append_scaled(next, current, s);
    append_scaled(next, current, s);
    append_scaled(next, current, middle);
    append_scaled(next, current, s);
    append_scaled(next, current, s);
    current = std::move(next);
  }
  return Schedule(term_count, std::move(current), order);
}

ComplexMatrix evaluate(const Schedule& schedule, const TermList& terms,
                       double t, EvolutionMode mode) {
  if (schedule.term_count() != terms.size()) {
    throw std::invalid_argument(
        "evaluate: schedule has " + std::to_string(schedule.term_count()) +
        " terms but term list has " + std::to_string(terms.size()));
  }
  const Complex z = mode == EvolutionMode::kReal ? Complex{1.0, 0.0}
                                                 : Complex{0.0, -1.0};

  // Keyed on the coefficient's bit pattern so that only bitwise-identical
  // exponents share a cached exponential.
  std::map<std::pair<std::size_t, std::uint64_t>, ComplexMatrix> cache;
  const auto factor_exp = [&](const Factor& f) -> const ComplexMatrix& {
    const auto key = std::make_pair(f.term, std::bit_cast<std::uint64_t>(f.coeff));
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, expm((z * (f.coeff * t)) * terms[f.term])).first;
    }
    return it->second;
  };

  ComplexMatrix result = ComplexMatrix::identity(terms.dim());
  bool first = true;
  for (const auto& f : schedule.factors()) {
    if (first) {
      result = factor_exp(f);
      first = false;
    } else {
      result = matmul(result, factor_exp(f));
    }
  }
  return result;
}

ComplexMatrix repeat_evaluate(const Schedule& schedule, const TermList& terms,
                              double t, std::uint64_t steps,
                              EvolutionMode mode) {
  if (steps == 0) {
    throw std::invalid_argument("repeat_evaluate: steps must be >= 1");
  }
  const ComplexMatrix step =
      evaluate(schedule, terms, t / static_cast<double>(steps), mode);
  return matrix_power(step, steps);
}

std::uint64_t exp_count(int order, std::size_t term_count) {
  require_even_order(order, "exp_count");
  require_terms(term_count, "exp_count");
  std::uint64_t five_pow = 1;
  for (int i = 1; i < order / 2; ++i) five_pow *= 5;
  return 2 * (static_cast<std::uint64_t>(term_count) - 1) * five_pow + 1;
}

std::uint64_t m_theory(int k, std::size_t term_count, double tau, double eps) {
  require_window(k, term_count, tau, eps, "m_theory");
  const double inv = 1.0 / (2.0 * k);
  const double scale = 2.0 * static_cast<double>(term_count) *
                       std::pow(5.0, k - 1) * tau;
  const double m = std::ceil(std::pow(scale, 1.0 + inv) / std::pow(eps, inv));
  if (!(m < 9.0e18)) {
    throw std::overflow_error("m_theory: step count does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(m);
}

double nexp_bound(int k, std::size_t term_count, double tau, double eps) {
  require_window(k, term_count, tau, eps, "nexp_bound");
  const double inv = 1.0 / (2.0 * k);
  const double l = static_cast<double>(term_count);
  return l * std::pow(5.0, 2 * k) * std::pow(l * tau, 1.0 + inv) /
         std::pow(eps, inv);
}

int optimal_k(std::size_t term_count, double tau, double eps) {
  const double radicand = log5_radicand(term_count, tau, eps, "optimal_k");
  const int k = static_cast<int>(std::round(0.5 * std::sqrt(radicand)));
  return k < 1 ? 1 : k;
}

double nexp_bound_k_free(std::size_t term_count, double tau, double eps) {
  const double radicand =
      log5_radicand(term_count, tau, eps, "nexp_bound_k_free");
  const double l = static_cast<double>(term_count);
  return 25.0 * l * l * tau * std::pow(5.0, 2.0 * std::sqrt(radicand));
}

}  // namespace trotter
