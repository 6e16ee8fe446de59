#include "trotter/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "trotter/format.hpp"

namespace trotter {

namespace {

// Series whose largest error is below this are treated as round-off only.
constexpr double kNoiseFloor = 1e-13;

Complex mode_factor(EvolutionMode mode) {
  return mode == EvolutionMode::kReal ? Complex{1.0, 0.0} : Complex{0.0, -1.0};
}

}  // namespace

ExperimentGrid ExperimentGrid::log_spaced(double lo, double hi,
                                          std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("ExperimentGrid: need 0 < lo < hi");
  }
  if (count < 2) {
    throw std::invalid_argument("ExperimentGrid: need at least two points");
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  const double step = (b - a) / static_cast<double>(count - 1);
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = std::pow(10.0, a + static_cast<double>(i) * step);
  }
  values.front() = lo;
  values.back() = hi;
  return ExperimentGrid(std::move(values));
}

std::vector<std::uint64_t> integer_log_grid(std::uint64_t max_m,
                                            std::size_t count) {
  if (max_m == 0 || count < 2) {
    throw std::invalid_argument("integer_log_grid: need max_m >= 1, count >= 2");
  }
  const double top = std::log10(static_cast<double>(max_m));
  const double step = top / static_cast<double>(count - 1);
  std::vector<std::uint64_t> ms;
  ms.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = i + 1 == count ? top : static_cast<double>(i) * step;
    // nearbyint honours the default round-half-to-even mode.
    ms.push_back(static_cast<std::uint64_t>(std::nearbyint(std::pow(10.0, x))));
  }
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

RegressionResult loglog_regress(std::span<const double> xs,
                                std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("loglog_regress: length mismatch");
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("loglog_regress: need at least 3 points");
  }
  const std::size_t n = xs.size();
  std::vector<double> lx(n);
  std::vector<double> ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::domain_error("loglog_regress: values must be positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mx;
    const double dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw std::domain_error("loglog_regress: xs must not all be equal");
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double r_squared = 1.0;
  if (syy > 0.0) r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return {slope, intercept, r_squared};
}

SplitMatrices reference_split_matrices() {
  const ComplexMatrix a{{2.2, 6.9}, {4.20, 6.66}};
  ComplexMatrix b(2);
  ComplexMatrix c(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (i == j) {
        b(i, j) = c(i, j) = 0.5 * a(i, i);
      } else if (j > i) {
        b(i, j) = a(i, j);
      } else {
        c(i, j) = a(i, j);
      }
    }
  }
  return {a, b, c};
}

TimeScalingResult error_vs_time(const TermList& terms,
                                const ComplexMatrix& exact_sum,
                                std::span<const int> orders,
                                const ExperimentGrid& grid,
                                EvolutionMode mode) {
  if (exact_sum.dim() != terms.dim()) {
    throw std::invalid_argument("error_vs_time: exact_sum dimension mismatch");
  }
  const double reach = spectral_norm(exact_sum) * grid.hi();
  if (reach > 50.0) {
    throw std::domain_error("error_vs_time: ||H|| * t_max = " +
                            std::to_string(reach) + " exceeds 50");
  }
  const Complex z = mode_factor(mode);

  std::vector<ComplexMatrix> exact;
  std::vector<double> exact_norm;
  for (double t : grid.values()) {
    exact.push_back(expm((z * t) * exact_sum));
    exact_norm.push_back(spectral_norm(exact.back()));
  }

  TimeScalingResult result;
  for (int order : orders) {
    const Schedule schedule = suzuki(order, terms.size());
    std::vector<double> errors;
    for (std::size_t i = 0; i < grid.count(); ++i) {
      const double t = grid.values()[i];
      const ComplexMatrix approx = evaluate(schedule, terms, t, mode);
      const double err = distance(approx, exact[i]) / exact_norm[i];
      errors.push_back(err);
      result.rows.push_back({order, t, err});
    }
    const bool has_zero =
        std::any_of(errors.begin(), errors.end(), [](double e) { return e <= 0; });
    const double largest = *std::max_element(errors.begin(), errors.end());
    if (!has_zero && largest >= kNoiseFloor && errors.size() >= 3) {
      result.regressions.emplace(order, loglog_regress(grid.values(), errors));
    }
  }
  return result;
}

std::vector<CostRow> error_vs_cost(
    const TermList& terms, std::span<const int> orders,
    const std::map<int, std::uint64_t>& per_order_max_m, double t,
    EvolutionMode mode) {
  const ComplexMatrix exact = expm((mode_factor(mode) * t) * terms.sum());
  const double exact_norm = spectral_norm(exact);

  std::vector<CostRow> rows;
  for (int order : orders) {
    const auto it = per_order_max_m.find(order);
    if (it == per_order_max_m.end()) {
      throw std::invalid_argument("error_vs_cost: no max m for order " +
                                  std::to_string(order));
    }
    const Schedule schedule = suzuki(order, terms.size());
    const std::uint64_t per_step = exp_count(order, terms.size());
    for (std::uint64_t m : integer_log_grid(it->second)) {
      const ComplexMatrix approx =
          repeat_evaluate(schedule, terms, t, m, mode);
      rows.push_back(
          {order, m, m * per_step, distance(approx, exact) / exact_norm});
    }
  }
  return rows;
}

std::vector<TightnessRow> theory_vs_empirical(const TermList& terms, int order,
                                              const ExperimentGrid& eps_grid,
                                              EvolutionMode mode) {
  const Schedule schedule = suzuki(order, terms.size());
  const ComplexMatrix exact = expm(mode_factor(mode) * terms.sum());
  const double tau_value = tau(terms, 1.0);
  const int k = order / 2;

  std::vector<TightnessRow> rows;
  for (double eps : eps_grid.values()) {
    TightnessRow row{eps, m_theory(k, terms.size(), tau_value, eps),
                     std::nullopt};
    for (std::uint64_t m = 1; m <= kEmpiricalSearchCap; ++m) {
      const double err =
          distance(repeat_evaluate(schedule, terms, 1.0, m, mode), exact);
      if (err <= eps) {
        row.m_empirical = m;
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<BoundRow> ising_bound_curve(std::size_t n_lo, std::size_t n_hi,
                                        double eps) {
  if (n_lo < 2 || n_hi < n_lo) {
    throw std::invalid_argument("ising_bound_curve: need 2 <= n_lo <= n_hi");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("ising_bound_curve: eps must be positive");
  }
  std::vector<BoundRow> rows;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const std::size_t l = 2 * n - 1;
    const double tau_value = static_cast<double>(n);
    rows.push_back({n, l, tau_value, nexp_bound_k_free(l, tau_value, eps)});
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const TimeScalingRow> rows) {
  out << "order,t,rel_error\n";
  for (const auto& r : rows) {
    out << r.order << ',' << format_double(r.t) << ','
        << format_double(r.rel_error) << '\n';
  }
}

void write_csv(std::ostream& out,
               const std::map<int, RegressionResult>& regressions) {
  out << "order,slope,intercept,r_squared\n";
  for (const auto& [order, fit] : regressions) {
    out << order << ',' << format_double(fit.slope) << ','
        << format_double(fit.intercept) << ',' << format_double(fit.r_squared)
        << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const CostRow> rows) {
  out << "order,m,cost,rel_error\n";
  for (const auto& r : rows) {
    out << r.order << ',' << r.m << ',' << r.cost << ','
        << format_double(r.rel_error) << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const TightnessRow> rows) {
  out << "epsilon,m_theory,m_empirical\n";
  for (const auto& r : rows) {
    out << format_double(r.epsilon) << ',' << r.m_theory << ',';
    if (r.m_empirical) {
      out << *r.m_empirical;
    } else {
      out << "not reached";
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const BoundRow> rows) {
  out << "n,L,tau,bound\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.term_count << ',' << format_double(r.tau) << ','
        << format_double(r.bound) << '\n';
  }
}

}  // namespace trotter
