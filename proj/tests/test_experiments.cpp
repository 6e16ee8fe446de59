#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "trotter/experiments.hpp"

using namespace trotter;

namespace {

TermList split_terms() {
  const SplitMatrices abc = reference_split_matrices();
  return TermList({abc.b, abc.c});
}

const std::map<int, std::uint64_t> kMSettings{
    {2, 100000}, {4, 1700}, {6, 120}, {8, 20}};

// Smallest cost at which an order reaches the target, or infinity.
double cost_to_reach(const std::vector<CostRow>& rows, int order, double target) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (r.order == order && r.rel_error <= target) {
      best = std::min(best, static_cast<double>(r.cost));
    }
  }
  return best;
}

}  // namespace

TEST(Grid, LogSpaced) {
  const ExperimentGrid g = ExperimentGrid::log_spaced(1e-2, 1e-1, 10);
  const double expected[] = {0.01,
                             0.01291549665014884,
                             0.016681005372000592,
                             0.021544346900318832,
                             0.027825594022071243,
                             0.03593813663804628,
                             0.046415888336127774,
                             0.059948425031894084,
                             0.0774263682681127,
                             0.1};
  ASSERT_EQ(g.count(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_NEAR(g.values()[i] / expected[i], 1.0, 1e-14);
  }
  EXPECT_EQ(g.lo(), 1e-2);
  EXPECT_EQ(g.hi(), 1e-1);
  EXPECT_THROW(ExperimentGrid::log_spaced(0.0, 1.0, 5), std::invalid_argument);
  EXPECT_THROW(ExperimentGrid::log_spaced(1.0, 0.5, 5), std::invalid_argument);
  EXPECT_THROW(ExperimentGrid::log_spaced(1.0, 2.0, 1), std::invalid_argument);
}

TEST(Grid, IntegerLogGridMatchesReference) {
  EXPECT_EQ(integer_log_grid(1700),
            (std::vector<std::uint64_t>{1, 2, 3, 5, 7, 10, 15, 23, 34, 50, 74,
                                        110, 162, 240, 355, 525, 777, 1149,
                                        1700}));
  EXPECT_EQ(integer_log_grid(120),
            (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 21,
                                        26, 34, 44, 56, 72, 93, 120}));
  EXPECT_EQ(integer_log_grid(20),
            (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 15,
                                        17, 20}));
  EXPECT_EQ(integer_log_grid(100000),
            (std::vector<std::uint64_t>{1, 2, 3, 6, 11, 21, 38, 70, 127, 234,
                                        428, 785, 1438, 2637, 4833, 8859,
                                        16238, 29764, 54556, 100000}));
  EXPECT_THROW(integer_log_grid(0), std::invalid_argument);
}

TEST(Regression, Examples) {
  const std::vector<double> xs{0.5, 1.0, 2.0, 3.0, 7.0};
  std::vector<double> cubes, flat;
  for (double x : xs) {
    cubes.push_back(x * x * x);
    flat.push_back(4.2);
  }
  const RegressionResult cube = loglog_regress(xs, cubes);
  EXPECT_NEAR(cube.slope, 3.0, 1e-12);
  EXPECT_NEAR(cube.intercept, 0.0, 1e-12);
  EXPECT_NEAR(cube.r_squared, 1.0, 1e-10);
  EXPECT_NEAR(loglog_regress(xs, flat).slope, 0.0, 1e-12);

  const std::vector<double> x4{1, 2, 3, 4}, y4{2, 5, 9, 20};
  const RegressionResult fit = loglog_regress(x4, y4);
  EXPECT_NEAR(fit.slope, 1.592991282191686, 1e-13);
  EXPECT_NEAR(fit.intercept, 0.6082324744510214, 1e-13);
  EXPECT_NEAR(fit.r_squared, 0.9731689054575492, 1e-13);
}

TEST(Regression, Errors) {
  const std::vector<double> two{1.0, 2.0}, three{1.0, 2.0, 3.0};
  const std::vector<double> neg{1.0, -2.0, 3.0}, same{2.0, 2.0, 2.0};
  EXPECT_THROW(loglog_regress(two, two), std::invalid_argument);
  EXPECT_THROW(loglog_regress(three, two), std::invalid_argument);
  EXPECT_THROW(loglog_regress(three, neg), std::domain_error);
  EXPECT_THROW(loglog_regress(same, three), std::domain_error);
}

TEST(SplitMatrices, Layout) {
  const SplitMatrices abc = reference_split_matrices();
  EXPECT_EQ(abc.a, (ComplexMatrix{{2.2, 6.9}, {4.2, 6.66}}));
  EXPECT_EQ(abc.b, (ComplexMatrix{{1.1, 6.9}, {0.0, 3.33}}));
  EXPECT_EQ(abc.c, (ComplexMatrix{{1.1, 0.0}, {4.2, 3.33}}));
  EXPECT_EQ(abc.b + abc.c, abc.a);
}

TEST(ErrorVsTime, SplitPairSlopes) {
  const SplitMatrices abc = reference_split_matrices();
  const std::vector<int> orders{2, 4, 6};
  const TimeScalingResult result =
      error_vs_time(split_terms(), abc.a, orders,
                    ExperimentGrid::log_spaced(1e-2, 1e-1, 10),
                    EvolutionMode::kReal);
  ASSERT_EQ(result.rows.size(), 30u);
  ASSERT_EQ(result.regressions.size(), 3u);
  for (int order : orders) {
    const RegressionResult& fit = result.regressions.at(order);
    // Relative-error slopes sit slightly below 2k+1 on these matrices.
    EXPECT_NEAR(fit.slope, order + 1.0, 0.25) << "order " << order;
    EXPECT_GE(fit.r_squared, 0.995);
  }
}

TEST(ErrorVsTime, RowsMatchDirectEvaluation) {
  const SplitMatrices abc = reference_split_matrices();
  const std::vector<int> orders{4};
  const ExperimentGrid grid = ExperimentGrid::log_spaced(0.05, 0.5, 4);
  const TimeScalingResult result = error_vs_time(split_terms(), abc.a, orders,
                                                 grid, EvolutionMode::kReal);
  for (const auto& row : result.rows) {
    const ComplexMatrix exact = expm(Complex(row.t, 0.0) * abc.a);
    const double direct =
        distance(evaluate(suzuki(4, 2), split_terms(), row.t, EvolutionMode::kReal),
                 exact) /
        spectral_norm(exact);
    EXPECT_DOUBLE_EQ(row.rel_error, direct);
  }
}

TEST(ErrorVsTime, CommutingAndSingleTermSkipRegression) {
  const std::vector<Complex> d1{0.3, -0.7}, d2{1.1, 0.2};
  const TermList commuting({ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2)});
  const std::vector<int> orders{2, 4};
  const ExperimentGrid grid = ExperimentGrid::log_spaced(1e-2, 1e-1, 10);
  const TimeScalingResult r1 =
      error_vs_time(commuting, commuting.sum(), orders, grid, EvolutionMode::kReal);
  EXPECT_TRUE(r1.regressions.empty());
  for (const auto& row : r1.rows) EXPECT_LT(row.rel_error, 1e-13);

  const TermList single({reference_split_matrices().a});
  const TimeScalingResult r2 =
      error_vs_time(single, single.sum(), orders, grid, EvolutionMode::kReal);
  EXPECT_TRUE(r2.regressions.empty());
  for (const auto& row : r2.rows) EXPECT_EQ(row.rel_error, 0.0);
}

TEST(ErrorVsTime, RejectsLargeGrids) {
  const SplitMatrices abc = reference_split_matrices();
  const std::vector<int> orders{2};
  EXPECT_THROW(error_vs_time(split_terms(), abc.a, orders,
                             ExperimentGrid::log_spaced(1.0, 10.0, 5),
                             EvolutionMode::kReal),
               std::domain_error);
}

TEST(ErrorVsCost, ReferenceTable) {
  const std::vector<int> orders{2, 4, 6, 8};
  const std::vector<CostRow> rows =
      error_vs_cost(split_terms(), orders, kMSettings, 1.0, EvolutionMode::kReal);
  std::size_t expected_rows = 0;
  for (const auto& [order, max_m] : kMSettings) {
    expected_rows += integer_log_grid(max_m).size();
  }
  ASSERT_EQ(rows.size(), expected_rows);
  for (const auto& r : rows) EXPECT_EQ(r.cost, r.m * exp_count(r.order, 2));

  EXPECT_LT(cost_to_reach(rows, 4, 1e-10), cost_to_reach(rows, 2, 1e-10));
  EXPECT_TRUE(std::isfinite(cost_to_reach(rows, 4, 1e-10)));

  const SplitMatrices abc = reference_split_matrices();
  const TimeScalingResult single =
      error_vs_time(split_terms(), abc.a, orders,
                    ExperimentGrid::log_spaced(0.5, 1.0, 2), EvolutionMode::kReal);
  for (const auto& r : rows) {
    if (r.m != 1) continue;
    for (const auto& s : single.rows) {
      if (s.order == r.order && s.t == 1.0) EXPECT_DOUBLE_EQ(r.rel_error, s.rel_error);
    }
  }
}

TEST(ErrorVsCost, MissingOrderSetting) {
  const std::vector<int> orders{2, 10};
  EXPECT_THROW(error_vs_cost(split_terms(), orders, kMSettings, 1.0,
                             EvolutionMode::kReal),
               std::invalid_argument);
}

TEST(TheoryVsEmpirical, SplitPairOrderFour) {
  const std::vector<TightnessRow> rows = theory_vs_empirical(
      split_terms(), 4, ExperimentGrid::log_spaced(1e-6, 1e-3, 10),
      EvolutionMode::kReal);
  ASSERT_EQ(rows.size(), 10u);
  const std::uint64_t frozen[] = {17227, 14219, 11737, 9688, 7996,
                                  6600,  5448,  4497,  3712, 3064};
  const SplitMatrices abc = reference_split_matrices();
  const ComplexMatrix exact = expm(abc.a);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TightnessRow& r = rows[i];
    EXPECT_EQ(r.m_theory, frozen[i]);
    ASSERT_TRUE(r.m_empirical.has_value());
    const std::uint64_t m = *r.m_empirical;
    EXPECT_GE(r.m_theory, m);
    EXPECT_GE(static_cast<double>(r.m_theory) / static_cast<double>(m), 10.0);
    const auto err = [&](std::uint64_t steps) {
      return distance(repeat_evaluate(suzuki(4, 2), split_terms(), 1.0, steps,
                                      EvolutionMode::kReal),
                      exact);
    };
    EXPECT_LE(err(m), r.epsilon);
    if (m > 1) EXPECT_GT(err(m - 1), r.epsilon);
  }
}

TEST(TheoryVsEmpirical, CommutingPairNeedsOneStep) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(1.0, 3.0);
  std::vector<Complex> d1(4), d2(4);
  for (auto& x : d1) x = u(rng);
  for (auto& x : d2) x = u(rng);
  const TermList commuting({ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2)});
  for (const auto& r : theory_vs_empirical(commuting, 4,
                                           ExperimentGrid::log_spaced(1e-6, 1e-3, 4),
                                           EvolutionMode::kReal)) {
    EXPECT_EQ(r.m_empirical, std::optional<std::uint64_t>(1));
  }
}

TEST(IsingBoundCurve, ClosedForm) {
  const std::vector<BoundRow> rows = ising_bound_curve(2, 50, 1e-3);
  ASSERT_EQ(rows.size(), 49u);
  EXPECT_NEAR(rows.front().bound / 1553172.0223344276864, 1.0, 1e-12);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BoundRow& r = rows[i];
    const double n = static_cast<double>(r.n);
    EXPECT_EQ(r.n, i + 2);
    EXPECT_EQ(r.term_count, 2 * r.n - 1);
    EXPECT_EQ(r.tau, n);
    const long double l = 2.0L * n - 1.0L;
    const long double log5 = std::log(5.0L);
    const long double closed =
        25.0L * l * l * n *
        std::pow(5.0L, 2.0L * std::sqrt(3.0L / std::log10(5.0L) +
                                        std::log(static_cast<long double>(n)) / log5 +
                                        std::log(l) / log5 + 1.0L));
    EXPECT_NEAR(static_cast<double>(r.bound / closed), 1.0, 1e-12) << "n " << r.n;
    if (i > 0) EXPECT_GT(r.bound, rows[i - 1].bound);
  }
  EXPECT_THROW(ising_bound_curve(1, 5, 1e-3), std::invalid_argument);
  EXPECT_THROW(ising_bound_curve(5, 4, 1e-3), std::invalid_argument);
  EXPECT_THROW(ising_bound_curve(2, 4, 0.0), std::invalid_argument);
}

TEST(IsingBoundCurve, DelegatesToKFreeBound) {
  for (const auto& r : ising_bound_curve(2, 10, 1.0)) {
    EXPECT_EQ(r.bound, nexp_bound_k_free(r.term_count, r.tau, 1.0));
  }
}

TEST(Csv, HeadersAndFormatting) {
  std::ostringstream time_csv, fit_csv, cost_csv, tight_csv, bound_csv;
  const std::vector<TimeScalingRow> t{{2, 0.01, 0.1}};
  write_csv(time_csv, std::span<const TimeScalingRow>(t));
  EXPECT_EQ(time_csv.str(),
            "order,t,rel_error\n2,0.01,0.10000000000000001\n");

  write_csv(fit_csv, std::map<int, RegressionResult>{{4, {5.0, -1.5, 1.0}}});
  EXPECT_EQ(fit_csv.str(), "order,slope,intercept,r_squared\n4,5,-1.5,1\n");

  const std::vector<CostRow> c{{4, 3, 33, 2.5e-7}};
  write_csv(cost_csv, std::span<const CostRow>(c));
  EXPECT_EQ(cost_csv.str(), "order,m,cost,rel_error\n4,3,33,2.4999999999999999e-07\n");

  const std::vector<TightnessRow> r{{1e-3, 3064, 111}, {1e-6, 17227, std::nullopt}};
  write_csv(tight_csv, std::span<const TightnessRow>(r));
  EXPECT_EQ(tight_csv.str(),
            "epsilon,m_theory,m_empirical\n0.001,3064,111\n"
            "9.9999999999999995e-07,17227,not reached\n");

  const std::vector<BoundRow> b{{2, 3, 2.0, 1553172.0223344276}};
  write_csv(bound_csv, std::span<const BoundRow>(b));
  EXPECT_EQ(bound_csv.str(), "n,L,tau,bound\n2,3,2,1553172.0223344276\n");
}

TEST(Determinism, RepeatedRunsAreBitwiseEqual) {
  const std::vector<int> orders{2, 4};
  const auto run = [&] {
    std::ostringstream out;
    const SplitMatrices abc = reference_split_matrices();
    const TimeScalingResult r =
        error_vs_time(split_terms(), abc.a, orders,
                      ExperimentGrid::log_spaced(1e-2, 1e-1, 10), EvolutionMode::kReal);
    write_csv(out, std::span<const TimeScalingRow>(r.rows));
    write_csv(out, r.regressions);
    const auto tight = theory_vs_empirical(
        split_terms(), 4, ExperimentGrid::log_spaced(1e-4, 1e-3, 3), EvolutionMode::kReal);
    write_csv(out, std::span<const TightnessRow>(tight));
    return out.str();
  };
  EXPECT_EQ(run(), run());
}
