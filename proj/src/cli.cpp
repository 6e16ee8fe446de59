#include "trotter/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "trotter/circuits.hpp"
#include "trotter/experiments.hpp"
#include "trotter/format.hpp"
#include "trotter/formulas.hpp"
#include "trotter/hamiltonian.hpp"
#include "trotter/plot.hpp"

namespace trotter::cli {

namespace {

namespace fs = std::filesystem;

class InvalidOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Self-check deviation allowed between a compiled circuit and the dense
// product formula it implements.
constexpr double kCircuitCheckTolerance = 1e-9;

const std::map<int, std::uint64_t> kDefaultMaxSteps = {
    {2, 100000}, {4, 1700}, {6, 120}, {8, 20}};

struct Source {
  std::optional<PauliHamiltonian> pauli;
  TermList terms;
  ComplexMatrix exact_sum;
  EvolutionMode mode;
  std::string label;
};

int resolve_order(const RunConfig& config, int fallback) {
  const int order = config.order.value_or(fallback);
  if (order < 2 || order % 2 != 0) {
    throw InvalidOrder("--order must be an even integer >= 2, got " +
                       std::to_string(order));
  }
  return order;
}

std::size_t parse_site_count(std::string_view text, const std::string& spec) {
  std::size_t n = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw ParseError("--builtin: bad site count in '" + spec + "'");
  }
  return n;
}

Source from_pauli(PauliHamiltonian h, std::string label) {
  TermList terms = realize(h);
  ComplexMatrix sum = terms.sum();
  return Source{std::move(h), std::move(terms), std::move(sum),
                EvolutionMode::kImaginary, std::move(label)};
}

Source load_source(const RunConfig& config, bool default_to_reference) {
  if (config.hamiltonian_path && config.builtin) {
    throw std::invalid_argument(
        "--hamiltonian and --builtin are mutually exclusive");
  }
  if (config.hamiltonian_path) {
    return from_pauli(load_hamiltonian(*config.hamiltonian_path),
                      *config.hamiltonian_path);
  }
  if (!config.builtin) {
    if (!default_to_reference) {
      throw std::invalid_argument("--hamiltonian or --builtin is required");
    }
  }
  const std::string spec = config.builtin.value_or("abc");
  if (spec == "abc") {
    SplitMatrices split = reference_split_matrices();
    return Source{std::nullopt, TermList({split.b, split.c}), split.a,
                  EvolutionMode::kReal, "abc"};
  }
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  if (colon == std::string::npos || (family != "ising" && family != "heisenberg")) {
    throw ParseError("--builtin: expected abc, ising:<n> or heisenberg:<n>, got '" +
                     spec + "'");
  }
  const std::size_t n =
      parse_site_count(std::string_view(spec).substr(colon + 1), spec);
  if (n > kMaxDenseQubits) {
    throw DenseCapExceeded("--builtin: " + std::to_string(n) +
                           " sites exceeds the dense cap of " +
                           std::to_string(kMaxDenseQubits));
  }
  PauliHamiltonian h =
      family == "ising" ? ising_1d(n, 1.0, 1.0) : heisenberg_1d(n, 1.0);
  return from_pauli(std::move(h), spec);
}

void write_file(const fs::path& dir, const std::string& name,
                const std::function<void(std::ostream&)>& body,
                std::ostream& out) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("--out: cannot create directory '" + dir.string() +
                  "': " + ec.message());
  }
  const fs::path path = dir / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  body(file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
  out << "wrote " << path.string() << '\n';
}

fs::path output_dir(const RunConfig& config) {
  return config.output_dir.value_or(fs::path("."));
}

int run_schedule(const RunConfig& config, std::ostream& out) {
  const int order = resolve_order(config, 2);
  std::size_t term_count = 0;
  if (config.terms) {
    if (config.hamiltonian_path || config.builtin) {
      throw std::invalid_argument(
          "--terms cannot be combined with --hamiltonian or --builtin");
    }
    term_count = *config.terms;
  } else {
    term_count = load_source(config, false).terms.size();
  }
  const Schedule schedule = suzuki(order, term_count);
  const auto body = [&](std::ostream& os) {
    os << "position,term_index,coeff\n";
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      os << i << ',' << schedule.factors()[i].term << ','
         << format_double(schedule.factors()[i].coeff) << '\n';
    }
  };
  if (config.output_dir) {
    write_file(*config.output_dir, "schedule.csv", body, out);
  } else {
    body(out);
  }
  return exit_code::kOk;
}

int run_evolve(const RunConfig& config, std::ostream& out) {
  const int order = resolve_order(config, 2);
  const std::uint64_t steps = config.steps.value_or(1);
  const double t = config.time.value_or(1.0);
  const Source source = load_source(config, true);

  const Schedule schedule = suzuki(order, source.terms.size());
  const ComplexMatrix approx =
      repeat_evaluate(schedule, source.terms, t, steps, source.mode);
  const Complex z = source.mode == EvolutionMode::kReal ? Complex{1.0, 0.0}
                                                        : Complex{0.0, -1.0};
  const ComplexMatrix exact = expm((z * t) * source.exact_sum);
  const double abs_error = distance(approx, exact);

  out << "source " << source.label << '\n'
      << "dim " << source.terms.dim() << '\n'
      << "order " << order << '\n'
      << "steps " << steps << '\n'
      << "time " << format_double(t) << '\n'
      << "exponentials " << steps * exp_count(order, source.terms.size())
      << '\n'
      << "abs_error " << format_double(abs_error) << '\n'
      << "rel_error " << format_double(abs_error / spectral_norm(exact))
      << '\n';

  if (config.output_dir) {
    write_file(*config.output_dir, "unitary.csv",
               [&](std::ostream& os) {
                 os << "row,col,re,im\n";
                 for (std::size_t i = 0; i < approx.dim(); ++i) {
                   for (std::size_t j = 0; j < approx.dim(); ++j) {
                     os << i << ',' << j << ','
                        << format_double(approx(i, j).real()) << ','
                        << format_double(approx(i, j).imag()) << '\n';
                   }
                 }
               },
               out);
  }
  return exit_code::kOk;
}

int run_compile(const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  const int order = resolve_order(config, 2);
  const std::uint64_t steps = config.steps.value_or(1);
  const double t = config.time.value_or(1.0);

  PauliHamiltonian h = [&] {
    if (config.builtin == "abc") {
      throw std::invalid_argument(
          "--builtin abc is not a Pauli Hamiltonian and cannot be compiled");
    }
    if (config.hamiltonian_path && config.builtin) {
      throw std::invalid_argument(
          "--hamiltonian and --builtin are mutually exclusive");
    }
    if (config.hamiltonian_path) return load_hamiltonian(*config.hamiltonian_path);
    Source source = load_source(config, false);
    return std::move(*source.pauli);
  }();

  const Circuit circuit = compile_trotter(h, t, steps, order);
  write_file(output_dir(config), "circuit.txt",
             [&](std::ostream& os) { write_circuit(os, circuit); }, out);

  std::size_t had = 0, rz = 0, cnot = 0, phase = 0;
  for (const auto& g : circuit.gates()) {
    if (std::holds_alternative<Had>(g)) ++had;
    if (std::holds_alternative<Rz>(g)) ++rz;
    if (std::holds_alternative<Cnot>(g)) ++cnot;
    if (std::holds_alternative<Phase>(g)) ++phase;
  }
  out << "qubits " << circuit.qubits() << '\n'
      << "gates " << circuit.size() << '\n'
      << "H " << had << '\n'
      << "RZ " << rz << '\n'
      << "CNOT " << cnot << '\n'
      << "S " << phase << '\n';

  if (config.check) {
    const ComplexMatrix compiled = circuit_unitary(circuit);
    const ComplexMatrix dense =
        repeat_evaluate(suzuki(order, h.term_count()), realize(h), t, steps,
                        EvolutionMode::kImaginary);
    const double deviation = distance(compiled, dense);
    out << "max deviation " << format_double(deviation) << '\n';
    if (!(deviation <= kCircuitCheckTolerance)) {
      err << "self-check failed: circuit deviates from the product formula by "
          << format_double(deviation) << '\n';
      return exit_code::kSelfCheckFailed;
    }
  }
  return exit_code::kOk;
}

std::vector<int> resolve_orders(const RunConfig& config,
                                std::vector<int> defaults) {
  if (config.order) return {resolve_order(config, 0)};
  return defaults;
}

int run_time_scaling(const RunConfig& config, std::ostream& out) {
  const Source source = load_source(config, true);
  const std::vector<int> orders = resolve_orders(config, {2, 4, 6});
  const ExperimentGrid grid = ExperimentGrid::log_spaced(1e-2, 1e-1, 10);
  const TimeScalingResult result =
      error_vs_time(source.terms, source.exact_sum, orders, grid, source.mode);

  const fs::path dir = output_dir(config);
  write_file(dir, "time_scaling.csv",
             [&](std::ostream& os) { write_csv(os, result.rows); }, out);
  write_file(dir, "time_scaling_regression.csv",
             [&](std::ostream& os) { write_csv(os, result.regressions); }, out);
  for (int order : orders) {
    const auto it = result.regressions.find(order);
    if (it == result.regressions.end()) {
      out << "order " << order << ": at noise floor, no fit\n";
    } else {
      out << "order " << order << ": slope " << format_double(it->second.slope)
          << " r_squared " << format_double(it->second.r_squared) << '\n';
    }
  }
  if (config.emit_plots) {
    std::vector<PlotSeries> series;
    for (int order : orders) {
      PlotSeries s{"order " + std::to_string(order), {}, {}};
      for (const auto& row : result.rows) {
        if (row.order != order) continue;
        s.xs.push_back(row.t);
        s.ys.push_back(row.rel_error);
      }
      series.push_back(std::move(s));
    }
    write_file(dir, "time_scaling.svg",
               [&](std::ostream& os) {
                 write_loglog_svg(os, "Error vs time", "t", "relative error",
                                  series);
               },
               out);
  }
  return exit_code::kOk;
}

int run_cost(const RunConfig& config, std::ostream& out) {
  const Source source = load_source(config, true);
  const std::vector<int> orders = resolve_orders(config, {2, 4, 6, 8});
  std::map<int, std::uint64_t> max_steps = kDefaultMaxSteps;
  for (int order : orders) {
    if (config.steps) {
      max_steps[order] = *config.steps;
    } else if (!max_steps.contains(order)) {
      throw std::invalid_argument("--steps is required for order " +
                                  std::to_string(order));
    }
  }
  const double t = config.time.value_or(1.0);
  const std::vector<CostRow> rows =
      error_vs_cost(source.terms, orders, max_steps, t, source.mode);

  const fs::path dir = output_dir(config);
  write_file(dir, "cost.csv", [&](std::ostream& os) { write_csv(os, rows); },
             out);
  for (int order : orders) {
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t cost = 0;
    for (const auto& row : rows) {
      if (row.order == order && row.rel_error < best) {
        best = row.rel_error;
        cost = row.cost;
      }
    }
    out << "order " << order << ": best rel_error " << format_double(best)
        << " at cost " << cost << '\n';
  }
  if (config.emit_plots) {
    std::vector<PlotSeries> series;
    for (int order : orders) {
      PlotSeries s{"order " + std::to_string(order), {}, {}};
      for (const auto& row : rows) {
        if (row.order != order) continue;
        s.xs.push_back(static_cast<double>(row.cost));
        s.ys.push_back(row.rel_error);
      }
      series.push_back(std::move(s));
    }
    write_file(dir, "cost.svg",
               [&](std::ostream& os) {
                 write_loglog_svg(os, "Error vs cost", "matrix exponentials",
                                  "relative error", series);
               },
               out);
  }
  return exit_code::kOk;
}

int run_bound_tightness(const RunConfig& config, std::ostream& out,
                        std::ostream& err) {
  const Source source = load_source(config, true);
  const int order = resolve_order(config, 4);
  const ExperimentGrid grid = ExperimentGrid::log_spaced(1e-6, 1e-3, 10);
  const std::vector<TightnessRow> rows =
      theory_vs_empirical(source.terms, order, grid, source.mode);

  const fs::path dir = output_dir(config);
  write_file(dir, "bound_tightness.csv",
             [&](std::ostream& os) { write_csv(os, rows); }, out);

  bool sound = true;
  for (const auto& row : rows) {
    out << "epsilon " << format_double(row.epsilon) << ": m_theory "
        << row.m_theory << " m_empirical ";
    if (row.m_empirical) {
      out << *row.m_empirical << " ratio "
          << format_double(static_cast<double>(row.m_theory) /
                           static_cast<double>(*row.m_empirical))
          << '\n';
      sound = sound && row.m_theory >= *row.m_empirical;
    } else {
      out << "not reached\n";
      sound = sound && row.m_theory > kEmpiricalSearchCap;
    }
  }
  if (config.emit_plots) {
    PlotSeries theory{"m_theory", {}, {}};
    PlotSeries empirical{"m_empirical", {}, {}};
    for (const auto& row : rows) {
      theory.xs.push_back(row.epsilon);
      theory.ys.push_back(static_cast<double>(row.m_theory));
      if (row.m_empirical) {
        empirical.xs.push_back(row.epsilon);
        empirical.ys.push_back(static_cast<double>(*row.m_empirical));
      }
    }
    write_file(dir, "bound_tightness.svg",
               [&](std::ostream& os) {
                 write_loglog_svg(os, "Theoretical vs empirical steps",
                                  "epsilon", "steps m", {theory, empirical});
               },
               out);
  }
  if (!sound) {
    err << "self-check failed: m_theory below m_empirical on some row\n";
    return exit_code::kSelfCheckFailed;
  }
  return exit_code::kOk;
}

int run_ising_bound(const RunConfig& config, std::ostream& out) {
  const double eps = config.epsilon.value_or(1e-3);
  const std::vector<BoundRow> rows = ising_bound_curve(2, 50, eps);
  const fs::path dir = output_dir(config);
  write_file(dir, "ising_bound.csv",
             [&](std::ostream& os) { write_csv(os, rows); }, out);
  out << "n " << rows.front().n << ": bound "
      << format_double(rows.front().bound) << '\n'
      << "n " << rows.back().n << ": bound "
      << format_double(rows.back().bound) << '\n';
  if (config.emit_plots) {
    PlotSeries s{"bound", {}, {}};
    for (const auto& row : rows) {
      s.xs.push_back(static_cast<double>(row.n));
      s.ys.push_back(row.bound);
    }
    write_file(dir, "ising_bound.svg",
               [&](std::ostream& os) {
                 write_loglog_svg(os, "N_exp bound, 1D Ising", "n",
                                  "exponentials", {s});
               },
               out);
  }
  return exit_code::kOk;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::kSchedule: return run_schedule(config, out);
    case Command::kEvolve: return run_evolve(config, out);
    case Command::kCompile: return run_compile(config, out, err);
    case Command::kExperiment:
      switch (config.experiment) {
        case Experiment::kTimeScaling: return run_time_scaling(config, out);
        case Experiment::kCost: return run_cost(config, out);
        case Experiment::kBoundTightness:
          return run_bound_tightness(config, out, err);
        case Experiment::kIsingBound: return run_ising_bound(config, out);
      }
  }
  return exit_code::kInvalidArgument;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::kParse;
  } catch (const InvalidOrder& e) {
    err << "invalid order: " << e.what() << '\n';
    return exit_code::kInvalidOrder;
  } catch (const DenseCapExceeded& e) {
    err << "dense cap exceeded: " << e.what() << '\n';
    return exit_code::kDenseCap;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInvalidArgument;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Suzuki product formulas: schedules, evolution, circuits and "
               "error-scaling experiments"};
  app.require_subcommand(1);

  RunConfig config;
  int order = 0;
  std::uint64_t steps = 0;
  double time = 0.0;
  double epsilon = 0.0;
  std::size_t terms = 0;
  std::string hamiltonian;
  std::string builtin;
  std::string out_dir;

  auto* schedule = app.add_subcommand("schedule", "Dump the flattened schedule CSV");
  auto* evolve = app.add_subcommand("evolve", "Product-formula unitary and its error");
  auto* compile = app.add_subcommand("compile", "Compile a Pauli Hamiltonian to gates");
  auto* experiment = app.add_subcommand("experiment", "Run a validation experiment");

  const std::map<std::string, Experiment> names = {
      {"time-scaling", Experiment::kTimeScaling},
      {"cost", Experiment::kCost},
      {"bound-tightness", Experiment::kBoundTightness},
      {"ising-bound", Experiment::kIsingBound}};
  experiment->add_option("name", config.experiment, "Experiment to run")
      ->required()
      ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
  compile->add_flag("--check", config.check,
                    "Compare the circuit unitary with the dense formula");

  for (auto* sub : {schedule, evolve, compile, experiment}) {
    sub->add_option("--order", order, "Even approximation order");
    sub->add_option("--steps", steps, "Trotter steps m")
        ->check(CLI::PositiveNumber);
    sub->add_option("--time", time, "Evolution time t");
    sub->add_option("--epsilon", epsilon, "Error tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--hamiltonian", hamiltonian, "Hamiltonian text file");
    sub->add_option("--builtin", builtin, "abc | ising:<n> | heisenberg:<n>");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_flag("--plots", config.emit_plots, "Also write SVG plots");
  }
  schedule->add_option("--terms", terms, "Number of terms L")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  const auto given = [](const CLI::App* sub, const char* name) {
    return sub->count(name) > 0;
  };
  CLI::App* active = app.get_subcommands().front();
  if (active == schedule) config.command = Command::kSchedule;
  if (active == evolve) config.command = Command::kEvolve;
  if (active == compile) config.command = Command::kCompile;
  if (active == experiment) config.command = Command::kExperiment;

  if (given(active, "--order")) config.order = order;
  if (given(active, "--steps")) config.steps = steps;
  if (given(active, "--time")) config.time = time;
  if (given(active, "--epsilon")) config.epsilon = epsilon;
  if (given(active, "--hamiltonian")) config.hamiltonian_path = hamiltonian;
  if (given(active, "--builtin")) config.builtin = builtin;
  if (given(active, "--out")) config.output_dir = out_dir;
  if (active == schedule && given(active, "--terms")) config.terms = terms;

  return run(config, out, err);
}

}  // namespace trotter::cli
