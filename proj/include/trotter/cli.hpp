#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace trotter::cli {

enum class Command { kSchedule, kEvolve, kCompile, kExperiment };

enum class Experiment { kTimeScaling, kCost, kBoundTightness, kIsingBound };

/// Process exit codes; each failure class has its own.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kSelfCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kParse = 3;
inline constexpr int kInvalidOrder = 4;
inline constexpr int kDenseCap = 5;
inline constexpr int kIo = 6;
inline constexpr int kInvalidArgument = 7;
}  // namespace exit_code

/// Unset optionals fall back to per-command defaults.
struct RunConfig {
  Command command = Command::kSchedule;
  std::optional<std::string> hamiltonian_path;
  /// "abc", "ising:<n>" or "heisenberg:<n>".
  std::optional<std::string> builtin;
  std::optional<int> order;
  std::optional<std::uint64_t> steps;
  std::optional<double> time;
  std::optional<double> epsilon;
  /// Term count for `schedule` when no Hamiltonian is given.
  std::optional<std::size_t> terms;
  Experiment experiment = Experiment::kTimeScaling;
  std::optional<std::filesystem::path> output_dir;
  bool emit_plots = false;
  /// `compile`: compare the circuit unitary with the dense product formula.
  bool check = false;
};

/// Executes one command. Human-readable output goes to `out`, diagnostics to
/// `err`; files land in the output directory.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace trotter::cli
