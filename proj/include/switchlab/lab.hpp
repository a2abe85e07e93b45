#pragma once

// Experiment harness behind labctl: JSON experiment specs, strategy factory,
// sweep runners and the verification suite.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "switchlab/fugal.hpp"
#include "switchlab/game.hpp"
#include "switchlab/oracle.hpp"

namespace switchlab::lab {

using nlohmann::json;

enum class Mode { Simulate, Fugal, Oracle, Verify };

Mode parse_mode(std::string_view text);
std::string_view to_string(Mode mode);

struct StrategySpec {
  std::string id;
  json params = json::object();
};

struct ExperimentSpec {
  Mode mode = Mode::Simulate;

  // sweep
  std::vector<std::int64_t> horizons{100};
  std::vector<std::int64_t> budgets{1};
  std::vector<std::int64_t> dimensions{1};
  Norm norm = Norm::L2;
  StrategySpec player{"constant"};
  StrategySpec adversary{"zero"};
  int repetitions = 1;
  std::uint64_t seed = 0;

  // output
  std::string output;          // empty: stdout
  std::string format = "csv";  // csv | json

  // fugal
  int fugal_budget = 4;
  int resolution = 2000;
  std::string grid_output;
  std::string policy_output;

  // oracle
  int x_grid = 41;
  std::vector<double> biases{0.0};
  int adversary_points = 2;

  // verify
  std::vector<std::string> only;
  double fault_a_k = 0.0;

  /// Throws ArgumentError on unknown fields' values, K > T or unknown ids.
  static ExperimentSpec from_json(const json& doc);
  void validate() const;
};

ExperimentSpec load_spec(const std::string& path);

// ---------------------------------------------------------------------------
// Strategy factory

std::vector<std::string> player_ids();
std::vector<std::string> adversary_ids();

/// Ids that are not plain adversaries but are handled by the runner.
inline constexpr const char* kExhaustiveSign = "exhaustive_sign";

std::unique_ptr<Player> make_player(const StrategySpec& spec, const GameConfig& config);
std::unique_ptr<Adversary> make_adversary(const StrategySpec& spec, const GameConfig& config);

// ---------------------------------------------------------------------------
// Simulation

struct ResultRow {
  std::int64_t horizon = 0;
  std::int64_t budget = 0;
  std::int64_t dimension = 0;
  std::string player_id;
  std::string adversary_id;
  std::uint64_t seed = 0;
  double regret = 0.0;  // NaN when the player broke its budget
  std::int64_t switch_count = 0;
  double normalized = 0.0;  // regret sqrt(K) / T
  double bound_lower = 0.0;
  double bound_upper = 0.0;
  bool within_bounds = false;
};

struct RowBounds {
  double lower;
  double upper;
};

/// Minimax sandwich for one game shape: 1-d uses T/sqrt(2K) and
/// ceil(T/K) min(sqrt(2(K+1)/pi), sqrt(K)); L2 with n >= 2 uses T/sqrt(K) and
/// ceil(T/K) sqrt(K); Linf scales the 1-d pair by n.
RowBounds row_bounds(const GameConfig& config);

/// Builds a row from a finished trajectory (or a budget violation).
ResultRow make_row(const GameConfig& config, const std::string& player_id,
                   const std::string& adversary_id, const Trajectory* trajectory,
                   std::int64_t violation_switches = 0);

/// Plays every (T, K, n, repetition) cell, in parallel, sorted by (T, K, n, seed).
std::vector<ResultRow> run_simulate(const ExperimentSpec& spec);

/// Worst case of a player over every loss sequence in {-1, +1}^T (n = 1).
ResultRow run_exhaustive_sign(const StrategySpec& player, const GameConfig& config);

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows);
json rows_to_json(const std::vector<ResultRow>& rows);

// ---------------------------------------------------------------------------
// Fugal and oracle modes

/// Solves u_1..u_K, writes the grid CSV and policy JSON when paths are set and
/// prints a u_k(0) vs a_k(0) table to `log`.
fugal::FugalSolution run_fugal(const ExperimentSpec& spec, std::ostream& log);

std::vector<oracle::OracleReport> run_oracle(const ExperimentSpec& spec);

// ---------------------------------------------------------------------------
// Verification

struct CheckResult {
  std::string name;
  std::vector<std::string> tags;
  bool passed = false;
  json measured;
  json expected;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::vector<std::string> only;  // keep checks whose name or tags match any entry
  double fault_a_k = 0.0;         // added to every a_k used as a reference value
  unsigned threads = 0;
};

struct Check {
  std::string name;
  std::vector<std::string> tags;
  std::function<CheckResult(const VerifyOptions&)> run;
};

/// Every registered check: the numbered acceptance criteria (tag
/// "acceptance") followed by the module invariant checks.
const std::vector<Check>& check_registry();

bool selected(const Check& check, const std::vector<std::string>& only);

/// Runs the selected checks in registry order. Exceptions inside a check turn
/// into a failed result. `progress` receives one line per finished check.
std::vector<CheckResult> run_verify(const VerifyOptions& options, std::ostream* progress = nullptr);

json report_json(const std::vector<CheckResult>& results);

}  // namespace switchlab::lab
