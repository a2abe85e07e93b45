#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <tuple>

#include "switchlab/adversaries.hpp"
#include "switchlab/lab.hpp"
#include "switchlab/parallel.hpp"

namespace switchlab::lab {

namespace {

constexpr std::int64_t kMaxExhaustiveHorizon = 20;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RowBounds row_bounds(const GameConfig& c) {
  const double t = static_cast<double>(c.horizon);
  const double k = static_cast<double>(c.budget);
  const double epoch = static_cast<double>((c.horizon + c.budget - 1) / c.budget);
  const RowBounds one_d{t / std::sqrt(2.0 * k),
                        epoch * std::min(std::sqrt(2.0 * (k + 1.0) / std::numbers::pi), std::sqrt(k))};
  if (c.norm == Norm::Linf) {
    const double n = static_cast<double>(c.dimension);
    return {n * one_d.lower, n * one_d.upper};
  }
  if (c.dimension >= 2) return {t / std::sqrt(k), epoch * std::sqrt(k)};
  return one_d;
}

ResultRow make_row(const GameConfig& config, const std::string& player_id,
                   const std::string& adversary_id, const Trajectory* trajectory,
                   std::int64_t violation_switches) {
  ResultRow row;
  row.horizon = config.horizon;
  row.budget = config.budget;
  row.dimension = config.dimension;
  row.player_id = player_id;
  row.adversary_id = adversary_id;
  row.seed = config.seed;
  const auto b = row_bounds(config);
  row.bound_lower = b.lower;
  row.bound_upper = b.upper;
  if (trajectory == nullptr) {
    row.regret = std::numeric_limits<double>::quiet_NaN();
    row.normalized = row.regret;
    row.switch_count = violation_switches;
    row.within_bounds = false;
    return row;
  }
  row.regret = trajectory->regret;
  row.switch_count = trajectory->switch_count;
  row.normalized = row.regret * std::sqrt(static_cast<double>(config.budget)) /
                   static_cast<double>(config.horizon);
  row.within_bounds = row.bound_lower <= row.regret && row.regret <= row.bound_upper;
  return row;
}

namespace {

ResultRow play_row(const ExperimentSpec& spec, const GameConfig& config) {
  if (spec.adversary.id == kExhaustiveSign) return run_exhaustive_sign(spec.player, config);
  auto player = make_player(spec.player, config);
  auto adversary = make_adversary(spec.adversary, config);
  try {
    const Trajectory t = play_game(*player, *adversary, config);
    return make_row(config, spec.player.id, spec.adversary.id, &t);
  } catch (const BudgetViolation&) {
    return make_row(config, spec.player.id, spec.adversary.id, nullptr, config.budget);
  }
}

}  // namespace

ResultRow run_exhaustive_sign(const StrategySpec& player_spec, const GameConfig& config) {
  if (config.dimension != 1) throw UnsupportedConfig("exhaustive_sign needs n=1");
  if (config.horizon > kMaxExhaustiveHorizon) {
    throw CapacityError("exhaustive_sign: T=" + std::to_string(config.horizon) +
                        " exceeds the enumeration cap of " + std::to_string(kMaxExhaustiveHorizon));
  }
  auto player = make_player(player_spec, config);
  const auto t = static_cast<std::size_t>(config.horizon);
  std::vector<double> losses(t);
  std::optional<Trajectory> worst;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    for (std::size_t i = 0; i < t; ++i) losses[i] = (mask >> i) & 1U ? 1.0 : -1.0;
    ReplayAdversary adversary(losses);
    try {
      Trajectory tr = play_game(*player, adversary, config);
      if (!worst || tr.regret > worst->regret) worst = std::move(tr);
    } catch (const BudgetViolation&) {
      return make_row(config, player_spec.id, kExhaustiveSign, nullptr, config.budget);
    }
  }
  return make_row(config, player_spec.id, kExhaustiveSign, &*worst);
}

std::vector<ResultRow> run_simulate(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<GameConfig> jobs;
  for (auto t : spec.horizons) {
    for (auto k : spec.budgets) {
      for (auto n : spec.dimensions) {
        for (int r = 0; r < spec.repetitions; ++r) {
          jobs.push_back({t, k, n, spec.norm, spec.seed + static_cast<std::uint64_t>(r)});
        }
      }
    }
  }
  std::vector<ResultRow> rows(jobs.size());
  parallel_for(jobs.size(), 0, [&](std::size_t i) { rows[i] = play_row(spec, jobs[i]); });
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.horizon, a.budget, a.dimension, a.seed) <
           std::tie(b.horizon, b.budget, b.dimension, b.seed);
  });
  return rows;
}

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "T,K,n,player_id,adversary_id,seed,regret,switch_count,normalized,bound_lower,"
         "bound_upper,within_bounds\n";
  for (const auto& r : rows) {
    out << r.horizon << ',' << r.budget << ',' << r.dimension << ',' << r.player_id << ','
        << r.adversary_id << ',' << r.seed << ',' << fmt(r.regret) << ',' << r.switch_count << ','
        << fmt(r.normalized) << ',' << fmt(r.bound_lower) << ',' << fmt(r.bound_upper) << ','
        << (r.within_bounds ? "true" : "false") << '\n';
  }
}

json rows_to_json(const std::vector<ResultRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    out.push_back({{"T", r.horizon},
                   {"K", r.budget},
                   {"n", r.dimension},
                   {"player_id", r.player_id},
                   {"adversary_id", r.adversary_id},
                   {"seed", r.seed},
                   {"regret", num(r.regret)},
                   {"switch_count", r.switch_count},
                   {"normalized", num(r.normalized)},
                   {"bound_lower", r.bound_lower},
                   {"bound_upper", r.bound_upper},
                   {"within_bounds", r.within_bounds}});
  }
  return out;
}

// ---------------------------------------------------------------------------

fugal::FugalSolution run_fugal(const ExperimentSpec& spec, std::ostream& log) {
  spec.validate();
  fugal::FugalSolution sol = fugal::solve(spec.fugal_budget, spec.resolution);
  if (!spec.grid_output.empty()) {
    std::ofstream out(spec.grid_output);
    if (!out) throw ArgumentError("cannot write '" + spec.grid_output + "'");
    fugal::write_grid_csv(out, sol.u);
  }
  if (!spec.policy_output.empty()) {
    std::ofstream out(spec.policy_output);
    if (!out) throw ArgumentError("cannot write '" + spec.policy_output + "'");
    out << sol.policy.to_json().dump(2) << '\n';
  }
  char line[128];
  std::snprintf(line, sizeof line, "%3s  %-12s  %-12s\n", "k", "u_k(0)", "a_k(0)");
  log << line;
  for (const auto& u : sol.u) {
    std::snprintf(line, sizeof line, "%3d  %.10f  %.10f\n", u.k_index(), u(0.0),
                  fugal::quadratic_bound(u.k_index(), 0.0));
    log << line;
  }
  return sol;
}

std::vector<oracle::OracleReport> run_oracle(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<oracle::OracleConfig> jobs;
  for (auto t : spec.horizons) {
    for (auto k : spec.budgets) {
      for (double z : spec.biases) {
        jobs.push_back({static_cast<int>(t), static_cast<int>(k), spec.x_grid, z,
                        spec.adversary_points});
      }
    }
  }
  std::vector<oracle::OracleReport> out(jobs.size());
  parallel_for(jobs.size(), 0, [&](std::size_t i) { out[i] = oracle::exact_minimax_1d(jobs[i]); });
  return out;
}

}  // namespace switchlab::lab
