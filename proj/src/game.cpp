#include "switchlab/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace switchlab {

std::string_view to_string(Norm norm) { return norm == Norm::L2 ? "l2" : "linf"; }

Norm parse_norm(std::string_view text) {
  if (text == "l2" || text == "2") return Norm::L2;
  if (text == "linf" || text == "inf") return Norm::Linf;
  throw ArgumentError("unknown norm '" + std::string(text) + "' (expected l2 or linf)");
}

void GameConfig::validate() const {
  if (horizon < 1) throw ArgumentError("horizon T must be positive");
  if (budget < 1) throw ArgumentError("budget K must be positive");
  if (budget > horizon) throw ArgumentError("budget K must not exceed horizon T");
  if (dimension < 1) throw ArgumentError("dimension n must be positive");
}

std::vector<std::int64_t> Trajectory::block_lengths() const {
  std::vector<std::int64_t> lengths;
  for (const auto& round : rounds) {
    if (round.moving || lengths.empty()) {
      lengths.push_back(1);
    } else {
      ++lengths.back();
    }
  }
  return lengths;
}

std::int64_t count_switches(std::span<const Vec> actions) {
  if (actions.empty()) throw ArgumentError("count_switches: empty action sequence");
  std::int64_t switches = 0;
  for (std::size_t i = 1; i < actions.size(); ++i) {
    if (actions[i] != actions[i - 1]) ++switches;
  }
  return switches;
}

double dual_norm(std::span<const double> w, Norm player_norm) {
  double acc = 0.0;
  if (player_norm == Norm::L2) {
    for (double v : w) acc += v * v;
    return std::sqrt(acc);
  }
  for (double v : w) acc += std::abs(v);
  return acc;
}

double primal_norm(std::span<const double> x, Norm player_norm) {
  if (player_norm == Norm::L2) return dual_norm(x, Norm::L2);
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double regret_from_rounds(const Trajectory& t) {
  const auto n = static_cast<std::size_t>(t.config.dimension);
  Vec total(n, 0.0);
  double linear = 0.0;
  for (const auto& r : t.rounds) {
    linear += dot(r.loss, r.action);
    for (std::size_t j = 0; j < n; ++j) total[j] += r.loss[j];
  }
  return linear + dual_norm(total, t.config.norm);
}

}  // namespace

double linear_regret(const Trajectory& trajectory) {
  if (!trajectory.feasible || trajectory.switch_count >= trajectory.config.budget) {
    throw BudgetViolation(0, trajectory.switch_count, trajectory.config.budget);
  }
  return regret_from_rounds(trajectory);
}

Trajectory make_trajectory(const GameConfig& config, std::span<const Vec> actions,
                           std::span<const Vec> losses) {
  if (actions.size() != losses.size()) {
    throw ArgumentError("make_trajectory: actions and losses differ in length");
  }
  const auto n = static_cast<std::size_t>(config.dimension);
  Trajectory t;
  t.config = config;
  t.config.horizon = static_cast<std::int64_t>(actions.size());
  t.cumulative_loss.assign(n, 0.0);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].size() != n || losses[i].size() != n) {
      throw ArgumentError("make_trajectory: vector length differs from dimension");
    }
    const bool moving = i == 0 || actions[i] != actions[i - 1];
    if (moving && i > 0) ++t.switch_count;
    t.rounds.push_back({actions[i], losses[i], moving});
    for (std::size_t j = 0; j < n; ++j) t.cumulative_loss[j] += losses[i][j];
  }
  t.feasible = t.switch_count < config.budget;
  t.regret = t.feasible ? regret_from_rounds(t) : std::numeric_limits<double>::quiet_NaN();
  return t;
}

Trajectory play_game(Player& player, Adversary& adversary, const GameConfig& config) {
  config.validate();
  player.reset(config);
  adversary.reset(config);

  const auto n = static_cast<std::size_t>(config.dimension);
  Trajectory t;
  t.config = config;
  t.cumulative_loss.assign(n, 0.0);
  t.rounds.reserve(static_cast<std::size_t>(config.horizon));

  for (std::int64_t round = 1; round <= config.horizon; ++round) {
    Vec x = player.decide();
    if (x.size() != n) {
      throw ArgumentError(player.name() + " emitted an action of wrong dimension at round " +
                          std::to_string(round));
    }
    if (!(primal_norm(x, config.norm) <= 1.0 + kBallSlack)) {
      throw ArgumentError(player.name() + " left the unit ball at round " +
                          std::to_string(round));
    }
    const bool moving = t.rounds.empty() || x != t.rounds.back().action;
    if (moving && !t.rounds.empty()) {
      ++t.switch_count;
      if (t.switch_count >= config.budget) {
        throw BudgetViolation(round, t.switch_count, config.budget);
      }
    }
    Vec w = adversary.respond(x, moving);
    if (w.size() != n) {
      throw ArgumentError(adversary.name() + " emitted a loss of wrong dimension at round " +
                          std::to_string(round));
    }
    if (!(primal_norm(w, config.norm) <= 1.0 + kBallSlack)) {
      throw ArgumentError(adversary.name() + " left the loss ball at round " +
                          std::to_string(round));
    }
    player.observe(x, w);
    adversary.observe(x, w);
    for (std::size_t j = 0; j < n; ++j) t.cumulative_loss[j] += w[j];
    t.rounds.push_back({std::move(x), std::move(w), moving});
  }
  t.regret = regret_from_rounds(t);
  return t;
}

}  // namespace switchlab
