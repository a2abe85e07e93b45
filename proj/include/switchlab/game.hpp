#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "switchlab/errors.hpp"

namespace switchlab {

using Vec = std::vector<double>;

/// Slack on norm-ball membership, absorbs rounding from normalization.
inline constexpr double kBallSlack = 1e-12;

/// Player-side norm. L2 pairs with L2 losses (regret in L2); Linf pairs with
/// Linf losses and the L1 dual in the regret.
enum class Norm { L2, Linf };

std::string_view to_string(Norm norm);
Norm parse_norm(std::string_view text);

/// One game instance: T rounds, fewer than K switches, dimension n.
struct GameConfig {
  std::int64_t horizon = 1;
  std::int64_t budget = 1;
  std::int64_t dimension = 1;
  Norm norm = Norm::L2;
  std::uint64_t seed = 0;

  /// Throws ArgumentError unless 1 <= K <= T and n >= 1.
  void validate() const;
};

struct RoundRecord {
  Vec action;
  Vec loss;
  bool moving = false;
};

struct Trajectory {
  GameConfig config;
  std::vector<RoundRecord> rounds;
  std::int64_t switch_count = 0;
  Vec cumulative_loss;
  double regret = 0.0;
  bool feasible = true;

  /// Lengths of the blocks between consecutive moving rounds.
  std::vector<std::int64_t> block_lengths() const;
};

/// Number of indices i with actions[i+1] != actions[i]. Throws ArgumentError
/// on an empty sequence.
std::int64_t count_switches(std::span<const Vec> actions);

/// Dual norm of the regret term: Euclidean for L2, L1 for Linf.
double dual_norm(std::span<const double> w, Norm player_norm);

/// Norm of the player's ball (L2 or Linf).
double primal_norm(std::span<const double> x, Norm player_norm);

/// sum_t w_t . x_t + dual_norm(sum_t w_t). Throws BudgetViolation on an
/// infeasible trajectory.
double linear_regret(const Trajectory& trajectory);

/// Assembles a trajectory from raw actions/losses, deriving the moving flags,
/// switch count and cumulative loss. Infeasible plays are flagged, with regret
/// left as NaN.
Trajectory make_trajectory(const GameConfig& config, std::span<const Vec> actions,
                           std::span<const Vec> losses);

/// Stateful player automaton. `decide` emits x_t; `observe` is then called
/// with the round's (x_t, w_t). Staying put means re-emitting the identical
/// vector.
class Player {
 public:
  virtual ~Player() = default;
  virtual void reset(const GameConfig& config) = 0;
  virtual Vec decide() = 0;
  virtual void observe(std::span<const double> action, std::span<const double> loss) = 0;
  virtual std::string name() const = 0;
};

/// Adaptive adversary: sees x_t (and whether it is a moving round) before
/// choosing w_t.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual void reset(const GameConfig& config) = 0;
  virtual Vec respond(std::span<const double> action, bool moving) = 0;
  virtual void observe(std::span<const double> /*action*/, std::span<const double> /*loss*/) {}
  virtual std::string name() const = 0;
};

/// Runs T rounds of the adaptive protocol. Resets both strategies first.
/// Throws BudgetViolation at the round where the player's K-th switch occurs
/// and ArgumentError when an emission leaves its norm ball.
Trajectory play_game(Player& player, Adversary& adversary, const GameConfig& config);

}  // namespace switchlab
