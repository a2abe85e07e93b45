#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "switchlab/fugal.hpp"
#include "switchlab/game.hpp"

namespace switchlab {

/// Projected OGD on epoch-averaged losses. Epochs have length ceil(T/K), so at
/// most K distinct points are played. Starts at the origin.
class MinibatchPlayer final : public Player {
 public:
  /// step_size defaults to 2/sqrt(K) (diameter 2, unit gradients).
  explicit MinibatchPlayer(std::optional<double> step_size = std::nullopt);

  void reset(const GameConfig& config) override;
  Vec decide() override;
  void observe(std::span<const double> action, std::span<const double> loss) override;
  std::string name() const override { return "minibatch"; }

  std::int64_t epoch_length() const { return epoch_length_; }
  double step_size() const { return eta_; }

  /// 2 ceil(T/K) sqrt(K), times n on the Linf ball.
  static double regret_bound(const GameConfig& config);

 private:
  std::optional<double> requested_eta_;
  GameConfig config_;
  std::int64_t epoch_length_ = 1;
  std::int64_t round_ = 0;
  double eta_ = 1.0;
  Vec point_;
  Vec accumulated_;
};

/// K = 2, n = 1: hold 0 for the first half, then play the negated average of
/// the first-half losses. Odd T drops the first round from the average.
class HalfSplitPlayer final : public Player {
 public:
  void reset(const GameConfig& config) override;
  Vec decide() override;
  void observe(std::span<const double> action, std::span<const double> loss) override;
  std::string name() const override { return "halfsplit"; }

 private:
  std::int64_t horizon_ = 1;
  std::int64_t first_half_ = 1;
  std::int64_t round_ = 0;
  double window_sum_ = 0.0;
  double second_half_action_ = 0.0;
};

/// Threshold player driven by a solved fugal policy. Keeps the current action
/// until the loss accumulated since the last move reaches M_plus T or falls to
/// -M_minus T, then records the sign and moves to the policy's next action.
class FugalPlayer final : public Player {
 public:
  explicit FugalPlayer(std::shared_ptr<const fugal::FugalPolicy> policy);

  void reset(const GameConfig& config) override;
  Vec decide() override;
  void observe(std::span<const double> action, std::span<const double> loss) override;
  std::string name() const override { return "fugal"; }

  const std::string& recorded_signs() const { return signs_; }
  std::int64_t switches_used() const { return static_cast<std::int64_t>(signs_.size()); }

 private:
  std::shared_ptr<const fugal::FugalPolicy> policy_;
  double horizon_ = 1.0;
  std::int64_t budget_ = 1;
  std::int64_t round_ = 0;
  std::string signs_;
  double block_sum_ = 0.0;
  double action_ = 0.0;
};

/// Plays one fixed point. An empty point means the origin of the game's dimension.
class ConstantPlayer final : public Player {
 public:
  explicit ConstantPlayer(Vec point = {});

  void reset(const GameConfig& config) override;
  Vec decide() override { return active_; }
  void observe(std::span<const double>, std::span<const double>) override {}
  std::string name() const override { return "constant"; }

 private:
  Vec point_;
  Vec active_;
};

/// Baseline: s ~ U{0..K-1} switches at distinct uniformly drawn rounds, a
/// uniformly random ball point per block. Seeded from the game config.
class RandomSwitchPlayer final : public Player {
 public:
  void reset(const GameConfig& config) override;
  Vec decide() override;
  void observe(std::span<const double>, std::span<const double>) override { ++round_; }
  std::string name() const override { return "random_switch"; }

 private:
  Vec draw_point();

  GameConfig config_;
  std::mt19937_64 rng_;
  std::vector<std::int64_t> switch_rounds_;  // sorted, 1-based
  std::size_t next_switch_ = 0;
  std::int64_t round_ = 0;
  Vec current_;
};

/// Uniform sample from the unit ball of the given norm.
Vec sample_ball(std::mt19937_64& rng, std::size_t dimension, Norm norm);

}  // namespace switchlab
