#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "switchlab/game.hpp"

namespace switchlab {

/// n >= 2, L2. On moving rounds emits a unit w with w.x >= 0 and w.W >= 0,
/// where W is the loss accumulated before this round; on stationary rounds it
/// repeats the previous w. Every block then adds a vector orthogonal to the
/// running sum, so |W_T|^2 = sum of squared block lengths.
///
/// n = 2: W rotated by +90 degrees, sign-flipped so that w.x >= 0.
/// n > 2: Gram-Schmidt against {x, W}, positive last nonzero coordinate.
/// x = W = 0 gives e_1.
class OrthogonalAdversary final : public Adversary {
 public:
  void reset(const GameConfig& config) override;
  Vec respond(std::span<const double> action, bool moving) override;
  std::string name() const override { return "orthogonal"; }

  const Vec& running_sum() const { return running_; }

  /// The moving-round construction on its own, for inspection.
  static Vec perpendicular(std::span<const double> action, std::span<const double> running);

 private:
  Vec running_;
  Vec last_;
};

/// n = 1. With W = sum of earlier losses: emits 0 forever once |W| >= T/sqrt(K),
/// otherwise +1 when x >= -W sqrt(K)/T and -1 below.
class StoppingAdversary final : public Adversary {
 public:
  void reset(const GameConfig& config) override;
  Vec respond(std::span<const double> action, bool moving) override;
  std::string name() const override { return "stopping"; }

  /// Scalar step shared with ProductAdversary.
  double step(double x);
  void reset_scalar(std::int64_t horizon, std::int64_t budget);
  bool stopped() const { return stopped_; }
  double running_sum() const { return running_; }

 private:
  double horizon_ = 1.0;
  double root_budget_ = 1.0;
  double threshold_ = 1.0;
  double running_ = 0.0;
  bool stopped_ = false;
};

/// n = 1, w in {-1, +1}.
class SignAdversary final : public Adversary {
 public:
  enum class Variant {
    Bias,    // sign(Z + W), W = earlier losses
    Action,  // sign(x)
  };

  explicit SignAdversary(Variant variant, double bias = 0.0) : variant_(variant), bias_(bias) {}

  void reset(const GameConfig& config) override;
  Vec respond(std::span<const double> action, bool moving) override;
  std::string name() const override { return variant_ == Variant::Bias ? "sign_bias" : "sign_action"; }

 private:
  Variant variant_;
  double bias_;
  double running_ = 0.0;
};

/// Linf game: an independent stopping adversary on every coordinate.
class ProductAdversary final : public Adversary {
 public:
  void reset(const GameConfig& config) override;
  Vec respond(std::span<const double> action, bool moving) override;
  std::string name() const override { return "product"; }

 private:
  std::vector<StoppingAdversary> coords_;
};

/// Emits the same loss vector every round. An empty vector means all zeros.
class ConstantAdversary final : public Adversary {
 public:
  explicit ConstantAdversary(Vec loss = {}, std::string label = "constant")
      : loss_(std::move(loss)), label_(std::move(label)) {}

  void reset(const GameConfig& config) override;
  Vec respond(std::span<const double>, bool) override { return active_; }
  std::string name() const override { return label_; }

 private:
  Vec loss_;
  Vec active_;
  std::string label_;
};

/// Plays a fixed scalar loss sequence (n = 1), ignoring the player. Used to
/// enumerate oblivious sequences.
class ReplayAdversary final : public Adversary {
 public:
  explicit ReplayAdversary(std::vector<double> losses) : losses_(std::move(losses)) {}

  void reset(const GameConfig& config) override;
  Vec respond(std::span<const double>, bool) override;
  std::string name() const override { return "replay"; }

 private:
  std::vector<double> losses_;
  std::size_t round_ = 0;
};

}  // namespace switchlab
