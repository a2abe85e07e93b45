#include "switchlab/players.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace switchlab {

namespace {

void project(Vec& x, Norm norm) {
  if (norm == Norm::Linf) {
    for (double& v : x) v = std::clamp(v, -1.0, 1.0);
    return;
  }
  const double r = primal_norm(x, Norm::L2);
  if (r > 1.0) {
    for (double& v : x) v /= r;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

MinibatchPlayer::MinibatchPlayer(std::optional<double> step_size) : requested_eta_(step_size) {
  if (step_size && !(*step_size > 0.0)) throw ArgumentError("minibatch: step size must be positive");
}

double MinibatchPlayer::regret_bound(const GameConfig& config) {
  const double epoch = static_cast<double>((config.horizon + config.budget - 1) / config.budget);
  const double scale = config.norm == Norm::Linf ? static_cast<double>(config.dimension) : 1.0;
  return scale * 2.0 * epoch * std::sqrt(static_cast<double>(config.budget));
}

void MinibatchPlayer::reset(const GameConfig& config) {
  config_ = config;
  epoch_length_ = (config.horizon + config.budget - 1) / config.budget;
  eta_ = requested_eta_.value_or(2.0 / std::sqrt(static_cast<double>(config.budget)));
  round_ = 0;
  point_.assign(static_cast<std::size_t>(config.dimension), 0.0);
  accumulated_.assign(point_.size(), 0.0);
}

Vec MinibatchPlayer::decide() {
  if (round_ > 0 && round_ % epoch_length_ == 0) {
    const double scale = eta_ / static_cast<double>(epoch_length_);
    for (std::size_t j = 0; j < point_.size(); ++j) point_[j] -= scale * accumulated_[j];
    project(point_, config_.norm);
    std::fill(accumulated_.begin(), accumulated_.end(), 0.0);
  }
  return point_;
}

void MinibatchPlayer::observe(std::span<const double>, std::span<const double> loss) {
  for (std::size_t j = 0; j < accumulated_.size(); ++j) accumulated_[j] += loss[j];
  ++round_;
}

// ---------------------------------------------------------------------------

void HalfSplitPlayer::reset(const GameConfig& config) {
  if (config.budget != 2 || config.dimension != 1) {
    throw UnsupportedConfig("halfsplit player needs K=2 and n=1");
  }
  horizon_ = config.horizon;
  first_half_ = (horizon_ + 1) / 2;
  round_ = 0;
  window_sum_ = 0.0;
  second_half_action_ = 0.0;
}

Vec HalfSplitPlayer::decide() {
  if (round_ == first_half_ && horizon_ > 1) {
    // Even T averages rounds 1..T/2; odd T averages rounds 2..(T+1)/2.
    const auto span = static_cast<double>(horizon_ / 2);
    second_half_action_ = -window_sum_ / span;
  }
  return {round_ < first_half_ ? 0.0 : second_half_action_};
}

void HalfSplitPlayer::observe(std::span<const double>, std::span<const double> loss) {
  ++round_;
  const bool odd = horizon_ % 2 == 1;
  if (round_ <= first_half_ && !(odd && round_ == 1)) window_sum_ += loss[0];
}

// ---------------------------------------------------------------------------

FugalPlayer::FugalPlayer(std::shared_ptr<const fugal::FugalPolicy> policy)
    : policy_(std::move(policy)) {}

void FugalPlayer::reset(const GameConfig& config) {
  if (!policy_) throw DependencyError("fugal player: no solved policy");
  if (config.dimension != 1) throw UnsupportedConfig("fugal player needs n=1");
  if (policy_->budget() != config.budget) {
    throw DependencyError("fugal player: policy solved for K=" + std::to_string(policy_->budget()) +
                          " but the game has K=" + std::to_string(config.budget));
  }
  horizon_ = static_cast<double>(config.horizon);
  budget_ = config.budget;
  round_ = 0;
  signs_.clear();
  block_sum_ = 0.0;
  action_ = policy_->at("").action;
}

Vec FugalPlayer::decide() {
  if (round_ > 0 && switches_used() < budget_ - 1) {
    const auto& node = policy_->at(signs_);
    const double upper = node.length_plus * horizon_;
    const double lower = -node.length_minus * horizon_;
    char sign = 0;
    if (block_sum_ >= upper) {
      sign = '+';
    } else if (block_sum_ <= lower) {
      sign = '-';
    }
    if (sign != 0) {
      signs_.push_back(sign);
      action_ = policy_->at(signs_).action;
      block_sum_ = 0.0;
    }
  }
  return {action_};
}

void FugalPlayer::observe(std::span<const double>, std::span<const double> loss) {
  block_sum_ += loss[0];
  ++round_;
}

// ---------------------------------------------------------------------------

ConstantPlayer::ConstantPlayer(Vec point) : point_(std::move(point)) {
  if (!(primal_norm(point_, Norm::Linf) <= 1.0 + kBallSlack)) {
    throw ArgumentError("constant player: point outside the unit ball");
  }
}

void ConstantPlayer::reset(const GameConfig& config) {
  const auto n = static_cast<std::size_t>(config.dimension);
  if (point_.empty()) {
    active_.assign(n, 0.0);
    return;
  }
  if (point_.size() != n) throw ArgumentError("constant player: point has the wrong dimension");
  if (!(primal_norm(point_, config.norm) <= 1.0 + kBallSlack)) {
    throw ArgumentError("constant player: point outside the unit ball");
  }
  active_ = point_;
}

// ---------------------------------------------------------------------------

Vec sample_ball(std::mt19937_64& rng, std::size_t dimension, Norm norm) {
  Vec x(dimension);
  if (norm == Norm::Linf) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : x) v = u(rng);
    return x;
  }
  std::normal_distribution<double> g;
  double r2 = 0.0;
  do {
    r2 = 0.0;
    for (double& v : x) {
      v = g(rng);
      r2 += v * v;
    }
  } while (r2 == 0.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double radius = std::pow(u(rng), 1.0 / static_cast<double>(dimension)) / std::sqrt(r2);
  for (double& v : x) v *= radius;
  project(x, Norm::L2);
  return x;
}

void RandomSwitchPlayer::reset(const GameConfig& config) {
  config_ = config;
  rng_.seed(config.seed);
  round_ = 0;
  next_switch_ = 0;

  std::uniform_int_distribution<std::int64_t> count(0, config.budget - 1);
  const auto s = static_cast<std::size_t>(count(rng_));
  // Candidate switch rounds are 2..T; take s of them without replacement.
  std::vector<std::int64_t> rounds(static_cast<std::size_t>(config.horizon - 1));
  std::iota(rounds.begin(), rounds.end(), std::int64_t{2});
  switch_rounds_.clear();
  std::sample(rounds.begin(), rounds.end(), std::back_inserter(switch_rounds_), s, rng_);
  current_ = draw_point();
}

Vec RandomSwitchPlayer::draw_point() {
  return sample_ball(rng_, static_cast<std::size_t>(config_.dimension), config_.norm);
}

Vec RandomSwitchPlayer::decide() {
  const std::int64_t t = round_ + 1;
  if (next_switch_ < switch_rounds_.size() && switch_rounds_[next_switch_] == t) {
    ++next_switch_;
    Vec next = draw_point();
    while (next == current_) next = draw_point();
    current_ = std::move(next);
  }
  return current_;
}

}  // namespace switchlab
