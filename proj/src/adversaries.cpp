#include "switchlab/adversaries.hpp"

#include <cmath>

namespace switchlab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

bool is_zero(std::span<const double> v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

void normalize(Vec& v) {
  const double r = std::sqrt(dot(v, v));
  for (double& x : v) x /= r;
}

// Unit vector orthogonal to every vector in `against` (assumed orthonormal),
// taken from the standard basis vector with the largest residual.
Vec complete(std::size_t n, const std::vector<Vec>& against) {
  Vec best;
  double best_norm = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    for (const auto& q : against) {
      const double c = dot(e, q);
      for (std::size_t j = 0; j < n; ++j) e[j] -= c * q[j];
    }
    const double r = std::sqrt(dot(e, e));
    if (r > best_norm + 1e-12) {
      best_norm = r;
      best = std::move(e);
    }
  }
  normalize(best);
  for (std::size_t j = n; j-- > 0;) {
    if (std::abs(best[j]) > 1e-15) {
      if (best[j] < 0.0) {
        for (double& x : best) x = -x;
      }
      break;
    }
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

void OrthogonalAdversary::reset(const GameConfig& config) {
  if (config.dimension < 2) throw UnsupportedConfig("orthogonal adversary needs n >= 2");
  if (config.norm != Norm::L2) throw UnsupportedConfig("orthogonal adversary needs the L2 game");
  running_.assign(static_cast<std::size_t>(config.dimension), 0.0);
  last_.clear();
}

Vec OrthogonalAdversary::perpendicular(std::span<const double> action,
                                       std::span<const double> running) {
  const std::size_t n = action.size();
  if (n == 2) {
    const bool w_zero = is_zero(running);
    if (w_zero && is_zero(action)) return {1.0, 0.0};
    // Counterclockwise quarter turn of W (or of x when W vanishes).
    std::span<const double> base = w_zero ? action : running;
    Vec w{-base[1], base[0]};
    normalize(w);
    if (!w_zero && dot(w, action) < 0.0) {
      w[0] = -w[0];
      w[1] = -w[1];
    }
    return w;
  }

  std::vector<Vec> basis;
  for (auto v : {action, running}) {
    Vec q(v.begin(), v.end());
    for (const auto& b : basis) {
      const double c = dot(q, b);
      for (std::size_t j = 0; j < n; ++j) q[j] -= c * b[j];
    }
    const double r = std::sqrt(dot(q, q));
    if (r > 1e-12 * std::max(1.0, std::sqrt(dot(v, v)))) {
      for (double& x : q) x /= r;
      basis.push_back(std::move(q));
    }
  }
  return complete(n, basis);
}

Vec OrthogonalAdversary::respond(std::span<const double> action, bool moving) {
  if (moving || last_.empty()) last_ = perpendicular(action, running_);
  for (std::size_t j = 0; j < running_.size(); ++j) running_[j] += last_[j];
  return last_;
}

// ---------------------------------------------------------------------------

void StoppingAdversary::reset_scalar(std::int64_t horizon, std::int64_t budget) {
  horizon_ = static_cast<double>(horizon);
  root_budget_ = std::sqrt(static_cast<double>(budget));
  threshold_ = horizon_ / root_budget_;
  running_ = 0.0;
  stopped_ = false;
}

void StoppingAdversary::reset(const GameConfig& config) {
  if (config.dimension != 1) throw UnsupportedConfig("stopping adversary needs n=1");
  reset_scalar(config.horizon, config.budget);
}

double StoppingAdversary::step(double x) {
  if (stopped_ || std::abs(running_) >= threshold_) {
    stopped_ = true;
    return 0.0;
  }
  const double w = x >= -running_ * root_budget_ / horizon_ ? 1.0 : -1.0;
  running_ += w;
  return w;
}

Vec StoppingAdversary::respond(std::span<const double> action, bool) { return {step(action[0])}; }

// ---------------------------------------------------------------------------

void SignAdversary::reset(const GameConfig& config) {
  if (config.dimension != 1) throw UnsupportedConfig("sign adversary needs n=1");
  running_ = 0.0;
}

Vec SignAdversary::respond(std::span<const double> action, bool) {
  const double s = variant_ == Variant::Bias ? bias_ + running_ : action[0];
  const double w = s >= 0.0 ? 1.0 : -1.0;
  running_ += w;
  return {w};
}

// ---------------------------------------------------------------------------

void ProductAdversary::reset(const GameConfig& config) {
  if (config.norm != Norm::Linf && config.dimension > 1) {
    throw UnsupportedConfig("product adversary needs the Linf game");
  }
  coords_.assign(static_cast<std::size_t>(config.dimension), StoppingAdversary{});
  for (auto& c : coords_) c.reset_scalar(config.horizon, config.budget);
}

Vec ProductAdversary::respond(std::span<const double> action, bool) {
  Vec w(coords_.size());
  for (std::size_t j = 0; j < coords_.size(); ++j) w[j] = coords_[j].step(action[j]);
  return w;
}

// ---------------------------------------------------------------------------

void ConstantAdversary::reset(const GameConfig& config) {
  const auto n = static_cast<std::size_t>(config.dimension);
  if (loss_.empty()) {
    active_.assign(n, 0.0);
    return;
  }
  if (loss_.size() != n) throw ArgumentError(label_ + " adversary: loss has the wrong dimension");
  active_ = loss_;
}

void ReplayAdversary::reset(const GameConfig& config) {
  if (config.dimension != 1) throw UnsupportedConfig("replay adversary needs n=1");
  if (static_cast<std::int64_t>(losses_.size()) < config.horizon) {
    throw ArgumentError("replay adversary: sequence shorter than the horizon");
  }
  round_ = 0;
}

Vec ReplayAdversary::respond(std::span<const double>, bool) { return {losses_[round_++]}; }

}  // namespace switchlab
