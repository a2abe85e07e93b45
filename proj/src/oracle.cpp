#include "switchlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <vector>

#include "switchlab/fugal.hpp"

namespace switchlab::oracle {

namespace {

// Memo over (round, switches left, action index or unset, loss index).
class Solver {
 public:
  explicit Solver(const OracleConfig& c)
      : cfg_(c),
        g_(c.x_grid),
        m_(c.adversary_points),
        slots_x_(static_cast<std::size_t>(g_) + 1),
        slots_s_(static_cast<std::size_t>(c.horizon) * static_cast<std::size_t>(m_ - 1) + 1) {
    const double entries = static_cast<double>(c.horizon + 1) * c.budget *
                           static_cast<double>(slots_x_) * static_cast<double>(slots_s_);
    if (entries > kMaxEntries) {
      throw CapacityError("oracle state space of " + std::to_string(entries) +
                          " entries exceeds the 1e8 cap");
    }
    memo_.assign(static_cast<std::size_t>(entries), std::numeric_limits<double>::quiet_NaN());
    actions_.resize(static_cast<std::size_t>(g_));
    for (int j = 0; j < g_; ++j) actions_[static_cast<std::size_t>(j)] = -1.0 + 2.0 * j / (g_ - 1);
    actions_[static_cast<std::size_t>(g_ / 2)] = 0.0;
    losses_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) losses_[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (m_ - 1);
  }

  // Sum of losses after t rounds with loss-index total s.
  double loss_sum(int t, int s) const { return -t + 2.0 * s / (m_ - 1); }

  double value(int t, int k_left, int xi, int s) {
    if (t == cfg_.horizon) return std::abs(cfg_.bias + loss_sum(t, s));
    double& slot = memo_[index(t, k_left, xi, s)];
    if (!std::isnan(slot)) return slot;
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](int next_x, int next_k) {
      best = std::min(best, adversary_max(t, next_k, next_x, s));
    };
    if (xi == g_) {
      for (int j = 0; j < g_; ++j) consider(j, k_left);
    } else {
      consider(xi, k_left);
      if (k_left > 0) {
        for (int j = 0; j < g_; ++j) {
          if (j != xi) consider(j, k_left - 1);
        }
      }
    }
    slot = best;
    return best;
  }

  double adversary_max(int t, int k_left, int xi, int s) {
    const double x = actions_[static_cast<std::size_t>(xi)];
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      worst = std::max(worst, losses_[static_cast<std::size_t>(i)] * x + value(t + 1, k_left, xi, s + i));
    }
    return worst;
  }

  double first_action() {
    const int k_left = cfg_.budget - 1;
    double best = std::numeric_limits<double>::infinity();
    double arg = 0.0;
    for (int j = 0; j < g_; ++j) {
      const double v = adversary_max(0, k_left, j, 0);
      const double x = actions_[static_cast<std::size_t>(j)];
      const bool better = v < best - 1e-12;
      const bool tie_smaller = std::abs(v - best) <= 1e-12 && std::abs(x) < std::abs(arg);
      if (better || tie_smaller) {
        best = std::min(best, v);
        arg = x;
      }
    }
    return arg;
  }

 private:
  std::size_t index(int t, int k_left, int xi, int s) const {
    return ((static_cast<std::size_t>(t) * static_cast<std::size_t>(cfg_.budget) +
             static_cast<std::size_t>(k_left)) *
                slots_x_ +
            static_cast<std::size_t>(xi)) *
               slots_s_ +
           static_cast<std::size_t>(s);
  }

  OracleConfig cfg_;
  int g_;
  int m_;
  std::size_t slots_x_;
  std::size_t slots_s_;
  std::vector<double> memo_;
  std::vector<double> actions_;
  std::vector<double> losses_;
};

using Int = __int128;

Int central_binomial(int n) {
  Int c = 1;
  const int k = n / 2;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

Int gcd128(Int a, Int b) {
  while (b != 0) {
    const Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

OracleReport exact_minimax_1d(const OracleConfig& config) {
  if (config.horizon < 1 || config.horizon > kMaxHorizon) {
    throw ArgumentError("oracle: horizon must lie in 1.." + std::to_string(kMaxHorizon));
  }
  if (config.budget < 1 || config.budget > config.horizon) {
    throw ArgumentError("oracle: budget must lie in 1..T");
  }
  if (config.x_grid < 3 || config.x_grid % 2 == 0) {
    throw ArgumentError("oracle: x_grid must be an odd count >= 3");
  }
  if (config.adversary_points < 2) throw ArgumentError("oracle: adversary needs at least 2 points");

  Solver solver(config);
  OracleReport r;
  r.config = config;
  r.value = solver.value(0, config.budget - 1, config.x_grid, 0);
  r.witness_first_action = solver.first_action();

  const double t = config.horizon;
  const double k = config.budget;
  const double epoch = std::ceil(t / k);
  const double z = std::abs(config.bias);
  r.lower = config.bias == 0.0 ? t * fugal::quadratic_bound(config.budget, 0.0) : z;
  r.upper = epoch * unconstrained_R_closed_form(config.budget) + z;
  r.slack = 2.0 * t / (config.x_grid - 1);
  return r;
}

double unconstrained_R_closed_form(int budget) {
  if (budget < 1) throw DomainError("R(K): K must be positive");
  const int even = budget % 2 == 0 ? budget : budget - 1;  // C(K-1, (K-1)/2) for odd K
  const int power = budget % 2 == 0 ? budget : budget - 1;
  if (budget <= 60) {
    Int num = static_cast<Int>(budget) * central_binomial(even);
    Int den = static_cast<Int>(1) << power;
    const Int g = gcd128(num, den);
    num /= g;
    den /= g;
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
  const double log_c = std::lgamma(even + 1.0) - 2.0 * std::lgamma(even / 2.0 + 1.0);
  return std::exp(std::log(static_cast<double>(budget)) + log_c - power * std::log(2.0));
}

bool tk_inequality_check(std::int64_t horizon, std::int64_t budget) {
  if (budget < 1 || horizon < budget) throw ArgumentError("t-k inequality: needs 1 <= K <= T");
  const Int epoch = (horizon + budget - 1) / budget;
  const Int lhs = epoch * epoch * static_cast<Int>(budget) * static_cast<Int>(budget + 1);
  const Int rhs = static_cast<Int>(4) * horizon * horizon;
  return lhs <= rhs;
}

void write_csv_header(std::ostream& out) { out << "T,K,Z,value,lower,upper\n"; }

void write_csv_row(std::ostream& out, const OracleReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g\n", r.config.horizon,
                r.config.budget, r.config.bias, r.value, r.lower, r.upper);
  out << buf;
}

}  // namespace switchlab::oracle
