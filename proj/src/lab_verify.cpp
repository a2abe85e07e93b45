#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "switchlab/adversaries.hpp"
#include "switchlab/lab.hpp"
#include "switchlab/players.hpp"

namespace switchlab::lab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult result(bool ok, json measured, json expected, double tolerance, std::string detail = {}) {
  CheckResult r;
  r.passed = ok;
  r.measured = std::move(measured);
  r.expected = std::move(expected);
  r.tolerance = tolerance;
  r.detail = std::move(detail);
  return r;
}

double a_ref(const VerifyOptions& o, int k, double z) { return fugal::quadratic_bound(k, z) + o.fault_a_k; }

fugal::OperatorOptions op_options(const VerifyOptions& o) {
  fugal::OperatorOptions op;
  op.threads = o.threads;
  return op;
}

std::vector<fugal::GridFunction> solve_grids(int budget, int resolution, const VerifyOptions& o) {
  std::vector<fugal::GridFunction> u;
  u.emplace_back(resolution, std::vector<double>(static_cast<std::size_t>(resolution) + 1, 1.0), 1);
  for (int k = 2; k <= budget; ++k) u.push_back(fugal::fugal_apply(u.back(), op_options(o)));
  return u;
}

// A player factory with a label; `seed` feeds the game config (random players).
struct PlayerCase {
  std::string label;
  std::function<std::unique_ptr<Player>()> make;
  std::uint64_t seed = 0;
};

std::vector<PlayerCase> lower_bound_players(std::size_t n, Norm norm, int random_count) {
  std::vector<PlayerCase> out;
  out.push_back({"minibatch", [] { return std::make_unique<MinibatchPlayer>(); }});
  out.push_back({"constant(0)", [] { return std::make_unique<ConstantPlayer>(); }});
  std::mt19937_64 rng(12345 + n);
  for (int i = 0; i < random_count / 5; ++i) {
    Vec p = sample_ball(rng, n, norm);
    out.push_back({"constant(random)", [p] { return std::make_unique<ConstantPlayer>(p); }});
  }
  for (int s = 0; s < random_count; ++s) {
    out.push_back({"random_switch", [] { return std::make_unique<RandomSwitchPlayer>(); },
                   static_cast<std::uint64_t>(s)});
  }
  return out;
}

// Runs every player case against a fresh adversary; returns the smallest
// ratio regret / bound seen and the case that produced it.
struct Worst {
  double ratio = std::numeric_limits<double>::infinity();
  double regret = 0.0;
  double bound = 0.0;
  std::string where;
  int runs = 0;
  bool ok = true;

  void record(double regret_value, double bound_value, double slack, const std::string& label,
              const GameConfig& c) {
    ++runs;
    const double r = regret_value / bound_value;
    if (regret_value < bound_value - slack) ok = false;
    if (r < ratio) {
      ratio = r;
      regret = regret_value;
      bound = bound_value;
      std::ostringstream s;
      s << label << " T=" << c.horizon << " K=" << c.budget << " n=" << c.dimension << " seed=" << c.seed;
      where = s.str();
    }
  }

  json measured() const {
    return {{"runs", runs}, {"min_regret_over_bound", ratio}, {"worst_regret", regret},
            {"worst_bound", bound}, {"worst_case", where}};
  }
};

// ---------------------------------------------------------------------------
// Acceptance criteria

CheckResult c1_fugal_constants(const VerifyOptions& o) {
  const auto t0 = Clock::now();
  const auto u = solve_grids(4, 2000, o);
  const double secs = seconds_since(t0);
  const auto ex = fugal::u4_exact();
  const double u2 = u[1](0.0), u3 = u[2](0.0), u4 = u[3](0.0);
  const double e2 = std::abs(u2 - 0.5);
  const double e3 = std::abs(u3 - (std::numbers::sqrt2 - 1.0));
  const double e4 = std::abs(u4 - 0.362975);
  const double eu = std::abs(ex.u4_zero - 0.362975);
  const double ez = std::abs(ex.z0 - 0.283975);
  const bool ok = e2 <= 2e-3 && e3 <= 2e-3 && e4 <= 2e-3 && eu <= 1e-6 && ez <= 1e-6 && secs < 60.0;
  return result(ok,
                {{"u2_0", u2}, {"u3_0", u3}, {"u4_0", u4}, {"u4_exact", ex.u4_zero}, {"z0", ex.z0},
                 {"z0_cardano", ex.z0_cardano}, {"solve_seconds", secs}},
                {{"u2_0", 0.5}, {"u3_0", std::numbers::sqrt2 - 1.0}, {"u4_0", 0.362975},
                 {"u4_exact", 0.362975}, {"z0", 0.283975}, {"solve_seconds_max", 60}},
                2e-3, "grid values at N=2000 within 2e-3; closed forms within 1e-6");
}

CheckResult c2_quadratic_sandwich(const VerifyOptions& o) {
  const auto t0 = Clock::now();
  const int n = 1000;
  const auto u = solve_grids(8, n, o);
  const double secs = seconds_since(t0);
  double low = std::numeric_limits<double>::infinity();   // min u_k - a_k
  double high = -std::numeric_limits<double>::infinity(); // max u_k - (z^2+1)/2, k >= 2
  double mono = -std::numeric_limits<double>::infinity(); // max u_{k+1} - u_k
  for (int k = 1; k <= 8; ++k) {
    const auto& g = u[static_cast<std::size_t>(k - 1)];
    for (int j = 0; j <= n; ++j) {
      const double z = g.node(j);
      low = std::min(low, g.value(j) - a_ref(o, k, z));
      if (k >= 2) high = std::max(high, g.value(j) - 0.5 * (z * z + 1.0));
      if (k < 8) mono = std::max(mono, u[static_cast<std::size_t>(k)].value(j) - g.value(j));
    }
  }
  const bool ok = low >= -2e-3 && high <= 2e-3 && mono <= 1e-6 && secs < 300.0;
  return result(ok,
                {{"min_u_minus_a", low}, {"max_u_minus_cap", high}, {"max_step_increase", mono},
                 {"solve_seconds", secs}},
                {{"min_u_minus_a", ">= -2e-3"}, {"max_u_minus_cap", "<= 2e-3"},
                 {"max_step_increase", "<= 1e-6"}, {"solve_seconds_max", 300}},
                2e-3, "k <= 8, N = 1000");
}

CheckResult c3_operator_closed_form(const VerifyOptions& o) {
  const int n = 1000;
  json per_i = json::object();
  double worst = 0.0;
  for (int i : {2, 3, 4}) {
    const auto a = fugal::GridFunction::sample(n, [i](double z) { return fugal::quadratic_bound(i, z); }, i);
    const auto ta = fugal::fugal_apply(a, op_options(o));
    double err = 0.0;
    for (int j = 0; j <= n; ++j) {
      err = std::max(err, std::abs(ta.value(j) - fugal::fugal_quadratic_closed_form(i, ta.node(j))));
    }
    per_i[std::to_string(i)] = err;
    worst = std::max(worst, err);
  }
  double interlace = std::numeric_limits<double>::infinity();
  for (int i = 2; i <= 12; ++i) {
    for (int s = 0; s <= 10000; ++s) {
      const double z = -1.0 + 2.0 * s / 10000.0;
      interlace = std::min(interlace, fugal::fugal_quadratic_closed_form(i, z) - a_ref(o, i + 1, z));
    }
  }
  const bool ok = worst <= 5e-3 && interlace >= -1e-12;
  return result(ok, {{"max_abs_error", per_i}, {"min_Ta_minus_next_a", interlace}},
                {{"max_abs_error", "<= 5e-3"}, {"min_Ta_minus_next_a", ">= -1e-12"}}, 5e-3,
                "grid N=1000 for i in {2,3,4}; interlacing on 10^4+1 points, i = 2..12");
}

CheckResult c4_orthogonal(const VerifyOptions&) {
  Worst worst;
  double identity_err = 0.0;
  for (std::int64_t n : {2, 3, 5}) {
    const auto players = lower_bound_players(static_cast<std::size_t>(n), Norm::L2, 50);
    for (std::int64_t t : {100, 1000}) {
      for (std::int64_t k : {1, 4, 16}) {
        for (const auto& pc : players) {
          GameConfig c{t, k, n, Norm::L2, pc.seed};
          auto player = pc.make();
          OrthogonalAdversary adv;
          const Trajectory tr = play_game(*player, adv, c);
          worst.record(tr.regret, static_cast<double>(t) / std::sqrt(static_cast<double>(k)), 1e-6, pc.label, c);
          double w2 = 0.0, m2 = 0.0;
          for (double v : tr.cumulative_loss) w2 += v * v;
          for (auto m : tr.block_lengths()) m2 += static_cast<double>(m) * static_cast<double>(m);
          identity_err = std::max(identity_err, std::abs(w2 - m2) / m2);
        }
      }
    }
  }
  json m = worst.measured();
  m["max_rel_identity_error"] = identity_err;
  return result(worst.ok && identity_err <= 1e-9, m,
                {{"regret", ">= T/sqrt(K) - 1e-6"}, {"max_rel_identity_error", "<= 1e-9"}}, 1e-6);
}

CheckResult c5_stopping(const VerifyOptions&) {
  Worst worst;
  const auto players = lower_bound_players(1, Norm::L2, 50);
  for (std::int64_t t : {100, 1000, 10000}) {
    for (std::int64_t k : {1, 2, 4, 16, 100}) {
      for (const auto& pc : players) {
        GameConfig c{t, k, 1, Norm::L2, pc.seed};
        auto player = pc.make();
        StoppingAdversary adv;
        const Trajectory tr = play_game(*player, adv, c);
        worst.record(tr.regret, static_cast<double>(t) / (2.0 * std::sqrt(static_cast<double>(k))), 0.0,
                     pc.label, c);
      }
    }
  }
  return result(worst.ok, worst.measured(), {{"regret", ">= T/(2 sqrt(K))"}}, 0.0);
}

CheckResult c6_upper_bounds(const VerifyOptions&) {
  double max_ratio = -std::numeric_limits<double>::infinity();
  std::string where;
  int runs = 0;
  bool ok = true;
  auto check = [&](const GameConfig& c, Adversary& adv, const std::string& label) {
    MinibatchPlayer p;
    const Trajectory tr = play_game(p, adv, c);
    const double bound = MinibatchPlayer::regret_bound(c);
    ++runs;
    if (tr.regret > bound + 1e-9) ok = false;
    if (tr.regret / bound > max_ratio) {
      max_ratio = tr.regret / bound;
      where = label + " T=" + std::to_string(c.horizon) + " K=" + std::to_string(c.budget) +
              " n=" + std::to_string(c.dimension);
    }
  };
  for (std::int64_t t : {100, 1000}) {
    for (std::int64_t k : {1, 2, 4, 16, 100}) {
      GameConfig one{t, k, 1, Norm::L2, 0};
      StoppingAdversary stop;
      SignAdversary sb(SignAdversary::Variant::Bias), sa(SignAdversary::Variant::Action);
      SignAdversary sb3(SignAdversary::Variant::Bias, -3.0);
      ConstantAdversary plus({1.0}), minus({-1.0}), zero;
      ProductAdversary prod1;
      check(one, stop, "stopping");
      check(one, sb, "sign_bias");
      check(one, sb3, "sign_bias(Z=-3)");
      check(one, sa, "sign_action");
      check(one, plus, "constant(+1)");
      check(one, minus, "constant(-1)");
      check(one, zero, "zero");
      check(one, prod1, "product(n=1)");
      for (std::int64_t n : {2, 3}) {
        GameConfig l2{t, k, n, Norm::L2, 0};
        OrthogonalAdversary orth;
        Vec e1(static_cast<std::size_t>(n), 0.0);
        e1[0] = 1.0;
        ConstantAdversary ce(e1);
        check(l2, orth, "orthogonal");
        check(l2, ce, "constant(e1)");
        GameConfig li{t, k, n, Norm::Linf, 0};
        ProductAdversary prod;
        ConstantAdversary ones(Vec(static_cast<std::size_t>(n), 1.0));
        check(li, prod, "product");
        check(li, ones, "constant(1..1) linf");
      }
    }
  }
  // Every oblivious sign sequence for small horizons.
  for (std::int64_t t = 1; t <= 12; ++t) {
    for (std::int64_t k = 1; k <= std::min<std::int64_t>(t, 4); ++k) {
      GameConfig c{t, k, 1, Norm::L2, 0};
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
        std::vector<double> w(static_cast<std::size_t>(t));
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (mask >> i) & 1U ? 1.0 : -1.0;
        ReplayAdversary rep(w);
        check(c, rep, "exhaustive_sign");
      }
    }
  }

  // Half-split at K = 2 against all of {-1, +1}^T.
  json half = json::object();
  bool half_ok = true;
  for (std::int64_t t = 2; t <= 16; ++t) {
    const ResultRow row = run_exhaustive_sign({"halfsplit"}, {t, 2, 1, Norm::L2, 0});
    const double cap = static_cast<double>((t + 1) / 2);
    half[std::to_string(t)] = row.regret;
    if (!(row.regret <= cap + 1e-9)) half_ok = false;
  }
  return result(ok && half_ok,
                {{"minibatch_runs", runs}, {"minibatch_max_regret_over_bound", max_ratio},
                 {"minibatch_worst_case", where}, {"halfsplit_max_regret_by_T", half}},
                {{"minibatch", "regret <= 2 ceil(T/K) sqrt(K) (n-scaled on Linf)"},
                 {"halfsplit", "max regret <= ceil(T/2)"}},
                1e-9);
}

CheckResult c7_oracle_sandwich(const VerifyOptions& o) {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string worst_case;
  double min_gap = std::numeric_limits<double>::infinity();  // distance to the nearer bound
  for (int t = 1; t <= 10; ++t) {
    for (int k = 1; k <= t; ++k) {
      auto r = oracle::exact_minimax_1d({t, k, 41, 0.0, 2});
      r.lower = t * a_ref(o, k, 0.0);
      const double gap = std::min(r.value - (r.lower - r.slack), r.upper + r.slack - r.value);
      if (!r.within_bounds()) ok = false;
      if (gap < min_gap) {
        min_gap = gap;
        worst_case = "T=" + std::to_string(t) + " K=" + std::to_string(k);
      }
    }
  }
  const auto p42 = oracle::exact_minimax_1d({4, 2, 41, 0.0, 2});
  const auto p22 = oracle::exact_minimax_1d({2, 2, 41, 0.0, 2});
  const bool points = std::abs(p42.value - 2.0) <= p42.slack && std::abs(p22.value - 1.0) <= p22.slack;

  double bias_err = 0.0;
  double bias_floor = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= 6; ++t) {
    for (int k = 1; k <= t; ++k) {
      for (double z : {1.0, -1.0, 2.0, -2.0}) {
        const double bias = z * t;
        bias_err = std::max(bias_err, std::abs(oracle::exact_minimax_1d({t, k, 41, bias, 2}).value - std::abs(bias)));
      }
      for (double bias : {0.0, 0.5, -0.5}) {
        bias_floor = std::min(bias_floor, oracle::exact_minimax_1d({t, k, 41, bias, 2}).value - std::abs(bias));
      }
    }
  }
  const double secs = seconds_since(t0);
  ok = ok && points && bias_err <= 1e-12 && bias_floor >= -1e-12 && secs < 600.0;
  return result(ok,
                {{"min_distance_inside_sandwich", min_gap}, {"tightest_case", worst_case},
                 {"T4_K2", p42.value}, {"T2_K2", p22.value}, {"max_abs_bias_error", bias_err},
                 {"min_value_minus_abs_bias", bias_floor}, {"seconds", secs}},
                {{"sandwich", "T a_K(0) - slack <= value <= ceil(T/K) R(K) + slack"}, {"T4_K2", 2.0},
                 {"T2_K2", 1.0}, {"max_abs_bias_error", 0.0}, {"seconds_max", 600}},
                2.0 * 10 / 40.0, "x_grid = 41, slack = 2T/(x_grid - 1)");
}

CheckResult c8_unequal_blocks(const VerifyOptions&) {
  const auto policy = fugal::cached_policy(3, 2000);
  const double target = 1.0 - std::numbers::sqrt2 / 2.0;
  const double frac = policy->at("").length_plus;
  const double frac_minus = policy->at("").length_minus;
  const std::int64_t t = 10000;
  const auto expected_round = static_cast<std::int64_t>(std::ceil(target * static_cast<double>(t)));
  json rounds = json::object();
  bool rounds_ok = true;
  for (double sign : {1.0, -1.0}) {
    FugalPlayer p(policy);
    ConstantAdversary adv({sign});
    const Trajectory tr = play_game(p, adv, {t, 3, 1, Norm::L2, 0});
    std::int64_t first = -1;
    for (std::size_t i = 1; i < tr.rounds.size(); ++i) {
      if (tr.rounds[i].moving) {
        first = static_cast<std::int64_t>(i) + 1;
        break;
      }
    }
    rounds[sign > 0 ? "plus" : "minus"] = first;
    if (first < 0 || std::abs(first - expected_round) > 2) rounds_ok = false;
  }
  const bool ok = std::abs(frac - target) <= 1e-3 && std::abs(frac_minus - target) <= 1e-3 && rounds_ok;
  return result(ok, {{"first_block_fraction_plus", frac}, {"first_block_fraction_minus", frac_minus},
                     {"first_switch_round", rounds}},
                {{"first_block_fraction", target}, {"first_switch_round", expected_round}}, 1e-3,
                "policy at N=2000; switch-round tolerance 2 rounds at T=10^4");
}

CheckResult c9_closed_form_R(const VerifyOptions&) {
  json cmp = json::object();
  bool ok = true;
  for (int k = 1; k <= 8; ++k) {
    const auto r = oracle::exact_minimax_1d({k, k, 41, 0.0, 2});
    const double closed = oracle::unconstrained_R_closed_form(k);
    cmp[std::to_string(k)] = {{"oracle", r.value}, {"closed_form", closed}, {"slack", r.slack}};
    if (std::abs(r.value - closed) > r.slack) ok = false;
  }
  bool pairs = true;
  for (int k = 1; k <= 15; k += 2) {
    if (oracle::unconstrained_R_closed_form(k) != oracle::unconstrained_R_closed_form(k + 1)) pairs = false;
  }
  const double r3 = oracle::unconstrained_R_closed_form(3) / std::sqrt(3.0);
  const double r3_err = std::abs(r3 - std::sqrt(3.0) / 2.0);
  return result(ok && pairs && r3_err <= 1e-12,
                {{"K_eq_T", cmp}, {"odd_even_pairs_equal", pairs}, {"R3_over_sqrt3", r3}},
                {{"K_eq_T", "|oracle - R(K)| <= slack"}, {"R3_over_sqrt3", std::sqrt(3.0) / 2.0}}, 1e-12);
}

CheckResult c10_linf_and_tk(const VerifyOptions&) {
  Worst worst;
  for (std::int64_t n : {2, 3}) {
    const auto players = lower_bound_players(static_cast<std::size_t>(n), Norm::Linf, 50);
    for (std::int64_t k : {4, 16}) {
      for (const auto& pc : players) {
        GameConfig c{1000, k, n, Norm::Linf, pc.seed};
        auto player = pc.make();
        ProductAdversary adv;
        const Trajectory tr = play_game(*player, adv, c);
        worst.record(tr.regret, static_cast<double>(n) * 1000.0 / (2.0 * std::sqrt(static_cast<double>(k))),
                     0.0, pc.label, c);
      }
    }
  }
  std::int64_t failures = 0, pairs = 0;
  for (std::int64_t t = 1; t <= 1000; ++t) {
    for (std::int64_t k = 1; k <= t; ++k) {
      ++pairs;
      if (!oracle::tk_inequality_check(t, k)) ++failures;
    }
  }
  json m = worst.measured();
  m["tk_pairs_checked"] = pairs;
  m["tk_failures"] = failures;
  return result(worst.ok && failures == 0, m, {{"regret", ">= n T/(2 sqrt(K))"}, {"tk_failures", 0}}, 0.0);
}

// ---------------------------------------------------------------------------
// Module invariants

CheckResult game_regret_consistency(const VerifyOptions&) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double err = 0.0;
  bool flags = true;
  for (int rep = 0; rep < 200; ++rep) {
    const std::int64_t n = 1 + rep % 3;
    GameConfig c{40, 5, n, rep % 2 ? Norm::L2 : Norm::Linf, static_cast<std::uint64_t>(rep)};
    RandomSwitchPlayer p;
    std::vector<double> w;
    ConstantAdversary adv(sample_ball(rng, static_cast<std::size_t>(n), c.norm));
    const Trajectory tr = play_game(p, adv, c);
    std::vector<Vec> xs, ws;
    for (const auto& r : tr.rounds) {
      xs.push_back(r.action);
      ws.push_back(r.loss);
    }
    const Trajectory re = make_trajectory(c, xs, ws);
    err = std::max(err, std::abs(re.regret - tr.regret));
    std::int64_t moving = 0;
    for (const auto& r : tr.rounds) moving += r.moving ? 1 : 0;
    if (count_switches(xs) != tr.switch_count || moving - 1 != tr.switch_count) flags = false;
  }
  return result(err <= 1e-12 && flags, {{"max_regret_mismatch", err}, {"switch_flags_consistent", flags}},
                {{"max_regret_mismatch", "<= 1e-12"}}, 1e-12);
}

CheckResult players_switch_budget(const VerifyOptions&) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::int64_t games = 0, worst_excess = -1;
  std::string offender;
  auto run = [&](Player& p, const GameConfig& c) {
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> w(static_cast<std::size_t>(c.horizon));
      for (double& v : w) v = rep % 2 ? (u(rng) < 0 ? -1.0 : 1.0) : u(rng);
      ReplayAdversary adv(w);
      GameConfig cc = c;
      cc.seed = static_cast<std::uint64_t>(rep);
      try {
        const Trajectory tr = play_game(p, adv, cc);
        worst_excess = std::max(worst_excess, tr.switch_count - (c.budget - 1));
      } catch (const BudgetViolation&) {
        worst_excess = std::max<std::int64_t>(worst_excess, 1);
        offender = p.name();
      }
      ++games;
    }
  };
  for (std::int64_t k : {1, 2, 3, 5, 10}) {
    GameConfig c{60, k, 1, Norm::L2, 0};
    MinibatchPlayer mb;
    ConstantPlayer cp;
    RandomSwitchPlayer rs;
    run(mb, c);
    run(cp, c);
    run(rs, c);
    if (k <= 5) {
      FugalPlayer fp(fugal::cached_policy(static_cast<int>(k), 1000));
      run(fp, c);
    }
  }
  HalfSplitPlayer hs;
  run(hs, {61, 2, 1, Norm::L2, 0});
  return result(worst_excess <= 0,
                {{"games", games}, {"max_switches_minus_budget_plus_one", worst_excess}, {"offender", offender}},
                {{"max_switches_minus_budget_plus_one", "<= 0"}}, 0.0);
}

CheckResult fugal_evenness_and_policy(const VerifyOptions& o) {
  const auto sol = fugal::solve(5, 1000, op_options(o));
  double odd = 0.0;
  for (const auto& g : sol.u) {
    for (int j = 0; j <= g.resolution(); ++j) {
      odd = std::max(odd, std::abs(g.value(j) - g.value(g.resolution() - j)));
    }
  }
  double path_err = 0.0;
  double max_x = 0.0;
  for (int mask = 0; mask < (1 << 5); ++mask) {
    std::string signs;
    for (int i = 0; i < 5; ++i) signs.push_back((mask >> i) & 1 ? '+' : '-');
    path_err = std::max(path_err, std::abs(sol.policy.path_length(signs) - 1.0));
  }
  for (const auto& [_, node] : sol.policy.nodes()) max_x = std::max(max_x, std::abs(node.action));
  double a0 = 0.0;
  for (int k = 1; k <= 5; ++k) {
    if (k >= 2) a0 = std::max(a0, std::abs(fugal::quadratic_bound(k, 0.0) - 1.0 / std::sqrt(2.0 * k)));
  }
  const bool ok = odd <= 1e-6 && path_err <= 1e-6 && max_x <= 1.0 && a0 <= 1e-15;
  return result(ok, {{"max_asymmetry", odd}, {"max_path_length_error", path_err}, {"max_abs_action", max_x},
                     {"a_k0_error", a0}},
                {{"max_asymmetry", "<= 1e-6"}, {"max_path_length_error", "<= 1e-6"}}, 1e-6,
                "K = 5, N = 1000");
}

CheckResult fugal_k2_matches_halfsplit(const VerifyOptions&) {
  const auto policy = fugal::cached_policy(2, 2000);
  int mismatches = 0, cases = 0;
  for (std::int64_t t = 2; t <= 41; ++t) {
    for (double sign : {1.0, -1.0}) {
      GameConfig c{t, 2, 1, Norm::L2, 0};
      FugalPlayer fp(policy);
      HalfSplitPlayer hs;
      ConstantAdversary a1({sign}), a2({sign});
      const auto t1 = play_game(fp, a1, c);
      const auto t2 = play_game(hs, a2, c);
      ++cases;
      for (std::size_t i = 0; i < t1.rounds.size(); ++i) {
        if (t1.rounds[i].action != t2.rounds[i].action) {
          ++mismatches;
          break;
        }
      }
    }
  }
  return result(mismatches == 0, {{"cases", cases}, {"mismatches", mismatches}}, {{"mismatches", 0}}, 0.0,
                "constant +-1 losses, T = 2..41");
}

CheckResult oracle_structure(const VerifyOptions&) {
  double t_violation = 0.0, k_violation = 0.0, grid_violation = 0.0, alphabet_gap = 0.0;
  for (int t = 1; t <= 8; ++t) {
    for (int k = 1; k <= t; ++k) {
      const double v = oracle::exact_minimax_1d({t, k, 41, 0.0, 2}).value;
      if (t > 1 && k <= t - 1) {
        t_violation = std::max(t_violation, oracle::exact_minimax_1d({t - 1, k, 41, 0.0, 2}).value - v);
      }
      if (k > 1) k_violation = std::max(k_violation, v - oracle::exact_minimax_1d({t, k - 1, 41, 0.0, 2}).value);
      const double v21 = oracle::exact_minimax_1d({t, k, 21, 0.0, 2}).value;
      const double v81 = oracle::exact_minimax_1d({t, k, 81, 0.0, 2}).value;
      grid_violation = std::max({grid_violation, v - v21, v81 - v});
      if (t <= 3) {
        alphabet_gap = std::max(alphabet_gap, oracle::exact_minimax_1d({t, k, 41, 0.0, 11}).value - v);
      }
    }
  }
  const bool ok = t_violation <= 1e-12 && k_violation <= 1e-12 && grid_violation <= 1e-12 && alphabet_gap <= 1e-12;
  return result(ok,
                {{"max_decrease_in_T", t_violation}, {"max_increase_in_K", k_violation},
                 {"max_increase_on_refinement", grid_violation}, {"eleven_point_gain", alphabet_gap}},
                {{"all", "<= 1e-12"}}, 1e-12, "T <= 8; alphabet scan at T <= 3");
}

CheckResult lab_rows_and_reproducibility(const VerifyOptions&) {
  ExperimentSpec spec;
  spec.horizons = {50, 200};
  spec.budgets = {1, 4};
  spec.dimensions = {1};
  spec.player = {"random_switch"};
  spec.adversary = {"stopping"};
  spec.repetitions = 5;
  spec.seed = 3;
  const auto rows = run_simulate(spec);
  std::ostringstream a, b;
  write_rows_csv(a, rows);
  write_rows_csv(b, run_simulate(spec));
  bool flags = true;
  for (const auto& r : rows) {
    const bool within = r.bound_lower <= r.regret && r.regret <= r.bound_upper;
    const double norm = r.regret * std::sqrt(static_cast<double>(r.budget)) / static_cast<double>(r.horizon);
    if (within != r.within_bounds || std::abs(norm - r.normalized) > 1e-12) flags = false;
  }
  const bool same = a.str() == b.str();
  return result(same && flags, {{"rows", rows.size()}, {"byte_identical", same}, {"flags_consistent", flags}},
                {{"byte_identical", true}, {"flags_consistent", true}}, 0.0);
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> registry = {
      {"c1_fugal_constants", {"acceptance", "fugal"}, c1_fugal_constants},
      {"c2_quadratic_sandwich", {"acceptance", "fugal"}, c2_quadratic_sandwich},
      {"c3_operator_closed_form", {"acceptance", "fugal"}, c3_operator_closed_form},
      {"c4_orthogonal_lower_bound", {"acceptance", "adversaries"}, c4_orthogonal},
      {"c5_stopping_lower_bound", {"acceptance", "adversaries"}, c5_stopping},
      {"c6_upper_bounds", {"acceptance", "players"}, c6_upper_bounds},
      {"c7_oracle_sandwich", {"acceptance", "oracle"}, c7_oracle_sandwich},
      {"c8_unequal_blocks", {"acceptance", "fugal", "players"}, c8_unequal_blocks},
      {"c9_closed_form_R", {"acceptance", "oracle"}, c9_closed_form_R},
      {"c10_linf_and_tk", {"acceptance", "adversaries", "oracle"}, c10_linf_and_tk},
      {"game_regret_consistency", {"invariant", "game"}, game_regret_consistency},
      {"players_switch_budget", {"invariant", "players"}, players_switch_budget},
      {"fugal_evenness_and_policy", {"invariant", "fugal"}, fugal_evenness_and_policy},
      {"fugal_k2_matches_halfsplit", {"invariant", "fugal", "players"}, fugal_k2_matches_halfsplit},
      {"oracle_structure", {"invariant", "oracle"}, oracle_structure},
      {"lab_rows_and_reproducibility", {"invariant", "lab"}, lab_rows_and_reproducibility},
  };
  return registry;
}

bool selected(const Check& check, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  for (const auto& want : only) {
    if (want == check.name) return true;
    if (std::find(check.tags.begin(), check.tags.end(), want) != check.tags.end()) return true;
  }
  return false;
}

std::vector<CheckResult> run_verify(const VerifyOptions& options, std::ostream* progress) {
  std::vector<CheckResult> out;
  for (const auto& check : check_registry()) {
    if (!selected(check, options.only)) continue;
    const auto t0 = Clock::now();
    CheckResult r;
    try {
      r = check.run(options);
    } catch (const std::exception& e) {
      r = result(false, nullptr, nullptr, 0.0, std::string("exception: ") + e.what());
    }
    r.name = check.name;
    r.tags = check.tags;
    r.seconds = seconds_since(t0);
    if (progress) {
      char line[160];
      std::snprintf(line, sizeof line, "[%s] %-32s %8.2fs", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
      *progress << line;
      if (!r.passed) *progress << "  measured=" << r.measured.dump() << (r.detail.empty() ? "" : "  " + r.detail);
      *progress << '\n';
    }
    out.push_back(std::move(r));
  }
  return out;
}

json report_json(const std::vector<CheckResult>& results) {
  json checks = json::array();
  int passed = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    checks.push_back({{"check_name", r.name},
                      {"status", r.passed ? "pass" : "fail"},
                      {"measured", r.measured},
                      {"expected", r.expected},
                      {"tolerance", r.tolerance},
                      {"tags", r.tags},
                      {"seconds", r.seconds},
                      {"detail", r.detail}});
  }
  const int total = static_cast<int>(results.size());
  return {{"checks", checks}, {"summary", {{"passed", passed}, {"failed", total - passed}, {"total", total}}}};
}

}  // namespace switchlab::lab
