#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "switchlab/adversaries.hpp"
#include "switchlab/game.hpp"
#include "switchlab/players.hpp"

using namespace switchlab;

namespace {

class ScriptedPlayer final : public Player {
 public:
  explicit ScriptedPlayer(std::vector<Vec> actions) : actions_(std::move(actions)) {}
  void reset(const GameConfig&) override { t_ = 0; }
  Vec decide() override { return actions_[t_]; }
  void observe(std::span<const double>, std::span<const double>) override { ++t_; }
  std::string name() const override { return "scripted"; }

 private:
  std::vector<Vec> actions_;
  std::size_t t_ = 0;
};

}  // namespace

TEST_CASE("count_switches") {
  CHECK(count_switches(std::vector<Vec>{{0.3}, {0.3}, {0.3}}) == 0);
  CHECK(count_switches(std::vector<Vec>{{0.1}, {-0.2}, {-0.2}, {0.3}}) == 2);
  CHECK(count_switches(std::vector<Vec>{{0.5, 0.5}}) == 0);
  CHECK(count_switches(std::vector<Vec>{{1.0, 0.0}, {1.0, 1e-300}}) == 1);
  CHECK_THROWS_AS(count_switches(std::vector<Vec>{}), ArgumentError);
  // Signed zeros compare equal, so re-emitting -0.0 after 0.0 is not a move.
  CHECK(count_switches(std::vector<Vec>{{0.0}, {-0.0}}) == 0);
}

TEST_CASE("dual_norm against the direct maximizer") {
  CHECK(dual_norm(Vec{3.0, 4.0}, Norm::L2) == doctest::Approx(5.0));
  CHECK(dual_norm(Vec{1.0, -2.0}, Norm::Linf) == doctest::Approx(3.0));
  CHECK(dual_norm(Vec{0.0, 0.0}, Norm::L2) == 0.0);
  CHECK(dual_norm(Vec{0.0, 0.0}, Norm::Linf) == 0.0);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 100; ++rep) {
    Vec w(4);
    for (double& v : w) v = g(rng);
    // sup over the unit L2 ball is attained at w/|w|; over the box at sign(w).
    const double r = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]);
    double l2 = 0.0, box = 0.0;
    for (double v : w) {
      l2 += v * (v / r);
      box += v * (v >= 0 ? 1.0 : -1.0);
    }
    CHECK(dual_norm(w, Norm::L2) == doctest::Approx(l2).epsilon(1e-14));
    CHECK(dual_norm(w, Norm::Linf) == doctest::Approx(box).epsilon(1e-14));
  }
}

TEST_CASE("linear_regret examples") {
  const GameConfig one{1, 1, 1, Norm::L2, 0};
  CHECK(linear_regret(make_trajectory(one, std::vector<Vec>{{0.0}}, std::vector<Vec>{{1.0}})) == 1.0);

  const GameConfig half{4, 2, 1, Norm::L2, 0};
  const auto t = make_trajectory(half, std::vector<Vec>{{0.0}, {0.0}, {-1.0}, {-1.0}},
                                 std::vector<Vec>{{1.0}, {1.0}, {1.0}, {1.0}});
  CHECK(linear_regret(t) == 2.0);

  const GameConfig two_d{2, 1, 2, Norm::L2, 0};
  const auto u = make_trajectory(two_d, std::vector<Vec>{{1.0, 0.0}, {1.0, 0.0}},
                                 std::vector<Vec>{{0.0, 1.0}, {0.0, 1.0}});
  CHECK(linear_regret(u) == 2.0);

  const auto bad = make_trajectory(half, std::vector<Vec>{{0.0}, {0.5}, {-1.0}, {-1.0}},
                                   std::vector<Vec>{{1.0}, {1.0}, {1.0}, {1.0}});
  CHECK_FALSE(bad.feasible);
  CHECK(std::isnan(bad.regret));
  CHECK_THROWS_AS(linear_regret(bad), BudgetViolation);
}

TEST_CASE("play_game examples") {
  SUBCASE("constant 0 vs sign adversary") {
    ConstantPlayer p;
    SignAdversary a(SignAdversary::Variant::Action);
    CHECK(play_game(p, a, {3, 2, 1, Norm::L2, 0}).regret == 3.0);
  }
  SUBCASE("half-split vs all ones") {
    HalfSplitPlayer p;
    ConstantAdversary a({1.0});
    const auto t = play_game(p, a, {4, 2, 1, Norm::L2, 0});
    CHECK(t.regret == 2.0);
    CHECK(t.switch_count == 1);
    CHECK(t.block_lengths() == std::vector<std::int64_t>{2, 2});
  }
  SUBCASE("zero adversary") {
    for (auto n : {1, 3}) {
      MinibatchPlayer p;
      ConstantAdversary a;
      CHECK(play_game(p, a, {50, 5, n, Norm::L2, 0}).regret == 0.0);
    }
  }
}

TEST_CASE("play_game reports the offending round") {
  ScriptedPlayer p({{0.0}, {0.5}, {0.5}, {-0.5}, {0.0}});
  ConstantAdversary a({1.0});
  try {
    play_game(p, a, {5, 2, 1, Norm::L2, 0});
    FAIL("expected a budget violation");
  } catch (const BudgetViolation& e) {
    CHECK(e.round() == 4);
  }
}

TEST_CASE("config and ball validation") {
  ConstantPlayer p;
  ConstantAdversary a;
  CHECK_THROWS_AS(play_game(p, a, {3, 4, 1, Norm::L2, 0}), ArgumentError);
  CHECK_THROWS_AS(play_game(p, a, {0, 1, 1, Norm::L2, 0}), ArgumentError);
  CHECK_THROWS_AS(play_game(p, a, {3, 1, 0, Norm::L2, 0}), ArgumentError);

  ScriptedPlayer outside({{0.8, 0.8}});
  ConstantAdversary zero2;
  CHECK_THROWS_AS(play_game(outside, zero2, {1, 1, 2, Norm::L2, 0}), ArgumentError);
  ScriptedPlayer box({{0.8, 0.8}});
  CHECK_NOTHROW(play_game(box, zero2, {1, 1, 2, Norm::Linf, 0}));

  ConstantPlayer origin;
  ConstantAdversary big({1.0, 1.0});
  CHECK_THROWS_AS(play_game(origin, big, {1, 1, 2, Norm::L2, 0}), ArgumentError);
}

TEST_CASE("stored regret matches a recomputation and switch flags") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const std::int64_t n = 1 + rep % 4;
    const Norm norm = rep % 2 ? Norm::L2 : Norm::Linf;
    GameConfig c{30, 6, n, norm, static_cast<std::uint64_t>(rep)};
    RandomSwitchPlayer p;
    ConstantAdversary a(sample_ball(rng, static_cast<std::size_t>(n), norm));
    const auto t = play_game(p, a, c);
    std::vector<Vec> xs, ws;
    double linear = 0.0;
    for (const auto& r : t.rounds) {
      xs.push_back(r.action);
      ws.push_back(r.loss);
      for (std::size_t j = 0; j < r.action.size(); ++j) linear += r.action[j] * r.loss[j];
    }
    CHECK(t.regret == doctest::Approx(linear + dual_norm(t.cumulative_loss, norm)).epsilon(1e-12));
    CHECK(count_switches(xs) == t.switch_count);
    std::int64_t moving = 0;
    for (const auto& r : t.rounds) moving += r.moving;
    CHECK(moving - 1 == t.switch_count);
  }
}

TEST_CASE("padding with zero-loss rounds leaves regret unchanged") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Vec> xs, ws;
    double x = 0.0;
    for (int t = 0; t < 20; ++t) {
      if (t % 7 == 3) x = u(rng);
      xs.push_back({x});
      ws.push_back({u(rng)});
    }
    const GameConfig c{20, 4, 1, Norm::L2, 0};
    const double base = linear_regret(make_trajectory(c, xs, ws));
    for (int extra = 0; extra < 10; ++extra) {
      xs.push_back(xs.back());
      ws.push_back({0.0});
    }
    const double padded = linear_regret(make_trajectory({30, 4, 1, Norm::L2, 0}, xs, ws));
    CHECK(padded == doctest::Approx(base).epsilon(1e-14));
  }
}

TEST_CASE("norm parsing") {
  CHECK(parse_norm("l2") == Norm::L2);
  CHECK(parse_norm("inf") == Norm::Linf);
  CHECK(to_string(Norm::Linf) == "linf");
  CHECK_THROWS_AS(parse_norm("l1"), ArgumentError);
}
