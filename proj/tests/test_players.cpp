#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "switchlab/adversaries.hpp"
#include "switchlab/players.hpp"

using namespace switchlab;

namespace {

// Adaptive random adversary: random loss in the ball, biased towards the
// player's action every few rounds.
class RandomAdversary final : public Adversary {
 public:
  explicit RandomAdversary(std::uint64_t seed) : rng_(seed) {}
  void reset(const GameConfig& c) override { config_ = c; }
  Vec respond(std::span<const double> x, bool) override {
    Vec w = sample_ball(rng_, x.size(), config_.norm);
    if (std::uniform_int_distribution<int>(0, 3)(rng_) == 0) {
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = x[j] >= 0.0 ? 1.0 : -1.0;
      if (config_.norm == Norm::L2) {
        for (double& v : w) v /= std::sqrt(static_cast<double>(w.size()));
      }
    }
    return w;
  }
  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
  GameConfig config_;
};

std::vector<double> actions_1d(const Trajectory& t) {
  std::vector<double> out;
  for (const auto& r : t.rounds) out.push_back(r.action[0]);
  return out;
}

std::int64_t first_switch(const Trajectory& t) {
  for (std::size_t i = 1; i < t.rounds.size(); ++i) {
    if (t.rounds[i].moving) return static_cast<std::int64_t>(i) + 1;
  }
  return -1;
}

}  // namespace

TEST_CASE("minibatch examples") {
  SUBCASE("one OGD step on average loss 1") {
    MinibatchPlayer p(1.0);
    ReplayAdversary a({1.0, 1.0, 0.0, 0.0});
    const auto t = play_game(p, a, {4, 2, 1, Norm::L2, 0});
    CHECK(actions_1d(t) == std::vector<double>{0.0, 0.0, -1.0, -1.0});
  }
  SUBCASE("zero losses") {
    MinibatchPlayer p;
    ConstantAdversary a;
    const auto t = play_game(p, a, {40, 8, 1, Norm::L2, 0});
    CHECK(t.switch_count == 0);
    for (double x : actions_1d(t)) CHECK(x == 0.0);
  }
  SUBCASE("T = K is plain OGD") {
    MinibatchPlayer p(0.5);
    ReplayAdversary a({1.0, -1.0, 1.0, 1.0, 1.0});
    const auto t = play_game(p, a, {5, 5, 1, Norm::L2, 0});
    CHECK(p.epoch_length() == 1);
    CHECK(actions_1d(t) == std::vector<double>{0.0, -0.5, 0.0, -0.5, -1.0});
  }
  CHECK_THROWS_AS(MinibatchPlayer(0.0), ArgumentError);
}

TEST_CASE("minibatch regret bound against random adversaries") {
  for (auto norm : {Norm::L2, Norm::Linf}) {
    for (std::int64_t n : {1, 2, 4}) {
      for (std::int64_t k : {1, 3, 10}) {
        const GameConfig c{200, k, n, norm, 0};
        for (std::uint64_t s = 0; s < 30; ++s) {
          MinibatchPlayer p;
          RandomAdversary a(s);
          CHECK(play_game(p, a, c).regret <= MinibatchPlayer::regret_bound(c) + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("half-split examples") {
  HalfSplitPlayer p;
  {
    ConstantAdversary a({1.0});
    CHECK(actions_1d(play_game(p, a, {4, 2, 1, Norm::L2, 0})) == std::vector<double>{0, 0, -1, -1});
  }
  {
    ReplayAdversary a({1.0, -1.0, 1.0, 1.0});
    const auto t = play_game(p, a, {4, 2, 1, Norm::L2, 0});
    CHECK(actions_1d(t) == std::vector<double>{0, 0, 0, 0});
    CHECK(t.switch_count == 0);
  }
  {
    ReplayAdversary a({-1.0, 1.0, 1.0, 1.0, 1.0});
    CHECK(actions_1d(play_game(p, a, {5, 2, 1, Norm::L2, 0})) == std::vector<double>{0, 0, 0, -1, -1});
  }
  ConstantAdversary a({1.0});
  CHECK_THROWS_AS(play_game(p, a, {4, 3, 1, Norm::L2, 0}), UnsupportedConfig);
  ConstantAdversary a2({1.0, 0.0});
  CHECK_THROWS_AS(play_game(p, a2, {4, 2, 2, Norm::L2, 0}), UnsupportedConfig);
}

TEST_CASE("half-split exhaustive worst case is ceil(T/2)") {
  for (std::int64_t t = 2; t <= 12; ++t) {
    double worst = 0.0;
    for (std::uint64_t mask = 0; mask < (1ULL << t); ++mask) {
      std::vector<double> w(static_cast<std::size_t>(t));
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = (mask >> i) & 1U ? 1.0 : -1.0;
      HalfSplitPlayer p;
      ReplayAdversary a(w);
      worst = std::max(worst, play_game(p, a, {t, 2, 1, Norm::L2, 0}).regret);
    }
    CHECK(worst == doctest::Approx(static_cast<double>((t + 1) / 2)).epsilon(1e-12));
  }
}

TEST_CASE("fugal player") {
  SUBCASE("zero adversary never switches") {
    FugalPlayer p(fugal::cached_policy(3, 1000));
    ConstantAdversary a;
    CHECK(play_game(p, a, {500, 3, 1, Norm::L2, 0}).switch_count == 0);
  }
  SUBCASE("K = 3 first switch ratio") {
    const auto policy = fugal::cached_policy(3, 2000);
    const double target = 1.0 - std::sqrt(2.0) / 2.0;
    for (std::int64_t t : {1000, 10000}) {
      FugalPlayer p(policy);
      ConstantAdversary a({1.0});
      const auto tr = play_game(p, a, {t, 3, 1, Norm::L2, 0});
      const double ratio = static_cast<double>(first_switch(tr)) / static_cast<double>(t);
      CHECK(std::abs(ratio - target) <= 2.0 / static_cast<double>(t));
      CHECK(p.recorded_signs().substr(0, 1) == "+");
    }
  }
  SUBCASE("K = 2 reproduces half-split on constant paths") {
    const auto policy = fugal::cached_policy(2, 2000);
    for (std::int64_t t = 2; t <= 30; ++t) {
      for (double s : {1.0, -1.0}) {
        FugalPlayer f(policy);
        HalfSplitPlayer h;
        ConstantAdversary a({s}), b({s});
        CHECK(actions_1d(play_game(f, a, {t, 2, 1, Norm::L2, 0})) ==
              actions_1d(play_game(h, b, {t, 2, 1, Norm::L2, 0})));
      }
    }
  }
  SUBCASE("dependency errors") {
    ConstantAdversary a({1.0});
    FugalPlayer none(nullptr);
    CHECK_THROWS_AS(play_game(none, a, {10, 3, 1, Norm::L2, 0}), DependencyError);
    FugalPlayer wrong(fugal::cached_policy(2, 1000));
    CHECK_THROWS_AS(play_game(wrong, a, {10, 3, 1, Norm::L2, 0}), DependencyError);
  }
}

TEST_CASE("constant player") {
  ConstantPlayer origin;
  ConstantAdversary ones({1.0, -1.0});
  CHECK(play_game(origin, ones, {5, 1, 2, Norm::Linf, 0}).regret == 10.0);

  ConstantPlayer e1({1.0, 0.0});
  ConstantAdversary minus_e1({-1.0, 0.0});
  CHECK(play_game(e1, minus_e1, {7, 1, 2, Norm::L2, 0}).regret == 0.0);

  ConstantAdversary zero;
  CHECK(play_game(origin, zero, {7, 1, 3, Norm::L2, 0}).regret == 0.0);

  CHECK_THROWS_AS(ConstantPlayer({1.5}), ArgumentError);
  ConstantPlayer corner({0.9, 0.9});
  CHECK_THROWS_AS(play_game(corner, zero, {3, 1, 2, Norm::L2, 0}), ArgumentError);
  CHECK_THROWS_AS(play_game(corner, zero, {3, 1, 3, Norm::L2, 0}), ArgumentError);
}

TEST_CASE("random-switch player is seeded by the config") {
  RandomSwitchPlayer a, b;
  ConstantAdversary z1, z2;
  const auto t1 = play_game(a, z1, {100, 10, 2, Norm::L2, 42});
  const auto t2 = play_game(b, z2, {100, 10, 2, Norm::L2, 42});
  for (std::size_t i = 0; i < t1.rounds.size(); ++i) CHECK(t1.rounds[i].action == t2.rounds[i].action);
}

TEST_CASE("every player stays within the switch budget") {
  const auto check_player = [](Player& p, const GameConfig& base) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
      GameConfig c = base;
      c.seed = s;
      RandomAdversary a(s);
      const auto t = play_game(p, a, c);
      REQUIRE(t.switch_count <= c.budget - 1);
    }
  };
  for (std::int64_t k : {1, 2, 5}) {
    for (std::int64_t n : {1, 3}) {
      const GameConfig c{40, k, n, Norm::L2, 0};
      MinibatchPlayer mb;
      ConstantPlayer cp;
      RandomSwitchPlayer rs;
      check_player(mb, c);
      check_player(cp, c);
      check_player(rs, c);
    }
    FugalPlayer fp(fugal::cached_policy(static_cast<int>(k), 1000));
    check_player(fp, {40, k, 1, Norm::L2, 0});
  }
  HalfSplitPlayer hs;
  check_player(hs, {41, 2, 1, Norm::L2, 0});
}
