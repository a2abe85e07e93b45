#include <algorithm>
#include <fstream>

#include "switchlab/adversaries.hpp"
#include "switchlab/lab.hpp"
#include "switchlab/players.hpp"

namespace switchlab::lab {

namespace {

template <class T>
std::vector<T> scalar_or_list(const json& v, const char* key) {
  try {
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

StrategySpec parse_strategy(const json& v, const char* key) {
  if (v.is_string()) return {v.get<std::string>(), json::object()};
  if (!v.is_object() || !v.contains("id")) {
    throw ArgumentError(std::string("config: '") + key + "' needs an id");
  }
  StrategySpec s{v.at("id").get<std::string>(), v.value("params", json::object())};
  return s;
}

void require_known(const json& obj, std::initializer_list<const char*> keys, const char* where) {
  for (const auto& [k, _] : obj.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* s) { return k == s; }) == keys.end()) {
      throw ArgumentError(std::string("config: unknown key '") + k + "' in " + where);
    }
  }
}

Vec vector_param(const json& params, const char* key, std::size_t dimension) {
  if (!params.contains(key)) return {};
  const json& v = params.at(key);
  if (v.is_number()) return Vec(dimension, v.get<double>());
  return v.get<Vec>();
}

}  // namespace

Mode parse_mode(std::string_view text) {
  if (text == "simulate") return Mode::Simulate;
  if (text == "fugal") return Mode::Fugal;
  if (text == "oracle") return Mode::Oracle;
  if (text == "verify") return Mode::Verify;
  throw ArgumentError("unknown mode '" + std::string(text) + "'");
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Simulate: return "simulate";
    case Mode::Fugal: return "fugal";
    case Mode::Oracle: return "oracle";
    case Mode::Verify: return "verify";
  }
  return "?";
}

ExperimentSpec ExperimentSpec::from_json(const json& doc) {
  if (!doc.is_object()) throw ArgumentError("config: top level must be an object");
  require_known(doc,
                {"mode", "sweep", "norm", "player", "adversary", "repetitions", "seed", "output",
                 "fugal", "oracle", "verify"},
                "config");
  ExperimentSpec s;
  try {
    if (doc.contains("mode")) s.mode = parse_mode(doc.at("mode").get<std::string>());
    if (doc.contains("sweep")) {
      const json& sw = doc.at("sweep");
      require_known(sw, {"T", "K", "n"}, "sweep");
      if (sw.contains("T")) s.horizons = scalar_or_list<std::int64_t>(sw.at("T"), "T");
      if (sw.contains("K")) s.budgets = scalar_or_list<std::int64_t>(sw.at("K"), "K");
      if (sw.contains("n")) s.dimensions = scalar_or_list<std::int64_t>(sw.at("n"), "n");
    }
    if (doc.contains("norm")) s.norm = parse_norm(doc.at("norm").get<std::string>());
    if (doc.contains("player")) s.player = parse_strategy(doc.at("player"), "player");
    if (doc.contains("adversary")) s.adversary = parse_strategy(doc.at("adversary"), "adversary");
    s.repetitions = doc.value("repetitions", s.repetitions);
    s.seed = doc.value("seed", s.seed);
    if (doc.contains("output")) {
      const json& out = doc.at("output");
      if (out.is_string()) {
        s.output = out.get<std::string>();
      } else {
        require_known(out, {"path", "format"}, "output");
        s.output = out.value("path", s.output);
        s.format = out.value("format", s.format);
      }
    }
    if (doc.contains("fugal")) {
      const json& f = doc.at("fugal");
      require_known(f, {"K", "N", "grid_csv", "policy_json"}, "fugal");
      s.fugal_budget = f.value("K", s.fugal_budget);
      s.resolution = f.value("N", s.resolution);
      s.grid_output = f.value("grid_csv", s.grid_output);
      s.policy_output = f.value("policy_json", s.policy_output);
    }
    if (doc.contains("oracle")) {
      const json& o = doc.at("oracle");
      require_known(o, {"x_grid", "Z", "adversary_points"}, "oracle");
      s.x_grid = o.value("x_grid", s.x_grid);
      if (o.contains("Z")) s.biases = scalar_or_list<double>(o.at("Z"), "Z");
      s.adversary_points = o.value("adversary_points", s.adversary_points);
    }
    if (doc.contains("verify")) {
      const json& v = doc.at("verify");
      require_known(v, {"only", "fault"}, "verify");
      if (v.contains("only")) s.only = scalar_or_list<std::string>(v.at("only"), "only");
      if (v.contains("fault")) s.fault_a_k = v.at("fault").value("a_k_offset", 0.0);
    }
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config: ") + e.what());
  }
  s.validate();
  return s;
}

void ExperimentSpec::validate() const {
  if (format != "csv" && format != "json") throw ArgumentError("config: format must be csv or json");
  if (repetitions < 1) throw ArgumentError("config: repetitions must be positive");
  switch (mode) {
    case Mode::Simulate: {
      if (horizons.empty() || budgets.empty() || dimensions.empty()) {
        throw ArgumentError("config: sweep lists must be nonempty");
      }
      for (auto t : horizons) {
        for (auto k : budgets) {
          for (auto n : dimensions) GameConfig{t, k, n, norm, seed}.validate();
        }
      }
      const auto p = player_ids();
      if (std::find(p.begin(), p.end(), player.id) == p.end()) {
        throw ArgumentError("config: unknown player '" + player.id + "'");
      }
      const auto a = adversary_ids();
      if (adversary.id != kExhaustiveSign && std::find(a.begin(), a.end(), adversary.id) == a.end()) {
        throw ArgumentError("config: unknown adversary '" + adversary.id + "'");
      }
      break;
    }
    case Mode::Fugal:
      if (fugal_budget < 1) throw ArgumentError("config: fugal.K must be positive");
      if (resolution < 100) throw ArgumentError("config: fugal.N must be at least 100");
      break;
    case Mode::Oracle:
      for (auto t : horizons) {
        for (auto k : budgets) {
          if (k < 1 || k > t) throw ArgumentError("config: oracle sweep needs 1 <= K <= T");
        }
      }
      break;
    case Mode::Verify:
      break;
  }
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ArgumentError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return ExperimentSpec::from_json(doc);
}

// ---------------------------------------------------------------------------

std::vector<std::string> player_ids() {
  return {"minibatch", "halfsplit", "fugal", "constant", "random_switch"};
}

std::vector<std::string> adversary_ids() {
  return {"orthogonal", "stopping", "sign_bias", "sign_action", "product", "constant", "zero"};
}

std::unique_ptr<Player> make_player(const StrategySpec& spec, const GameConfig& config) {
  const auto& p = spec.params;
  const auto n = static_cast<std::size_t>(config.dimension);
  if (spec.id == "minibatch") {
    std::optional<double> eta;
    if (p.contains("eta")) eta = p.at("eta").get<double>();
    return std::make_unique<MinibatchPlayer>(eta);
  }
  if (spec.id == "halfsplit") return std::make_unique<HalfSplitPlayer>();
  if (spec.id == "fugal") {
    const int resolution = p.value("N", 2000);
    if (config.budget > fugal::kMaxPolicyBudget) {
      throw DependencyError("fugal player: no policy table beyond K=" +
                            std::to_string(fugal::kMaxPolicyBudget));
    }
    return std::make_unique<FugalPlayer>(
        fugal::cached_policy(static_cast<int>(config.budget), resolution));
  }
  if (spec.id == "constant") return std::make_unique<ConstantPlayer>(vector_param(p, "point", n));
  if (spec.id == "random_switch") return std::make_unique<RandomSwitchPlayer>();
  throw ArgumentError("unknown player '" + spec.id + "'");
}

std::unique_ptr<Adversary> make_adversary(const StrategySpec& spec, const GameConfig& config) {
  const auto& p = spec.params;
  const auto n = static_cast<std::size_t>(config.dimension);
  if (spec.id == "orthogonal") return std::make_unique<OrthogonalAdversary>();
  if (spec.id == "stopping") return std::make_unique<StoppingAdversary>();
  if (spec.id == "sign_bias") {
    return std::make_unique<SignAdversary>(SignAdversary::Variant::Bias, p.value("Z", 0.0));
  }
  if (spec.id == "sign_action") return std::make_unique<SignAdversary>(SignAdversary::Variant::Action);
  if (spec.id == "product") return std::make_unique<ProductAdversary>();
  if (spec.id == "constant") {
    Vec w = vector_param(p, "w", n);
    if (w.empty()) {
      w.assign(n, 0.0);
      w[0] = 1.0;
    }
    return std::make_unique<ConstantAdversary>(std::move(w));
  }
  if (spec.id == "zero") return std::make_unique<ConstantAdversary>(Vec{}, "zero");
  throw ArgumentError("unknown adversary '" + spec.id + "'");
}

}  // namespace switchlab::lab
