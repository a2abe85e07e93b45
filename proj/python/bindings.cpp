#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "switchlab/fugal.hpp"
#include "switchlab/game.hpp"
#include "switchlab/lab.hpp"
#include "switchlab/oracle.hpp"

namespace py = pybind11;
using namespace switchlab;

namespace {

lab::StrategySpec strategy(const std::string& id, const std::string& params_json) {
  return {id, params_json.empty() ? lab::json::object() : lab::json::parse(params_json)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "switchlab core bindings";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<UnsupportedConfig>(m, "UnsupportedConfig", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetViolation>(m, "BudgetViolation", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<DependencyError>(m, "DependencyError", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);

  m.def("count_switches", [](const std::vector<Vec>& actions) { return count_switches(actions); });
  m.def("dual_norm", [](const Vec& w, const std::string& norm) { return dual_norm(w, parse_norm(norm)); },
        py::arg("w"), py::arg("norm") = "l2");

  m.def("play", [](const std::string& player, const std::string& adversary, std::int64_t T, std::int64_t K,
                   std::int64_t n, const std::string& norm, std::uint64_t seed, const std::string& player_params,
                   const std::string& adversary_params) {
          const GameConfig c{T, K, n, parse_norm(norm), seed};
          auto p = lab::make_player(strategy(player, player_params), c);
          auto a = lab::make_adversary(strategy(adversary, adversary_params), c);
          const Trajectory t = play_game(*p, *a, c);
          py::dict out;
          out["regret"] = t.regret;
          out["switch_count"] = t.switch_count;
          out["cumulative_loss"] = t.cumulative_loss;
          std::vector<Vec> actions;
          for (const auto& r : t.rounds) actions.push_back(r.action);
          out["actions"] = actions;
          return out;
        },
        py::arg("player"), py::arg("adversary"), py::arg("T"), py::arg("K"), py::arg("n") = 1,
        py::arg("norm") = "l2", py::arg("seed") = 0, py::arg("player_params") = "",
        py::arg("adversary_params") = "");

  m.def("simulate_csv", [](const std::string& spec_json) {
    auto spec = lab::ExperimentSpec::from_json(lab::json::parse(spec_json));
    spec.mode = lab::Mode::Simulate;
    std::ostringstream out;
    lab::write_rows_csv(out, lab::run_simulate(spec));
    return out.str();
  });

  m.def("quadratic_bound", &fugal::quadratic_bound, py::arg("k"), py::arg("z"));
  m.def("fugal_quadratic_closed_form", &fugal::fugal_quadratic_closed_form, py::arg("i"), py::arg("z"));
  m.def("switch_targets", [](int i, double x) {
    const auto s = fugal::switch_targets(i, x);
    return py::make_tuple(s.plus, s.minus);
  });
  m.def("crossing_point", &fugal::crossing_point, py::arg("i"), py::arg("z"));
  m.def("one_block_regret", &fugal::one_block_regret, py::arg("T"), py::arg("Z"));
  m.def("extraspherical_value", &fugal::extraspherical_value, py::arg("T"), py::arg("Z"));
  m.def("u4_exact", [] {
    const auto e = fugal::u4_exact();
    return py::make_tuple(e.u4_zero, e.z0);
  });
  m.def("fugal_apply", [](const std::vector<double>& values) {
          const int n = static_cast<int>(values.size()) - 1;
          const auto g = fugal::fugal_apply(fugal::GridFunction(n, values));
          return std::vector<double>(g.values().begin(), g.values().end());
        },
        "Apply the fugal operator to samples on z_j = (2j - N)/N.");
  m.def("fugal_solve", [](int K, int N) {
          const auto sol = fugal::solve(K, N);
          std::vector<std::vector<double>> grids;
          for (const auto& g : sol.u) grids.emplace_back(g.values().begin(), g.values().end());
          return py::make_tuple(grids, sol.policy.to_json().dump());
        },
        py::arg("K"), py::arg("N") = 2000);

  m.def("exact_minimax_1d", [](int T, int K, int x_grid, double Z, int adversary_points) {
          const auto r = oracle::exact_minimax_1d({T, K, x_grid, Z, adversary_points});
          py::dict out;
          out["value"] = r.value;
          out["witness_first_action"] = r.witness_first_action;
          out["lower"] = r.lower;
          out["upper"] = r.upper;
          out["slack"] = r.slack;
          return out;
        },
        py::arg("T"), py::arg("K"), py::arg("x_grid") = 41, py::arg("Z") = 0.0,
        py::arg("adversary_points") = 2);
  m.def("unconstrained_R_closed_form", &oracle::unconstrained_R_closed_form, py::arg("K"));
  m.def("tk_inequality_check", &oracle::tk_inequality_check, py::arg("T"), py::arg("K"));
}
