// labctl: run switching-budget experiments, fugal solves, oracle sweeps and
// the verification suite from JSON experiment specs.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "switchlab/lab.hpp"

namespace {

using namespace switchlab;

// Opens `path` for writing, or returns stdout when it is empty.
std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw ArgumentError("cannot write '" + path + "'");
  return file;
}

int run(lab::Mode mode, const std::string& config, const std::string& out_path,
        const std::vector<std::string>& only) {
  lab::ExperimentSpec spec;
  if (!config.empty()) spec = lab::load_spec(config);
  spec.mode = mode;
  if (!out_path.empty()) spec.output = out_path;
  if (!only.empty()) spec.only = only;

  std::ofstream file;
  switch (mode) {
    case lab::Mode::Simulate: {
      const auto rows = lab::run_simulate(spec);
      auto& out = open_out(spec.output, file);
      if (spec.format == "json") {
        out << lab::rows_to_json(rows).dump(2) << '\n';
      } else {
        lab::write_rows_csv(out, rows);
      }
      return 0;
    }
    case lab::Mode::Fugal: {
      if (spec.grid_output.empty()) spec.grid_output = spec.output;
      lab::run_fugal(spec, std::cout);
      return 0;
    }
    case lab::Mode::Oracle: {
      const auto reports = lab::run_oracle(spec);
      auto& out = open_out(spec.output, file);
      oracle::write_csv_header(out);
      for (const auto& r : reports) oracle::write_csv_row(out, r);
      return 0;
    }
    case lab::Mode::Verify: {
      lab::VerifyOptions options;
      options.only = spec.only;
      options.fault_a_k = spec.fault_a_k;
      const auto results = lab::run_verify(options, &std::cerr);
      const auto report = lab::report_json(results);
      auto& out = open_out(spec.output, file);
      out << report.dump(2) << '\n';
      const int failed = report["summary"]["failed"].get<int>();
      std::cerr << report["summary"]["passed"].get<int>() << "/" << results.size() << " checks passed\n";
      return failed == 0 ? 0 : 1;
    }
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"switching-budget online learning lab"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::vector<std::string> only;
  std::optional<lab::Mode> mode;

  auto add = [&](const char* name, const char* help, lab::Mode m, bool config_required) {
    auto* sub = app.add_subcommand(name, help);
    auto* opt = sub->add_option("--config,-c", config, "experiment spec (JSON)");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out,-o", out_path, "output path (default: stdout or the spec's path)");
    sub->add_option("--only", only, "run only checks with this name or tag (verify)");
    sub->callback([&mode, m] { mode = m; });
  };
  add("simulate", "play a sweep of games and emit result rows", lab::Mode::Simulate, true);
  add("fugal", "solve the fugal recursion and dump grids and policy", lab::Mode::Fugal, true);
  add("oracle", "run the exact minimax oracle over a sweep", lab::Mode::Oracle, true);
  add("verify", "run the acceptance and invariant checks", lab::Mode::Verify, false);

  CLI11_PARSE(app, argc, argv);
  try {
    return run(*mode, config, out_path, only);
  } catch (const std::exception& e) {
    std::cerr << "labctl: " << e.what() << '\n';
    return 2;
  }
}
