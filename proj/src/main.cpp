#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "rlab/scenarios.hpp"

namespace {

using rlab::ScenarioResult;

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

unsigned long env_seed() {
  const char* s = std::getenv("REDUCTIONLAB_SEED");
  if (!s || !*s) {
    return 42;
  }
  try {
    return std::stoul(s);
  } catch (const std::exception&) {
    throw rlab::DomainError("REDUCTIONLAB_SEED is not an integer");
  }
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, std::string> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw rlab::DomainError("--param expects key=value, got: " + kv);
    }
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

void write_artifacts(const ScenarioResult& r, const std::string& out_dir, double wall_s,
                     unsigned long seed) {
  std::filesystem::create_directories(out_dir);
  const std::string csv_path = out_dir + "/" + r.name + ".csv";
  std::ofstream csv(csv_path);
  for (size_t i = 0; i < r.csv_header.size(); ++i) {
    csv << (i ? "," : "") << r.csv_header[i];
  }
  csv << "\n";
  for (const auto& row : r.csv_rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      csv << (i ? "," : "") << shortest(row[i]);
    }
    csv << "\n";
  }

  nlohmann::json report;
  report["scenario"] = r.name;
  report["anchor"] = r.anchor;
  report["seed"] = seed;
  report["wall_clock_s"] = wall_s;
  report["artifacts"] = {csv_path};
  report["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    report["checks"].push_back(
        {{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance},
         {"pass", c.pass}});
  }
  std::ofstream(out_dir + "/" + r.name + "_report.json") << report.dump(2) << "\n";
}

void print_checks(const ScenarioResult& r) {
  for (const auto& c : r.checks) {
    std::cout << "  " << (c.pass ? "PASS" : "FAIL") << "  " << r.name << ":" << c.name
              << "  residual=" << shortest(c.residual)
              << "  tolerance=" << shortest(c.tolerance) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reductionlab: reduction-procedure scenario runner"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list registered scenarios");

  auto* run_cmd = app.add_subcommand("run", "run one scenario and write artifacts");
  std::string scenario;
  std::vector<std::string> param_kvs;
  std::string out_dir = "out";
  std::string config_file;
  std::string fault;
  run_cmd->add_option("scenario", scenario, "scenario name");
  run_cmd->add_option("--param", param_kvs, "parameter override key=value");
  run_cmd->add_option("--out", out_dir, "artifact output directory");
  run_cmd->add_option("--config", config_file, "JSON config file");
  run_cmd->add_option("--inject", fault, "")->group("");  // test hook, hidden

  auto* verify_cmd = app.add_subcommand("verify", "run the full property suite");
  std::string filter;
  verify_cmd->add_option("--filter", filter, "restrict to scenarios matching a substring");
  verify_cmd->add_option("--inject", fault, "")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const unsigned long seed = env_seed();
    rlab::inject_fault(fault);

    if (list_cmd->parsed()) {
      for (const auto& info : rlab::list_scenarios()) {
        std::cout << info.name << " — " << info.anchor << "\n";
      }
      return 0;
    }

    if (run_cmd->parsed()) {
      std::map<std::string, std::string> params;
      if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) {
          throw rlab::DomainError("cannot open config file: " + config_file);
        }
        const auto cfg = nlohmann::json::parse(in);
        if (cfg.contains("scenario")) {
          scenario = cfg["scenario"].get<std::string>();
        }
        if (cfg.contains("output_dir")) {
          out_dir = cfg["output_dir"].get<std::string>();
        }
        if (cfg.contains("parameters")) {
          for (const auto& [key, value] : cfg["parameters"].items()) {
            params[key] = value.is_string() ? value.get<std::string>() : value.dump();
          }
        }
      }
      for (const auto& [key, value] : parse_params(param_kvs)) {
        params[key] = value;
      }
      if (scenario.empty()) {
        std::cerr << "error: no scenario given\n";
        return 2;
      }
      const auto t0 = std::chrono::steady_clock::now();
      const ScenarioResult r = rlab::run_scenario(scenario, params, seed);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_artifacts(r, out_dir, wall, seed);
      print_checks(r);
      return r.passed() ? 0 : 1;
    }

    // verify
    bool all_pass = true;
    std::vector<std::string> failing;
    for (const auto& info : rlab::list_scenarios()) {
      if (!filter.empty() && info.name.find(filter) == std::string::npos) {
        continue;
      }
      const ScenarioResult r = rlab::run_scenario(info.name, {}, seed);
      print_checks(r);
      for (const auto& c : r.checks) {
        if (!c.pass) {
          all_pass = false;
          failing.push_back(c.name);
        }
      }
    }
    if (!all_pass) {
      std::cerr << "failing invariants:";
      for (const auto& name : failing) {
        std::cerr << " " << name;
      }
      std::cerr << "\n";
      return 1;
    }
    return 0;
  } catch (const rlab::UnknownScenario& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rlab::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
