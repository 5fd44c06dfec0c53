#pragma once

#include <map>
#include <string>

#include "rlab/numeric.hpp"

namespace rlab {

struct UnknownScenario : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioResult {
  std::string name;
  std::string anchor;
  std::vector<std::string> csv_header;
  std::vector<RealVec> csv_rows;
  std::vector<ScenarioCheck> checks;

  bool passed() const;
};

struct ScenarioInfo {
  std::string name;
  std::string anchor;
};

// registry listing, stable-sorted by name
std::vector<ScenarioInfo> list_scenarios();

// runs one registered scenario; unknown names or parameter keys throw
ScenarioResult run_scenario(const std::string& name,
                            const std::map<std::string, std::string>& params,
                            unsigned long seed);

// test hook: makes the named fault active for subsequent runs ("" clears)
void inject_fault(const std::string& fault);

}  // namespace rlab
