#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace omt {

struct RecipeResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> lines;      // human-readable findings
  std::vector<std::string> artifacts;  // files written
  std::string verdict_json;            // machine-readable verdict
};

struct RecipeOptions {
  std::string out_dir = ".";
  std::uint64_t seed = 12345;
  int threads = 1;
  bool write_artifacts = true;
};

// Named scenarios: sql-touch | fig3-shape | fig4-shape | amplification |
// oracle-check. Throws config_error for unknown names.
RecipeResult run_recipe(const std::string& name, const RecipeOptions& opt);

std::vector<std::string> known_recipes();

}  // namespace omt
