#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace coxwalk {

struct FactResult {
  std::string id;
  std::string claim;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/*
  Re-derives every computational claim about the built-in diagrams, reading
  them from fixture_dir. A fact whose computation throws is reported as
  failed with the error as detail.
*/
std::vector<FactResult> verify_paper(const std::string& fixture_dir);

nlohmann::ordered_json facts_to_json(const std::vector<FactResult>& facts);

}  // namespace coxwalk
