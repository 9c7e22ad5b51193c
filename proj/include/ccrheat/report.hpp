#pragma once
// Structured record of a named check.

#include <string>

#include "json.hpp"

namespace ccrheat {

using Json = nlohmann::ordered_json;

struct ExperimentReport {
  std::string check;
  Json params = Json::object();
  Json measured = Json::object();
  double bound = 0.0;
  bool pass = false;

  // {check, params, measured, bound, pass}
  Json to_json() const;
  static ExperimentReport from_json(const Json& j);
};

}  // namespace ccrheat
