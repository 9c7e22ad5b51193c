#include "ccrheat/report.hpp"

#include <stdexcept>

namespace ccrheat {

Json ExperimentReport::to_json() const {
  Json j = Json::object();
  j["check"] = check;
  j["params"] = params;
  j["measured"] = measured;
  j["bound"] = bound;
  j["pass"] = pass;
  return j;
}

ExperimentReport ExperimentReport::from_json(const Json& j) {
  for (const char* key : {"check", "params", "measured", "bound", "pass"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("report JSON missing key: ") + key);
  }
  ExperimentReport r;
  r.check = j.at("check").get<std::string>();
  r.params = j.at("params");
  r.measured = j.at("measured");
  r.bound = j.at("bound").get<double>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

}  // namespace ccrheat
