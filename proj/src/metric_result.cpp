#include "cadi/metric_result.hpp"

#include <cmath>

namespace cadi {

nlohmann::json MetricResult::to_json() const {
  nlohmann::json j;
  j["metric"] = metric;
  if (std::isfinite(value)) {
    j["value"] = value;
  } else {
    j["value"] = nullptr;  // JSON has no inf/nan; status explains why
  }
  j["params"] = params;
  j["elapsed_seconds"] = elapsed_seconds;
  if (status != "ok") j["status"] = status;
  return j;
}

MetricResult MetricResult::from_json(const nlohmann::json& j) {
  MetricResult r;
  r.metric = j.at("metric").get<std::string>();
  if (j.at("value").is_null()) {
    r.value = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.value = j.at("value").get<double>();
  }
  r.params = j.value("params", nlohmann::json::object());
  r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
  r.status = j.value("status", std::string("ok"));
  return r;
}

}  // namespace cadi
