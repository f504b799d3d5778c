#pragma once

#include <string>

#include <json.hpp>

namespace cadi {

/// One computed metric value with its parameters (sample count, seed, rng id)
/// and wall-clock time. status is "ok" for regular values; degenerate or
/// sentinel outcomes carry a short status tag and may have a non-finite
/// value, which serializes as null.
struct MetricResult {
  std::string metric;
  double value = 0.0;
  nlohmann::json params = nlohmann::json::object();
  double elapsed_seconds = 0.0;
  std::string status = "ok";

  nlohmann::json to_json() const;
  static MetricResult from_json(const nlohmann::json& j);
};

}  // namespace cadi
