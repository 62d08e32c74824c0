#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twc/metric.hpp"
#include "twc/model.hpp"
#include "twc/trace.hpp"

namespace twc {

/// Malformed or missing field in an input document. `path()` is a JSON
/// pointer to the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const DeploymentPlan& plan);
nlohmann::json to_json(const CoverageTrace& trace);
nlohmann::json to_json(const WeightFunction& weight);

Scenario scenario_from_json(const nlohmann::json& doc);
DeploymentPlan plan_from_json(const nlohmann::json& doc);
CoverageTrace trace_from_json(const nlohmann::json& doc);
WeightFunction weight_from_json(const nlohmann::json& doc, const std::string& path = "/weight");

/// Reads and parses a JSON file; unreadable or unparsable files raise
/// SchemaError with an empty path.
nlohmann::json read_json_file(const std::filesystem::path& file);
void write_json_file(const std::filesystem::path& file, const nlohmann::json& doc);

Scenario load_scenario(const std::filesystem::path& file);
DeploymentPlan load_plan(const std::filesystem::path& file);

}  // namespace twc
