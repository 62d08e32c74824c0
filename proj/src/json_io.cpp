#include "twc/json_io.hpp"

#include <fstream>

namespace twc {

using nlohmann::json;

namespace {

json point_json(const Point& p) { return json{{"x", p.x}, {"y", p.y}}; }

json points_json(const std::vector<Point>& points) {
  json out = json::array();
  for (const auto& p : points) out.push_back(point_json(p));
  return out;
}

const json& field(const json& doc, const std::string& path, const char* name) {
  if (!doc.is_object()) throw SchemaError(path, "expected an object");
  const auto it = doc.find(name);
  if (it == doc.end()) throw SchemaError(path + "/" + name, "missing field");
  return *it;
}

double number(const json& value, const std::string& path) {
  if (!value.is_number()) throw SchemaError(path, "expected a number");
  return value.get<double>();
}

double number_field(const json& doc, const std::string& path, const char* name) {
  return number(field(doc, path, name), path + "/" + name);
}

std::size_t index_value(const json& value, const std::string& path) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw SchemaError(path, "expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

const json& array_field(const json& doc, const std::string& path, const char* name) {
  const json& value = field(doc, path, name);
  if (!value.is_array()) throw SchemaError(path + "/" + name, "expected an array");
  return value;
}

Point point(const json& value, const std::string& path) {
  return {number_field(value, path, "x"), number_field(value, path, "y")};
}

std::vector<Point> points_field(const json& doc, const std::string& path, const char* name) {
  const json& arr = array_field(doc, path, name);
  std::vector<Point> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(point(arr[i], path + "/" + name + "/" + std::to_string(i)));
  }
  return out;
}

std::vector<double> numbers_field(const json& doc, const std::string& path, const char* name) {
  const json& arr = array_field(doc, path, name);
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(number(arr[i], path + "/" + name + "/" + std::to_string(i)));
  }
  return out;
}

}  // namespace

json to_json(const WeightFunction& weight) {
  if (weight.family() == WeightFunction::Family::Constant) return json{{"family", "constant"}};
  return json{{"family", "exponential"}, {"alpha", weight.alpha()}};
}

WeightFunction weight_from_json(const json& doc, const std::string& path) {
  const json& family = field(doc, path, "family");
  if (family == "constant") return WeightFunction::constant();
  if (family == "exponential") return WeightFunction::exponential(number_field(doc, path, "alpha"));
  throw SchemaError(path + "/family", "expected \"constant\" or \"exponential\"");
}

json to_json(const Scenario& s) {
  json backhaul = json::object();
  for (auto aerial : {NodeKind::FBS, NodeKind::DBS}) {
    json row = json::object();
    for (auto other : {NodeKind::TBS, NodeKind::GVBS, NodeKind::FBS, NodeKind::DBS}) {
      row[to_string(other)] = s.backhaul_thresholds.get(aerial, other);
    }
    backhaul[to_string(aerial)] = row;
  }
  return json{
      {"disaster_radius", s.disaster_radius},
      {"tbs_locations", points_json(s.tbs_locations)},
      {"tbs_radius", s.tbs_radius},
      {"gvbs_count", s.gvbs_count},
      {"gvbs_reachable_locations", points_json(s.gvbs_reachable_locations)},
      {"gvbs_travel_time", s.gvbs_travel_time},
      {"gvbs_radius", s.gvbs_radius},
      {"fbs_initial", points_json(s.fbs_initial)},
      {"fbs_speed", s.fbs_speed},
      {"fbs_endurance", s.fbs_endurance},
      {"fbs_radius", s.fbs_radius},
      {"dbs_initial", points_json(s.dbs_initial)},
      {"dbs_speed", s.dbs_speed},
      {"dbs_operating_time", s.dbs_operating_time},
      {"dbs_radius", s.dbs_radius},
      {"backhaul_thresholds", backhaul},
      {"horizon", s.horizon},
      {"weight", to_json(s.weight)},
  };
}

Scenario scenario_from_json(const json& doc) {
  const std::string root;
  Scenario s;
  s.disaster_radius = number_field(doc, root, "disaster_radius");
  s.tbs_locations = points_field(doc, root, "tbs_locations");
  s.tbs_radius = number_field(doc, root, "tbs_radius");

  const json& count = field(doc, root, "gvbs_count");
  if (!count.is_number_integer()) throw SchemaError("/gvbs_count", "expected an integer");
  s.gvbs_count = count.get<int>();
  s.gvbs_reachable_locations = points_field(doc, root, "gvbs_reachable_locations");
  const json& matrix = array_field(doc, root, "gvbs_travel_time");
  for (std::size_t g = 0; g < matrix.size(); ++g) {
    const std::string row_path = "/gvbs_travel_time/" + std::to_string(g);
    if (!matrix[g].is_array()) throw SchemaError(row_path, "expected an array");
    std::vector<double> row;
    for (std::size_t n = 0; n < matrix[g].size(); ++n) {
      row.push_back(number(matrix[g][n], row_path + "/" + std::to_string(n)));
    }
    s.gvbs_travel_time.push_back(std::move(row));
  }
  s.gvbs_radius = number_field(doc, root, "gvbs_radius");

  s.fbs_initial = points_field(doc, root, "fbs_initial");
  s.fbs_speed = number_field(doc, root, "fbs_speed");
  s.fbs_endurance = number_field(doc, root, "fbs_endurance");
  s.fbs_radius = number_field(doc, root, "fbs_radius");
  s.dbs_initial = points_field(doc, root, "dbs_initial");
  s.dbs_speed = number_field(doc, root, "dbs_speed");
  s.dbs_operating_time = number_field(doc, root, "dbs_operating_time");
  s.dbs_radius = number_field(doc, root, "dbs_radius");

  const json& backhaul = field(doc, root, "backhaul_thresholds");
  for (auto aerial : {NodeKind::FBS, NodeKind::DBS}) {
    const std::string row_path = std::string("/backhaul_thresholds/") + to_string(aerial);
    const json& row = field(backhaul, "/backhaul_thresholds", to_string(aerial));
    for (auto other : {NodeKind::TBS, NodeKind::GVBS, NodeKind::FBS, NodeKind::DBS}) {
      s.backhaul_thresholds.set(aerial, other, number_field(row, row_path, to_string(other)));
    }
  }
  s.horizon = number_field(doc, root, "horizon");
  s.weight = weight_from_json(field(doc, root, "weight"));
  return s;
}

json to_json(const DeploymentPlan& plan) {
  json assignment = json::array();
  for (const auto& n : plan.gvbs_assignment) {
    assignment.push_back(n ? json(*n) : json(nullptr));
  }
  return json{
      {"gvbs_assignment", assignment},
      {"fbs_targets", points_json(plan.fbs_targets)},
      {"fbs_dispatch", plan.fbs_dispatch},
      {"dbs_targets", points_json(plan.dbs_targets)},
      {"dbs_dispatch", plan.dbs_dispatch},
  };
}

DeploymentPlan plan_from_json(const json& doc) {
  const std::string root;
  DeploymentPlan plan;
  const json& assignment = array_field(doc, root, "gvbs_assignment");
  for (std::size_t g = 0; g < assignment.size(); ++g) {
    if (assignment[g].is_null()) {
      plan.gvbs_assignment.push_back(std::nullopt);
    } else {
      plan.gvbs_assignment.push_back(
          index_value(assignment[g], "/gvbs_assignment/" + std::to_string(g)));
    }
  }
  plan.fbs_targets = points_field(doc, root, "fbs_targets");
  plan.fbs_dispatch = numbers_field(doc, root, "fbs_dispatch");
  plan.dbs_targets = points_field(doc, root, "dbs_targets");
  plan.dbs_dispatch = numbers_field(doc, root, "dbs_dispatch");
  return plan;
}

json to_json(const CoverageTrace& trace) {
  json segments = json::array();
  for (const auto& s : trace.segments()) {
    segments.push_back({{"t_start", s.t_start}, {"t_end", s.t_end}, {"fraction", s.fraction}});
  }
  return json{{"segments", segments}};
}

CoverageTrace trace_from_json(const json& doc) {
  const json& segments = array_field(doc, "", "segments");
  std::vector<TraceSegment> out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string path = "/segments/" + std::to_string(i);
    out.push_back({number_field(segments[i], path, "t_start"),
                   number_field(segments[i], path, "t_end"),
                   number_field(segments[i], path, "fraction")});
  }
  return CoverageTrace(std::move(out));
}

json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw SchemaError("", "cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", file.string() + " is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& file, const json& doc) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << doc.dump(2) << '\n';
}

Scenario load_scenario(const std::filesystem::path& file) {
  return scenario_from_json(read_json_file(file));
}

DeploymentPlan load_plan(const std::filesystem::path& file) {
  return plan_from_json(read_json_file(file));
}

}  // namespace twc
