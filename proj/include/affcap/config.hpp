// JSON configuration parsing and result-document serialization.
#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "affcap/verify.hpp"

namespace affcap {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

QBody parse_qbody(const Json& spec);
StarBody parse_starbody(const Json& spec);
QuadConfig parse_quad_config(const Json& spec);

struct RunConfig {
  Json raw;
  StarBody body;
  QBody q;
  double p = 1.0;
  QuadConfig quad;
  std::vector<std::string> quantities;
  std::vector<Eigen::MatrixXd> directions;  // for h-proj
  int profile_grid = 400;
  double profile_s_max = 1e3;
};

RunConfig parse_run_config(const Json& doc);

struct QuantityResult {
  std::string name;
  double value = 0.0;
  double err = 0.0;
  std::string method;
  std::int64_t nodes = 0;
  double wall_ms = 0.0;
};

Json result_document(const Json& config_echo,
                     const std::vector<QuantityResult>& results);
std::string results_csv(const std::vector<QuantityResult>& results);

Json report_to_json(const PropertyReport& rep);

}  // namespace affcap
