#include "affcap/config.hpp"

#include <sstream>

namespace affcap {

namespace {

Eigen::VectorXd parse_vector(const Json& a) {
  if (!a.is_array()) throw InputError("config: expected a numeric array");
  Eigen::VectorXd v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i].get<double>();
  return v;
}

// Points given as a list of coordinate rows; stored as dim x count.
Eigen::MatrixXd parse_points(const Json& a) {
  if (!a.is_array() || a.empty()) throw InputError("config: expected a point list");
  const std::size_t dim = a[0].size();
  Eigen::MatrixXd pts(dim, a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != dim) throw InputError("config: ragged point list");
    for (std::size_t j = 0; j < dim; ++j) pts(j, i) = a[i][j].get<double>();
  }
  return pts;
}

Eigen::MatrixXd parse_matrix(const Json& a) {
  if (!a.is_array() || a.empty()) throw InputError("config: expected a matrix");
  const std::size_t cols = a[0].size();
  Eigen::MatrixXd m(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != cols) throw InputError("config: ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a[i][j].get<double>();
  }
  return m;
}

}  // namespace

QBody parse_qbody(const Json& spec) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "segment")
    return QBody::segment(spec.at("a").get<double>(), spec.at("b").get<double>());
  if (type == "cube")
    return QBody::cube(spec.at("m").get<int>(), spec.at("half_width").get<double>());
  if (type == "box") return QBody::box(parse_vector(spec.at("lo")), parse_vector(spec.at("hi")));
  if (type == "simplex") return QBody::simplex(parse_points(spec.at("vertices")));
  if (type == "polytope") return QBody::polytope(parse_points(spec.at("vertices")));
  if (type == "ball")
    return QBody::ball(parse_vector(spec.at("center")), spec.at("radius").get<double>());
  if (type == "tau")
    return QBody::tau_segment(spec.at("tau").get<double>(), spec.at("p").get<double>());
  throw InputError("config: unknown q body type '" + type + "'");
}

StarBody parse_starbody(const Json& spec) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "cube")
    return StarBody::cube(spec.at("n").get<int>(), spec.at("half_width").get<double>());
  if (type == "ball")
    return StarBody::ball(spec.at("n").get<int>(), spec.at("radius").get<double>());
  if (type == "ellipsoid") return StarBody::ellipsoid(parse_matrix(spec.at("matrix")));
  if (type == "simplex") return StarBody::simplex(parse_points(spec.at("vertices")));
  if (type == "polytope") return StarBody::polytope_hull(parse_points(spec.at("vertices")));
  if (type == "lq_ball")
    return StarBody::lq_ball(spec.at("n").get<int>(), spec.at("q").get<double>(),
                             spec.at("radius").get<double>());
  if (type == "radial_table")
    return StarBody::radial_table(spec.at("n").get<int>(), spec.at("level").get<int>(),
                                  parse_vector(spec.at("values")));
  throw InputError("config: unknown body type '" + type + "'");
}

QuadConfig parse_quad_config(const Json& spec) {
  QuadConfig cfg;
  if (spec.contains("inner_level")) cfg.inner_level = spec.at("inner_level").get<int>();
  if (spec.contains("outer_level")) cfg.outer_level = spec.at("outer_level").get<int>();
  if (spec.contains("qmc_level")) cfg.qmc_level = spec.at("qmc_level").get<int>();
  if (spec.contains("seed")) cfg.seed = spec.at("seed").get<std::uint64_t>();
  if (cfg.inner_level < 0 || cfg.outer_level < 0 || cfg.qmc_level < 0)
    throw InputError("config: rule levels must be >= 0");
  return cfg;
}

RunConfig parse_run_config(const Json& doc) {
  RunConfig rc{doc,
               parse_starbody(doc.at("body")),
               parse_qbody(doc.at("q")),
               doc.value("p", 1.0),
               doc.contains("rules") ? parse_quad_config(doc.at("rules")) : QuadConfig{},
               {},
               {},
               400,
               1e3};
  if (doc.contains("seed")) rc.quad.seed = doc.at("seed").get<std::uint64_t>();
  if (!(rc.p >= 1.0)) throw InputError("config: p >= 1 required");
  if (doc.contains("quantities"))
    for (const auto& qn : doc.at("quantities")) rc.quantities.push_back(qn.get<std::string>());
  if (rc.quantities.empty())
    throw InputError("config: at least one quantity must be requested");
  if (doc.contains("directions")) {
    for (const auto& d : doc.at("directions")) {
      Eigen::MatrixXd u = parse_matrix(d);
      if (u.rows() != rc.body.dim() || u.cols() != rc.q.dim())
        throw InputError("config: direction shape must be n x m");
      rc.directions.push_back(u / u.norm());
    }
  }
  if (doc.contains("profile")) {
    rc.profile_grid = doc.at("profile").value("grid_size", 400);
    rc.profile_s_max = doc.at("profile").value("s_max", 1e3);
  }
  return rc;
}

Json result_document(const Json& config_echo,
                     const std::vector<QuantityResult>& results) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool_version"] = kVersion;
  doc["config"] = config_echo;
  Json res = Json::object();
  for (const auto& r : results) {
    res[r.name] = Json{{"value", r.value},
                       {"err", r.err},
                       {"method", r.method},
                       {"nodes", r.nodes},
                       {"wall_ms", r.wall_ms}};
  }
  doc["results"] = res;
  return doc;
}

std::string results_csv(const std::vector<QuantityResult>& results) {
  std::ostringstream os;
  os.precision(17);
  os << "quantity,value,err,method,nodes,wall_ms\n";
  for (const auto& r : results)
    os << r.name << "," << r.value << "," << r.err << "," << r.method << "," << r.nodes
       << "," << r.wall_ms << "\n";
  return os.str();
}

Json report_to_json(const PropertyReport& rep) {
  Json j;
  j["property"] = rep.name;
  j["fixtures"] = rep.fixtures;
  j["max_violation"] = rep.max_violation;
  j["seed"] = rep.seed;
  j["pass"] = rep.pass;
  j["worst_fixture"] = rep.worst_fixture;
  j["diagnostics"] = rep.diagnostics;
  return j;
}

}  // namespace affcap
