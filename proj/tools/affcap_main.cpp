// Batch front end: compute functionals, run capacity sandwiches and property
// suites, and sweep one parameter axis.  All I/O is JSON/CSV documents.
#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "affcap/config.hpp"

namespace {

using namespace affcap;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string method_for_volume(const StarBody& body) {
  const StarRep r = body.rep();
  return (r == StarRep::Polytope || r == StarRep::StarMesh) ? "facet-exact"
                                                            : "radial-quadrature";
}

std::vector<QuantityResult> compute_quantities(const RunConfig& rc) {
  std::vector<QuantityResult> out;
  const int n = rc.body.dim();
  const int m = rc.q.dim();
  auto push = [&out](const std::string& name, const Estimate& e,
                     const std::string& method, double wall) {
    out.push_back({name, e.value, e.err, method, e.nodes_used, wall});
  };
  for (const auto& qty : rc.quantities) {
    const auto t0 = Clock::now();
    if (qty == "volume") {
      push(qty, rc.body.volume(rc.quad.inner_level), method_for_volume(rc.body),
           ms_since(t0));
    } else if (qty == "sp") {
      push(qty, sp_surface(rc.body, rc.p, rc.quad.inner_level), "boundary-sum",
           ms_since(t0));
    } else if (qty == "phi") {
      push(qty, phi(rc.body, rc.q, rc.p, rc.quad), "polar-volume-quadrature",
           ms_since(t0));
    } else if (qty == "d-np") {
      push(qty, d_np(rc.q, n, rc.p, rc.quad.outer_rule(n, m), rc.quad.inner_level),
           "polar-volume-quadrature", ms_since(t0));
    } else if (qty == "cap-ball") {
      push(qty, cap_ball_closed_form(n, m, rc.p, rc.q, rc.quad), "closed-form",
           ms_since(t0));
    } else if (qty == "cap-lower") {
      push(qty, cap_lower(rc.body, rc.q, rc.p, rc.quad), "volume lower bound",
           ms_since(t0));
    } else if (qty == "cap-upper") {
      push(qty, cap_upper(rc.body, rc.q, rc.p, rc.quad), "radial-profile upper bound",
           ms_since(t0));
    } else if (qty == "j-star") {
      push(qty, Estimate::exact(profile_optimal_j(n, rc.p)), "closed-form", ms_since(t0));
    } else if (qty == "j-opt") {
      const ProfileResult pr =
          profile_optimize_j(n, rc.p, rc.profile_grid, rc.profile_s_max);
      Estimate e = Estimate::exact(pr.j_value);
      e.err = pr.tail_bound;
      e.nodes_used = pr.iterations;
      push(qty, e, "projected-descent", ms_since(t0));
    } else if (qty == "h-proj") {
      if (rc.directions.empty())
        throw InputError("h-proj requested but no directions given");
      for (std::size_t i = 0; i < rc.directions.size(); ++i) {
        const auto ti = Clock::now();
        const ProjectionBody pb(rc.body, rc.q, rc.p, rc.quad.inner_level);
        const Estimate e = pb.support_estimate(rc.directions[i]);
        push("h-proj[" + std::to_string(i) + "]", e,
             pb.exact() ? "facet-exact" : "boundary-quadrature", ms_since(ti));
      }
    } else {
      throw InputError("unknown quantity '" + qty + "'");
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open output path " + path);
  f << text;
}

void emit(const Json& doc, const std::vector<QuantityResult>& results,
          const std::string& out, const std::string& format) {
  const std::string text = format == "csv" ? results_csv(results) : doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
  }
}

void print_table(const std::vector<QuantityResult>& results) {
  std::cout << std::left << std::setw(14) << "quantity" << std::setw(22) << "value"
            << std::setw(14) << "err" << "method\n";
  for (const auto& r : results) {
    std::cout << std::left << std::setw(14) << r.name << std::setw(22)
              << std::setprecision(12) << r.value << std::setw(14)
              << std::setprecision(3) << r.err << r.method << "\n";
  }
}

Json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read config " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
}

int cmd_compute(const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::string& out, const std::string& format) {
  Json doc = load_config(config_path);
  if (seed) doc["seed"] = *seed;
  const RunConfig rc = parse_run_config(doc);
  const auto results = compute_quantities(rc);
  if (out.empty() && format == "json") print_table(results);
  emit(result_document(rc.raw, results), results, out, format);
  return 0;
}

int cmd_verify(std::vector<std::string> suite, int trials, std::uint64_t seed,
               const Json& rules, const std::string& out) {
  if (suite.size() == 1 && suite[0] == "all") suite = property_names();
  const QuadConfig cfg = [&rules] {
    QuadConfig c = parse_quad_config(rules);
    return c;
  }();
  std::vector<PropertyReport> reports;
  bool all_pass = true;
  std::cout << std::left << std::setw(26) << "property" << std::setw(8) << "status"
            << std::setw(16) << "max violation" << "fixtures\n";
  for (const auto& name : suite) {
    const PropertyReport rep = check_property(name, trials, seed, cfg);
    all_pass = all_pass && rep.pass;
    std::cout << std::left << std::setw(26) << rep.name << std::setw(8)
              << (rep.pass ? "pass" : "FAIL") << std::setw(16) << std::setprecision(4)
              << rep.max_violation << rep.fixtures << "\n";
    reports.push_back(rep);
  }
  if (!out.empty()) {
    Json j = Json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r));
    write_text(out, j.dump(2) + "\n");
  }
  if (!all_pass) {
    for (const auto& r : reports)
      if (!r.pass) std::cerr << "property failed: " << r.name << "\n";
    return 1;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& out, const std::string& format) {
  Json doc = load_config(config_path);
  if (seed) doc["seed"] = *seed;
  if (!doc.contains("sweep")) throw InputError("sweep: config needs a 'sweep' section");
  const Json sweep = doc.at("sweep");
  const std::string axis = sweep.at("axis").get<std::string>();
  const std::vector<double> values = sweep.at("values").get<std::vector<double>>();
  if (values.empty()) throw InputError("sweep: empty grid");

  Json rows = Json::array();
  std::ostringstream csv;
  csv.precision(17);
  bool header_done = false;
  for (double v : values) {
    Json point = doc;
    point.erase("sweep");
    if (axis == "p") {
      point["p"] = v;
    } else if (axis == "tau") {
      if (point.at("q").at("type").get<std::string>() != "tau")
        throw InputError("sweep: tau axis requires a tau-type q");
      point["q"]["tau"] = v;
    } else if (axis == "level") {
      const int lv = static_cast<int>(v);
      point["rules"]["inner_level"] = lv;
      point["rules"]["outer_level"] = lv;
      point["rules"]["qmc_level"] = lv;
    } else if (axis != "scale" && axis != "q-scale") {
      throw InputError("sweep: axis must be one of p, tau, scale, q-scale, level");
    }
    RunConfig rc = parse_run_config(point);
    if (axis == "scale")
      rc.body = rc.body.linear_image(
          LinearMap(v * Eigen::MatrixXd::Identity(rc.body.dim(), rc.body.dim())));
    if (axis == "q-scale") rc.q = scale(rc.q, v);
    const auto results = compute_quantities(rc);

    Json row;
    row[axis] = v;
    for (const auto& r : results)
      row[r.name] = Json{{"value", r.value}, {"err", r.err}};
    rows.push_back(row);
    if (!header_done) {
      csv << axis;
      for (const auto& r : results) csv << "," << r.name << "," << r.name << "_err";
      csv << "\n";
      header_done = true;
    }
    csv << v;
    for (const auto& r : results) csv << "," << r.value << "," << r.err;
    csv << "\n";
  }
  Json outdoc;
  outdoc["schema_version"] = kSchemaVersion;
  outdoc["tool_version"] = kVersion;
  outdoc["config"] = doc;
  outdoc["rows"] = rows;
  const std::string text = format == "csv" ? csv.str() : outdoc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
    if (format == "json") write_text(out + ".csv", csv.str());
  }
  return 0;
}

const char* kSchemaText = R"(configuration document (JSON):
{
  "body":  {"type":"cube","n":3,"half_width":1.0}
         | {"type":"ball","n":3,"radius":1.0}
         | {"type":"ellipsoid","matrix":[[...],...]}
         | {"type":"polytope","vertices":[[x,y,...],...]}
         | {"type":"simplex","vertices":[[...],...]}
         | {"type":"lq_ball","n":3,"q":3.0,"radius":1.0}
         | {"type":"radial_table","n":2,"level":1,"values":[...]},
  "q":     {"type":"segment","a":-0.5,"b":0.5}
         | {"type":"cube","m":2,"half_width":0.5}
         | {"type":"box","lo":[...],"hi":[...]}
         | {"type":"simplex","vertices":[[...],...]}
         | {"type":"polytope","vertices":[[...],...]}
         | {"type":"ball","m":2,"center":[0,0],"radius":1.0}
         | {"type":"tau","tau":0.0,"p":2.0},
  "p": 1.5,
  "rules": {"inner_level":4,"outer_level":4,"qmc_level":2,"seed":7},
  "seed": 7,
  "quantities": ["volume","sp","phi","d-np","cap-ball","cap-lower",
                 "cap-upper","j-star","j-opt","h-proj"],
  "directions": [[[1,0],[0,0],[0,0]], ...]   (n x m matrices, h-proj only),
  "profile": {"grid_size":400,"s_max":1000}  (j-opt only),
  "sweep": {"axis":"p","values":[1,1.5,2]}   (sweep command only)
}

result document: {"schema_version","tool_version","config",
  "results": {name: {"value","err","method","nodes","wall_ms"}}}

exit codes: 0 success, 1 property failure, 2 input error, 3 numerical failure.
)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-order affine functionals: projection bodies, integral "
               "affine surface areas and capacity bounds"};
  app.require_subcommand(1);

  std::string config_path, out, format = "json";
  std::optional<std::uint64_t> seed;
  int threads = 0;
  int trials = 20;
  std::uint64_t vseed = 7;
  std::vector<std::string> suite{"all"};
  Json verify_rules = Json::object();
  std::string rules_inline;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "worker cap (0 = hardware)");
    cmd->add_option("--out", out, "output path (default: stdout)");
    cmd->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* compute = app.add_subcommand("compute", "compute requested quantities");
  compute->add_option("--config", config_path, "config JSON path")->required();
  compute->add_option("--seed", seed, "override config seed");
  add_common(compute);

  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", suite, "property names or 'all'")->delimiter(',');
  verify->add_option("--trials", trials, "fixtures per property");
  verify->add_option("--seed", vseed, "suite seed");
  verify->add_option("--rules", rules_inline, "inline rules JSON");
  add_common(verify);

  CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter axis");
  sweep->add_option("--config", config_path, "config JSON path")->required();
  sweep->add_option("--seed", seed, "override config seed");
  add_common(sweep);

  CLI::App* listp = app.add_subcommand("list-properties", "list property names");
  CLI::App* schema = app.add_subcommand("schema", "print the config schema");

  CLI11_PARSE(app, argc, argv);
  affcap::set_max_threads(threads);

  try {
    if (compute->parsed()) return cmd_compute(config_path, seed, out, format);
    if (verify->parsed()) {
      if (!rules_inline.empty()) {
        try {
          verify_rules = Json::parse(rules_inline);
        } catch (const nlohmann::json::exception& e) {
          throw affcap::InputError(std::string("rules parse error: ") + e.what());
        }
      }
      return cmd_verify(suite, trials, vseed, verify_rules, out);
    }
    if (sweep->parsed()) return cmd_sweep(config_path, seed, out, format);
    if (listp->parsed()) {
      for (const auto& n : affcap::property_names()) std::cout << n << "\n";
      return 0;
    }
    if (schema->parsed()) {
      std::cout << kSchemaText;
      return 0;
    }
  } catch (const affcap::InputError& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "input"}}.dump() << "\n";
    return 2;
  } catch (const affcap::GeometryError& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "geometry"}}.dump() << "\n";
    return 2;
  } catch (const affcap::IntegrandError& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "positivity"}}.dump() << "\n";
    return 3;
  } catch (const affcap::NumericalError& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "numerical"}}.dump() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "input"}}.dump() << "\n";
    return 2;
  }
  return 0;
}
