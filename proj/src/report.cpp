#include "hhbound/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hhbound {

using nlohmann::json;

namespace {

json real(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json interval_json(const Interval& iv) { return {{"a", iv.a}, {"b", iv.b}}; }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const SuiteResult& result) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.reports) {
    const BoundReport& b = r.report;
    out << to_string(b.theorem) << ',' << r.family_f << ',' << r.family_g << ','
        << format_g17(r.interval.a) << ',' << format_g17(r.interval.b) << ','
        << format_g17(r.x) << ',' << format_g17(r.q) << ','
        << format_g17(r.params.alpha) << ',' << format_g17(r.params.m) << ','
        << format_g17(b.lhs) << ',' << format_g17(b.rhs) << ','
        << format_g17(b.slack) << ',' << format_g17(b.tightness) << ','
        << (b.holds ? "true" : "false") << '\n';
  }
}

json config_to_json(const SuiteConfig& config) {
  json cases = json::array();
  for (const auto& c : config.cases) {
    json theorems = json::array();
    for (TheoremId id : c.theorems) theorems.push_back(std::string(to_string(id)));
    cases.push_back({{"f", c.f.spec()},
                     {"g", c.g.spec()},
                     {"a", c.interval.a},
                     {"b", c.interval.b},
                     {"b_star", c.b_star},
                     {"x", c.xs},
                     {"x_points", c.x_points},
                     {"x_random", c.x_random},
                     {"q", c.qs},
                     {"alpha", c.alphas},
                     {"m", c.ms},
                     {"theorems", theorems}});
  }
  return {{"name", config.name},
          {"seed", config.seed},
          {"jobs", config.jobs},
          {"output_dir", config.output_dir.generic_string()},
          {"grid", {{"nx", config.grid.nx}, {"ny", config.grid.ny}, {"nt", config.grid.nt}}},
          {"cases", cases}};
}

SuiteConfig config_from_json(const json& j) {
  try {
    SuiteConfig config;
    config.name = get_or<std::string>(j, "name", config.name);
    config.seed = get_or<std::uint64_t>(j, "seed", config.seed);
    config.jobs = get_or<unsigned>(j, "jobs", config.jobs);
    config.output_dir =
        get_or<std::string>(j, "output_dir", config.output_dir.string());
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      config.grid.nx = get_or<int>(g, "nx", config.grid.nx);
      config.grid.ny = get_or<int>(g, "ny", config.grid.ny);
      config.grid.nt = get_or<int>(g, "nt", config.grid.nt);
    }
    if (!j.contains("cases") || !j.at("cases").is_array()) {
      throw InvalidArgument("config needs a 'cases' array");
    }
    for (const json& c : j.at("cases")) {
      CaseSpec spec;
      spec.f = parse_function(c.at("f").get<std::string>());
      spec.g = parse_function(c.at("g").get<std::string>());
      spec.interval = make_interval(c.at("a").get<double>(), c.at("b").get<double>());
      spec.b_star = get_or<double>(c, "b_star", spec.b_star);
      spec.xs = get_or<std::vector<double>>(c, "x", spec.xs);
      spec.x_points = get_or<int>(c, "x_points", spec.x_points);
      spec.x_random = get_or<int>(c, "x_random", spec.x_random);
      spec.qs = get_or<std::vector<double>>(c, "q", spec.qs);
      spec.alphas = get_or<std::vector<double>>(c, "alpha", spec.alphas);
      spec.ms = get_or<std::vector<double>>(c, "m", spec.ms);
      if (c.contains("theorems")) {
        spec.theorems.clear();
        for (const auto& t : c.at("theorems")) {
          spec.theorems.push_back(parse_theorem(t.get<std::string>()));
        }
      }
      config.cases.push_back(std::move(spec));
    }
    return config;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed suite config: ") + e.what());
  }
}

SuiteConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("config " + path.string() + " is not valid JSON: " +
                          e.what());
  }
  return config_from_json(j);
}

json result_to_json(const SuiteConfig& config, const SuiteResult& result) {
  json reports = json::array();
  for (const auto& r : result.reports) {
    const BoundReport& b = r.report;
    reports.push_back({{"theorem_id", std::string(to_string(b.theorem))},
                       {"family_f", r.family_f},
                       {"family_g", r.family_g},
                       {"a", r.interval.a},
                       {"b", r.interval.b},
                       {"x", r.x},
                       {"q", r.q},
                       {"alpha", r.params.alpha},
                       {"m", r.params.m},
                       {"lhs", real(b.lhs)},
                       {"lhs_error", real(b.lhs_error)},
                       {"rhs", real(b.rhs)},
                       {"slack", real(b.slack)},
                       {"tightness", real(b.tightness)},
                       {"holds", b.holds}});
  }
  json rejections = json::array();
  for (const auto& r : result.rejections) {
    rejections.push_back({{"theorem_id", std::string(to_string(r.theorem))},
                          {"family_f", r.family_f},
                          {"family_g", r.family_g},
                          {"interval", interval_json(r.interval)},
                          {"q", r.q},
                          {"alpha", r.params.alpha},
                          {"m", r.params.m},
                          {"witness",
                           {{"x", r.witness.x},
                            {"y", r.witness.y},
                            {"t", r.witness.t},
                            {"gap", real(r.witness.gap)}}}});
  }
  json errors = json::array();
  for (const auto& e : result.errors) {
    errors.push_back(
        {{"family_f", e.family_f}, {"family_g", e.family_g}, {"message", e.message}});
  }
  // The output directory is where the files go, not what they contain;
  // leaving it out keeps reports of identical runs byte-identical.
  json echo = config_to_json(config);
  echo.erase("output_dir");
  return {{"config", echo},
          {"seed", config.seed},
          {"summary",
           {{"reports", result.reports.size()},
            {"violations", result.violations},
            {"hypothesis_rejections", result.hypothesis_rejections},
            {"errors", result.errors.size()},
            {"max_tightness", real(result.max_tightness)},
            {"min_tightness", real(result.min_tightness)}}},
          {"reports", reports},
          {"rejections", rejections},
          {"errors", errors}};
}

void write_reports(const SuiteConfig& config, const SuiteResult& result) {
  std::ostringstream csv;
  write_csv(csv, result);
  const std::string json_text = result_to_json(config, result).dump(2) + "\n";
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + config.output_dir.string() +
                             ": " + ec.message());
  }
  write_file(config.output_dir / (config.name + ".csv"), csv.str());
  write_file(config.output_dir / (config.name + ".json"), json_text);
}

}  // namespace hhbound
