#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "incexp/error.hpp"
#include "incexp/harness.hpp"
#include "text_format.hpp"

#ifndef INCEXP_GIT_DESCRIBE
#define INCEXP_GIT_DESCRIBE "unknown"
#endif

namespace incexp {

const char* build_version() { return INCEXP_GIT_DESCRIBE; }

void write_csv(const Report& report, std::ostream& os) {
  bool first = true;
  if (!report.model_column.empty()) {
    os << "model";
    first = false;
  }
  for (const auto& c : report.columns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << '\n';
  for (const auto& row : report.rows) {
    first = true;
    if (!report.model_column.empty()) {
      os << '"' << report.model_column << '"';
      first = false;
    }
    for (double v : row) {
      os << (first ? "" : ",") << detail::fmt17(v);
      first = false;
    }
    os << '\n';
  }
}

std::string summary_json(const Report& report, const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_echo(cfg)) config[k] = v;
  j["config"] = config;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"threshold", v.threshold}, {"value", v.value}});
  }
  j["verdicts"] = verdicts;
  j["all_pass"] = report.all_pass();
  nlohmann::ordered_json scalars = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.scalars) scalars[k] = v;
  j["results"] = scalars;
  j["build"] = build_version();
  return j.dump(2) + "\n";
}

void write_report(const Report& report, const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.outdir);
  const auto base = std::filesystem::path(cfg.outdir) / report.experiment;
  {
    std::ofstream csv(base.string() + ".csv", std::ios::trunc);
    if (!csv) throw InvalidParameter("cannot write " + base.string() + ".csv");
    write_csv(report, csv);
  }
  std::ofstream js(base.string() + ".summary.json", std::ios::trunc);
  if (!js) throw InvalidParameter("cannot write " + base.string() + ".summary.json");
  js << summary_json(report, cfg);
}

}  // namespace incexp
