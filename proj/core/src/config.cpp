#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>

#include "incexp/error.hpp"
#include "incexp/harness.hpp"
#include "model_impl.hpp"

namespace incexp {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw InvalidParameter("config: " + key + " = '" + value + "': " + why);
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d)) bad(key, v, "not a number");
  return d;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  // Accepts plain integers and powers of two written as 2^k.
  if (v.size() > 2 && v[0] == '2' && v[1] == '^') {
    const auto k = to_uint(key, v.substr(2));
    if (k > 62) bad(key, v, "exponent too large");
    return std::uint64_t{1} << k;
  }
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) bad(key, v, "not a nonnegative integer");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) bad(key, v, "not an integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, v, "expected true/false");
}

std::string join_uint(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_int(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string v = trim(raw_value);
  auto& th = cfg.thresholds;
  const std::map<std::string, std::function<void()>> setters = {
      {"model", [&] { cfg.model = v; }},
      {"f", [&] { cfg.f = v; }},
      {"T", [&] { cfg.T = to_double(key, v); }},
      {"n", [&] { cfg.n = to_uint(key, v); }},
      {"a", [&] { cfg.a = to_double(key, v); }},
      {"b", [&] { cfg.b = to_double(key, v); }},
      {"window",
       [&] {
         const auto parts = split(v, ',');
         if (parts.size() != 2) bad(key, v, "expected a,b");
         cfg.a = to_double(key, parts[0]);
         cfg.b = to_double(key, parts[1]);
       }},
      {"h_list",
       [&] {
         cfg.h_list.clear();
         for (const auto& p : split(v, ',')) cfg.h_list.push_back(to_uint(key, p));
       }},
      {"R", [&] { cfg.R = to_uint(key, v); }},
      {"seed", [&] { cfg.seed = to_uint(key, v); }},
      {"j0", [&] { cfg.j0 = to_int(key, v); }},
      {"orders",
       [&] {
         cfg.orders.clear();
         for (const auto& p : split(v, ',')) cfg.orders.push_back(to_int(key, p));
       }},
      {"threads", [&] { cfg.threads = to_uint(key, v); }},
      {"outdir", [&] { cfg.outdir = v; }},
      {"n_quad", [&] { cfg.n_quad = to_uint(key, v); }},
      {"J", [&] { cfg.J = to_int(key, v); }},
      {"contrast", [&] { cfg.contrast = to_bool(key, v); }},
      {"method", [&] { cfg.method = parse_path_method(v); }},
      {"n_bins", [&] { cfg.n_bins = to_uint(key, v); }},
      {"M", [&] { cfg.M = to_double(key, v); }},
      {"kernel_h_max", [&] { cfg.kernel_h_max = to_double(key, v); }},
      {"kernel_h_min", [&] { cfg.kernel_h_min = to_double(key, v); }},
      {"kernel_points", [&] { cfg.kernel_points = to_uint(key, v); }},
      {"dump_paths", [&] { cfg.dump_paths = v; }},
      {"thresholds.rel_tol", [&] { th.rel_tol = to_double(key, v); }},
      {"thresholds.slope_margin", [&] { th.slope_margin = to_double(key, v); }},
      {"thresholds.se_slack", [&] { th.se_slack = to_double(key, v); }},
      {"thresholds.skew_tol", [&] { th.skew_tol = to_double(key, v); }},
      {"thresholds.kurt_tol", [&] { th.kurt_tol = to_double(key, v); }},
      {"thresholds.n_se", [&] { th.n_se = to_double(key, v); }},
      {"thresholds.mc_se", [&] { th.mc_se = to_double(key, v); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw InvalidParameter("config: unknown key '" + key + "'");
  it->second();
}

ExperimentConfig load_config(const std::string& file, ExperimentConfig cfg) {
  std::ifstream in(file);
  if (!in) throw InvalidParameter("config: cannot open '" + file + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameter("config: " + file + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

void validate_grid(const ExperimentConfig& cfg) {
  Grid{cfg.T, cfg.n}.validate();
  if (cfg.R < 8) throw InvalidParameter("config: R must be at least 8");
  if (!(cfg.a >= 0.0) || !(cfg.b > cfg.a)) throw InvalidParameter("config: window needs 0 <= a < b");
  if (cfg.h_list.empty()) throw InvalidParameter("config: h_list is empty");
  for (auto m : cfg.h_list) {
    if (m < 1) throw InvalidParameter("config: h_list entries are positive multiples of the grid step");
  }
  const double delta = cfg.T / static_cast<double>(cfg.n);
  std::size_t max_m = 0;
  for (auto m : cfg.h_list) max_m = std::max(max_m, m);
  if (cfg.b + static_cast<double>(max_m) * delta > cfg.T * (1.0 + 1e-12)) {
    throw InvalidParameter("config: window [a, b + max h] = [" + detail::format_number(cfg.a) + ", " +
                           detail::format_number(cfg.b + static_cast<double>(max_m) * delta) + "] exceeds [0, T]");
  }
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg) {
  const auto& th = cfg.thresholds;
  auto num = [](double v) { return detail::format_number(v); };
  return {
      {"model", cfg.model},
      {"f", cfg.f},
      {"T", num(cfg.T)},
      {"n", std::to_string(cfg.n)},
      {"window", num(cfg.a) + "," + num(cfg.b)},
      {"h_list", join_uint(cfg.h_list)},
      {"R", std::to_string(cfg.R)},
      {"seed", std::to_string(cfg.seed)},
      {"j0", std::to_string(cfg.j0)},
      {"orders", join_int(cfg.orders)},
      {"threads", std::to_string(cfg.threads)},
      {"outdir", cfg.outdir},
      {"n_quad", std::to_string(cfg.n_quad)},
      {"J", std::to_string(cfg.J)},
      {"contrast", cfg.contrast ? "true" : "false"},
      {"method", to_string(cfg.method)},
      {"n_bins", std::to_string(cfg.n_bins)},
      {"M", num(cfg.M)},
      {"kernel_h_max", num(cfg.kernel_h_max)},
      {"kernel_h_min", num(cfg.kernel_h_min)},
      {"kernel_points", std::to_string(cfg.kernel_points)},
      {"dump_paths", cfg.dump_paths},
      {"thresholds.rel_tol", num(th.rel_tol)},
      {"thresholds.slope_margin", num(th.slope_margin)},
      {"thresholds.se_slack", num(th.se_slack)},
      {"thresholds.skew_tol", num(th.skew_tol)},
      {"thresholds.kurt_tol", num(th.kurt_tol)},
      {"thresholds.n_se", num(th.n_se)},
      {"thresholds.mc_se", num(th.mc_se)},
  };
}

}  // namespace incexp
