#include <charconv>
#include <map>
#include <string>

#include "incexp/error.hpp"
#include "incexp/models.hpp"
#include "model_impl.hpp"

namespace incexp {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view context) {
  const std::string t = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw InvalidParameter("model spec: cannot parse number '" + t + "' in " + std::string(context));
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view context) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_double(piece, context));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

using KeyValues = std::map<std::string, std::vector<double>>;

KeyValues parse_keys(std::string_view body, std::string_view spec) {
  KeyValues kv;
  std::size_t start = 0;
  while (start < body.size()) {
    const auto semi = body.find(';', start);
    const auto item = body.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidParameter("model spec: expected key=value in '" + std::string(spec) + "'");
    }
    const std::string key = trim(item.substr(0, eq));
    if (kv.count(key)) throw InvalidParameter("model spec: duplicate key '" + key + "'");
    kv[key] = parse_list(item.substr(eq + 1), spec);
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return kv;
}

const std::vector<double>& need(const KeyValues& kv, const std::string& key, std::string_view spec) {
  auto it = kv.find(key);
  if (it == kv.end()) throw InvalidParameter("model spec '" + std::string(spec) + "' is missing key '" + key + "'");
  return it->second;
}

double scalar(const KeyValues& kv, const std::string& key, std::string_view spec) {
  const auto& v = need(kv, key, spec);
  if (v.size() != 1) throw InvalidParameter("model spec: key '" + key + "' takes a single value");
  return v.front();
}

void only_keys(const KeyValues& kv, std::initializer_list<const char*> allowed, std::string_view spec) {
  for (const auto& [key, _] : kv) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidParameter("model spec '" + std::string(spec) + "': unknown key '" + key + "'");
  }
}

}  // namespace

IncrementVarianceModel parse_model(std::string_view spec_in) {
  const std::string spec = trim(spec_in);
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const KeyValues kv = colon == std::string::npos ? KeyValues{} : parse_keys(std::string_view(spec).substr(colon + 1), spec);

  if (family == "fbm") {
    only_keys(kv, {"r"}, spec);
    return make_fbm(scalar(kv, "r", spec));
  }
  if (family == "concave") {
    only_keys(kv, {"r"}, spec);
    return make_concave(scalar(kv, "r", spec));
  }
  if (family == "fbmix") {
    only_keys(kv, {"a", "beta"}, spec);
    return make_fb_mixture_discrete(need(kv, "a", spec), need(kv, "beta", spec));
  }
  if (family == "fbmeasure") {
    const double beta = scalar(kv, "beta", spec);
    if (kv.count("p")) {
      only_keys(kv, {"beta", "p", "cells"}, spec);
      const double cells = kv.count("cells") ? scalar(kv, "cells", spec) : 200.0;
      if (cells < 2 || cells != static_cast<double>(static_cast<std::size_t>(cells))) {
        throw InvalidParameter("model spec: cells must be an integer >= 2");
      }
      auto m = regularly_varying_measure(beta, scalar(kv, "p", spec), static_cast<std::size_t>(cells));
      return make_fb_mixture_measure(std::move(m.nodes), std::move(m.weights), beta);
    }
    only_keys(kv, {"beta", "nodes", "weights"}, spec);
    return make_fb_mixture_measure(need(kv, "nodes", spec), need(kv, "weights", spec), beta);
  }
  if (family == "fblaplace") {
    only_keys(kv, {"beta", "s", "w"}, spec);
    return make_fb_mixture_laplace(scalar(kv, "beta", spec), need(kv, "s", spec), need(kv, "w", spec));
  }
  if (family == "logspec") {
    if (!kv.empty()) throw InvalidParameter("model spec: logspec takes no parameters");
    return make_log_spectral();
  }
  throw InvalidParameter("model spec: unknown family '" + family + "' in '" + spec + "'");
}

}  // namespace incexp
