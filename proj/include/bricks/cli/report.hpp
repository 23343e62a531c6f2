#pragma once

// JSON rendering of results. Numbers are rounded to 12 significant digits
// and keys keep insertion order, so identical runs give identical bytes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "bricks/compactness.hpp"
#include "bricks/measures.hpp"
#include "bricks/radius_reports.hpp"
#include "json.hpp"

namespace bricks::cli {

using Json = nlohmann::ordered_json;

inline Json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline Json nums(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

template <class T>
Json counts(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

inline Json signs(const SignPattern& p) { return counts(p.signs()); }

inline Json to_json(const NoncompactWitness& w) {
  Json j;
  j["window"] = {w.lo, w.hi};
  if (w.pattern.size() > 0) j["signs"] = signs(w.pattern);
  if (w.element) j["element"] = *w.element;
  j["norm"] = num(w.value);
  return j;
}

inline Json to_json(const CompactnessVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["reason"] = v.reason;
  Json windows = Json::array();
  for (std::size_t i = 0; i < v.window_values.size(); ++i) {
    windows.push_back({{"from", v.window_starts[i]}, {"to", v.window_ends[i]}, {"max_norm", num(v.window_values[i])}});
  }
  j["windows"] = windows;
  j["numeric_trend"] = to_string(v.numeric_trend);
  j["closed_form"] = v.analytic ? Json(*v.analytic ? "converges" : "diverges") : Json("unknown");
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

inline Json to_json(const RadiusReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["levels"] = counts(r.levels);
  j["values"] = nums(r.values);
  j["verdict"] = to_string(r.verdict);
  if (r.value) j["estimate"] = num(*r.value);
  j["reason"] = r.reason;
  if (r.compactness) j["compactness"] = to_string(*r.compactness);
  if (r.kind == RadiusKind::Extreme) {
    j["extreme_point_exists"] = r.existence ? Json(*r.existence) : Json("unknown");
    Json pats = Json::array();
    for (const auto& p : r.patterns) {
      pats.push_back({{"pattern", p.label},
                      {"trend", to_string(p.trend)},
                      {"window_norms", nums(p.window_values)},
                      {"partial_norms", nums(p.partial_norms)}});
    }
    j["patterns"] = pats;
  }
  return j;
}

inline Json to_json(const MomentReport& r) {
  Json j;
  j["p"] = num(r.p);
  j["mode"] = r.mode;
  j["levels"] = counts(r.levels);
  j["partial_sums"] = nums(r.partial_sums);
  j["verdict"] = to_string(r.verdict);
  j["numeric_verdict"] = to_string(r.numeric_verdict);
  if (r.value) j["value"] = num(*r.value);
  j["reason"] = r.reason;
  return j;
}

/// One report section: a named claim, what was computed, and whether the
/// computed values meet the expectation.
struct Section {
  std::string claim;
  std::string statement;
  Json values = Json::object();
  std::string verdict;
  std::string expected;
  bool pass = false;
  Json witness;

  Section(std::string c, std::string s) : claim(std::move(c)), statement(std::move(s)) {}

  Json to_json() const {
    Json j;
    j["claim"] = claim;
    j["statement"] = statement;
    j["values"] = values;
    j["verdict"] = verdict;
    j["expected"] = expected;
    j["pass"] = pass;
    if (!witness.is_null()) j["witness"] = witness;
    return j;
  }
};

}  // namespace bricks::cli
