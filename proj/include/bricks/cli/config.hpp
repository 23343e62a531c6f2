#pragma once

// Run configuration for the command-line tool, loaded from an INI file:
//
//   [brick]     basis, tail, tail_param, prefix, block_base, breakpoints,
//               weights, normalize
//   [schedule]  levels, cauchy_tol, divergence_floor
//   [run]       seed, patterns, samples
//   [net]       eps, level, budget
//   [entropy]   set (vectors separated by ';', entries by ','), bases
//   [measure]   family, atoms, p, mode, probe, levels

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bricks/basis.hpp"
#include "bricks/brick.hpp"
#include "bricks/errors.hpp"
#include "bricks/half_heights.hpp"
#include "bricks/schedule.hpp"

namespace bricks::cli {

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"examples", "radius", "compact", "entropy", "net", "measure"};
  return c;
}

struct BrickConfig {
  std::string basis = "l2";
  std::string tail = "reciprocal";
  double tail_param = 1.0;
  std::vector<double> prefix;
  // basis = blocks
  std::string block_base = "c0";
  std::vector<std::size_t> breakpoints;
  std::vector<double> weights;
  bool normalize = true;
};

struct NetConfig {
  double eps = 0.3;
  std::size_t level = 3;
  std::size_t budget = 1'000'000;
};

struct EntropyConfig {
  std::vector<std::vector<double>> set{{1.0, 0.0}, {0.5, 2.0}};
  std::vector<std::string> bases{"c0", "summing_c"};
};

struct MeasureConfig {
  std::string family = "weak4";
  std::size_t atoms = 10'000;
  double p = 4.0;
  std::string mode = "weak";
  std::vector<double> probe{1.0};
  std::vector<std::size_t> levels{10, 100, 1000, 10'000};
};

struct RunConfig {
  std::string command = "examples";
  std::uint64_t seed = 0;
  std::optional<std::string> output_path;
  std::size_t patterns = 16;
  std::size_t samples = 1000;
  BrickConfig brick;
  TruncationSchedule schedule;
  NetConfig net;
  EntropyConfig entropy;
  MeasureConfig measure;
  /// Set when the brick section came from a file or flags.
  bool brick_given = false;
};

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return out;
}

inline double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("'" + key + "': expected a number, got '" + s + "'");
  }
}

inline std::size_t parse_count(const std::string& s, const std::string& key) {
  const double v = parse_double(s, key);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw InvalidArgument("'" + key + "': expected a nonnegative integer, got '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

inline std::vector<double> parse_doubles(const std::string& s, const std::string& key) {
  std::vector<double> out;
  if (s.find_first_not_of(" \t") == std::string::npos) return out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item, key));
  return out;
}

inline std::vector<std::size_t> parse_counts(const std::string& s, const std::string& key) {
  std::vector<std::size_t> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_count(item, key));
  return out;
}

inline bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw InvalidArgument("'" + key + "': expected true or false, got '" + s + "'");
}

}  // namespace detail

/// Applies an INI file on top of the defaults in `cfg`. Unknown sections and
/// keys are rejected.
inline void load_ini(std::istream& in, RunConfig& cfg) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  static const std::map<std::string, std::set<std::string>> known{
      {"brick", {"basis", "tail", "tail_param", "prefix", "block_base", "breakpoints", "weights", "normalize"}},
      {"schedule", {"levels", "cauchy_tol", "divergence_floor"}},
      {"run", {"seed", "patterns", "samples"}},
      {"net", {"eps", "level", "budget"}},
      {"entropy", {"set", "bases"}},
      {"measure", {"family", "atoms", "p", "mode", "probe", "levels"}},
  };
  for (const auto& [section, body] : tree) {
    const auto it = known.find(section);
    if (it == known.end()) throw InvalidArgument("unknown config section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) throw InvalidArgument("unknown config key " + section + "." + key);
    }
  }
  auto get = [&](const std::string& path) { return tree.get_optional<std::string>(path); };

  if (tree.get_child_optional("brick")) cfg.brick_given = true;
  if (auto v = get("brick.basis")) cfg.brick.basis = *v;
  if (auto v = get("brick.tail")) cfg.brick.tail = *v;
  if (auto v = get("brick.tail_param")) cfg.brick.tail_param = detail::parse_double(*v, "brick.tail_param");
  if (auto v = get("brick.prefix")) cfg.brick.prefix = detail::parse_doubles(*v, "brick.prefix");
  if (auto v = get("brick.block_base")) cfg.brick.block_base = *v;
  if (auto v = get("brick.breakpoints")) cfg.brick.breakpoints = detail::parse_counts(*v, "brick.breakpoints");
  if (auto v = get("brick.weights")) cfg.brick.weights = detail::parse_doubles(*v, "brick.weights");
  if (auto v = get("brick.normalize")) cfg.brick.normalize = detail::parse_bool(*v, "brick.normalize");

  if (auto v = get("schedule.levels")) cfg.schedule.levels = detail::parse_counts(*v, "schedule.levels");
  if (auto v = get("schedule.cauchy_tol")) cfg.schedule.cauchy_tol = detail::parse_double(*v, "schedule.cauchy_tol");
  if (auto v = get("schedule.divergence_floor")) {
    cfg.schedule.divergence_floor = detail::parse_double(*v, "schedule.divergence_floor");
  }

  if (auto v = get("run.seed")) cfg.seed = detail::parse_count(*v, "run.seed");
  if (auto v = get("run.patterns")) cfg.patterns = detail::parse_count(*v, "run.patterns");
  if (auto v = get("run.samples")) cfg.samples = detail::parse_count(*v, "run.samples");

  if (auto v = get("net.eps")) cfg.net.eps = detail::parse_double(*v, "net.eps");
  if (auto v = get("net.level")) cfg.net.level = detail::parse_count(*v, "net.level");
  if (auto v = get("net.budget")) cfg.net.budget = detail::parse_count(*v, "net.budget");

  if (auto v = get("entropy.set")) {
    cfg.entropy.set.clear();
    for (const auto& row : detail::split(*v, ';')) cfg.entropy.set.push_back(detail::parse_doubles(row, "entropy.set"));
  }
  if (auto v = get("entropy.bases")) cfg.entropy.bases = detail::split(*v, ',');

  if (auto v = get("measure.family")) cfg.measure.family = *v;
  if (auto v = get("measure.atoms")) cfg.measure.atoms = detail::parse_count(*v, "measure.atoms");
  if (auto v = get("measure.p")) cfg.measure.p = detail::parse_double(*v, "measure.p");
  if (auto v = get("measure.mode")) cfg.measure.mode = *v;
  if (auto v = get("measure.probe")) cfg.measure.probe = detail::parse_doubles(*v, "measure.probe");
  if (auto v = get("measure.levels")) cfg.measure.levels = detail::parse_counts(*v, "measure.levels");
}

/// Built-in basis by name; `cover` is the largest truncation needed.
inline BasisModel make_basis(const std::string& name, std::size_t cover) {
  if (name == "l1") return BasisModel::standard_lp(1);
  if (name == "l2") return BasisModel::standard_lp(2);
  if (name == "c0") return BasisModel::standard_c0();
  if (name == "summing_c") return BasisModel::summing_c();
  if (name == "uncompact") return make_uncompact_basis(std::max<std::size_t>(cover, 2));
  throw InvalidArgument("unknown basis '" + name + "' (expected l1, l2, c0, summing_c, uncompact or blocks)");
}

inline TailRule make_tail(const std::string& name, double param) {
  if (name == "zero") return TailRule::zero();
  if (name == "reciprocal") return TailRule::reciprocal();
  if (name == "reciprocal_sqrt") return TailRule::reciprocal_sqrt();
  if (name == "power_law") return TailRule::power_law(param);
  if (name == "constant") return TailRule::constant(param);
  throw InvalidArgument("unknown tail rule '" + name +
                        "' (expected zero, reciprocal, reciprocal_sqrt, power_law or constant)");
}

inline Brick make_brick(const BrickConfig& b, std::size_t cover) {
  BasisModel basis = b.basis == "blocks"
                         ? block_basis(make_basis(b.block_base, b.breakpoints.empty() ? cover : b.breakpoints.back()),
                                       BlockSpec{b.breakpoints, b.weights}, b.normalize)
                         : make_basis(b.basis, cover);
  return Brick(basis, HalfHeights(CoefficientVector(b.prefix), make_tail(b.tail, b.tail_param)));
}

}  // namespace bricks::cli
