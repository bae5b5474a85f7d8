#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <istream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "builder/harness.hpp"

namespace builder {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment file layout (INI; comments take whole lines starting with ';').
//
//   [experiment]
//   strategy = tree
//   n = 100000
//   t = pow:0.8
//   b = pow:0.5
//   seeds = 0:30
//   cross_check = off
//   timeout = 120
//
//   [params]
//   target = P4
//
//   [sweep]
//   n = 100000
//   t_coeffs = 0.55,0.65,0.75
//   b_coeffs = 0.1,0.2,0.3
//
// strategy is a factory name; t and b use the Quantity syntax; seeds is
// base:count or a list; cross_check is off or small_n; timeout is seconds per
// trial. [params] passes through to the strategy. [sweep] lists are
// comma-separated and replace n and the t/b coefficients cell by cell.
struct ConfigFile {
  ExperimentConfig experiment;
  SweepGrid grid;
  bool has_sweep = false;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      const auto a = cur.find_first_not_of(" \t");
      const auto z = cur.find_last_not_of(" \t");
      if (a == std::string::npos) throw InvalidParameter("empty entry in list '" + s + "'");
      out.push_back(cur.substr(a, z - a + 1));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

inline std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidParameter("bad integer '" + s + "' for " + what);
  return v;
}

inline void reject_unknown(const boost::property_tree::ptree& section, const std::string& name,
                           const std::set<std::string>& allowed) {
  for (const auto& [key, value] : section)
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in [" + name + "]");
}

}  // namespace detail

inline CrossCheck parse_cross_check(const std::string& s) {
  if (s == "off") return CrossCheck::Off;
  if (s == "small_n") return CrossCheck::SmallN;
  throw InvalidParameter("cross_check must be off or small_n");
}

inline ConfigFile parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  for (const auto& [name, section] : tree) {
    if (name != "experiment" && name != "params" && name != "sweep")
      throw ConfigError("unknown section [" + name + "]");
    if (!section.data().empty()) throw ConfigError("key '" + name + "' outside a section");
  }
  ConfigFile cfg;
  auto& e = cfg.experiment;
  try {
    if (const auto sec = tree.get_child_optional("experiment")) {
      detail::reject_unknown(*sec, "experiment", {"strategy", "n", "t", "b", "seeds", "cross_check", "timeout"});
      if (auto v = sec->get_optional<std::string>("strategy")) e.strategy.name = *v;
      if (auto v = sec->get_optional<std::string>("n")) e.n = detail::parse_int(*v, "n");
      if (auto v = sec->get_optional<std::string>("t")) e.t = parse_quantity(*v);
      if (auto v = sec->get_optional<std::string>("b")) e.b = parse_quantity(*v);
      if (auto v = sec->get_optional<std::string>("seeds")) e.seeds = parse_seeds(*v);
      if (auto v = sec->get_optional<std::string>("cross_check")) e.cross_check = parse_cross_check(*v);
      if (auto v = sec->get_optional<std::string>("timeout")) e.timeout_seconds = detail::parse_real(*v, "timeout");
    }
    if (const auto sec = tree.get_child_optional("params"))
      for (const auto& [key, value] : *sec) e.strategy.params[key] = value.data();
    if (const auto sec = tree.get_child_optional("sweep")) {
      detail::reject_unknown(*sec, "sweep", {"n", "t_coeffs", "b_coeffs"});
      cfg.has_sweep = true;
      if (auto v = sec->get_optional<std::string>("n"))
        for (const auto& x : detail::split_list(*v)) cfg.grid.n.push_back(detail::parse_int(x, "sweep.n"));
      if (auto v = sec->get_optional<std::string>("t_coeffs"))
        for (const auto& x : detail::split_list(*v)) cfg.grid.t_coeffs.push_back(detail::parse_real(x, "t_coeffs"));
      if (auto v = sec->get_optional<std::string>("b_coeffs"))
        for (const auto& x : detail::split_list(*v)) cfg.grid.b_coeffs.push_back(detail::parse_real(x, "b_coeffs"));
    }
  } catch (const InvalidParameter& err) {
    throw ConfigError(err.what());
  }
  return cfg;
}

inline ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  return parse_config(in);
}

}  // namespace builder
