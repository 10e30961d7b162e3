#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "tprym/io.h"
#include "tprym/oracle.h"
#include "tprym/sampling.h"

namespace tprym::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(TPRYM_FIXTURE_DIR) + "/" + name + ".json";
}

inline Graph load_graph(const std::string& name) {
  return graph_from_json(load_json_file(fixture_path(name)));
}

inline DoubleCover load_cover(const std::string& name) {
  return cover_from_json(load_json_file(fixture_path(name)));
}

inline const std::vector<std::string>& cover_fixtures() {
  static const std::vector<std::string> names = {
      "dumbbell", "theta_one_odd", "two_odd_loops", "fs2", "fs3", "genus3_fs2",
      "prism",    "k4_one_odd",    "theta_dilated_edges"};
  return names;
}

inline const std::vector<std::string>& graph_fixtures() {
  static const std::vector<std::string> names = {"loop", "theta", "dumbbell_graph"};
  return names;
}

inline Polynomial P(const std::string& s) { return Polynomial::parse(s); }
inline LinearForm L(const std::string& s) { return LinearForm::parse(s); }
inline Rational Q(const std::string& s) { return parse_rational(s); }

inline Point point(std::initializer_list<std::pair<const char*, const char*>> items) {
  Point p;
  for (auto& [k, v] : items) p[var(k)] = parse_rational(v);
  return p;
}

inline Point all_ones(const Graph& g) {
  Point p;
  for (Var v : length_variables(g)) p[v] = 1;
  return p;
}

}  // namespace tprym::test
