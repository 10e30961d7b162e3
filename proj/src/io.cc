#include "tprym/io.h"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tprym {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

const Json& field(const Json& j, const std::string& key,
                  const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

LinearForm parse_length(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return LinearForm(Rational(j.get<long>()));
    return LinearForm::parse(as_string(j, where));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

std::string length_text(const LinearForm& f) { return f.to_string(); }

}  // namespace

Graph graph_from_json(const Json& j) {
  Graph g;
  const Json& vs = field(j, "vertices", "graph");
  if (!vs.is_array()) fail("vertices", "expected an array");
  for (size_t i = 0; i < vs.size(); ++i) {
    std::string w = "vertices[" + std::to_string(i) + "]";
    std::string id = as_string(field(vs[i], "id", w), w + ".id");
    int genus = 0;
    if (vs[i].contains("genus")) {
      const Json& gj = vs[i]["genus"];
      if (!gj.is_number_integer() || gj.get<int>() < 0) {
        fail(w + ".genus", "expected a nonnegative integer");
      }
      genus = gj.get<int>();
    }
    if (g.find_vertex(id) >= 0) fail(w + ".id", "duplicate vertex id " + id);
    g.add_vertex(id, genus);
  }
  const Json& es = field(j, "edges", "graph");
  if (!es.is_array()) fail("edges", "expected an array");
  for (size_t i = 0; i < es.size(); ++i) {
    std::string w = "edges[" + std::to_string(i) + "]";
    std::string id = as_string(field(es[i], "id", w), w + ".id");
    const Json& ends = field(es[i], "ends", w);
    if (!ends.is_array() || ends.size() != 2) fail(w + ".ends", "expected two ids");
    int u = g.find_vertex(as_string(ends[0], w + ".ends[0]"));
    int v = g.find_vertex(as_string(ends[1], w + ".ends[1]"));
    if (u < 0 || v < 0) fail(w + ".ends", "unknown vertex");
    if (g.find_edge(id) >= 0) fail(w + ".id", "duplicate edge id " + id);
    LinearForm len = es[i].contains("length")
                         ? parse_length(es[i]["length"], w + ".length")
                         : LinearForm::variable(id);
    if (len.is_zero() || !len.nonneg_coefficients()) {
      fail(w + ".length", "length must be a nonzero form with nonnegative coefficients");
    }
    g.add_edge(u, v, len, id);
  }
  return g;
}

Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v)
    j["vertices"].push_back({{"id", g.vertex_id(v)}, {"genus", g.vertex_genus(v)}});
  j["edges"] = Json::array();
  for (int e = 0; e < g.num_edges(); ++e) {
    j["edges"].push_back({{"id", g.edge_id(e)},
                          {"ends", {g.vertex_id(g.source(e)), g.vertex_id(g.target(e))}},
                          {"length", length_text(g.length(e))}});
  }
  return j;
}

DoubleCover cover_from_json(const Json& j) {
  Graph g = graph_from_json(j);
  const Json& es = j["edges"];
  std::vector<Marking> m;
  for (size_t i = 0; i < es.size(); ++i) {
    std::string w = "edges[" + std::to_string(i) + "].sign";
    if (!es[i].contains("sign")) fail(w, "missing");
    const Json& s = es[i]["sign"];
    if (s.is_number_integer() && s.get<int>() == 1) m.push_back(Marking::kPlus);
    else if (s.is_number_integer() && s.get<int>() == -1) m.push_back(Marking::kMinus);
    else if (s.is_string() && s.get<std::string>() == "dilated") m.push_back(Marking::kDilated);
    else fail(w, "expected 1, -1 or \"dilated\"");
  }
  std::vector<bool> declared(g.num_vertices(), false);
  const Json& vs = j["vertices"];
  for (size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].contains("dilated")) continue;
    const Json& d = vs[i]["dilated"];
    if (!d.is_boolean()) fail("vertices[" + std::to_string(i) + "].dilated", "expected a boolean");
    declared[i] = d.get<bool>();
  }
  return DoubleCover(g, m, declared);
}

Json cover_to_json(const DoubleCover& c) {
  Json j = graph_to_json(c.base());
  for (int v = 0; v < c.base().num_vertices(); ++v)
    if (c.declared_dilated(v)) j["vertices"][v]["dilated"] = true;
  for (int e = 0; e < c.base().num_edges(); ++e) {
    if (c.edge_dilated(e)) j["edges"][e]["sign"] = "dilated";
    else j["edges"][e]["sign"] = c.sign(e);
  }
  return j;
}

namespace {

void write_maps(const HarmonicMorphism& f, Json& j) {
  j["tree"] = graph_to_json(f.target);
  Json vm = Json::object(), em = Json::object();
  for (int v = 0; v < f.source.num_vertices(); ++v)
    vm[f.source.vertex_id(v)] = {{"to", f.target.vertex_id(f.vertex_map[v])},
                                 {"degree", f.vertex_degree[v]}};
  for (int e = 0; e < f.source.num_edges(); ++e) {
    int h = f.half_edge_map[2 * e];
    em[f.source.edge_id(e)] = {{"to", f.target.edge_id(Graph::edge_of(h))},
                               {"reversed", h % 2 == 1},
                               {"degree", f.edge_degree[e]}};
  }
  j["vertex_map"] = vm;
  j["edge_map"] = em;
}

}  // namespace

Json morphism_to_json(const HarmonicMorphism& f) {
  Json j;
  j["graph"] = graph_to_json(f.source);
  write_maps(f, j);
  return j;
}

Json tower_to_json(const Tower& t) {
  Json j;
  j["cover"] = cover_to_json(t.cover);
  write_maps(t.trig, j);
  return j;
}

Tower tower_from_json(const Json& j) {
  Tower t;
  try {
    t.cover = cover_from_json(field(j, "cover", "tower"));
  } catch (const std::invalid_argument& e) {
    fail("cover", e.what());
  }
  HarmonicMorphism& f = t.trig;
  f.source = t.cover.base();
  try {
    f.target = graph_from_json(field(j, "tree", "tower"));
  } catch (const std::invalid_argument& e) {
    fail("tree", e.what());
  }
  const Json& vm = field(j, "vertex_map", "tower");
  const Json& em = field(j, "edge_map", "tower");
  auto degree = [](const Json& d, const std::string& w) {
    if (!d.is_number_integer() || d.get<int>() < 1 || d.get<int>() > 3)
      fail(w, "expected an integer in 1..3");
    return d.get<int>();
  };
  for (int v = 0; v < f.source.num_vertices(); ++v) {
    std::string w = "vertex_map." + f.source.vertex_id(v);
    const Json& x = field(vm, f.source.vertex_id(v), "vertex_map");
    int to = f.target.find_vertex(as_string(field(x, "to", w), w + ".to"));
    if (to < 0) fail(w + ".to", "unknown tree vertex");
    f.vertex_map.push_back(to);
    f.vertex_degree.push_back(degree(field(x, "degree", w), w + ".degree"));
  }
  f.half_edge_map.assign(f.source.num_half_edges(), -1);
  for (int e = 0; e < f.source.num_edges(); ++e) {
    std::string w = "edge_map." + f.source.edge_id(e);
    const Json& x = field(em, f.source.edge_id(e), "edge_map");
    int to = f.target.find_edge(as_string(field(x, "to", w), w + ".to"));
    if (to < 0) fail(w + ".to", "unknown tree edge");
    const Json& rev = field(x, "reversed", w);
    if (!rev.is_boolean()) fail(w + ".reversed", "expected a boolean");
    int r = rev.get<bool>() ? 1 : 0;
    f.half_edge_map[2 * e] = 2 * to + r;
    f.half_edge_map[2 * e + 1] = 2 * to + 1 - r;
    f.edge_degree.push_back(degree(field(x, "degree", w), w + ".degree"));
  }
  check_tower(t);
  return t;
}

Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json mon = Json::object();
    for (const auto& [v, k] : m.factors()) mon[var_name(v)] = k;
    out.push_back({{"coeff", to_string(c)}, {"monomial", mon}});
  }
  return out;
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) fail("polynomial", "expected an array of terms");
  PolyAccumulator acc;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string w = "polynomial[" + std::to_string(i) + "]";
    Rational c = parse_rational(as_string(field(j[i], "coeff", w), w + ".coeff"));
    Monomial m;
    const Json& mon = field(j[i], "monomial", w);
    if (!mon.is_object()) fail(w + ".monomial", "expected an object");
    for (auto it = mon.begin(); it != mon.end(); ++it) {
      if (!it.value().is_number_unsigned()) fail(w + ".monomial", "bad exponent");
      m = m * Monomial::of(var(it.key()), it.value().get<unsigned>());
    }
    acc.add(m, c);
  }
  return acc.finish();
}

Json piecewise_to_json(const PiecewisePolynomial& pp) {
  Json out = Json::array();
  for (const Piece& p : pp.pieces()) {
    Json ineq = Json::array();
    for (const auto& f : p.cone.inequalities) ineq.push_back(f.to_string() + " >= 0");
    out.push_back({{"cone", ineq}, {"polynomial", p.poly.to_string()}});
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(path + ": cannot write");
  out << j.dump(2) << "\n";
}

}  // namespace tprym
