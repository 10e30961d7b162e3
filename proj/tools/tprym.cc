#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tprym/enumerate.h"
#include "tprym/io.h"
#include "tprym/matroid.h"
#include "tprym/moments.h"
#include "tprym/oracle.h"
#include "tprym/sampling.h"
#include "tprym/trigonal.h"

using namespace tprym;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string exact_and_decimal(const Rational& q) {
  return to_string(q) + " (" + decimal(to_double(q)) + ")";
}

Json exact_json(const Rational& q) {
  return {{"exact", to_string(q)}, {"decimal", to_double(q)}};
}

Point parse_point(const std::vector<std::string>& items) {
  Point p;
  for (const std::string& s : items) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--at expects name=value, got " + s);
    try {
      p[var(s.substr(0, eq))] = parse_rational(s.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw UsageError("--at: bad rational in " + s);
    }
  }
  return p;
}

bool is_cover_json(const Json& j) {
  if (!j.contains("edges") || !j["edges"].is_array()) return false;
  for (const Json& e : j["edges"])
    if (e.is_object() && e.contains("sign")) return true;
  return false;
}

void require_point(const std::vector<Var>& vars, const Point& p) {
  for (Var v : vars)
    if (!p.count(v)) throw UsageError("--at: no value for " + var_name(v));
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json_file(out, j);
  }
}

// ---------------------------------------------------------------- moments

int cmd_moments(const std::string& file, int coefficient,
                const std::vector<std::string>& at, bool json) {
  Json in = load_json_file(file);
  Point point = parse_point(at);
  Json out;
  if (!is_cover_json(in)) {
    Graph g = graph_from_json(in);
    Polynomial w0 = w0_jac(g), p = p_jac(g), tn = tau_numerator(g);
    out["kind"] = "jacobian";
    out["genus"] = genus(g);
    out["w0"] = w0.to_string();
    out["w1"] = w1_jac(g).to_string();
    out["p"] = p.to_string();
    out["tau_numerator"] = tn.to_string();
    out["tau_identity_residual"] = tau_identity_residual(g).to_string();
    if (!at.empty()) {
      require_point(length_variables(g), point);
      Rational w = w0.evaluate(point), pv = p.evaluate(point);
      out["at"]["I0_squared"] = exact_json(w);
      out["at"]["I0"] = std::sqrt(to_double(w));
      out["at"]["I2_numerator"] = exact_json(pv / 12);
      out["at"]["I2"] = i2_jac(g).evaluate(point);
      out["at"]["tau"] = exact_json(tau(g, point));
    }
  } else {
    DoubleCover c = cover_from_json(in);
    QResult q = q_prym(c);
    MomentExpression m = i2_prym(c, coefficient);
    out["kind"] = "prym";
    out["torus_rank"] = torus_rank(c);
    out["w0"] = m.radicand.to_string();
    out["p"] = p_prym(c, coefficient).to_string();
    out["p_coefficient"] = coefficient;
    out["q_case"] = q.descriptor.name;
    out["q_roles"] = q.descriptor.roles;
    out["q"] = piecewise_to_json(q.q);
    out["q_wall_continuous"] = wall_continuity(q.q);
    out["numerator"] = piecewise_to_json(m.numerator);
    out["radicand"] = m.radicand.to_string();
    out["scale"] = to_string(m.scale);
    if (!at.empty()) {
      require_point(length_variables(c.base()), point);
      auto [num, rad] = m.evaluate_exact(point);
      out["at"]["I0_squared"] = exact_json(rad);
      out["at"]["I0"] = std::sqrt(to_double(rad));
      out["at"]["I2_numerator"] = exact_json(num);
      out["at"]["I2"] = m.evaluate(point);
    }
  }
  if (json) {
    std::cout << out.dump(2) << "\n";
    return kPass;
  }
  for (auto it = out.begin(); it != out.end(); ++it) {
    if (it.key() == "at") {
      for (auto a = it->begin(); a != it->end(); ++a) {
        if (a->is_object())
          std::cout << a.key() << ": " << (*a)["exact"].get<std::string>() << " ("
                    << decimal((*a)["decimal"].get<double>()) << ")\n";
        else
          std::cout << a.key() << ": " << decimal(a->get<double>()) << "\n";
      }
    } else if (it->is_string()) {
      std::cout << it.key() << ": " << it->get<std::string>() << "\n";
    } else {
      std::cout << it.key() << ": " << it->dump() << "\n";
    }
  }
  return kPass;
}

// ---------------------------------------------------------------- matroid

int cmd_matroid(const std::string& file, bool json) {
  DoubleCover c = cover_from_json(load_json_file(file));
  SignedMatroid m(c);
  const Graph& g = c.base();
  auto names = [&](const EdgeSet& s) {
    Json a = Json::array();
    for (int e : s) a.push_back(g.edge_id(e));
    return a;
  };
  Json out;
  out["ground"] = names(m.ground());
  out["cographic_rank"] = m.cographic_rank();
  out["graphic_rank"] = m.graphic_rank();
  out["cographic_bases"] = Json::array();
  for (const SignedBasis& b : m.cographic_bases())
    out["cographic_bases"].push_back({{"edges", names(b.edges)}, {"index", b.index}});
  bool agree = true;
  out["edge_index"] = Json::object();
  out["edge_index_by_bases"] = Json::object();
  for (int e : m.ground()) {
    int a = m.edge_index(e), b = m.edge_index_by_bases(e);
    agree = agree && a == b;
    out["edge_index"][g.edge_id(e)] = a;
    out["edge_index_by_bases"][g.edge_id(e)] = b;
  }
  out["edge_index_routes_agree"] = agree;
  for (int n : {2, 3}) {
    Json sets = Json::array();
    for (const EdgeSet& s : fs_sets(c, n)) sets.push_back(names(s));
    out["fs" + std::to_string(n)] = sets;
  }
  if (json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "ground: " << out["ground"].dump() << "\n"
              << "cographic rank: " << m.cographic_rank() << "\n"
              << "cographic bases: " << m.cographic_bases().size() << "\n";
    for (const SignedBasis& b : m.cographic_bases())
      std::cout << "  " << names(b.edges).dump() << " index " << b.index << "\n";
    std::cout << "edge index: " << out["edge_index"].dump() << "\n"
              << "edge index by cographic bases: " << out["edge_index_by_bases"].dump()
              << "\n"
              << "FS2 sets: " << out["fs2"].dump() << "\n"
              << "FS3 sets: " << out["fs3"].dump() << "\n";
  }
  return kPass;
}

// ---------------------------------------------------------------- trigonal

int cmd_trigonal_run(const std::string& file, const std::string& emit_pi,
                     int coefficient, bool json) {
  Tower t = tower_from_json(load_json_file(file));
  TowerReport r = verify_tower(t);
  if (!emit_pi.empty()) save_json_file(emit_pi, graph_to_json(build_pi(t).pi));
  int expected_genus = betti1(t.cover.base()) - 1;
  bool pass = r.genus_pi == expected_genus && r.w0_match && r.i2_match[coefficient - 1];
  Json out;
  out["genus_pi"] = r.genus_pi;
  out["w0_match"] = r.w0_match;
  out["q_case"] = r.q_case;
  out["i2_match"] = {{"1", r.i2_match[0]}, {"2", r.i2_match[1]}};
  out["w0"] = r.w0_cover.to_string();
  out["p_pi"] = r.p_pi.to_string();
  out["q"] = r.q_selected.to_string();
  out["p_coefficient"] = coefficient;
  out["pass"] = pass;
  if (json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "g(Pi): " << r.genus_pi << " (expected " << expected_genus << ")\n"
              << "w0_jac(Pi) = w0_prym: " << (r.w0_match ? "yes" : "no") << "\n"
              << "q case: " << r.q_case << "\n"
              << "p(Pi) = p + q, coefficient 1: " << (r.i2_match[0] ? "yes" : "no") << "\n"
              << "p(Pi) = p + q, coefficient 2: " << (r.i2_match[1] ? "yes" : "no") << "\n"
              << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kPass : kFail;
}

// ---------------------------------------------------------------- enumerate

Json typed_json(const TypedTree& tt) {
  Json j;
  j["tree"] = graph_to_json(tt.tree);
  j["edge_type"] = tt.edge_type;
  j["vertex_type"] = tt.vertex_type;
  return j;
}

int cmd_enumerate(const std::string& stage, int genus, bool count_only,
                  const std::string& out_file, bool json) {
  static const std::vector<std::string> stages = {"all", "trees", "typed", "monodromy",
                                                  "trigonal", "covers"};
  if (std::find(stages.begin(), stages.end(), stage) == stages.end())
    throw UsageError("unknown stage " + stage);
  if (genus < 2 || genus > 4) throw UsageError("--genus must be 2, 3 or 4");
  if (!count_only && stage == "all")
    throw UsageError("listing needs a stage (trees, typed, monodromy, trigonal, covers)");
  StageCounts c;
  Json items = Json::array();
  const int n_edges = tree_edges_for_genus(genus);
  for (const Graph& tree : trivalent_trees(n_edges)) {
    ++c.trees;
    if (!count_only && stage == "trees") items.push_back(graph_to_json(tree));
    if (stage == "trees") continue;
    for (const TypedTree& tt : type_markings(tree)) {
      ++c.typed;
      if (!count_only && stage == "typed") items.push_back(typed_json(tt));
      if (stage == "typed") continue;
      for (const MonodromyTree& mt : monodromy_assignments(tt)) {
        ++c.monodromy;
        if (!count_only && stage == "monodromy") {
          Json j = typed_json(tt);
          j["sigma"] = Json::array();
          for (const Perm& p : mt.sigma) j["sigma"].push_back(p);
          items.push_back(j);
        }
        if (stage == "monodromy") continue;
        std::optional<HarmonicMorphism> f = realize_trigonal(mt);
        if (!f) continue;
        ++c.connected;
        if (!genericity_filter(*f, genus)) continue;
        ++c.generic;
        std::int64_t k = (std::int64_t{1} << genus) - 1;
        c.covers += k;
        if (count_only) continue;
        if (stage == "trigonal") items.push_back(morphism_to_json(*f));
        if (stage == "covers")
          for (DoubleCover& cov : enumerate_free_covers(f->source))
            items.push_back(tower_to_json(Tower{std::move(cov), *f}));
      }
    }
  }
  if (!count_only) {
    emit(items, out_file);
    return kPass;
  }
  Json counts;
  auto want = [&](const std::string& s) { return stage == "all" || stage == s; };
  if (want("trees")) counts["trees"] = c.trees;
  if (want("typed")) counts["typed"] = c.typed;
  if (want("monodromy")) counts["monodromy"] = c.monodromy;
  if (want("trigonal")) {
    counts["connected"] = c.connected;
    counts["generic"] = c.generic;
  }
  if (want("covers")) counts["covers"] = c.covers;
  Json out = {{"genus", genus}, {"tree_edges", n_edges}, {"counts", counts}};
  if (json || !out_file.empty()) {
    emit(out, out_file);
  } else {
    std::cout << "genus " << genus << ", trees with " << n_edges << " edges\n";
    for (auto it = counts.begin(); it != counts.end(); ++it)
      std::cout << it.key() << ": " << it->get<std::int64_t>() << "\n";
  }
  return kPass;
}

// ---------------------------------------------------------------- verify

int cmd_verify(int genus, int coefficient, int jobs, const std::string& out_file,
               bool progress, int max_failures) {
  if (genus < 2 || genus > 4) throw UsageError("--genus must be 2, 3 or 4");
  VerificationOptions opt;
  opt.jobs = jobs;
  if (progress)
    opt.progress = [](std::int64_t done, std::int64_t total) {
      if (done % 500 == 0 || done == total)
        std::cerr << "\r" << done << "/" << total << std::flush;
    };
  VerificationReport r = run_verification(genus, opt);
  if (progress) std::cerr << "\n";
  const std::int64_t n = static_cast<std::int64_t>(r.outcomes.size());
  bool pass;
  int used;
  if (coefficient == 0) {
    used = r.winning_coefficient;
    pass = used != 0;
  } else {
    used = coefficient;
    pass = r.errors == 0 && r.passed[coefficient - 1] == n;
  }
  Json rep;
  rep["genus"] = genus;
  rep["tree_edges"] = tree_edges_for_genus(genus);
  rep["counts"] = {{"trees", r.counts.trees},         {"typed", r.counts.typed},
                   {"monodromy", r.counts.monodromy}, {"connected", r.counts.connected},
                   {"generic", r.counts.generic},     {"covers", r.counts.covers}};
  rep["towers"] = n;
  rep["genus_pi_ok"] = r.genus_passed;
  rep["w0_identity_ok"] = r.w0_passed;
  rep["i2_identity_ok"] = {{"1", r.passed[0]}, {"2", r.passed[1]}};
  rep["errors"] = r.errors;
  rep["winning_coefficient"] = r.winning_coefficient;
  rep["checked_coefficient"] = used;
  rep["q_cases"] = r.q_cases;
  rep["pass"] = pass;
  Json failures = Json::array();
  if (!pass) {
    int k = used == 0 ? 2 : used;
    std::vector<Tower> all = towers(genus, nullptr);
    for (const TowerOutcome& o : r.outcomes) {
      bool ok = o.error.empty() && o.genus_pi == genus - 1 && o.w0_match &&
                o.i2_match[k - 1];
      if (ok) continue;
      if (static_cast<int>(failures.size()) >= max_failures) break;
      failures.push_back({{"index", o.index},
                          {"error", o.error},
                          {"genus_pi", o.genus_pi},
                          {"w0_match", o.w0_match},
                          {"i2_match", {{"1", o.i2_match[0]}, {"2", o.i2_match[1]}}},
                          {"q_case", o.q_case},
                          {"tower", tower_to_json(all[o.index])}});
    }
  }
  rep["failures"] = failures;
  if (!out_file.empty()) save_json_file(out_file, rep);
  std::cout << "genus " << genus << "\n"
            << "trees " << r.counts.trees << ", typed " << r.counts.typed
            << ", monodromy " << r.counts.monodromy << ", connected "
            << r.counts.connected << ", generic " << r.counts.generic << ", covers "
            << r.counts.covers << "\n"
            << "towers " << n << ", g(Pi) ok " << r.genus_passed << ", w0 ok "
            << r.w0_passed << ", errors " << r.errors << "\n"
            << "I2 identity: coefficient 1 passes " << r.passed[0]
            << ", coefficient 2 passes " << r.passed[1] << "\n"
            << "winning coefficient: "
            << (r.winning_coefficient ? std::to_string(r.winning_coefficient) : "none")
            << "\n"
            << "q cases:";
  for (const std::string& s : r.q_cases) std::cout << " [" << s << "]";
  std::cout << "\nwall-clock " << decimal(r.seconds) << " s\n"
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kPass : kFail;
}

// ---------------------------------------------------------------- oracle

Matrix gram_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("gram: expected an array of rows");
  Matrix m;
  for (const Json& row : j) {
    if (!row.is_array()) throw std::invalid_argument("gram: expected rows");
    std::vector<Rational> r;
    for (const Json& x : row)
      r.push_back(x.is_string() ? parse_rational(x.get<std::string>())
                                : Rational(x.get<long>()));
    m.push_back(r);
  }
  return m;
}

Json gram_to_json(const Matrix& m) {
  Json j = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const Rational& x : row) r.push_back(to_string(x));
    j.push_back(r);
  }
  return j;
}

int cmd_oracle(const std::string& action, const std::string& gram_file,
               const std::string& cover_file, const std::string& graph_file,
               const std::vector<std::string>& at, std::int64_t samples,
               std::uint64_t seed, int coefficient, bool json) {
  int sources = !gram_file.empty() + !cover_file.empty() + !graph_file.empty();
  if (sources != 1) throw UsageError("give exactly one of --gram, --cover, --graph");
  Point point = parse_point(at);
  Matrix gram;
  std::optional<double> formula;
  Rational w0;
  bool have_w0 = false;
  if (!gram_file.empty()) {
    gram = gram_from_json(load_json_file(gram_file));
  } else if (!cover_file.empty()) {
    DoubleCover c = cover_from_json(load_json_file(cover_file));
    require_point(length_variables(c.base()), point);
    gram = prym_gram(c, point);
    w0 = w0_prym(c).evaluate(point);
    have_w0 = true;
    formula = i2_prym(c, coefficient).evaluate(point);
  } else {
    Graph g = graph_from_json(load_json_file(graph_file));
    require_point(length_variables(g), point);
    gram = jac_gram(g, point);
    w0 = w0_jac(g).evaluate(point);
    have_w0 = true;
    formula = i2_jac(g).evaluate(point);
  }
  Json out;
  out["gram"] = gram_to_json(gram);
  Rational det = determinant(gram);
  out["det"] = exact_json(det);
  bool ok = true;
  if (have_w0) {
    out["w0"] = exact_json(w0);
    out["det_equals_w0"] = det == w0;
    ok = det == w0;
  }
  if (action == "mc") {
    MomentEstimate m = mc_moment(gram, samples, seed);
    out["I0"] = m.i0;
    out["I2_estimate"] = m.i2;
    out["std_error"] = m.std_error;
    out["samples"] = samples;
    out["seed"] = seed;
    if (formula) {
      double z = (m.i2 - *formula) / m.std_error;
      out["I2_formula"] = *formula;
      out["z_score"] = z;
      out["within_4_std_errors"] = std::fabs(z) <= 4;
      ok = ok && std::fabs(z) <= 4;
    }
    if (gram.size() == 2) {
      Rational q = voronoi_q_2d(gram);
      out["I2_exact_2d"] = {{"sqrt_det_times", to_string(q)},
                            {"decimal", std::sqrt(to_double(det)) * to_double(q)}};
    }
  } else if (action != "gram") {
    throw UsageError("unknown oracle action " + action);
  }
  out["pass"] = ok;
  if (json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "gram: " << out["gram"].dump() << "\n"
              << "det: " << exact_and_decimal(det) << "\n";
    if (have_w0)
      std::cout << "w0: " << exact_and_decimal(w0) << (det == w0 ? " (equal)" : " (DIFFERENT)")
                << "\n";
    if (action == "mc") {
      std::cout << "I0: " << decimal(out["I0"].get<double>()) << "\n"
                << "I2 estimate: " << decimal(out["I2_estimate"].get<double>()) << " +- "
                << decimal(out["std_error"].get<double>()) << "\n";
      if (formula)
        std::cout << "I2 formula: " << decimal(*formula)
                  << "  z = " << decimal(out["z_score"].get<double>()) << "\n";
      if (out.contains("I2_exact_2d"))
        std::cout << "I2 exact: sqrt(" << to_string(det) << ") * "
                  << out["I2_exact_2d"]["sqrt_det_times"].get<std::string>() << " = "
                  << decimal(out["I2_exact_2d"]["decimal"].get<double>()) << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kPass : kFail;
}

// ---------------------------------------------------------------- conjectures

int cmd_conjecture_check(int count, std::uint64_t seed, std::int64_t samples, bool json) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> genus_pick(3, 5), vert_pick(2, 5);
  Json rows = Json::array();
  int tested = 0, agree = 0, attempts = 0;
  while (tested < count && attempts < 200 * count) {
    ++attempts;
    int g = genus_pick(rng);
    Graph base = random_graph(g, vert_pick(rng), rng, "c");
    DoubleCover c = random_free_cover(base, rng);
    if (torus_rank(c) > 4) continue;
    bool any_higher = false;
    std::vector<EdgeSet> fs2 = fs_sets(c, 2);
    for (int n = 3; n <= std::min(5, base.num_edges()) && !any_higher; ++n)
      any_higher = !fs_sets(c, n).empty();
    if (any_higher || fs2.size() > 1) continue;
    std::string which = fs2.empty() ? "no FS sets" : "one FS2 set";
    PiecewisePolynomial q;
    if (!fs2.empty()) {
      int e = fs2[0][0], f = fs2[0][1];
      std::vector<int> rest;
      for (int x = 0; x < base.num_edges(); ++x)
        if (x != e && x != f) rest.push_back(x);
      SubgraphResult sub = subgraph(base, rest);
      std::vector<int> label;
      components(sub.graph, &label);
      std::vector<int> side[2];
      for (int k = 0; k < sub.graph.num_edges(); ++k)
        side[label[sub.graph.source(k)] == label[0] ? 0 : 1].push_back(sub.edge_origin[k]);
      Polynomial w = w0_prym(restrict_cover(c, side[0])) * w0_prym(restrict_cover(c, side[1]));
      q = p2(base.length(e), base.length(f)) * PiecewisePolynomial(w);
    } else {
      q = PiecewisePolynomial(Polynomial());
    }
    Point p = random_point(length_variables(base), rng);
    MomentExpression m{q + PiecewisePolynomial(p_prym(c)), w0_prym(c), Rational(1, 12)};
    double predicted = m.evaluate(p);
    MomentEstimate est = mc_moment(prym_gram(c, p), samples, seed + tested);
    double z = (est.i2 - predicted) / est.std_error;
    bool ok = std::fabs(z) <= 4;
    ++tested;
    agree += ok;
    rows.push_back({{"case", which},
                    {"genus", g},
                    {"torus_rank", torus_rank(c)},
                    {"predicted", predicted},
                    {"estimate", est.i2},
                    {"std_error", est.std_error},
                    {"z", z},
                    {"agree", ok},
                    {"cover", cover_to_json(c)},
                    {"lengths", [&] {
                       Json l = Json::object();
                       for (auto& [v, r] : p) l[var_name(v)] = to_string(r);
                       return l;
                     }()}});
  }
  Json out = {{"tested", tested}, {"agree", agree}, {"samples", samples}, {"rows", rows}};
  if (json) {
    std::cout << out.dump(2) << "\n";
  } else {
    for (const Json& r : rows)
      std::cout << r["case"].get<std::string>() << ", g=" << r["genus"].get<int>()
                << ", t=" << r["torus_rank"].get<int>() << ": predicted "
                << decimal(r["predicted"].get<double>()) << ", estimate "
                << decimal(r["estimate"].get<double>()) << ", z = "
                << decimal(r["z"].get<double>()) << "\n";
    std::cout << agree << "/" << tested << " within 4 standard errors\n";
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical Jacobian and Prym moments"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "JSON output");

  std::string file, out_file, emit_pi, stage = "all", action;
  std::string gram_file, cover_file, graph_file;
  std::vector<std::string> at;
  int coefficient = 2, verify_coefficient = 0, genus = 4, jobs = 1, count = 20;
  int max_failures = 20;
  bool count_only = false, progress = false;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;

  auto* moments = app.add_subcommand("moments", "Volume and second-moment formulas");
  moments->add_option("file", file, "graph or cover JSON")->required();
  moments->add_option("--p-coefficient", coefficient)->check(CLI::IsMember({1, 2}));
  moments->add_option("--at", at, "length value name=rational (repeatable)");

  auto* matroid = app.add_subcommand("matroid", "Signed matroid data of a cover");
  matroid->add_option("file", file, "cover JSON")->required();

  auto* trigonal = app.add_subcommand("trigonal", "Trigonal construction");
  trigonal->require_subcommand(1);
  auto* trun = trigonal->add_subcommand("run", "Build Pi and verify a tower");
  trun->add_option("file", file, "tower JSON")->required();
  trun->add_option("--emit-pi", emit_pi, "write Pi as graph JSON");
  trun->add_option("--p-coefficient", coefficient)->check(CLI::IsMember({1, 2}));

  auto* enumerate = app.add_subcommand("enumerate", "Enumeration pipeline");
  enumerate->add_option("stage", stage, "trees|typed|monodromy|trigonal|covers");
  enumerate->add_option("--genus", genus)->check(CLI::IsMember({2, 3, 4}));
  enumerate->add_flag("--count-only", count_only);
  enumerate->add_option("--out", out_file);

  auto* verify = app.add_subcommand("verify", "Verify the second-moment identity on all towers");
  verify->add_option("--genus", genus)->check(CLI::IsMember({2, 3, 4}));
  verify->add_option("--p-coefficient", verify_coefficient, "require this coefficient")
      ->check(CLI::IsMember({1, 2}));
  verify->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  verify->add_option("--out", out_file, "report JSON");
  verify->add_option("--max-failures", max_failures, "failing towers kept in the report");
  verify->add_flag("--progress", progress);

  auto* oracle = app.add_subcommand("oracle", "Numeric lattice oracle");
  oracle->add_option("action", action, "mc|gram")->required();
  oracle->add_option("--gram", gram_file, "Gram matrix JSON");
  oracle->add_option("--cover", cover_file, "cover JSON");
  oracle->add_option("--graph", graph_file, "graph JSON");
  oracle->add_option("--at", at, "length value name=rational (repeatable)");
  oracle->add_option("--samples", samples)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  oracle->add_option("--seed", seed);
  oracle->add_option("--p-coefficient", coefficient)->check(CLI::IsMember({1, 2}));

  auto* conj = app.add_subcommand("conjecture-check",
                                  "Spot-check the conjectural formulas on random covers");
  conj->add_option("--count", count)->check(CLI::PositiveNumber);
  conj->add_option("--seed", seed);
  conj->add_option("--samples", samples)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  try {
    if (*moments) return cmd_moments(file, coefficient, at, json);
    if (*matroid) return cmd_matroid(file, json);
    if (*trun) return cmd_trigonal_run(file, emit_pi, coefficient, json);
    if (*enumerate) return cmd_enumerate(stage, genus, count_only, out_file, json);
    if (*verify) return cmd_verify(genus, verify_coefficient, jobs, out_file, progress, max_failures);
    if (*oracle)
      return cmd_oracle(action, gram_file, cover_file, graph_file, at, samples, seed,
                        coefficient, json);
    if (*conj) return cmd_conjecture_check(count, seed, samples, json);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
