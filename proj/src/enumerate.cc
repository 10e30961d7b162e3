#include "tprym/enumerate.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "tprym/rational.h"

namespace tprym {

namespace {

using Layout = std::vector<int>;

// Level-sequence tree generator (Wright, Richmond, Odlyzko, McKay).
std::optional<Layout> next_rooted_tree(const Layout& pred, int p = -1) {
  if (p < 0) {
    p = static_cast<int>(pred.size()) - 1;
    while (pred[p] == 1) --p;
  }
  if (p == 0) return std::nullopt;
  int q = p - 1;
  while (pred[q] != pred[p] - 1) --q;
  Layout result = pred;
  for (size_t i = p; i < result.size(); ++i) result[i] = result[i - p + q];
  return result;
}

std::pair<Layout, Layout> split_tree(const Layout& layout) {
  size_t m = layout.size();
  bool one_found = false;
  for (size_t i = 0; i < layout.size(); ++i) {
    if (layout[i] != 1) continue;
    if (one_found) {
      m = i;
      break;
    }
    one_found = true;
  }
  Layout left, rest{0};
  for (size_t i = 1; i < m; ++i) left.push_back(layout[i] - 1);
  for (size_t i = m; i < layout.size(); ++i) rest.push_back(layout[i]);
  return {left, rest};
}

int max_of(const Layout& l) { return *std::max_element(l.begin(), l.end()); }

std::optional<Layout> next_tree(const Layout& cand) {
  auto [left, rest] = split_tree(cand);
  int lh = max_of(left), rh = max_of(rest);
  bool valid = rh >= lh;
  if (valid && rh == lh) {
    if (left.size() > rest.size()) valid = false;
    else if (left.size() == rest.size() && left > rest) valid = false;
  }
  if (valid) return cand;
  int p = static_cast<int>(left.size());
  std::optional<Layout> next = next_rooted_tree(cand, p);
  if (!next) return std::nullopt;
  if (cand[p] > 2) {
    int h = max_of(split_tree(*next).first);
    int k = h + 1;
    for (int i = 0; i < k; ++i) (*next)[next->size() - k + i] = i + 1;
  }
  return next;
}

std::vector<std::pair<int, int>> layout_edges(const Layout& layout) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> stack;
  for (int i = 0; i < static_cast<int>(layout.size()); ++i) {
    if (!stack.empty()) {
      while (layout[stack.back()] >= layout[i]) stack.pop_back();
      edges.push_back({stack.back(), i});
    }
    stack.push_back(i);
  }
  return edges;
}

Graph tree_graph(int order, std::vector<std::pair<int, int>> edges) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  Graph g;
  for (int v = 0; v < order; ++v) g.add_vertex(std::to_string(v));
  for (size_t i = 0; i < edges.size(); ++i) {
    std::string id = "t" + std::to_string(i);
    g.add_edge(edges[i].first, edges[i].second, LinearForm::variable(id), id);
  }
  return g;
}

// Lift class of sheet i over an object of the given type.
int lam(int type, int i) {
  if (type == 1) return 1;
  if (type == 2) return std::min(i, 2);
  return i;
}

std::vector<int> classes(int type) {
  std::set<int> s;
  for (int i = 1; i <= 3; ++i) s.insert(lam(type, i));
  return {s.begin(), s.end()};
}

int class_size(int type, int c) {
  int n = 0;
  for (int i = 1; i <= 3; ++i) n += lam(type, i) == c;
  return n;
}

// Vertex type by the sorted tuple of incident edge types.
const std::map<std::vector<int>, int>& allowed_table() {
  static const std::map<std::vector<int>, int> table = {
      {{3}, 2},       {{1}, 1},       {{1, 2}, 1},    {{2, 3}, 2},
      {{1, 1, 3}, 1}, {{1, 2, 2}, 1}, {{2, 2, 3}, 2}, {{3, 3, 3}, 3},
  };
  return table;
}

const Perm kIdentity = {1, 2, 3};

std::vector<Perm> all_perms() {
  std::vector<Perm> out;
  Perm p = kIdentity;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Perm> edge_reps(int st, int et, int tt) {
  if (st == 1 || et == 1 || tt == 1) return {kIdentity};
  std::set<std::vector<std::array<int, 3>>> seen;
  std::vector<Perm> out;
  for (const Perm& sg : all_perms()) {
    if (et == 2 && lam(tt, sg[1]) != lam(tt, sg[2])) continue;
    std::vector<std::array<int, 3>> key;
    for (int i = 1; i <= 3; ++i) {
      if (et == 3) key.push_back({lam(st, i), lam(tt, sg[i - 1]), 0});
      else key.push_back({lam(et, i), lam(st, i), lam(tt, sg[i - 1])});
    }
    std::sort(key.begin(), key.end());
    if (et != 3) key.erase(std::unique(key.begin(), key.end()), key.end());
    if (seen.insert(key).second) out.push_back(sg);
  }
  return out;
}

int matrix_rank(std::vector<std::vector<Rational>> m) {
  int rank = 0;
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  for (size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (static_cast<int>(r) == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<Graph> trivalent_trees(int n_edges) {
  if (n_edges < 1) throw std::invalid_argument("n_edges < 1");
  const int order = n_edges + 1;
  std::vector<Graph> out;
  auto keep = [&](const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> deg(order, 0);
    for (auto [a, b] : edges) ++deg[a], ++deg[b];
    if (*std::max_element(deg.begin(), deg.end()) <= 3)
      out.push_back(tree_graph(order, edges));
  };
  if (order == 2) {
    keep({{0, 1}});
    return out;
  }
  Layout start;
  for (int i = 0; i <= order / 2; ++i) start.push_back(i);
  for (int i = 1; i < (order + 1) / 2; ++i) start.push_back(i);
  std::optional<Layout> layout = start;
  while (layout) {
    layout = next_tree(*layout);
    if (!layout) break;
    keep(layout_edges(*layout));
    layout = next_rooted_tree(*layout);
  }
  return out;
}

std::vector<TypedTree> type_markings(const Graph& tree) {
  const int ne = tree.num_edges();
  const auto& table = allowed_table();
  std::vector<TypedTree> out;
  std::vector<int> types(ne, 1);
  while (true) {
    TypedTree tt;
    tt.edge_type = types;
    bool ok = true;
    for (int v = 0; v < tree.num_vertices() && ok; ++v) {
      std::vector<int> inc;
      for (int e : tree.edges_at(v)) inc.push_back(types[e]);
      std::sort(inc.begin(), inc.end());
      auto it = table.find(inc);
      if (it == table.end()) ok = false;
      else tt.vertex_type.push_back(it->second);
    }
    if (ok) {
      tt.tree = tree;
      out.push_back(std::move(tt));
    }
    int i = ne - 1;
    while (i >= 0 && types[i] == 3) types[i--] = 1;
    if (i < 0) break;
    ++types[i];
  }
  return out;
}

std::vector<MonodromyTree> monodromy_assignments(const TypedTree& tt) {
  const Graph& t = tt.tree;
  const int ne = t.num_edges();
  std::vector<std::vector<Perm>> opts(ne);
  for (int e = 0; e < ne; ++e)
    opts[e] = edge_reps(tt.vertex_type[t.source(e)], tt.edge_type[e],
                        tt.vertex_type[t.target(e)]);
  std::vector<bool> used(ne, false);
  for (int v = 0; v < t.num_vertices(); ++v) {
    if (tt.vertex_type[v] != 3) continue;
    std::vector<int> inc = t.edges_at(v);
    std::sort(inc.begin(), inc.end(), [&](int a, int b) {
      return std::stoi(t.vertex_id(t.other_end(a, v))) <
             std::stoi(t.vertex_id(t.other_end(b, v)));
    });
    for (int e : inc)
      if (!used[e]) {
        opts[e] = {kIdentity};
        used[e] = true;
        break;
      }
  }
  std::vector<MonodromyTree> out;
  std::vector<size_t> pick(ne, 0);
  while (true) {
    MonodromyTree mt{tt, {}};
    for (int e = 0; e < ne; ++e) mt.sigma.push_back(opts[e][pick[e]]);
    out.push_back(std::move(mt));
    int i = ne - 1;
    while (i >= 0 && pick[i] + 1 == opts[i].size()) pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return out;
}

std::optional<HarmonicMorphism> realize_trigonal(const MonodromyTree& mt) {
  const TypedTree& tt = mt.typed;
  const Graph& t = tt.tree;
  HarmonicMorphism f;
  f.target = t;
  std::map<std::pair<int, int>, int> node;
  for (int v = 0; v < t.num_vertices(); ++v)
    for (int c : classes(tt.vertex_type[v])) {
      node[{v, c}] =
          f.source.add_vertex(t.vertex_id(v) + "." + std::to_string(c));
      f.vertex_map.push_back(v);
      f.vertex_degree.push_back(class_size(tt.vertex_type[v], c));
    }
  for (int e = 0; e < t.num_edges(); ++e) {
    int s = t.source(e), u = t.target(e);
    int et = tt.edge_type[e];
    for (int ec : classes(et)) {
      int d = class_size(et, ec);
      int a = node.at({s, lam(tt.vertex_type[s], ec)});
      int b = node.at({u, lam(tt.vertex_type[u], mt.sigma[e][ec - 1])});
      f.source.add_edge(a, b, t.length(e) * Rational(1, d),
                        t.edge_id(e) + "." + std::to_string(ec));
      f.half_edge_map.push_back(2 * e);
      f.half_edge_map.push_back(2 * e + 1);
      f.edge_degree.push_back(d);
    }
  }
  if (!is_connected(f.source)) return std::nullopt;
  return f;
}

bool genericity_filter(const HarmonicMorphism& f, int genus) {
  const Graph& g = f.source;
  if (betti1(g) != genus || genus < 2) return false;
  Graph h = reduce_with_map(g).graph;
  const int n = 3 * genus - 3;
  if (h.num_edges() != n) return false;
  const Graph& t = f.target;
  std::vector<std::vector<Rational>> m;
  for (int e = 0; e < h.num_edges(); ++e) {
    std::vector<Rational> row;
    for (int x = 0; x < t.num_edges(); ++x)
      row.push_back(h.length(e).coeff(var(t.edge_id(x))));
    m.push_back(std::move(row));
  }
  return matrix_rank(m) == n;
}

int tree_edges_for_genus(int genus) { return 2 * genus + 1; }

std::vector<HarmonicMorphism> generic_structures(int genus,
                                                 StageCounts* counts) {
  StageCounts local;
  StageCounts& c = counts ? *counts : local;
  c = StageCounts{};
  std::vector<HarmonicMorphism> out;
  for (const Graph& tree : trivalent_trees(tree_edges_for_genus(genus))) {
    ++c.trees;
    for (const TypedTree& tt : type_markings(tree)) {
      ++c.typed;
      for (const MonodromyTree& mt : monodromy_assignments(tt)) {
        ++c.monodromy;
        std::optional<HarmonicMorphism> f = realize_trigonal(mt);
        if (!f) continue;
        ++c.connected;
        if (!genericity_filter(*f, genus)) continue;
        ++c.generic;
        c.covers += (std::int64_t{1} << genus) - 1;
        out.push_back(std::move(*f));
      }
    }
  }
  return out;
}

std::vector<Tower> towers(int genus, StageCounts* counts) {
  std::vector<Tower> out;
  for (HarmonicMorphism& f : generic_structures(genus, counts))
    for (DoubleCover& c : enumerate_free_covers(f.source))
      out.push_back(Tower{std::move(c), f});
  return out;
}

VerificationReport run_verification(int genus,
                                    const VerificationOptions& options) {
  if (genus < 2 || genus > 4)
    throw std::invalid_argument("genus must be 2, 3 or 4");
  auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.genus = genus;
  std::vector<Tower> all = towers(genus, &rep.counts);
  const std::int64_t n = static_cast<std::int64_t>(all.size());
  rep.outcomes.resize(n);
  std::atomic<std::int64_t> next{0}, done{0};
  std::mutex progress_mutex;
  auto worker = [&]() {
    while (true) {
      std::int64_t i = next++;
      if (i >= n) return;
      TowerOutcome& o = rep.outcomes[i];
      o.index = static_cast<int>(i);
      try {
        TowerReport r = verify_tower(all[i]);
        o.genus_pi = r.genus_pi;
        o.w0_match = r.w0_match;
        o.i2_match[0] = r.i2_match[0];
        o.i2_match[1] = r.i2_match[1];
        o.q_case = r.q_case;
        o.q_zero = r.q_selected.is_zero();
      } catch (const std::exception& ex) {
        o.error = ex.what();
      }
      std::int64_t k = ++done;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        options.progress(k, n);
      }
    }
  };
  int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::set<std::string> cases;
  for (const TowerOutcome& o : rep.outcomes) {
    if (!o.error.empty()) {
      ++rep.errors;
      continue;
    }
    cases.insert(o.q_case);
    bool base = o.genus_pi == genus - 1 && o.w0_match;
    rep.genus_passed += o.genus_pi == genus - 1;
    rep.w0_passed += o.w0_match;
    for (int k = 0; k < 2; ++k) rep.passed[k] += base && o.i2_match[k];
  }
  rep.q_cases.assign(cases.begin(), cases.end());
  bool all1 = n > 0 && rep.passed[0] == n, all2 = n > 0 && rep.passed[1] == n;
  if (all1 != all2) rep.winning_coefficient = all1 ? 1 : 2;
  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace tprym
