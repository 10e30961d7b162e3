#include "tprym/canonical.h"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace tprym {
namespace {

// Vertex-colored simple graph with neighbor multiplicities.
struct Colored {
  std::vector<std::string> label;
  std::vector<std::vector<int>> adj;  // with repetition
};

std::vector<int> rank_strings(const std::vector<std::string>& keys) {
  std::vector<std::string> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> r(keys.size());
  for (size_t i = 0; i < keys.size(); ++i)
    r[i] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), keys[i]) -
        sorted.begin());
  return r;
}

std::vector<int> refine(const Colored& h, std::vector<int> color) {
  const size_t n = h.adj.size();
  while (true) {
    std::vector<std::string> sig(n);
    for (size_t v = 0; v < n; ++v) {
      std::vector<int> nb;
      for (int u : h.adj[v]) nb.push_back(color[u]);
      std::sort(nb.begin(), nb.end());
      std::string s = std::to_string(color[v]) + ":";
      for (int c : nb) s += std::to_string(c) + ",";
      sig[v] = s;
    }
    std::vector<int> next = rank_strings(sig);
    int before = *std::max_element(color.begin(), color.end());
    int after = *std::max_element(next.begin(), next.end());
    color = std::move(next);
    if (after == before) return color;
  }
}

std::string encode(const Colored& h, const std::vector<int>& color) {
  const size_t n = h.adj.size();
  std::vector<int> order(n);
  for (size_t v = 0; v < n; ++v) order[color[v]] = static_cast<int>(v);
  std::string out;
  for (size_t i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> nb;
    for (int u : h.adj[v]) nb.push_back(color[u]);
    std::sort(nb.begin(), nb.end());
    out += h.label[v] + "(";
    for (int c : nb) out += std::to_string(c) + ",";
    out += ")";
  }
  return out;
}

void search(const Colored& h, const std::vector<int>& color, std::string* best) {
  const int n = static_cast<int>(h.adj.size());
  std::vector<int> count(n, 0);
  for (int c : color) ++count[c];
  int cell = -1;
  for (int c = 0; c < n; ++c) {
    if (count[c] > 1) {
      cell = c;
      break;
    }
  }
  if (cell < 0) {
    std::string code = encode(h, color);
    if (best->empty() || code < *best) *best = code;
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (color[v] != cell) continue;
    // Individualize v: it precedes the rest of its cell.
    std::vector<int> c2(n);
    for (int u = 0; u < n; ++u) c2[u] = 2 * color[u] + ((u == v) ? 0 : 1);
    std::vector<std::string> keys(n);
    for (int u = 0; u < n; ++u) keys[u] = std::to_string(1000000 + c2[u]);
    search(h, refine(h, rank_strings(keys)), best);
  }
}

bool is_tree(const Graph& g) {
  if (!is_connected(g) || g.num_edges() != g.num_vertices() - 1) return false;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.vertex_genus(v) != 0) return false;
  return true;
}

}  // namespace

std::string tree_code(const Graph& g) {
  if (!is_tree(g)) throw std::invalid_argument("not a tree");
  const int n = g.num_vertices();
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < g.num_edges(); ++e) {
    adj[g.source(e)].push_back(g.target(e));
    adj[g.target(e)].push_back(g.source(e));
  }
  // Centers by repeated leaf stripping.
  std::vector<int> deg(n);
  std::vector<int> leaves;
  for (int v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    if (deg[v] <= 1) leaves.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : leaves) {
      --remaining;
      for (int u : adj[v])
        if (--deg[u] == 1) next.push_back(u);
    }
    leaves = std::move(next);
  }
  std::function<std::string(int, int)> ahu = [&](int v, int parent) {
    std::vector<std::string> kids;
    for (int u : adj[v])
      if (u != parent) kids.push_back(ahu(u, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    return s + ")";
  };
  std::vector<std::string> codes;
  for (int c : leaves) codes.push_back(ahu(c, -1));
  if (leaves.size() == 2) {
    // Root at the central edge: pair the two halves.
    std::string a = ahu(leaves[0], leaves[1]);
    std::string b = ahu(leaves[1], leaves[0]);
    if (b < a) std::swap(a, b);
    return "T2" + a + b;
  }
  return "T1" + codes.front();
}

std::string canonical_code(const Graph& g, bool with_lengths) {
  if (!with_lengths && is_tree(g)) return tree_code(g);
  // Parallel edges (and loops) with equal labels collapse into one edge node
  // carrying the multiplicity, which removes the factorial branching.
  std::map<std::tuple<int, int, std::string>, int> classes;
  for (int e = 0; e < g.num_edges(); ++e) {
    int a = std::min(g.source(e), g.target(e));
    int b = std::max(g.source(e), g.target(e));
    std::string lab = with_lengths ? g.length(e).to_string() : "";
    ++classes[{a, b, lab}];
  }
  Colored h;
  for (int v = 0; v < g.num_vertices(); ++v) {
    h.label.push_back("V" + std::to_string(g.vertex_genus(v)));
    h.adj.emplace_back();
  }
  for (const auto& [key, mult] : classes) {
    auto [a, b, lab] = key;
    int node = static_cast<int>(h.adj.size());
    h.label.push_back((a == b ? "L" : "E") + std::to_string(mult) + "[" + lab +
                      "]");
    h.adj.emplace_back();
    h.adj[node].push_back(a);
    h.adj[a].push_back(node);
    if (a != b) {
      h.adj[node].push_back(b);
      h.adj[b].push_back(node);
    }
  }
  std::vector<int> color = refine(h, rank_strings(h.label));
  std::string best;
  search(h, color, &best);
  return "G" + best;
}

}  // namespace tprym
