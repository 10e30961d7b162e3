#include "tprym/moments.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tprym {
namespace {

Polynomial product_outside(const Graph& g, const std::vector<bool>& in) {
  std::vector<LinearForm> f;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!in[e]) f.push_back(g.length(e));
  return product(f);
}

LinearForm total_length(const Graph& g) {
  LinearForm l;
  for (int e = 0; e < g.num_edges(); ++e) l = l + g.length(e);
  return l;
}

std::vector<bool> membership(const Graph& g, const EdgeSet& s) {
  std::vector<bool> in(g.num_edges(), false);
  for (int e : s) in[e] = true;
  return in;
}

}  // namespace

Polynomial w0_jac(const Graph& g) {
  PolyAccumulator acc;
  for (const EdgeSet& t : spanning_trees(g))
    acc.add(product_outside(g, membership(g, t)));
  return acc.finish();
}

Polynomial w1_jac(const Graph& g) {
  int k = g.num_vertices() - 2;
  if (k < 0) return Polynomial();
  PolyAccumulator acc;
  for (const EdgeSet& f : independent_sets_k(g, k))
    acc.add(product_outside(g, membership(g, f)));
  return acc.finish();
}

Polynomial tree_length_sum(const Graph& g) {
  PolyAccumulator acc;
  for (const EdgeSet& t : spanning_trees(g)) {
    std::vector<bool> in = membership(g, t);
    LinearForm lt;
    for (int e = 0; e < g.num_edges(); ++e)
      if (!in[e]) lt = lt + g.length(e);
    acc.add(product_outside(g, in) * Polynomial(lt));
  }
  return acc.finish();
}

Polynomial p_jac(const Graph& g) {
  return Polynomial(2) * w0_jac(g) * Polynomial(total_length(g)) -
         tree_length_sum(g) - Polynomial(2) * w1_jac(g);
}

MomentExpression i2_jac(const Graph& g) {
  return MomentExpression{PiecewisePolynomial(p_jac(g)), w0_jac(g),
                          Rational(1, 12)};
}

Polynomial tau_numerator(const Graph& g) {
  return Polynomial(-1) * Polynomial(total_length(g)) * w0_jac(g) +
         Polynomial(2) * tree_length_sum(g) + Polynomial(4) * w1_jac(g);
}

Rational tau(const Graph& g, const std::map<Var, Rational>& point) {
  Rational w0 = w0_jac(g).evaluate(point);
  if (w0 == 0) throw std::domain_error("w0 vanishes");
  Rational r = tau_numerator(g).evaluate(point) / (12 * w0);
  r.canonicalize();
  return r;
}

Polynomial tau_identity_residual(const Graph& g) {
  return Polynomial(4) * tau_numerator(g) + Polynomial(8) * p_jac(g) -
         Polynomial(12) * w0_jac(g) * Polynomial(total_length(g));
}

Polynomial w0_prym(const DoubleCover& c) {
  SignedMatroid sm(c);
  const Graph& g = c.base();
  PolyAccumulator acc;
  for (const SignedBasis& b : sm.cographic_bases()) {
    std::vector<LinearForm> f;
    for (int e : b.edges) f.push_back(g.length(e));
    acc.add(product(f) * Polynomial(Rational(b.index)));
  }
  return acc.finish();
}

Polynomial p_prym(const DoubleCover& c, int coefficient) {
  if (coefficient != 1 && coefficient != 2) {
    throw std::invalid_argument("p coefficient must be 1 or 2");
  }
  SignedMatroid sm(c);
  const Graph& g = c.base();
  std::vector<int> idx(g.num_edges(), 0);
  LinearForm weighted;
  for (int e : sm.ground()) {
    idx[e] = sm.edge_index(e);
    weighted = weighted + g.length(e) * Rational(idx[e]);
  }
  PolyAccumulator w0, bases;
  for (const SignedBasis& b : sm.cographic_bases()) {
    std::vector<LinearForm> f;
    LinearForm outside;
    for (int e : b.edges) {
      f.push_back(g.length(e));
      outside = outside + g.length(e) * Rational(idx[e]);
    }
    Polynomial w = product(f) * Polynomial(Rational(b.index));
    w0.add(w);
    bases.add(w * Polynomial(outside));
  }
  PolyAccumulator forests;
  for (const EdgeSet& f : sm.corank_one_independent_sets())
    forests.add(sm.weight(f) * Polynomial(Rational(sm.independent_index(f))));
  return Polynomial(2) * w0.finish() * Polynomial(weighted) - bases.finish() -
         Polynomial(coefficient) * forests.finish();
}

PiecewisePolynomial p2(const LinearForm& a, const LinearForm& b) {
  Polynomial pa(a), pb(b);
  Polynomial lo = Polynomial(4) * pa * pa * (Polynomial(3) * pb - pa);
  Polynomial hi = Polynomial(4) * pb * pb * (Polynomial(3) * pa - pb);
  return PiecewisePolynomial(
      {Piece{Cone{{b - a}}, lo}, Piece{Cone{{a - b}}, hi}});
}

PiecewisePolynomial p3(const LinearForm& x, const LinearForm& y,
                       const LinearForm& z) {
  auto branch = [](const LinearForm& m, const LinearForm& u,
                   const LinearForm& v) {
    Polynomial pm(m), pu(u), pv(v);
    Polynomial inner = pm * pm - Polynomial(2) * pm * pu -
                       Polynomial(2) * pm * pv + Polynomial(6) * pu * pv;
    return Piece{Cone{{u - m, v - m}}, Polynomial(2) * pm * pm * inner};
  };
  return PiecewisePolynomial(
      {branch(x, y, z), branch(y, x, z), branch(z, x, y)});
}

Polynomial s_block(const LinearForm& e1, const LinearForm& e2,
                   const LinearForm& e3) {
  Polynomial a(e1), b(e2), c(e3);
  Polynomial s1 = a + b + c;
  Polynomial s2 = a * b + a * c + b * c;
  Polynomial s3 = a * b * c;
  return Polynomial(2) * s1.pow(4) - Polynomial(16) * s1 * s1 * s2 +
         Polynomial(32) * s2 * s2 + Polynomial(16) * s1 * s3;
}

namespace {

class QBuilder {
 public:
  explicit QBuilder(const DoubleCover& c) : c_(c), g_(c.base()) {}

  QResult build();

 private:
  LinearForm L(int e) const { return g_.length(e); }
  Polynomial P(int e) const { return Polynomial(g_.length(e)); }
  static Cone ge(const LinearForm& a, const LinearForm& b) {
    return Cone{{a - b}};
  }
  // Edges of the component of the graph minus `removed` containing edge x.
  EdgeSet component_of(const EdgeSet& removed, int x) const;
  std::vector<EdgeSet> components_without(const EdgeSet& removed) const;
  Polynomial W(const EdgeSet& edges) const {
    return w0_prym(restrict_cover(c_, edges));
  }
  [[noreturn]] void unmatched(const std::string& why) const {
    throw std::logic_error("unmatched q configuration: " + r_.descriptor.name +
                           ": " + why);
  }
  void role(const std::string& name, int e) {
    r_.descriptor.roles[name] = g_.edge_id(e);
  }

  PiecewisePolynomial case_0_1();
  PiecewisePolynomial case_1_0();
  PiecewisePolynomial case_1_1();
  PiecewisePolynomial case_1_2();
  PiecewisePolynomial case_2_0();
  PiecewisePolynomial case_2_1();
  PiecewisePolynomial case_2_2();
  PiecewisePolynomial case_3_k();

  const DoubleCover& c_;
  const Graph& g_;
  QResult r_;
};

EdgeSet QBuilder::component_of(const EdgeSet& removed, int x) const {
  std::vector<bool> keep(g_.num_edges(), true);
  for (int e : removed) keep[e] = false;
  std::vector<int> label;
  components(g_, keep, &label);
  EdgeSet out;
  int l = label[g_.source(x)];
  for (int e = 0; e < g_.num_edges(); ++e)
    if (keep[e] && label[g_.source(e)] == l) out.push_back(e);
  return out;
}

std::vector<EdgeSet> QBuilder::components_without(const EdgeSet& removed) const {
  std::vector<bool> keep(g_.num_edges(), true);
  for (int e : removed) keep[e] = false;
  std::vector<int> label;
  int n = components(g_, keep, &label);
  std::vector<EdgeSet> out(n);
  for (int e = 0; e < g_.num_edges(); ++e)
    if (keep[e]) out[label[g_.source(e)]].push_back(e);
  return out;
}

bool contains(const EdgeSet& s, int e) {
  return std::find(s.begin(), s.end(), e) != s.end();
}

EdgeSet sorted(EdgeSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

PiecewisePolynomial QBuilder::case_0_1() {
  const EdgeSet& s = r_.descriptor.fs3_sets[0];
  role("e", s[0]);
  role("f", s[1]);
  role("g", s[2]);
  return p3(L(s[0]), L(s[1]), L(s[2]));
}

PiecewisePolynomial QBuilder::case_1_0() {
  const EdgeSet& s = r_.descriptor.fs2_sets[0];
  int e = s[0], f = s[1];
  role("e", e);
  role("f", f);
  std::vector<EdgeSet> comps = components_without(s);
  if (comps.size() != 2) unmatched("FS2 removal is not two components");
  for (const EdgeSet& comp : comps) {
    SubgraphResult sg = subgraph(g_, comp);
    if (betti1(sg.graph) == 2) return p2(L(e), L(f)) * W(comp);
  }
  unmatched("no genus-2 side");
}

PiecewisePolynomial QBuilder::case_1_1() {
  const EdgeSet& a = r_.descriptor.fs2_sets[0];
  const EdgeSet& b = r_.descriptor.fs3_sets[0];
  int e = -1, f = -1;
  for (int x : a) (contains(b, x) ? e : f) = x;
  if (e < 0 || f < 0) unmatched("FS2 and FS3 sets do not share one edge");
  EdgeSet gh;
  for (int x : b)
    if (x != e) gh.push_back(x);
  int g = gh[0], h = gh[1];
  role("e", e);
  role("f", f);
  role("g", g);
  role("h", h);
  EdgeSet side = component_of(a, g);
  if (!contains(side, h)) unmatched("g and h separated");
  Polynomial w2 = W(side);
  LinearForm le = L(e), lf = L(f);
  PiecewisePolynomial low =
      p2(le, lf) * w2 + Polynomial(12) * P(e) * P(e) * P(g) * P(h);
  PiecewisePolynomial high =
      p3(le - lf, L(g), L(h)) + p2(lf, le) * w2 +
      Polynomial(12) * P(f) * P(g) * P(h) * Polynomial(le * Rational(2) - lf);
  return PiecewisePolynomial::join(
      {low.restricted(ge(lf, le)), high.restricted(ge(le, lf))});
}

PiecewisePolynomial QBuilder::case_1_2() {
  const EdgeSet& a = r_.descriptor.fs2_sets[0];
  const auto& t = r_.descriptor.fs3_sets;
  int e[2] = {a[0], a[1]}, f[2], gg[2];
  for (int i = 0; i < 2; ++i) {
    const EdgeSet* own = nullptr;
    for (const EdgeSet& s : t) {
      bool has = contains(s, e[i]), other = contains(s, e[1 - i]);
      if (has && !other) own = own ? nullptr : &s;
    }
    if (!own) unmatched("FS3 sets do not split the FS2 set");
    EdgeSet rest;
    for (int x : *own)
      if (x != e[i]) rest.push_back(x);
    f[i] = rest[0];
    gg[i] = rest[1];
  }
  for (int i = 0; i < 2; ++i) {
    role("e" + std::to_string(i + 1), e[i]);
    role("f" + std::to_string(i + 1), f[i]);
    role("g" + std::to_string(i + 1), gg[i]);
  }
  EdgeSet side = component_of(a, f[0]);
  for (int x : {f[1], gg[0], gg[1]})
    if (!contains(side, x)) unmatched("triangles separated");
  Polynomial w = W(side);
  // Formula on the cone e_i <= e_j.
  auto branch = [&](int i, int j) {
    Polynomial ei = P(e[i]), ej = P(e[j]);
    Polynomial fjgj = P(f[j]) * P(gg[j]);
    PiecewisePolynomial v =
        p3(L(e[j]) - L(e[i]), L(f[j]), L(gg[j])) + p2(L(e[i]), L(e[j])) * w -
        Polynomial(12) * ei * ei * fjgj + Polynomial(24) * ei * ej * fjgj +
        Polynomial(12) * ei * ei * P(f[i]) * P(gg[i]);
    return v.restricted(ge(L(e[j]), L(e[i])));
  };
  return PiecewisePolynomial::join({branch(0, 1), branch(1, 0)});
}

PiecewisePolynomial QBuilder::case_2_0() {
  const EdgeSet& a = r_.descriptor.fs2_sets[0];
  const EdgeSet& b = r_.descriptor.fs2_sets[1];
  EdgeSet common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  if (common.empty()) {
    r_.descriptor.name += ",disjoint";
    int e1 = a[0], f1 = a[1], e2 = b[0], f2 = b[1];
    role("e1", e1);
    role("f1", f1);
    role("e2", e2);
    role("f2", f2);
    Polynomial w1 = W(component_of(b, e1));
    Polynomial w2 = W(component_of(a, e2));
    return p2(L(e1), L(f1)) * w2 + p2(L(e2), L(f2)) * w1 +
           Polynomial(24) * P(e1) * P(e2) * P(f1) * P(f2);
  }
  if (common.size() != 1) unmatched("FS2 sets coincide");
  r_.descriptor.name += ",common";
  int e = common[0];
  int f = a[0] == e ? a[1] : a[0];
  int g = b[0] == e ? b[1] : b[0];
  role("e", e);
  role("f", f);
  role("g", g);
  Polynomial h = W(component_of(a, g));
  return p2(L(e), L(f) + L(g)) * h;
}

PiecewisePolynomial QBuilder::case_2_1() {
  const EdgeSet& a = r_.descriptor.fs2_sets[0];
  const EdgeSet& b = r_.descriptor.fs2_sets[1];
  const EdgeSet& t = r_.descriptor.fs3_sets[0];
  EdgeSet common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  if (common.size() != 1 || !contains(t, common[0])) {
    unmatched("sets do not share a unique edge");
  }
  int e = common[0];
  int f1 = a[0] == e ? a[1] : a[0];
  int f2 = b[0] == e ? b[1] : b[0];
  EdgeSet gh;
  for (int x : t)
    if (x != e) gh.push_back(x);
  if (contains(gh, f1) || contains(gh, f2)) unmatched("FS3 meets f1 or f2");
  int g = gh[0], h = gh[1];
  role("e", e);
  role("f1", f1);
  role("f2", f2);
  role("g", g);
  role("h", h);
  Polynomial w1 = W(component_of(b, f1));
  Polynomial w2 = W(component_of(a, f2));
  LinearForm le = L(e), lf = L(f1) + L(f2);
  Polynomial pg = P(g), ph = P(h), pf1 = P(f1), pf2 = P(f2);
  PiecewisePolynomial low = p2(le, lf) * (pg + ph) +
                            Polynomial(12) * P(e) * P(e) * pg * ph;
  PiecewisePolynomial high =
      p3(le - lf, L(g), L(h)) + p2(L(f1), le) * w2 + p2(L(f2), le) * w1 +
      Polynomial(12) * Polynomial(le * Rational(2) - lf) *
          ((pf1 + pf2) * pg * ph + pf1 * pf2 * (pg + ph));
  return PiecewisePolynomial::join(
      {low.restricted(ge(lf, le)), high.restricted(ge(le, lf))});
}

PiecewisePolynomial QBuilder::case_2_2() {
  const EdgeSet& s1 = r_.descriptor.fs2_sets[0];
  const EdgeSet& s2 = r_.descriptor.fs2_sets[1];
  const EdgeSet& ta = r_.descriptor.fs3_sets[0];
  const EdgeSet& tb = r_.descriptor.fs3_sets[1];
  int e1 = -1, f1 = -1, e2 = -1, f2 = -1, g = -1;
  for (int x : ta) {
    if (contains(s1, x)) e1 = x;
    else if (contains(s2, x)) f2 = x;
    else g = x;
  }
  if (e1 < 0 || f2 < 0 || g < 0) unmatched("FS3 set does not meet both");
  f1 = s1[0] == e1 ? s1[1] : s1[0];
  e2 = s2[0] == f2 ? s2[1] : s2[0];
  if (tb != sorted({e2, f1, g})) unmatched("second FS3 set");
  role("e1", e1);
  role("f1", f1);
  role("e2", e2);
  role("f2", f2);
  role("g", g);
  Polynomial w1 = W(component_of(s2, e1));
  Polynomial w2 = W(component_of(s1, e2));
  Polynomial pg = P(g);
  // Cone E1 >= F1, E2 >= F2.
  auto same = [&](int E1, int F1, int E2, int F2) {
    Polynomial a1 = P(E1), b1 = P(F1), a2 = P(E2), b2 = P(F2);
    PiecewisePolynomial v =
        p2(L(E1), L(F1)) * w2 + p2(L(E2), L(F2)) * w1 +
        Polynomial(12) * pg *
            (a1 * b2 * b2 + a2 * b1 * b1 + Polynomial(2) * (a1 + a2) * b1 * b2 -
             (b1 + b2) * b1 * b2) +
        Polynomial(24) * a1 * a2 * b1 * b2;
    return v.restricted(ge(L(E1), L(F1)).intersect(ge(L(E2), L(F2))));
  };
  // Cone E1 >= F1, F2 >= E2.
  auto mixed = [&](int E1, int F1, int E2, int F2) {
    Polynomial a1 = P(E1), b1 = P(F1), a2 = P(E2), b2 = P(F2);
    PiecewisePolynomial v =
        p2(L(E1), L(F1)) * w2 + p2(L(E2), L(F2)) * w1 +
        p3(L(E1) - L(F1), L(F2) - L(E2), L(g)) +
        Polynomial(12) * pg *
            (Polynomial(-1) * a1 * a2 * a2 - b1 * b1 * b2 + a2 * a2 * b1 +
             a2 * b1 * b1 + Polynomial(2) * a1 * a2 * b2 +
             Polynomial(2) * a1 * b1 * b2) +
        Polynomial(24) * a1 * a2 * b1 * b2;
    return v.restricted(ge(L(E1), L(F1)).intersect(ge(L(F2), L(E2))));
  };
  return PiecewisePolynomial::join({same(e1, f1, e2, f2), same(f1, e1, f2, e2),
                                    mixed(e1, f1, e2, f2),
                                    mixed(f1, e1, f2, e2)});
}

PiecewisePolynomial QBuilder::case_3_k() {
  const auto& fs2 = r_.descriptor.fs2_sets;
  std::set<int> all;
  for (const EdgeSet& s : fs2) all.insert(s.begin(), s.end());
  if (all.size() != 3) unmatched("FS2 sets do not span three edges");
  std::vector<int> edges(all.begin(), all.end());
  struct Blob {
    int e, f, g;
    bool digon;
    EdgeSet side;  // component containing e, without the other two
  };
  std::vector<Blob> blobs;
  for (int i = 0; i < 3; ++i) {
    int e = edges[i];
    EdgeSet removed;
    for (int j = 0; j < 3; ++j)
      if (j != i) removed.push_back(edges[j]);
    std::vector<EdgeSet> comps = components_without(removed);
    if (comps.size() != 2) unmatched("FS2 removal is not two components");
    const EdgeSet& side = contains(comps[0], e) ? comps[0] : comps[1];
    const EdgeSet& blob = contains(comps[0], e) ? comps[1] : comps[0];
    if (blob.size() != 2) unmatched("blob is not two edges");
    Blob b{e, blob[0], blob[1], false, side};
    if (g_.is_loop(b.f)) std::swap(b.f, b.g);
    if (g_.is_loop(b.g)) {
      b.digon = false;
    } else {
      b.digon = true;
      EdgeSet fs3 = sorted({e, b.f, b.g});
      const auto& t = r_.descriptor.fs3_sets;
      if (std::find(t.begin(), t.end(), fs3) == t.end()) {
        unmatched("digon without FS3 set");
      }
    }
    blobs.push_back(b);
  }
  int k = static_cast<int>(r_.descriptor.fs3_sets.size());
  int ndigon = 0;
  for (const Blob& b : blobs) ndigon += b.digon;
  if (ndigon != k) unmatched("digon count differs from FS3 count");
  // Digon blobs first, so (3,1) has its digon at label 1 and (3,2) its loop
  // at label 3.
  std::stable_sort(blobs.begin(), blobs.end(),
                   [](const Blob& a, const Blob& b) { return a.digon > b.digon; });
  for (int i = 0; i < 3; ++i) {
    std::string n = std::to_string(i + 1);
    role("e" + n, blobs[i].e);
    role("f" + n, blobs[i].f);
    role("g" + n, blobs[i].g);
  }
  LinearForm e[3], lam[3];
  Polynomial pe[3], pf[3], pgg[3], fg[3], lp[3];
  Polynomial w[3];
  for (int i = 0; i < 3; ++i) {
    e[i] = L(blobs[i].e);
    pe[i] = P(blobs[i].e);
    pf[i] = P(blobs[i].f);
    pgg[i] = P(blobs[i].g);
    fg[i] = pf[i] * pgg[i];
    lam[i] = blobs[i].digon ? L(blobs[i].f) + L(blobs[i].g)
                            : L(blobs[i].f) * Rational(4) + L(blobs[i].g);
    lp[i] = Polynomial(lam[i]);
    w[i] = W(blobs[i].side);
  }
  const Polynomial twelve(12);
  LinearForm s1 = e[0] + e[1] + e[2];
  Polynomial S = s_block(e[0], e[1], e[2]);

  // Cone e_i >= e_j + e_k.
  auto dominant = [&](int i) {
    int j = (i + 1) % 3, kk = (i + 2) % 3;
    if (j > kk) std::swap(j, kk);
    PiecewisePolynomial v = p2(e[j], e[i]) * w[kk] + p2(e[kk], e[i]) * w[j];
    Polynomial excess(e[i] * Rational(2) - e[j] - e[kk]);
    Polynomial extra;
    if (blobs[i].digon) {
      v += p3(e[i] - e[j] - e[kk], L(blobs[i].f), L(blobs[i].g));
      extra += excess * ((pe[j] + pe[kk]) * fg[i] +
                         pe[j] * pe[kk] * (pf[i] + pgg[i]));
    } else {
      extra += excess * pe[j] * pe[kk] * lp[i];
    }
    for (int x : {j, kk}) {
      int y = x == j ? kk : j;
      extra += pe[x] * pe[x] * pe[y] * lp[x];
      if (blobs[x].digon) extra += pe[x] * pe[x] * fg[x];
    }
    v += twelve * extra;
    return v.restricted(Cone{{e[i] - e[j] - e[kk]}});
  };
  PiecewisePolynomial central = S;
  for (int i = 0; i < 3; ++i) {
    central += p2(e[i], s1 - e[i]) * lp[i];
    if (blobs[i].digon) central += twelve * pe[i] * pe[i] * fg[i];
  }
  central = central.restricted(
      Cone{{e[1] + e[2] - e[0], e[0] + e[2] - e[1], e[0] + e[1] - e[2]}});
  return PiecewisePolynomial::join(
      {dominant(0), dominant(1), dominant(2), central});
}

QResult QBuilder::build() {
  if (!c_.is_free()) throw std::invalid_argument("cover is not free");
  for (int v = 0; v < g_.num_vertices(); ++v) {
    if (g_.valence(v) != 3 || g_.vertex_genus(v) != 0) {
      throw std::invalid_argument("base is not trivalent of vertex genus 0");
    }
  }
  int genus = betti1(g_);
  r_.descriptor.genus = genus;
  r_.q = PiecewisePolynomial(Polynomial());
  if (genus > 4) throw std::invalid_argument("genus > 4");
  if (genus <= 2) {
    r_.descriptor.name = "genus<=2";
    return r_;
  }
  r_.descriptor.fs2_sets = fs_sets(c_, 2);
  if (genus == 4) r_.descriptor.fs3_sets = fs_sets(c_, 3);
  int a = static_cast<int>(r_.descriptor.fs2_sets.size());
  int b = static_cast<int>(r_.descriptor.fs3_sets.size());
  r_.descriptor.name = "fs2=" + std::to_string(a) + ",fs3=" + std::to_string(b);
  if (genus == 3) {
    if (a > 1) unmatched("several FS2 sets in genus 3");
    if (a == 1) {
      const EdgeSet& s = r_.descriptor.fs2_sets[0];
      role("e", s[0]);
      role("f", s[1]);
      r_.q = p2(L(s[0]), L(s[1]));
    }
    return r_;
  }
  if (a == 0 && b == 0) return r_;
  if (a == 0 && b == 1) r_.q = case_0_1();
  else if (a == 1 && b == 0) r_.q = case_1_0();
  else if (a == 1 && b == 1) r_.q = case_1_1();
  else if (a == 1 && b == 2) r_.q = case_1_2();
  else if (a == 2 && b == 0) r_.q = case_2_0();
  else if (a == 2 && b == 1) r_.q = case_2_1();
  else if (a == 2 && b == 2) r_.q = case_2_2();
  else if (a == 3) r_.q = case_3_k();
  else unmatched("no table entry");
  return r_;
}

}  // namespace

QResult q_trivalent(const DoubleCover& c) { return QBuilder(c).build(); }

ResolvedCover resolve_cover(const DoubleCover& c) {
  ResolvedCover out;
  int next_aux = 0;
  auto fresh = [&]() {
    std::string name = "_r" + std::to_string(next_aux++);
    out.auxiliary.push_back(var(name));
    return name;
  };
  DoubleCover cur = c;
  std::vector<int> dil;
  for (int e = 0; e < c.base().num_edges(); ++e)
    if (c.edge_dilated(e)) dil.push_back(e);
  if (!dil.empty()) cur = contract_cover(cur, dil).cover;
  Graph g = cur.base();
  std::vector<Marking> m = cur.markings();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!cur.vertex_dilated(v)) continue;
    std::string name = fresh();
    g.add_edge(v, v, LinearForm::variable(name), name);
    m.push_back(Marking::kMinus);
  }
  for (int v = 0; v < g.num_vertices(); ++v) g.set_vertex_genus(v, 0);
  if (betti1(g) <= 2) {
    out.cover = DoubleCover(g, m);
    out.trivial = true;
    return out;
  }
  StabilizeResult st = stabilize_with_map(g);
  std::vector<int> sign;
  for (const auto& path : st.edge_paths) {
    int s = 1;
    for (int e : path) s *= m[e] == Marking::kMinus ? -1 : 1;
    sign.push_back(s);
  }
  const Graph& h = st.graph;
  Graph r;
  std::vector<int> at(h.num_half_edges(), -1);
  std::vector<int> r_sign;
  std::vector<std::pair<int, int>> chain;
  for (int v = 0; v < h.num_vertices(); ++v) {
    std::vector<int> hs = h.half_edges_at(v);
    int k = static_cast<int>(hs.size());
    if (k <= 3) {
      int nv = r.add_vertex(h.vertex_id(v));
      for (int x : hs) at[x] = nv;
      continue;
    }
    std::vector<int> cv;
    for (int i = 0; i < k - 2; ++i)
      cv.push_back(r.add_vertex(h.vertex_id(v) + "." + std::to_string(i)));
    for (int i = 0; i < k; ++i) {
      int slot = std::clamp(i - 1, 0, k - 3);
      at[hs[i]] = cv[slot];
    }
    for (int i = 0; i + 1 < k - 2; ++i) chain.push_back({cv[i], cv[i + 1]});
  }
  std::vector<Marking> rm;
  for (int e = 0; e < h.num_edges(); ++e) {
    r.add_edge(at[2 * e], at[2 * e + 1], h.length(e), h.edge_id(e));
    rm.push_back(sign[e] > 0 ? Marking::kPlus : Marking::kMinus);
  }
  for (const auto& [a, b] : chain) {
    std::string name = fresh();
    r.add_edge(a, b, LinearForm::variable(name), name);
    rm.push_back(Marking::kPlus);
  }
  out.cover = DoubleCover(r, rm);
  return out;
}

std::map<Var, LinearForm> auxiliary_limit(const ResolvedCover& r) {
  std::map<Var, LinearForm> m;
  for (Var v : r.auxiliary) m[v] = LinearForm();
  return m;
}

QResult q_prym(const DoubleCover& c) {
  ResolvedCover rc = resolve_cover(c);
  if (rc.trivial) {
    QResult r;
    r.q = PiecewisePolynomial(Polynomial());
    r.descriptor.genus = betti1(rc.cover.base());
    r.descriptor.name = "genus<=2";
    return r;
  }
  QResult r = q_trivalent(rc.cover);
  if (!rc.auxiliary.empty()) r.q = r.q.substitute(auxiliary_limit(rc));
  return r;
}

MomentExpression i2_prym(const DoubleCover& c, int coefficient) {
  QResult q = q_prym(c);
  return MomentExpression{q.q + PiecewisePolynomial(p_prym(c, coefficient)),
                          w0_prym(c), Rational(1, 12)};
}

}  // namespace tprym
