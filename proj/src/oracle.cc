#include "tprym/oracle.h"

#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tprym {

namespace {

using IntVec = std::vector<std::int64_t>;

Rational checked_length(const LinearForm& f, const Point& lengths) {
  Rational v = f.evaluate(lengths);
  if (v <= 0) throw std::invalid_argument("nonpositive edge length");
  return v;
}

// Fundamental cycle of each non-tree edge as an integer edge vector.
std::vector<IntVec> fundamental_cycles(const Graph& g) {
  const int nv = g.num_vertices(), ne = g.num_edges();
  std::vector<int> tree = first_spanning_tree(g);
  std::vector<bool> in_tree(ne, false);
  for (int e : tree) in_tree[e] = true;
  std::vector<int> parent_edge(nv, -1), depth(nv, -1);
  for (int root = 0; root < nv; ++root) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : g.edges_at(v)) {
        if (!in_tree[e]) continue;
        int w = g.other_end(e, v);
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        parent_edge[w] = e;
        stack.push_back(w);
      }
    }
  }
  std::vector<IntVec> out;
  for (int e = 0; e < ne; ++e) {
    if (in_tree[e]) continue;
    IntVec c(ne, 0);
    c[e] = 1;
    // Walk from target(e) back to source(e) through the tree.
    int a = g.target(e), b = g.source(e);
    IntVec down(ne, 0);
    while (a != b) {
      if (depth[a] >= depth[b]) {
        int f = parent_edge[a];
        int up = g.other_end(f, a);
        c[f] += g.source(f) == a ? 1 : -1;
        a = up;
      } else {
        int f = parent_edge[b];
        int up = g.other_end(f, b);
        down[f] += g.source(f) == up ? 1 : -1;
        b = up;
      }
    }
    for (int f = 0; f < ne; ++f) c[f] += down[f];
    out.push_back(std::move(c));
  }
  return out;
}

Matrix gram_of(const std::vector<IntVec>& basis,
               const std::vector<Rational>& len, const Rational& scale) {
  const size_t n = basis.size();
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      Rational s = 0;
      for (size_t e = 0; e < len.size(); ++e)
        if (basis[i][e] != 0 && basis[j][e] != 0)
          s += Rational(basis[i][e] * basis[j][e]) * len[e];
      m[i][j] = m[j][i] = s * scale;
    }
  return m;
}

std::vector<std::vector<double>> to_double_matrix(const Matrix& m) {
  std::vector<std::vector<double>> d(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (const Rational& x : m[i]) d[i].push_back(to_double(x));
  return d;
}

// Lower Cholesky factor.
std::vector<std::vector<double>> cholesky(
    const std::vector<std::vector<double>>& g) {
  const size_t n = g.size();
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j <= i; ++j) {
      double s = g[i][j];
      for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0) throw std::invalid_argument("Gram matrix not positive definite");
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  return l;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational round_half_up(const Rational& q) {
  mpz_class n = q.get_num(), d = q.get_den();
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), mpz_class(2 * n + d).get_mpz_t(),
             mpz_class(2 * d).get_mpz_t());
  return Rational(r);
}

using P2 = std::array<Rational, 2>;

std::vector<P2> clip(const std::vector<P2>& poly, const P2& a, const Rational& b) {
  std::vector<P2> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % n];
    Rational fp = a[0] * p[0] + a[1] * p[1] - b;
    Rational fq = a[0] * q[0] + a[1] * q[1] - b;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      Rational t = fp / (fp - fq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

}  // namespace

Rational determinant(const Matrix& m0) {
  Matrix m = m0;
  const size_t n = m.size();
  Rational det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

bool is_positive_definite(const Matrix& m) {
  const size_t n = m.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (m[i].size() != n || m[i][j] != m[j][i]) return false;
  for (size_t k = 1; k <= n; ++k) {
    Matrix minor(k, std::vector<Rational>(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) minor[i][j] = m[i][j];
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

Matrix jac_gram(const Graph& g, const Point& lengths) {
  if (!is_connected(g)) throw std::invalid_argument("disconnected");
  std::vector<Rational> len;
  for (int e = 0; e < g.num_edges(); ++e)
    len.push_back(checked_length(g.length(e), lengths));
  return gram_of(fundamental_cycles(g), len, 1);
}

std::vector<IntVec> lattice_basis(const std::vector<IntVec>& generators) {
  std::vector<IntVec> rows = generators;
  if (rows.empty()) return {};
  const size_t cols = rows[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
    while (true) {
      size_t best = rows.size();
      for (size_t r = rank; r < rows.size(); ++r)
        if (rows[r][c] != 0 &&
            (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c])))
          best = r;
      if (best == rows.size()) break;
      std::swap(rows[rank], rows[best]);
      bool done = true;
      for (size_t r = rank + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        std::int64_t q = rows[r][c] / rows[rank][c];
        for (size_t k = 0; k < cols; ++k) rows[r][k] -= q * rows[rank][k];
        if (rows[r][c] != 0) done = false;
      }
      if (done) {
        ++rank;
        break;
      }
    }
  }
  rows.resize(rank);
  return rows;
}

Matrix prym_gram(const DoubleCover& c, const Point& lengths) {
  ExpandedCover x = expand(c);
  const Graph& total = x.map.source;
  if (!is_connected(total)) throw std::invalid_argument("total space is disconnected");
  std::vector<IntVec> gens;
  for (const IntVec& v : fundamental_cycles(total)) {
    IntVec w(v.size(), 0);
    for (size_t e = 0; e < v.size(); ++e) w[e] = v[e] - v[x.edge_involution[e]];
    gens.push_back(std::move(w));
  }
  std::vector<IntVec> basis = lattice_basis(gens);
  if (static_cast<int>(basis.size()) != torus_rank(c))
    throw std::logic_error("Prym lattice rank differs from the torus rank");
  std::vector<Rational> len;
  for (int e = 0; e < total.num_edges(); ++e)
    len.push_back(checked_length(total.length(e), lengths));
  return gram_of(basis, len, Rational(1, 2));
}

VoronoiReducer::VoronoiReducer(const Matrix& gram) : n_(static_cast<int>(gram.size())) {
  if (n_ < 1 || n_ > 4) throw std::invalid_argument("dimension must be 1..4");
  if (!is_positive_definite(gram))
    throw std::invalid_argument("Gram matrix not positive definite");
  std::vector<std::vector<double>> l = cholesky(to_double_matrix(gram));
  // LLL on the rows of l, tracking the integer transform t_.
  std::vector<std::vector<double>> b = l;
  t_.assign(n_, std::vector<long>(n_, 0));
  for (int i = 0; i < n_; ++i) t_[i][i] = 1;
  auto gso = [&](std::vector<std::vector<double>>& bs,
                 std::vector<std::vector<double>>& mu) {
    bs = b;
    mu.assign(n_, std::vector<double>(n_, 0.0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], bs[j]) / dot(bs[j], bs[j]);
        for (int k = 0; k < n_; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
  };
  std::vector<std::vector<double>> bs, mu;
  int k = 1;
  int guard = 0;
  while (k < n_ && ++guard < 10000) {
    gso(bs, mu);
    for (int j = k - 1; j >= 0; --j) {
      long q = std::lround(mu[k][j]);
      if (q == 0) continue;
      for (int c = 0; c < n_; ++c) {
        b[k][c] -= q * b[j][c];
        t_[k][c] -= q * t_[j][c];
      }
      gso(bs, mu);
    }
    if (dot(bs[k], bs[k]) >= (0.75 - mu[k][k - 1] * mu[k][k - 1]) *
                                 dot(bs[k - 1], bs[k - 1])) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(t_[k], t_[k - 1]);
      k = std::max(k - 1, 1);
    }
  }
  g_.assign(n_, std::vector<double>(n_, 0.0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) g_[i][j] = dot(b[i], b[j]);
  std::vector<std::vector<double>> lo = cholesky(g_);
  r_.assign(n_, std::vector<double>(n_, 0.0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r_[i][j] = lo[j][i];
  // u = T^T u', so u' = T^{-T} u.
  std::vector<std::vector<double>> a(n_, std::vector<double>(2 * n_, 0.0));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) a[i][j] = static_cast<double>(t_[j][i]);
    a[i][n_ + i] = 1;
  }
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    for (int r = c + 1; r < n_; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[piv], a[c]);
    double p = a[c][c];
    for (double& v : a[c]) v /= p;
    for (int r = 0; r < n_; ++r) {
      if (r == c) continue;
      double f = a[r][c];
      for (int k2 = 0; k2 < 2 * n_; ++k2) a[r][k2] -= f * a[c][k2];
    }
  }
  tinv_.assign(n_, std::vector<double>(n_, 0.0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) tinv_[i][j] = a[i][n_ + j];
}

double VoronoiReducer::norm2(const std::vector<double>& y) const {
  double s = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += y[i] * g_[i][j] * y[j];
  return s;
}

std::vector<long> VoronoiReducer::closest(const std::vector<double>& u) const {
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) y[i] += tinv_[i][j] * u[j];
  // Babai nearest plane for the initial radius.
  std::vector<long> z(n_, 0), best_z(n_, 0);
  for (int i = n_ - 1; i >= 0; --i) {
    double c = y[i];
    for (int j = i + 1; j < n_; ++j) c += r_[i][j] * (y[j] - z[j]) / r_[i][i];
    z[i] = std::lround(c);
  }
  best_z = z;
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = y[i] - z[i];
  double best = norm2(d) * (1 + 1e-12) + 1e-300;
  // Fincke-Pohst enumeration.
  std::vector<long> cur(n_, 0);
  auto rec = [&](auto&& self, int i, double partial) -> void {
    double c = y[i];
    for (int j = i + 1; j < n_; ++j) c += r_[i][j] * (y[j] - cur[j]) / r_[i][i];
    double rad = std::sqrt(std::max(0.0, best - partial)) / r_[i][i];
    for (long zi = static_cast<long>(std::ceil(c - rad));
         zi <= static_cast<long>(std::floor(c + rad)); ++zi) {
      double t = r_[i][i] * (c - zi);
      double np = partial + t * t;
      if (np > best) continue;
      cur[i] = zi;
      if (i == 0) {
        best = np;
        best_z = cur;
      } else {
        self(self, i - 1, np);
      }
    }
  };
  rec(rec, n_ - 1, 0.0);
  // Back to the original coordinates: z = T^T z'.
  std::vector<long> out(n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[i] += t_[j][i] * best_z[j];
  return out;
}

double VoronoiReducer::reduced_norm2(const std::vector<double>& u) const {
  std::vector<long> z = closest(u);
  std::vector<double> y(n_, 0.0), d(n_);
  for (int i = 0; i < n_; ++i) d[i] = u[i] - z[i];
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) y[i] += tinv_[i][j] * d[j];
  return norm2(y);
}

MomentEstimate mc_moment(const Matrix& gram, std::int64_t samples,
                         std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  VoronoiReducer red(gram);
  MomentEstimate out;
  out.det = determinant(gram);
  out.i0 = std::sqrt(to_double(out.det));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u(red.dim());
  double mean = 0, m2 = 0;
  for (std::int64_t k = 1; k <= samples; ++k) {
    for (double& x : u) x = unif(rng);
    double v = red.reduced_norm2(u);
    double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  double var = m2 / static_cast<double>(samples - 1);
  out.i2 = out.i0 * mean;
  out.std_error = out.i0 * std::sqrt(var / static_cast<double>(samples));
  return out;
}

Rational voronoi_q_2d(const Matrix& gram) {
  if (gram.size() != 2 || !is_positive_definite(gram))
    throw std::invalid_argument("need a positive definite 2x2 Gram matrix");
  // Gauss reduction; the integral is invariant under unimodular changes.
  Rational a = gram[0][0], b = gram[0][1], c = gram[1][1];
  while (true) {
    Rational q = round_half_up(b / a);
    c = c - 2 * q * b + q * q * a;
    b = b - q * a;
    if (c < a) {
      std::swap(a, c);
    } else {
      break;
    }
  }
  Matrix g = {{a, b}, {b, c}};
  std::vector<P2> poly = {{Rational(-1), Rational(-1)},
                          {Rational(1), Rational(-1)},
                          {Rational(1), Rational(1)},
                          {Rational(-1), Rational(1)}};
  for (int z0 = -2; z0 <= 2; ++z0)
    for (int z1 = -2; z1 <= 2; ++z1) {
      if (z0 == 0 && z1 == 0) continue;
      P2 gz = {g[0][0] * z0 + g[0][1] * z1, g[1][0] * z0 + g[1][1] * z1};
      Rational zgz = gz[0] * z0 + gz[1] * z1;
      poly = clip(poly, {2 * gz[0], 2 * gz[1]}, zgz);
    }
  auto f = [&](const P2& p) -> Rational {
    return g[0][0] * p[0] * p[0] + 2 * g[0][1] * p[0] * p[1] +
           g[1][1] * p[1] * p[1];
  };
  auto mid = [](const P2& p, const P2& q) {
    return P2{(p[0] + q[0]) / 2, (p[1] + q[1]) / 2};
  };
  Rational total = 0;
  for (size_t i = 1; i + 1 < poly.size(); ++i) {
    const P2& p0 = poly[0];
    const P2& p1 = poly[i];
    const P2& p2 = poly[i + 1];
    Rational cross = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                     (p1[1] - p0[1]) * (p2[0] - p0[0]);
    Rational area = abs(cross) / 2;
    total += area / 3 * (f(mid(p0, p1)) + f(mid(p1, p2)) + f(mid(p0, p2)));
  }
  return total;
}

}  // namespace tprym
