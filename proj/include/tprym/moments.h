#pragma once

#include <map>
#include <string>
#include <vector>

#include "tprym/cone.h"
#include "tprym/graph.h"
#include "tprym/matroid.h"
#include "tprym/morphism.h"
#include "tprym/polynomial.h"

namespace tprym {

// Jacobian side. Vertex genera are ignored.
Polynomial w0_jac(const Graph& g);
// Sum over spanning forests with two trees; zero when there are none.
Polynomial w1_jac(const Graph& g);
// Sum over spanning trees T of w(T) times the total length outside T.
Polynomial tree_length_sum(const Graph& g);
Polynomial p_jac(const Graph& g);
MomentExpression i2_jac(const Graph& g);
// tau = tau_numerator / (12 w0).
Polynomial tau_numerator(const Graph& g);
Rational tau(const Graph& g, const std::map<Var, Rational>& point);
// 4 tau_numerator + 8 p - 12 w0 l; identically zero.
Polynomial tau_identity_residual(const Graph& g);

// Prym side.
Polynomial w0_prym(const DoubleCover& c);
// Three-term polynomial; the last term is scaled by coefficient (1 or 2).
Polynomial p_prym(const DoubleCover& c, int coefficient = 2);

// Building blocks of q.
PiecewisePolynomial p2(const LinearForm& a, const LinearForm& b);
PiecewisePolynomial p3(const LinearForm& x, const LinearForm& y,
                       const LinearForm& z);
Polynomial s_block(const LinearForm& e1, const LinearForm& e2,
                   const LinearForm& e3);

struct QCaseDescriptor {
  int genus = 0;
  std::vector<EdgeSet> fs2_sets;
  std::vector<EdgeSet> fs3_sets;
  std::string name;                           // e.g. "fs2=1,fs3=1"
  std::map<std::string, std::string> roles;   // role -> edge id
};

struct QResult {
  PiecewisePolynomial q;
  QCaseDescriptor descriptor;
};

// q for a free cover of a trivalent graph of genus <= 4 with genus-0
// vertices. Throws std::invalid_argument("genus > 4") and
// std::logic_error("unmatched q configuration: ...").
QResult q_trivalent(const DoubleCover& c);

// Free trivalent cover whose contraction along auxiliary edges is
// equivalent to the input: dilated edges contracted, an odd loop attached at
// each dilated vertex, vertex genera dropped, trees pruned, series edges
// merged and higher valence split into chains. Auxiliary lengths are fresh
// variables.
struct ResolvedCover {
  DoubleCover cover;
  std::vector<Var> auxiliary;
  bool trivial = false;  // base genus <= 2 after reduction: q = 0
};
ResolvedCover resolve_cover(const DoubleCover& c);

// Sets the auxiliary variables to 0.
std::map<Var, LinearForm> auxiliary_limit(const ResolvedCover& r);

// q for any cover with base genus <= 4, as the limit of q of the resolved
// cover.
QResult q_prym(const DoubleCover& c);

// (p + q) / (12 sqrt(w0)).
MomentExpression i2_prym(const DoubleCover& c, int coefficient = 2);

}  // namespace tprym
