#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tprym/graph.h"
#include "tprym/linear_form.h"
#include "tprym/morphism.h"
#include "tprym/rational.h"

namespace tprym {

using Matrix = std::vector<std::vector<Rational>>;
using Point = std::map<Var, Rational>;

// Exact determinant by Gaussian elimination.
Rational determinant(const Matrix& m);
// Symmetric with positive leading principal minors.
bool is_positive_definite(const Matrix& m);

// Gram matrix of the fundamental cycles of first_spanning_tree under
// sum a_e b_e l(e). Throws std::invalid_argument on nonpositive lengths.
Matrix jac_gram(const Graph& g, const Point& lengths);

// Gram matrix of a lattice basis of the image of Id - iota on H1 of the
// total space, under one half of the total-space pairing. Throws
// std::logic_error if the rank differs from the torus rank.
Matrix prym_gram(const DoubleCover& c, const Point& lengths);

// Integer lattice basis (rows) of the span of integer generators.
std::vector<std::vector<std::int64_t>> lattice_basis(
    const std::vector<std::vector<std::int64_t>>& generators);

// Closest-vector reduction for a lattice of dimension <= 4, in coordinates
// x = R^T u where G = R^T R.
class VoronoiReducer {
 public:
  explicit VoronoiReducer(const Matrix& gram);
  int dim() const { return n_; }
  // Squared norm of the Voronoi-cell representative of the point with
  // lattice coordinates u.
  double reduced_norm2(const std::vector<double>& u) const;
  // Integer vector z minimising |u - z| in the lattice norm.
  std::vector<long> closest(const std::vector<double>& u) const;
  double norm2(const std::vector<double>& u) const;

 private:
  int n_;
  std::vector<std::vector<double>> g_;  // Gram in the reduced basis
  std::vector<std::vector<double>> r_;  // upper Cholesky factor of g_
  std::vector<std::vector<long>> t_;    // reduced basis in old coordinates
  std::vector<std::vector<double>> tinv_;
};

struct MomentEstimate {
  Rational det;  // I0 = sqrt(det)
  double i0 = 0;
  double i2 = 0;
  double std_error = 0;
};

// Uniform samples in the fundamental parallelepiped reduced to the Voronoi
// cell. Throws std::invalid_argument for dimension > 4 or a matrix that is
// not positive definite.
MomentEstimate mc_moment(const Matrix& gram, std::int64_t samples,
                         std::uint64_t seed);

// Exact second moment of a 2-dimensional Voronoi cell: I2 = sqrt(det) * Q,
// with Q the integral of u^T G u over the cell in lattice coordinates.
Rational voronoi_q_2d(const Matrix& gram);

}  // namespace tprym
