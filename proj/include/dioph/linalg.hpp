#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <optional>

#include "dioph/scalar.hpp"

namespace dioph {

using MatI = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using VecI = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

MatQ to_rational(const MatI& m);
VecQ to_rational(const VecI& v);
// Errors out unless every entry is integral.
VecI to_integral(const VecQ& v);

// Exact determinant by fraction-free (Bareiss) elimination.
Int det_bareiss(MatI m);

// Row-style Hermite normal form of the lattice spanned by the rows.
// Result has one row per independent generator, pivots left to right,
// positive pivot entries, and entries above each pivot reduced into
// [0, pivot).  Zero rows are dropped.
MatI hnf_rows(const MatI& rows);

// As above but also returns a unimodular U with U * rows == hnf (padded
// with the dropped zero rows at the bottom).
struct HnfTransform {
  MatI hnf;  // r x n, r = rank
  MatI u;    // m x m unimodular; (u * input) top r rows = hnf
};
HnfTransform hnf_rows_transform(const MatI& rows);

// Does x lie in the row lattice of basis?  basis need not be in HNF.
bool in_row_lattice(const MatI& basis, const VecI& x);

// Solve y * basis = x over the integers (basis rows independent).
std::optional<VecI> solve_row_lattice(const MatI& basis, const VecI& x);

// Canonical representative of x modulo the full-rank row lattice H
// (H in row HNF, square).  Coordinates end up in [0, H(i,i)).
VecI reduce_mod_hnf(const MatI& h, VecI x);

// Basis (rows) of the integer kernel {y : y * m == 0}.
MatI left_kernel(const MatI& m);

// General integer linear solve: find any x with a * x == b, a is m x n.
std::optional<VecI> solve_integer(const MatI& a, const VecI& b);

// All k x k minors' maximum absolute value over every order k = 1..min(r,c).
Int max_abs_minor_all_orders(const MatI& m);

}  // namespace dioph
