#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dioph/linalg.hpp"
#include "dioph/unipoly.hpp"

using namespace dioph;

TEST_CASE("bareiss determinant") {
  MatI m(3, 3);
  m << Int(2), Int(0), Int(1), Int(1), Int(1), Int(1), Int(4), Int(2), Int(1);
  CHECK(det_bareiss(m) == -4);
  MatI z = MatI::Zero(2, 2);
  CHECK(det_bareiss(z) == 0);
  MatI one(1, 1);
  one << Int(-7);
  CHECK(det_bareiss(one) == -7);
}

TEST_CASE("hnf of a simple lattice") {
  MatI rows(3, 2);
  rows << Int(6), Int(0), Int(0), Int(4), Int(2), Int(2);
  MatI h = hnf_rows(rows);
  REQUIRE(h.rows() == 2);
  CHECK(h(0, 0) > 0);
  CHECK(h(1, 0) == 0);
  // lattice membership
  VecI x(2);
  x << Int(8), Int(2);
  CHECK(in_row_lattice(rows, x));
  x << Int(1), Int(0);
  CHECK_FALSE(in_row_lattice(rows, x));
}

TEST_CASE("hnf transform reproduces the basis") {
  MatI rows(3, 3);
  rows << Int(2), Int(3), Int(5), Int(4), Int(6), Int(10), Int(0), Int(1), Int(7);
  HnfTransform t = hnf_rows_transform(rows);
  MatI prod = t.u * rows;
  for (Eigen::Index i = 0; i < t.hnf.rows(); ++i)
    CHECK(prod.row(i) == t.hnf.row(i));
  // bottom rows of u are a kernel basis
  MatI k = left_kernel(rows);
  for (Eigen::Index i = 0; i < k.rows(); ++i) CHECK((k.row(i) * rows).isZero(0));
}

TEST_CASE("reduce_mod_hnf canonical residues") {
  MatI h(2, 2);
  h << Int(3), Int(1), Int(0), Int(2);
  VecI x(2);
  x << Int(7), Int(9);
  VecI r = reduce_mod_hnf(h, x);
  CHECK(r(0) >= 0);
  CHECK(r(0) < 3);
  CHECK(r(1) >= 0);
  CHECK(r(1) < 2);
  // difference is in the lattice
  CHECK(in_row_lattice(h, VecI(x - r)));
}

TEST_CASE("solve_integer") {
  MatI a(2, 3);
  a << Int(2), Int(0), Int(3), Int(0), Int(5), Int(1);
  VecI b(2);
  b << Int(7), Int(6);
  auto x = solve_integer(a, b);
  REQUIRE(x.has_value());
  CHECK((a * *x) == b);
}

TEST_CASE("all-order minors") {
  MatI m(2, 2);
  m << Int(0), Int(1), Int(1), Int(1);
  CHECK(max_abs_minor_all_orders(m) == 1);
  MatI m2(3, 3);
  m2 << Int(0), Int(0), Int(1), Int(1), Int(1), Int(1), Int(4), Int(2), Int(1);
  CHECK(max_abs_minor_all_orders(m2) == 4);
}

TEST_CASE("resultant and discriminant") {
  // f = t^2 - 2, f' = 2t, res = -(-2)*... disc(t^2-2) = 8
  IPoly f{Int(-2), Int(0), Int(1)};
  CHECK(discriminant_monic(f) == 8);
  IPoly g{Int(1), Int(0), Int(1)};  // t^2 + 1
  CHECK(discriminant_monic(g) == -4);
  IPoly h{Int(9), Int(0), Int(-2), Int(0), Int(1)};  // t^4 - 2t^2 + 9
  CHECK(count_real_roots(h) == 0);
  CHECK(count_real_roots(f) == 2);
  IPoly cyc8 = cyclotomic(8);
  CHECK(cyc8 == IPoly{Int(1), Int(0), Int(0), Int(0), Int(1)});
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible_monic({Int(-2), Int(0), Int(1)}));          // t^2-2
  CHECK(is_irreducible_monic({Int(1), Int(0), Int(1)}));           // t^2+1
  CHECK_FALSE(is_irreducible_monic({Int(-4), Int(0), Int(1)}));    // (t-2)(t+2)
  CHECK_FALSE(is_irreducible_monic({Int(1), Int(2), Int(1)}));     // (t+1)^2
  CHECK(is_irreducible_monic({Int(1), Int(0), Int(0), Int(0), Int(1)}));  // t^4+1
  CHECK(is_irreducible_monic({Int(9), Int(0), Int(-2), Int(0), Int(1)}));
  CHECK_FALSE(is_irreducible_monic({Int(-1), Int(0), Int(0), Int(1)}));  // (t-1)(t^2+t+1)
  CHECK_FALSE(is_irreducible_monic({Int(4), Int(0), Int(4), Int(0), Int(1)}));  // (t^2+2)^2
}

TEST_CASE("real root isolation") {
  IPoly f{Int(-2), Int(0), Int(1)};
  auto roots = isolate_real_roots(f, Rat(1, 1024));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].hi < 0);
  CHECK(roots[1].lo > 0);
  CHECK(roots[1].hi - roots[1].lo <= Rat(1, 1024));
  // sqrt(2) inside
  CHECK(roots[1].lo < Rat(1414214, 1000000));
  CHECK(roots[1].hi > Rat(1414213, 1000000));
}
