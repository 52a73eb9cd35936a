#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dioph/numfield.hpp"

using namespace dioph;

namespace {

RingPtr zring() { return make_field({Int(0), Int(1)}, {.class_number_one = true, .name = "Z"}); }
RingPtr gauss() { return make_field({Int(1), Int(0), Int(1)}, {.class_number_one = true, .name = "Z[i]"}); }
RingPtr sqrt2() { return make_field({Int(-2), Int(0), Int(1)}, {.class_number_one = true, .name = "Z[sqrt2]"}); }

RingElement el(const RingPtr& r, std::initializer_list<long> cs) {
  VecI v(r->degree());
  int i = 0;
  for (long c : cs) v(i++) = Int(c);
  return r->element(std::move(v));
}

}  // namespace

TEST_CASE("make_field basics") {
  auto k = sqrt2();
  CHECK(k->degree() == 2);
  CHECK(k->signature() == std::pair<int, int>(2, 0));
  CHECK(k->discriminant() == 8);
  CHECK(k->is_totally_real());

  auto g = gauss();
  CHECK(g->signature() == std::pair<int, int>(0, 1));

  CHECK_THROWS_AS(make_field({Int(-4), Int(0), Int(1)}), Error);  // t^2-4 reducible
  CHECK_THROWS_AS(make_field({Int(-5), Int(0), Int(1)}), Error);  // Z[sqrt5] non-maximal
  CHECK_NOTHROW(make_field({Int(-5), Int(0), Int(1)}, {.allow_non_maximal = true}));
  CHECK_NOTHROW(make_field({Int(-1), Int(-1), Int(1)}));  // t^2-t-1, disc 5 fundamental
  CHECK_NOTHROW(make_field({Int(1), Int(0), Int(0), Int(0), Int(1)}));  // cyclotomic t^4+1
}

TEST_CASE("element arithmetic and norms") {
  auto k = sqrt2();
  RingElement a = el(k, {1, 1});  // 1 + sqrt2
  CHECK(a.norm() == -1);
  CHECK((a * a) == el(k, {3, 2}));
  CHECK(a.trace() == 2);
  CHECK(el(k, {0, 0}).norm() == 0);

  auto g = gauss();
  CHECK(el(g, {2, 1}).norm() == 5);  // 2+i

  auto nc = norm_and_conjugates(el(g, {2, 1}));
  CHECK(nc.norm == 5);
  CHECK(nc.conjugates.size() == 2);
  double prod = std::abs(nc.conjugates[0] * nc.conjugates[1]);
  CHECK(prod == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("norm multiplicativity fuzz") {
  auto k = sqrt2();
  long seed = 12345;
  for (int i = 0; i < 200; ++i) {
    seed = (seed * 1103515245 + 12345) & 0x7fffffff;
    long a = seed % 19 - 9;
    seed = (seed * 1103515245 + 12345) & 0x7fffffff;
    long b = seed % 19 - 9;
    seed = (seed * 1103515245 + 12345) & 0x7fffffff;
    long c = seed % 19 - 9;
    seed = (seed * 1103515245 + 12345) & 0x7fffffff;
    long d = seed % 19 - 9;
    RingElement x = el(k, {a, b}), y = el(k, {c, d});
    CHECK((x * y).norm() == x.norm() * y.norm());
  }
}

TEST_CASE("ideals") {
  auto z = zring();
  auto i6 = IntegralIdeal::from_generators({z->from_int(6), z->from_int(4)});
  CHECK(i6.norm() == 2);  // the ideal (2)
  auto i4 = IntegralIdeal::principal(z->from_int(4));
  auto i2 = IntegralIdeal::principal(z->from_int(2));
  CHECK(i4.subset_of(i2));
  CHECK_FALSE(i2.subset_of(i4));

  auto g = gauss();
  auto onepi = IntegralIdeal::principal(el(g, {1, 1}));
  CHECK(onepi.norm() == 2);
  auto three = IntegralIdeal::principal(g->from_int(3));
  CHECK(three.norm() == 9);
  CHECK(three.quotient_size() == 9);

  // norm multiplicativity
  CHECK(onepi.product(three).norm() == 18);

  // canonical residues
  auto k = sqrt2();
  auto two = IntegralIdeal::principal(k->from_int(2));
  RingElement x = el(k, {3, 2});
  CHECK(two.congruent(x, k->one()));  // 2+2sqrt2 in (2)
  RingElement r = two.reduce(k->from_int(7));
  CHECK(two.congruent(r, k->from_int(7)));

  // reduce(7, (3)) in Z = 1
  auto threez = IntegralIdeal::principal(z->from_int(3));
  CHECK(threez.reduce(z->from_int(7)) == z->from_int(1));

  // zero and unit
  CHECK(IntegralIdeal::zero(z).is_zero());
  CHECK(IntegralIdeal::unit(z).is_unit());
  CHECK_THROWS_AS(IntegralIdeal::zero(z).reduce(z->one()), Error);

  // ring mismatch
  CHECK_THROWS_AS(onepi.product(two), Error);
}

TEST_CASE("ideal colon and smallest integer") {
  auto g = gauss();
  auto p5 = IntegralIdeal::principal(el(g, {2, 1}));
  auto p5b = IntegralIdeal::principal(el(g, {2, -1}));
  auto five = p5.product(p5b);
  CHECK(five == IntegralIdeal::principal(g->from_int(5)));
  CHECK(five.colon(p5) == p5b);
  CHECK(five.smallest_integer() == 5);
  CHECK(p5.smallest_integer() == 5);
  auto i2 = IntegralIdeal::principal(el(g, {1, 1}));
  CHECK(i2.smallest_integer() == 2);
}

TEST_CASE("factor_ideal_quadratic") {
  auto g = gauss();
  auto five = IntegralIdeal::principal(g->from_int(5));
  auto f5 = factor_ideal_quadratic(five);
  REQUIRE(f5.size() == 2);
  CHECK(f5[0].kind == PrimeFactor::Kind::Split);
  CHECK(f5[0].prime.norm() == 5);

  auto three = IntegralIdeal::principal(g->from_int(3));
  auto f3 = factor_ideal_quadratic(three);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].kind == PrimeFactor::Kind::Inert);
  CHECK(f3[0].exponent == 1);

  auto two = IntegralIdeal::principal(g->from_int(2));
  auto f2 = factor_ideal_quadratic(two);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].kind == PrimeFactor::Kind::Ramified);
  CHECK(f2[0].exponent == 2);
  CHECK(f2[0].prime == IntegralIdeal::principal(el(g, {1, 1})));

  // refactor a composite and multiply back (done inside the call)
  auto big = IntegralIdeal::principal(el(g, {7, 4}));
  CHECK_NOTHROW(factor_ideal_quadratic(big));

  CHECK_THROWS_AS(factor_ideal_quadratic(five, Int(2)), Error);
}

TEST_CASE("quotient ops") {
  auto g = gauss();
  auto three = IntegralIdeal::principal(g->from_int(3));
  auto inv = three.solve_mod(g->from_int(2), g->one());
  REQUIRE(inv.has_value());
  CHECK(three.congruent(g->from_int(2) * *inv, g->one()));

  auto k = sqrt2();
  auto two = IntegralIdeal::principal(k->from_int(2));
  CHECK(two.congruent(el(k, {3, 2}), k->one()));
}

TEST_CASE("automorphisms, relative norm, fixed subring") {
  auto g = gauss();
  MatI conj(2, 2);
  conj << Int(1), Int(0), Int(0), Int(-1);
  g->register_automorphism("conj", conj);
  auto z = zring();
  MatI inc(2, 1);
  inc << Int(1), Int(0);
  g->register_subring("Z", z, inc);

  RingElement i = el(g, {0, 1});
  RingElement nm = relative_norm_quadratic(i, "conj", "Z");
  CHECK(nm == z->one());

  auto fs = fixed_subring(g, g->automorphism("conj"));
  CHECK(fs.subring->degree() == 1);

  // identity automorphism fixes everything
  auto fid = fixed_subring(g, FieldAutomorphism{"id", MatI::Identity(2, 2)});
  CHECK(fid.subring->degree() == 2);

  MatI notinv(2, 2);
  notinv << Int(1), Int(0), Int(1), Int(1);
  CHECK_THROWS_AS(fixed_subring(g, FieldAutomorphism{"bad", notinv}), Error);
}

TEST_CASE("quartic cyclotomic fixed subring is Z[sqrt2]") {
  auto f = make_field({Int(1), Int(0), Int(0), Int(0), Int(1)}, {.class_number_one = true, .name = "Z[zeta8]"});
  // complex conjugation: theta -> -theta^3
  MatI conj = MatI::Zero(4, 4);
  conj(0, 0) = 1;            // 1 -> 1
  conj(3, 1) = -1;           // theta -> -theta^3
  conj(2, 2) = -1;           // theta^2 -> -theta^2
  conj(1, 3) = -1;           // theta^3 -> -theta
  f->register_automorphism("conj", conj);
  auto fs = fixed_subring(f, f->automorphism("conj"));
  REQUIRE(fs.subring->degree() == 2);
  CHECK(fs.subring->minpoly() == IPoly{Int(-2), Int(0), Int(1)});
  // the inclusion sends the generator to theta - theta^3
  RingElement gen(f, fs.inclusion.col(1).eval());
  CHECK((gen * gen) == f->from_int(2));
}

TEST_CASE("fundamental units") {
  auto k = sqrt2();
  RingElement u = fundamental_unit_real_quadratic(k);
  CHECK(u == el(k, {1, 1}));

  auto k3 = make_field({Int(-3), Int(0), Int(1)}, {.class_number_one = true});
  CHECK(fundamental_unit_real_quadratic(k3) == el(k3, {2, 1}));

  auto k5 = make_field({Int(-5), Int(0), Int(1)}, {.allow_non_maximal = true});
  RingElement u5 = fundamental_unit_real_quadratic(k5);
  CHECK(abs_int(u5.norm()) == 1);
  CHECK(u5 == el(k5, {2, 1}));  // 2+sqrt5, the minimal unit > 1 of this order

  // Pell property: no unit strictly between 1 and u at the larger embedding
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      RingElement v = el(k, {a, b});
      if (abs_int(v.norm()) != 1) continue;
      RingElement vm1 = v - k->one();
      if (vm1.is_zero()) continue;
      if (certified_sign(vm1, 1) > 0) {
        // v > 1: check not smaller than u
        CHECK_FALSE(certified_less(v, u, 1));
      }
    }

  CHECK_THROWS_AS(fundamental_unit_real_quadratic(gauss()), Error);
}

TEST_CASE("certified comparisons") {
  auto k = sqrt2();
  RingElement s = el(k, {0, 1});
  CHECK(certified_sign(s, 0) < 0);  // embeddings sorted: first is -sqrt2
  CHECK(certified_sign(s, 1) > 0);
  CHECK(totally_positive(el(k, {3, 1})));        // 3+sqrt2 > 0 both ways
  CHECK_FALSE(totally_positive(el(k, {1, 1})));  // 1-sqrt2 < 0 at one embedding
  CHECK(totally_greater(el(k, {3, 1}), k->one()));
  CHECK(certified_abs_cmp(el(k, {3, 2}), 0, Rat(1)) < 0);  // |3-2sqrt2| < 1
  CHECK(certified_abs_cmp(el(k, {3, 2}), 1, Rat(1)) > 0);
  CHECK(certified_abs_cmp(k->one(), 0, Rat(1)) == 0);
}

TEST_CASE("t2 norm") {
  auto k = sqrt2();
  CHECK(t2_norm_exact(el(k, {1, 1})) == Rat(6));  // (1+s)^2+(1-s)^2 = 6
  auto g = gauss();
  MatI conj(2, 2);
  conj << Int(1), Int(0), Int(0), Int(-1);
  g->register_automorphism("conj", conj);
  CHECK(t2_norm_exact(el(g, {2, 1})) == Rat(10));  // 2*|2+i|^2
}

TEST_CASE("field elements and exact division") {
  auto g = gauss();
  RingElement a = el(g, {5, 0});
  RingElement b = el(g, {2, 1});
  auto q = a.divide_exact(b);
  REQUIRE(q.has_value());
  CHECK(*q == el(g, {2, -1}));
  CHECK_FALSE(el(g, {1, 0}).divide_exact(b).has_value());
  FieldElement half = field_div(g->one(), g->from_int(2));
  CHECK_FALSE(half.is_integral());
}
