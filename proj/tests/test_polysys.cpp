#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dioph/polysys.hpp"

using namespace dioph;

namespace {

RingPtr zring() { return make_field({Int(0), Int(1)}, {.class_number_one = true, .name = "Z"}); }
RingPtr gauss() {
  auto g = make_field({Int(1), Int(0), Int(1)}, {.class_number_one = true, .name = "Z[i]"});
  return g;
}
RingPtr sqrt2() { return make_field({Int(-2), Int(0), Int(1)}, {.class_number_one = true, .name = "Z[sqrt2]"}); }

RingElement el(const RingPtr& r, std::initializer_list<long> cs) {
  VecI v(r->degree());
  int i = 0;
  for (long c : cs) v(i++) = Int(c);
  return r->element(std::move(v));
}

// an evenness definition over Z: t = 2k
DiophDefinition evens(const RingPtr& z) {
  DiophDefinition d;
  d.system.ring = z;
  int t = d.system.add_var("t", VarClass::Fundamental);
  int k = d.system.add_var("k", VarClass::Auxiliary);
  MultiPoly pt = MultiPoly::variable(z, 2, t), pk = MultiPoly::variable(z, 2, k);
  d.system.polys.push_back(pt - pk.scaled(z->from_int(2)));
  d.distinguished_t = "t";
  d.target_tag = "evens";
  return d;
}

DiophDefinition multiples_of_three(const RingPtr& z) {
  DiophDefinition d;
  d.system.ring = z;
  int t = d.system.add_var("t", VarClass::Fundamental);
  int k = d.system.add_var("k", VarClass::Auxiliary);
  MultiPoly pt = MultiPoly::variable(z, 2, t), pk = MultiPoly::variable(z, 2, k);
  d.system.polys.push_back(pt - pk.scaled(z->from_int(3)));
  d.distinguished_t = "t";
  d.target_tag = "multiples of 3";
  return d;
}

}  // namespace

TEST_CASE("unit gadget") {
  auto z = zring();
  PolySystem g = unit_gadget(z, "t");
  CHECK(g.evaluate({z->from_int(-1), z->from_int(-1)})[0].is_zero());

  auto k = sqrt2();
  PolySystem gk = unit_gadget(k, "t");
  CHECK(gk.evaluate({el(k, {1, 1}), el(k, {-1, 1})})[0].is_zero());

  // t = 2 has no inverse in the box
  auto sols = brute_force_solutions(g, 1000);
  for (const auto& s : sols) CHECK_FALSE(s[0] == z->from_int(2));
}

TEST_CASE("nonzero gadget and witnesses") {
  auto z = zring();
  auto w3 = witness_nonzero(z->from_int(3));
  CHECK(w3.y == z->from_int(2));
  CHECK(w3.z == z->zero());
  CHECK(w3.w == z->from_int(-1));
  // exact identity
  RingElement lhs = (z->from_int(2) * w3.y - z->one()) * (z->from_int(3) * w3.z - z->one());
  CHECK(lhs == z->from_int(3) * w3.w);

  auto w1 = witness_nonzero(z->one());
  CHECK(w1.y == z->zero());
  CHECK(w1.z == z->zero());
  CHECK(w1.w == z->one());

  CHECK_THROWS_AS(witness_nonzero(z->zero()), Error);

  // soundness: no box solution with x = 0
  PolySystem g = nonzero_gadget(z, "x");
  MultiPoly x = MultiPoly::variable(z, 4, 0);
  PolySystem pinned = g;
  pinned.polys.push_back(x);  // force x = 0
  CHECK(brute_force_solutions(pinned, 8).empty());

  // completeness fuzz over Z[i]
  auto gi = gauss();
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      if (a == 0 && b == 0) continue;
      RingElement v = el(gi, {a, b});
      auto w = witness_nonzero(v);
      RingElement l = (gi->from_int(2) * w.y - gi->one()) * (gi->from_int(3) * w.z - gi->one());
      CHECK(l == v * w.w);
    }

  // saturation route (norm too large for the factor bound)
  auto big = witness_nonzero(z->from_int(1000003) * z->from_int(999983), Int(1000));
  RingElement bigx = z->from_int(1000003) * z->from_int(999983);
  RingElement l = (z->from_int(2) * big.y - z->one()) * (z->from_int(3) * big.z - z->one());
  CHECK(l == bigx * big.w);
}

TEST_CASE("find_rootless_quadratic") {
  auto k = sqrt2();
  auto p = find_rootless_quadratic(k);
  CHECK(p.certificate == RootlessReason::RealEmbeddingObstruction);
  CHECK(p.coeffs[0] == k->one());  // t^2 + 1
  CHECK(p.coeffs[2] == k->one());

  auto g = gauss();
  auto pg = find_rootless_quadratic(g);
  CHECK(pg.certificate == RootlessReason::ExhaustiveSquareSearch);
  CHECK(pg.coeffs[0] == g->from_int(-2));  // t^2 - 2: 2 is not a square in Z[i]

  auto z = zring();
  auto pz = find_rootless_quadratic(z);
  CHECK(pz.certificate == RootlessReason::RealEmbeddingObstruction);
}

TEST_CASE("combine_to_single equals the system's zero set") {
  auto z = zring();
  // {f, g} with p = t^2+1 gives f^2 + g^2
  PolySystem s;
  s.ring = z;
  s.add_var("a", VarClass::Plain);
  s.add_var("b", VarClass::Plain);
  MultiPoly a = MultiPoly::variable(z, 2, 0), b = MultiPoly::variable(z, 2, 1);
  s.polys = {a - MultiPoly::constant(z->from_int(1), 2), b - MultiPoly::constant(z->from_int(2), 2)};
  auto p = find_rootless_quadratic(z);
  PolySystem comb = combine_to_single(s, p);
  REQUIRE(comb.polys.size() == 1);
  auto sols = brute_force_solutions(comb, 5);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0][0] == z->one());
  CHECK(sols[0][1] == z->from_int(2));

  // single-poly system is unchanged
  PolySystem single;
  single.ring = z;
  single.add_var("a", VarClass::Plain);
  single.polys = {MultiPoly::variable(z, 1, 0)};
  CHECK(combine_to_single(single, p).polys.size() == 1);

  // three equations over Z[sqrt2]: box zero sets coincide
  auto k = sqrt2();
  PolySystem s3;
  s3.ring = k;
  s3.add_var("x", VarClass::Plain);
  s3.add_var("y", VarClass::Plain);
  MultiPoly x = MultiPoly::variable(k, 2, 0), y = MultiPoly::variable(k, 2, 1);
  MultiPoly f1 = x * y - MultiPoly::constant(el(k, {0, 1}), 2);
  MultiPoly f2 = x - y;
  MultiPoly f3 = x * x - MultiPoly::constant(el(k, {0, 1}), 2);
  s3.polys = {f1, f2, f3};
  auto pk = find_rootless_quadratic(k);
  PolySystem c3 = combine_to_single(s3, pk);
  auto lhs = brute_force_solutions(s3, 2);
  auto rhs = brute_force_solutions(c3, 2);
  CHECK(lhs == rhs);
}

TEST_CASE("combine fuzz against the oracle") {
  auto rings = std::vector<RingPtr>{zring(), sqrt2()};
  std::mt19937_64 rng(2024);
  for (const auto& ring : rings) {
    auto p = find_rootless_quadratic(ring);
    for (int trial = 0; trial < 10; ++trial) {
      int nv = 1 + static_cast<int>(rng() % 2);
      int np = 1 + static_cast<int>(rng() % 3);
      PolySystem s;
      s.ring = ring;
      for (int i = 0; i < nv; ++i) s.add_var("v" + std::to_string(i), VarClass::Plain);
      for (int i = 0; i < np; ++i) {
        MultiPoly poly(ring, nv);
        int terms = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < terms; ++t) {
          std::vector<int> e(nv, 0);
          for (int v = 0; v < nv; ++v) e[v] = static_cast<int>(rng() % 3);
          VecI c(ring->degree());
          for (int j = 0; j < ring->degree(); ++j) c(j) = Int(static_cast<long>(rng() % 7) - 3);
          poly.add_term(std::move(e), ring->element(std::move(c)));
        }
        poly.normalize();
        if (poly.is_zero()) poly = MultiPoly::constant(ring->one(), nv) - MultiPoly::constant(ring->one(), nv);
        s.polys.push_back(poly);
      }
      PolySystem c = combine_to_single(s, p);
      CHECK(brute_force_solutions(s, 2) == brute_force_solutions(c, 2));
    }
  }
}

TEST_CASE("intersection of definitions") {
  auto z = zring();
  auto d1 = evens(z), d2 = multiples_of_three(z);
  auto inter = intersect_definitions(d1, d2);
  auto vals = solution_values(inter.system, 18, "t");
  for (const auto& v : vals) CHECK(mod_floor(v.coords()(0), Int(6)) == 0);
  // all multiples of 6 in a reasonable range appear
  int count = 0;
  for (const auto& v : vals)
    if (abs_int(v.coords()(0)) <= 6) ++count;
  CHECK(count == 3);  // -6, 0, 6

  // idempotence
  auto same = intersect_definitions(d1, d1);
  auto v1 = solution_values(same.system, 10, "t");
  auto v2 = solution_values(d1.system, 10, "t");
  CHECK(v1.size() == v2.size());
}

TEST_CASE("transport correspondence") {
  auto z = zring();
  auto g = gauss();
  MatI inc(2, 1);
  inc << Int(1), Int(0);
  g->register_subring("Z", z, inc);

  // toy definition of the rational integers in a box over Z[i]:
  // t(t-1)(t+1)(t-2)(t+2)(t-3)(t+3) = 0
  DiophDefinition def;
  def.system.ring = g;
  def.system.add_var("t", VarClass::Fundamental);
  MultiPoly t = MultiPoly::variable(g, 1, 0);
  MultiPoly prod = t;
  for (long c : {1, -1, 2, -2, 3, -3})
    prod = prod * (t - MultiPoly::constant(g->from_int(c), 1));
  def.system.polys = {prod};
  def.distinguished_t = "t";
  def.target_tag = "small rational integers";

  // B over Z: t(t-1) = 0
  PolySystem b;
  b.ring = z;
  b.add_var("u", VarClass::Fundamental);
  MultiPoly u = MultiPoly::variable(z, 1, 0);
  b.polys = {u * (u - MultiPoly::constant(z->one(), 1))};

  PolySystem moved = transport(b, def, "Z");
  CHECK(same_ring(moved.ring, g));
  auto vals = solution_values(moved, 3, "u");
  REQUIRE(vals.size() == 2);
  CHECK(vals[0] == g->zero());
  CHECK(vals[1] == g->one());

  // unsolvable B stays unsolvable
  PolySystem b2;
  b2.ring = z;
  b2.add_var("u", VarClass::Fundamental);
  MultiPoly u2 = MultiPoly::variable(z, 1, 0);
  b2.polys = {u2 * u2 - MultiPoly::constant(z->from_int(2), 1)};
  PolySystem moved2 = transport(b2, def, "Z");
  CHECK(brute_force_solutions(moved2, 3).empty());

  CHECK_THROWS_AS(transport(b, def, "missing"), Error);
}

TEST_CASE("compose transitive") {
  auto z = zring();
  auto g = gauss();
  MatI inc(2, 1);
  inc << Int(1), Int(0);
  g->register_subring("Z", z, inc);
  // evens over Z composed with the toy integer definition inside Z[i]
  auto d1 = evens(z);

  DiophDefinition dz;
  dz.system.ring = g;
  dz.system.add_var("t", VarClass::Fundamental);
  MultiPoly t = MultiPoly::variable(g, 1, 0);
  MultiPoly prod = t;
  for (long c : {1, -1, 2, -2, 3, -3, 4, -4})
    prod = prod * (t - MultiPoly::constant(g->from_int(c), 1));
  dz.system.polys = {prod};
  dz.distinguished_t = "t";
  dz.target_tag = "boxed integers";

  auto composed = compose_transitive(d1, dz, "Z");
  CHECK(same_ring(composed.system.ring, g));
  auto vals = solution_values(composed.system, 4, "t");
  for (const auto& v : vals) {
    CHECK(v.coords()(1) == 0);
    CHECK(v.coords()(0) % 2 == 0);
  }
  // contains 0 and ±2
  CHECK(vals.size() >= 3);
}

TEST_CASE("veronese") {
  auto z = zring();
  auto v = veronese({z->from_int(2), z->from_int(3)}, 2);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == z->from_int(4));
  CHECK(v[1] == z->from_int(6));
  CHECK(v[2] == z->from_int(9));

  auto g = gauss();
  auto vz = veronese({g->zero(), g->zero(), g->one()}, 3);
  REQUIRE(vz.size() == 10);
  for (size_t i = 0; i + 1 < vz.size(); ++i) CHECK(vz[i].is_zero());
  CHECK(vz.back() == g->one());

  CHECK_THROWS_AS(veronese({g->zero()}, 2), Error);

  // multiplicativity: ideal(veronese(coords, h)) = ideal(coords)^h
  RingElement a = el(g, {1, 1}), b = g->one();
  auto vv = veronese({a, b}, 2);
  auto iv = IntegralIdeal::from_generators(vv);
  auto base = IntegralIdeal::from_generators({a, b});
  CHECK(iv == base.pow(2));
}

TEST_CASE("total positivity system") {
  auto z = zring();
  PolySystem tp = total_positivity_system(z);
  // x=3, z=1: solution with y = (1,1,0,0), y5 = 1 exists in a small box
  PolySystem pinned = tp;
  int xi = pinned.var_index("x"), zi = pinned.var_index("z");
  MultiPoly x = MultiPoly::variable(z, static_cast<int>(pinned.vars.size()), xi);
  MultiPoly zz = MultiPoly::variable(z, static_cast<int>(pinned.vars.size()), zi);
  pinned.polys.push_back(x - MultiPoly::constant(z->from_int(3), static_cast<int>(pinned.vars.size())));
  pinned.polys.push_back(zz - MultiPoly::constant(z->one(), static_cast<int>(pinned.vars.size())));
  auto sols = brute_force_solutions(pinned, 3);
  CHECK(!sols.empty());

  // x=1, z=3: negative difference, no solutions
  PolySystem bad = tp;
  bad.polys.push_back(x - MultiPoly::constant(z->one(), static_cast<int>(bad.vars.size())));
  bad.polys.push_back(zz - MultiPoly::constant(z->from_int(3), static_cast<int>(bad.vars.size())));
  CHECK(brute_force_solutions(bad, 3).empty());
}

TEST_CASE("superset shrink") {
  auto k = sqrt2();
  // S = boxed naturals as a toy: t(t-1)(t-2) = 0
  DiophDefinition s;
  s.system.ring = k;
  s.system.add_var("t", VarClass::Fundamental);
  MultiPoly t = MultiPoly::variable(k, 1, 0);
  MultiPoly prod = t;
  for (long c : {1, 2})
    prod = prod * (t - MultiPoly::constant(k->from_int(c), 1));
  s.system.polys = {prod};
  s.distinguished_t = "t";
  s.target_tag = "toy naturals";

  auto def = superset_shrink(s, el(k, {0, 1}));
  CHECK(def.system.var_index("x") >= 0);
  // 0, 1 and sqrt2 are all expressible: b=1, numerators from S
  auto vals = solution_values(def.system, 2, "x", OracleOptions{.cell_cap = 200000000});
  bool has_zero = false, has_one = false, has_sqrt2 = false;
  for (const auto& v : vals) {
    if (v == k->zero()) has_zero = true;
    if (v == k->one()) has_one = true;
    if (v == el(k, {0, 1})) has_sqrt2 = true;
  }
  CHECK(has_zero);
  CHECK(has_one);
  CHECK(has_sqrt2);
}

TEST_CASE("oracle determinism and box semantics") {
  auto z = zring();
  PolySystem s;
  s.ring = z;
  s.add_var("a", VarClass::Plain);
  MultiPoly a = MultiPoly::variable(z, 1, 0);
  s.polys = {a * a - MultiPoly::constant(z->from_int(4), 1)};
  auto sols = brute_force_solutions(s, 5);
  REQUIRE(sols.size() == 2);
  CHECK(sols[0][0] == z->from_int(-2));
  CHECK(sols[1][0] == z->from_int(2));

  // the cell cap refuses oversized boxes
  PolySystem wide;
  wide.ring = z;
  for (int i = 0; i < 6; ++i) wide.add_var("v" + std::to_string(i), VarClass::Plain);
  MultiPoly acc(z, 6);
  for (int i = 0; i < 6; ++i) acc = acc + MultiPoly::variable(z, 6, i);
  wide.polys = {acc - MultiPoly::constant(z->from_int(1000), 6)};
  CHECK_THROWS_AS(brute_force_solutions(wide, 50, OracleOptions{.cell_cap = 1000}), Error);
}
