#include "dioph/polysys.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dioph {

std::string var_class_name(VarClass c) {
  switch (c) {
    case VarClass::Fundamental: return "fundamental";
    case VarClass::Auxiliary: return "auxiliary";
    case VarClass::Congruence: return "congruence";
    case VarClass::Plain: return "plain";
  }
  return "plain";
}

VarClass var_class_from_name(const std::string& s) {
  if (s == "fundamental") return VarClass::Fundamental;
  if (s == "auxiliary") return VarClass::Auxiliary;
  if (s == "congruence") return VarClass::Congruence;
  if (s == "plain") return VarClass::Plain;
  fail(ErrorKind::Parse, "BadVarClass", "unknown variable class " + s);
}

namespace {

// graded-lex, descending
bool term_before(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da > db;
  return a > b;
}

}  // namespace

MultiPoly::MultiPoly(RingPtr ring, int nvars) : ring_(std::move(ring)), nvars_(nvars) {}

MultiPoly MultiPoly::constant(const RingElement& c, int nvars) {
  MultiPoly p(c.ring(), nvars);
  if (!c.is_zero()) p.terms_.push_back(Term{std::vector<int>(nvars, 0), c});
  return p;
}

MultiPoly MultiPoly::variable(RingPtr ring, int nvars, int index) {
  MultiPoly p(ring, nvars);
  std::vector<int> e(nvars, 0);
  e[index] = 1;
  p.terms_.push_back(Term{std::move(e), p.ring_->one()});
  return p;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[var]);
  return d;
}

bool MultiPoly::uses(int var) const { return degree_in(var) > 0; }

void MultiPoly::add_term(std::vector<int> exps, RingElement coef) {
  if (static_cast<int>(exps.size()) != nvars_)
    fail(ErrorKind::Internal, "ExponentLength", "exponent vector length mismatch");
  if (coef.is_zero()) return;
  terms_.push_back(Term{std::move(exps), std::move(coef)});
}

void MultiPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return term_before(a.exps, b.exps); });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coef = out.back().coef + t.coef;
    } else {
      out.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : out)
    if (!t.coef.is_zero()) terms_.push_back(std::move(t));
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (const auto& t : o.terms_) r.terms_.push_back(t);
  r.normalize();
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

MultiPoly MultiPoly::scaled(const RingElement& c) const {
  MultiPoly r(ring_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& t : terms_) r.terms_.push_back(Term{t.exps, t.coef * c});
  r.normalize();
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(ring_, nvars_);
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      std::vector<int> e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = a.exps[i] + b.exps[i];
      r.terms_.push_back(Term{std::move(e), a.coef * b.coef});
    }
  }
  r.normalize();
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != o.terms_[i].exps || !(terms_[i].coef == o.terms_[i].coef)) return false;
  return true;
}

RingElement MultiPoly::evaluate(const std::vector<RingElement>& assignment) const {
  RingElement acc = ring_->zero();
  for (const auto& t : terms_) {
    RingElement m = t.coef;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < t.exps[i]; ++e) m = m * assignment[i];
    acc = acc + m;
  }
  return acc;
}

MultiPoly MultiPoly::substitute(int var, const RingElement& value) const {
  MultiPoly r(ring_, nvars_);
  int dmax = degree_in(var);
  std::vector<RingElement> powers{ring_->one()};
  for (int e = 1; e <= dmax; ++e) powers.push_back(powers.back() * value);
  for (const auto& t : terms_) {
    std::vector<int> e = t.exps;
    int k = e[var];
    e[var] = 0;
    r.terms_.push_back(Term{std::move(e), t.coef * powers[k]});
  }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::remapped(int new_nvars, const std::vector<int>& index_map) const {
  MultiPoly r(ring_, new_nvars);
  for (const auto& t : terms_) {
    std::vector<int> e(new_nvars, 0);
    for (int i = 0; i < nvars_; ++i) {
      if (t.exps[i] == 0) continue;
      e[index_map[i]] += t.exps[i];
    }
    r.terms_.push_back(Term{std::move(e), t.coef});
  }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::substitute_poly(int var, const MultiPoly& value) const {
  MultiPoly r(ring_, nvars_);
  int dmax = degree_in(var);
  std::vector<MultiPoly> powers{MultiPoly::constant(ring_->one(), nvars_)};
  for (int e = 1; e <= dmax; ++e) powers.push_back(powers.back() * value);
  for (const auto& t : terms_) {
    std::vector<int> e = t.exps;
    int k = e[var];
    e[var] = 0;
    MultiPoly mono(ring_, nvars_);
    mono.terms_.push_back(Term{std::move(e), t.coef});
    r = r + mono * powers[k];
  }
  return r;
}

int PolySystem::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<RingElement> PolySystem::evaluate(const std::vector<RingElement>& assignment) const {
  if (assignment.size() != vars.size())
    fail(ErrorKind::Validation, "AssignmentSize", "assignment must cover every variable");
  std::vector<RingElement> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.evaluate(assignment));
  return out;
}

std::string PolySystem::fresh_name(const std::string& base) const {
  if (var_index(base) < 0) return base;
  for (int k = 1;; ++k) {
    std::string cand = base + "#" + std::to_string(k);
    if (var_index(cand) < 0) return cand;
  }
}

int PolySystem::add_var(const std::string& base, VarClass cls) {
  std::string name = fresh_name(base);
  vars.push_back(Variable{name, cls});
  for (auto& p : polys) {
    std::vector<int> map(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) map[i] = i;
    p = p.remapped(static_cast<int>(vars.size()), map);
  }
  return static_cast<int>(vars.size()) - 1;
}

void PolySystem::check_well_formed() const {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v.name).second)
      fail(ErrorKind::Validation, "DuplicateVariable", "duplicate variable " + v.name);
  }
  for (const auto& p : polys) {
    if (p.nvars() != static_cast<int>(vars.size()))
      fail(ErrorKind::Validation, "ArityMismatch", "polynomial arity does not match variable list");
    if (!same_ring(p.ring(), ring))
      fail(ErrorKind::Validation, "RingMismatch", "polynomial over a different ring");
  }
}

// ---------------------------------------------------------------- operations

namespace {

// one pairing step of the combiner
MultiPoly combine_pair(const MultiPoly& f, const MultiPoly& g, const RootlessPolynomial& p) {
  const int n = static_cast<int>(p.coeffs.size()) - 1;
  std::vector<MultiPoly> fp{MultiPoly::constant(f.ring()->one(), f.nvars())};
  std::vector<MultiPoly> gp{MultiPoly::constant(f.ring()->one(), f.nvars())};
  for (int i = 1; i <= n; ++i) {
    fp.push_back(fp.back() * f);
    gp.push_back(gp.back() * g);
  }
  MultiPoly acc(f.ring(), f.nvars());
  for (int i = 0; i <= n; ++i) {
    // a_i f^i g^(n-i)
    acc = acc + (fp[i] * gp[n - i]).scaled(p.coeffs[i]);
  }
  return acc;
}

}  // namespace

PolySystem combine_to_single(const PolySystem& system, const RootlessPolynomial& p) {
  if (system.polys.empty())
    fail(ErrorKind::Validation, "EmptySystem", "nothing to combine");
  if (p.coeffs.size() < 3)
    fail(ErrorKind::Validation, "DegreeTooSmall", "rootless polynomial must have degree >= 2");
  if (!same_ring(system.ring, p.ring))
    fail(ErrorKind::Validation, "RingMismatch", "rootless polynomial over a different ring");
  MultiPoly acc = system.polys.front();
  for (size_t i = 1; i < system.polys.size(); ++i) acc = combine_pair(acc, system.polys[i], p);
  PolySystem out;
  out.ring = system.ring;
  out.vars = system.vars;
  out.polys = {acc};
  return out;
}

namespace {

// Exhaustively decide whether c has a square root in the ring.
bool square_exists_in_ring(const RingPtr& ring, const Int& c) {
  if (!t2_norm_available(ring))
    fail(ErrorKind::SearchExhausted, "SearchExhausted",
         "no exact T2 form; cannot certify square search in this ring");
  Rat t2 = Rat(ring->degree()) * Rat(abs_int(c));
  auto bounds = t2_coordinate_bounds(ring, t2);
  const int d = ring->degree();
  VecI v(d);
  for (int i = 0; i < d; ++i) v(i) = -bounds[i];
  RingElement target = ring->from_int(c);
  while (true) {
    RingElement x = ring->element(v);
    if ((x * x) == target) return true;
    int pos = 0;
    while (pos < d && v(pos) == bounds[pos]) {
      v(pos) = -bounds[pos];
      ++pos;
    }
    if (pos == d) return false;
    v(pos) += 1;
  }
}

}  // namespace

RootlessPolynomial find_rootless_quadratic(const RingPtr& ring, long search_bound) {
  if (ring->real_embedding_count() > 0) {
    return RootlessPolynomial{ring,
                              {ring->one(), ring->zero(), ring->one()},
                              RootlessReason::RealEmbeddingObstruction};
  }
  // deterministic prime search order c = 2, 3, 5, ...
  std::vector<long> primes;
  for (long c = 2; c <= search_bound; ++c) {
    bool prime = c >= 2;
    for (long p = 2; p * p <= c; ++p)
      if (c % p == 0) prime = false;
    if (prime) primes.push_back(c);
  }
  for (long c : primes) {
    if (!square_exists_in_ring(ring, Int(c))) {
      return RootlessPolynomial{ring,
                                {ring->from_int(Int(-c)), ring->zero(), ring->one()},
                                RootlessReason::ExhaustiveSquareSearch};
    }
  }
  fail(ErrorKind::SearchExhausted, "SearchExhausted", "no certified rootless quadratic found in bound");
}

PolySystem unit_gadget(const RingPtr& ring, const std::string& var) {
  PolySystem s;
  s.ring = ring;
  s.vars = {Variable{var, VarClass::Fundamental}, Variable{var + "_inv", VarClass::Auxiliary}};
  MultiPoly t = MultiPoly::variable(ring, 2, 0), u = MultiPoly::variable(ring, 2, 1);
  s.polys = {t * u - MultiPoly::constant(ring->one(), 2)};
  return s;
}

PolySystem nonzero_gadget(const RingPtr& ring, const std::string& var) {
  PolySystem s;
  s.ring = ring;
  s.vars = {Variable{var, VarClass::Fundamental},
            Variable{var + "_y", VarClass::Auxiliary},
            Variable{var + "_z", VarClass::Auxiliary},
            Variable{var + "_w", VarClass::Auxiliary}};
  MultiPoly x = MultiPoly::variable(ring, 4, 0), y = MultiPoly::variable(ring, 4, 1),
            z = MultiPoly::variable(ring, 4, 2), w = MultiPoly::variable(ring, 4, 3);
  MultiPoly two = MultiPoly::constant(ring->from_int(2), 4);
  MultiPoly three = MultiPoly::constant(ring->from_int(3), 4);
  MultiPoly one = MultiPoly::constant(ring->one(), 4);
  s.polys = {(two * y - one) * (three * z - one) - x * w};
  return s;
}

NonzeroWitness witness_nonzero(const RingElement& x, const Int& factor_bound) {
  if (x.is_zero()) fail(ErrorKind::Validation, "ZeroInput", "the nonzero witness needs x != 0");
  const RingPtr& ring = x.ring();
  IntegralIdeal xi = IntegralIdeal::principal(x);
  IntegralIdeal frak_a = IntegralIdeal::unit(ring), frak_b = IntegralIdeal::unit(ring);
  bool split_done = false;
  if (ring->degree() <= 2 && xi.norm() <= factor_bound) {
    auto factors = factor_ideal_quadratic(xi, factor_bound);
    frak_a = IntegralIdeal::unit(ring);
    frak_b = IntegralIdeal::unit(ring);
    for (const auto& pf : factors) {
      if (pf.residue_characteristic == 2)
        frak_b = frak_b.product(pf.prime.pow(pf.exponent));
      else
        frak_a = frak_a.product(pf.prime.pow(pf.exponent));
    }
    split_done = true;
  }
  if (!split_done) {
    // peel the 2-part by ideal quotients; no factorization needed
    IntegralIdeal two = IntegralIdeal::principal(ring->from_int(2));
    IntegralIdeal a = xi, b = IntegralIdeal::unit(ring);
    while (true) {
      IntegralIdeal g = a.sum(two);
      if (g.is_unit()) break;
      IntegralIdeal q = a.colon(g);
      if (!(q.product(g) == a))
        fail(ErrorKind::Internal, "SaturationStep", "inexact ideal quotient in 2-part peeling");
      a = q;
      b = b.product(g);
    }
    frak_a = a;
    frak_b = b;
  }
  if (!(frak_a.product(frak_b) == xi))
    fail(ErrorKind::Internal, "SplitMismatch", "ideal split does not multiply back");
  auto y = frak_a.is_unit() ? std::optional<RingElement>(ring->zero())
                            : frak_a.solve_mod(ring->from_int(2), ring->one());
  auto z = frak_b.is_unit() ? std::optional<RingElement>(ring->zero())
                            : frak_b.solve_mod(ring->from_int(3), ring->one());
  if (!y || !z) fail(ErrorKind::Internal, "ModularInverse", "inverse of 2 or 3 missing modulo the split");
  RingElement lhs = (ring->from_int(2) * *y - ring->one()) * (ring->from_int(3) * *z - ring->one());
  auto w = lhs.divide_exact(x);
  if (!w) fail(ErrorKind::Internal, "WitnessDivision", "(2y-1)(3z-1) not divisible by x");
  return NonzeroWitness{*y, *z, *w};
}

namespace {

// Append a renamed copy of src to dst, returning the index map; vars whose
// name appears in `share` are identified with the existing variable.
std::vector<int> append_system(PolySystem& dst, const PolySystem& src,
                               const std::map<std::string, std::string>& share) {
  std::vector<int> map(src.vars.size(), -1);
  for (size_t i = 0; i < src.vars.size(); ++i) {
    auto it = share.find(src.vars[i].name);
    if (it != share.end()) {
      int idx = dst.var_index(it->second);
      if (idx < 0) fail(ErrorKind::Internal, "ShareTarget", "shared variable missing in target");
      map[i] = idx;
    } else {
      map[i] = dst.add_var(src.vars[i].name, src.vars[i].cls);
    }
  }
  for (const auto& p : src.polys)
    dst.polys.push_back(p.remapped(static_cast<int>(dst.vars.size()), map));
  // earlier polys keep their arity in sync
  for (auto& p : dst.polys) {
    if (p.nvars() != static_cast<int>(dst.vars.size())) {
      std::vector<int> idmap(p.nvars());
      for (int i = 0; i < p.nvars(); ++i) idmap[i] = i;
      p = p.remapped(static_cast<int>(dst.vars.size()), idmap);
    }
  }
  return map;
}

RingElement include_element(const SubringRegistration& reg, const RingPtr& big, const RingElement& x) {
  return RingElement(big, VecI(reg.inclusion * x.coords()));
}

// Map a system over the registered subring into the big ring.
PolySystem include_system(const PolySystem& small, const RingPtr& big, const SubringRegistration& reg) {
  if (!same_ring(small.ring, reg.subring))
    fail(ErrorKind::Validation, "MissingInclusion", "system ring does not match the registered subring");
  PolySystem out;
  out.ring = big;
  out.vars = small.vars;
  for (const auto& p : small.polys) {
    MultiPoly q(big, p.nvars());
    for (const auto& t : p.terms()) q.add_term(t.exps, include_element(reg, big, t.coef));
    q.normalize();
    out.polys.push_back(std::move(q));
  }
  return out;
}

}  // namespace

DiophDefinition intersect_definitions(const DiophDefinition& a, const DiophDefinition& b) {
  if (!same_ring(a.system.ring, b.system.ring))
    fail(ErrorKind::Validation, "RingMismatch", "definitions over different rings");
  if (a.distinguished_t != b.distinguished_t)
    fail(ErrorKind::Validation, "DistinguishedMismatch", "definitions disagree on the distinguished variable");
  DiophDefinition out;
  out.system.ring = a.system.ring;
  out.distinguished_t = a.distinguished_t;
  out.target_tag = a.target_tag + " & " + b.target_tag;
  append_system(out.system, a.system, {});
  append_system(out.system, b.system, {{b.distinguished_t, a.distinguished_t}});
  return out;
}

DiophDefinition compose_transitive(const DiophDefinition& def_outer, const DiophDefinition& def_inner,
                                   const std::string& inclusion_name) {
  const RingPtr& big = def_inner.system.ring;
  if (!big->has_subring(inclusion_name))
    fail(ErrorKind::Validation, "MissingInclusion", "no registered inclusion " + inclusion_name);
  const auto& reg = big->subring(inclusion_name);
  PolySystem mapped = include_system(def_outer.system, big, reg);

  DiophDefinition out;
  out.system.ring = big;
  out.distinguished_t = def_outer.distinguished_t;
  out.target_tag = def_outer.target_tag;
  append_system(out.system, mapped, {});
  // every outer variable is pinned into the inner image set
  for (const auto& v : mapped.vars) {
    append_system(out.system, def_inner.system, {{def_inner.distinguished_t, v.name}});
  }
  return out;
}

DiophDefinition superset_shrink(const DiophDefinition& def_of_s, const RingElement& alpha) {
  const RingPtr& ring = def_of_s.system.ring;
  if (!same_ring(alpha.ring(), ring))
    fail(ErrorKind::Validation, "RingMismatch", "alpha must live in the definition's ring");
  // degree of alpha over Q: rank of its power lattice
  int deg = 1;
  {
    const int d = ring->degree();
    MatI pows(d + 1, d);
    RingElement acc = ring->one();
    for (int i = 0; i <= d; ++i) {
      pows.row(i) = acc.coords().transpose();
      acc = acc * alpha;
    }
    for (deg = 1; deg <= d; ++deg) {
      MatI sub = pows.topRows(deg + 1);
      if (hnf_rows(sub).rows() < deg + 1) break;  // minimal dependency: degree = deg
    }
  }

  DiophDefinition out;
  out.system.ring = ring;
  out.distinguished_t = "x";
  out.target_tag = "ring-of-integers via " + def_of_s.target_tag;
  int xi = out.system.add_var("x", VarClass::Fundamental);
  int bi = out.system.add_var("b", VarClass::Auxiliary);
  std::vector<int> svars, evars;
  for (int i = 0; i <= deg; ++i) {
    svars.push_back(out.system.add_var("s" + std::to_string(i), VarClass::Auxiliary));
    evars.push_back(out.system.add_var("e" + std::to_string(i), VarClass::Auxiliary));
  }
  const int n = static_cast<int>(out.system.vars.size());
  // b x = sum e_i s_i alpha^i ; e_i^2 = 1
  MultiPoly main = MultiPoly::variable(ring, n, bi) * MultiPoly::variable(ring, n, xi);
  RingElement apow = ring->one();
  for (int i = 0; i <= deg; ++i) {
    MultiPoly term = MultiPoly::variable(ring, n, evars[i]) * MultiPoly::variable(ring, n, svars[i]);
    main = main - term.scaled(apow);
    apow = apow * alpha;
  }
  out.system.polys.push_back(main);
  for (int i = 0; i <= deg; ++i) {
    MultiPoly e = MultiPoly::variable(ring, n, evars[i]);
    out.system.polys.push_back(e * e - MultiPoly::constant(ring->one(), n));
  }
  // b and every s_i drawn from S
  append_system(out.system, def_of_s.system, {{def_of_s.distinguished_t, "b"}});
  for (int i = 0; i <= deg; ++i) {
    append_system(out.system, def_of_s.system,
                  {{def_of_s.distinguished_t, "s" + std::to_string(i)}});
  }
  // b nonzero
  PolySystem nz = nonzero_gadget(ring, "b_nz");
  append_system(out.system, nz, {{"b_nz", "b"}});
  return out;
}

PolySystem transport(const PolySystem& b, const DiophDefinition& def, const std::string& inclusion_name) {
  const RingPtr& big = def.system.ring;
  if (!big->has_subring(inclusion_name))
    fail(ErrorKind::Validation, "MissingInclusion", "no registered inclusion " + inclusion_name);
  const auto& reg = big->subring(inclusion_name);
  PolySystem mapped = include_system(b, big, reg);
  PolySystem out;
  out.ring = big;
  append_system(out, mapped, {});
  for (const auto& v : mapped.vars) {
    append_system(out, def.system, {{def.distinguished_t, v.name}});
  }
  return out;
}

std::vector<RingElement> veronese(const std::vector<RingElement>& coords, int h) {
  if (coords.empty()) fail(ErrorKind::Validation, "AllZero", "empty coordinate vector");
  bool allzero = true;
  for (const auto& c : coords)
    if (!c.is_zero()) allzero = false;
  if (allzero) fail(ErrorKind::Validation, "AllZero", "coordinates must not all vanish");
  if (h < 1) fail(ErrorKind::Validation, "DegreeTooSmall", "veronese degree must be positive");
  std::vector<RingElement> out;
  std::vector<int> exps(coords.size(), 0);
  // lexicographic over exponent vectors, first coordinate dominant
  std::function<void(size_t, int)> rec = [&](size_t pos, int remaining) {
    if (pos + 1 == coords.size()) {
      exps[pos] = remaining;
      RingElement m = coords.front().ring()->one();
      for (size_t i = 0; i < coords.size(); ++i)
        for (int e = 0; e < exps[i]; ++e) m = m * coords[i];
      out.push_back(m);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      exps[pos] = e;
      rec(pos + 1, remaining - e);
    }
  };
  rec(0, h);
  return out;
}

PolySystem total_positivity_system(const RingPtr& ring, const std::string& x, const std::string& z) {
  PolySystem s;
  s.ring = ring;
  int xi = s.add_var(x, VarClass::Fundamental);
  int zi = s.add_var(z, VarClass::Fundamental);
  std::vector<int> ys;
  for (int i = 1; i <= 5; ++i) ys.push_back(s.add_var("y" + std::to_string(i), VarClass::Auxiliary));
  const int n0 = static_cast<int>(s.vars.size());
  auto v = [&](int idx, int n) { return MultiPoly::variable(ring, n, idx); };
  MultiPoly main = v(ys[4], n0) * v(ys[4], n0) * (v(xi, n0) - v(zi, n0));
  for (int i = 0; i < 4; ++i) main = main - v(ys[i], n0) * v(ys[i], n0);
  s.polys.push_back(main);
  PolySystem nz = nonzero_gadget(ring, "y5_nz");
  append_system(s, nz, {{"y5_nz", "y5"}});
  return s;
}

// ------------------------------------------------------------------- oracle

namespace {

// returns: 0 constant-zero, 1 constant-nonzero, 2 non-constant
int classify(const MultiPoly& p) {
  if (p.is_zero()) return 0;
  for (const auto& t : p.terms()) {
    for (int e : t.exps)
      if (e > 0) return 2;
  }
  return 1;
}

struct DfsState {
  const PolySystem* system;
  std::vector<RingElement> box_values;
  long radius;
  long long nodes = 0;
  long long cap;
  std::vector<Assignment> solutions;
};

bool in_box(const RingElement& x, long radius) {
  for (Eigen::Index i = 0; i < x.coords().size(); ++i)
    if (abs_int(x.coords()(i)) > radius) return false;
  return true;
}

void dfs(DfsState& st, std::vector<MultiPoly> polys, std::vector<std::optional<RingElement>>& assigned) {
  const RingPtr& ring = st.system->ring;
  const int n = static_cast<int>(st.system->vars.size());

  // forced assignments made in this frame are undone on every exit path
  std::vector<int> frame_assigned;
  struct Guard {
    std::vector<std::optional<RingElement>>& assigned;
    std::vector<int>& made;
    ~Guard() {
      for (int v : made) assigned[v] = std::nullopt;
    }
  } guard{assigned, frame_assigned};

  // propagate constants and forced linear variables
  while (true) {
    std::vector<MultiPoly> keep;
    for (auto& p : polys) {
      int c = classify(p);
      if (c == 1) return;  // contradiction
      if (c == 2) keep.push_back(std::move(p));
    }
    polys = std::move(keep);
    int forced_var = -1;
    RingElement forced_value;
    for (const auto& p : polys) {
      int var = -1;
      bool single = true;
      for (int i = 0; i < n && single; ++i) {
        if (!p.uses(i)) continue;
        if (assigned[i].has_value()) fail(ErrorKind::Internal, "StaleVariable", "assigned variable survived substitution");
        if (var < 0) var = i;
        else if (var != i) single = false;
      }
      if (!single || var < 0) continue;
      if (p.degree_in(var) != 1) continue;
      // p = c * var + e
      RingElement c = ring->zero(), e = ring->zero();
      for (const auto& t : p.terms()) {
        if (t.exps[var] == 1) c = c + t.coef;
        else e = e + t.coef;
      }
      auto sol = (-e).divide_exact(c);
      if (!sol || !in_box(*sol, st.radius)) return;  // no completion in the box
      forced_var = var;
      forced_value = *sol;
      break;
    }
    if (forced_var < 0) break;
    assigned[forced_var] = forced_value;
    frame_assigned.push_back(forced_var);
    for (auto& p : polys) p = p.substitute(forced_var, forced_value);
    // re-run the propagation loop
  }

  // pick the next variable: prefer one with a univariate constraint
  int next = -1;
  for (const auto& p : polys) {
    int var = -1;
    bool single = true;
    for (int i = 0; i < n && single; ++i) {
      if (!p.uses(i)) continue;
      if (var < 0) var = i;
      else if (var != i) single = false;
    }
    if (single && var >= 0) {
      next = var;
      break;
    }
  }
  if (next < 0) {
    for (int i = 0; i < n; ++i)
      if (!assigned[i]) { next = i; break; }
  }

  if (next < 0) {
    Assignment sol;
    for (int i = 0; i < n; ++i) sol.push_back(*assigned[i]);
    st.solutions.push_back(std::move(sol));
    return;
  }

  for (const auto& val : st.box_values) {
    if (++st.nodes > st.cap)
      fail(ErrorKind::Validation, "BoxTooLarge", "oracle exceeded the configured cell cap");
    std::vector<MultiPoly> sub;
    sub.reserve(polys.size());
    bool dead = false;
    for (const auto& p : polys) {
      MultiPoly q = p.substitute(next, val);
      int c = classify(q);
      if (c == 1) { dead = true; break; }
      if (c == 2) sub.push_back(std::move(q));
    }
    if (dead) continue;
    assigned[next] = val;
    dfs(st, sub, assigned);
    assigned[next] = std::nullopt;
  }
}

}  // namespace

// Fast path: static-order nested enumeration over int64 coordinates with a
// precomputed per-level evaluation plan.  Only used when an exact bound
// certifies that no intermediate coordinate can overflow.
namespace {

struct FastPlan {
  int d = 0;
  int nv = 0;
  std::vector<long long> table;  // (d*d) x d flattened ring multiplication
  struct LevelStep {
    // child accumulation: child_coefs[child[t]] += parent_coefs[t] * val^exp[t]
    std::vector<int> child;
    std::vector<int> exp;
    int nchildren = 0;
    int max_exp = 0;
  };
  struct PolyPlan {
    std::vector<std::vector<long long>> level0;  // term coefficients, d each
    std::vector<LevelStep> steps;                // one per variable level
    int const_level = 0;  // first level at which the poly is constant
  };
  std::vector<PolyPlan> polys;
};

using acc_t = __int128;

void fast_mul(const FastPlan& plan, const acc_t* a, const acc_t* b, acc_t* out) {
  const int d = plan.d;
  for (int t = 0; t < d; ++t) out[t] = 0;
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      acc_t c = a[i] * b[j];
      const long long* row = &plan.table[(i * d + j) * d];
      for (int t = 0; t < d; ++t) out[t] += c * row[t];
    }
  }
}

// Exact overflow audit of the whole plan, done in Int arithmetic.
bool plan_fits_acc(const FastPlan& plan, long radius) {
  const Int lim = (Int(1) << 119);
  Int gamma = 0;
  for (int i = 0; i < plan.d * plan.d; ++i) {
    Int s = 0;
    for (int t = 0; t < plan.d; ++t) s += abs_int(Int(plan.table[(i * plan.d + t)]));
    gamma = std::max(gamma, s);
  }
  if (gamma == 0) gamma = 1;
  Int r(radius);
  for (const auto& pp : plan.polys) {
    // value powers: val^e coordinate bound
    std::vector<Int> parent;
    for (const auto& c : pp.level0) {
      Int m = 0;
      for (long long x : c) m = std::max(m, abs_int(Int(x)));
      parent.push_back(m);
    }
    for (const auto& st : pp.steps) {
      std::vector<Int> powb(st.max_exp + 1);
      powb[0] = 1;
      for (int e = 1; e <= st.max_exp; ++e) {
        powb[e] = powb[e - 1] * r * gamma;
        if (powb[e] > lim) return false;
      }
      std::vector<Int> child(st.nchildren, Int(0));
      for (size_t t = 0; t < parent.size(); ++t) {
        child[st.child[t]] += parent[t] * powb[st.exp[t]] * gamma;
        if (child[st.child[t]] > lim) return false;
      }
      parent = std::move(child);
    }
  }
  return true;
}

std::optional<FastPlan> build_fast_plan(const PolySystem& system, long radius) {
  FastPlan plan;
  plan.d = system.ring->degree();
  if (plan.d > 8) return std::nullopt;
  plan.nv = static_cast<int>(system.vars.size());
  const MatI& table = system.ring->power_table();
  for (int i = 0; i < plan.d * plan.d; ++i)
    for (int t = 0; t < plan.d; ++t) {
      const Int& v = table(i, t);
      if (abs_int(v) > Int(1000000)) return std::nullopt;
      plan.table.push_back(static_cast<long long>(v));
    }
  for (const auto& p : system.polys) {
    FastPlan::PolyPlan pp;
    // terms with exps; level 0 coefficients
    std::vector<std::vector<int>> exps;
    for (const auto& t : p.terms()) {
      std::vector<long long> c(plan.d);
      for (int j = 0; j < plan.d; ++j) {
        if (abs_int(t.coef.coords()(j)) > (Int(1) << 40)) return std::nullopt;
        c[j] = static_cast<long long>(t.coef.coords()(j));
      }
      pp.level0.push_back(std::move(c));
      exps.push_back(t.exps);
    }
    if (pp.level0.empty()) {
      pp.level0.push_back(std::vector<long long>(plan.d, 0));
      exps.push_back(std::vector<int>(plan.nv, 0));
    }
    // group terms level by level
    std::vector<std::vector<int>> cur = exps;  // residual exps of current level's terms
    pp.const_level = plan.nv;
    for (int l = 0; l < plan.nv; ++l) {
      FastPlan::LevelStep st;
      std::map<std::vector<int>, int> groups;
      st.child.resize(cur.size());
      st.exp.resize(cur.size());
      std::vector<std::vector<int>> next;
      for (size_t t = 0; t < cur.size(); ++t) {
        st.exp[t] = cur[t][l];
        st.max_exp = std::max(st.max_exp, st.exp[t]);
        std::vector<int> residual = cur[t];
        residual[l] = 0;
        auto it = groups.find(residual);
        if (it == groups.end()) {
          it = groups.emplace(residual, static_cast<int>(next.size())).first;
          next.push_back(residual);
        }
        st.child[t] = it->second;
      }
      st.nchildren = static_cast<int>(next.size());
      pp.steps.push_back(std::move(st));
      cur = std::move(next);
      bool isconst = true;
      for (const auto& e : cur)
        for (int v : e)
          if (v != 0) isconst = false;
      if (isconst && pp.const_level == plan.nv) pp.const_level = l + 1;
    }
    plan.polys.push_back(std::move(pp));
  }
  if (!plan_fits_acc(plan, radius)) return std::nullopt;
  return plan;
}

std::vector<Assignment> fast_enumerate(const PolySystem& system, const FastPlan& plan, long radius,
                                       long long cap) {
  const int d = plan.d, nv = plan.nv;
  // box values, lexicographic coordinate order
  std::vector<std::vector<long long>> values;
  {
    std::vector<long long> v(d, -radius);
    while (true) {
      values.push_back(v);
      int pos = d - 1;
      while (pos >= 0 && v[pos] == radius) {
        v[pos] = -radius;
        --pos;
      }
      if (pos < 0) break;
      v[pos] += 1;
    }
  }
  const size_t npolys = plan.polys.size();
  // per-level coefficient buffers
  std::vector<std::vector<std::vector<acc_t>>> coefs(npolys);
  for (size_t p = 0; p < npolys; ++p) {
    coefs[p].resize(nv + 1);
    coefs[p][0].resize(plan.polys[p].level0.size() * d);
    for (size_t t = 0; t < plan.polys[p].level0.size(); ++t)
      for (int j = 0; j < d; ++j) coefs[p][0][t * d + j] = plan.polys[p].level0[t][j];
    for (int l = 0; l < nv; ++l) coefs[p][l + 1].resize(plan.polys[p].steps[l].nchildren * d);
  }
  int max_exp_all = 1;
  for (const auto& pp : plan.polys)
    for (const auto& st : pp.steps) max_exp_all = std::max(max_exp_all, st.max_exp);
  // powers of every box value, precomputed once
  const size_t pstride = static_cast<size_t>(max_exp_all + 1) * d;
  std::vector<acc_t> pow_table(values.size() * pstride);
  std::vector<acc_t> vbuf(d);
  for (size_t vi = 0; vi < values.size(); ++vi) {
    acc_t* base = &pow_table[vi * pstride];
    for (int j = 0; j < d; ++j) {
      base[j] = (j == 0 ? 1 : 0);
      vbuf[j] = values[vi][j];
    }
    for (int e = 1; e <= max_exp_all; ++e)
      fast_mul(plan, base + (e - 1) * d, vbuf.data(), base + e * d);
  }
  std::vector<Assignment> solutions;
  std::vector<size_t> choice(nv, 0);
  long long nodes = 0;
  std::vector<acc_t> tmp(d);

  std::function<void(int)> rec = [&](int level) {
    if (level == nv) {
      Assignment sol;
      for (int l = 0; l < nv; ++l) {
        VecI c(d);
        for (int j = 0; j < d; ++j) c(j) = Int(values[choice[l]][j]);
        sol.push_back(system.ring->element(std::move(c)));
      }
      solutions.push_back(std::move(sol));
      return;
    }
    for (size_t vi = 0; vi < values.size(); ++vi) {
      if (++nodes > cap)
        fail(ErrorKind::Validation, "BoxTooLarge", "oracle exceeded the configured cell cap");
      const acc_t* powers = &pow_table[vi * pstride];
      bool dead = false;
      for (size_t p = 0; p < npolys && !dead; ++p) {
        const auto& st = plan.polys[p].steps[level];
        auto& out = coefs[p][level + 1];
        std::fill(out.begin(), out.end(), 0);
        const auto& in = coefs[p][level];
        const size_t nterms = st.child.size();
        for (size_t t = 0; t < nterms; ++t) {
          const acc_t* c = &in[t * d];
          bool zero = true;
          for (int j = 0; j < d; ++j) zero = zero && c[j] == 0;
          if (zero) continue;
          int e = st.exp[t];
          acc_t* dst = &out[st.child[t] * d];
          if (e == 0) {
            for (int j = 0; j < d; ++j) dst[j] += c[j];
          } else {
            fast_mul(plan, c, powers + e * d, tmp.data());
            for (int j = 0; j < d; ++j) dst[j] += tmp[j];
          }
        }
        if (plan.polys[p].const_level <= level + 1) {
          const acc_t* c0 = &out[0];
          for (int j = 0; j < d; ++j)
            if (c0[j] != 0) dead = true;
        }
      }
      if (dead) continue;
      choice[level] = vi;
      rec(level + 1);
    }
  };
  rec(0);
  return solutions;
}

}  // namespace

std::vector<Assignment> brute_force_solutions(const PolySystem& system, long radius,
                                              const OracleOptions& opts) {
  system.check_well_formed();
  std::vector<Assignment> solutions;
  auto plan = build_fast_plan(system, radius);
  if (plan) {
    solutions = fast_enumerate(system, *plan, radius, opts.cell_cap);
  } else {
    DfsState st;
    st.system = &system;
    st.radius = radius;
    st.cap = opts.cell_cap;
    const int d = system.ring->degree();
    // box values in lexicographic coordinate order
    VecI v = VecI::Constant(d, Int(-radius));
    while (true) {
      st.box_values.push_back(system.ring->element(v));
      int pos = d - 1;
      while (pos >= 0 && v(pos) == radius) {
        v(pos) = -radius;
        --pos;
      }
      if (pos < 0) break;
      v(pos) += 1;
    }
    std::vector<std::optional<RingElement>> assigned(system.vars.size());
    dfs(st, system.polys, assigned);
    solutions = std::move(st.solutions);
  }
  std::sort(solutions.begin(), solutions.end(), [](const Assignment& a, const Assignment& b) {
    for (size_t i = 0; i < a.size(); ++i) {
      for (Eigen::Index j = 0; j < a[i].coords().size(); ++j) {
        if (a[i].coords()(j) != b[i].coords()(j)) return a[i].coords()(j) < b[i].coords()(j);
      }
    }
    return false;
  });
  return solutions;
}

std::vector<RingElement> solution_values(const PolySystem& system, long radius,
                                         const std::string& var, const OracleOptions& opts) {
  int idx = system.var_index(var);
  if (idx < 0) fail(ErrorKind::Validation, "NoSuchVariable", "unknown variable " + var);
  auto sols = brute_force_solutions(system, radius, opts);
  std::vector<RingElement> out;
  for (const auto& s : sols) {
    bool seen = false;
    for (const auto& x : out)
      if (x == s[idx]) seen = true;
    if (!seen) out.push_back(s[idx]);
  }
  return out;
}

}  // namespace dioph
