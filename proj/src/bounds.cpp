#include "dioph/bounds.hpp"

#include <map>

namespace dioph {

BoundContext make_bound_context(int m, int cap) {
  if (m < 1 || m > cap)
    fail(ErrorKind::Validation, "CapExceeded", "m must satisfy 1 <= m <= cap");
  MatI mat(m + 1, m + 1);
  for (int r = 0; r <= m; ++r)
    for (int j = 0; j <= m; ++j) mat(r, j) = pow_int(Int(r), static_cast<unsigned>(m - j));
  Int maxminor = max_abs_minor_all_orders(mat);
  BoundContext ctx;
  ctx.m = m;
  ctx.power_matrix = mat;
  ctx.c = Int(m + 1) * Int(m + 1) * (maxminor + 1);
  return ctx;
}

Int c_of_m(int m, int cap) { return make_bound_context(m, cap).c; }

RingElement u_of(int m, const RingElement& alpha, int cap) {
  Int c = c_of_m(m, cap);
  RingElement acc = alpha * c;
  for (int i = 1; i <= m; ++i) acc = acc * (alpha.ring()->from_int(i) - alpha);
  return acc;
}

RingElement d_of(int m, const RingElement& alpha, int cap) {
  RingElement u = u_of(m, alpha, cap);
  return u.pow(Int(m) * Int(m));
}

NormGapReport check_norm_gap(const RingElement& alpha, const IntegralIdeal& ideal, int m) {
  const RingPtr& ring = alpha.ring();
  if (!same_ring(ideal.ring(), ring))
    fail(ErrorKind::Validation, "RingMismatch", "ideal and element rings differ");
  RingElement big_d = d_of(m, alpha);
  if (big_d.is_zero())
    fail(ErrorKind::Validation, "ZeroIdeal", "D(m, alpha) vanishes; the norm gap is vacuous");
  IntegralIdeal dom = IntegralIdeal::principal(big_d);
  if (ideal.is_zero() || !ideal.subset_of(dom))
    fail(ErrorKind::Validation, "PreconditionFailed", "ideal must sit inside D(m, alpha)");
  NormGapReport report;
  report.holds = true;
  Int in = ideal.norm();
  auto names = ring->automorphism_names();
  if (names.empty() && ring->degree() > 1)
    fail(ErrorKind::Validation, "MissingAutomorphisms",
         "the ring has no registered automorphisms to supply conjugates");
  report.margins.push_back(ConjugateMargin{"id", Int(0), in, in > 0});
  for (const auto& name : names) {
    RingElement beta = apply_automorphism(ring->automorphism(name), alpha);
    Int gap = abs_int((alpha - beta).norm());
    report.margins.push_back(ConjugateMargin{name, gap, in, gap < in});
    if (gap >= in) report.holds = false;
  }
  return report;
}

std::string capture_variant_name(CaptureVariant v) {
  switch (v) {
    case CaptureVariant::Finite: return "finite";
    case CaptureVariant::TotallyReal: return "totreal";
    case CaptureVariant::Quadratic: return "quad";
  }
  return "finite";
}

CaptureVariant capture_variant_from_name(const std::string& s) {
  if (s == "finite") return CaptureVariant::Finite;
  if (s == "totreal" || s == "totally_real") return CaptureVariant::TotallyReal;
  if (s == "quad" || s == "quadratic") return CaptureVariant::Quadratic;
  fail(ErrorKind::Parse, "BadVariant", "unknown capture variant " + s);
}

namespace {

[[noreturn]] void clause(const std::string& which, const std::string& msg) {
  fail(ErrorKind::CertificateInvalid, "CertificateInvalid", which + ": " + msg);
}

struct CaptureContext {
  const SubringRegistration* reg;
  IntegralIdeal ideal_big;  // I O_L
};

CaptureContext open_certificate(const CaptureCertificate& cert) {
  if (!cert.big_ring->has_subring(cert.subring_name))
    fail(ErrorKind::Validation, "MissingInclusion", "subring " + cert.subring_name + " not registered");
  const auto& reg = cert.big_ring->subring(cert.subring_name);
  if (!same_ring(cert.b.ring(), reg.subring))
    fail(ErrorKind::Validation, "RingMismatch", "b must live in the subring");
  if (!same_ring(cert.ideal.ring(), reg.subring))
    fail(ErrorKind::Validation, "RingMismatch", "the ideal must live in the subring");
  if (cert.ideal.is_zero()) clause("ideal", "the certificate ideal is zero");
  std::vector<RingElement> gens;
  for (int r = 0; r < cert.ideal.hnf().rows(); ++r) {
    RingElement g(reg.subring, cert.ideal.hnf().row(r).transpose());
    gens.push_back(RingElement(cert.big_ring, VecI(reg.inclusion * g.coords())));
  }
  return CaptureContext{&reg, IntegralIdeal::from_generators(gens)};
}

RingElement extract_subring(const CaptureCertificate& cert, const CaptureContext& ctx) {
  auto coords = solve_integer(ctx.reg->inclusion, cert.alpha.coords());
  if (!coords)
    fail(ErrorKind::Internal, "NotInSubring",
         "certificate verified but alpha is outside the subring lattice; "
         "an upstream hypothesis was violated");
  return RingElement(ctx.reg->subring, *coords);
}

RingElement include_sub(const CaptureContext& ctx, const RingPtr& big, const RingElement& x) {
  return RingElement(big, VecI(ctx.reg->inclusion * x.coords()));
}

}  // namespace

RingElement capture_finite(const CaptureCertificate& cert) {
  CaptureContext ctx = open_certificate(cert);
  if (cert.m < 1) fail(ErrorKind::Validation, "CapExceeded", "finite variant needs m >= 1");
  RingElement big_d = d_of(cert.m, cert.alpha);
  if (big_d.is_zero()) {
    // alpha is one of 0, 1, ..., m: directly a subring element
    return extract_subring(cert, ctx);
  }
  IntegralIdeal dom = IntegralIdeal::principal(big_d);
  if (!ctx.ideal_big.subset_of(dom))
    clause("containment", "I O_L is not inside D(m, alpha) O_L");
  RingElement bl = include_sub(ctx, cert.big_ring, cert.b);
  if (!ctx.ideal_big.congruent(cert.alpha, bl))
    clause("congruence", "alpha is not congruent to b modulo I O_L");
  return extract_subring(cert, ctx);
}

RingElement capture_totally_real(const CaptureCertificate& cert) {
  CaptureContext ctx = open_certificate(cert);
  if (!cert.big_ring->is_totally_real())
    fail(ErrorKind::Validation, "PreconditionFailed", "the totally real variant needs a totally real ring");
  if (cert.squares.size() != 4) clause("squares", "need exactly four square witnesses");
  RingElement sum = cert.big_ring->one();
  for (const auto& u : cert.squares) sum = sum + u * u;
  if (!(sum == cert.alpha)) clause("squares", "alpha != 1 + u1^2 + ... + u4^2");
  RingElement v = cert.alpha * Int(2) + cert.big_ring->one();
  IntegralIdeal dom = IntegralIdeal::principal(v * v);
  if (!ctx.ideal_big.subset_of(dom))
    clause("containment", "I O_L is not inside (2 alpha + 1)^2 O_L");
  RingElement bl = include_sub(ctx, cert.big_ring, cert.b);
  if (!ctx.ideal_big.congruent(cert.alpha, bl))
    clause("congruence", "alpha is not congruent to b modulo I O_L");
  return extract_subring(cert, ctx);
}

RingElement capture_quadratic(const CaptureCertificate& cert) {
  CaptureContext ctx = open_certificate(cert);
  const RingPtr& big = cert.big_ring;
  const auto& qe = big->quadratic_extension();
  if (!qe)
    fail(ErrorKind::Validation, "MissingInclusion", "the quadratic variant needs a registered quadratic extension");
  const auto& lreg = big->subring(qe->subring_name);

  if (cert.x2.is_zero()) clause("x2", "X2 must be nonzero");
  if (cert.b_pairs.size() != 2) clause("b-pairs", "need two coordinate pairs for u and v");
  for (const auto& [a, bb] : cert.b_pairs)
    if (bb.is_zero()) clause("b-pairs", "pair denominators must be nonzero");

  // u, v and X1/X2 must lie in the totally real subfield
  auto in_subfield = [&](const FieldElement& q) {
    MatQ inc = to_rational(lreg.inclusion);
    Eigen::FullPivLU<MatQ> lu(inc);
    VecQ sol = lu.solve(q.coords);
    return VecQ(inc * sol - q.coords).isZero(0);
  };
  FieldElement u = field_div(cert.b_pairs[0].first, cert.b_pairs[0].second);
  FieldElement v = field_div(cert.b_pairs[1].first, cert.b_pairs[1].second);
  if (!in_subfield(u)) clause("b-pairs", "u = a/b does not lie in the totally real subfield");
  if (!in_subfield(v)) clause("b-pairs", "v = c/d does not lie in the totally real subfield");
  FieldElement x = field_div(cert.x1, cert.x2);
  if (!in_subfield(x)) clause("x-ratio", "X1/X2 does not lie in the totally real subfield");

  // X1 = X2 [((u-v)^-1)^2 + 1](u^2 + 1), exactly, in the field
  FieldElement diff = u - v;
  bool diff_zero = diff.coords.isZero(0);
  if (diff_zero) clause("x-relation", "u and v must differ");
  NumDen dn = common_denominator(diff);
  FieldElement diff_inv = field_div(cert.big_ring->from_int(dn.den), dn.num);
  FieldElement one = FieldElement::from(big->one());
  FieldElement w = (diff_inv * diff_inv + one) * (u * u + one);
  FieldElement lhs = FieldElement::from(cert.x1);
  FieldElement rhs = FieldElement::from(cert.x2) * w;
  if (!(lhs == rhs)) clause("x-relation", "X1 != X2 [((u-v)^-1)^2 + 1](u^2 + 1)");

  // certified embedding inequalities
  const int nreal = big->real_embedding_count();
  for (int i = 0; i < nreal; ++i) {
    if (!certified_less(big->one(), cert.alpha, i))
      clause("embedding", "1 < sigma(alpha) fails at a real embedding");
    NumDen wx = common_denominator(x);
    RingElement scaled_alpha = cert.alpha * wx.den;
    if (!certified_less(scaled_alpha, wx.num, i))
      clause("embedding", "sigma(alpha) < sigma(X1/X2) fails at a real embedding");
  }
  // non-real embeddings of F restrict to real embeddings of L with sigma(d) < 0
  {
    RingElement delta(big, qe->delta);
    RingElement d_elt = delta * delta;
    auto d_sub = solve_integer(lreg.inclusion, d_elt.coords());
    if (!d_sub) fail(ErrorKind::Internal, "NotInSubring", "delta^2 is outside the registered subfield");
    RingElement d_l(lreg.subring, *d_sub);
    NumDen wx = common_denominator(x);
    auto x_sub = solve_integer(lreg.inclusion, wx.num.coords());
    if (!x_sub) clause("x-ratio", "scaled X1/X2 is outside the subfield lattice");
    RingElement x_l(lreg.subring, *x_sub);
    for (int i = 0; i < lreg.subring->real_embedding_count(); ++i) {
      if (certified_sign(d_l, i) > 0) continue;  // extends to real embeddings of F
      // tau(X) >= 1, i.e. sigma(num) >= den (den > 0)
      RingElement shifted = x_l - lreg.subring->from_int(wx.den);
      if (!shifted.is_zero() && certified_sign(shifted, i) < 0)
        clause("embedding", "tau(X1/X2) >= 1 fails at a non-real place");
    }
  }

  // ideal containment and congruence
  RingElement anchor = cert.x1 * cert.alpha * Int(2);
  if (anchor.is_zero()) clause("containment", "2 X1 alpha vanishes");
  IntegralIdeal dom = IntegralIdeal::principal(anchor);
  if (!ctx.ideal_big.subset_of(dom))
    clause("containment", "I O_F is not inside 2 X1 alpha O_F");
  RingElement bl = include_sub(ctx, big, cert.b);
  if (!ctx.ideal_big.congruent(cert.alpha, bl))
    clause("congruence", "alpha is not congruent to b modulo I O_F");

  // the derived strict norm gap used by the congruence lemma
  const auto& conj = big->automorphism(qe->conj_name);
  RingElement gap_elt = cert.alpha - apply_automorphism(conj, cert.alpha);
  Int gap = abs_int(gap_elt.norm());
  Int in = ctx.ideal_big.norm();
  if (!(gap < in)) clause("norm-gap", "|N(alpha - conj alpha)| must be strictly below N(I O_F)");

  return extract_subring(cert, ctx);
}

RingElement capture(const CaptureCertificate& cert) {
  switch (cert.variant) {
    case CaptureVariant::Finite: return capture_finite(cert);
    case CaptureVariant::TotallyReal: return capture_totally_real(cert);
    case CaptureVariant::Quadratic: return capture_quadratic(cert);
  }
  fail(ErrorKind::Internal, "BadVariant", "unreachable");
}

bool dbound_check(const RingElement& x) {
  const RingPtr& ring = x.ring();
  if (!ring->is_totally_real())
    fail(ErrorKind::Validation, "PreconditionFailed", "the bound check needs a totally real ring");
  for (int i = 0; i < ring->real_embedding_count(); ++i) {
    if (certified_abs_cmp(x, i, Rat(1)) <= 0)
      fail(ErrorKind::Validation, "PreconditionFailed", "|sigma(x)| > 1 fails at a real embedding");
  }
  Int rhs = pow_int(Int(2), static_cast<unsigned>(ring->degree())) * abs_int((x * x).norm());
  auto names = ring->automorphism_names();
  if (names.empty() && ring->degree() > 1)
    fail(ErrorKind::Validation, "MissingAutomorphisms", "no registered automorphisms to compare against");
  for (const auto& name : names) {
    RingElement gamma_x = apply_automorphism(ring->automorphism(name), x);
    if (abs_int((x - gamma_x).norm()) > rhs) return false;
  }
  return true;
}

namespace {

// four squares over Z by direct search (y5 fixed)
std::optional<std::array<Int, 4>> four_squares_z(const Int& n) {
  if (n < 0) return std::nullopt;
  Int a_max = isqrt(n);
  for (Int a = a_max; a >= 0; --a) {
    Int ra = n - a * a;
    Int b_max = std::min(a, isqrt(ra));
    for (Int b = b_max; b >= 0; --b) {
      Int rb = ra - b * b;
      Int c_max = std::min(b, isqrt(rb));
      for (Int c = c_max; c >= 0; --c) {
        Int rc = rb - c * c, e;
        if (is_square(rc, &e) && e <= c) return std::array<Int, 4>{a, b, c, e};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

FourSquaresCert four_squares_cert(const RingElement& x, const RingElement& z, long y5_bound) {
  const RingPtr& ring = x.ring();
  if (!same_ring(ring, z.ring())) fail(ErrorKind::Validation, "RingMismatch", "x and z rings differ");
  if (!ring->is_totally_real())
    fail(ErrorKind::Validation, "PreconditionFailed", "total positivity needs a totally real ring");
  if (!totally_greater(x, z))
    fail(ErrorKind::Validation, "ConditionsNotCertified", "x > z fails at some real embedding");
  RingElement diff = x - z;
  if (ring->degree() == 1) {
    for (long y5 = 1; y5 <= y5_bound; ++y5) {
      Int target = Int(y5) * Int(y5) * diff.coords()(0);
      auto dec = four_squares_z(target);
      if (dec) {
        return FourSquaresCert{x, z, ring->from_int((*dec)[0]), ring->from_int((*dec)[1]),
                               ring->from_int((*dec)[2]), ring->from_int((*dec)[3]),
                               ring->from_int(y5)};
      }
    }
    fail(ErrorKind::SearchExhausted, "SearchExhausted", "no decomposition within the y5 bound");
  }
  // real quadratic: meet-in-the-middle over exact squares
  for (long y5 = 1; y5 <= y5_bound; ++y5) {
    RingElement target = diff * Int(y5) * Int(y5);
    Rat t2cap = Rat(target.trace());  // sum of sigma(target) bounds T2 of each y_i
    if (t2cap < 0) t2cap = 0;
    auto bounds = t2_coordinate_bounds(ring, t2cap);
    const int d = ring->degree();
    std::map<std::vector<Int>, RingElement> squares;  // square coords -> root
    VecI v(d);
    for (int i = 0; i < d; ++i) v(i) = -bounds[i];
    while (true) {
      RingElement w = ring->element(v);
      RingElement sq = w * w;
      std::vector<Int> key(sq.coords().data(), sq.coords().data() + d);
      squares.emplace(key, w);
      int pos = 0;
      while (pos < d && v(pos) == bounds[pos]) {
        v(pos) = -bounds[pos];
        ++pos;
      }
      if (pos == d) break;
      v(pos) += 1;
    }
    // sums of two squares, keyed by coordinates
    std::map<std::vector<Int>, std::pair<RingElement, RingElement>> two_sums;
    for (const auto& [k1, w1] : squares) {
      for (const auto& [k2, w2] : squares) {
        RingElement s = (w1 * w1) + (w2 * w2);
        std::vector<Int> key(s.coords().data(), s.coords().data() + d);
        two_sums.emplace(key, std::make_pair(w1, w2));
      }
    }
    for (const auto& [k1, pair1] : two_sums) {
      RingElement part = (pair1.first * pair1.first) + (pair1.second * pair1.second);
      RingElement rest = target - part;
      std::vector<Int> key(rest.coords().data(), rest.coords().data() + d);
      auto it = two_sums.find(key);
      if (it != two_sums.end()) {
        return FourSquaresCert{x,      z,
                               pair1.first,  pair1.second,
                               it->second.first, it->second.second,
                               ring->from_int(y5)};
      }
    }
  }
  fail(ErrorKind::SearchExhausted, "SearchExhausted", "no decomposition within the y5 bound");
}

bool verify_four_squares(const FourSquaresCert& c) {
  RingElement lhs = c.y5 * c.y5 * (c.x - c.z);
  RingElement rhs = c.y1 * c.y1 + c.y2 * c.y2 + c.y3 * c.y3 + c.y4 * c.y4;
  return !c.y5.is_zero() && lhs == rhs;
}

BigWResult find_big_w(const std::vector<FieldElement>& omega, const Int& n) {
  if (omega.size() < 2)
    fail(ErrorKind::SearchExhausted, "SequenceExhausted", "need at least two sequence elements");
  const RingPtr& ring = omega.front().ring;
  if (!ring->is_totally_real())
    fail(ErrorKind::Validation, "PreconditionFailed", "the scan needs a totally real ring");
  FieldElement one = FieldElement::from(ring->one());
  auto try_pair = [&](const FieldElement& u, const FieldElement& v) -> std::optional<FieldElement> {
    FieldElement diff = u - v;
    if (diff.coords.isZero(0)) return std::nullopt;
    NumDen dn = common_denominator(diff);
    FieldElement inv = field_div(ring->from_int(dn.den), dn.num);
    FieldElement w = (inv * inv + one) * (u * u + one);
    // sigma(w) > n at every real embedding
    NumDen wd = common_denominator(w);
    RingElement shifted = wd.num - ring->from_int(n * wd.den);
    if (shifted.is_zero()) return std::nullopt;
    for (int i = 0; i < ring->real_embedding_count(); ++i)
      if (certified_sign(shifted, i) <= 0) return std::nullopt;
    return w;
  };
  // pairs scanned by the index of the later element; (u, v) tried both ways
  for (size_t m = 1; m < omega.size(); ++m) {
    for (size_t i = 0; i < m; ++i) {
      if (auto w = try_pair(omega[m], omega[i]))
        return BigWResult{omega[m], omega[i], *w};
      if (auto w = try_pair(omega[i], omega[m]))
        return BigWResult{omega[i], omega[m], *w};
    }
  }
  fail(ErrorKind::SearchExhausted, "SequenceExhausted", "no pair cleared the bound");
}

QuadNormBoundReport quad_ext_norm_bound(const RingElement& x, const FieldElement& w) {
  const RingPtr& big = x.ring();
  const auto& qe = big->quadratic_extension();
  if (!qe)
    fail(ErrorKind::Validation, "MissingInclusion", "needs a registered quadratic extension");
  const auto& lreg = big->subring(qe->subring_name);
  NumDen wd = common_denominator(w);
  auto w_sub = solve_integer(lreg.inclusion, wd.num.coords());
  if (!w_sub)
    fail(ErrorKind::Validation, "ConditionsNotCertified", "w must come from the totally real subfield");
  RingElement w_l(lreg.subring, *w_sub);

  // conditions: 1 < sigma(x) < sigma(w) at real embeddings of F
  for (int i = 0; i < big->real_embedding_count(); ++i) {
    if (!certified_less(big->one(), x, i))
      fail(ErrorKind::Validation, "ConditionsNotCertified", "1 < sigma(x) fails");
    RingElement scaled = x * wd.den;
    if (!certified_less(scaled, wd.num, i))
      fail(ErrorKind::Validation, "ConditionsNotCertified", "sigma(x) < sigma(w) fails");
  }
  // |tau(w)| >= 1 at subfield places below the non-real embeddings
  {
    RingElement delta(big, qe->delta);
    RingElement d_elt = delta * delta;
    auto d_sub = solve_integer(lreg.inclusion, d_elt.coords());
    if (!d_sub) fail(ErrorKind::Internal, "NotInSubring", "delta^2 outside the subfield");
    RingElement d_l(lreg.subring, *d_sub);
    for (int i = 0; i < lreg.subring->real_embedding_count(); ++i) {
      if (certified_sign(d_l, i) > 0) continue;
      if (certified_abs_cmp(w_l, i, Rat(wd.den)) < 0)
        fail(ErrorKind::Validation, "ConditionsNotCertified", "|tau(w)| >= 1 fails");
    }
  }
  // exact: |N(delta y1)| <= |N(x w)| via x - conj(x) = 2 delta y1
  const auto& conj = big->automorphism(qe->conj_name);
  RingElement split = x - apply_automorphism(conj, x);
  const unsigned deg = static_cast<unsigned>(big->degree());
  Int lhs = abs_int(split.norm()) * pow_int(wd.den, deg);
  Int rhs = pow_int(Int(2), deg) * abs_int(x.norm()) * abs_int(wd.num.norm());
  return QuadNormBoundReport{lhs <= rhs, lhs, rhs};
}

}  // namespace dioph
