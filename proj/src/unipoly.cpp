#include "dioph/unipoly.hpp"

#include <algorithm>
#include <map>

namespace dioph {

IPoly ipoly_trim(IPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int ipoly_deg(const IPoly& p) { return static_cast<int>(p.size()) - 1; }

IPoly ipoly_add(const IPoly& a, const IPoly& b) {
  IPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return ipoly_trim(std::move(r));
}

IPoly ipoly_sub(const IPoly& a, const IPoly& b) {
  IPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return ipoly_trim(std::move(r));
}

IPoly ipoly_mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return ipoly_trim(std::move(r));
}

IPoly ipoly_neg(IPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

IPoly ipoly_derivative(const IPoly& p) {
  if (p.size() <= 1) return {};
  IPoly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = Int(i) * p[i];
  return ipoly_trim(std::move(r));
}

Int ipoly_eval(const IPoly& p, const Int& x) {
  Int acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rat ipoly_eval(const IPoly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

QPoly to_qpoly(const IPoly& p) {
  QPoly q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = Rat(p[i]);
  return q;
}

int qpoly_deg(const QPoly& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[d] == 0) --d;
  return d;
}

Rat qpoly_eval(const QPoly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly qpoly_rem(QPoly num, const QPoly& den) {
  int dd = qpoly_deg(den);
  if (dd < 0) fail(ErrorKind::Internal, "DivideByZero", "polynomial division by zero");
  int dn = qpoly_deg(num);
  while (dn >= dd) {
    Rat q = num[dn] / den[dd];
    for (int i = 0; i <= dd; ++i) num[dn - dd + i] -= q * den[i];
    num[dn] = 0;
    while (dn >= 0 && num[dn] == 0) --dn;
  }
  num.resize(std::max(dn + 1, 0));
  return num;
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
  while (qpoly_deg(b) >= 0) {
    QPoly r = qpoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  int d = qpoly_deg(a);
  if (d >= 0) {
    Rat lead = a[d];
    for (auto& c : a) c /= lead;
    a.resize(d + 1);
  }
  return a;
}

Int resultant(const IPoly& fin, const IPoly& gin) {
  IPoly f = ipoly_trim(fin), g = ipoly_trim(gin);
  int df = ipoly_deg(f), dg = ipoly_deg(g);
  if (df < 0 || dg < 0) return 0;
  if (df == 0) return pow_int(f[0], dg);
  if (dg == 0) return pow_int(g[0], df);
  MatI s = MatI::Zero(df + dg, df + dg);
  for (int i = 0; i < dg; ++i)
    for (int j = 0; j <= df; ++j) s(i, i + j) = f[df - j];
  for (int i = 0; i < df; ++i)
    for (int j = 0; j <= dg; ++j) s(dg + i, i + j) = g[dg - j];
  return det_bareiss(s);
}

Int discriminant_monic(const IPoly& f) {
  int d = ipoly_deg(f);
  if (d < 1) fail(ErrorKind::Validation, "DegreeTooSmall", "discriminant needs degree >= 1");
  if (f[d] != 1) fail(ErrorKind::Validation, "NotMonic", "discriminant_monic wants a monic input");
  if (d == 1) return 1;
  Int res = resultant(f, ipoly_derivative(f));
  int sign_exp = (d * (d - 1) / 2) % 2;
  return sign_exp ? Int(-res) : res;
}

namespace {

// Sturm chain of the squarefree part.
std::vector<QPoly> sturm_chain(const IPoly& f) {
  QPoly p = to_qpoly(f);
  QPoly g = qpoly_gcd(p, to_qpoly(ipoly_derivative(f)));
  if (qpoly_deg(g) > 0) {
    // divide out repeated factors
    QPoly quotient;
    // long division p / g (exact)
    QPoly num = p;
    int dg = qpoly_deg(g), dn = qpoly_deg(num);
    quotient.assign(dn - dg + 1, Rat(0));
    while (dn >= dg) {
      Rat q = num[dn] / g[dg];
      quotient[dn - dg] = q;
      for (int i = 0; i <= dg; ++i) num[dn - dg + i] -= q * g[i];
      while (dn >= 0 && num[dn] == 0) --dn;
    }
    p = quotient;
  }
  std::vector<QPoly> chain;
  chain.push_back(p);
  QPoly dp(qpoly_deg(p) > 0 ? p.size() - 1 : 0);
  for (size_t i = 1; i < p.size(); ++i) dp[i - 1] = Rat(Int(i)) * p[i];
  chain.push_back(dp);
  while (qpoly_deg(chain.back()) > 0) {
    QPoly r = qpoly_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (qpoly_deg(r) < 0) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes_at(const std::vector<QPoly>& chain, const Rat& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    Rat v = qpoly_eval(p, x);
    int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rat root_bound(const IPoly& f) {
  // Cauchy bound 1 + max |a_i| / |a_d|
  int d = ipoly_deg(f);
  Int mx = 0;
  for (int i = 0; i < d; ++i) mx = std::max(mx, abs_int(f[i]));
  return Rat(1) + Rat(mx, abs_int(f[d]));
}

}  // namespace

int count_real_roots(const IPoly& f) {
  if (ipoly_deg(f) < 1) return 0;
  auto chain = sturm_chain(f);
  Rat b = root_bound(f);
  return sign_changes_at(chain, -b) - sign_changes_at(chain, b);
}

std::vector<RootInterval> isolate_real_roots(const IPoly& f, const Rat& width_bound) {
  std::vector<RootInterval> out;
  if (ipoly_deg(f) < 1) return out;
  auto chain = sturm_chain(f);
  Rat b = root_bound(f);
  struct Seg { Rat lo, hi; int nlo, nhi; };
  std::vector<Seg> stack;
  int nlo = sign_changes_at(chain, -b), nhi = sign_changes_at(chain, b);
  if (nlo == nhi) return out;
  stack.push_back({-b, b, nlo, nhi});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    int count = s.nlo - s.nhi;
    if (count <= 0) continue;
    if (count == 1 && qpoly_eval(chain[0], s.lo) != 0 && qpoly_eval(chain[0], s.hi) != 0) {
      out.push_back(refine_root(f, {s.lo, s.hi}, width_bound));
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    if (qpoly_eval(chain[0], mid) == 0) {
      // nudge the split point off the root
      mid = (s.lo + mid) / 2;
      while (qpoly_eval(chain[0], mid) == 0) mid = (s.lo + mid) / 2;
    }
    int nmid = sign_changes_at(chain, mid);
    stack.push_back({mid, s.hi, nmid, s.nhi});
    stack.push_back({s.lo, mid, s.nlo, nmid});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b2) { return a.lo < b2.lo; });
  return out;
}

RootInterval refine_root(const IPoly& f, RootInterval iv, const Rat& width_bound) {
  Rat flo = ipoly_eval(f, iv.lo);
  if (flo == 0) fail(ErrorKind::Internal, "RootAtEndpoint", "isolating interval endpoint is a root");
  while (iv.hi - iv.lo > width_bound) {
    Rat mid = (iv.lo + iv.hi) / 2;
    Rat fm = ipoly_eval(f, mid);
    if (fm == 0) {
      // exact rational root: shrink symmetrically around it
      Rat w = std::min(Rat(width_bound / 2), Rat((iv.hi - iv.lo) / 4));
      iv.lo = mid - w;
      iv.hi = mid + w;
      return iv;
    }
    if ((fm > 0) == (flo > 0)) {
      iv.lo = mid;
      flo = fm;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

namespace {

std::vector<Int> divisors_signed(const Int& n) {
  std::vector<Int> out;
  Int a = abs_int(n);
  for (Int d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      out.push_back(-d);
      Int e = a / d;
      if (e != d) {
        out.push_back(e);
        out.push_back(-e);
      }
    }
  }
  return out;
}

// Lagrange interpolation through integer points; nullopt if non-integral.
std::optional<IPoly> interpolate_integer(const std::vector<Int>& xs, const std::vector<Int>& ys) {
  const size_t k = xs.size();
  QPoly acc;  // zero
  for (size_t i = 0; i < k; ++i) {
    QPoly term{Rat(1)};
    Rat denom = 1;
    for (size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      // term *= (x - xs[j])
      QPoly nt(term.size() + 1, Rat(0));
      for (size_t t = 0; t < term.size(); ++t) {
        nt[t + 1] += term[t];
        nt[t] -= Rat(xs[j]) * term[t];
      }
      term = std::move(nt);
      denom *= Rat(xs[i] - xs[j]);
    }
    Rat scale = Rat(ys[i]) / denom;
    if (acc.size() < term.size()) acc.resize(term.size(), Rat(0));
    for (size_t t = 0; t < term.size(); ++t) acc[t] += scale * term[t];
  }
  IPoly out(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) {
    if (boost::multiprecision::denominator(acc[i]) != 1) return std::nullopt;
    out[i] = Int(boost::multiprecision::numerator(acc[i]));
  }
  return ipoly_trim(std::move(out));
}

// Try to divide f by g exactly over Z (both nonzero); nullopt otherwise.
std::optional<IPoly> ipoly_divide_exact(const IPoly& f, const IPoly& g) {
  int df = ipoly_deg(f), dg = ipoly_deg(g);
  if (dg < 0 || df < dg) return std::nullopt;
  IPoly rem = f, q(df - dg + 1, Int(0));
  for (int i = df - dg; i >= 0; --i) {
    int dr = ipoly_deg(rem);
    if (dr < dg + i) continue;
    if (rem[dg + i] % g[dg] != 0) return std::nullopt;
    Int c = rem[dg + i] / g[dg];
    q[i] = c;
    for (int j = 0; j <= dg; ++j) rem[i + j] -= c * g[j];
    rem = ipoly_trim(std::move(rem));
  }
  if (!rem.empty()) return std::nullopt;
  return q;
}

}  // namespace

bool is_irreducible_monic(const IPoly& fin) {
  IPoly f = ipoly_trim(fin);
  int d = ipoly_deg(f);
  if (d < 1) return false;
  if (f[d] != 1) fail(ErrorKind::Validation, "NotMonic", "irreducibility test wants a monic input");
  if (d == 1) return true;
  if (f[0] == 0) return false;  // divisible by x
  // Kronecker: a monic degree-k factor is determined by its values at k+1
  // points, each dividing f at that point.
  for (int k = 1; k <= d / 2; ++k) {
    std::vector<Int> xs;
    std::vector<Int> fx;
    for (Int x = 0; static_cast<int>(xs.size()) < k + 1; x = (x > 0 ? Int(-x) : Int(-x + 1))) {
      Int v = ipoly_eval(f, x);
      if (v == 0) return false;  // rational root
      xs.push_back(x);
      fx.push_back(v);
    }
    std::vector<std::vector<Int>> divs;
    for (const auto& v : fx) divs.push_back(divisors_signed(v));
    std::vector<size_t> idx(k + 1, 0);
    std::vector<Int> ys(k + 1);
    while (true) {
      for (int i = 0; i <= k; ++i) ys[i] = divs[i][idx[i]];
      auto cand = interpolate_integer(xs, ys);
      if (cand && ipoly_deg(*cand) == k && (*cand)[k].sign() > 0) {
        if ((*cand)[k] == 1 && ipoly_divide_exact(f, *cand)) return false;
      }
      int pos = k;
      while (pos >= 0) {
        if (++idx[pos] < divs[pos].size()) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return true;
}

IPoly cyclotomic(unsigned n) {
  // Phi_n via repeated exact division of x^n - 1 by Phi_d for d | n, d < n.
  static std::map<unsigned, IPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  IPoly num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto q = ipoly_divide_exact(num, cyclotomic(d));
    if (!q) fail(ErrorKind::Internal, "Cyclotomic", "inexact cyclotomic division");
    num = *q;
  }
  cache[n] = num;
  return num;
}

int recognize_cyclotomic(const IPoly& f, unsigned nmax) {
  for (unsigned n = 1; n <= nmax; ++n) {
    if (cyclotomic(n) == f) return static_cast<int>(n);
  }
  return -1;
}

}  // namespace dioph
