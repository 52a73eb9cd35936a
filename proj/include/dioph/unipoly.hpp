#pragma once

#include <vector>

#include "dioph/linalg.hpp"
#include "dioph/scalar.hpp"

namespace dioph {

// Dense univariate polynomials, coefficient index = degree.
// The zero polynomial is the empty vector.
using IPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

IPoly ipoly_trim(IPoly p);
int ipoly_deg(const IPoly& p);  // -1 for zero
IPoly ipoly_add(const IPoly& a, const IPoly& b);
IPoly ipoly_sub(const IPoly& a, const IPoly& b);
IPoly ipoly_mul(const IPoly& a, const IPoly& b);
IPoly ipoly_neg(IPoly a);
IPoly ipoly_derivative(const IPoly& p);
Int ipoly_eval(const IPoly& p, const Int& x);
Rat ipoly_eval(const IPoly& p, const Rat& x);

QPoly to_qpoly(const IPoly& p);
int qpoly_deg(const QPoly& p);
Rat qpoly_eval(const QPoly& p, const Rat& x);
// Euclidean remainder over the rationals.
QPoly qpoly_rem(QPoly num, const QPoly& den);
QPoly qpoly_gcd(QPoly a, QPoly b);

// Resultant of two integer polynomials via the Sylvester determinant.
Int resultant(const IPoly& f, const IPoly& g);

// Discriminant of a monic integer polynomial.
Int discriminant_monic(const IPoly& f);

// Number of distinct real roots of f (exact, Sturm).
int count_real_roots(const IPoly& f);

// Isolating rational intervals for the distinct real roots of f, in
// increasing order.  Each interval (lo, hi) contains exactly one root,
// endpoints are not roots, and width <= width_bound.
struct RootInterval {
  Rat lo, hi;
};
std::vector<RootInterval> isolate_real_roots(const IPoly& f, const Rat& width_bound);
// Halve the width of an isolating interval until <= width_bound.
RootInterval refine_root(const IPoly& f, RootInterval iv, const Rat& width_bound);

// Is the monic integer polynomial irreducible over Q?  Exact, Kronecker
// interpolation on small-degree inputs (desk scale only).
bool is_irreducible_monic(const IPoly& f);

// The n-th cyclotomic polynomial.
IPoly cyclotomic(unsigned n);
// If f is the n-th cyclotomic polynomial for some n <= nmax, return n.
int recognize_cyclotomic(const IPoly& f, unsigned nmax = 128);

}  // namespace dioph
