#pragma once

#include "dioph/numfield.hpp"

namespace dioph {

// The norm-bound constant: (m+1)^2 times the smallest integer strictly
// greater than the largest |minor| (all orders) of the (m+1)x(m+1) matrix
// with row r = (r^m, r^(m-1), ..., 1).
struct BoundContext {
  int m;
  Int c;
  MatI power_matrix;
};
BoundContext make_bound_context(int m, int cap = 6);
Int c_of_m(int m, int cap = 6);

// u(m, alpha) = C(m) alpha (1-alpha) ... (m-alpha); D = u^(m^2).
RingElement u_of(int m, const RingElement& alpha, int cap = 6);
RingElement d_of(int m, const RingElement& alpha, int cap = 6);

struct ConjugateMargin {
  std::string automorphism;
  Int conjugate_gap;  // |N(alpha - beta)|
  Int ideal_norm;     // |N(I O_M)|
  bool strict;        // gap < ideal norm
};
struct NormGapReport {
  bool holds;
  std::vector<ConjugateMargin> margins;
};
// Verifies |N(alpha - beta)| < |N(I O_M)| for every registered conjugate;
// the ideal must sit inside D(m, alpha) O_M.
NormGapReport check_norm_gap(const RingElement& alpha, const IntegralIdeal& ideal, int m);

enum class CaptureVariant { Finite, TotallyReal, Quadratic };
std::string capture_variant_name(CaptureVariant v);
CaptureVariant capture_variant_from_name(const std::string& s);

struct CaptureCertificate {
  CaptureVariant variant;
  RingPtr big_ring;
  std::string subring_name;  // registered on big_ring
  RingElement alpha;         // element of the big ring
  RingElement b;             // element of the subring
  IntegralIdeal ideal;       // ideal of the subring
  // finite
  int m = 0;
  // totally real: alpha = 1 + u1^2 + ... + u4^2
  std::vector<RingElement> squares;
  // quadratic: X1 = X2 [((u-v)^-1)^2 + 1](u^2 + 1) with u = a1/b1, v = a2/b2
  RingElement x1, x2;
  std::vector<std::pair<RingElement, RingElement>> b_pairs;
};

// Verify every clause of the certificate and return alpha expressed in the
// subring.  CertificateInvalid names the failing clause.
RingElement capture_finite(const CaptureCertificate& cert);
RingElement capture_totally_real(const CaptureCertificate& cert);
RingElement capture_quadratic(const CaptureCertificate& cert);
RingElement capture(const CaptureCertificate& cert);

// |N(x - gamma x)| <= 2^m N(x^2) for every registered automorphism gamma of
// a totally real Galois ring, given |sigma(x)| > 1 everywhere.
bool dbound_check(const RingElement& x);

struct FourSquaresCert {
  RingElement x, z, y1, y2, y3, y4, y5;
};
// Search certificate for y5^2 (x - z) = y1^2 + ... + y4^2 with y5 != 0;
// requires x > z at every real embedding.
FourSquaresCert four_squares_cert(const RingElement& x, const RingElement& z, long y5_bound = 8);
bool verify_four_squares(const FourSquaresCert& c);

struct BigWResult {
  FieldElement u, v, w;  // w = [((u-v)^-1)^2 + 1](u^2 + 1)
};
// Scan pairs from omega until w clears n at every real embedding.
BigWResult find_big_w(const std::vector<FieldElement>& omega, const Int& n);

struct QuadNormBoundReport {
  bool holds;          // |N(delta y1)| <= |N(x w)|
  Int lhs_scaled;      // |N(x - conj x)| * den^deg
  Int rhs_scaled;      // 2^deg |N(x)| |N(num w)|
};
// Prop-style norm bound for x in a quadratic extension of a totally real
// subfield; w comes from the subfield.  Conditions are certified first.
QuadNormBoundReport quad_ext_norm_bound(const RingElement& x, const FieldElement& w);

}  // namespace dioph
