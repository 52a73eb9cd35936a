#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dioph/interval.hpp"
#include "dioph/linalg.hpp"
#include "dioph/unipoly.hpp"

namespace dioph {

class NumberRing;
using RingPtr = std::shared_ptr<const NumberRing>;

class RingElement;
class IntegralIdeal;

// Automorphism given by its action on the power basis; column j holds the
// coordinates of the image of theta^j.
struct FieldAutomorphism {
  std::string name;
  MatI basis_images;  // d x d

  VecI apply(const VecI& coords) const { return basis_images * coords; }
};

struct SubringRegistration {
  std::string name;
  RingPtr subring;
  MatI inclusion;  // d x k, column j = image of subring basis element theta_sub^j
};

// F = L(delta) with delta^2 = d landing in the registered subring L.
struct QuadraticExtensionData {
  std::string subring_name;  // the index-2 subring
  std::string conj_name;     // automorphism delta -> -delta
  VecI delta;                // coordinates of delta in F
};

struct RingOptions {
  bool allow_non_maximal = false;
  bool class_number_one = false;
  std::string name;
};

// A ring of integers presented on a power basis Z[theta].
class NumberRing : public std::enable_shared_from_this<NumberRing> {
public:
  using Options = RingOptions;

  // Validates irreducibility and (unless opted out) the standard
  // quadratic/cyclotomic maximality checks.
  static RingPtr make(const IPoly& minpoly, const RingOptions& opts = RingOptions{});

  const IPoly& minpoly() const { return minpoly_; }
  int degree() const { return degree_; }
  std::pair<int, int> signature() const { return signature_; }
  const Int& discriminant() const { return discriminant_; }
  bool is_totally_real() const { return signature_.first == degree_; }
  bool class_number_one_asserted() const { return class_number_one_; }
  bool maximal_order_asserted() const { return maximal_order_; }
  const std::string& name() const { return name_; }

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(const Int& n) const;
  RingElement element(VecI coords) const;
  RingElement theta_power(int k) const;  // theta^k reduced

  // coords of theta^i * theta^j
  const MatI& power_table() const { return power_table_; }

  // --- registries, populated by with_* builders before first use ---
  const FieldAutomorphism& automorphism(const std::string& name) const;
  const SubringRegistration& subring(const std::string& name) const;
  bool has_automorphism(const std::string& name) const { return autos_.count(name) > 0; }
  bool has_subring(const std::string& name) const { return subrings_.count(name) > 0; }
  std::vector<std::string> automorphism_names() const;
  std::vector<std::string> subring_names() const;
  const std::optional<QuadraticExtensionData>& quadratic_extension() const { return quad_ext_; }
  const std::vector<VecI>& unit_generators() const { return unit_generators_; }
  const std::vector<VecI>& torsion_units() const { return torsion_units_; }

  // Registration (fixture assembly only; rings are immutable afterwards).
  void register_automorphism(const std::string& name, const MatI& images) const;
  void register_subring(const std::string& name, RingPtr sub, const MatI& inclusion) const;
  void register_quadratic_extension(const QuadraticExtensionData& q) const;
  void register_units(const std::vector<VecI>& fundamental) const;

  // Exact real embeddings: isolating intervals for the real roots of the
  // minimal polynomial, refined on demand.
  int real_embedding_count() const { return signature_.first; }
  QInterval real_root_interval(int i, long prec_bits) const;

private:
  NumberRing() = default;

  IPoly minpoly_;
  int degree_ = 0;
  std::pair<int, int> signature_{0, 0};
  Int discriminant_;
  bool class_number_one_ = false;
  bool maximal_order_ = true;
  std::string name_;
  MatI reduction_;    // (2d-1) x d: theta^k in basis coords
  MatI power_table_;  // (d*d) x d flattened: row i*d+j = coords of theta^i theta^j

  mutable std::map<std::string, FieldAutomorphism> autos_;
  mutable std::map<std::string, SubringRegistration> subrings_;
  mutable std::optional<QuadraticExtensionData> quad_ext_;
  mutable std::vector<VecI> unit_generators_;
  mutable std::vector<VecI> torsion_units_;
  mutable std::vector<RootInterval> real_roots_;  // refined lazily
};

bool same_ring(const RingPtr& a, const RingPtr& b);

class RingElement {
public:
  RingElement() = default;
  RingElement(RingPtr ring, VecI coords);

  const RingPtr& ring() const { return ring_; }
  const VecI& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational_integer() const;  // lies in Z * 1
  Int rational_part() const;         // requires is_rational_integer

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator*(const Int& c) const;
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  RingElement pow(const Int& e) const;  // e >= 0

  // Multiplication-by-this matrix on the power basis.
  MatI mult_matrix() const;
  Int norm() const;
  Int trace() const;

  // Exact division in the fraction field; integral result or error/nullopt.
  std::optional<RingElement> divide_exact(const RingElement& den) const;

  // Certified interval for the image under the i-th real embedding.
  QInterval real_embedding(int i, long prec_bits) const;

  std::string to_string() const;

private:
  RingPtr ring_;
  VecI coords_;
};

RingElement apply_automorphism(const FieldAutomorphism& sigma, const RingElement& x);

// Field-level vector (rational coordinates on the power basis); used for
// ratios and non-integral intermediates.
struct FieldElement {
  RingPtr ring;
  VecQ coords;

  static FieldElement from(const RingElement& x);
  bool is_integral() const;
  RingElement to_integral() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  bool operator==(const FieldElement& o) const { return ring == o.ring && coords == o.coords; }
};
FieldElement field_div(const RingElement& num, const RingElement& den);
FieldElement field_inverse(const RingElement& x);

class IntegralIdeal {
public:
  IntegralIdeal() = default;

  static IntegralIdeal zero(RingPtr ring);
  static IntegralIdeal unit(RingPtr ring);
  static IntegralIdeal from_generators(const std::vector<RingElement>& gens);
  static IntegralIdeal principal(const RingElement& g);
  static IntegralIdeal from_hnf(RingPtr ring, const MatI& h);

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return zero_; }
  bool is_unit() const;
  const MatI& hnf() const { return hnf_; }

  bool contains(const RingElement& x) const;
  bool subset_of(const IntegralIdeal& other) const;  // this subseteq other
  bool operator==(const IntegralIdeal& o) const;

  IntegralIdeal product(const IntegralIdeal& o) const;
  IntegralIdeal sum(const IntegralIdeal& o) const;
  IntegralIdeal intersect(const IntegralIdeal& o) const;
  // {x : x * other subseteq this}
  IntegralIdeal colon(const IntegralIdeal& other) const;
  IntegralIdeal pow(unsigned e) const;

  Int norm() const;  // |O/I|, nonzero ideals
  // Smallest positive rational integer contained in the ideal.
  Int smallest_integer() const;

  // Canonical residue in the HNF fundamental domain.
  RingElement reduce(const RingElement& x) const;
  Int quotient_size() const { return norm(); }
  bool congruent(const RingElement& x, const RingElement& y) const;

  // Solve a * x == b (mod this); nullopt if no solution.
  std::optional<RingElement> solve_mod(const RingElement& a, const RingElement& b) const;

private:
  RingPtr ring_;
  MatI hnf_;  // d x d row HNF for nonzero ideals
  bool zero_ = true;
};

// --- module operations -----------------------------------------------------

RingPtr make_field(const IPoly& minpoly, const RingOptions& opts = RingOptions{});

struct NormAndConjugates {
  Int norm;
  std::vector<std::complex<double>> conjugates;  // one per embedding
  double error_radius;                           // approximation quality tag
};
NormAndConjugates norm_and_conjugates(const RingElement& x);

// x * sigma(x) expressed in the registered subring fixed by sigma.
RingElement relative_norm_quadratic(const RingElement& x, const std::string& automorphism,
                                    const std::string& subring);

struct PrimeFactor {
  IntegralIdeal prime;
  unsigned exponent;
  Int residue_characteristic;
  enum class Kind { Split, Inert, Ramified } kind;
};
// Quadratic rings (and Z); trial-division bound on the norm.
std::vector<PrimeFactor> factor_ideal_quadratic(const IntegralIdeal& ideal,
                                                const Int& factor_bound = Int(100000000));

struct FixedSubring {
  RingPtr subring;
  MatI inclusion;  // d x k
};
FixedSubring fixed_subring(const RingPtr& ring, const FieldAutomorphism& sigma);

RingElement fundamental_unit_real_quadratic(const RingPtr& ring);

// Certified comparisons along real embeddings (with precision escalation
// up to the cap; Undecidable is reported, never guessed).
long precision_cap_bits();
// sign of the i-th real embedding of x
int certified_sign(const RingElement& x, int embedding);
// certified x < y / x > y at one embedding
bool certified_less(const RingElement& x, const RingElement& y, int embedding);
// all real embeddings strictly positive
bool totally_positive(const RingElement& x);
// all real embeddings of x strictly greater than those of y
bool totally_greater(const RingElement& x, const RingElement& y);
// |sigma_i(x)| compared against an exact rational bound; returns sign of
// |sigma_i(x)| - q (certified; exact-equality handled algebraically).
int certified_abs_cmp(const RingElement& x, int embedding, const Rat& q);

// Complex conjugation when the ring has one: registered as "conj", or
// derived for imaginary quadratic rings.
std::optional<FieldAutomorphism> complex_conjugation(const RingPtr& ring);

// Sum over all embeddings of |sigma(x)|^2; exact when the ring is totally
// real or carries a complex conjugation.
Rat t2_norm_exact(const RingElement& x);
bool t2_norm_available(const RingPtr& ring);

// Coordinate bounds for the ellipsoid {x : T2(x) <= t2} on the power basis.
std::vector<Int> t2_coordinate_bounds(const RingPtr& ring, const Rat& t2);

// Field elements as an integral numerator over a positive integer denominator.
struct NumDen {
  RingElement num;
  Int den;
};
NumDen common_denominator(const FieldElement& x);

}  // namespace dioph
