#pragma once

#include <variant>

#include "dioph/numfield.hpp"

namespace dioph {

enum class GroupKind { Gm, NormOneTorus, EllipticCurve };
std::string group_kind_name(GroupKind k);

struct TorusData {
  // M = L(sqrt(m)); integral points satisfy a^2 - m b^2 = 1
  RingElement twist_m;
};

struct CurveData {
  RingElement a1, a2, a3, a4, a6;
  RingElement disc;
};

class GroupInstance;
using GroupPtr = std::shared_ptr<const GroupInstance>;

class GroupInstance : public std::enable_shared_from_this<GroupInstance> {
public:
  static GroupPtr gm(RingPtr base);
  static GroupPtr norm_one_torus(RingPtr base, const RingElement& twist_m);
  static GroupPtr elliptic(RingPtr base, const RingElement& a1, const RingElement& a2,
                           const RingElement& a3, const RingElement& a4, const RingElement& a6);

  GroupKind kind() const { return kind_; }
  const RingPtr& base_ring() const { return base_; }
  int embedding_dim() const { return n_; }  // points live in P^n
  int group_dim() const { return 1; }
  const TorusData& torus() const;
  const CurveData& curve() const;
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

private:
  GroupKind kind_ = GroupKind::Gm;
  RingPtr base_;
  int n_ = 1;
  std::variant<std::monostate, TorusData, CurveData> payload_;
  std::string name_;
};

struct PowerProvenance {
  std::vector<RingElement> base_coords;
  Int r;
  IntegralIdeal ideal;
};

// A point with canonical primitive well-arranged homogeneous coordinates.
// Points may live over an extension of the instance's base ring; the
// extension must have the base registered as a subring (or be the base).
class GroupPoint {
public:
  GroupPoint() = default;

  static GroupPoint identity(GroupPtr g, RingPtr ring);
  static GroupPoint gm_from_unit(GroupPtr g, const RingElement& unit);
  static GroupPoint torus_from_ab(GroupPtr g, const RingElement& a, const RingElement& b);
  static GroupPoint curve_affine(GroupPtr g, const FieldElement& x, const FieldElement& y);
  // raw homogeneous coordinates, canonicalized (primitive scaling + associate)
  static GroupPoint from_coords(GroupPtr g, std::vector<RingElement> coords);

  const GroupPtr& instance() const { return instance_; }
  const RingPtr& ring() const { return ring_; }
  const std::vector<RingElement>& coords() const { return coords_; }
  bool is_identity() const;

  // cached arithmetic forms
  const RingElement& unit_value() const;                  // Gm
  std::pair<RingElement, RingElement> torus_ab() const;   // torus
  bool curve_infinity() const;                            // curve
  std::pair<FieldElement, FieldElement> curve_xy() const;  // curve, affine

  const std::optional<PowerProvenance>& provenance() const { return provenance_; }
  void set_provenance(PowerProvenance p) { provenance_ = std::move(p); }

  bool operator==(const GroupPoint& o) const;

private:
  GroupPtr instance_;
  RingPtr ring_;
  std::vector<RingElement> coords_;
  std::optional<PowerProvenance> provenance_;
};

GroupPoint compose(const GroupPoint& p, const GroupPoint& q);
GroupPoint negate(const GroupPoint& p);
GroupPoint power(const GroupPoint& p, const Int& e);

// Primitive scaling with the canonical associate choice; errors with
// NonPrincipalCoordinateIdeal when no generator is found.
std::vector<RingElement> well_arranged_coords(const RingPtr& ring, std::vector<RingElement> raw);

struct VanishingData {
  IntegralIdeal z;             // (lambda_1 ... lambda_n)
  IntegralIdeal c;             // z^2
  std::vector<RingElement> partial;  // d residues mod z^2
};
VanishingData vanishing_data(const GroupPoint& p);

bool in_congruence_kernel(const GroupPoint& p, const IntegralIdeal& ideal);
// The order of p in the reduced group, by iteration; p^k lands in M_{I}.
Int kernel_multiple(const GroupPoint& p, const IntegralIdeal& ideal, long long budget = 10000000);
GroupPoint rth_power_coset(const GroupPoint& p, const IntegralIdeal& ideal, const Int& r);

struct StabilityReport {
  long long samples = 0;
  long long passes = 0;
  std::vector<std::string> failures;
};
// Sampling-only check that r-th powers of kernel elements land in the
// registered subring's points.  Never a proof.
StabilityReport check_stability_exponent(const std::vector<GroupPoint>& generators,
                                         const std::string& subring_name, const Int& r,
                                         const IntegralIdeal& ideal, int sample_budget,
                                         unsigned long seed = 1);

// Norm-one generators u / sigma(u) from the fundamental unit of the real
// quadratic field attached to the twist (rational base only).
std::vector<GroupPoint> norm_one_generators(const GroupPtr& torus);
int torus_rank(const GroupPtr& torus);

struct BSetPair {
  RingElement a, b;  // coordinates of a kernel point, b != 0; a/b in the subfield
};
std::vector<BSetPair> b_set_sample(const std::vector<GroupPoint>& kernel_generators,
                                   const std::string& subfield_name, long n_modulus,
                                   int budget);

// n = p q for the two smallest good-reduction primes of distinct residue
// characteristics.
Int pick_stability_modulus(const GroupPtr& curve, long prime_bound = 1000);

}  // namespace dioph
