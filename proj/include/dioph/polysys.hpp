#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dioph/numfield.hpp"

namespace dioph {

enum class VarClass { Fundamental, Auxiliary, Congruence, Plain };

std::string var_class_name(VarClass c);
VarClass var_class_from_name(const std::string& s);

struct Variable {
  std::string name;
  VarClass cls = VarClass::Plain;
};

struct Term {
  std::vector<int> exps;
  RingElement coef;
};

// Multivariate polynomial in normal form: graded-lex sorted terms with
// nonzero coefficients.
class MultiPoly {
public:
  MultiPoly() = default;
  MultiPoly(RingPtr ring, int nvars);

  static MultiPoly constant(const RingElement& c, int nvars);
  static MultiPoly variable(RingPtr ring, int nvars, int index);

  const RingPtr& ring() const { return ring_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  int degree_in(int var) const;
  bool uses(int var) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const RingElement& c) const;
  bool operator==(const MultiPoly& o) const;

  RingElement evaluate(const std::vector<RingElement>& assignment) const;
  MultiPoly substitute(int var, const RingElement& value) const;
  // Remap variable indices into a wider variable list.
  MultiPoly remapped(int new_nvars, const std::vector<int>& index_map) const;
  // Substitute a polynomial for one variable.
  MultiPoly substitute_poly(int var, const MultiPoly& value) const;

  void add_term(std::vector<int> exps, RingElement coef);  // accumulate + renormalize lazily
  void normalize();

private:
  RingPtr ring_;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

struct PolySystem {
  RingPtr ring;
  std::vector<Variable> vars;
  std::vector<MultiPoly> polys;

  int var_index(const std::string& name) const;  // -1 if absent
  std::vector<RingElement> evaluate(const std::vector<RingElement>& assignment) const;
  // Deterministic fresh name: base#k with the smallest free k.
  std::string fresh_name(const std::string& base) const;
  int add_var(const std::string& base, VarClass cls);  // returns index; renames on clash
  void check_well_formed() const;
};

struct DiophDefinition {
  PolySystem system;
  std::string distinguished_t;
  std::string target_tag;
  // Optional membership oracle, used only by tests.
  std::function<bool(const RingElement&)> membership;

  int t_index() const { return system.var_index(distinguished_t); }
};

enum class RootlessReason { RealEmbeddingObstruction, ExhaustiveSquareSearch };

struct RootlessPolynomial {
  RingPtr ring;
  std::vector<RingElement> coeffs;  // univariate, degree = size-1
  RootlessReason certificate;
};

// --- operations -------------------------------------------------------------

// Lemma-style pairing: one polynomial with exactly the system's zero set.
PolySystem combine_to_single(const PolySystem& system, const RootlessPolynomial& p);

// t^2+1 for rings with a real embedding, else the first t^2 - c certified
// by exhaustive bounded square search (quadratic rings).
RootlessPolynomial find_rootless_quadratic(const RingPtr& ring, long search_bound = 50);

PolySystem unit_gadget(const RingPtr& ring, const std::string& var = "t");

PolySystem nonzero_gadget(const RingPtr& ring, const std::string& var = "x");
struct NonzeroWitness {
  RingElement y, z, w;
};
NonzeroWitness witness_nonzero(const RingElement& x, const Int& factor_bound = Int(100000000));

DiophDefinition intersect_definitions(const DiophDefinition& a, const DiophDefinition& b);

// def_outer defines a subring E of its ambient ring; def_inner is a
// definition over a larger ring H, with the ambient ring of def_outer
// registered as a subring of H under `inclusion_name`.
DiophDefinition compose_transitive(const DiophDefinition& def_outer, const DiophDefinition& def_inner,
                                   const std::string& inclusion_name);

// b x = sum eps_i s_i alpha^i with b != 0 and all s_i, b in S.
DiophDefinition superset_shrink(const DiophDefinition& def_of_s, const RingElement& alpha);

// Fiber-product transport: constrain every variable of B to the image of
// def's distinguished variable.  B lives over a registered subring of
// def's ring (inclusion_name), the result lives over def's ring.
PolySystem transport(const PolySystem& b, const DiophDefinition& def, const std::string& inclusion_name);

// All degree-h monomials of the coordinates, lexicographic order.
std::vector<RingElement> veronese(const std::vector<RingElement>& coords, int h);

PolySystem total_positivity_system(const RingPtr& ring, const std::string& x = "x",
                                   const std::string& z = "z");

// --- the shared exhaustive oracle -------------------------------------------

using Assignment = std::vector<RingElement>;

struct OracleOptions {
  long long cell_cap = 50000000;  // explored node budget
};

// Every solution with all coordinate entries of every variable in
// [-radius, radius].  Exhaustive; results sorted lexicographically.
std::vector<Assignment> brute_force_solutions(const PolySystem& system, long radius,
                                              const OracleOptions& opts = OracleOptions{});

// The multiset of values of one variable over all box solutions, deduplicated.
std::vector<RingElement> solution_values(const PolySystem& system, long radius,
                                         const std::string& var,
                                         const OracleOptions& opts = OracleOptions{});

}  // namespace dioph
