#include "dioph/numfield.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <cstdlib>
#include <sstream>

namespace dioph {

namespace {

// {x : m * x in row lattice of h}, as row basis.
MatI preimage_lattice(const MatI& m, const MatI& h) {
  const Eigen::Index d = m.rows();
  const Eigen::Index r = h.rows();
  MatI c(d, m.cols() + r);
  c.leftCols(m.cols()) = m;
  c.rightCols(r) = -h.transpose();
  // right kernel of c
  MatI k = left_kernel(MatI(c.transpose()));  // rows (x | y)
  if (k.rows() == 0) return MatI::Zero(0, m.cols());
  return hnf_rows(MatI(k.leftCols(m.cols())));
}

MatI lattice_intersection(const MatI& a, const MatI& b) {
  // rows of a and b are generators; vectors (u, v) with u a - v b = 0
  // parametrize the intersection u a = v b.
  MatI c(a.rows() + b.rows(), a.cols());
  c.topRows(a.rows()) = a;
  c.bottomRows(b.rows()) = -b;
  MatI k = left_kernel(c);
  if (k.rows() == 0) return MatI::Zero(0, a.cols());
  MatI inter = k.leftCols(a.rows()) * a;
  return hnf_rows(inter);
}

bool is_squarefree_desk(Int n) {
  n = abs_int(n);
  if (n == 0) return false;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- NumberRing

RingPtr NumberRing::make(const IPoly& minpoly_in, const RingOptions& opts) {
  IPoly f = ipoly_trim(minpoly_in);
  int d = ipoly_deg(f);
  if (d < 1) fail(ErrorKind::Validation, "DegreeTooSmall", "minimal polynomial must have degree >= 1");
  if (f[d] != 1) fail(ErrorKind::Validation, "NotMonic", "minimal polynomial must be monic");
  if (!is_irreducible_monic(f))
    fail(ErrorKind::Validation, "ReducibleOrNonMonogenic", "polynomial is reducible over Q");

  auto ring = std::shared_ptr<NumberRing>(new NumberRing());
  ring->minpoly_ = f;
  ring->degree_ = d;
  ring->discriminant_ = d == 1 ? Int(1) : discriminant_monic(f);
  int r = count_real_roots(f);
  ring->signature_ = {r, (d - r) / 2};
  ring->class_number_one_ = opts.class_number_one;
  ring->name_ = opts.name;

  // Maximality of Z[theta]: the standard degree-1 / quadratic / cyclotomic
  // checks, plus squarefree discriminant as a general sufficient condition.
  bool maximal = false;
  if (d == 1) {
    maximal = true;
  } else if (d == 2) {
    // f = t^2 + bt + c, disc = b^2 - 4c; maximal iff disc is fundamental.
    Int disc = ring->discriminant_;
    if (mod_floor(disc, 4) == 1) {
      maximal = is_squarefree_desk(disc);
    } else if (disc % 4 == 0) {
      Int m = disc / 4;
      Int m4 = mod_floor(m, 4);
      maximal = is_squarefree_desk(m) && (m4 == 2 || m4 == 3);
    }
  } else if (recognize_cyclotomic(f) > 0) {
    maximal = true;
  } else if (is_squarefree_desk(ring->discriminant_)) {
    maximal = true;
  }
  ring->maximal_order_ = maximal;
  if (!maximal && !opts.allow_non_maximal)
    fail(ErrorKind::Validation, "ReducibleOrNonMonogenic",
         "cannot certify that the power basis generates the maximal order");

  // theta^k for k = 0 .. 2d-2
  MatI red(2 * d - 1, d);
  red.setZero();
  for (int k = 0; k < d; ++k) red(k, k) = 1;
  for (int k = d; k <= 2 * d - 2; ++k) {
    // theta^k = theta * theta^(k-1)
    VecI prev = red.row(k - 1).transpose();
    VecI shifted = VecI::Zero(d);
    Int top = prev(d - 1);
    for (int i = d - 1; i >= 1; --i) shifted(i) = prev(i - 1);
    // subtract top * (f - t^d)
    for (int i = 0; i < d; ++i) shifted(i) -= top * f[i];
    red.row(k) = shifted.transpose();
  }
  ring->reduction_ = red;

  MatI table(d * d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) table.row(i * d + j) = red.row(i + j);
  ring->power_table_ = table;

  return ring;
}

RingElement NumberRing::zero() const {
  return RingElement(shared_from_this(), VecI::Zero(degree_));
}

RingElement NumberRing::one() const { return from_int(1); }

RingElement NumberRing::from_int(const Int& n) const {
  VecI v = VecI::Zero(degree_);
  v(0) = n;
  return RingElement(shared_from_this(), v);
}

RingElement NumberRing::element(VecI coords) const {
  return RingElement(shared_from_this(), std::move(coords));
}

RingElement NumberRing::theta_power(int k) const {
  if (k < 0 || k > 2 * degree_ - 2)
    fail(ErrorKind::Internal, "PowerRange", "theta power out of table range");
  return RingElement(shared_from_this(), reduction_.row(k).transpose());
}

const FieldAutomorphism& NumberRing::automorphism(const std::string& name) const {
  auto it = autos_.find(name);
  if (it == autos_.end()) fail(ErrorKind::Validation, "MissingAutomorphisms", "no automorphism named " + name);
  return it->second;
}

const SubringRegistration& NumberRing::subring(const std::string& name) const {
  auto it = subrings_.find(name);
  if (it == subrings_.end()) fail(ErrorKind::Validation, "MissingInclusion", "no subring named " + name);
  return it->second;
}

std::vector<std::string> NumberRing::automorphism_names() const {
  std::vector<std::string> out;
  for (const auto& [name, a] : autos_) out.push_back(name);
  return out;
}

std::vector<std::string> NumberRing::subring_names() const {
  std::vector<std::string> out;
  for (const auto& [name, r] : subrings_) out.push_back(name);
  return out;
}

void NumberRing::register_automorphism(const std::string& name, const MatI& images) const {
  if (images.rows() != degree_ || images.cols() != degree_)
    fail(ErrorKind::Validation, "SizeMismatch", "automorphism matrix must be d x d");
  // must fix 1 and be a ring homomorphism: check on basis products
  FieldAutomorphism sigma{name, images};
  VecI one = VecI::Zero(degree_);
  one(0) = 1;
  if (VecI(images * one) != one)
    fail(ErrorKind::Validation, "NotAHomomorphism", "automorphism must fix 1");
  RingPtr self = shared_from_this();
  for (int i = 0; i < degree_; ++i) {
    for (int j = 0; j < degree_; ++j) {
      RingElement a(self, VecI(images * VecI(reduction_.row(i).transpose())));
      RingElement b(self, VecI(images * VecI(reduction_.row(j).transpose())));
      RingElement prod_img(self, VecI(images * VecI(power_table_.row(i * degree_ + j).transpose())));
      if (a * b != prod_img)
        fail(ErrorKind::Validation, "NotAHomomorphism", "basis images do not respect multiplication");
    }
  }
  autos_[name] = sigma;
}

void NumberRing::register_subring(const std::string& name, RingPtr sub, const MatI& inclusion) const {
  if (inclusion.rows() != degree_ || inclusion.cols() != sub->degree())
    fail(ErrorKind::Validation, "SizeMismatch", "inclusion must be d x k");
  // the inclusion must send the subring generator to an element whose powers
  // match the remaining columns and must fix 1
  RingPtr self = shared_from_this();
  VecI one = VecI::Zero(degree_);
  one(0) = 1;
  if (VecI(inclusion.col(0)) != one)
    fail(ErrorKind::Validation, "NotAHomomorphism", "inclusion must send 1 to 1");
  if (sub->degree() > 1) {
    RingElement g(self, inclusion.col(1).eval());
    for (int j = 1; j < sub->degree(); ++j) {
      RingElement expect(self, inclusion.col(j).eval());
      if (g.pow(j) != expect)
        fail(ErrorKind::Validation, "NotAHomomorphism", "inclusion columns must be generator powers");
    }
    RingElement acc = self->zero();
    const IPoly& mp = sub->minpoly();
    for (int i = 0; i <= ipoly_deg(mp); ++i) acc = acc + g.pow(i) * mp[i];
    if (!acc.is_zero())
      fail(ErrorKind::Validation, "NotAHomomorphism", "generator image does not satisfy the subring polynomial");
  }
  subrings_[name] = SubringRegistration{name, std::move(sub), inclusion};
}

void NumberRing::register_quadratic_extension(const QuadraticExtensionData& q) const {
  if (!has_subring(q.subring_name) || !has_automorphism(q.conj_name))
    fail(ErrorKind::Validation, "MissingInclusion", "quadratic extension needs registered subring and conjugation");
  RingPtr self = shared_from_this();
  RingElement delta(self, q.delta);
  const auto& conj = automorphism(q.conj_name);
  if (apply_automorphism(conj, delta) != -delta)
    fail(ErrorKind::Validation, "NotAHomomorphism", "conjugation must negate delta");
  quad_ext_ = q;
}

void NumberRing::register_units(const std::vector<VecI>& fundamental) const {
  unit_generators_ = fundamental;
  // torsion units by bounded coordinate search
  torsion_units_.clear();
  RingPtr self = shared_from_this();
  VecI v = VecI::Constant(degree_, Int(-2));
  const Int lo = -2, hi = 2;
  while (true) {
    RingElement x(self, v);
    if (!x.is_zero() && abs_int(x.norm()) == 1) {
      RingElement p = x;
      for (int k = 1; k <= 24; ++k) {
        if (p == self->one()) {
          torsion_units_.push_back(v);
          break;
        }
        p = p * x;
      }
    }
    int pos = 0;
    while (pos < degree_ && v(pos) == hi) {
      v(pos) = lo;
      ++pos;
    }
    if (pos == degree_) break;
    v(pos) += 1;
  }
}

QInterval NumberRing::real_root_interval(int i, long prec_bits) const {
  if (i < 0 || i >= signature_.first)
    fail(ErrorKind::Validation, "EmbeddingRange", "no such real embedding");
  Rat width = Rat(1, pow_int(Int(2), static_cast<unsigned>(prec_bits)));
  if (real_roots_.empty()) real_roots_ = isolate_real_roots(minpoly_, Rat(1, 16));
  RootInterval& r = real_roots_[i];
  if (r.hi - r.lo > width) r = refine_root(minpoly_, r, width);
  return QInterval(r.lo, r.hi);
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->minpoly() == b->minpoly());
}

// --------------------------------------------------------------- RingElement

RingElement::RingElement(RingPtr ring, VecI coords) : ring_(std::move(ring)), coords_(std::move(coords)) {
  if (coords_.size() != ring_->degree())
    fail(ErrorKind::Validation, "SizeMismatch", "coordinate vector length must equal the ring degree");
}

bool RingElement::is_zero() const { return coords_.isZero(0); }

bool RingElement::is_rational_integer() const {
  for (Eigen::Index i = 1; i < coords_.size(); ++i)
    if (coords_(i) != 0) return false;
  return true;
}

Int RingElement::rational_part() const {
  if (!is_rational_integer())
    fail(ErrorKind::Internal, "NotRational", "element is not a rational integer");
  return coords_(0);
}

RingElement RingElement::operator+(const RingElement& o) const {
  if (!same_ring(ring_, o.ring_)) fail(ErrorKind::Validation, "RingMismatch", "elements of different rings");
  return RingElement(ring_, coords_ + o.coords_);
}

RingElement RingElement::operator-(const RingElement& o) const {
  if (!same_ring(ring_, o.ring_)) fail(ErrorKind::Validation, "RingMismatch", "elements of different rings");
  return RingElement(ring_, coords_ - o.coords_);
}

RingElement RingElement::operator-() const { return RingElement(ring_, VecI(-coords_)); }

RingElement RingElement::operator*(const RingElement& o) const {
  if (!same_ring(ring_, o.ring_)) fail(ErrorKind::Validation, "RingMismatch", "elements of different rings");
  const int d = ring_->degree();
  VecI out = VecI::Zero(d);
  const MatI& table = ring_->power_table();
  for (int i = 0; i < d; ++i) {
    if (coords_(i) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.coords_(j) == 0) continue;
      Int c = coords_(i) * o.coords_(j);
      out += (c * table.row(i * d + j).transpose()).eval();
    }
  }
  return RingElement(ring_, out);
}

RingElement RingElement::operator*(const Int& c) const { return RingElement(ring_, VecI(coords_ * c)); }

bool RingElement::operator==(const RingElement& o) const {
  return same_ring(ring_, o.ring_) && coords_ == o.coords_;
}

RingElement RingElement::pow(const Int& e) const {
  if (e < 0) fail(ErrorKind::Validation, "NegativePower", "pow wants a nonnegative exponent");
  RingElement base = *this, acc = ring_->one();
  Int k = e;
  while (k > 0) {
    if (k % 2 == 1) acc = acc * base;
    k /= 2;
    if (k > 0) base = base * base;
  }
  return acc;
}

MatI RingElement::mult_matrix() const {
  const int d = ring_->degree();
  MatI m(d, d);
  for (int j = 0; j < d; ++j) {
    RingElement col = *this * ring_->theta_power(j);
    m.col(j) = col.coords();
  }
  return m;
}

Int RingElement::norm() const { return det_bareiss(mult_matrix()); }

Int RingElement::trace() const {
  MatI m = mult_matrix();
  Int t = 0;
  for (int i = 0; i < ring_->degree(); ++i) t += m(i, i);
  return t;
}

std::optional<RingElement> RingElement::divide_exact(const RingElement& den) const {
  if (den.is_zero()) fail(ErrorKind::Validation, "DivideByZero", "division by zero element");
  FieldElement q = field_div(*this, den);
  if (!q.is_integral()) return std::nullopt;
  return q.to_integral();
}

QInterval RingElement::real_embedding(int i, long prec_bits) const {
  QInterval t = ring_->real_root_interval(i, prec_bits);
  QInterval acc{Rat(0), Rat(0)};
  for (Eigen::Index k = coords_.size() - 1; k >= 0; --k) acc = acc * t + QInterval(Rat(coords_(k)));
  return acc;
}

std::string RingElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (coords_(i) == 0) continue;
    if (!first) os << (coords_(i) > 0 ? " + " : " - ");
    Int a = first ? Int(coords_(i)) : abs_int(coords_(i));
    if (i == 0) {
      os << a;
    } else {
      if (a != 1 && a != -1) os << a << "*";
      else if (a == -1) os << "-";
      os << "th";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

RingElement apply_automorphism(const FieldAutomorphism& sigma, const RingElement& x) {
  return RingElement(x.ring(), sigma.apply(x.coords()));
}

// -------------------------------------------------------------- FieldElement

FieldElement FieldElement::from(const RingElement& x) {
  return FieldElement{x.ring(), to_rational(x.coords())};
}

bool FieldElement::is_integral() const {
  for (Eigen::Index i = 0; i < coords.size(); ++i)
    if (boost::multiprecision::denominator(coords(i)) != 1) return false;
  return true;
}

RingElement FieldElement::to_integral() const {
  return RingElement(ring, ::dioph::to_integral(coords));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  const int d = ring->degree();
  VecQ out = VecQ::Zero(d);
  const MatI& table = ring->power_table();
  for (int i = 0; i < d; ++i) {
    if (coords(i) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.coords(j) == 0) continue;
      Rat c = coords(i) * o.coords(j);
      for (int t = 0; t < d; ++t) out(t) += c * Rat(table(i * d + j, t));
    }
  }
  return FieldElement{ring, out};
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return FieldElement{ring, coords + o.coords};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  return FieldElement{ring, coords - o.coords};
}

FieldElement field_div(const RingElement& num, const RingElement& den) {
  if (den.is_zero()) fail(ErrorKind::Validation, "DivideByZero", "division by zero element");
  MatQ m = to_rational(den.mult_matrix());
  Eigen::FullPivLU<MatQ> lu(m);
  VecQ x = lu.solve(to_rational(num.coords()));
  return FieldElement{num.ring(), x};
}

FieldElement field_inverse(const RingElement& x) { return field_div(x.ring()->one(), x); }

// ------------------------------------------------------------- IntegralIdeal

IntegralIdeal IntegralIdeal::zero(RingPtr ring) {
  IntegralIdeal i;
  i.ring_ = std::move(ring);
  i.zero_ = true;
  i.hnf_ = MatI::Zero(i.ring_->degree(), i.ring_->degree());
  return i;
}

IntegralIdeal IntegralIdeal::unit(RingPtr ring) {
  IntegralIdeal i;
  i.ring_ = std::move(ring);
  i.zero_ = false;
  i.hnf_ = MatI::Identity(i.ring_->degree(), i.ring_->degree());
  return i;
}

IntegralIdeal IntegralIdeal::from_generators(const std::vector<RingElement>& gens) {
  if (gens.empty()) fail(ErrorKind::Validation, "EmptyGenerators", "need at least one generator");
  RingPtr ring = gens.front().ring();
  const int d = ring->degree();
  MatI rows(static_cast<Eigen::Index>(gens.size()) * d, d);
  Eigen::Index r = 0;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) fail(ErrorKind::Validation, "RingMismatch", "generators of different rings");
    MatI m = g.mult_matrix();  // column j = g * theta^j
    rows.middleRows(r, d) = m.transpose();
    r += d;
  }
  MatI h = hnf_rows(rows);
  if (h.rows() == 0) return zero(ring);
  if (h.rows() != d)
    fail(ErrorKind::Internal, "BadIdealLattice", "nonzero ideal lattice must have full rank");
  IntegralIdeal i;
  i.ring_ = ring;
  i.zero_ = false;
  i.hnf_ = h;
  return i;
}

IntegralIdeal IntegralIdeal::principal(const RingElement& g) { return from_generators({g}); }

IntegralIdeal IntegralIdeal::from_hnf(RingPtr ring, const MatI& h_in) {
  const int d = ring->degree();
  if (h_in.rows() == d && h_in.cols() == d && h_in.isZero(0)) return zero(ring);
  MatI h = hnf_rows(h_in);
  if (h.rows() != d) fail(ErrorKind::Validation, "BadIdealLattice", "ideal basis must have full rank");
  // closure under multiplication by theta
  IntegralIdeal i;
  i.ring_ = ring;
  i.zero_ = false;
  i.hnf_ = h;
  for (int r = 0; r < d; ++r) {
    RingElement b(ring, h.row(r).transpose());
    RingElement tb = b * ring->theta_power(1 < d ? 1 : 0);
    if (d > 1 && !i.contains(tb))
      fail(ErrorKind::Validation, "BadIdealLattice", "lattice is not closed under ring multiplication");
  }
  return i;
}

bool IntegralIdeal::is_unit() const { return !zero_ && norm() == 1; }

bool IntegralIdeal::contains(const RingElement& x) const {
  if (!same_ring(x.ring(), ring_)) fail(ErrorKind::Validation, "RingMismatch", "ideal and element rings differ");
  if (zero_) return x.is_zero();
  return reduce_mod_hnf(hnf_, x.coords()).isZero(0);
}

bool IntegralIdeal::subset_of(const IntegralIdeal& other) const {
  if (!same_ring(ring_, other.ring_)) fail(ErrorKind::Validation, "RingMismatch", "ideals of different rings");
  if (zero_) return true;
  if (other.zero_) return false;
  for (int r = 0; r < hnf_.rows(); ++r)
    if (!reduce_mod_hnf(other.hnf_, hnf_.row(r).transpose()).isZero(0)) return false;
  return true;
}

bool IntegralIdeal::operator==(const IntegralIdeal& o) const {
  return same_ring(ring_, o.ring_) && zero_ == o.zero_ && (zero_ || hnf_ == o.hnf_);
}

IntegralIdeal IntegralIdeal::product(const IntegralIdeal& o) const {
  if (!same_ring(ring_, o.ring_)) fail(ErrorKind::Validation, "RingMismatch", "ideals of different rings");
  if (zero_ || o.zero_) return zero(ring_);
  const int d = ring_->degree();
  MatI rows(d * d, d);
  for (int i = 0; i < d; ++i) {
    RingElement a(ring_, hnf_.row(i).transpose());
    for (int j = 0; j < d; ++j) {
      RingElement b(ring_, o.hnf_.row(j).transpose());
      rows.row(i * d + j) = (a * b).coords().transpose();
    }
  }
  IntegralIdeal out;
  out.ring_ = ring_;
  out.zero_ = false;
  out.hnf_ = hnf_rows(rows);
  if (out.hnf_.rows() != d) fail(ErrorKind::Internal, "BadIdealLattice", "product lost rank");
  return out;
}

IntegralIdeal IntegralIdeal::sum(const IntegralIdeal& o) const {
  if (!same_ring(ring_, o.ring_)) fail(ErrorKind::Validation, "RingMismatch", "ideals of different rings");
  if (zero_) return o;
  if (o.zero_) return *this;
  MatI rows(hnf_.rows() + o.hnf_.rows(), hnf_.cols());
  rows.topRows(hnf_.rows()) = hnf_;
  rows.bottomRows(o.hnf_.rows()) = o.hnf_;
  IntegralIdeal out;
  out.ring_ = ring_;
  out.zero_ = false;
  out.hnf_ = hnf_rows(rows);
  return out;
}

IntegralIdeal IntegralIdeal::intersect(const IntegralIdeal& o) const {
  if (!same_ring(ring_, o.ring_)) fail(ErrorKind::Validation, "RingMismatch", "ideals of different rings");
  if (zero_ || o.zero_) return zero(ring_);
  IntegralIdeal out;
  out.ring_ = ring_;
  out.zero_ = false;
  out.hnf_ = lattice_intersection(hnf_, o.hnf_);
  return out;
}

IntegralIdeal IntegralIdeal::colon(const IntegralIdeal& other) const {
  if (!same_ring(ring_, other.ring_)) fail(ErrorKind::Validation, "RingMismatch", "ideals of different rings");
  if (other.zero_) return unit(ring_);
  const int d = ring_->degree();
  MatI acc;  // row basis of the running intersection
  bool first = true;
  for (int r = 0; r < other.hnf_.rows(); ++r) {
    RingElement g(ring_, other.hnf_.row(r).transpose());
    MatI pre = preimage_lattice(g.mult_matrix(), zero_ ? MatI::Zero(1, d) : hnf_);
    if (first) {
      acc = pre;
      first = false;
    } else {
      acc = lattice_intersection(acc, pre);
    }
  }
  IntegralIdeal out;
  out.ring_ = ring_;
  out.zero_ = acc.rows() < d;
  out.hnf_ = out.zero_ ? MatI::Zero(d, d) : acc;
  return out;
}

IntegralIdeal IntegralIdeal::pow(unsigned e) const {
  IntegralIdeal acc = unit(ring_);
  for (unsigned i = 0; i < e; ++i) acc = acc.product(*this);
  return acc;
}

Int IntegralIdeal::norm() const {
  if (zero_) fail(ErrorKind::Validation, "ZeroIdeal", "the zero ideal has no finite norm");
  Int n = 1;
  for (int i = 0; i < hnf_.rows(); ++i) n *= hnf_(i, i);
  return n;
}

Int IntegralIdeal::smallest_integer() const {
  if (zero_) fail(ErrorKind::Validation, "ZeroIdeal", "zero ideal");
  const int d = ring_->degree();
  MatI unitrow = MatI::Zero(1, d);
  unitrow(0, 0) = 1;
  MatI inter = lattice_intersection(hnf_, unitrow);
  if (inter.rows() != 1) fail(ErrorKind::Internal, "BadIdealLattice", "Z-intersection must have rank 1");
  return abs_int(inter(0, 0));
}

RingElement IntegralIdeal::reduce(const RingElement& x) const {
  if (zero_) fail(ErrorKind::Validation, "ZeroIdeal", "cannot reduce modulo the zero ideal");
  if (!same_ring(x.ring(), ring_)) fail(ErrorKind::Validation, "RingMismatch", "ideal and element rings differ");
  return RingElement(ring_, reduce_mod_hnf(hnf_, x.coords()));
}

bool IntegralIdeal::congruent(const RingElement& x, const RingElement& y) const {
  if (zero_) fail(ErrorKind::Validation, "ZeroIdeal", "cannot compare modulo the zero ideal");
  return contains(x - y);
}

std::optional<RingElement> IntegralIdeal::solve_mod(const RingElement& a, const RingElement& b) const {
  if (zero_) fail(ErrorKind::Validation, "ZeroIdeal", "cannot solve modulo the zero ideal");
  const int d = ring_->degree();
  MatI m(d, 2 * d);
  m.leftCols(d) = a.mult_matrix();
  m.rightCols(d) = hnf_.transpose();
  auto sol = solve_integer(m, b.coords());
  if (!sol) return std::nullopt;
  return RingElement(ring_, reduce_mod_hnf(hnf_, sol->head(d)));
}

// ------------------------------------------------------------- module ops

RingPtr make_field(const IPoly& minpoly, const RingOptions& opts) {
  return NumberRing::make(minpoly, opts);
}

NormAndConjugates norm_and_conjugates(const RingElement& x) {
  NormAndConjugates out;
  out.norm = x.norm();
  const IPoly& f = x.ring()->minpoly();
  const int d = x.ring()->degree();
  if (d == 1) {
    out.conjugates = {std::complex<double>(static_cast<double>(x.coords()(0)), 0.0)};
    out.error_radius = 0.0;
    return out;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -static_cast<double>(f[i]);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(comp);
  double resid = 0.0;
  for (int i = 0; i < d; ++i) {
    std::complex<double> root = es.eigenvalues()(i);
    std::complex<double> val = 0.0, fp = 0.0, fv = 0.0;
    for (int k = d; k >= 0; --k) fv = fv * root + static_cast<double>(f[k]);
    for (int k = d; k >= 1; --k) fp = fp * root + static_cast<double>(Int(k) * f[k]);
    for (Eigen::Index k = x.coords().size() - 1; k >= 0; --k) val = val * root + static_cast<double>(x.coords()(k));
    out.conjugates.push_back(val);
    double local = std::abs(fv) / std::max(std::abs(fp), 1e-12);
    resid = std::max(resid, local);
  }
  out.error_radius = resid * 16.0;  // crude propagation factor; display only
  return out;
}

RingElement relative_norm_quadratic(const RingElement& x, const std::string& automorphism,
                                    const std::string& subring) {
  const auto& ring = x.ring();
  const auto& sigma = ring->automorphism(automorphism);
  const auto& reg = ring->subring(subring);
  RingElement prod = x * apply_automorphism(sigma, x);
  auto coords = solve_integer(reg.inclusion, prod.coords());
  if (!coords)
    fail(ErrorKind::CertificateInvalid, "NotInSubring",
         "x * sigma(x) does not lie in the registered subring lattice");
  return RingElement(reg.subring, *coords);
}

namespace {

Int mod_pow(Int base, Int exp, const Int& mod) {
  Int acc = 1;
  base = mod_floor(base, mod);
  while (exp > 0) {
    if (exp % 2 == 1) acc = acc * base % mod;
    base = base * base % mod;
    exp /= 2;
  }
  return acc;
}

int kronecker_symbol(Int a, Int n) {
  // n > 0 here; standard Jacobi/Kronecker evaluation
  if (n == 1) return 1;
  int result = 1;
  a = mod_floor(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      Int r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a = mod_floor(a, n);
  }
  return n == 1 ? result : 0;
}

Int sqrt_mod_prime(const Int& a_in, const Int& p) {
  // Tonelli-Shanks; requires a to be a QR mod odd prime p
  Int a = mod_floor(a_in, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
  Int q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (kronecker_symbol(z, p) != -1) ++z;
  Int m = s, c = mod_pow(z, q, p), t = mod_pow(a, q, p), r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    Int tt = t;
    unsigned i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - Int(i) - 1; ++j) b = b * b % p;
    m = Int(i);
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

std::vector<std::pair<Int, unsigned>> factor_integer_desk(Int n, const Int& bound) {
  std::vector<std::pair<Int, unsigned>> out;
  n = abs_int(n);
  if (n <= 1) return out;
  for (Int p = 2; p * p <= n && p <= 1000000; ++p) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) {
    if (boost::multiprecision::miller_rabin_test(n, 40)) {
      out.emplace_back(n, 1);
    } else if (n > bound) {
      fail(ErrorKind::SearchExhausted, "NormTooLargeToFactor",
           "composite cofactor exceeds the factoring bound");
    } else {
      for (Int p = 1000001; p * p <= n; p += 2) {
        while (n % p == 0) {
          bool found = false;
          for (auto& f : out)
            if (f.first == p) {
              ++f.second;
              found = true;
            }
          if (!found) out.emplace_back(p, 1);
          n /= p;
        }
      }
      if (n > 1) out.emplace_back(n, 1);
    }
  }
  return out;
}

}  // namespace

std::vector<PrimeFactor> factor_ideal_quadratic(const IntegralIdeal& ideal, const Int& factor_bound) {
  const RingPtr& ring = ideal.ring();
  const int d = ring->degree();
  if (d > 2) fail(ErrorKind::Validation, "NotQuadratic", "factoring is implemented for degree <= 2");
  if (ideal.is_zero()) fail(ErrorKind::Validation, "ZeroIdeal", "cannot factor the zero ideal");
  Int n = ideal.norm();
  if (n > factor_bound)
    fail(ErrorKind::SearchExhausted, "NormTooLargeToFactor", "ideal norm exceeds the factoring bound");
  std::vector<PrimeFactor> out;
  if (n == 1) return out;
  auto rational_factors = factor_integer_desk(n, factor_bound);

  if (d == 1) {
    for (auto& [p, e] : rational_factors) {
      PrimeFactor pf;
      pf.prime = IntegralIdeal::principal(ring->from_int(p));
      pf.exponent = e;
      pf.residue_characteristic = p;
      pf.kind = PrimeFactor::Kind::Ramified;  // not meaningful over Z; tag as inert below
      pf.kind = PrimeFactor::Kind::Inert;
      out.push_back(pf);
    }
    return out;
  }

  const Int disc = ring->discriminant();
  const IPoly& f = ring->minpoly();
  for (auto& [p, e_norm] : rational_factors) {
    std::vector<IntegralIdeal> primes;
    PrimeFactor::Kind kind;
    int chi = kronecker_symbol(disc, p);
    if (p == 2) {
      // classify by roots of f mod 2
      std::vector<Int> roots;
      for (Int r = 0; r < 2; ++r)
        if (mod_floor(ipoly_eval(f, r), Int(2)) == 0) roots.push_back(r);
      if (roots.empty()) {
        kind = PrimeFactor::Kind::Inert;
        primes.push_back(IntegralIdeal::principal(ring->from_int(2)));
      } else {
        kind = (disc % 2 == 0) ? PrimeFactor::Kind::Ramified
                               : (roots.size() == 2 ? PrimeFactor::Kind::Split : PrimeFactor::Kind::Ramified);
        for (const Int& r : roots) {
          RingElement gen = ring->theta_power(1) - ring->from_int(r);
          primes.push_back(IntegralIdeal::from_generators({ring->from_int(2), gen}));
        }
        if (kind == PrimeFactor::Kind::Split && primes.size() == 2 && primes[0] == primes[1])
          primes.pop_back();
      }
    } else if (chi == -1) {
      kind = PrimeFactor::Kind::Inert;
      primes.push_back(IntegralIdeal::principal(ring->from_int(p)));
    } else {
      kind = chi == 0 ? PrimeFactor::Kind::Ramified : PrimeFactor::Kind::Split;
      // roots of t^2 + b t + c mod p
      Int b = f[1], c = f[0];
      Int delta = mod_floor(b * b - 4 * c, p);
      Int s = sqrt_mod_prime(delta, p);
      Int inv2 = mod_pow(2, p - 2, p);
      Int r1 = mod_floor((-b + s) * inv2, p);
      Int r2 = mod_floor((-b - s) * inv2, p);
      RingElement g1 = ring->theta_power(1) - ring->from_int(r1);
      primes.push_back(IntegralIdeal::from_generators({ring->from_int(p), g1}));
      if (r2 != r1) {
        RingElement g2 = ring->theta_power(1) - ring->from_int(r2);
        primes.push_back(IntegralIdeal::from_generators({ring->from_int(p), g2}));
      }
    }
    for (auto& prime : primes) {
      unsigned v = 0;
      IntegralIdeal power = prime;
      while (ideal.subset_of(power)) {
        ++v;
        power = power.product(prime);
      }
      if (v > 0) {
        PrimeFactor pf;
        pf.prime = prime;
        pf.exponent = v;
        pf.residue_characteristic = p;
        pf.kind = kind;
        out.push_back(pf);
      }
    }
  }
  // exactness: the product of the returned powers must be the input
  IntegralIdeal check = IntegralIdeal::unit(ring);
  for (const auto& pf : out) check = check.product(pf.prime.pow(pf.exponent));
  if (!(check == ideal))
    fail(ErrorKind::Internal, "FactorizationMismatch", "prime powers do not multiply back to the ideal");
  return out;
}

FixedSubring fixed_subring(const RingPtr& ring, const FieldAutomorphism& sigma) {
  const int d = ring->degree();
  MatI m = sigma.basis_images;
  if (MatI(m * m) != MatI::Identity(d, d))
    fail(ErrorKind::Validation, "NotAnInvolution", "automorphism must square to the identity");
  MatI diff = m - MatI::Identity(d, d);
  // fixed lattice: {x : diff * x = 0}
  MatI fixed = left_kernel(MatI(diff.transpose()));
  fixed = hnf_rows(fixed);
  const int k = static_cast<int>(fixed.rows());
  if (k == d) {
    FixedSubring out;
    out.subring = ring;
    out.inclusion = MatI::Identity(d, d);
    return out;
  }
  if (k == 1) {
    FixedSubring out;
    out.subring = NumberRing::make({Int(0), Int(1)}, {.class_number_one = true, .name = "Z"});
    out.inclusion = MatI::Zero(d, 1);
    out.inclusion(0, 0) = 1;
    return out;
  }
  // search for a generator g with Z[g] equal to the fixed lattice; the
  // constant direction is irrelevant (Z[g] = Z[g+c]) so pin its
  // coefficient to zero and take the leading coefficient positive
  for (Int radius = 1; radius <= 4; ++radius) {
    VecI coeff = VecI::Constant(k, -radius);
    coeff(0) = 0;
    while (true) {
      bool skip = false;
      {
        int lead = -1;
        for (int i = k - 1; i >= 1; --i)
          if (coeff(i) != 0) { lead = i; break; }
        if (lead < 0 || coeff(lead) < 0) skip = true;
      }
      if (!skip) {
      VecI cand = VecI::Zero(d);
      for (int i = 0; i < k; ++i) cand += (coeff(i) * fixed.row(i).transpose()).eval();
      RingElement g(ring, cand);
      // powers of g must span the fixed lattice
      MatI pows(k, d);
      RingElement acc = ring->one();
      for (int j = 0; j < k; ++j) {
        pows.row(j) = acc.coords().transpose();
        if (j + 1 < k) acc = acc * g;
      }
      if (hnf_rows(pows) == fixed) {
        // minimal polynomial of g over Q, degree k, from the linear relation
        RingElement gk = g.pow(k);
        MatQ a(d, k);
        for (int j = 0; j < k; ++j) a.col(j) = to_rational(VecI(pows.row(j).transpose()));
        Eigen::FullPivLU<MatQ> lu(a);
        VecQ sol = lu.solve(to_rational(gk.coords()));
        if (VecQ(a * sol - to_rational(gk.coords())).isZero(0)) {
          IPoly mp(k + 1, Int(0));
          mp[k] = 1;
          bool integral = true;
          for (int j = 0; j < k; ++j) {
            if (boost::multiprecision::denominator(sol(j)) != 1) { integral = false; break; }
            mp[j] = -Int(boost::multiprecision::numerator(sol(j)));
          }
          if (integral && ipoly_deg(ipoly_trim(mp)) == k) {
            RingPtr sub;
            try {
              sub = NumberRing::make(mp, {.class_number_one = ring->class_number_one_asserted()});
            } catch (const Error&) {
              sub = NumberRing::make(mp, {.allow_non_maximal = true,
                                          .class_number_one = ring->class_number_one_asserted()});
            }
            FixedSubring out;
            out.subring = sub;
            out.inclusion = MatI(d, k);
            RingElement pw = ring->one();
            for (int j = 0; j < k; ++j) {
              out.inclusion.col(j) = pw.coords();
              if (j + 1 < k) pw = pw * g;
            }
            return out;
          }
        }
      }
      }  // if (!skip)
      int pos = 1;
      while (pos < k && coeff(pos) == radius) {
        coeff(pos) = -radius;
        ++pos;
      }
      if (pos == k) break;
      coeff(pos) += 1;
    }
  }
  fail(ErrorKind::SearchExhausted, "NoMonogenicGenerator",
       "no small generator found for the fixed subring lattice");
}

namespace {

// floor((p + sqrt(dd)) / q) for non-square dd > 0, q != 0, exact.
Int floor_surd(const Int& p, const Int& dd, const Int& q) {
  Int s = isqrt(dd);
  Int cand = floor_div(p + s, q);
  auto le_value = [&](const Int& a) {
    // is a <= (p + sqrt(dd)) / q ?  (dd is not a square)
    Int lhs = a * q - p;
    if (q > 0) {
      if (lhs <= 0) return true;
      return lhs * lhs <= dd;
    }
    if (lhs <= 0) return false;
    return lhs * lhs >= dd;
  };
  while (!le_value(cand)) --cand;
  while (le_value(cand + 1)) ++cand;
  return cand;
}

}  // namespace

RingElement fundamental_unit_real_quadratic(const RingPtr& ring) {
  if (ring->degree() != 2 || !ring->is_totally_real())
    fail(ErrorKind::Validation, "NotRealQuadratic", "fundamental unit wants a real quadratic ring");
  const IPoly& f = ring->minpoly();
  Int b = f[1], c = f[0];
  Int dd = b * b - 4 * c;  // > 0, non-square
  // continued fraction of theta = (-b + sqrt(dd)) / 2
  Int p = -b, q = 2;
  // invariant: q | dd - p^2  (here: dd - b^2 = -4c)
  Int pk0 = 1, pk1, qk0 = 0, qk1;
  Int a0 = floor_surd(p, dd, q);
  pk1 = a0;
  qk1 = 1;
  auto norm_of = [&](const Int& pp, const Int& qq) { return pp * pp + b * pp * qq + c * qq * qq; };
  Int pp = pk1, qq = qk1;
  for (int iter = 0; iter < 100000; ++iter) {
    if (abs_int(norm_of(pp, qq)) == 1) {
      // unit u = pp - qq * theta
      VecI v(2);
      v << pp, -qq;
      RingElement u(ring, v);
      // normalize among {±u^{±1}} to value > 1 at the largest real embedding
      FieldElement inv = field_inverse(u);
      RingElement ui = inv.to_integral();
      std::vector<RingElement> cands{u, -u, ui, RingElement(ring, VecI(-ui.coords()))};
      int big = ring->real_embedding_count() - 1;
      for (const auto& candu : cands) {
        RingElement shifted = candu - ring->one();
        if (!shifted.is_zero() && certified_sign(shifted, big) > 0) return candu;
      }
      fail(ErrorKind::Internal, "UnitNormalization", "no associate exceeds 1");
    }
    // next CF step
    p = a0 * q - p;
    q = div_exact(dd - p * p, q);
    a0 = floor_surd(p, dd, q);
    Int pk2 = a0 * pk1 + pk0, qk2 = a0 * qk1 + qk0;
    pk0 = pk1;
    pk1 = pk2;
    qk0 = qk1;
    qk1 = qk2;
    pp = pk1;
    qq = qk1;
  }
  fail(ErrorKind::SearchExhausted, "PellSearchExhausted", "continued fraction found no unit in bound");
}

long precision_cap_bits() {
  if (const char* env = std::getenv("DIOPH_PREC_CAP")) {
    long v = std::atol(env);
    if (v >= 16) return v;
  }
  return 4096;
}

namespace {

template <typename Decide>
auto escalate(const Decide& decide) {
  const long cap = precision_cap_bits();
  for (long prec = 32; prec <= cap; prec *= 2) {
    auto r = decide(prec);
    if (r) return *r;
  }
  fail(ErrorKind::SearchExhausted, "Undecidable",
       "interval comparison undecided at the precision cap");
}

}  // namespace

int certified_sign(const RingElement& x, int embedding) {
  if (x.is_zero()) return 0;
  return escalate([&](long prec) -> std::optional<int> {
    QInterval iv = x.real_embedding(embedding, prec);
    if (iv.strictly_positive()) return 1;
    if (iv.strictly_negative()) return -1;
    return std::nullopt;
  });
}

bool certified_less(const RingElement& x, const RingElement& y, int embedding) {
  if (x == y) return false;
  return certified_sign(y - x, embedding) > 0;
}

bool totally_positive(const RingElement& x) {
  if (x.is_zero()) return false;
  const int n = x.ring()->real_embedding_count();
  for (int i = 0; i < n; ++i)
    if (certified_sign(x, i) <= 0) return false;
  return true;
}

bool totally_greater(const RingElement& x, const RingElement& y) {
  return totally_positive(x - y);
}

int certified_abs_cmp(const RingElement& x, int embedding, const Rat& q) {
  // sign of |sigma(x)| - q; equality happens iff x == ±q exactly, which
  // requires q to be integral, so it is decidable up front
  if (boost::multiprecision::denominator(q) == 1) {
    RingElement qe = x.ring()->from_int(Int(boost::multiprecision::numerator(q)));
    if (x == qe || x == -qe) return 0;
  }
  return escalate([&](long prec) -> std::optional<int> {
    QInterval iv = x.real_embedding(embedding, prec).abs();
    if (iv.lo > q) return 1;
    if (iv.hi < q) return -1;
    return std::nullopt;
  });
}

std::optional<FieldAutomorphism> complex_conjugation(const RingPtr& ring) {
  if (ring->has_automorphism("conj")) return ring->automorphism("conj");
  if (ring->degree() == 2 && ring->real_embedding_count() == 0) {
    // imaginary quadratic: theta-bar = -b - theta for f = t^2 + bt + c
    MatI m = MatI::Zero(2, 2);
    m(0, 0) = 1;
    m(0, 1) = -ring->minpoly()[1];
    m(1, 1) = -1;
    return FieldAutomorphism{"conj", m};
  }
  return std::nullopt;
}

bool t2_norm_available(const RingPtr& ring) {
  return ring->is_totally_real() || ring->degree() == 1 || complex_conjugation(ring).has_value();
}

Rat t2_norm_exact(const RingElement& x) {
  const RingPtr& ring = x.ring();
  if (ring->degree() == 1) return Rat(x.coords()(0) * x.coords()(0));
  if (ring->is_totally_real()) return Rat((x * x).trace());
  if (auto conj = complex_conjugation(ring)) {
    return Rat((x * apply_automorphism(*conj, x)).trace());
  }
  fail(ErrorKind::Validation, "NoExactT2", "no exact T2 form available for this ring");
}

std::vector<Int> t2_coordinate_bounds(const RingPtr& ring, const Rat& t2) {
  const int d = ring->degree();
  MatQ g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      RingElement bi = ring->theta_power(i), bj = ring->theta_power(j);
      if (ring->is_totally_real() || d == 1) {
        g(i, j) = Rat((bi * bj).trace());
      } else {
        auto conj = complex_conjugation(ring);
        if (!conj) fail(ErrorKind::Validation, "NoExactT2", "no conjugation for the T2 form");
        g(i, j) = Rat((bi * apply_automorphism(*conj, bj)).trace());
      }
    }
  Eigen::FullPivLU<MatQ> lu(g);
  MatQ ginv = lu.inverse();
  std::vector<Int> bounds(d);
  for (int i = 0; i < d; ++i) {
    Rat b2 = t2 * ginv(i, i);
    if (b2 < 0) b2 = 0;
    Int num = boost::multiprecision::numerator(b2), den = boost::multiprecision::denominator(b2);
    bounds[i] = isqrt(num / den) + 1;
  }
  return bounds;
}

NumDen common_denominator(const FieldElement& x) {
  Int den = 1;
  for (Eigen::Index i = 0; i < x.coords.size(); ++i)
    den = lcm_int(den, Int(boost::multiprecision::denominator(x.coords(i))));
  VecI num(x.coords.size());
  for (Eigen::Index i = 0; i < x.coords.size(); ++i)
    num(i) = to_int_checked(Rat(x.coords(i) * Rat(den)));
  return NumDen{RingElement(x.ring, num), den};
}

}  // namespace dioph
