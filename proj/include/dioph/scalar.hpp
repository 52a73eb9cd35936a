#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace dioph {

// Exact scalars used throughout: GMP-backed integers and rationals.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

enum class ErrorKind {
  Parse,              // malformed input          -> exit 64
  Validation,         // precondition violated    -> exit 65
  SearchExhausted,    // bounded search gave up   -> exit 66
  CertificateInvalid, // a certificate clause failed -> exit 67
  Internal,           // should-not-happen        -> exit 70
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}
  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& code, const std::string& msg) {
  throw Error(k, code, msg);
}

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 64;
    case ErrorKind::Validation: return 65;
    case ErrorKind::SearchExhausted: return 66;
    case ErrorKind::CertificateInvalid: return 67;
    case ErrorKind::Internal: return 70;
  }
  return 70;
}

inline int sgn(const Int& a) { return a.sign(); }
inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Quotient rounded toward -infinity, so residues are canonical.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
  Int r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

// Exact division; error if it does not divide.
inline Int div_exact(const Int& a, const Int& b) {
  if (b == 0) fail(ErrorKind::Internal, "DivideByZero", "exact division by zero");
  Int q = a / b;
  if (q * b != a) fail(ErrorKind::Internal, "InexactDivision", "division was not exact");
  return q;
}

inline Int pow_int(const Int& a, unsigned e) { return boost::multiprecision::pow(a, e); }

inline Int isqrt(const Int& a) { return boost::multiprecision::sqrt(a); }

inline bool is_square(const Int& a, Int* root = nullptr) {
  if (a < 0) return false;
  Int r = isqrt(a);
  if (r * r == a) {
    if (root) *root = r;
    return true;
  }
  return false;
}

inline bool is_rational_square(const Rat& q, Rat* root = nullptr) {
  if (q < 0) return false;
  Int n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  Int rn, rd;
  if (!is_square(n, &rn) || !is_square(d, &rd)) return false;
  if (root) *root = Rat(rn, rd);
  return true;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Int to_int_checked(const Rat& q) {
  if (boost::multiprecision::denominator(q) != 1)
    fail(ErrorKind::Internal, "NotAnInteger", "rational is not an integer");
  return Int(boost::multiprecision::numerator(q));
}

}  // namespace dioph
