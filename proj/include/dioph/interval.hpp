#pragma once

#include <algorithm>

#include "dioph/scalar.hpp"

namespace dioph {

// Closed interval with exact rational endpoints.
struct QInterval {
  Rat lo, hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rat v) : lo(v), hi(v) {}
  QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

  Rat width() const { return hi - lo; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool strictly_positive() const { return lo > 0; }
  bool strictly_negative() const { return hi < 0; }

  QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  QInterval operator-() const { return {-hi, -lo}; }
  QInterval operator*(const QInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
  }
  QInterval abs() const {
    if (lo >= 0) return *this;
    if (hi <= 0) return {-hi, -lo};
    return {Rat(0), std::max(Rat(-lo), hi)};
  }
};

inline QInterval operator*(const Rat& c, const QInterval& iv) {
  if (c >= 0) return {c * iv.lo, c * iv.hi};
  return {c * iv.hi, c * iv.lo};
}

inline QInterval operator+(const Rat& c, const QInterval& iv) { return {c + iv.lo, c + iv.hi}; }

}  // namespace dioph
