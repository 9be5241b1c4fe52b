#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace vrimg {

// Exact ratio kept in the form it was produced in. Depth values carry the
// image side length as denominator and information concentration carries
// the region area, so no reduction is applied.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Value equality (cross-multiplied); use same_form() for field equality.
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }

  bool same_form(const Fraction& o) const { return num == o.num && den == o.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

}  // namespace vrimg
