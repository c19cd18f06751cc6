#include "persp/ext_real.hpp"

#include <cstdio>

namespace persp {

ExtReal operator+(ExtReal a, ExtReal b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw std::domain_error("ExtReal: (+inf) + (-inf) is undefined");
  }
  return ExtReal(a.value() + b.value());
}

ExtReal operator-(ExtReal a) { return ExtReal(-a.value()); }

ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

ExtReal scale(double t, ExtReal a) {
  if (t < 0.0) throw std::domain_error("ExtReal scale: factor must be nonnegative");
  if (t == 0.0) return ExtReal(0.0);
  return ExtReal(t * a.value());
}

std::string to_string(ExtReal v) {
  if (v.is_pos_inf()) return "+inf";
  if (v.is_neg_inf()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v.value());
  return buf;
}

}  // namespace persp
