#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>

#include "hopfconc/bigint.hpp"

namespace hopfconc {

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline nlohmann::ordered_json bigint_json(const BigInt& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

// Rounds to 12 significant digits so emitted JSON is stable across
// platforms.
inline double round12(double x) {
  if (!std::isfinite(x) || x == 0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;
}

}  // namespace hopfconc
