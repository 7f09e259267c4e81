#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hopfconc {

using BigInt = mpz_class;

inline std::string to_string(const BigInt& x) { return x.get_str(); }

// Throws std::overflow_error when x does not fit.
std::int64_t to_int64(const BigInt& x);

static_assert(sizeof(long) == sizeof(std::int64_t), "mpz_class long constructor must be 64-bit");

inline BigInt from_int64(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace hopfconc
