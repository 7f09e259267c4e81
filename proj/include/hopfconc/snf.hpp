#pragma once

#include <vector>

#include "hopfconc/bigint.hpp"
#include "hopfconc/matrix.hpp"

namespace hopfconc {

// Smith normal form U * M * V = D.
//
// D has d_1 | d_2 | ... | d_rank > 0 on its leading diagonal and zeros
// elsewhere. Transforms are only filled in when requested; V_inv and U_inv
// are maintained alongside so no inversion is ever needed.
struct SNFResult {
  IntMatrix D;
  IntMatrix U, U_inv;
  IntMatrix V, V_inv;
  std::vector<BigInt> diagonal;  // the nonzero d_i
  std::size_t rank = 0;
  bool left_tracked = false;
  bool right_tracked = false;
};

struct SNFOptions {
  bool track_left = true;
  bool track_right = true;
};

// Pivots on the smallest nonzero absolute value (lowest row, then lowest
// column on ties). Deterministic for a fixed input.
SNFResult smith_normal_form(const IntMatrix& m, SNFOptions options = {});

}  // namespace hopfconc
