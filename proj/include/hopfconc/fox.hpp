#pragma once

#include "hopfconc/laurent.hpp"
#include "hopfconc/link_diagram.hpp"
#include "hopfconc/matrix.hpp"

namespace hopfconc {

// Largest matrix dimension for which minors are enumerated.
inline constexpr std::size_t kMaxMinorDimension = 30;

// Abelianized free derivative d(w)/d(g) in Z[x_1^{+-1},...,x_m^{+-1}].
LaurentPoly fox_derivative(const Word& w, int generator, const MeridianMap& ab);

// relations x generators matrix of abelianized Fox derivatives.
LaurentMatrix alexander_matrix(const GroupPresentation& pres, const MeridianMap& ab);

// Column (x_{comp(g)} - 1) over the generators; alexander_matrix times this
// column is zero.
LaurentMatrix generator_column(const MeridianMap& ab);

// gcd of the maximal minors of the Alexander matrix with column `column`
// deleted, divided by (x_{comp(column)} - 1). Needs at least 2 components.
// Returns the zero polynomial when every minor vanishes.
LaurentPoly multivariable_alexander(const GroupPresentation& pres, const MeridianMap& ab, int column);
LaurentPoly multivariable_alexander(const PDCode& d);

// Alexander polynomial of a knot diagram in one variable, canonical form,
// |Delta(1)| = 1 checked.
LaurentPoly knot_alexander(const PDCode& d);

}  // namespace hopfconc
