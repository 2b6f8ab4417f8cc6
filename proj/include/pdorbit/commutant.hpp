#pragma once

#include "pdorbit/matrix.hpp"

namespace pdorbit {

/// Complex dimension of {C : AC = CA, BC = CB}, computed as the nullity of
/// the stacked commutator system on vectorized C. Singular values below
/// null_rel * sigma_max count as zero. Always >= 1 (scalars commute).
/// The pair {A, B} generates an irreducible algebra exactly when this is 1,
/// which is the submersion criterion for the lifting map.
std::size_t commutant_dimension(const HermitianMatrix& a, const HermitianMatrix& b,
                                double null_rel = defaults::tol_null_rel);

}  // namespace pdorbit
