#pragma once

#include <string>

#include "qmpe/cmatrix.hpp"

namespace qmpe {

enum class QuantifierKind { trace, frobenius, relative_entropy };

std::string to_string(QuantifierKind kind);
QuantifierKind quantifier_from_string(const std::string& name);

// 1/2 Tr|rho - sigma| via the eigenvalues of the Hermitian difference.
double trace_distance(const CMatrix& rho, const CMatrix& sigma);

// sqrt(Tr[A^dag A]) with A = rho - sigma.
double frobenius_distance(const CMatrix& rho, const CMatrix& sigma);

// Tr[rho (ln rho - ln sigma)], natural log, eigenvalues clipped below at
// `floor`. Throws IllConditioned when sigma has an eigenvalue below the floor
// on which rho carries support beyond 1e-6.
double relative_entropy(const CMatrix& rho, const CMatrix& sigma, double floor = 1e-12);

double quantify(QuantifierKind kind, const CMatrix& rho, const CMatrix& sigma,
                double floor = 1e-12);

} // namespace qmpe
