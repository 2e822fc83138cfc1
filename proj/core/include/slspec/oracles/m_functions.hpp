#pragma once

#include <vector>

#include "slspec/types.hpp"

namespace slspec::oracles {

/// Bessel m-function for γ in [0, 1); z^γ and ln z use arg z in (0, 2π).
cplx m_bessel(cplx z, double gamma);

/// ν(z) = (-1 + sqrt(1 + 4z)) / 2 with Re ν >= -1/2.
cplx legendre_nu(cplx z);
/// Friedrichs Legendre m-function, digamma route.
cplx m_legendre(cplx z);
/// Same function from its partial-fraction series; tail replaced by its integral.
cplx m_legendre_series(cplx z, int terms = 20000);

/// Laguerre m-function for β in (0, 2), Gamma-ratio (or digamma for β = 1) route.
cplx m_laguerre(cplx z, double beta);
/// Infinite-product route (β ≠ 1) or partial-fraction series route (β = 1).
cplx m_laguerre_product(cplx z, double beta, int terms = 10000);

/// -sqrt(z) cot(sqrt(z)): Dirichlet m-function of -u'' on (0, 1).
cplx m_regular_free(cplx z);

/// ∏_{n>=1} ∏_j (n + A_j) / (n + B_j) for ΣA = ΣB, truncated at N with an integral tail.
cplx ratio_product(const std::vector<cplx>& A, const std::vector<cplx>& B, int terms = 10000);

/// Right side of Γ(z1)Γ(z2) / (Γ(z1+z3)Γ(z2-z3)) = ∏_{n>=0} (1 + z3/(n+z1)) (1 - z3/(n+z2)).
cplx gamma_ratio_product(cplx z1, cplx z2, cplx z3, int terms = 10000);
cplx gamma_ratio(cplx z1, cplx z2, cplx z3);

}  // namespace slspec::oracles
