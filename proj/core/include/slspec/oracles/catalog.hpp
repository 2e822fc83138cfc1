#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "slspec/model.hpp"

namespace slspec::oracles {

struct CatalogProblem {
    SLProblem problem;
    double lower_bound = 0.0;
    /// λ0 of the closed-form reference bases.
    double lambda0 = 0.0;
    /// Friedrichs m-function (α0 = β0 = 0); empty when no closed form exists.
    std::function<cplx(cplx)> exact_m;
    /// Friedrichs eigenvalues λ_n, n = 0, 1, ...; empty for purely continuous spectrum.
    std::function<double(int)> spectrum;
};

/// name ∈ {bessel, legendre, laguerre, regular_free}; params: gamma (bessel), beta (laguerre).
CatalogProblem catalog(const std::string& name, const std::map<std::string, double>& params = {});

/// Kummer solution y1(z, x) = M(-z, β; x) of the Laguerre equation.
Solution laguerre_y1(cplx z, double beta);
/// y2(z, x) = x^{1-β} M(1-β-z, 2-β; x), β ≠ 1.
Solution laguerre_y2(cplx z, double beta);
/// W(y1, y2): 1-β for β ≠ 1, -1 for β = 1.
double laguerre_wronskian(double beta);

/// Normalized Friedrichs eigenfunctions: Legendre P_n, Laguerre L_n^{β-1} (β >= 1) or
/// x^{1-β} M(-n, 2-β; x) (β < 1), sin((n+1)πx) for regular_free.
Solution friedrichs_eigenfunction(const std::string& name, const std::map<std::string, double>& params, int n);

/// x^{1/2} J_{±γ}(sqrt(z) x) for the Bessel equation with real z > 0.
Solution bessel_solution(double gamma, double z, bool negative_order);

}  // namespace slspec::oracles
