#pragma once

#include <optional>
#include <vector>

#include "slspec/extensions.hpp"
#include "slspec/integrator.hpp"
#include "slspec/principal.hpp"

namespace slspec {

struct SpectralConfig {
    IntegratorConfig integrator{};
    int panels = 400;
    /// Bisection stops at root_tol * max(1, |λ|).
    double root_tol = 1e-10;
    /// Limit-point truncation stops when |m_X - m_2X| <= weyl_tol * max(1, |m|).
    double weyl_tol = 1e-10;
    /// Distance from the matching point to the first Dirichlet point at an infinite endpoint.
    double truncation_start = 16.0;
    int max_doublings = 10;
    /// 0 defers to SLSPEC_THREADS, then 1.
    int threads = 0;
    /// λ0 of the reference bases; catalog bases use 0.
    std::optional<double> lambda0;
};

struct RootBracket {
    double lo = 0.0;
    double hi = 0.0;
    int bisections = 0;
    /// Dirichlet truncation point used for the final refinement (limit-point b only).
    std::optional<double> truncation;
};

struct BracketInfo {
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool widened = false;
    int panels = 0;
    std::vector<RootBracket> roots;
};

struct Eigenlist {
    std::vector<double> eigenvalues;
    /// |D(λ_k)| relative to the larger |D| at the ends of the initial bracket.
    std::vector<double> characteristic_residuals;
    BracketInfo bracket_info;
};

struct MSample {
    cplx z{};
    cplx m{};
    /// Dirichlet point X of the final truncation; 0 when b is limit circle.
    double truncation_radius = 0.0;
    /// |m_X - m_{X/2}|; 0 when b is limit circle.
    double disk_radius_estimate = 0.0;
};

/// Solution of τg = zg with generalized boundary data (g̃, g̃') at the endpoint. Singular endpoints
/// are handled by integrating the coordinates s = (-W(u, g), W(û, g)) relative to the basis.
Solution shoot_from(const SLProblem& problem, Side endpoint, cplx g_tilde, cplx g_tilde_prime,
                    const ReferenceBasis& basis, cplx z, const SpectralConfig& cfg = {});

/// φ_α(z, ·) with (g̃, g̃')(a) = (-sin α, cos α).
Solution shoot_left(const SLProblem& problem, double alpha, const ReferenceBasis& basis_a, cplx z,
                    const SpectralConfig& cfg = {});

/// Reference basis at an endpoint with the configured λ0 (0 by default).
ReferenceBasis spectral_basis(const SLProblem& problem, Side endpoint, const SpectralConfig& cfg = {});

/// Matching determinant W(φ_α, χ)(c) with χ fixed by the condition at b.
cplx characteristic(const SLProblem& problem, const BoundaryCondition& bc, double lambda,
                    const SpectralConfig& cfg = {});

Eigenlist eigenvalues(const SLProblem& problem, const BoundaryCondition& bc, double lambda_lo, double lambda_hi,
                      const SpectralConfig& cfg = {});

MSample m_function(const SLProblem& problem, double alpha0, double beta0, cplx z, const SpectralConfig& cfg = {});

/// m_{α1} from m_{α0}; throws PoleError when the denominator is below 1e-14.
cplx mobius_alpha_shift(cplx m, double alpha0, double alpha1);

}  // namespace slspec
