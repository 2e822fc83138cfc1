#pragma once

#include <string>
#include <vector>

#include "slspec/integrator.hpp"
#include "slspec/model.hpp"

namespace slspec {

/// Principal/nonprincipal pair (u, û) of τu = λ0 u at one endpoint, normalized so W(û, u) = 1.
struct ReferenceBasis {
    Side endpoint = Side::left;
    double lambda0 = 0.0;
    Solution principal;
    Solution nonprincipal;
    /// W(û, u) measured at a probe point after construction.
    cplx normalization_check{};
    /// Which member of the "û + c·u" family was chosen.
    std::string convention;
    bool exact = false;
};

/// û(x) = u(x) ∫ p^{-1} u^{-2} between x and c (∫_x^c at a, ∫_c^x at b).
Solution nonprincipal_from_solution(const SLProblem& problem, double lambda0, Solution u, Side endpoint,
                                    double c);

/// u(x) = û(x) ∫_a^x p^{-1} û^{-2} at a, û(x) ∫_x^b p^{-1} û^{-2} at b.
/// Throws DomainError when the endpoint integral diverges.
Solution principal_from_nonprincipal(const SLProblem& problem, double lambda0, Solution uhat, Side endpoint);

struct BasisConfig {
    IntegratorConfig integrator{};
    /// Distance from the endpoint of the interior anchor; 0 selects a default.
    double anchor_distance = 0.0;
};

ReferenceBasis build_reference_basis(const SLProblem& problem, double lambda0, Side endpoint,
                                     const BasisConfig& cfg = {});

/// Distances d_k = d0 * 2^{-k} toward the endpoint at which basis properties are probed.
std::vector<double> probe_distances(const SLProblem& problem, Side endpoint, int count, double d0 = 0.0);

/// Interior matching point c: midpoint, a + 1, b - 1 or 0.
double reference_point(const SLProblem& problem);

/// Default distance from the endpoint to the interior reference point.
double default_anchor_distance(const SLProblem& problem, Side endpoint);

/// Smallest distance to a finite endpoint that positions can resolve.
double distance_floor(const SLProblem& problem, Side endpoint);

/// Ratios u/û along the probe sequence (ordered toward the endpoint).
std::vector<double> ordering_ratios(const SLProblem& problem, const ReferenceBasis& basis, int count);

}  // namespace slspec
