#pragma once

#include <utility>
#include <vector>

#include "slspec/model.hpp"
#include "slspec/principal.hpp"

namespace slspec {

enum class BvRoute { wronskian, quotient };

const char* to_string(BvRoute r);

/// Generalized boundary values g̃(d) = -W(u_d, g)(d), g̃'(d) = W(û_d, g)(d).
struct BoundaryValuePair {
    Side endpoint = Side::left;
    cplx g_tilde{};
    cplx g_tilde_prime{};
    BvRoute route = BvRoute::wronskian;
    double convergence_estimate = 0.0;
};

struct BvalsConfig {
    /// Probes at distances eps0 * 2^{-k}, k = 0..K.
    int K = 24;
    /// 0 selects min(1, |b - a|) / 8.
    double eps0 = 0.0;
    /// Residual run length that signals divergence.
    int divergence_run = 4;
};

/// Limit of a sequence sampled on the probe grid, with an error estimate.
struct Extrapolation {
    cplx value{};
    double estimate = 0.0;
    bool converged = false;
};

/// Aitken extrapolation assuming geometric error decay; picks the index with the most stable
/// extrapolated difference. `noise[k]` bounds the rounding error of seq[k] (may be empty).
Extrapolation extrapolate_limit(const std::vector<cplx>& seq, const std::vector<double>& noise = {},
                                int divergence_run = 4);

/// Probe distances eps0 * 2^{-k} toward the basis endpoint.
std::vector<double> bvals_probes(const SLProblem& problem, Side endpoint, const BvalsConfig& cfg = {});

/// Throws ConvergenceError when the limits diverge (g not in the maximal domain near the endpoint).
BoundaryValuePair boundary_values(const SLProblem& problem, const Solution& g, const ReferenceBasis& basis,
                                  BvRoute route = BvRoute::wronskian, const BvalsConfig& cfg = {});

/// Both routes; the quotient route uses the Wronskian-route g̃ inside its g̃' limit.
std::pair<BoundaryValuePair, BoundaryValuePair> boundary_values_both(const SLProblem& problem, const Solution& g,
                                                                     const ReferenceBasis& basis,
                                                                     const BvalsConfig& cfg = {});

/// (g(a), g^{[1]}(a)) by direct evaluation at a regular endpoint. Throws DomainError if the
/// generalized boundary values of the regular reference basis disagree beyond `tol`.
std::pair<cplx, cplx> regular_recovery_check(const SLProblem& problem, Side endpoint, const Solution& g,
                                             double tol = 1e-8, const BvalsConfig& cfg = {});

/// g̃ h̃' - g̃' h̃ at the basis endpoint.
cplx lagrange_bracket(const SLProblem& problem, const Solution& g, const Solution& h, const ReferenceBasis& basis,
                      const BvalsConfig& cfg = {});

/// Extrapolated W(g, h) at the basis endpoint.
Extrapolation wronskian_limit(const SLProblem& problem, const Solution& g, const Solution& h, Side endpoint,
                              const BvalsConfig& cfg = {});

}  // namespace slspec
