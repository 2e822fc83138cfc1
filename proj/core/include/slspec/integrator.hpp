#pragma once

#include <functional>

#include "slspec/model.hpp"

namespace slspec {

struct ReferenceBasis;

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 1000000;
    /// 0 selects a step floor relative to |x|.
    double min_step = 0.0;

    void validate() const;
};

class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, SolutionState last_good)
        : Error(what), last_good_(last_good) {}
    const SolutionState& last_good() const { return last_good_; }

private:
    SolutionState last_good_;
};

/// Integrates u' = u1/p, u1' = (q - z r) u from `from` to `to_x`, recording every accepted step.
/// States at a regular endpoint are accepted as start or target.
Trajectory integrate(const SLProblem& problem, cplx z, const SolutionState& from, double to_x,
                     const IntegratorConfig& cfg = {});

/// Same as integrate but keeps only the final state.
SolutionState propagate(const SLProblem& problem, cplx z, const SolutionState& from, double to_x,
                        const IntegratorConfig& cfg = {});

/// Like propagate, but rescales the state whenever it grows beyond 1e100. The returned
/// state is e^{-log_scale} times the true solution.
SolutionState propagate_scaled(const SLProblem& problem, cplx z, const SolutionState& from, double to_x,
                               double& log_scale, const IntegratorConfig& cfg = {});

/// Particular solution of (τ - λ0) g = f with g given by variation of constants relative to
/// the basis (u, û) with W(û, u) = 1, vanishing together with its quasi-derivative at x0.
SolutionState solve_inhomogeneous(const SLProblem& problem, double lambda0, const ReferenceBasis& basis,
                                  const std::function<cplx(double)>& f, double x0, double x,
                                  double rel_tol = 1e-12);

}  // namespace slspec

namespace slspec {

/// Solution handle backed by a stored trajectory; evaluation re-integrates from the
/// nearest stored state.
Solution make_numeric_solution(const SLProblem& problem, cplx z, Trajectory trajectory,
                               const IntegratorConfig& cfg = {});

}  // namespace slspec
