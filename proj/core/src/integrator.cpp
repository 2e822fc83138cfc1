#include "slspec/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "slspec/detail/rk45.hpp"
#include "slspec/principal.hpp"
#include "slspec/quadrature.hpp"

namespace slspec {

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ArgumentError("integrator tolerances must be positive");
    if (max_steps < 1) throw ArgumentError("max_steps must be at least 1");
    if (min_step < 0.0) throw ArgumentError("min_step must be non-negative");
}

namespace {

using V2 = detail::Vec<2>;

bool admissible(const SLProblem& pr, double x) {
    if (pr.contains(x)) return true;
    if (pr.a.is_finite() && x == pr.a.value() && pr.left.regular) return true;
    if (pr.b.is_finite() && x == pr.b.value() && pr.right.regular) return true;
    return false;
}

double step_ceiling(const SLProblem& pr, double x) {
    double c = HUGE_VAL;
    if (pr.a.is_finite() && !pr.left.regular) c = std::min(c, 0.25 * (x - pr.a.value()));
    if (pr.b.is_finite() && !pr.right.regular) c = std::min(c, 0.25 * (pr.b.value() - x));
    return c;
}

template <class Observer>
detail::RkResult<2> run(const SLProblem& pr, cplx z, const SolutionState& from, double to_x,
                        const IntegratorConfig& cfg, double renorm, Observer&& obs) {
    cfg.validate();
    if (!admissible(pr, from.x) || !admissible(pr, to_x))
        throw ArgumentError("integrate: positions must lie inside (a,b)");
    auto rhs = [&](double x, const V2& y) -> V2 {
        const Coefficients c = pr.coeffs(x);
        return {y[1] / c.p, (c.q - z * c.r) * y[0]};
    };
    detail::RkOptions opt{cfg.rel_tol, cfg.abs_tol, cfg.max_steps, cfg.min_step, renorm};
    try {
        return detail::dormand_prince<2>(rhs, from.x, V2{from.u, from.u1}, to_x, opt,
                                         [&](double x) { return step_ceiling(pr, x); }, obs);
    } catch (const detail::RkFailure<2>& f) {
        throw IntegrationFailure(std::string("integration failed: ") + f.reason + " at x = " + std::to_string(f.t),
                                 SolutionState{f.t, f.y[0], f.y[1]});
    }
}

}  // namespace

Trajectory integrate(const SLProblem& problem, cplx z, const SolutionState& from, double to_x,
                     const IntegratorConfig& cfg) {
    if (from.x == to_x) throw ArgumentError("integrate: from.x equals to_x");
    Trajectory tr;
    tr.z = z;
    tr.direction = to_x > from.x ? Direction::forward : Direction::backward;
    tr.states.push_back(from);
    run(problem, z, from, to_x, cfg, 0.0,
        [&](double x, const V2& y) { tr.states.push_back({x, y[0], y[1]}); });
    return tr;
}

SolutionState propagate(const SLProblem& problem, cplx z, const SolutionState& from, double to_x,
                        const IntegratorConfig& cfg) {
    if (from.x == to_x) return from;
    auto res = run(problem, z, from, to_x, cfg, 0.0, [](double, const V2&) {});
    return {to_x, res.y[0], res.y[1]};
}

SolutionState propagate_scaled(const SLProblem& problem, cplx z, const SolutionState& from, double to_x,
                               double& log_scale, const IntegratorConfig& cfg) {
    if (from.x == to_x) return from;
    auto res = run(problem, z, from, to_x, cfg, 1e100, [](double, const V2&) {});
    log_scale += res.log_scale;
    return {to_x, res.y[0], res.y[1]};
}

SolutionState solve_inhomogeneous(const SLProblem& problem, double /*lambda0*/, const ReferenceBasis& basis,
                                  const std::function<cplx(double)>& f, double x0, double x, double rel_tol) {
    const SolutionState u = basis.principal->at(x);
    const SolutionState uh = basis.nonprincipal->at(x);
    auto with_u = [&](double t) { return problem.coeffs(t).r * basis.principal->at(t).u * f(t); };
    auto with_uh = [&](double t) { return problem.coeffs(t).r * basis.nonprincipal->at(t).u * f(t); };
    QuadResult iu = integrate_gk(with_u, x0, x, rel_tol, 1e-300);
    QuadResult iuh = integrate_gk(with_uh, x0, x, rel_tol, 1e-300);
    if (!iu.converged || !iuh.converged) throw ConvergenceError("solve_inhomogeneous: quadrature did not converge");
    // g = û ∫ r u f − u ∫ r û f
    return {x, uh.u * iu.value - u.u * iuh.value, uh.u1 * iu.value - u.u1 * iuh.value};
}

}  // namespace slspec

namespace slspec {

namespace {

class NumericSolution final : public SolutionFunction {
public:
    NumericSolution(SLProblem problem, cplx z, Trajectory tr, IntegratorConfig cfg)
        : problem_(std::move(problem)), z_(z), cfg_(cfg), states_(std::move(tr.states)) {
        if (states_.empty()) throw ArgumentError("numeric solution needs at least one state");
        if (states_.size() > 1 && states_.front().x > states_.back().x)
            std::reverse(states_.begin(), states_.end());
    }

    SolutionState at(double x) const override {
        auto it = std::lower_bound(states_.begin(), states_.end(), x,
                                   [](const SolutionState& s, double v) { return s.x < v; });
        const SolutionState* best;
        if (it == states_.end()) best = &states_.back();
        else if (it == states_.begin()) best = &states_.front();
        else best = (std::abs(it->x - x) < std::abs((it - 1)->x - x)) ? &*it : &*(it - 1);
        if (best->x == x) return *best;
        return propagate(problem_, z_, *best, x, cfg_);
    }

private:
    SLProblem problem_;
    cplx z_;
    IntegratorConfig cfg_;
    std::vector<SolutionState> states_;
};

}  // namespace

Solution make_numeric_solution(const SLProblem& problem, cplx z, Trajectory trajectory,
                               const IntegratorConfig& cfg) {
    return std::make_shared<NumericSolution>(problem, z, std::move(trajectory), cfg);
}

}  // namespace slspec
