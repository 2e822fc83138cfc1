#include "slspec/model.hpp"

#include <cmath>
#include <utility>

namespace slspec {

double ExtReal::value() const {
    if (inf_ != 0) throw ArgumentError("infinite endpoint has no finite value");
    return v_;
}

double ExtReal::as_double() const {
    if (inf_ > 0) return HUGE_VAL;
    if (inf_ < 0) return -HUGE_VAL;
    return v_;
}

Coefficients SLProblem::coeffs(double x) const {
    Coefficients c{p(x), q(x), r(x)};
    if (!(c.p > 0.0)) throw DomainError("p(x) <= 0 at x = " + std::to_string(x));
    if (!(c.r > 0.0)) throw DomainError("r(x) <= 0 at x = " + std::to_string(x));
    return c;
}

Coefficients SLProblem::coeffs_near(Side s, double d) const {
    const auto& inf = info(s);
    if (inf.near) {
        Coefficients c = inf.near(d);
        if (!(c.p > 0.0) || !(c.r > 0.0))
            throw DomainError("non-positive p or r near the " + std::string(to_string(s)) + " endpoint");
        return c;
    }
    return coeffs(EndpointFrame{s, endpoint(s)}.to_x(d));
}

bool SLProblem::contains(double x) const {
    return x > a.as_double() && x < b.as_double();
}

void SLProblem::validate() const {
    if (!p || !q || !r) throw ArgumentError("coefficient function missing");
    if (!(a.as_double() < b.as_double())) throw ArgumentError("interval requires a < b");
    if (a.infinity_sign() > 0 || b.infinity_sign() < 0) throw ArgumentError("misplaced infinite endpoint");
}

SLProblem make_problem(ExtReal a, ExtReal b, std::function<double(double)> p,
                       std::function<double(double)> q, std::function<double(double)> r,
                       std::string name) {
    SLProblem pr;
    pr.a = a;
    pr.b = b;
    pr.p = std::move(p);
    pr.q = std::move(q);
    pr.r = std::move(r);
    pr.name = std::move(name);
    pr.validate();
    return pr;
}

cplx wronskian(const SolutionState& f, const SolutionState& g) {
    if (f.x != g.x) throw ArgumentError("wronskian: states at different x");
    return f.u * g.u1 - f.u1 * g.u;
}

cplx apply_tau(const SLProblem& problem, double x, cplx u, cplx /*u1*/, cplx u1_deriv) {
    if (!problem.contains(x)) throw ArgumentError("apply_tau: x outside (a,b)");
    const Coefficients c = problem.coeffs(x);
    return (-u1_deriv + c.q * u) / c.r;
}

double EndpointFrame::to_x(double d) const {
    if (e.is_finite()) return side == Side::left ? e.value() + d : e.value() - d;
    return e.infinity_sign() > 0 ? 1.0 / d : -1.0 / d;
}

double EndpointFrame::to_d(double x) const {
    if (e.is_finite()) return side == Side::left ? x - e.value() : e.value() - x;
    return e.infinity_sign() > 0 ? 1.0 / x : -1.0 / x;
}

SolutionState SolutionFunction::near(Side side, double endpoint, double d) const {
    return at(side == Side::left ? endpoint + d : endpoint - d);
}

namespace {

class LambdaSolution final : public SolutionFunction {
public:
    LambdaSolution(std::function<SolutionState(double)> at,
                   std::function<SolutionState(Side, double, double)> near)
        : at_(std::move(at)), near_(std::move(near)) {}

    SolutionState at(double x) const override { return at_(x); }
    SolutionState near(Side side, double endpoint, double d) const override {
        if (near_) return near_(side, endpoint, d);
        return SolutionFunction::near(side, endpoint, d);
    }

private:
    std::function<SolutionState(double)> at_;
    std::function<SolutionState(Side, double, double)> near_;
};

class LinearCombination final : public SolutionFunction {
public:
    LinearCombination(cplx c1, Solution f, cplx c2, Solution g)
        : c1_(c1), c2_(c2), f_(std::move(f)), g_(std::move(g)) {}

    SolutionState at(double x) const override { return mix(f_->at(x), g_ ? g_->at(x) : SolutionState{x}); }
    SolutionState near(Side side, double endpoint, double d) const override {
        SolutionState sf = f_->near(side, endpoint, d);
        SolutionState sg = g_ ? g_->near(side, endpoint, d) : SolutionState{sf.x};
        return mix(sf, sg);
    }

private:
    SolutionState mix(const SolutionState& a, const SolutionState& b) const {
        return {a.x, c1_ * a.u + c2_ * b.u, c1_ * a.u1 + c2_ * b.u1};
    }
    cplx c1_, c2_;
    Solution f_, g_;
};

}  // namespace

Solution make_solution(std::function<SolutionState(double)> at) {
    return std::make_shared<LambdaSolution>(std::move(at), nullptr);
}

Solution make_solution(std::function<SolutionState(double)> at,
                       std::function<SolutionState(Side, double, double)> near) {
    return std::make_shared<LambdaSolution>(std::move(at), std::move(near));
}

Solution combine(cplx c1, Solution f, cplx c2, Solution g) {
    return std::make_shared<LinearCombination>(c1, std::move(f), c2, std::move(g));
}

Solution scale(cplx c, Solution f) { return std::make_shared<LinearCombination>(c, std::move(f), 0.0, nullptr); }

}  // namespace slspec
