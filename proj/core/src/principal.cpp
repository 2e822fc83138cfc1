#include "slspec/principal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slspec/detail/rk45.hpp"
#include "slspec/quadrature.hpp"

namespace slspec {

double reference_point(const SLProblem& pr) {
    if (pr.a.is_finite() && pr.b.is_finite()) return 0.5 * (pr.a.value() + pr.b.value());
    if (pr.a.is_finite()) return pr.a.value() + 1.0;
    if (pr.b.is_finite()) return pr.b.value() - 1.0;
    return 0.0;
}

namespace {

/// f(d) = 1 / (p b^2) at distance d, and the integration measure |dx/dd|.
struct Integrand {
    const SLProblem* pr;
    Solution base;
    EndpointFrame frame;

    cplx at_distance(double d) const {
        if (frame.e.is_finite()) {
            const double p = pr->coeffs_near(frame.side, d).p;
            const cplx b = base->near(frame.side, frame.e.value(), d).u;
            return 1.0 / (p * b * b);
        }
        const double x = frame.to_x(d);
        const double p = pr->coeffs(x).p;
        const cplx b = base->at(x).u;
        return 1.0 / (p * b * b) / (d * d);
    }

    /// ∫ over the x-segment between distances d_lo < d_hi.
    QuadResult segment(double d_lo, double d_hi) const {
        return integrate_gk([this](double d) { return at_distance(d); }, d_lo, d_hi, 1e-13, 1e-300);
    }
};

/// Solution of τy = zy near a finite endpoint, integrated in σ = ln d with coefficients taken at
/// distance d, so that states close to the endpoint stay resolvable.
class LogDistanceSolution final : public SolutionFunction {
public:
    using V2 = detail::Vec<2>;

    LogDistanceSolution(const SLProblem& pr, cplx z, Side side, double dc, const V2& yc, double d_min,
                        const IntegratorConfig& cfg)
        : pr_(pr), z_(z), frame_{side, pr.endpoint(side)}, cfg_(cfg) {
        sigma_.push_back(std::log(dc));
        states_.push_back(yc);
        run(sigma_.front(), yc, std::log(d_min), [this](double s, const V2& y) {
            sigma_.push_back(s);
            states_.push_back(y);
        });
    }

    SolutionState at(double x) const override { return near(frame_.side, frame_.e.value(), frame_.to_d(x)); }

    SolutionState near(Side side, double endpoint, double d) const override {
        if (side != frame_.side) return SolutionFunction::near(side, endpoint, d);
        const double s = std::log(d);
        // sigma_ decreases; take the closest stored node
        std::size_t best = 0;
        for (std::size_t k = 1; k < sigma_.size(); ++k)
            if (std::abs(sigma_[k] - s) < std::abs(sigma_[best] - s)) best = k;
        const V2 y = sigma_[best] == s ? states_[best] : run(sigma_[best], states_[best], s, [](double, const V2&) {});
        return {frame_.to_x(d), y[0], y[1]};
    }

    /// Number of sign changes of Re y along the stored nodes.
    int sign_changes() const {
        int n = 0;
        for (std::size_t i = 1; i < states_.size(); ++i) {
            const double a = states_[i - 1][0].real(), b = states_[i][0].real();
            if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) ++n;
        }
        return n;
    }

private:
    template <class Observer>
    V2 run(double s0, const V2& y0, double s1, Observer&& obs) const {
        const double dir = frame_.side == Side::left ? 1.0 : -1.0;
        auto rhs = [&](double s, const V2& y) -> V2 {
            const double d = std::exp(s);
            const Coefficients c = pr_.coeffs_near(frame_.side, d);
            const double dx = dir * d;
            return {dx * y[1] / c.p, dx * (c.q - z_ * c.r) * y[0]};
        };
        detail::RkOptions opt{cfg_.rel_tol, cfg_.abs_tol, cfg_.max_steps, 0.0, 0.0};
        try {
            return detail::dormand_prince<2>(rhs, s0, y0, s1, opt, [](double) { return 0.5; }, obs).y;
        } catch (const detail::RkFailure<2>& f) {
            throw IntegrationFailure(std::string("integration failed: ") + f.reason,
                                     SolutionState{frame_.to_x(std::exp(f.t)), f.y[0], f.y[1]});
        }
    }

    SLProblem pr_;
    cplx z_;
    EndpointFrame frame_;
    IntegratorConfig cfg_;
    std::vector<double> sigma_;
    std::vector<V2> states_;
};

enum class Mode { nonprincipal, principal };

/// base(x) times an integral of p^{-1} base^{-2}, with panel sums cached on a geometric grid.
class QuadratureSolution final : public SolutionFunction {
public:
    QuadratureSolution(const SLProblem& pr, Solution base, Side side, double dc, Mode mode, double floor)
        : pr_(pr), f_{&pr_, std::move(base), EndpointFrame{side, pr.endpoint(side)}}, dc_(dc), mode_(mode) {
        nodes_.push_back(dc_);
        cum_.push_back(0.0);
        std::vector<cplx> panels;
        double d = dc_;
        while (d * 0.5 >= floor && nodes_.size() < 400) {
            QuadResult q = f_.segment(0.5 * d, d);
            if (!std::isfinite(std::abs(q.value))) break;
            panels.push_back(q.value);
            cum_.push_back(cum_.back() + q.value);
            d *= 0.5;
            nodes_.push_back(d);
        }
        if (mode_ == Mode::principal) {
            rem_.assign(nodes_.size(), tail(panels));
            for (std::size_t k = panels.size(); k-- > 0;) rem_[k] = rem_[k + 1] + panels[k];
        }
    }

    SolutionState at(double x) const override {
        const double d = f_.frame.to_d(x);
        return combine_with(f_.base->at(x), d, x);
    }

    SolutionState near(Side side, double endpoint, double d) const override {
        if (side != f_.frame.side || !f_.frame.e.is_finite()) return SolutionFunction::near(side, endpoint, d);
        return combine_with(f_.base->near(side, endpoint, d), d, f_.frame.to_x(d));
    }

private:
    /// Index of the smallest node >= d (nodes_ decrease), d < dc.
    std::size_t node_above(double d) const {
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), d, std::greater<double>());
        std::size_t k = (it == nodes_.end()) ? nodes_.size() - 1 : static_cast<std::size_t>(it - nodes_.begin());
        if (nodes_[k] < d) --k;
        return k;
    }

    /// Integral over the segment between distance d and dc (negative when d > dc).
    cplx from_anchor(double d) const {
        if (d >= dc_) return -f_.segment(dc_, d).value;
        const std::size_t k = node_above(d);
        return cum_[k] + (nodes_[k] > d ? f_.segment(d, nodes_[k]).value : cplx(0.0));
    }

    /// Integral over the segment between the endpoint and distance d.
    cplx from_endpoint(double d) const {
        if (d >= dc_) return rem_.front() + f_.segment(dc_, d).value;
        const std::size_t k = node_above(d);
        if (nodes_[k] == d) return rem_[k];
        if (k + 1 < nodes_.size()) return rem_[k + 1] + f_.segment(nodes_[k + 1], d).value;
        return rem_[k] - f_.segment(d, nodes_[k]).value;
    }

    SolutionState combine_with(const SolutionState& b, double d, double x) const {
        const double sgn = f_.frame.side == Side::left ? 1.0 : -1.0;
        if (mode_ == Mode::nonprincipal) {
            const cplx a = from_anchor(d);
            // left: û = b ∫_x^c, right: û = b ∫_c^x; both equal b·a with a >= 0 inside.
            return {x, b.u * a, b.u1 * a - sgn / b.u};
        }
        const cplx j = from_endpoint(d);
        return {x, b.u * j, b.u1 * j + sgn / b.u};
    }

    static cplx tail(const std::vector<cplx>& p) {
        const std::size_t n = p.size();
        if (n < 12) throw DomainError("principal_from_nonprincipal: too few resolvable panels near the endpoint");
        int growing = 0;
        for (std::size_t j = n - 6; j < n; ++j)
            if (std::abs(p[j]) >= 0.99 * std::abs(p[j - 1])) ++growing;
        if (growing == 6)
            throw DomainError("principal_from_nonprincipal: endpoint integral diverges; input is not nonprincipal");
        const double rho = std::abs(p[n - 1] / p[n - 2]);
        const double rho_prev = std::abs(p[n - 2] / p[n - 3]);
        if (rho < 0.9 && std::abs(rho - rho_prev) < 0.05) {
            const cplx r = p[n - 1] / p[n - 2];
            return p[n - 1] * r / (1.0 - r);
        }
        // Slowly convergent (logarithmic) tail: fit S_k = S - C/(k + k0) to partial sums at n/4, n/2, n.
        std::vector<cplx> s(n + 1, 0.0);
        for (std::size_t j = 0; j < n; ++j) s[j + 1] = s[j] + p[j];
        const double i = static_cast<double>(n / 4), j = static_cast<double>(n / 2), l = static_cast<double>(n);
        const cplx d1 = s[n / 2] - s[n / 4];
        const cplx d2 = s[n] - s[n / 2];
        const cplx ratio = d1 / d2;
        const cplx k0 = ((j - i) * l - ratio * (l - j) * i) / (ratio * (l - j) - (j - i));
        const cplx c = d2 * (j + k0) * (l + k0) / (l - j);
        return c / (l + k0);
    }

    SLProblem pr_;
    Integrand f_;
    double dc_;
    Mode mode_;
    std::vector<double> nodes_;
    std::vector<cplx> cum_;
    std::vector<cplx> rem_;
};

}  // namespace

double distance_floor(const SLProblem& pr, Side side) {
    const ExtReal& e = pr.endpoint(side);
    if (!e.is_finite()) return 1e-12;
    if (e.value() == 0.0 || pr.info(side).near) return 1e-30;
    return 16.0 * std::numeric_limits<double>::epsilon() * std::abs(e.value());
}

double default_anchor_distance(const SLProblem& pr, Side side) {
    const double c = reference_point(pr);
    const ExtReal& e = pr.endpoint(side);
    if (e.is_finite()) return 0.5 * std::abs(c - e.value());
    const double x = side == Side::left ? c - 2.0 * std::max(1.0, std::abs(c)) : c + 2.0 * std::max(1.0, std::abs(c));
    return 1.0 / std::abs(x);
}

std::vector<double> probe_distances(const SLProblem& pr, Side side, int count, double d0) {
    if (d0 <= 0.0) {
        if (pr.a.is_finite() && pr.b.is_finite()) d0 = std::min(1.0, pr.b.value() - pr.a.value()) / 8.0;
        else if (pr.endpoint(side).is_finite()) d0 = 1.0 / 8.0;
        else d0 = default_anchor_distance(pr, side) / 8.0;
    }
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(std::ldexp(d0, -k));
    return out;
}

Solution nonprincipal_from_solution(const SLProblem& problem, double /*lambda0*/, Solution u, Side endpoint,
                                    double c) {
    if (!problem.contains(c)) throw ArgumentError("nonprincipal_from_solution: c must be interior");
    EndpointFrame fr{endpoint, problem.endpoint(endpoint)};
    const double dc = fr.to_d(c);
    if (!(dc > 0.0)) throw ArgumentError("nonprincipal_from_solution: c on the wrong side");
    // Zero detection along the grid toward the endpoint.
    double prev = 0.0;
    const double floor = distance_floor(problem, endpoint);
    for (double d = dc; d >= floor; d *= 0.5) {
        const double v = fr.e.is_finite() ? u->near(endpoint, fr.e.value(), d).u.real() : u->at(fr.to_x(d)).u.real();
        if (v == 0.0 || (prev != 0.0 && (v > 0.0) != (prev > 0.0)))
            throw DomainError("nonprincipal_from_solution: u has a zero between c and the endpoint");
        prev = v;
        if (d < dc * 1e-24) break;
    }
    const double qfloor = std::max(floor, dc * 1e-40);
    return std::make_shared<QuadratureSolution>(problem, std::move(u), endpoint, dc, Mode::nonprincipal, qfloor);
}

Solution principal_from_nonprincipal(const SLProblem& problem, double /*lambda0*/, Solution uhat, Side endpoint) {
    const double dc = default_anchor_distance(problem, endpoint);
    const double qfloor = std::max(distance_floor(problem, endpoint), dc * 1e-40);
    return std::make_shared<QuadratureSolution>(problem, std::move(uhat), endpoint, dc, Mode::principal, qfloor);
}

namespace {

int count_sign_changes(const Trajectory& tr) {
    int n = 0;
    for (std::size_t i = 1; i < tr.states.size(); ++i) {
        const double a = tr.states[i - 1].u.real(), b = tr.states[i].u.real();
        if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) ++n;
    }
    return n;
}

cplx probe_wronskian(const SLProblem& pr, const ReferenceBasis& b) {
    EndpointFrame fr{b.endpoint, pr.endpoint(b.endpoint)};
    const double x = fr.to_x(0.5 * default_anchor_distance(pr, b.endpoint));
    return wronskian(b.nonprincipal->at(x), b.principal->at(x));
}

}  // namespace

ReferenceBasis build_reference_basis(const SLProblem& problem, double lambda0, Side endpoint,
                                     const BasisConfig& cfg) {
    problem.validate();
    const EndpointInfo& info = problem.info(endpoint);
    ReferenceBasis basis;
    basis.endpoint = endpoint;
    basis.lambda0 = lambda0;

    if (info.exact_pair) {
        if (auto pair = info.exact_pair(lambda0)) {
            basis.principal = pair->principal;
            basis.nonprincipal = pair->nonprincipal;
            basis.convention = pair->convention;
            basis.exact = true;
            basis.normalization_check = probe_wronskian(problem, basis);
            return basis;
        }
    }

    const ExtReal& e = problem.endpoint(endpoint);
    const double c = reference_point(problem);
    if (info.regular && e.is_finite()) {
        const double x0 = e.value();
        Trajectory th = integrate(problem, lambda0, {x0, 1.0, 0.0}, c, cfg.integrator);
        Trajectory ph = integrate(problem, lambda0, {x0, 0.0, 1.0}, c, cfg.integrator);
        basis.nonprincipal = make_numeric_solution(problem, lambda0, std::move(th), cfg.integrator);
        basis.principal = make_numeric_solution(problem, lambda0, std::move(ph), cfg.integrator);
        basis.convention = "regular endpoint: û has data (1, 0), u has data (0, 1) at the endpoint";
        basis.normalization_check = probe_wronskian(problem, basis);
        return basis;
    }

    EndpointFrame fr{endpoint, e};
    const double dc = cfg.anchor_distance > 0.0 ? cfg.anchor_distance : default_anchor_distance(problem, endpoint);
    const double xc = fr.to_x(dc);
    const double qfloor = std::max(distance_floor(problem, endpoint), dc * 1e-14);
    // A nonvanishing solution y is generically nonprincipal; then û = y and u = y ∫ p^{-1} y^{-2}
    // from the endpoint. A principal y makes that integral diverge, and the other data is tried.
    std::string failure = "build_reference_basis: no nonvanishing solution near the endpoint";
    for (int attempt = 0; attempt < 2 && !basis.principal; ++attempt) {
        const SolutionState s0 = attempt == 0 ? SolutionState{xc, 1.0, 0.0} : SolutionState{xc, 0.0, 1.0};
        int zeros = 0;
        Solution y;
        if (e.is_finite()) {
            auto sol = std::make_shared<LogDistanceSolution>(problem, lambda0, endpoint, dc,
                                                             LogDistanceSolution::V2{s0.u, s0.u1}, qfloor,
                                                             cfg.integrator);
            zeros = sol->sign_changes();
            y = sol;
        } else {
            Trajectory tr = integrate(problem, lambda0, s0, fr.to_x(qfloor), cfg.integrator);
            zeros = count_sign_changes(tr);
            y = make_numeric_solution(problem, lambda0, std::move(tr), cfg.integrator);
        }
        if (zeros > 1) throw DomainError("build_reference_basis: oscillation detected; lambda0 is not below the spectrum");
        if (zeros == 1) continue;
        try {
            Solution u = std::make_shared<QuadratureSolution>(problem, y, endpoint, dc, Mode::principal, qfloor);
            basis.nonprincipal = y;
            basis.principal = endpoint == Side::left ? u : scale(-1.0, u);
        } catch (const DomainError& err) {
            failure = err.what();
        }
    }
    if (!basis.principal) throw DomainError(failure);
    basis.convention = "numerical: û = y with data (1,0) or (0,1) at the anchor, u = y ∫ p^{-1} y^{-2} from the endpoint";
    basis.normalization_check = probe_wronskian(problem, basis);
    return basis;
}

std::vector<double> ordering_ratios(const SLProblem& problem, const ReferenceBasis& basis, int count) {
    EndpointFrame fr{basis.endpoint, problem.endpoint(basis.endpoint)};
    std::vector<double> out;
    for (double d : probe_distances(problem, basis.endpoint, count)) {
        if (d < distance_floor(problem, basis.endpoint)) break;
        SolutionState u, uh;
        if (fr.e.is_finite()) {
            u = basis.principal->near(basis.endpoint, fr.e.value(), d);
            uh = basis.nonprincipal->near(basis.endpoint, fr.e.value(), d);
        } else {
            u = basis.principal->at(fr.to_x(d));
            uh = basis.nonprincipal->at(fr.to_x(d));
        }
        out.push_back(std::abs(u.u / uh.u));
    }
    return out;
}

}  // namespace slspec
