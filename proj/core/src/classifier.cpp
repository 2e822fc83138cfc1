#include "slspec/classifier.hpp"

#include <cmath>

#include "slspec/detail/rk45.hpp"
#include "slspec/principal.hpp"

namespace slspec {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::limit_circle: return "LimitCircle";
        case Verdict::limit_point: return "LimitPoint";
        default: return "Inconclusive";
    }
}

namespace {

using V3 = detail::Vec<3>;

double log_add(double a, double b) {
    if (a == -HUGE_VAL) return b;
    if (b == -HUGE_VAL) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

/// Walks a real or complex solution toward the endpoint window by window.
class WindowWalker {
public:
    WindowWalker(const SLProblem& pr, Side side, cplx z, const ClassifierConfig& cfg, SolutionState start)
        : pr_(pr), frame_{side, pr.endpoint(side)}, z_(z), cfg_(cfg), y_{start.u, start.u1, 0.0}, x_(start.x) {}

    /// Advances to distance d; returns ln ∫ r|u|² over the window and counts sign changes of Re u.
    double advance(double d, int& sign_changes) {
        const double x1 = frame_.to_x(d);
        auto rhs = [this](double x, const V3& y) -> V3 {
            const Coefficients c = pr_.coeffs(x);
            return {y[1] / c.p, (c.q - z_ * c.r) * y[0], c.r * std::norm(y[0])};
        };
        const double ceiling_scale = frame_.e.is_finite() ? 0.25 : HUGE_VAL;
        auto ceiling = [&](double x) { return ceiling_scale * std::abs(x - (frame_.e.is_finite() ? frame_.e.value() : 0.0)); };
        detail::RkOptions opt{cfg_.integrator.rel_tol, cfg_.integrator.abs_tol, cfg_.integrator.max_steps,
                              cfg_.integrator.min_step, 1e100, 1};
        double prev = y_[0].real();
        sign_changes = 0;
        V3 y0{y_[0], y_[1], 0.0};
        detail::RkResult<3> res;
        try {
            res = detail::dormand_prince<3>(rhs, x_, y0, x1, opt, ceiling, [&](double, const V3& y) {
                const double v = y[0].real();
                if ((v > 0.0 && prev < 0.0) || (v < 0.0 && prev > 0.0)) ++sign_changes;
                if (v != 0.0) prev = v;
            });
        } catch (const detail::RkFailure<3>& f) {
            throw IntegrationFailure(std::string("classifier: ") + f.reason, SolutionState{f.t, f.y[0], f.y[1]});
        }
        const double window = std::abs(res.y[2]) > 0.0 ? 2.0 * (log_scale_ + res.log_scale) + std::log(std::abs(res.y[2]))
                                                       : -HUGE_VAL;
        log_scale_ += res.log_scale;
        const double n = std::max(std::abs(res.y[0]), std::abs(res.y[1]));
        y_ = {res.y[0] / n, res.y[1] / n, 0.0};
        log_scale_ += std::log(n);
        x_ = x1;
        return window;
    }

private:
    const SLProblem& pr_;
    EndpointFrame frame_;
    cplx z_;
    const ClassifierConfig& cfg_;
    V3 y_;
    double x_;
    double log_scale_ = 0.0;
};

std::vector<double> window_distances(const SLProblem& pr, Side side, const ClassifierConfig& cfg) {
    const ExtReal& e = pr.endpoint(side);
    const double d0 = cfg.anchor_distance > 0.0 ? cfg.anchor_distance : default_anchor_distance(pr, side);
    const int n = e.is_finite() ? cfg.max_windows_finite : cfg.max_windows_infinite;
    // x-resolution limit for windows integrated in x
    const double floor = e.is_finite() ? std::max(1e-300, 1e-11 * std::abs(e.value())) : 0.0;
    std::vector<double> out{d0};
    for (int k = 1; k <= n; ++k) {
        const double d = std::ldexp(d0, -k);
        if (d < floor) break;
        out.push_back(d);
    }
    return out;
}

bool run_at_least(const std::vector<double>& ratios, double threshold, int len, bool above) {
    int run = 0;
    for (double r : ratios) {
        const bool hit = above ? r >= threshold : r < threshold;
        run = hit ? run + 1 : 0;
        if (run >= len && above) return true;
    }
    return !above && run >= len;
}

}  // namespace

EndpointReport classify_endpoint(const SLProblem& problem, Side endpoint, cplx z, const ClassifierConfig& cfg) {
    problem.validate();
    EndpointReport rep;
    rep.endpoint = endpoint;
    rep.z_used = z;
    const EndpointInfo& info = problem.info(endpoint);

    if (z.imag() == 0.0) {
        if (!info.known_class)
            throw ArgumentError("classify_endpoint: real z needs catalog-supplied endpoint asymptotics");
        rep.verdict = *info.known_class == EndpointClass::limit_circle ? Verdict::limit_circle : Verdict::limit_point;
        rep.note = "real z: verdict taken from catalog asymptotics";
        rep.oscillatory = !is_nonoscillatory(problem, endpoint, z.real(), cfg);
        return rep;
    }
    if (info.regular && problem.endpoint(endpoint).is_finite()) {
        rep.verdict = Verdict::limit_circle;
        rep.note = "regular endpoint";
        return rep;
    }

    rep.windows = window_distances(problem, endpoint, cfg);
    EndpointFrame fr{endpoint, problem.endpoint(endpoint)};
    const double xc = fr.to_x(rep.windows.front());
    bool any_divergent = false, all_convergent = true;
    try {
        for (int j = 0; j < 2; ++j) {
            SolutionState s0 = j == 0 ? SolutionState{xc, 1.0, 0.0} : SolutionState{xc, 0.0, 1.0};
            WindowWalker walk(problem, endpoint, z, cfg, s0);
            TailEstimate t;
            t.log_integral = -HUGE_VAL;
            double prev = -HUGE_VAL;
            for (std::size_t k = 1; k < rep.windows.size(); ++k) {
                int sc = 0;
                const double w = walk.advance(rep.windows[k], sc);
                if (prev != -HUGE_VAL && w != -HUGE_VAL) t.ratios.push_back(std::exp(std::min(w - prev, 700.0)));
                prev = w;
                t.log_integral = log_add(t.log_integral, w);
                if (run_at_least(t.ratios, cfg.ratio_threshold, cfg.run_length, true)) break;
            }
            t.divergent = run_at_least(t.ratios, cfg.ratio_threshold, cfg.run_length, true);
            t.convergent = !t.divergent && run_at_least(t.ratios, cfg.ratio_threshold, cfg.run_length, false);
            any_divergent = any_divergent || t.divergent;
            all_convergent = all_convergent && t.convergent;
            rep.l2_tail_estimates.push_back(std::move(t));
            if (any_divergent) break;
        }
    } catch (const IntegrationFailure& e) {
        rep.verdict = Verdict::inconclusive;
        rep.note = std::string("integration failure: ") + e.what();
        return rep;
    }
    if (any_divergent) rep.verdict = Verdict::limit_point;
    else if (all_convergent && rep.l2_tail_estimates.size() == 2) rep.verdict = Verdict::limit_circle;
    else rep.verdict = Verdict::inconclusive;
    rep.note = "window ratio test, threshold " + std::to_string(cfg.ratio_threshold) + " over " +
               std::to_string(cfg.run_length) + " windows";
    try {
        rep.oscillatory = !is_nonoscillatory(problem, endpoint, z.real(), cfg);
    } catch (const Error&) {
        rep.oscillatory = true;
    }
    return rep;
}

int deficiency_indices(const std::pair<EndpointReport, EndpointReport>& reports) {
    const Verdict a = reports.first.verdict, b = reports.second.verdict;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive)
        throw ArgumentError("deficiency_indices: inconclusive endpoint verdict");
    return (a == Verdict::limit_circle ? 1 : 0) + (b == Verdict::limit_circle ? 1 : 0);
}

bool is_nonoscillatory(const SLProblem& problem, Side endpoint, double lambda, const ClassifierConfig& cfg) {
    problem.validate();
    ClassifierConfig c = cfg;
    if (!problem.endpoint(endpoint).is_finite()) c.max_windows_infinite = std::min(c.max_windows_infinite, 12);
    const std::vector<double> w = window_distances(problem, endpoint, c);
    EndpointFrame fr{endpoint, problem.endpoint(endpoint)};
    WindowWalker walk(problem, endpoint, lambda, c, SolutionState{fr.to_x(w.front()), 1.0, 0.0});
    std::vector<int> changes;
    for (std::size_t k = 1; k < w.size(); ++k) {
        int sc = 0;
        walk.advance(w[k], sc);
        changes.push_back(sc);
    }
    const std::size_t tail = std::max<std::size_t>(changes.size() / 2, std::min<std::size_t>(changes.size(), 6));
    for (std::size_t k = changes.size() - tail; k < changes.size(); ++k)
        if (changes[k] > 0) return false;
    return true;
}

EndpointClass endpoint_class(const SLProblem& problem, Side endpoint, const ClassifierConfig& cfg) {
    const EndpointInfo& info = problem.info(endpoint);
    if (info.regular && problem.endpoint(endpoint).is_finite()) return EndpointClass::limit_circle;
    if (info.known_class) return *info.known_class;
    const EndpointReport rep = classify_endpoint(problem, endpoint, cplx(0.0, 1.0), cfg);
    if (rep.verdict == Verdict::inconclusive)
        throw ConvergenceError(std::string("endpoint classification inconclusive at ") + to_string(endpoint));
    return rep.verdict == Verdict::limit_circle ? EndpointClass::limit_circle : EndpointClass::limit_point;
}

}  // namespace slspec
