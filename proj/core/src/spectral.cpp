#include "slspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "slspec/classifier.hpp"
#include "slspec/detail/rk45.hpp"
#include "slspec/parallel.hpp"

namespace slspec {

namespace {

using V2 = detail::Vec<2>;

/// dx/dσ for σ = ln d.
double jacobian(const EndpointFrame& fr, double d) {
    if (fr.e.is_finite()) return fr.side == Side::left ? d : -d;
    return fr.e.infinity_sign() > 0 ? -1.0 / d : 1.0 / d;
}

SolutionState eval_near(const Solution& f, const EndpointFrame& fr, double d) {
    if (fr.e.is_finite()) return f->near(fr.side, fr.e.value(), d);
    return f->at(fr.to_x(d));
}

Coefficients coeffs_at(const SLProblem& pr, const EndpointFrame& fr, double d) {
    if (fr.e.is_finite()) return pr.coeffs_near(fr.side, d);
    return pr.coeffs(fr.to_x(d));
}

/// s1 = -W(u, g), s2 = W(û, g) along the distance coordinate σ = ln d:
/// s1' = (z - λ0) r u g, s2' = -(z - λ0) r û g with g = s2 u + s1 û.
V2 run_regularized(const SLProblem& pr, const ReferenceBasis& b, const EndpointFrame& fr, cplx z, V2 s,
                   double d_from, double d_to, const IntegratorConfig& cfg) {
    if (d_from == d_to) return s;
    const cplx dz = z - b.lambda0;
    auto rhs = [&](double sigma, const V2& y) -> V2 {
        const double d = std::exp(sigma);
        const Coefficients c = coeffs_at(pr, fr, d);
        const SolutionState u = eval_near(b.principal, fr, d);
        const SolutionState uh = eval_near(b.nonprincipal, fr, d);
        const cplx g = y[1] * u.u + y[0] * uh.u;
        const cplx k = dz * c.r * jacobian(fr, d);
        return {k * u.u * g, -k * uh.u * g};
    };
    detail::RkOptions opt{cfg.rel_tol, cfg.abs_tol, cfg.max_steps, cfg.min_step, 0.0};
    try {
        return detail::dormand_prince<2>(rhs, std::log(d_from), s, std::log(d_to), opt,
                                         [](double) { return HUGE_VAL; }, [](double, const V2&) {})
            .y;
    } catch (const detail::RkFailure<2>& f) {
        throw IntegrationFailure(std::string("regularized shooting failed: ") + f.reason,
                                 SolutionState{fr.to_x(std::exp(f.t)), f.y[0], f.y[1]});
    }
}

SolutionState assemble(const V2& s, const SolutionState& u, const SolutionState& uh) {
    return {u.x, s[0] * uh.u + s[1] * u.u, s[0] * uh.u1 + s[1] * u.u1};
}

class ShotSolution final : public SolutionFunction {
public:
    ShotSolution(const SLProblem& pr, Side side, cplx gt, cplx gtp, const ReferenceBasis* basis, cplx z,
                 const IntegratorConfig& cfg)
        : pr_(pr), fr_{side, pr.endpoint(side)}, z_(z), cfg_(cfg) {
        regular_ = pr.info(side).regular && fr_.e.is_finite();
        if (regular_) {
            anchor_ = {fr_.e.value(), gt, gtp};
            return;
        }
        if (!basis || !basis->principal || !basis->nonprincipal)
            throw ArgumentError("shooting from a singular endpoint needs a reference basis");
        if (basis->endpoint != side) throw ArgumentError("reference basis belongs to the other endpoint");
        basis_ = *basis;
        d_anchor_ = default_anchor_distance(pr, side);
        const double d_min = std::min(distance_floor(pr, side), 1e-6 * d_anchor_);
        s_anchor_ = run_regularized(pr_, basis_, fr_, z_, V2{gt, gtp}, d_min, d_anchor_, cfg_);
        anchor_ = assemble(s_anchor_, eval_near(basis_.principal, fr_, d_anchor_),
                           eval_near(basis_.nonprincipal, fr_, d_anchor_));
    }

    SolutionState at(double x) const override {
        if (!regular_) {
            const double d = fr_.to_d(x);
            if (d > 0.0 && d < d_anchor_) {
                const V2 s = run_regularized(pr_, basis_, fr_, z_, s_anchor_, d_anchor_, d, cfg_);
                SolutionState out = assemble(s, basis_.principal->at(x), basis_.nonprincipal->at(x));
                out.x = x;
                return out;
            }
        }
        if (x == anchor_.x) return anchor_;
        return propagate(pr_, z_, anchor_, x, cfg_);
    }

    SolutionState near(Side side, double endpoint, double d) const override {
        if (regular_ || side != fr_.side || !fr_.e.is_finite() || !(d < d_anchor_))
            return SolutionFunction::near(side, endpoint, d);
        const V2 s = run_regularized(pr_, basis_, fr_, z_, s_anchor_, d_anchor_, d, cfg_);
        return assemble(s, basis_.principal->near(side, endpoint, d), basis_.nonprincipal->near(side, endpoint, d));
    }

private:
    SLProblem pr_;
    EndpointFrame fr_;
    cplx z_;
    IntegratorConfig cfg_;
    bool regular_ = false;
    ReferenceBasis basis_;
    double d_anchor_ = 0.0;
    V2 s_anchor_{};
    SolutionState anchor_;
};

int sign_of(cplx v) { return v.real() > 0.0 ? 1 : (v.real() < 0.0 ? -1 : 0); }

/// Everything the matching determinant needs, built once per (problem, condition).
class Matcher {
public:
    Matcher(const SLProblem& pr, double alpha, std::optional<double> beta, const SpectralConfig& cfg)
        : pr_(pr), cfg_(cfg), alpha_(alpha), beta_(beta), c_(reference_point(pr)) {
        cls_.left = endpoint_class(pr, Side::left);
        cls_.right = endpoint_class(pr, Side::right);
        if (cls_.left != EndpointClass::limit_circle)
            throw ArgumentError("spectral: the left endpoint must be limit circle or regular");
        if (cls_.right == EndpointClass::limit_circle && !beta_)
            throw ArgumentError("spectral: a condition at the limit-circle endpoint b is required");
        if (cls_.right == EndpointClass::limit_point && beta_)
            throw ArgumentError("spectral: boundary condition references the limit-point endpoint b");
        if (!regular(Side::left)) ba_ = spectral_basis(pr, Side::left, cfg);
        if (cls_.right == EndpointClass::limit_circle && !regular(Side::right)) bb_ = spectral_basis(pr, Side::right, cfg);
    }

    bool right_lp() const { return cls_.right == EndpointClass::limit_point; }

    double truncation_point(int k) const {
        const ExtReal& b = pr_.b;
        if (!b.is_finite()) return c_ + cfg_.truncation_start * std::ldexp(1.0, k);
        return b.value() - (b.value() - c_) * std::ldexp(1.0, -(k + 1));
    }

    SolutionState left_at_c(cplx z, cplx gt, cplx gtp) const {
        ShotSolution s(pr_, Side::left, gt, gtp, ba_ ? &*ba_ : nullptr, z, cfg_.integrator);
        return s.at(c_);
    }

    /// Solution fixed by the condition at b, up to a positive factor when b is limit point.
    SolutionState right_at_c(cplx z, int k) const {
        if (!right_lp()) {
            ShotSolution s(pr_, Side::right, -std::sin(*beta_), std::cos(*beta_), bb_ ? &*bb_ : nullptr, z,
                           cfg_.integrator);
            return s.at(c_);
        }
        double log_scale = 0.0;
        return propagate_scaled(pr_, z, SolutionState{truncation_point(k), 0.0, 1.0}, c_, log_scale, cfg_.integrator);
    }

    cplx phi_left_wronskian(cplx z, int k) const {
        const SolutionState phi = left_at_c(z, -std::sin(alpha_), std::cos(alpha_));
        return wronskian(phi, right_at_c(z, k));
    }

    const SpectralConfig& cfg() const { return cfg_; }
    double alpha() const { return alpha_; }

private:
    bool regular(Side s) const { return pr_.info(s).regular && pr_.endpoint(s).is_finite(); }

    const SLProblem& pr_;
    SpectralConfig cfg_;
    double alpha_;
    std::optional<double> beta_;
    double c_;
    EndpointClasses cls_;
    std::optional<ReferenceBasis> ba_, bb_;
};

std::pair<double, std::optional<double>> separated_angles(const SLProblem& pr, const BoundaryCondition& bc) {
    if (const auto* s = std::get_if<Separated>(&bc.kind)) {
        if (!s->alpha) throw ArgumentError("spectral: a condition at the endpoint a is required");
        return {*s->alpha, s->beta};
    }
    if (const auto* f = std::get_if<Friedrichs>(&bc.kind)) {
        if (!f->at_a) throw ArgumentError("spectral: Friedrichs condition without the endpoint a");
        const bool at_b = f->at_b && endpoint_class(pr, Side::right) == EndpointClass::limit_circle;
        return {0.0, at_b ? std::optional<double>(0.0) : std::nullopt};
    }
    throw ArgumentError("spectral: eigenvalues need a separated or Friedrichs condition");
}

struct Bisection {
    double root;
    int iterations;
    double residual;
};

template <class F>
Bisection bisect(F&& D, double lo, double hi, cplx dlo, cplx dhi, double tol) {
    const double scale = std::max(std::abs(dlo), std::abs(dhi));
    int it = 0;
    const int slo = sign_of(dlo);
    cplx dmid = 0.0;
    while (hi - lo > tol * std::max(1.0, std::abs(0.5 * (lo + hi))) && it < 200) {
        const double mid = 0.5 * (lo + hi);
        dmid = D(mid);
        ++it;
        const int sm = sign_of(dmid);
        if (sm == 0) {
            lo = hi = mid;
            break;
        }
        (sm == slo ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    return {root, it, scale > 0.0 ? std::abs(D(root)) / scale : 0.0};
}

}  // namespace

ReferenceBasis spectral_basis(const SLProblem& problem, Side endpoint, const SpectralConfig& cfg) {
    BasisConfig bc;
    bc.integrator = cfg.integrator;
    return build_reference_basis(problem, cfg.lambda0.value_or(0.0), endpoint, bc);
}

Solution shoot_from(const SLProblem& problem, Side endpoint, cplx g_tilde, cplx g_tilde_prime,
                    const ReferenceBasis& basis, cplx z, const SpectralConfig& cfg) {
    return std::make_shared<ShotSolution>(problem, endpoint, g_tilde, g_tilde_prime, &basis, z, cfg.integrator);
}

Solution shoot_left(const SLProblem& problem, double alpha, const ReferenceBasis& basis_a, cplx z,
                    const SpectralConfig& cfg) {
    return shoot_from(problem, Side::left, -std::sin(alpha), std::cos(alpha), basis_a, z, cfg);
}

cplx characteristic(const SLProblem& problem, const BoundaryCondition& bc, double lambda, const SpectralConfig& cfg) {
    const auto [alpha, beta] = separated_angles(problem, bc);
    Matcher m(problem, alpha, beta, cfg);
    return m.phi_left_wronskian(lambda, 0);
}

Eigenlist eigenvalues(const SLProblem& problem, const BoundaryCondition& bc, double lambda_lo, double lambda_hi,
                      const SpectralConfig& cfg) {
    if (!(lambda_lo < lambda_hi)) throw ArgumentError("eigenvalues: empty window");
    if (cfg.panels < 1) throw ArgumentError("eigenvalues: panels must be positive");
    const auto [alpha, beta] = separated_angles(problem, bc);
    const Matcher mt(problem, alpha, beta, cfg);
    const int threads = resolve_threads(cfg.threads);
    auto D = [&](double lam, int k) { return mt.phi_left_wronskian(lam, k); };

    Eigenlist out;
    double lo = lambda_lo, hi = lambda_hi;
    auto ambiguous = [&](double e) {
        const double delta = 1e-6 * (hi - lo);
        const cplx d0 = D(e, 0);
        return sign_of(d0) == 0 || sign_of(D(e - delta, 0)) != sign_of(D(e + delta, 0));
    };
    bool amb_lo = ambiguous(lo), amb_hi = ambiguous(hi);
    if (amb_lo || amb_hi) {
        const double w = hi - lo;
        if (amb_lo) lo -= 0.01 * w;
        if (amb_hi) hi += 0.01 * w;
        out.bracket_info.widened = true;
        if ((amb_lo && ambiguous(lo)) || (amb_hi && ambiguous(hi)))
            throw ConvergenceError("eigenvalues: window endpoint is too close to an eigenvalue");
    }
    out.bracket_info.window_lo = lo;
    out.bracket_info.window_hi = hi;
    out.bracket_info.panels = cfg.panels;

    const std::size_t n = static_cast<std::size_t>(cfg.panels) + 1;
    const double h = (hi - lo) / cfg.panels;
    auto grid = [&](std::size_t i) { return i + 1 == n ? hi : lo + h * static_cast<double>(i); };
    auto scan = [&](int k) { return parallel_map<cplx>(n, threads, [&](std::size_t i) { return D(grid(i), k); }); };
    auto same_signs = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (sign_of(a[i]) != sign_of(b[i])) return false;
        return true;
    };
    // Limit-point b: extend the truncation until the sign pattern of the scan is stable.
    int k0 = 0;
    std::vector<cplx> vals = scan(0);
    if (mt.right_lp()) {
        for (;;) {
            if (k0 >= cfg.max_doublings) throw ConvergenceError("eigenvalues: scan does not stabilize under truncation");
            std::vector<cplx> next = scan(k0 + 1);
            const bool stable = same_signs(vals, next);
            vals = std::move(next);
            ++k0;
            if (stable) break;
        }
    }

    std::vector<std::size_t> brackets;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const int s0 = sign_of(vals[i]), s1 = sign_of(vals[i + 1]);
        if (s0 == 0 && i > 0) continue;
        if (s0 != s1 || s0 == 0) brackets.push_back(i);
    }

    struct Found {
        double root;
        double residual;
        RootBracket info;
    };
    const std::vector<Found> found = parallel_map<Found>(brackets.size(), threads, [&](std::size_t j) {
        const std::size_t i = brackets[j];
        double a = grid(i), b = grid(i + 1);
        Found f;
        f.info.lo = a;
        f.info.hi = b;
        if (sign_of(vals[i]) == 0) {
            f.root = a;
            f.residual = 0.0;
            return f;
        }
        Bisection bi = bisect([&](double x) { return D(x, k0); }, a, b, vals[i], vals[i + 1], cfg.root_tol);
        f.info.bisections = bi.iterations;
        if (mt.right_lp()) {
            // Move the Dirichlet point outward until the root stops changing.
            bool settled = false;
            for (int k = k0 + 1; k <= k0 + cfg.max_doublings && !settled; ++k) {
                auto Dk = [&](double x) { return D(x, k); };
                double delta = 1e-6 * std::max(1.0, std::abs(bi.root));
                cplx dl = Dk(bi.root - delta), dh = Dk(bi.root + delta);
                while (sign_of(dl) == sign_of(dh) && delta < 2.0 * h) {
                    delta *= 8.0;
                    dl = Dk(bi.root - delta);
                    dh = Dk(bi.root + delta);
                }
                if (sign_of(dl) == sign_of(dh))
                    throw ConvergenceError("eigenvalues: root lost while extending the truncation");
                const Bisection nb = bisect(Dk, bi.root - delta, bi.root + delta, dl, dh, cfg.root_tol);
                settled = std::abs(nb.root - bi.root) <= 10.0 * cfg.root_tol * std::max(1.0, std::abs(nb.root));
                f.info.bisections += nb.iterations;
                f.info.truncation = mt.truncation_point(k);
                bi = nb;
            }
            if (!settled) throw ConvergenceError("eigenvalues: truncation refinement did not settle");
        }
        f.root = bi.root;
        f.residual = bi.residual;
        return f;
    });
    for (const Found& f : found) {
        if (f.root < lo || f.root > hi) continue;
        if (!out.eigenvalues.empty() && f.root <= out.eigenvalues.back()) continue;
        out.eigenvalues.push_back(f.root);
        out.characteristic_residuals.push_back(f.residual);
        out.bracket_info.roots.push_back(f.info);
    }
    return out;
}

MSample m_function(const SLProblem& problem, double alpha0, double beta0, cplx z, const SpectralConfig& cfg) {
    const bool lc_b = endpoint_class(problem, Side::right) == EndpointClass::limit_circle;
    const Matcher mt(problem, alpha0, lc_b ? std::optional<double>(beta0) : std::nullopt, cfg);
    const SolutionState th = mt.left_at_c(z, std::cos(alpha0), std::sin(alpha0));
    const SolutionState ph = mt.left_at_c(z, -std::sin(alpha0), std::cos(alpha0));
    auto m_for = [&](const SolutionState& chi) {
        const cplx den = wronskian(ph, chi);
        if (den == 0.0) throw PoleError("m_function: z is an eigenvalue");
        return -wronskian(th, chi) / den;
    };
    MSample out;
    out.z = z;
    if (!mt.right_lp()) {
        out.m = m_for(mt.right_at_c(z, 0));
        return out;
    }
    cplx prev = m_for(mt.right_at_c(z, 0));
    for (int k = 1; k <= cfg.max_doublings; ++k) {
        const cplx cur = m_for(mt.right_at_c(z, k));
        const double r = std::abs(cur - prev);
        if (r <= cfg.weyl_tol * std::max(1.0, std::abs(cur))) {
            out.m = cur;
            out.truncation_radius = mt.truncation_point(k);
            out.disk_radius_estimate = r;
            return out;
        }
        prev = cur;
    }
    throw ConvergenceError("m_function: Weyl disk does not contract; is b really limit point?");
}

cplx mobius_alpha_shift(cplx m, double alpha0, double alpha1) {
    const double d = alpha1 - alpha0;
    const cplx den = std::cos(d) + std::sin(d) * m;
    if (std::abs(den) < 1e-14) throw PoleError("mobius_alpha_shift: denominator vanishes");
    return (-std::sin(d) + std::cos(d) * m) / den;
}

}  // namespace slspec
