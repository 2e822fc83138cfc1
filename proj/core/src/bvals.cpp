#include "slspec/bvals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slspec {

const char* to_string(BvRoute r) { return r == BvRoute::wronskian ? "wronskian" : "quotient"; }

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

SolutionState eval(const Solution& f, const EndpointFrame& fr, double d) {
    if (fr.e.is_finite()) return f->near(fr.side, fr.e.value(), d);
    return f->at(fr.to_x(d));
}

struct Samples {
    std::vector<SolutionState> g, u, uh;
};

Samples sample(const SLProblem& pr, const Solution& g, const ReferenceBasis& b, const BvalsConfig& cfg) {
    EndpointFrame fr{b.endpoint, pr.endpoint(b.endpoint)};
    Samples s;
    for (double d : bvals_probes(pr, b.endpoint, cfg)) {
        s.g.push_back(eval(g, fr, d));
        s.u.push_back(eval(b.principal, fr, d));
        s.uh.push_back(eval(b.nonprincipal, fr, d));
    }
    return s;
}

/// Rounding bound for W(f, g) = f.u g.u1 - f.u1 g.u.
double wr_noise(const SolutionState& f, const SolutionState& g) {
    return 4.0 * eps * (std::abs(f.u * g.u1) + std::abs(f.u1 * g.u));
}

Extrapolation require(const Extrapolation& e, const char* what) {
    if (!e.converged) throw ConvergenceError(std::string("boundary_values: divergent limit for ") + what);
    return e;
}

}  // namespace

Extrapolation extrapolate_limit(const std::vector<cplx>& seq, const std::vector<double>& noise, int divergence_run) {
    const std::size_t n = seq.size();
    Extrapolation out;
    if (n == 0) return out;
    auto noise_at = [&](std::size_t k) { return k < noise.size() ? noise[k] : eps * std::abs(seq[k]); };
    // Aitken values where defined; fall back to the raw term.
    std::vector<cplx> acc(n);
    std::vector<double> acc_noise(n);
    for (std::size_t k = 0; k < n; ++k) {
        acc[k] = seq[k];
        acc_noise[k] = noise_at(k);
        if (k < 2) continue;
        const cplx d1 = seq[k] - seq[k - 1], d0 = seq[k - 1] - seq[k - 2];
        const cplx dd = d1 - d0;
        const double nz = noise_at(k) + noise_at(k - 1) + noise_at(k - 2);
        if (std::abs(dd) > 8.0 * nz && std::abs(d1) > 4.0 * nz) {
            const cplx rho = d1 / d0;
            if (std::abs(rho) < 0.95) {
                acc[k] = seq[k] - d1 * d1 / dd;
                acc_noise[k] = nz / std::max(1e-3, std::abs(1.0 - rho));
            }
        }
    }
    std::vector<double> res(n, HUGE_VAL);
    for (std::size_t k = 1; k < n; ++k) res[k] = std::abs(acc[k] - acc[k - 1]);
    double best = HUGE_VAL;
    std::size_t kb = n - 1;
    for (std::size_t k = 2; k < n; ++k) {
        const double r = std::max(res[k], std::max(acc_noise[k], acc_noise[k - 1]));
        if (r <= best) {
            best = r;
            kb = k;
        }
    }
    out.value = acc[kb];
    out.estimate = n >= 3 ? best : std::abs(seq.back());
    const double scale = std::max(1.0, std::abs(out.value));
    if (out.estimate <= 1e-8 * scale) {
        out.converged = true;
        return out;
    }
    // Residuals that stop decreasing above the rounding level at the end of the sequence indicate divergence.
    int run = 0;
    for (std::size_t k = 2; k < n; ++k) {
        const bool grows = res[k] >= 0.99 * res[k - 1] && res[k] > 8.0 * (acc_noise[k] + acc_noise[k - 1]);
        run = grows ? run + 1 : 0;
    }
    out.converged = run < divergence_run;
    return out;
}

std::vector<double> bvals_probes(const SLProblem& pr, Side endpoint, const BvalsConfig& cfg) {
    double e0 = cfg.eps0;
    if (!(e0 > 0.0)) {
        const double len = (pr.a.is_finite() && pr.b.is_finite()) ? pr.b.value() - pr.a.value() : HUGE_VAL;
        e0 = std::min(1.0, len) / 8.0;
    }
    std::vector<double> out;
    const double floor = distance_floor(pr, endpoint);
    for (int k = 0; k <= cfg.K; ++k) {
        const double d = std::ldexp(e0, -k);
        if (d < floor) break;
        out.push_back(d);
    }
    return out;
}

BoundaryValuePair boundary_values(const SLProblem& problem, const Solution& g, const ReferenceBasis& basis,
                                  BvRoute route, const BvalsConfig& cfg) {
    return route == BvRoute::wronskian ? boundary_values_both(problem, g, basis, cfg).first
                                       : boundary_values_both(problem, g, basis, cfg).second;
}

std::pair<BoundaryValuePair, BoundaryValuePair> boundary_values_both(const SLProblem& problem, const Solution& g,
                                                                     const ReferenceBasis& basis,
                                                                     const BvalsConfig& cfg) {
    const Samples s = sample(problem, g, basis, cfg);
    const std::size_t n = s.g.size();
    std::vector<cplx> w1(n), w2(n);
    std::vector<double> nw1(n), nw2(n);
    for (std::size_t k = 0; k < n; ++k) {
        w1[k] = -wronskian(s.u[k], s.g[k]);
        w2[k] = wronskian(s.uh[k], s.g[k]);
        nw1[k] = wr_noise(s.u[k], s.g[k]);
        nw2[k] = wr_noise(s.uh[k], s.g[k]);
    }
    const Extrapolation gt = require(extrapolate_limit(w1, nw1, cfg.divergence_run), "g~ (Wronskian route)");
    const Extrapolation gtp = require(extrapolate_limit(w2, nw2, cfg.divergence_run), "g~' (Wronskian route)");
    BoundaryValuePair wr{basis.endpoint, gt.value, gtp.value, BvRoute::wronskian, std::max(gt.estimate, gtp.estimate)};

    // Quotient route: g/û with the u/û gauge term eliminated between neighbouring probes.
    std::vector<cplx> a(n), rq(n);
    std::vector<double> na(n), nr(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx q = s.g[k].u / s.uh[k].u;
        const cplx rho = s.u[k].u / s.uh[k].u;
        const double nq = 4.0 * eps * std::abs(q);
        if (k == 0) {
            a[k] = q;
            na[k] = nq;
        } else {
            const cplx qp = s.g[k - 1].u / s.uh[k - 1].u;
            const cplx rp = s.u[k - 1].u / s.uh[k - 1].u;
            const cplx den = rp - rho;
            a[k] = (q * rp - qp * rho) / den;
            na[k] = 4.0 * eps * (std::abs(q * rp) + std::abs(qp * rho)) / std::max(std::abs(den), 1e-300);
        }
        rq[k] = (s.g[k].u - wr.g_tilde * s.uh[k].u) / s.u[k].u;
        nr[k] = (4.0 * eps * (std::abs(s.g[k].u) + std::abs(wr.g_tilde * s.uh[k].u)) +
                 gt.estimate * std::abs(s.uh[k].u)) /
                std::max(std::abs(s.u[k].u), 1e-300);
    }
    // The gauge-eliminated sequence starts at k = 1.
    const Extrapolation qt = require(extrapolate_limit(std::vector<cplx>(a.begin() + 1, a.end()),
                                                       std::vector<double>(na.begin() + 1, na.end()),
                                                       cfg.divergence_run),
                                     "g~ (quotient route)");
    const Extrapolation qtp = require(extrapolate_limit(rq, nr, cfg.divergence_run), "g~' (quotient route)");
    BoundaryValuePair qu{basis.endpoint, qt.value, qtp.value, BvRoute::quotient, std::max(qt.estimate, qtp.estimate)};
    return {wr, qu};
}

std::pair<cplx, cplx> regular_recovery_check(const SLProblem& problem, Side endpoint, const Solution& g, double tol,
                                             const BvalsConfig& cfg) {
    const ExtReal& e = problem.endpoint(endpoint);
    if (!problem.info(endpoint).regular || !e.is_finite())
        throw ArgumentError("regular_recovery_check: endpoint is not regular");
    const SolutionState direct = g->at(e.value());
    const ReferenceBasis basis = build_reference_basis(problem, 0.0, endpoint);
    const BoundaryValuePair bv = boundary_values(problem, g, basis, BvRoute::wronskian, cfg);
    const double scale = std::max(1.0, std::abs(direct.u) + std::abs(direct.u1));
    if (std::abs(bv.g_tilde - direct.u) > tol * scale || std::abs(bv.g_tilde_prime - direct.u1) > tol * scale)
        throw DomainError("regular_recovery_check: generalized boundary values differ from (g(a), g1(a)); "
                          "basis normalization defect");
    return {direct.u, direct.u1};
}

cplx lagrange_bracket(const SLProblem& problem, const Solution& g, const Solution& h, const ReferenceBasis& basis,
                      const BvalsConfig& cfg) {
    const BoundaryValuePair bg = boundary_values(problem, g, basis, BvRoute::wronskian, cfg);
    const BoundaryValuePair bh = boundary_values(problem, h, basis, BvRoute::wronskian, cfg);
    return bg.g_tilde * bh.g_tilde_prime - bg.g_tilde_prime * bh.g_tilde;
}

Extrapolation wronskian_limit(const SLProblem& problem, const Solution& g, const Solution& h, Side endpoint,
                              const BvalsConfig& cfg) {
    EndpointFrame fr{endpoint, problem.endpoint(endpoint)};
    std::vector<cplx> w;
    std::vector<double> nz;
    for (double d : bvals_probes(problem, endpoint, cfg)) {
        const SolutionState a = eval(g, fr, d), b = eval(h, fr, d);
        w.push_back(wronskian(a, b));
        nz.push_back(wr_noise(a, b));
    }
    return extrapolate_limit(w, nz, cfg.divergence_run);
}

}  // namespace slspec
