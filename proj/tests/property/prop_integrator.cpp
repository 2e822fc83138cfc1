#include <doctest.h>

#include <cmath>
#include <vector>

#include "slspec/integrator.hpp"
#include "slspec/oracles/catalog.hpp"
#include "test_support.hpp"

using namespace slspec;
using namespace slspec::test;

namespace {

struct Case {
    const char* name;
    std::map<std::string, double> params;
    double x0, x1;
};

const std::vector<Case> cases{
    {"legendre", {}, -0.9, 0.9},
    {"bessel", {{"gamma", 0.3}}, 0.05, 3.0},
    {"bessel", {{"gamma", 1.3}}, 0.05, 3.0},
    {"laguerre", {{"beta", 0.5}}, 0.1, 4.0},
    {"laguerre", {{"beta", 1.5}}, 0.1, 4.0},
    {"regular_free", {}, 0.0, 1.0},
};

double state_err(const SolutionState& a, const SolutionState& b) {
    const double scale = std::max({std::abs(b.u), std::abs(b.u1), 1e-300});
    return std::max(std::abs(a.u - b.u), std::abs(a.u1 - b.u1)) / scale;
}

}  // namespace

TEST_CASE("wronskian of two solutions is constant along the interval") {
    // |Im sqrt(z)| stays below 1, so the products in W do not dwarf W itself
    const IntegratorConfig cfg;
    for (const Case& c : cases) {
        const SLProblem p = oracles::catalog(c.name, c.params).problem;
        for (int trial = 0; trial < 4; ++trial) {
            const cplx z(uniform(-0.8, 3.0), uniform(-1.5, 1.5));
            // unit wronskian: a·d - b·c = 1 with |a| >= 1/2
            const cplx a = std::polar(uniform(0.5, 1.5), uniform(0.0, 6.28)), b = uniform_c(-1.0, 1.0),
                       cc = uniform_c(-1.0, 1.0);
            const SolutionState f0{c.x0, a, b}, g0{c.x0, cc, (1.0 + b * cc) / a};
            const Solution f = make_numeric_solution(p, z, integrate(p, z, f0, c.x1, cfg), cfg);
            const Solution g = make_numeric_solution(p, z, integrate(p, z, g0, c.x1, cfg), cfg);
            const cplx w0 = wronskian(f0, g0);
            double drift = 0.0;
            for (int k = 1; k <= 20; ++k) {
                const double x = c.x0 + (c.x1 - c.x0) * k / 20.0;
                drift = std::max(drift, std::abs(wronskian(f->at(x), g->at(x)) - w0));
            }
            INFO(std::string(c.name), " z = ", z);
            CHECK(drift <= 100.0 * cfg.rel_tol * std::abs(w0));
        }
    }
}

TEST_CASE("integration is reversible") {
    const IntegratorConfig cfg;
    for (const Case& c : cases) {
        const SLProblem p = oracles::catalog(c.name, c.params).problem;
        for (int trial = 0; trial < 4; ++trial) {
            const cplx z = uniform_c(-3.0, 3.0);
            const double xa = c.x0 + 0.1 * (c.x1 - c.x0), xb = c.x1 - 0.1 * (c.x1 - c.x0);
            const SolutionState s0{xa, uniform_c(-1.0, 1.0), uniform_c(-1.0, 1.0)};
            const SolutionState back = propagate(p, z, propagate(p, z, s0, xb, cfg), xa, cfg);
            INFO(std::string(c.name), " z = ", z);
            CHECK(state_err(back, s0) <= 10.0 * cfg.rel_tol);
        }
    }
}

TEST_CASE("integration is linear in the initial data") {
    const IntegratorConfig cfg;
    for (const Case& c : cases) {
        const SLProblem p = oracles::catalog(c.name, c.params).problem;
        for (int trial = 0; trial < 4; ++trial) {
            const cplx z = uniform_c(-3.0, 3.0), a = uniform_c(-2.0, 2.0), b = uniform_c(-2.0, 2.0);
            const SolutionState s1{c.x0, uniform_c(-1.0, 1.0), uniform_c(-1.0, 1.0)};
            const SolutionState s2{c.x0, uniform_c(-1.0, 1.0), uniform_c(-1.0, 1.0)};
            const SolutionState mix{c.x0, a * s1.u + b * s2.u, a * s1.u1 + b * s2.u1};
            const SolutionState r1 = propagate(p, z, s1, c.x1, cfg), r2 = propagate(p, z, s2, c.x1, cfg);
            const SolutionState rm = propagate(p, z, mix, c.x1, cfg);
            const SolutionState want{c.x1, a * r1.u + b * r2.u, a * r1.u1 + b * r2.u1};
            const double scale = std::max({std::abs(a * r1.u), std::abs(b * r2.u), std::abs(a * r1.u1),
                                           std::abs(b * r2.u1)});
            INFO(std::string(c.name), " z = ", z);
            CHECK(std::max(std::abs(rm.u - want.u), std::abs(rm.u1 - want.u1)) <= 100.0 * cfg.rel_tol * scale);
        }
    }
}
