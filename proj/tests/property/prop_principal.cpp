#include <doctest.h>

#include <cmath>

#include "catalog_cases.hpp"
#include "slspec/oracles/catalog.hpp"
#include "slspec/principal.hpp"
#include "slspec/quadrature.hpp"

using namespace slspec;
using namespace slspec::test;

namespace {

SolutionState state_at(const SLProblem& p, const Solution& s, Side side, double d) {
    const ExtReal& e = p.endpoint(side);
    if (e.is_finite()) return s->near(side, e.value(), d);
    return s->at(EndpointFrame{side, e}.to_x(d));
}

}  // namespace

TEST_CASE("reference bases are normalized at every probe") {
    for (const CatalogCase& c : catalog_cases()) {
        const SLProblem p = oracles::catalog(c.name, c.params).problem;
        for (Side side : c.lc_sides) {
            const ReferenceBasis b = build_reference_basis(p, 0.0, side);
            for (double d : probe_distances(p, side, 30)) {
                INFO(label(c), " ", to_string(side), " d = ", d);
                const cplx w = wronskian(state_at(p, b.nonprincipal, side, d), state_at(p, b.principal, side, d));
                CHECK(std::abs(w - 1.0) < 1e-8);
            }
        }
    }
}

TEST_CASE("principal solutions are minimal") {
    for (const CatalogCase& c : catalog_cases()) {
        const SLProblem p = oracles::catalog(c.name, c.params).problem;
        for (Side side : c.lc_sides) {
            const ReferenceBasis b = build_reference_basis(p, 0.0, side);
            const auto r = ordering_ratios(p, b, 40);
            INFO(label(c), " ", to_string(side));
            REQUIRE(r.size() >= 20);
            for (std::size_t k = 1; k < r.size(); ++k) CHECK(std::abs(r[k]) < std::abs(r[k - 1]));
            CHECK(std::abs(r.back()) < 0.1 * std::abs(r.front()));
        }
    }
}

TEST_CASE("the principal member makes the endpoint integral diverge") {
    for (const CatalogCase& c : catalog_cases()) {
        if (c.name == "regular_free") continue;
        const SLProblem p = oracles::catalog(c.name, c.params).problem;
        for (Side side : c.lc_sides) {
            const ReferenceBasis b = build_reference_basis(p, 0.0, side);
            auto f = [&](double d) {
                const SolutionState s = state_at(p, b.principal, side, d);
                return 1.0 / (p.coeffs_near(side, d).p * s.u * s.u);
            };
            // window integrals over [d/2, d] do not shrink toward the endpoint
            std::vector<double> windows;
            for (double d = 0.125; d > 1e-12; d /= 2.0) windows.push_back(std::abs(integrate_gk(f, d / 2.0, d).value));
            INFO(label(c), " ", to_string(side));
            double total = 0.0;
            for (double w : windows) total += w;
            CHECK(windows.back() >= 0.5 * windows[windows.size() / 2]);
            CHECK(total > 10.0 * windows.front());
        }
    }
}

TEST_CASE("principal and nonprincipal constructions are idempotent") {
    for (const CatalogCase& c : catalog_cases()) {
        if (c.name == "regular_free") continue;
        const SLProblem p = oracles::catalog(c.name, c.params).problem;
        for (Side side : c.lc_sides) {
            const ReferenceBasis b = build_reference_basis(p, 0.0, side);
            const double c0 = reference_point(p);
            const Solution uh = nonprincipal_from_solution(p, 0.0, b.principal, side, c0);
            const Solution u = principal_from_nonprincipal(p, 0.0, uh, side);
            std::vector<cplx> ratio;
            for (double d : probe_distances(p, side, 20))
                ratio.push_back(state_at(p, u, side, d).u / state_at(p, b.principal, side, d).u);
            INFO(label(c), " ", to_string(side));
            for (cplx q : ratio) CHECK(std::abs(q / ratio.front() - 1.0) < 1e-8);
        }
    }
}
