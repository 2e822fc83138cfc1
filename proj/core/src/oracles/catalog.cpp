#include "slspec/oracles/catalog.hpp"

#include <cmath>

#include "slspec/oracles/m_functions.hpp"
#include "slspec/oracles/special_functions.hpp"

namespace slspec::oracles {

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, const std::string& who) {
    auto it = params.find(key);
    if (it == params.end()) throw ArgumentError("catalog(" + who + "): missing parameter " + key);
    return it->second;
}

void reject_unknown(const std::map<std::string, double>& params, std::initializer_list<const char*> allowed,
                    const std::string& who) {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ArgumentError("catalog(" + who + "): unknown parameter " + k);
    }
}

std::function<std::optional<ExactPair>(double)> at_lambda0(ExactPair pair) {
    return [pair](double lambda0) -> std::optional<ExactPair> {
        if (lambda0 != 0.0) return std::nullopt;
        return pair;
    };
}

Solution constant(double c) {
    return make_solution([c](double x) { return SolutionState{x, c, 0.0}; });
}

CatalogProblem make_bessel(double g) {
    if (!(g >= 0.0)) throw ArgumentError("catalog(bessel): gamma must be >= 0");
    CatalogProblem cp;
    const double qc = g * g - 0.25;
    cp.problem = make_problem(
        ExtReal::finite(0.0), ExtReal::pos_inf(), [](double) { return 1.0; },
        [qc](double x) { return qc / (x * x); }, [](double) { return 1.0; }, "bessel");
    cp.problem.params = {{"gamma", g}};
    cp.problem.left.known_class = g < 1.0 ? EndpointClass::limit_circle : EndpointClass::limit_point;
    cp.problem.right.known_class = EndpointClass::limit_point;
    cp.lower_bound = 0.0;
    if (g < 1.0) {
        ExactPair pair;
        if (g == 0.0) {
            pair.principal = make_solution([](double x) { return SolutionState{x, std::sqrt(x), 0.5 / std::sqrt(x)}; });
            pair.nonprincipal = make_solution([](double x) {
                const double s = std::sqrt(x), l = std::log(x);
                return SolutionState{x, -s * l, -(0.5 * l + 1.0) / s};
            });
            pair.convention = "u = x^{1/2}, û = x^{1/2} ln(1/x)";
        } else {
            pair.principal = make_solution([g](double x) {
                return SolutionState{x, std::pow(x, 0.5 + g), (0.5 + g) * std::pow(x, g - 0.5)};
            });
            pair.nonprincipal = make_solution([g](double x) {
                return SolutionState{x, std::pow(x, 0.5 - g) / (2.0 * g), (0.5 - g) * std::pow(x, -0.5 - g) / (2.0 * g)};
            });
            pair.convention = "u = x^{1/2+γ}, û = x^{1/2-γ}/(2γ)";
        }
        cp.problem.left.exact_pair = at_lambda0(pair);
        cp.exact_m = [g](cplx z) { return m_bessel(z, g); };
    }
    return cp;
}

CatalogProblem make_legendre() {
    CatalogProblem cp;
    cp.problem = make_problem(
        ExtReal::finite(-1.0), ExtReal::finite(1.0), [](double x) { return (1.0 - x) * (1.0 + x); },
        [](double) { return 0.0; }, [](double) { return 1.0; }, "legendre");
    auto near = [](double d) { return Coefficients{d * (2.0 - d), 0.0, 1.0}; };
    cp.problem.left.near = near;
    cp.problem.right.near = near;
    cp.problem.left.known_class = EndpointClass::limit_circle;
    cp.problem.right.known_class = EndpointClass::limit_circle;
    // û = ½ ln((1-x)/(1+x)) is a nonprincipal solution at both ends; p û' = -1.
    Solution uhat = make_solution(
        [](double x) { return SolutionState{x, 0.5 * std::log((1.0 - x) / (1.0 + x)), -1.0}; },
        [](Side side, double e, double d) {
            const double x = side == Side::left ? e + d : e - d;
            const double v = side == Side::left ? 0.5 * std::log((2.0 - d) / d) : 0.5 * std::log(d / (2.0 - d));
            return SolutionState{x, v, -1.0};
        });
    ExactPair pair{constant(1.0), uhat, "u = 1, û = ½ ln((1-x)/(1+x)) at both endpoints"};
    cp.problem.left.exact_pair = at_lambda0(pair);
    cp.problem.right.exact_pair = at_lambda0(pair);
    cp.lower_bound = 0.0;
    cp.exact_m = [](cplx z) { return m_legendre(z); };
    cp.spectrum = [](int n) { return n * (n + 1.0); };
    return cp;
}

/// x^s M(a, 1+s; x) and its quasi-derivative for p = x^β e^{-x}, s = 1 - β.
SolutionState kummer_power(cplx a, double s, double x) {
    const cplx f = kummer_f(a, 1.0 + s, x);
    const cplx f1 = kummer_f(a + 1.0, 2.0 + s, x);
    const double xs = std::pow(x, s);
    const cplx quasi = std::exp(-x) * (s * f + x * (a / (1.0 + s)) * f1);
    return {x, xs * f, quasi};
}

CatalogProblem make_laguerre(double beta) {
    if (!(beta > 0.0 && beta < 2.0)) throw ArgumentError("catalog(laguerre): beta must lie in (0, 2)");
    CatalogProblem cp;
    cp.problem = make_problem(
        ExtReal::finite(0.0), ExtReal::pos_inf(), [beta](double x) { return std::pow(x, beta) * std::exp(-x); },
        [](double) { return 0.0; }, [beta](double x) { return std::pow(x, beta - 1.0) * std::exp(-x); }, "laguerre");
    cp.problem.params = {{"beta", beta}};
    cp.problem.left.known_class = EndpointClass::limit_circle;
    cp.problem.right.known_class = EndpointClass::limit_point;
    const double s = 1.0 - beta;
    ExactPair pair;
    if (beta < 1.0) {
        pair.nonprincipal = constant(1.0);
        pair.principal = make_solution([s](double x) {
            SolutionState y = kummer_power(s, s, x);
            return SolutionState{x, y.u / s, y.u1 / s};
        });
        pair.convention = "û = y1 = 1, u = y2/(1-β)";
    } else if (beta > 1.0) {
        pair.nonprincipal = make_solution([s](double x) { return kummer_power(s, s, x); });
        pair.principal = constant(1.0 / (beta - 1.0));
        pair.convention = "û = y2 = x^{1-β} M(1-β, 2-β; x), u = -y1/(1-β)";
    } else {
        pair.principal = constant(1.0);
        pair.nonprincipal = make_solution([](double x) {
            return SolutionState{x, -std::log(x) - ei_series(x), -1.0};
        });
        pair.convention = "u = 1, û = γ_E - Ei(x) = -ln x - Σ x^k/(k k!), so that û + ln x -> 0";
    }
    cp.problem.left.exact_pair = at_lambda0(pair);
    cp.lower_bound = beta < 1.0 ? s : 0.0;
    cp.exact_m = [beta](cplx z) { return m_laguerre(z, beta); };
    cp.spectrum = [beta, s](int n) { return beta < 1.0 ? n + s : double(n); };
    return cp;
}

CatalogProblem make_regular_free() {
    CatalogProblem cp;
    cp.problem = make_problem(
        ExtReal::finite(0.0), ExtReal::finite(1.0), [](double) { return 1.0; }, [](double) { return 0.0; },
        [](double) { return 1.0; }, "regular_free");
    cp.problem.left.regular = true;
    cp.problem.right.regular = true;
    cp.problem.left.known_class = EndpointClass::limit_circle;
    cp.problem.right.known_class = EndpointClass::limit_circle;
    cp.problem.left.exact_pair = at_lambda0(
        {make_solution([](double x) { return SolutionState{x, x, 1.0}; }), constant(1.0),
         "regular: û data (1,0), u data (0,1) at 0"});
    cp.problem.right.exact_pair = at_lambda0(
        {make_solution([](double x) { return SolutionState{x, x - 1.0, 1.0}; }), constant(1.0),
         "regular: û data (1,0), u data (0,1) at 1"});
    cp.lower_bound = pi * pi;
    cp.exact_m = [](cplx z) { return m_regular_free(z); };
    cp.spectrum = [](int n) { return (n + 1.0) * (n + 1.0) * pi * pi; };
    return cp;
}

}  // namespace

CatalogProblem catalog(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "bessel") {
        reject_unknown(params, {"gamma"}, name);
        return make_bessel(param(params, "gamma", name));
    }
    if (name == "legendre") {
        reject_unknown(params, {}, name);
        return make_legendre();
    }
    if (name == "laguerre") {
        reject_unknown(params, {"beta"}, name);
        return make_laguerre(param(params, "beta", name));
    }
    if (name == "regular_free") {
        reject_unknown(params, {}, name);
        return make_regular_free();
    }
    throw ArgumentError("catalog: unknown problem " + name);
}

Solution laguerre_y1(cplx z, double beta) {
    return make_solution([z, beta](double x) {
        const cplx f = kummer_f(-z, beta, x);
        const cplx f1 = kummer_f(1.0 - z, beta + 1.0, x);
        return SolutionState{x, f, std::pow(x, beta) * std::exp(-x) * (-z / beta) * f1};
    });
}

Solution laguerre_y2(cplx z, double beta) {
    if (beta == 1.0) throw ArgumentError("laguerre_y2: beta = 1 has a logarithmic second solution");
    const double s = 1.0 - beta;
    return make_solution([z, s](double x) { return kummer_power(s - z, s, x); });
}

double laguerre_wronskian(double beta) { return beta == 1.0 ? -1.0 : 1.0 - beta; }

Solution friedrichs_eigenfunction(const std::string& name, const std::map<std::string, double>& params, int n) {
    if (name == "legendre") {
        return make_solution([n](double x) {
            double d = 0.0;
            const double v = legendre_poly(n, x, &d);
            return SolutionState{x, v, (1.0 - x) * (1.0 + x) * d};
        });
    }
    if (name == "laguerre") {
        const double beta = param(params, "beta", name);
        if (beta < 1.0) {
            const double s = 1.0 - beta;
            return make_solution([n, s](double x) { return kummer_power(-double(n), s, x); });
        }
        return make_solution([n, beta](double x) {
            double d = 0.0;
            const double v = laguerre_poly(n, beta - 1.0, x, &d);
            return SolutionState{x, v, std::pow(x, beta) * std::exp(-x) * d};
        });
    }
    if (name == "regular_free") {
        const double k = (n + 1.0) * pi;
        return make_solution([k](double x) { return SolutionState{x, std::sin(k * x), k * std::cos(k * x)}; });
    }
    throw ArgumentError("friedrichs_eigenfunction: no discrete eigenfunctions for " + name);
}

Solution bessel_solution(double gamma, double z, bool negative_order) {
    if (!(z > 0.0)) throw ArgumentError("bessel_solution: z must be positive");
    const double k = std::sqrt(z);
    const double nu = negative_order ? -gamma : gamma;
    return make_solution([k, nu](double x) {
        const double s = std::sqrt(x);
        const double j = bessel_j(nu, k * x);
        const double dj = bessel_j_derivative(nu, k * x) * k;
        return SolutionState{x, s * j, 0.5 * j / s + s * dj};
    });
}

}  // namespace slspec::oracles
