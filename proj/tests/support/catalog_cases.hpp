#pragma once

#include <map>
#include <string>
#include <vector>

#include "slspec/bvals.hpp"
#include "slspec/oracles/catalog.hpp"
#include "slspec/types.hpp"

namespace slspec::test {

struct CatalogCase {
    std::string name;
    std::map<std::string, double> params;
    /// Endpoints in the limit circle case (regular endpoints included).
    std::vector<Side> lc_sides;
};

inline const std::vector<CatalogCase>& catalog_cases() {
    static const std::vector<CatalogCase> cases{
        {"bessel", {{"gamma", 0.0}}, {Side::left}},
        {"bessel", {{"gamma", 0.3}}, {Side::left}},
        {"bessel", {{"gamma", 0.5}}, {Side::left}},
        {"bessel", {{"gamma", 0.75}}, {Side::left}},
        {"legendre", {}, {Side::left, Side::right}},
        {"laguerre", {{"beta", 0.5}}, {Side::left}},
        {"laguerre", {{"beta", 1.0}}, {Side::left}},
        {"laguerre", {{"beta", 1.5}}, {Side::left}},
        {"regular_free", {}, {Side::left, Side::right}},
    };
    return cases;
}

inline std::string label(const CatalogCase& c) {
    std::string s = c.name;
    for (const auto& [k, v] : c.params) s += " " + k + "=" + std::to_string(v);
    return s;
}

using Family = std::vector<std::pair<std::string, Solution>>;

/// u, û, u + 2û and two further solutions in the maximal domain near the basis endpoint.
inline Family test_family(const CatalogCase& c, const ReferenceBasis& b) {
    Family f{{"u", b.principal}, {"uhat", b.nonprincipal}, {"u+2uhat", combine(1.0, b.principal, 2.0, b.nonprincipal)}};
    if (c.name == "bessel") {
        const double gamma = c.params.at("gamma");
        f.emplace_back("j(z=1)", oracles::bessel_solution(gamma, 1.0, false));
        f.emplace_back("j(z=-4)", oracles::bessel_solution(gamma, 4.0, true));
    } else {
        for (int n = 0; n < 2; ++n)
            f.emplace_back("eig" + std::to_string(n), oracles::friedrichs_eigenfunction(c.name, c.params, n));
    }
    return f;
}

}  // namespace slspec::test
