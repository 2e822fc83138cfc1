#include "slspec/cli/runner.hpp"

#include <cmath>
#include <sstream>

#include "slspec/bvals.hpp"
#include "slspec/classifier.hpp"
#include "slspec/extensions.hpp"
#include "slspec/oracles/catalog.hpp"
#include "slspec/parallel.hpp"
#include "slspec/spectral.hpp"

namespace slspec::cli {

namespace {

IntegratorConfig integrator_config(const ToleranceSpec& t) {
    IntegratorConfig c;
    c.rel_tol = t.rel_tol;
    c.abs_tol = t.abs_tol;
    return c;
}

SpectralConfig spectral_config(const RunSpec& spec, const oracles::CatalogProblem& cp, int threads) {
    SpectralConfig c;
    c.integrator = integrator_config(spec.tolerances);
    c.panels = spec.tolerances.panels;
    c.root_tol = spec.tolerances.root_tol;
    c.weyl_tol = spec.tolerances.weyl_tol;
    c.threads = threads;
    c.lambda0 = cp.lambda0;
    return c;
}

/// Closed forms are tabulated for the Friedrichs condition (α = β = 0 at the ends).
bool exact_applies(const RunSpec& spec) {
    if (spec.bc == "friedrichs") return true;
    return spec.alpha.value_or(0.0) == 0.0 && spec.beta.value_or(0.0) == 0.0;
}

BoundaryCondition make_bc(const RunSpec& spec, const SLProblem& problem, const ClassifierConfig& ccfg) {
    if (spec.bc == "friedrichs")
        return friedrichs(problem, {endpoint_class(problem, Side::left, ccfg), endpoint_class(problem, Side::right, ccfg)});
    return separated(spec.alpha, spec.beta);
}

std::string spectrum_csv(const RunSpec& spec, const oracles::CatalogProblem& cp, int threads) {
    ClassifierConfig ccfg;
    ccfg.integrator = integrator_config(spec.tolerances);
    const BoundaryCondition bc = make_bc(spec, cp.problem, ccfg);
    const auto [lo, hi] = *spec.window;
    const Eigenlist list = eigenvalues(cp.problem, bc, lo, hi, spectral_config(spec, cp, threads));

    const bool exact = cp.spectrum && exact_applies(spec);
    int offset = 0;
    if (exact)
        while (cp.spectrum(offset) < list.bracket_info.window_lo) ++offset;

    std::ostringstream o;
    o << "index,lambda,residual,exact_if_known,abs_err\n";
    for (std::size_t k = 0; k < list.eigenvalues.size(); ++k) {
        const double lam = list.eigenvalues[k];
        o << k << "," << format_number(lam) << "," << format_number(list.characteristic_residuals[k]) << ",";
        if (exact) {
            const double e = cp.spectrum(offset + static_cast<int>(k));
            o << format_number(e) << "," << format_number(std::abs(lam - e));
        } else {
            o << ",";
        }
        o << "\n";
    }
    return o.str();
}

std::string mscan_csv(const RunSpec& spec, const oracles::CatalogProblem& cp, int threads) {
    double alpha0 = 0.0, beta0 = 0.0;
    if (spec.bc == "separated") {
        alpha0 = spec.alpha.value_or(0.0);
        beta0 = spec.beta.value_or(0.0);
    }
    const SpectralConfig cfg = spectral_config(spec, cp, 1);
    const auto samples = parallel_map<MSample>(spec.z.size(), threads, [&](std::size_t i) {
        return m_function(cp.problem, alpha0, beta0, spec.z[i], cfg);
    });
    const bool exact = static_cast<bool>(cp.exact_m) && exact_applies(spec);

    std::ostringstream o;
    o << "re_z,im_z,re_m,im_m,re_m_exact,im_m_exact\n";
    for (const MSample& s : samples) {
        o << format_number(s.z.real()) << "," << format_number(s.z.imag()) << "," << format_number(s.m.real()) << ","
          << format_number(s.m.imag()) << ",";
        if (exact) {
            const cplx m = cp.exact_m(s.z);
            o << format_number(m.real()) << "," << format_number(m.imag());
        } else {
            o << ",";
        }
        o << "\n";
    }
    return o.str();
}

std::string classify_csv(const RunSpec& spec, const oracles::CatalogProblem& cp) {
    ClassifierConfig cfg;
    cfg.integrator = integrator_config(spec.tolerances);
    const cplx z = spec.z.empty() ? cplx(0.0, 1.0) : spec.z.front();
    const EndpointReport r = classify_endpoint(cp.problem, *spec.endpoint, z, cfg);
    std::ostringstream o;
    o << "endpoint,verdict,re_z,im_z,oscillatory\n";
    o << to_string(r.endpoint) << "," << to_string(r.verdict) << "," << format_number(r.z_used.real()) << ","
      << format_number(r.z_used.imag()) << "," << (r.oscillatory ? "true" : "false") << "\n";
    return o.str();
}

std::string bvals_csv(const RunSpec& spec, const oracles::CatalogProblem& cp, int threads) {
    const Side side = *spec.endpoint;
    ClassifierConfig ccfg;
    ccfg.integrator = integrator_config(spec.tolerances);
    if (endpoint_class(cp.problem, side, ccfg) != EndpointClass::limit_circle)
        throw ArgumentError(std::string("boundary values need a limit-circle endpoint; ") + to_string(side) +
                            " is limit point");
    BasisConfig bcfg;
    bcfg.integrator = integrator_config(spec.tolerances);
    const ReferenceBasis basis = build_reference_basis(cp.problem, cp.lambda0, side, bcfg);

    std::vector<std::pair<std::string, Solution>> family{
        {"u", basis.principal},
        {"uhat", basis.nonprincipal},
        {"u_plus_2uhat", combine(1.0, basis.principal, 2.0, basis.nonprincipal)},
    };
    if (cp.problem.name == "bessel") {
        const double gamma = cp.problem.params.at("gamma");
        family.emplace_back("j_pos_z1", oracles::bessel_solution(gamma, 1.0, false));
        family.emplace_back("j_neg_z4", oracles::bessel_solution(gamma, 4.0, true));
    } else {
        for (int n = 0; n < 2; ++n)
            family.emplace_back("eig" + std::to_string(n),
                                oracles::friedrichs_eigenfunction(cp.problem.name, cp.problem.params, n));
    }

    const BvRoute route = spec.route == "quotient" ? BvRoute::quotient : BvRoute::wronskian;
    const auto values = parallel_map<BoundaryValuePair>(family.size(), threads, [&](std::size_t i) {
        return boundary_values(cp.problem, family[i].second, basis, route);
    });

    std::ostringstream o;
    o << "g_id,g_tilde_re,g_tilde_im,g_tilde_prime_re,g_tilde_prime_im\n";
    for (std::size_t i = 0; i < family.size(); ++i) {
        const BoundaryValuePair& v = values[i];
        o << family[i].first << "," << format_number(v.g_tilde.real()) << "," << format_number(v.g_tilde.imag()) << ","
          << format_number(v.g_tilde_prime.real()) << "," << format_number(v.g_tilde_prime.imag()) << "\n";
    }
    return o.str();
}

}  // namespace

RunOutcome run(const RunSpec& spec) {
    RunOutcome out;
    try {
        const oracles::CatalogProblem cp = oracles::catalog(spec.problem.name, spec.problem.params);
        integrator_config(spec.tolerances).validate();
        const int threads = resolve_threads();
        switch (spec.command) {
            case CommandKind::spectrum: out.csv = spectrum_csv(spec, cp, threads); break;
            case CommandKind::mscan: out.csv = mscan_csv(spec, cp, threads); break;
            case CommandKind::classify: out.csv = classify_csv(spec, cp); break;
            case CommandKind::bvals: out.csv = bvals_csv(spec, cp, threads); break;
        }
    } catch (const SpecError& e) {
        out.exit_code = exit_spec_error;
        out.message = e.what();
    } catch (const ArgumentError& e) {
        out.exit_code = exit_spec_error;
        out.message = e.what();
    } catch (const std::exception& e) {
        out.exit_code = exit_numerical_failure;
        out.message = e.what();
    }
    if (out.exit_code != exit_ok) out.csv.clear();
    return out;
}

}  // namespace slspec::cli
