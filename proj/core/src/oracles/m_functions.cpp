#include "slspec/oracles/m_functions.hpp"

#include <cmath>

#include "slspec/oracles/special_functions.hpp"

namespace slspec::oracles {

namespace {

/// arg z in (0, 2π); throws on the cut [0, ∞).
double arg_cut_positive(cplx z) {
    if (z.imag() == 0.0 && z.real() >= 0.0) throw DomainError("m_bessel: z on the branch cut [0, inf)");
    double t = std::arg(z);
    if (t < 0.0) t += 2.0 * pi;
    return t;
}

cplx check_pole(cplx value, const char* who) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) throw PoleError(who);
    return value;
}

}  // namespace

cplx m_bessel(cplx z, double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("m_bessel: gamma must lie in [0, 1)");
    const double th = arg_cut_positive(z);
    const double lr = std::log(std::abs(z));
    if (gamma == 0.0) {
        const cplx logz(lr, th);
        return cplx(0.0, pi / 2.0) + std::log(2.0) - euler_gamma - 0.5 * logz;
    }
    const cplx zg = std::exp(gamma * cplx(lr, th));
    const double ratio = gamma_fn(1.0 - gamma).real() / gamma_fn(1.0 + gamma).real();
    return -std::exp(cplx(0.0, -pi * gamma)) * std::pow(2.0, -2.0 * gamma - 1.0) / gamma * ratio * zg;
}

cplx legendre_nu(cplx z) { return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * z)); }

cplx m_legendre(cplx z) {
    const cplx nu = legendre_nu(z);
    const double n = std::round(nu.real());
    if (std::abs(nu - n) < 1e-13) throw PoleError("m_legendre: z at an eigenvalue n(n+1)");
    const cplx cot = 1.0 / std::tan(pi * (nu - n));
    return check_pole(-0.5 * pi * cot - euler_gamma - digamma(1.0 + nu), "m_legendre: pole");
}

cplx m_legendre_series(cplx z, int terms) {
    if (std::abs(z) < 1e-300) throw PoleError("m_legendre_series: z = 0");
    cplx sum = -1.0 / (2.0 * z);
    for (int k = terms; k >= 1; --k) {
        const double n = k;
        const cplx den = n * (n + 1.0) - z;
        if (std::abs(den) < 1e-13) throw PoleError("m_legendre_series: z at an eigenvalue");
        sum += (n + 0.5) / den - 1.0 / n;
    }
    const double m = terms + 0.5;
    sum += -0.5 * std::log(1.0 + 1.0 / m - z / (m * m));
    return sum;
}

cplx ratio_product(const std::vector<cplx>& A, const std::vector<cplx>& B, int terms) {
    cplx log_sum = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const double n = k;
        cplx f = 1.0;
        for (std::size_t j = 0; j < A.size(); ++j) f *= (n + A[j]) / (n + B[j]);
        log_sum += std::log(f);
    }
    // Σ_{n>N} ln f(n) ≈ ∫_{N+1/2}^∞ ln f(x) dx = -Σ_j [H(M + A_j) - H(M + B_j)], H(y) = y ln y - y.
    const double m = terms + 0.5;
    auto h = [](cplx y) { return y * std::log(y) - y; };
    cplx tail = 0.0;
    for (std::size_t j = 0; j < A.size(); ++j) tail -= h(m + A[j]) - h(m + B[j]);
    return std::exp(log_sum + tail);
}

cplx gamma_ratio(cplx z1, cplx z2, cplx z3) {
    return gamma_fn(z1) * gamma_fn(z2) * rgamma(z1 + z3) * rgamma(z2 - z3);
}

cplx gamma_ratio_product(cplx z1, cplx z2, cplx z3, int terms) {
    // n >= 0 factor: (n + z1 + z3)(n + z2 - z3) / ((n + z1)(n + z2)); shift n -> n - 1.
    return ratio_product({z1 + z3 - 1.0, z2 - z3 - 1.0}, {z1 - 1.0, z2 - 1.0}, terms);
}

cplx m_laguerre(cplx z, double beta) {
    if (!(beta > 0.0 && beta < 2.0)) throw DomainError("m_laguerre: beta must lie in (0, 2)");
    if (beta == 1.0) return check_pole(-digamma(-z) - 2.0 * euler_gamma, "m_laguerre: pole");
    if (beta < 1.0) {
        const double c = -gamma_fn(beta).real() / gamma_fn(1.0 - beta).real();
        return check_pole(c * gamma_fn(1.0 - beta - z) * rgamma(-z), "m_laguerre: pole");
    }
    const double c = -gamma_fn(2.0 - beta).real() / gamma_fn(beta - 1.0).real();
    return check_pole(c * gamma_fn(-z) * rgamma(1.0 - beta - z), "m_laguerre: pole");
}

cplx m_laguerre_product(cplx z, double beta, int terms) {
    if (!(beta > 0.0 && beta < 2.0)) throw DomainError("m_laguerre_product: beta must lie in (0, 2)");
    const double s = 1.0 - beta;
    if (beta == 1.0) {
        // -ψ(-z) - 2γ = Σ_{n>=0} [1/(n - z) - 1/(n + 1)] - γ
        cplx sum = 0.0;
        for (int k = terms; k >= 0; --k) {
            const double n = k;
            if (std::abs(n - z) < 1e-13) throw PoleError("m_laguerre_product: pole");
            sum += 1.0 / (n - z) - 1.0 / (n + 1.0);
        }
        // tail ∫_{N+1/2}^∞ [1/(x - z) - 1/(x + 1)] dx = -ln((M - z)/(M + 1))
        const double m = terms + 0.5;
        sum += -std::log((m - z) / (m + 1.0));
        return sum - euler_gamma;
    }
    if (std::abs(z) < 1e-13 || std::abs(z - s) < 1e-13) throw PoleError("m_laguerre_product: pole or zero");
    if (beta < 1.0) {
        const cplx c1 = ratio_product({0.0, 1.0}, {beta, s}, terms);
        const cplx p = ratio_product({-z, s}, {0.0, s - z}, terms);
        return c1 * (beta - 1.0) / (beta * gamma_fn(2.0 - beta).real()) * z / (z - s) * p;
    }
    const cplx c2 = ratio_product({beta, s}, {0.0, 1.0}, terms);
    const cplx p = ratio_product({s - z, 0.0}, {s, -z}, terms);
    return c2 * beta * s * gamma_fn(2.0 - beta).real() * (z - s) / z * p;
}

cplx m_regular_free(cplx z) {
    const cplx w = std::sqrt(z);
    if (std::abs(w) < 1e-8) return -1.0 + z / 3.0;
    return -w / std::tan(w);
}

}  // namespace slspec::oracles
