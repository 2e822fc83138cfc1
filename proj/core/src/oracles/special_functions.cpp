#include "slspec/oracles/special_functions.hpp"

#include <array>
#include <cmath>

#include "slspec/quadrature.hpp"

namespace slspec::oracles {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,    -1.0 / 1680.0,       1.0 / 1188.0,
    -691.0 / 360360.0,   1.0 / 156.0,           -3617.0 / 122400.0, 43867.0 / 244188.0, -174611.0 / 125400.0};

// B_{2k} / (2k), k = 1..10
constexpr std::array<double, 10> kDigamma = {
    1.0 / 12.0,        -1.0 / 120.0,        1.0 / 252.0,         -1.0 / 240.0,      1.0 / 132.0,
    -691.0 / 32760.0,  1.0 / 12.0,          -3617.0 / 8160.0,    43867.0 / 14364.0, -174611.0 / 6600.0};

constexpr double kShift = 18.0;

bool near_pole(cplx z) {
    if (z.real() > 0.5) return false;
    const double n = std::round(z.real());
    return std::abs(z - cplx(n, 0.0)) < 1e-13;
}

/// ln Γ(w) by Stirling's series for Re w >= kShift (principal branch not needed: only exp is used).
cplx stirling_log_gamma(cplx w) {
    const cplx inv = 1.0 / w;
    const cplx inv2 = inv * inv;
    cplx s = 0.0;
    cplx p = inv;
    for (double c : kStirling) {
        s += c * p;
        p *= inv2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * pi) + s;
}

cplx gamma_right(cplx z) {
    // Re z >= 0.5
    cplx w = z;
    cplx prod = 1.0;
    while (w.real() < kShift) {
        prod *= w;
        w += 1.0;
    }
    return std::exp(stirling_log_gamma(w)) / prod;
}

cplx sin_pi(cplx z) {
    // sin(πz) with exact zeros at integers on the real axis
    const double n = std::round(z.real());
    const cplx r = z - n;
    const double sign = std::fmod(std::abs(n), 2.0) == 1.0 ? -1.0 : 1.0;
    return sign * std::sin(pi * r);
}

cplx cot_pi(cplx z) {
    const double n = std::round(z.real());
    return 1.0 / std::tan(pi * (z - n));
}

}  // namespace

cplx gamma_fn(cplx z) {
    if (near_pole(z)) throw PoleError("gamma_fn: argument at a pole");
    if (z.real() >= 0.5) return gamma_right(z);
    return pi / (sin_pi(z) * gamma_right(1.0 - z));
}

cplx rgamma(cplx z) {
    if (z.real() <= 0.5 && z.imag() == 0.0 && z.real() == std::round(z.real())) return 0.0;
    if (z.real() >= 0.5) return 1.0 / gamma_right(z);
    return sin_pi(z) * gamma_right(1.0 - z) / pi;
}

cplx digamma(cplx z) {
    if (near_pole(z)) throw PoleError("digamma: argument at a pole");
    if (z.real() < 0.5) return digamma(1.0 - z) - pi * cot_pi(z);
    cplx w = z;
    cplx acc = 0.0;
    while (w.real() < kShift) {
        acc -= 1.0 / w;
        w += 1.0;
    }
    const cplx inv2 = 1.0 / (w * w);
    cplx s = 0.0;
    cplx p = inv2;
    for (double c : kDigamma) {
        s += c * p;
        p *= inv2;
    }
    return acc + std::log(w) - 0.5 / w - s;
}

double bessel_j(double nu, double x) {
    if (x < 0.0) throw DomainError("bessel_j: x must be non-negative");
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0 || nu == std::round(nu)) return 0.0;
        throw DomainError("bessel_j: singular at x = 0 for negative non-integer order");
    }
    const double h = 0.5 * x;
    const double h2 = h * h;
    double sum = 0.0, biggest = 0.0;
    // term_k = (-1)^k h^{2k+ν} / (k! Γ(k+ν+1))
    if (nu < 0.0 && nu == std::round(nu)) {
        const int n = static_cast<int>(-nu);
        return (n % 2 ? -1.0 : 1.0) * bessel_j(n, x);
    }
    const double lead = std::pow(h, nu) * rgamma(nu + 1.0).real();
    const int k0 = 0;
    double term = lead;
    for (int k = k0; k < k0 + 500; ++k) {
        sum += term;
        biggest = std::max(biggest, std::abs(term));
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > k0 + 2) break;
        term *= -h2 / ((k + 1.0) * (k + 1.0 + nu));
    }
    if (biggest > 1e10 * std::abs(sum) && sum != 0.0) throw ConvergenceError("bessel_j: series cancellation too severe");
    return sum;
}

double bessel_j_derivative(double nu, double x) { return 0.5 * (bessel_j(nu - 1.0, x) - bessel_j(nu + 1.0, x)); }

cplx kummer_f(cplx a, cplx b, double x) {
    if (x < 0.0) throw DomainError("kummer_f: x must be non-negative");
    if (b.imag() == 0.0 && b.real() <= 0.0 && b.real() == std::round(b.real()))
        throw PoleError("kummer_f: b is a non-positive integer");
    cplx sum = 1.0, term = 1.0;
    double biggest = 1.0;
    int small = 0;
    for (int k = 0; k < 20000; ++k) {
        term *= (a + double(k)) / (b + double(k)) * (x / (k + 1.0));
        sum += term;
        biggest = std::max(biggest, std::abs(term));
        if (term == 0.0) return sum;
        if (std::abs(term) < 1e-16 * std::abs(sum) && std::abs(a + double(k)) < std::abs(b + double(k)) + x) {
            if (++small >= 2) {
                if (biggest > 1e10 * std::abs(sum)) throw ConvergenceError("kummer_f: severe cancellation");
                return sum;
            }
        } else {
            small = 0;
        }
    }
    throw ConvergenceError("kummer_f: series did not converge");
}

double legendre_poly(int n, double x, double* derivative) {
    if (n < 0) n = -n - 1;
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        if (derivative) *derivative = 0.0;
        return 1.0;
    }
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    // p1 = P_n, p0 = P_{n-1}; (1 - x^2) P_n' = n (P_{n-1} - x P_n)
    if (derivative) {
        if (std::abs(x) == 1.0) *derivative = 0.5 * n * (n + 1.0) * (x > 0 || n % 2 == 1 ? 1.0 : -1.0);
        else *derivative = n * (p0 - x * p1) / (1.0 - x * x);
    }
    return p1;
}

double laguerre_poly(int n, double alpha, double x, double* derivative) {
    if (n < 0) throw ArgumentError("laguerre_poly: negative degree");
    auto eval = [](int m, double al, double t) {
        if (m < 0) return 0.0;
        double l0 = 1.0, l1 = 1.0 + al - t;
        if (m == 0) return l0;
        for (int k = 1; k < m; ++k) {
            const double l2 = ((2.0 * k + 1.0 + al - t) * l1 - (k + al) * l0) / (k + 1.0);
            l0 = l1;
            l1 = l2;
        }
        return l1;
    };
    if (derivative) *derivative = -eval(n - 1, alpha + 1.0, x);
    return eval(n, alpha, x);
}

cplx legendre_p(cplx nu, double x) {
    if (!(x > -1.0 && x < 1.0)) throw DomainError("legendre_p: x must lie in (-1, 1)");
    if (nu.imag() == 0.0 && nu.real() == std::round(nu.real()))
        return legendre_poly(static_cast<int>(std::round(nu.real())), x);
    const double w = 0.5 * (1.0 + x);
    const double lw = std::log(w);
    const cplx s = -sin_pi(nu) / pi;
    const cplx c = std::cos(pi * nu);
    cplx coef = 1.0;  // (-ν)_n (1+ν)_n / (n!)^2 w^n
    cplx sum = 0.0;
    int small = 0;
    for (int n = 0; n < 100000; ++n) {
        const double dn = n;
        // ψ(1+ν-n) may sit on a pole when coef vanishes; skip exact zeros.
        cplx bracket;
        if (coef == 0.0) {
            bracket = 0.0;
        } else {
            bracket = s * (2.0 * digamma(1.0 + dn) - digamma(1.0 + nu - dn) - digamma(dn + 1.0 + nu) - lw) + c;
        }
        const cplx term = coef * bracket;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && n > 2) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
        coef *= (-nu + dn) * (1.0 + nu + dn) / ((dn + 1.0) * (dn + 1.0)) * w;
    }
    throw ConvergenceError("legendre_p: series did not converge");
}

double ei_series(double x) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= x / k;  // x^k / k!
        const double t = term / k;
        sum += t;
        if (std::abs(t) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double laguerre_c0() {
    static const double value = [] {
        auto f = [](double t) -> cplx { return t > 0.0 ? t * (1.0 - std::log(t)) * std::exp(t) : 0.0; };
        return integrate_gk(f, 0.0, 1.0, 1e-15, 1e-300).value.real();
    }();
    return value;
}

double laguerre_log_offset() {
    static const double value = [] {
        auto f = [](double t) -> cplx { return t > 0.0 ? std::expm1(t) / t : 1.0; };
        return integrate_gk(f, 0.0, 1.0, 1e-15, 1e-300).value.real();
    }();
    return value;
}

}  // namespace slspec::oracles
