#pragma once

#include "slspec/types.hpp"

namespace slspec::oracles {

inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;
inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Γ(z). Throws PoleError within 1e-13 of a non-positive integer.
cplx gamma_fn(cplx z);
/// 1/Γ(z), entire; zero at the poles of Γ.
cplx rgamma(cplx z);
/// ψ(z) = Γ'(z)/Γ(z). Throws PoleError within 1e-13 of a non-positive integer.
cplx digamma(cplx z);

/// J_ν(x) for x >= 0 by the power series.
double bessel_j(double nu, double x);
/// d/dx J_ν(x) = (J_{ν-1}(x) - J_{ν+1}(x)) / 2.
double bessel_j_derivative(double nu, double x);

/// Kummer's M(a, b; x) = 1F1(a; b; x) for real x >= 0 (series).
cplx kummer_f(cplx a, cplx b, double x);

/// P_ν(x) for x in (-1, 1) via the expansion about x = -1; integer ν uses the polynomial.
cplx legendre_p(cplx nu, double x);
/// Legendre polynomial P_n(x) and optionally its derivative.
double legendre_poly(int n, double x, double* derivative = nullptr);
/// Generalized Laguerre polynomial L_n^{(alpha)}(x) and optionally its derivative.
double laguerre_poly(int n, double alpha, double x, double* derivative = nullptr);

/// Σ_{k>=1} x^k / (k·k!) = Ei(x) - γ_E - ln x for x > 0.
double ei_series(double x);

/// ∫_0^1 t (1 - ln t) e^t dt, computed once by adaptive quadrature.
double laguerre_c0();
/// lim_{x->0} [∫_x^1 t^{-1} e^t dt + ln x] = ∫_0^1 (e^t - 1)/t dt, computed once by quadrature.
double laguerre_log_offset();

}  // namespace slspec::oracles
