#pragma once

#include <functional>

#include "slspec/types.hpp"

namespace slspec {

struct QuadResult {
    cplx value{};
    double error = 0.0;
    bool converged = false;
    int evaluations = 0;
};

/// Adaptive Gauss–Kronrod (7/15) quadrature over the finite interval [a, b]
/// (a > b allowed, giving the negated integral).
QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b,
                        double rel_tol = 1e-12, double abs_tol = 0.0, int max_intervals = 4000);

/// Single 15-point Kronrod panel with its embedded 7-point Gauss error estimate.
QuadResult gk15_panel(const std::function<cplx(double)>& f, double a, double b);

}  // namespace slspec
