#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slspec/bvals.hpp"
#include "slspec/model.hpp"

namespace slspec {

using Mat2 = std::array<std::array<cplx, 2>, 2>;
using RealMat2 = std::array<std::array<double, 2>, 2>;

/// g̃(a) cos α + g̃'(a) sin α = 0 and g̃(b) cos β + g̃'(b) sin β = 0; an empty angle drops that endpoint.
struct Separated {
    std::optional<double> alpha;
    std::optional<double> beta;
};

/// (g̃(b), g̃'(b))ᵀ = e^{iφ} R (g̃(a), g̃'(a))ᵀ.
struct Coupled {
    double phi = 0.0;
    RealMat2 R{{{1.0, 0.0}, {0.0, 1.0}}};
};

/// A (g̃(a), g̃'(a))ᵀ = B (g̃(b), g̃'(b))ᵀ.
struct MatrixPair {
    Mat2 A{};
    Mat2 B{};
};

/// g̃ = 0 at each limit-circle endpoint.
struct Friedrichs {
    bool at_a = true;
    bool at_b = true;
};

struct BoundaryCondition {
    std::variant<Separated, Coupled, MatrixPair, Friedrichs> kind;

    bool applies_at(Side s) const;
};

struct EndpointClasses {
    EndpointClass left = EndpointClass::limit_circle;
    EndpointClass right = EndpointClass::limit_circle;
};

struct ValidityReport {
    bool valid = false;
    std::string reason;
    /// Largest 2x2 minor of the normalized block (A B).
    double rank_measure = 0.0;
    /// max |AJA* - BJB*| after normalization, or |det R - 1|.
    double identity_defect = 0.0;
};

/// Angles must lie in [0, π); throws ArgumentError otherwise.
BoundaryCondition separated(std::optional<double> alpha, std::optional<double> beta);
/// φ must lie in [0, 2π).
BoundaryCondition coupled(double phi, const RealMat2& R);
BoundaryCondition matrix_pair(const Mat2& A, const Mat2& B);
BoundaryCondition friedrichs(const SLProblem& problem, const EndpointClasses& classes);

/// Rejects conditions that reference a limit-point endpoint.
void check_endpoints(const BoundaryCondition& bc, const EndpointClasses& classes);

ValidityReport validate(const BoundaryCondition& bc);

/// Matrix form: Separated -> rows (cos α, sin α) and (cos β, sin β); Coupled -> (e^{iφ}R, I).
MatrixPair to_matrix(const BoundaryCondition& bc);

/// Residual vector of the condition for the given boundary values. Throws ArgumentError when a
/// retained endpoint has no boundary values.
std::vector<cplx> residual(const BoundaryCondition& bc, const std::optional<BoundaryValuePair>& at_a,
                           const std::optional<BoundaryValuePair>& at_b);

}  // namespace slspec
