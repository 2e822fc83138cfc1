#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "slspec/types.hpp"

namespace slspec {

struct SolutionState {
    double x = 0.0;
    cplx u{};
    cplx u1{};
};

struct Coefficients {
    double p = 1.0;
    double q = 0.0;
    double r = 1.0;
};

class SolutionFunction;
using Solution = std::shared_ptr<const SolutionFunction>;

/// Closed-form principal/nonprincipal pair (u, û) at an endpoint for a given λ0.
struct ExactPair {
    Solution principal;
    Solution nonprincipal;
    std::string convention;
};

enum class EndpointClass { limit_circle, limit_point };

/// Per-endpoint metadata. Everything except `regular` is optional and only
/// populated for catalog problems.
struct EndpointInfo {
    bool regular = false;
    std::optional<EndpointClass> known_class;
    /// Coefficients as a function of the distance to a finite endpoint; allows
    /// evaluation closer to the endpoint than x-resolution permits.
    std::function<Coefficients(double)> near;
    std::function<std::optional<ExactPair>(double lambda0)> exact_pair;
};

struct SLProblem {
    ExtReal a = ExtReal::finite(0.0);
    ExtReal b = ExtReal::finite(1.0);
    std::function<double(double)> p;
    std::function<double(double)> q;
    std::function<double(double)> r;
    std::string name;
    std::map<std::string, double> params;
    EndpointInfo left;
    EndpointInfo right;

    const ExtReal& endpoint(Side s) const { return s == Side::left ? a : b; }
    const EndpointInfo& info(Side s) const { return s == Side::left ? left : right; }

    /// Coefficients at an interior point; throws DomainError if p or r is not positive.
    Coefficients coeffs(double x) const;
    /// Coefficients at distance d from a finite endpoint.
    Coefficients coeffs_near(Side s, double d) const;

    bool contains(double x) const;
    /// Throws ArgumentError when a >= b or coefficient functions are missing.
    void validate() const;
};

SLProblem make_problem(ExtReal a, ExtReal b, std::function<double(double)> p,
                       std::function<double(double)> q, std::function<double(double)> r,
                       std::string name = {});

/// W(f, g) = f.u * g.u1 - f.u1 * g.u
cplx wronskian(const SolutionState& f, const SolutionState& g);

/// τu = r^{-1} [ -(u1)' + q u ] given the derivative of the quasi-derivative.
cplx apply_tau(const SLProblem& problem, double x, cplx u, cplx u1, cplx u1_deriv);

enum class Direction { forward, backward };

struct Trajectory {
    std::vector<SolutionState> states;
    cplx z{};
    Direction direction = Direction::forward;

    const SolutionState& back() const { return states.back(); }
};

/// Position near an endpoint described by a distance parameter d > 0, d -> 0 at the endpoint.
/// Finite endpoints: x = e ± d. Infinite endpoints: x = ±1/d.
struct EndpointFrame {
    Side side;
    ExtReal e;

    double to_x(double d) const;
    double to_d(double x) const;
};

/// Evaluable solution of τu = λu. Implementations must be immutable and thread-safe.
class SolutionFunction {
public:
    virtual ~SolutionFunction() = default;
    virtual SolutionState at(double x) const = 0;
    /// Evaluation at distance d from a finite endpoint of the given side.
    virtual SolutionState near(Side side, double endpoint, double d) const;
};

Solution make_solution(std::function<SolutionState(double)> at);
Solution make_solution(std::function<SolutionState(double)> at,
                       std::function<SolutionState(Side, double, double)> near);
/// c1*f + c2*g
Solution combine(cplx c1, Solution f, cplx c2, Solution g);
Solution scale(cplx c, Solution f);

}  // namespace slspec
