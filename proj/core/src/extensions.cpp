#include "slspec/extensions.hpp"

#include <cmath>

#include "slspec/oracles/special_functions.hpp"

namespace slspec {

namespace {

constexpr double two_pi = 2.0 * oracles::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// M J M* with J = [[0, -1], [1, 0]].
Mat2 mjm(const Mat2& m) {
    Mat2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = -m[i][0] * std::conj(m[j][1]) + m[i][1] * std::conj(m[j][0]);
    return out;
}

const BoundaryValuePair& need(const std::optional<BoundaryValuePair>& v, const char* which) {
    if (!v) throw ArgumentError(std::string("residual: missing boundary values at ") + which);
    return *v;
}

}  // namespace

bool BoundaryCondition::applies_at(Side s) const {
    return std::visit(overloaded{
                          [&](const Separated& c) { return s == Side::left ? c.alpha.has_value() : c.beta.has_value(); },
                          [](const Coupled&) { return true; },
                          [](const MatrixPair&) { return true; },
                          [&](const Friedrichs& c) { return s == Side::left ? c.at_a : c.at_b; },
                      },
                      kind);
}

BoundaryCondition separated(std::optional<double> alpha, std::optional<double> beta) {
    for (const auto& t : {alpha, beta})
        if (t && !(*t >= 0.0 && *t < oracles::pi)) throw ArgumentError("separated: angles must lie in [0, pi)");
    return {Separated{alpha, beta}};
}

BoundaryCondition coupled(double phi, const RealMat2& R) {
    if (!(phi >= 0.0 && phi < two_pi)) throw ArgumentError("coupled: phi must lie in [0, 2pi)");
    return {Coupled{phi, R}};
}

BoundaryCondition matrix_pair(const Mat2& A, const Mat2& B) { return {MatrixPair{A, B}}; }

BoundaryCondition friedrichs(const SLProblem&, const EndpointClasses& classes) {
    return {Friedrichs{classes.left == EndpointClass::limit_circle, classes.right == EndpointClass::limit_circle}};
}

void check_endpoints(const BoundaryCondition& bc, const EndpointClasses& classes) {
    if (bc.applies_at(Side::left) && classes.left == EndpointClass::limit_point)
        throw ArgumentError("boundary condition references the limit-point endpoint a");
    if (bc.applies_at(Side::right) && classes.right == EndpointClass::limit_point)
        throw ArgumentError("boundary condition references the limit-point endpoint b");
}

MatrixPair to_matrix(const BoundaryCondition& bc) {
    return std::visit(overloaded{
                          [](const Separated& c) {
                              MatrixPair m{};
                              if (c.alpha) m.A[0] = {std::cos(*c.alpha), std::sin(*c.alpha)};
                              if (c.beta) m.B[1] = {-std::cos(*c.beta), -std::sin(*c.beta)};
                              return m;
                          },
                          [](const Coupled& c) {
                              MatrixPair m{};
                              const cplx ph = std::polar(1.0, c.phi);
                              for (int i = 0; i < 2; ++i)
                                  for (int j = 0; j < 2; ++j) m.A[i][j] = ph * c.R[i][j];
                              m.B[0][0] = m.B[1][1] = 1.0;
                              return m;
                          },
                          [](const MatrixPair& c) { return c; },
                          [](const Friedrichs& c) {
                              MatrixPair m{};
                              if (c.at_a) m.A[0] = {1.0, 0.0};
                              if (c.at_b) m.B[1] = {-1.0, 0.0};
                              return m;
                          },
                      },
                      bc.kind);
}

ValidityReport validate(const BoundaryCondition& bc) {
    ValidityReport rep;
    if (const auto* c = std::get_if<Coupled>(&bc.kind)) {
        const double det = c->R[0][0] * c->R[1][1] - c->R[0][1] * c->R[1][0];
        rep.identity_defect = std::abs(det - 1.0);
        rep.rank_measure = 1.0;
        rep.valid = rep.identity_defect <= 1e-12;
        if (!rep.valid) rep.reason = "det(R) differs from 1";
        return rep;
    }
    if (!std::holds_alternative<MatrixPair>(bc.kind)) {
        rep.valid = true;
        rep.rank_measure = 1.0;
        return rep;
    }
    MatrixPair m = std::get<MatrixPair>(bc.kind);
    double big = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) big = std::max({big, std::abs(m.A[i][j]), std::abs(m.B[i][j])});
    if (big == 0.0) {
        rep.reason = "zero matrix pair";
        return rep;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            m.A[i][j] /= big;
            m.B[i][j] /= big;
        }
    // rank of the 2x4 block via its largest 2x2 minor
    std::array<std::array<cplx, 4>, 2> blk{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            blk[i][j] = m.A[i][j];
            blk[i][j + 2] = m.B[i][j];
        }
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q)
            rep.rank_measure = std::max(rep.rank_measure, std::abs(blk[0][p] * blk[1][q] - blk[0][q] * blk[1][p]));
    const Mat2 l = mjm(m.A), r = mjm(m.B);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rep.identity_defect = std::max(rep.identity_defect, std::abs(l[i][j] - r[i][j]));
    const bool rank_ok = rep.rank_measure > 1e-10;
    const bool ident_ok = rep.identity_defect <= 1e-10;
    rep.valid = rank_ok && ident_ok;
    if (!rank_ok) rep.reason = "rank(A B) < 2";
    else if (!ident_ok) rep.reason = "AJA* differs from BJB*";
    return rep;
}

std::vector<cplx> residual(const BoundaryCondition& bc, const std::optional<BoundaryValuePair>& at_a,
                           const std::optional<BoundaryValuePair>& at_b) {
    return std::visit(
        overloaded{
            [&](const Separated& c) {
                std::vector<cplx> out;
                if (c.alpha) {
                    const auto& v = need(at_a, "a");
                    out.push_back(v.g_tilde * std::cos(*c.alpha) + v.g_tilde_prime * std::sin(*c.alpha));
                }
                if (c.beta) {
                    const auto& v = need(at_b, "b");
                    out.push_back(v.g_tilde * std::cos(*c.beta) + v.g_tilde_prime * std::sin(*c.beta));
                }
                return out;
            },
            [&](const Coupled& c) {
                const auto& va = need(at_a, "a");
                const auto& vb = need(at_b, "b");
                const cplx ph = std::polar(1.0, c.phi);
                return std::vector<cplx>{
                    vb.g_tilde - ph * (c.R[0][0] * va.g_tilde + c.R[0][1] * va.g_tilde_prime),
                    vb.g_tilde_prime - ph * (c.R[1][0] * va.g_tilde + c.R[1][1] * va.g_tilde_prime)};
            },
            [&](const MatrixPair& c) {
                const auto& va = need(at_a, "a");
                const auto& vb = need(at_b, "b");
                std::vector<cplx> out(2);
                for (int i = 0; i < 2; ++i)
                    out[i] = c.A[i][0] * va.g_tilde + c.A[i][1] * va.g_tilde_prime - c.B[i][0] * vb.g_tilde -
                             c.B[i][1] * vb.g_tilde_prime;
                return out;
            },
            [&](const Friedrichs& c) {
                std::vector<cplx> out;
                if (c.at_a) out.push_back(need(at_a, "a").g_tilde);
                if (c.at_b) out.push_back(need(at_b, "b").g_tilde);
                return out;
            },
        },
        bc.kind);
}

}  // namespace slspec
