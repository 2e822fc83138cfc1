#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slspec/integrator.hpp"
#include "slspec/model.hpp"

namespace slspec {

enum class Verdict { limit_circle, limit_point, inconclusive };

const char* to_string(Verdict v);

/// Window-by-window evidence for ∫ r|u|² toward the endpoint.
struct TailEstimate {
    /// ln of the accumulated integral over all processed windows.
    double log_integral = 0.0;
    bool convergent = false;
    bool divergent = false;
    /// Ratios of consecutive window integrals, ordered toward the endpoint.
    std::vector<double> ratios;
};

struct EndpointReport {
    Side endpoint = Side::left;
    Verdict verdict = Verdict::inconclusive;
    cplx z_used{};
    std::vector<TailEstimate> l2_tail_estimates;
    bool oscillatory = false;
    /// Distances of the window boundaries from the endpoint (x-distance or 1/|x| at infinity).
    std::vector<double> windows;
    std::string note;
};

struct ClassifierConfig {
    IntegratorConfig integrator{};
    double ratio_threshold = 0.99;
    int run_length = 6;
    int max_windows_finite = 40;
    int max_windows_infinite = 20;
    /// 0 selects the default anchor distance.
    double anchor_distance = 0.0;
};

/// Weyl alternative at one endpoint. Real z is accepted only for endpoints with a known class.
EndpointReport classify_endpoint(const SLProblem& problem, Side endpoint, cplx z, const ClassifierConfig& cfg = {});

/// 2 for LC/LC, 1 for exactly one LC, 0 for LP/LP. Throws ArgumentError on an inconclusive verdict.
int deficiency_indices(const std::pair<EndpointReport, EndpointReport>& reports);

/// True when a real solution at λ has no sign change over the final windows toward the endpoint.
bool is_nonoscillatory(const SLProblem& problem, Side endpoint, double lambda, const ClassifierConfig& cfg = {});

/// Regular endpoints and catalog classes are taken as given; otherwise classifies at z = i.
EndpointClass endpoint_class(const SLProblem& problem, Side endpoint, const ClassifierConfig& cfg = {});

}  // namespace slspec
