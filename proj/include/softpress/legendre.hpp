#pragma once

#include <functional>
#include <string>
#include <vector>

#include "softpress/digraph.hpp"

namespace softpress {

/// A sampled pressure function: (u, P(u)) pairs over some grid or segment.
struct PressureSamples {
    int dim = 0;
    std::vector<std::pair<WeightVector, double>> points;
    std::string source;
};

struct ConjugateResult {
    double value = 0.0;      // max over samples of p^T u - P(u); lower bound on P*
    WeightVector argmax_u;
    bool on_boundary = false;  // max attained only at grid-extremal samples
};

/// Grid Legendre-Fenchel conjugate. on_boundary flags values that keep
/// growing with the grid radius (p outside the reachable slopes).
ConjugateResult conjugate_on_grid(const PressureSamples& samples, const WeightVector& p);

/// h(p) = -P*(p) on subgradient points; grid-limited like the conjugate.
double density_entropy_from_conjugate(const PressureSamples& samples, const WeightVector& p);

using PressureFn = std::function<double(const WeightVector&)>;

struct KinkReport {
    WeightVector location;
    WeightVector direction;  // unit vector along the scanned segment
    double left_slope = 0.0;
    double right_slope = 0.0;
    double gap = 0.0;  // right - left
    double t = 0.0;    // arc-length position along the segment
};

struct ScanOptions {
    int steps = 64;
    double h = 1e-4;        // one-sided difference step
    double gap_tol = -1.0;  // < 0 means the default 20*h
};

/// Walks the segment [u_a, u_b], flags points where the one-sided directional
/// difference quotients jump by more than gap_tol, refines each flag by
/// bisection to about segment-length/steps^2.
std::vector<KinkReport> phase_transition_scan(const PressureFn& pressure, const WeightVector& u_a,
                                              const WeightVector& u_b, const ScanOptions& opts = {});

std::string kinks_to_json(const std::vector<KinkReport>& kinks);

struct DiagnosticsConfig {
    int dim = 0;
    WeightVector center;       // defaults to 0
    double radius = 1.0;       // || . ||_inf ball around center
    int trials = 200;
    std::uint64_t seed = 12345;
    bool check_lipschitz = true;
    bool check_shift = true;
    bool check_convexity = true;
    /// Optional recorded (p, h) pairs for the max-characterization check
    /// P(u) >= p^T u + h.
    std::vector<std::pair<WeightVector, double>> maxchar_pairs;
};

struct DiagnosticsReport {
    double worst_lipschitz = 0.0;  // max(|P(u+v)-P(u)| - ||v||_inf, 0)
    double worst_shift = 0.0;      // max |P(u + t 1) - P(u) - t|
    double worst_convexity = 0.0;  // max(P(mid) - (P(a)+P(b))/2, 0)
    double worst_maxchar = 0.0;    // max(p^T u + h - P(u), 0)
    bool pass(double tol) const;
};

/// Randomized convex-analysis checks shared by every pressure implementation.
DiagnosticsReport convex_diagnostics(const PressureFn& pressure, const DiagnosticsConfig& cfg);

}  // namespace softpress
