#include "softpress/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "softpress/errors.hpp"

namespace softpress {

ConjugateResult conjugate_on_grid(const PressureSamples& samples, const WeightVector& p) {
    if (samples.points.empty()) throw EmptySamples("conjugate needs at least one sample");
    if (samples.dim <= 0 || static_cast<int>(p.size()) != samples.dim)
        throw DomainError("probability vector dimension does not match the samples");

    // Per-coordinate sample ranges, to tell extremal maximizers apart.
    WeightVector lo(p.size(), std::numeric_limits<double>::infinity());
    WeightVector hi(p.size(), -std::numeric_limits<double>::infinity());
    for (const auto& [u, pu] : samples.points) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            lo[j] = std::min(lo[j], u[j]);
            hi[j] = std::max(hi[j], u[j]);
        }
    }

    ConjugateResult out;
    out.value = -std::numeric_limits<double>::infinity();
    for (const auto& [u, pu] : samples.points) {
        double obj = -pu;
        for (std::size_t j = 0; j < p.size(); ++j) obj += p[j] * u[j];
        if (obj > out.value) {
            out.value = obj;
            out.argmax_u = u;
        }
    }
    // The conjugate is unbounded on the grid direction when the max is only
    // attained at grid-extremal samples (ignoring coordinates that do not vary).
    double tol = 1e-12 * std::max(1.0, std::abs(out.value));
    bool interior_hit = false;
    for (const auto& [u, pu] : samples.points) {
        double obj = -pu;
        for (std::size_t j = 0; j < p.size(); ++j) obj += p[j] * u[j];
        if (obj < out.value - tol) continue;
        bool extremal = false;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (hi[j] - lo[j] <= 0.0) continue;
            if (u[j] <= lo[j] || u[j] >= hi[j]) {
                extremal = true;
                break;
            }
        }
        if (!extremal) {
            interior_hit = true;
            break;
        }
    }
    out.on_boundary = !interior_hit;
    return out;
}

double density_entropy_from_conjugate(const PressureSamples& samples, const WeightVector& p) {
    return -conjugate_on_grid(samples, p).value;
}

namespace {

struct SegmentScan {
    const PressureFn& pressure;
    WeightVector origin;
    WeightVector dir;  // unit
    double length;

    WeightVector at(double t) const {
        WeightVector u = origin;
        for (std::size_t j = 0; j < u.size(); ++j) u[j] += t * dir[j];
        return u;
    }
    double P(double t) const { return pressure(at(t)); }
};

}  // namespace

std::vector<KinkReport> phase_transition_scan(const PressureFn& pressure, const WeightVector& u_a,
                                              const WeightVector& u_b, const ScanOptions& opts) {
    if (u_a.size() != u_b.size() || u_a.empty())
        throw DomainError("segment endpoints must share a positive dimension");
    if (opts.steps < 8) throw DomainError("scan needs at least 8 steps");
    double length = 0.0;
    for (std::size_t j = 0; j < u_a.size(); ++j) {
        double d = u_b[j] - u_a[j];
        length += d * d;
    }
    length = std::sqrt(length);
    if (length == 0.0) throw DomainError("segment endpoints coincide");

    SegmentScan seg{pressure, u_a, WeightVector(u_a.size()), length};
    for (std::size_t j = 0; j < u_a.size(); ++j) seg.dir[j] = (u_b[j] - u_a[j]) / length;

    const double h = opts.h;
    const double gap_tol = opts.gap_tol > 0 ? opts.gap_tol : 20.0 * h;
    // Central difference-quotient; nondecreasing in t for convex P, so a kink
    // shows up as a jump between adjacent sample points we can bisect on.
    auto slope_at = [&](double t) { return (seg.P(t + h) - seg.P(t - h)) / (2.0 * h); };

    const double step = length / opts.steps;
    std::vector<double> slope(static_cast<size_t>(opts.steps) + 1);
    for (int i = 0; i <= opts.steps; ++i) slope[static_cast<size_t>(i)] = slope_at(i * step);
    // Flag the intervals whose endpoint slopes jump by more than gap_tol.
    // Smooth high-curvature stretches get flagged too; the refinement below
    // shrinks the bracket until curvature cannot fake a jump, then rejects.
    std::vector<int> flagged;
    for (int i = 0; i < opts.steps; ++i)
        if (slope[static_cast<size_t>(i + 1)] - slope[static_cast<size_t>(i)] > gap_tol)
            flagged.push_back(i);

    std::vector<KinkReport> out;
    // Bisect down to the measurement scale 2h: over a bracket that small,
    // curvature contributes at most ~4h*P'' to the slope gap, so a smooth
    // flagged stretch falls below gap_tol while a real jump survives.
    const double target = 2.0 * h;
    std::size_t i = 0;
    while (i < flagged.size()) {
        std::size_t j = i;
        while (j + 1 < flagged.size() && flagged[j + 1] == flagged[j] + 1) ++j;
        double lo = flagged[i] * step;
        double hi = (flagged[j] + 1) * step;
        double g_lo = slope[static_cast<size_t>(flagged[i])];
        double g_hi = slope[static_cast<size_t>(flagged[j] + 1)];
        for (int iter = 0; iter < 60 && hi - lo > target; ++iter) {
            double mid = 0.5 * (lo + hi);
            double g_mid = slope_at(mid);
            if (g_mid - g_lo >= g_hi - g_mid) {
                hi = mid;
                g_hi = g_mid;
            } else {
                lo = mid;
                g_lo = g_mid;
            }
        }
        // One-sided slopes measured just outside the refined bracket, so a
        // genuine kink registers no matter where it sits inside.
        KinkReport k;
        k.t = 0.5 * (lo + hi);
        k.location = seg.at(k.t);
        k.direction = seg.dir;
        k.left_slope = (seg.P(lo) - seg.P(lo - h)) / h;
        k.right_slope = (seg.P(hi + h) - seg.P(hi)) / h;
        k.gap = k.right_slope - k.left_slope;
        if (k.gap > gap_tol) out.push_back(std::move(k));
        i = j + 1;
    }
    return out;
}

std::string kinks_to_json(const std::vector<KinkReport>& kinks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& k : kinks) {
        nlohmann::json j;
        j["u"] = k.location;
        j["direction"] = k.direction;
        j["left"] = k.left_slope;
        j["right"] = k.right_slope;
        j["gap"] = k.gap;
        arr.push_back(j);
    }
    return arr.dump(2);
}

bool DiagnosticsReport::pass(double tol) const {
    return worst_lipschitz <= tol && worst_shift <= tol && worst_convexity <= tol &&
           worst_maxchar <= tol;
}

DiagnosticsReport convex_diagnostics(const PressureFn& pressure, const DiagnosticsConfig& cfg) {
    if (cfg.dim < 1) throw DomainError("diagnostics need a positive dimension");
    WeightVector center = cfg.center;
    if (center.empty()) center.assign(static_cast<size_t>(cfg.dim), 0.0);
    if (static_cast<int>(center.size()) != cfg.dim)
        throw DomainError("center dimension mismatch");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-cfg.radius, cfg.radius);
    auto draw = [&]() {
        WeightVector u(center);
        for (auto& x : u) x += unif(rng);
        return u;
    };

    DiagnosticsReport rep;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        if (cfg.check_lipschitz) {
            WeightVector u = draw(), w(static_cast<size_t>(cfg.dim));
            double winf = 0.0;
            for (auto& x : w) {
                x = unif(rng);
                winf = std::max(winf, std::abs(x));
            }
            WeightVector uw = u;
            for (std::size_t j = 0; j < uw.size(); ++j) uw[j] += w[j];
            double viol = std::abs(pressure(uw) - pressure(u)) - winf;
            rep.worst_lipschitz = std::max(rep.worst_lipschitz, viol);
        }
        if (cfg.check_shift) {
            WeightVector u = draw();
            double t = unif(rng);
            WeightVector ut = u;
            for (auto& x : ut) x += t;
            rep.worst_shift = std::max(rep.worst_shift, std::abs(pressure(ut) - pressure(u) - t));
        }
        if (cfg.check_convexity) {
            WeightVector a = draw(), b = draw(), mid(a);
            for (std::size_t j = 0; j < mid.size(); ++j) mid[j] = 0.5 * (a[j] + b[j]);
            double viol = pressure(mid) - 0.5 * (pressure(a) + pressure(b));
            rep.worst_convexity = std::max(rep.worst_convexity, viol);
        }
        if (!cfg.maxchar_pairs.empty()) {
            WeightVector u = draw();
            double pu = pressure(u);
            for (const auto& [p, hval] : cfg.maxchar_pairs) {
                double lhs = hval;
                for (std::size_t j = 0; j < p.size(); ++j) lhs += p[j] * u[j];
                rep.worst_maxchar = std::max(rep.worst_maxchar, lhs - pu);
            }
        }
    }
    return rep;
}

}  // namespace softpress
