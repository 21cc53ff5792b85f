#pragma once

#include <vector>

#include "softpress/digraph.hpp"
#include "softpress/spectral.hpp"

namespace softpress {

struct Transfer2DOptions {
    /// Hard cap on cross-section state counts (dense operators).
    std::size_t max_states = 4096;
    SpectralOptions spectral;
};

/// Cyclically Gamma_1-allowed color columns of circumference m, canonically
/// ordered, with per-state color counts.
struct RingStateSpace {
    int m = 0;
    std::vector<std::vector<int>> states;
    std::vector<std::vector<int>> counts;  // color counts per state
};

RingStateSpace ring_states(const Digraph& gamma1, int m, std::size_t max_states = 4096);

/// Ring (periodic-circumference) transfer operator for a d=2 SOFT:
/// entries d_ab(u) = [columns compatible under Gamma_2] e^{(c(a)+c(b))^T u / 2}.
struct RingTransfer {
    RingStateSpace space;
    WeightVector u;
    DenseMatrix matrix;
};

RingTransfer build_ring_transfer(const DigraphTuple& gamma, int m, const WeightVector& u,
                                 const Transfer2DOptions& opts = {});

/// Free-boundary column transfer operator (Eq. strip bound), columns are
/// Gamma_2-colorings of a height-m2 segment, adjacency via Gamma_1.
struct StripTransfer {
    int m2 = 0;
    std::vector<std::vector<int>> columns;
    std::vector<std::vector<int>> counts;
    WeightVector u;
    DenseMatrix matrix;
    std::vector<double> boundary;  // e^{c(i)^T u / 2}
};

StripTransfer build_strip_transfer(const DigraphTuple& gamma, int m2, const WeightVector& u,
                                   const Transfer2DOptions& opts = {});

/// P̄(m, u): log spectral radius of the circumference-m ring operator; the
/// m = 0 degenerate case is the 1D entropy of Gamma_2 and ignores u.
double pbar(const DigraphTuple& gamma, int m, const WeightVector& u,
            const Transfer2DOptions& opts = {});

struct PressureEstimate {
    double value = 0.0;  // bracket midpoint
    double lower = 0.0;
    double upper = 0.0;
    int r = 0, p = 0, q = 0;
    WeightVector u;
};

/// Sandwich bounds: upper = P̄(2r,u)/(2r), lower = (P̄(p+2q,u) - P̄(2q,u))/p.
/// Requires Gamma_1 symmetric.
PressureEstimate sandwich_bounds(const DigraphTuple& gamma, int r, int p, int q,
                                 const WeightVector& u, const Transfer2DOptions& opts = {});

/// log rho(strip transfer)/m2, an upper bound on the pressure for every m2.
double strip_upper_bound(const DigraphTuple& gamma, int m2, const WeightVector& u,
                         const Transfer2DOptions& opts = {});

/// Color frequencies of the ring approximation: p_i = y^T (d_i D̃) x / (m rho),
/// with the entry multiplier (c_i(a)+c_i(b))/2 applied analytically.
std::vector<double> ring_gradient(const DigraphTuple& gamma, int m, const WeightVector& u,
                                  const Transfer2DOptions& opts = {});

}  // namespace softpress
