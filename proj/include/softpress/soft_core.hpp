#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "softpress/digraph.hpp"

namespace softpress {

struct EnumerateOptions {
    /// Budget on DFS node expansions; CapExceeded past this.
    long long node_budget = 100'000'000;
};

/// Streams every Gamma-allowed coloring of the box. Axes listed in
/// periodic_axes (0-based) wrap, i.e. the constraint also ties the last layer
/// back to the first. Visitor receives the cell array (0-based colors).
/// Returns the number of colorings visited.
long long for_each_coloring(const DigraphTuple& gamma, const BoxShape& box,
                            const std::set<int>& periodic_axes,
                            const std::function<void(const std::vector<int>&)>& visit,
                            const EnumerateOptions& opts = {});

/// Materializing variant, for small instances and tests.
std::vector<Coloring> enumerate_colorings(const DigraphTuple& gamma, const BoxShape& box,
                                          const std::set<int>& periodic_axes = {},
                                          const EnumerateOptions& opts = {});

/// log sum over allowed colorings of exp(c(phi)^T u), computed streaming with
/// a running max shift. Returns -inf for an empty coloring set.
double log_grand_partition(const DigraphTuple& gamma, const BoxShape& box, const WeightVector& u,
                           const std::set<int>& periodic_axes = {},
                           const EnumerateOptions& opts = {});

/// log Z(m,u)/vol(m): a certified upper bound on the pressure (subadditivity).
double finite_pressure_upper(const DigraphTuple& gamma, const BoxShape& box,
                             const WeightVector& u, const EnumerateOptions& opts = {});

}  // namespace softpress
