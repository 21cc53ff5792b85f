#include "softpress/soft_core.hpp"

#include <cmath>
#include <limits>

#include "softpress/errors.hpp"

namespace softpress {

namespace {

struct SiteChecks {
    // (earlier site, axis): require edge(cells[site], candidate)
    std::vector<std::pair<long long, int>> pred;
    // (first site on the axis line, axis): require edge(candidate, cells[site]);
    // the site may coincide with the one being placed (period-1 wrap).
    std::vector<std::pair<long long, int>> wrap;
};

struct Enumerator {
    const DigraphTuple& gamma;
    const BoxShape& box;
    long long vol;
    std::vector<SiteChecks> checks;
    std::vector<int> cells;
    long long budget;
    long long count = 0;
    const std::function<void(const std::vector<int>&)>& visit;

    Enumerator(const DigraphTuple& g, const BoxShape& b, const std::set<int>& periodic,
               long long node_budget, const std::function<void(const std::vector<int>&)>& fn)
        : gamma(g), box(b), vol(b.vol()), budget(node_budget), visit(fn) {
        const int d = g.d;
        std::vector<long long> stride(static_cast<size_t>(d), 1);
        for (int k = d - 2; k >= 0; --k)
            stride[static_cast<size_t>(k)] =
                stride[static_cast<size_t>(k + 1)] * b.dims[static_cast<size_t>(k + 1)];
        checks.resize(static_cast<size_t>(vol));
        std::vector<int> coord(static_cast<size_t>(d), 0);
        for (long long idx = 0; idx < vol; ++idx) {
            auto& c = checks[static_cast<size_t>(idx)];
            for (int k = 0; k < d; ++k) {
                int mk = b.dims[static_cast<size_t>(k)];
                if (coord[static_cast<size_t>(k)] > 0)
                    c.pred.emplace_back(idx - stride[static_cast<size_t>(k)], k);
                if (periodic.count(k) && coord[static_cast<size_t>(k)] == mk - 1)
                    c.wrap.emplace_back(idx - static_cast<long long>(mk - 1) * stride[static_cast<size_t>(k)], k);
            }
            for (int k = d - 1; k >= 0; --k) {
                if (++coord[static_cast<size_t>(k)] < b.dims[static_cast<size_t>(k)]) break;
                coord[static_cast<size_t>(k)] = 0;
            }
        }
        cells.assign(static_cast<size_t>(vol), -1);
    }

    void run() { place(0); }

    void place(long long idx) {
        if (idx == vol) {
            ++count;
            visit(cells);
            return;
        }
        const auto& c = checks[static_cast<size_t>(idx)];
        for (int color = 0; color < gamma.n; ++color) {
            if (--budget < 0) throw CapExceeded("enumeration budget exhausted");
            bool ok = true;
            for (auto [prev, k] : c.pred) {
                if (!gamma.axis(k).edge(cells[static_cast<size_t>(prev)], color)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                for (auto [first, k] : c.wrap) {
                    int target = (first == idx) ? color : cells[static_cast<size_t>(first)];
                    if (!gamma.axis(k).edge(color, target)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            cells[static_cast<size_t>(idx)] = color;
            place(idx + 1);
        }
        cells[static_cast<size_t>(idx)] = -1;
    }
};

void check_box(const DigraphTuple& gamma, const BoxShape& box, const std::set<int>& periodic) {
    gamma.validate();
    if (box.d() != gamma.d) throw DomainError("box dimension does not match digraph d");
    for (int m : box.dims)
        if (m < 1) throw DomainError("box sides must be positive");
    for (int k : periodic)
        if (k < 0 || k >= gamma.d) throw DomainError("periodic axis index out of range");
}

}  // namespace

long long for_each_coloring(const DigraphTuple& gamma, const BoxShape& box,
                            const std::set<int>& periodic_axes,
                            const std::function<void(const std::vector<int>&)>& visit,
                            const EnumerateOptions& opts) {
    check_box(gamma, box, periodic_axes);
    Enumerator e(gamma, box, periodic_axes, opts.node_budget, visit);
    e.run();
    return e.count;
}

std::vector<Coloring> enumerate_colorings(const DigraphTuple& gamma, const BoxShape& box,
                                          const std::set<int>& periodic_axes,
                                          const EnumerateOptions& opts) {
    std::vector<Coloring> out;
    for_each_coloring(
        gamma, box, periodic_axes,
        [&](const std::vector<int>& cells) { out.push_back(Coloring{box, cells}); }, opts);
    return out;
}

double log_grand_partition(const DigraphTuple& gamma, const BoxShape& box, const WeightVector& u,
                           const std::set<int>& periodic_axes, const EnumerateOptions& opts) {
    if (static_cast<int>(u.size()) != gamma.n)
        throw DomainError("weight vector length does not match color count");
    for (double x : u)
        if (!std::isfinite(x)) throw DomainError("weights must be finite");
    // Streaming log-sum-exp with a running max shift; u entries up to +-40
    // must not overflow.
    double maxw = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for_each_coloring(
        gamma, box, periodic_axes,
        [&](const std::vector<int>& cells) {
            double w = 0.0;
            for (int c : cells) w += u[static_cast<size_t>(c)];
            if (w > maxw) {
                sum = sum * std::exp(maxw - w) + 1.0;
                maxw = w;
            } else {
                sum += std::exp(w - maxw);
            }
        },
        opts);
    if (sum == 0.0) return -std::numeric_limits<double>::infinity();
    return maxw + std::log(sum);
}

double finite_pressure_upper(const DigraphTuple& gamma, const BoxShape& box,
                             const WeightVector& u, const EnumerateOptions& opts) {
    return log_grand_partition(gamma, box, u, {}, opts) / static_cast<double>(box.vol());
}

}  // namespace softpress
