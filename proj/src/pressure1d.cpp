#include "softpress/pressure1d.hpp"

#include <cmath>
#include <limits>

#include "softpress/errors.hpp"

namespace softpress {

namespace {

std::vector<std::vector<bool>> digraph_pattern(const Digraph& g) {
    std::vector<std::vector<bool>> p(static_cast<size_t>(g.n()),
                                     std::vector<bool>(static_cast<size_t>(g.n()), false));
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.edge(i, j)) p[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    return p;
}

WeightVector subvector(const WeightVector& u, const std::vector<int>& idx) {
    WeightVector s;
    s.reserve(idx.size());
    for (int i : idx) s.push_back(u[static_cast<size_t>(i)]);
    return s;
}

}  // namespace

Transfer1D build_transfer_1d(const Digraph& gamma_axis, const WeightVector& u) {
    const int n = gamma_axis.n();
    if (static_cast<int>(u.size()) != n)
        throw DomainError("weight vector length does not match color count");
    for (double x : u)
        if (!std::isfinite(x)) throw DomainError("weights must be finite");
    Transfer1D t;
    t.gamma = gamma_axis;
    t.u = u;
    t.matrix = DenseMatrix(static_cast<size_t>(n), static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (gamma_axis.edge(i, j))
                t.matrix(static_cast<size_t>(i), static_cast<size_t>(j)) =
                    std::exp(0.5 * (u[static_cast<size_t>(i)] + u[static_cast<size_t>(j)]));
    t.boundary.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        t.boundary[static_cast<size_t>(i)] = std::exp(0.5 * u[static_cast<size_t>(i)]);
    return t;
}

double pressure_1d(const Digraph& gamma_axis, const WeightVector& u, const SpectralOptions& opts) {
    const int n = gamma_axis.n();
    if (static_cast<int>(u.size()) != n)
        throw DomainError("weight vector length does not match color count");
    auto decomp = strong_components(digraph_pattern(gamma_axis));
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& comp : decomp.components) {
        if (comp.size() == 1) {
            int v = comp[0];
            if (!gamma_axis.edge(v, v)) continue;  // no cycle through this vertex
            best = std::max(best, u[static_cast<size_t>(v)]);
            continue;
        }
        Digraph sub = gamma_axis.induced(comp);
        Transfer1D t = build_transfer_1d(sub, subvector(u, comp));
        auto res = perron_pair(DenseOperator(t.matrix), opts);
        best = std::max(best, std::log(res.rho));
    }
    return best;
}

std::vector<double> gradient_1d(const Digraph& gamma_axis, const WeightVector& u,
                                const SpectralOptions& opts) {
    if (!is_irreducible(digraph_pattern(gamma_axis)))
        throw Reducible("gradient_1d needs a strongly connected digraph");
    Transfer1D t = build_transfer_1d(gamma_axis, u);
    auto res = perron_pair(DenseOperator(t.matrix), opts);
    std::vector<double> p(res.right_vec.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = res.left_vec[i] * res.right_vec[i];
    return p;
}

DensityRecord1D density_entropy_1d(const Digraph& gamma_axis, const WeightVector& u,
                                   const SpectralOptions& opts) {
    DensityRecord1D rec;
    rec.p = gradient_1d(gamma_axis, u, opts);
    double pu = 0.0;
    for (std::size_t i = 0; i < rec.p.size(); ++i) pu += rec.p[i] * u[i];
    rec.h = -pu + pressure_1d(gamma_axis, u, opts);
    return rec;
}

DensityRecord1D component_density_entropy(const Digraph& gamma_axis, const WeightVector& u,
                                          const SpectralOptions& opts) {
    const int n = gamma_axis.n();
    if (static_cast<int>(u.size()) != n)
        throw DomainError("weight vector length does not match color count");
    auto decomp = strong_components(digraph_pattern(gamma_axis));
    double best = -std::numeric_limits<double>::infinity();
    const std::vector<int>* winner = nullptr;
    for (const auto& comp : decomp.components) {
        double pr;
        if (comp.size() == 1) {
            if (!gamma_axis.edge(comp[0], comp[0])) continue;
            pr = u[static_cast<size_t>(comp[0])];
        } else {
            Transfer1D t = build_transfer_1d(gamma_axis.induced(comp), subvector(u, comp));
            pr = std::log(perron_pair(DenseOperator(t.matrix), opts).rho);
        }
        if (pr > best) {
            best = pr;
            winner = &comp;
        }
    }
    if (winner == nullptr) throw DomainError("digraph has no cycle; pressure is -inf");
    DensityRecord1D rec;
    rec.p.assign(static_cast<size_t>(n), 0.0);
    if (winner->size() == 1) {
        rec.p[static_cast<size_t>((*winner)[0])] = 1.0;
        rec.h = 0.0;
    } else {
        auto sub = density_entropy_1d(gamma_axis.induced(*winner), subvector(u, *winner), opts);
        for (std::size_t i = 0; i < winner->size(); ++i)
            rec.p[static_cast<size_t>((*winner)[i])] = sub.p[i];
        rec.h = sub.h;
    }
    return rec;
}

HardcoreReference hardcore_reference(double s) {
    if (!std::isfinite(s)) throw DomainError("hardcore_reference needs finite s");
    HardcoreReference r;
    double root = std::sqrt(1.0 + 4.0 * std::exp(s));
    r.rho = 0.5 * (1.0 + root);
    r.pressure = std::log(r.rho);
    r.density = 0.5 * (1.0 - 1.0 / root);
    return r;
}

double hardcore_s_of_density(double p) {
    if (!(p > 0.0 && p < 0.5)) throw DomainError("density must lie in (0, 1/2)");
    return std::log(p * (1.0 - p) / ((1.0 - 2.0 * p) * (1.0 - 2.0 * p)));
}

double hardcore_entropy_of_density(double p) {
    if (!(p > 0.0 && p < 0.5)) throw DomainError("density must lie in (0, 1/2)");
    return std::log((1.0 - p) / (1.0 - 2.0 * p)) - p * hardcore_s_of_density(p);
}

}  // namespace softpress
