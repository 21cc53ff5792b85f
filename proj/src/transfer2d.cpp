#include "softpress/transfer2d.hpp"

#include <cmath>
#include <limits>

#include "softpress/errors.hpp"
#include "softpress/pressure1d.hpp"

namespace softpress {

namespace {

void require_d2(const DigraphTuple& gamma) {
    gamma.validate();
    if (gamma.d != 2) throw Unsupported("transfer-2d handles d = 2 only");
}

std::vector<int> count_colors(const std::vector<int>& word, int n) {
    std::vector<int> c(static_cast<size_t>(n), 0);
    for (int a : word) c[static_cast<size_t>(a)]++;
    return c;
}

/// Sitewise compatibility of two equal-length columns under a digraph.
bool columns_compatible(const Digraph& g, const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!g.edge(a[i], b[i])) return false;
    return true;
}

DenseMatrix column_transfer(const Digraph& step, const std::vector<std::vector<int>>& cols,
                            const std::vector<double>& half_weight) {
    const std::size_t n = cols.size();
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (columns_compatible(step, cols[i], cols[j]))
                m(i, j) = std::exp(half_weight[i] + half_weight[j]);
    return m;
}

std::vector<double> half_weights(const std::vector<std::vector<int>>& counts,
                                 const WeightVector& u) {
    std::vector<double> w(counts.size(), 0.0);
    for (std::size_t s = 0; s < counts.size(); ++s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) acc += counts[s][i] * u[i];
        w[s] = 0.5 * acc;
    }
    return w;
}

}  // namespace

RingStateSpace ring_states(const Digraph& gamma1, int m, std::size_t max_states) {
    if (m < 1) throw DomainError("ring circumference must be at least 1");
    RingStateSpace sp;
    sp.m = m;
    std::vector<int> word(static_cast<size_t>(m), -1);
    // Depth-first over positions in lexicographic color order; the wrap pair
    // is checked when the last site is placed.
    auto place = [&](auto&& self, int pos) -> void {
        if (pos == m) {
            sp.states.push_back(word);
            sp.counts.push_back(count_colors(word, gamma1.n()));
            if (sp.states.size() > max_states)
                throw StateSpaceTooLarge("ring state space exceeds the configured budget");
            return;
        }
        for (int c = 0; c < gamma1.n(); ++c) {
            if (pos > 0 && !gamma1.edge(word[static_cast<size_t>(pos - 1)], c)) continue;
            if (pos == m - 1) {
                int first = (m == 1) ? c : word[0];
                if (!gamma1.edge(c, first)) continue;
            }
            word[static_cast<size_t>(pos)] = c;
            self(self, pos + 1);
        }
        word[static_cast<size_t>(pos)] = -1;
    };
    place(place, 0);
    return sp;
}

RingTransfer build_ring_transfer(const DigraphTuple& gamma, int m, const WeightVector& u,
                                 const Transfer2DOptions& opts) {
    require_d2(gamma);
    if (static_cast<int>(u.size()) != gamma.n)
        throw DomainError("weight vector length does not match color count");
    if (!gamma.axis_symmetric(0))
        throw NotSymmetric("ring transfer needs a symmetric first axis");
    RingTransfer rt;
    rt.space = ring_states(gamma.axis(0), m, opts.max_states);
    rt.u = u;
    rt.matrix = column_transfer(gamma.axis(1), rt.space.states, half_weights(rt.space.counts, u));
    return rt;
}

StripTransfer build_strip_transfer(const DigraphTuple& gamma, int m2, const WeightVector& u,
                                   const Transfer2DOptions& opts) {
    require_d2(gamma);
    if (m2 < 1) throw DomainError("strip height must be at least 1");
    if (static_cast<int>(u.size()) != gamma.n)
        throw DomainError("weight vector length does not match color count");
    StripTransfer st;
    st.m2 = m2;
    st.u = u;
    // Free-boundary columns: walks of length m2-1 on Gamma_2.
    const Digraph& g2 = gamma.axis(1);
    std::vector<int> word(static_cast<size_t>(m2), -1);
    auto place = [&](auto&& self, int pos) -> void {
        if (pos == m2) {
            st.columns.push_back(word);
            st.counts.push_back(count_colors(word, gamma.n));
            if (st.columns.size() > opts.max_states)
                throw StateSpaceTooLarge("strip state space exceeds the configured budget");
            return;
        }
        for (int c = 0; c < gamma.n; ++c) {
            if (pos > 0 && !g2.edge(word[static_cast<size_t>(pos - 1)], c)) continue;
            word[static_cast<size_t>(pos)] = c;
            self(self, pos + 1);
        }
        word[static_cast<size_t>(pos)] = -1;
    };
    place(place, 0);
    auto hw = half_weights(st.counts, u);
    st.matrix = column_transfer(gamma.axis(0), st.columns, hw);
    st.boundary.resize(hw.size());
    for (std::size_t i = 0; i < hw.size(); ++i) st.boundary[i] = std::exp(hw[i]);
    return st;
}

double pbar(const DigraphTuple& gamma, int m, const WeightVector& u,
            const Transfer2DOptions& opts) {
    require_d2(gamma);
    if (m < 0) throw DomainError("ring circumference must be nonnegative");
    if (m == 0) {
        // Degenerate case: the 1D entropy of Gamma_2, regardless of u.
        WeightVector zero(static_cast<size_t>(gamma.n), 0.0);
        return pressure_1d(gamma.axis(1), zero, opts.spectral);
    }
    RingTransfer rt = build_ring_transfer(gamma, m, u, opts);
    if (rt.space.states.empty()) return -std::numeric_limits<double>::infinity();
    auto res = spectral_radius(DenseOperator(rt.matrix), opts.spectral);
    if (res.rho == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(res.rho);
}

PressureEstimate sandwich_bounds(const DigraphTuple& gamma, int r, int p, int q,
                                 const WeightVector& u, const Transfer2DOptions& opts) {
    if (r < 1 || p < 1 || q < 0) throw DomainError("need r, p >= 1 and q >= 0");
    PressureEstimate est;
    est.r = r;
    est.p = p;
    est.q = q;
    est.u = u;
    est.upper = pbar(gamma, 2 * r, u, opts) / (2.0 * r);
    est.lower = (pbar(gamma, p + 2 * q, u, opts) - pbar(gamma, 2 * q, u, opts)) / p;
    // Collapsed brackets can land a noise-level hair above the upper bound;
    // snap those shut, leave anything beyond the noise budget visible.
    if (est.lower > est.upper &&
        est.lower - est.upper <= 1e-10 * std::max(1.0, std::abs(est.upper)))
        est.lower = est.upper;
    est.value = 0.5 * (est.lower + est.upper);
    return est;
}

double strip_upper_bound(const DigraphTuple& gamma, int m2, const WeightVector& u,
                         const Transfer2DOptions& opts) {
    StripTransfer st = build_strip_transfer(gamma, m2, u, opts);
    if (st.columns.empty()) return -std::numeric_limits<double>::infinity();
    auto res = spectral_radius(DenseOperator(st.matrix), opts.spectral);
    if (res.rho == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(res.rho) / m2;
}

std::vector<double> ring_gradient(const DigraphTuple& gamma, int m, const WeightVector& u,
                                  const Transfer2DOptions& opts) {
    if (m < 1) throw DomainError("ring gradient needs m >= 1");
    RingTransfer rt = build_ring_transfer(gamma, m, u, opts);
    auto res = perron_pair(DenseOperator(rt.matrix), opts.spectral);
    const auto& counts = rt.space.counts;
    const std::size_t ns = rt.space.states.size();
    std::vector<double> grad(static_cast<size_t>(gamma.n), 0.0);
    // y^T (d_i M) x with the analytic entry multiplier (c_i(a)+c_i(b))/2,
    // normalized per site by m*rho.
    for (std::size_t a = 0; a < ns; ++a) {
        for (std::size_t b = 0; b < ns; ++b) {
            double mab = rt.matrix(a, b);
            if (mab == 0.0) continue;
            double w = res.left_vec[a] * mab * res.right_vec[b];
            for (int i = 0; i < gamma.n; ++i) {
                double mult = 0.5 * (counts[a][static_cast<size_t>(i)] +
                                     counts[b][static_cast<size_t>(i)]);
                if (mult != 0.0) grad[static_cast<size_t>(i)] += w * mult;
            }
        }
    }
    for (double& g : grad) g /= m * res.rho;
    return grad;
}

}  // namespace softpress
