#include "softpress/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "softpress/errors.hpp"

namespace softpress {

void DenseMatrix::apply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = data.data() + i * cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void DenseMatrix::apply_transpose(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = data.data() + i * cols;
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < cols; ++j) y[j] += row[j] * xi;
    }
}

bool DenseMatrix::is_symmetric(double tol) const {
    if (rows != cols) return false;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = i + 1; j < cols; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double trace_power(const DenseMatrix& a, int k) {
    if (k == 0) return static_cast<double>(a.rows);
    DenseMatrix p = a;
    for (int i = 1; i < k; ++i) p = matmul(p, a);
    double tr = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) tr += p(i, i);
    return tr;
}

void NonnegOperator::apply_transpose(std::span<const double> x, std::span<double> y) const {
    if (!is_symmetric())
        throw Unsupported("apply_transpose not available for this operator");
    apply(x, y);
}

DenseOperator::DenseOperator(DenseMatrix m) : m_(std::move(m)), symmetric_(m_.is_symmetric()) {}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
    m_.apply(x, y);
}

void DenseOperator::apply_transpose(std::span<const double> x, std::span<double> y) const {
    m_.apply_transpose(x, y);
}

namespace {

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Power iteration on M + I starting from all-ones. `transpose` flips the
/// apply direction so the same loop produces left vectors.
SpectralResult power_iterate(const NonnegOperator& op, const SpectralOptions& opts,
                             bool transpose) {
    const std::size_t n = op.dim();
    if (n == 0) throw DomainError("operator dimension must be at least 1");
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> z(n, 0.0);

    auto mul = [&](std::span<const double> in, std::span<double> out) {
        if (transpose)
            op.apply_transpose(in, out);
        else
            op.apply(in, out);
    };

    mul(x, z);
    const double norm_estimate = norm2(z);
    if (norm_estimate == 0.0) {
        // Nonnegative M with M*positive = 0 is the zero operator.
        SpectralResult res;
        res.rho = 0.0;
        res.right_vec = x;
        res.left_vec = x;
        res.residual = 0.0;
        res.iterations = 0;
        return res;
    }
    // Shift scaled to the operator: a fixed +I would crush the relative gap
    // of small-norm operators, a shift near rho roughly halves it at worst.
    const double shift = norm_estimate;

    std::deque<double> window;
    double rho = 0.0, residual = 0.0;
    for (long it = 1; it <= opts.max_iter; ++it) {
        // z = M x already holds here.
        if (op.is_symmetric()) {
            rho = dot(x, z);  // Rayleigh quotient, x is unit
        } else {
            rho = norm2(z);
        }
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = z[i] - rho * x[i];
            residual += r * r;
        }
        residual = std::sqrt(residual);

        const double scale = std::max(std::abs(rho), 1e-300);
        bool res_ok = residual <= opts.tol * scale;
        bool window_ok = false;
        window.push_back(rho);
        if (static_cast<int>(window.size()) > opts.window) {
            window.pop_front();
            window_ok = std::abs(window.back() - window.front()) <= opts.tol * scale;
        }
        if (res_ok && (window_ok || residual == 0.0)) {
            SpectralResult res;
            res.rho = rho;
            res.right_vec = x;
            res.left_vec = x;
            res.residual = residual;
            res.iterations = it;
            return res;
        }

        // Shifted step: x <- normalize(z + shift*x). The shift keeps periodic
        // patterns from oscillating; rho(M) = rho(M + cI) - c for nonnegative M.
        for (std::size_t i = 0; i < n; ++i) z[i] += shift * x[i];
        double nz = norm2(z);
        for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
        mul(x, z);
    }
    std::ostringstream os;
    os << "power iteration did not converge in " << opts.max_iter
       << " iterations (residual " << residual << ", rho " << rho << ")";
    throw NoConvergence(os.str(), rho, opts.max_iter);
}

void pattern_of_dense(const DenseMatrix& m, std::vector<std::vector<bool>>& pattern) {
    pattern.assign(m.rows, std::vector<bool>(m.cols, false));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m(i, j) != 0.0) pattern[i][j] = true;
}

}  // namespace

SpectralResult spectral_radius(const NonnegOperator& op, const SpectralOptions& opts) {
    return power_iterate(op, opts, false);
}

SpectralResult perron_pair(const NonnegOperator& op, const SpectralOptions& opts) {
    if (const auto* dense = dynamic_cast<const DenseOperator*>(&op)) {
        std::vector<std::vector<bool>> pattern;
        pattern_of_dense(dense->matrix(), pattern);
        if (!is_irreducible(pattern))
            throw Reducible("perron_pair needs an irreducible operator; decompose first");
    }
    SpectralResult right = power_iterate(op, opts, false);
    if (right.rho == 0.0) return right;
    if (op.is_symmetric()) return right;  // y = x, y^T x = 1 since x is unit

    SpectralResult left = power_iterate(op, opts, true);
    double s = dot(left.right_vec, right.right_vec);
    if (s <= 0.0) throw NoConvergence("left/right Perron vectors do not overlap", right.rho, 0);
    SpectralResult res = right;
    res.left_vec = left.right_vec;
    for (double& v : res.left_vec) v /= s;  // y^T x = 1
    // Bilinear estimate y^T M x: second-order accurate in the vector errors,
    // unlike the one-sided norm ratio.
    std::vector<double> z(op.dim());
    op.apply(res.right_vec, z);
    res.rho = dot(res.left_vec, z);
    res.residual = std::max(right.residual, left.residual);
    res.iterations = std::max(right.iterations, left.iterations);
    return res;
}

ComponentDecomposition strong_components(const std::vector<std::vector<bool>>& pattern) {
    const int n = static_cast<int>(pattern.size());
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (pattern[static_cast<size_t>(i)][static_cast<size_t>(j)])
                adj[static_cast<size_t>(i)].push_back(j);

    // Iterative Tarjan; components come out in reverse topological order,
    // which is exactly the block lower-triangular normal form.
    std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<size_t>(n), false);
    std::vector<int> stack;
    ComponentDecomposition out;
    out.order.assign(static_cast<size_t>(n), -1);
    int counter = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<size_t>(root)] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < adj[static_cast<size_t>(f.v)].size()) {
                int w = adj[static_cast<size_t>(f.v)][f.child++];
                if (index[static_cast<size_t>(w)] == -1) {
                    index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(f.v)] =
                        std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[static_cast<size_t>(frames.back().v)] =
                        std::min(low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
                if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = false;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    int id = static_cast<int>(out.components.size());
                    for (int w : comp) out.order[static_cast<size_t>(w)] = id;
                    out.components.push_back(std::move(comp));
                }
            }
        }
    }
    return out;
}

bool is_irreducible(const std::vector<std::vector<bool>>& pattern) {
    if (pattern.empty()) return false;
    if (pattern.size() == 1) return pattern[0][0];
    return strong_components(pattern).components.size() == 1;
}

}  // namespace softpress
