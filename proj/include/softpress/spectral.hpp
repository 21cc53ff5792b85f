#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace softpress {

/// Dense row-major matrix, just big enough for transfer operators.
struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    void apply(std::span<const double> x, std::span<double> y) const;
    void apply_transpose(std::span<const double> x, std::span<double> y) const;
    bool is_symmetric(double tol = 0.0) const;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
double trace_power(const DenseMatrix& a, int k);

/// A nonnegative linear operator, explicit or matrix-free.
class NonnegOperator {
  public:
    virtual ~NonnegOperator() = default;
    virtual std::size_t dim() const = 0;
    virtual bool is_symmetric() const = 0;
    virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
    /// Default falls back to apply() for symmetric operators.
    virtual void apply_transpose(std::span<const double> x, std::span<double> y) const;
};

class DenseOperator final : public NonnegOperator {
  public:
    explicit DenseOperator(DenseMatrix m);
    std::size_t dim() const override { return m_.rows; }
    bool is_symmetric() const override { return symmetric_; }
    void apply(std::span<const double> x, std::span<double> y) const override;
    void apply_transpose(std::span<const double> x, std::span<double> y) const override;
    const DenseMatrix& matrix() const { return m_; }

  private:
    DenseMatrix m_;
    bool symmetric_;
};

struct SpectralResult {
    double rho = 0.0;
    std::vector<double> right_vec;  // unit 2-norm
    std::vector<double> left_vec;   // unit 2-norm; equals right_vec when symmetric
    double residual = 0.0;          // ||M x - rho x||_2 at return
    long iterations = 0;
};

struct SpectralOptions {
    double tol = 1e-13;  // relative
    long max_iter = 200000;
    int window = 10;  // rho-delta stagnation window
};

/// Perron root by shifted power iteration (M + I, shift undone on return).
/// The shift makes periodic patterns converge; reducible inputs are legal and
/// land on the global Perron root because the start vector is all-ones.
SpectralResult spectral_radius(const NonnegOperator& op, const SpectralOptions& opts = {});

/// Positive left/right Perron pair of an irreducible operator, rescaled so
/// y^T x = 1 (left_vec holds y after rescaling, right_vec stays unit).
/// Throws Reducible when a pattern is supplied and fails the check.
SpectralResult perron_pair(const NonnegOperator& op, const SpectralOptions& opts = {});

struct ComponentDecomposition {
    std::vector<std::vector<int>> components;  // partition of 0..dim-1
    std::vector<int> order;  // component index per vertex, block lower-triangular
};

/// Tarjan decomposition of a zero/nonzero pattern. Components come out in an
/// order where every cross edge points from a later component to an earlier
/// one (normal form).
ComponentDecomposition strong_components(const std::vector<std::vector<bool>>& pattern);

/// Strongly connected as a matrix property: one component spanning everything,
/// and for dim 1 a nonzero diagonal.
bool is_irreducible(const std::vector<std::vector<bool>>& pattern);

}  // namespace softpress
