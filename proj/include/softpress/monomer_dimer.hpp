#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "softpress/digraph.hpp"
#include "softpress/spectral.hpp"

namespace softpress::md {

/// Log-weights of a half-dimer per direction; the monomer weight is pinned at
/// e^0 = 1. For d=2 the derived x = e^{v1} (in-ring) and y = e^{v2}.
struct DimerWeights {
    double v1 = 0.0;
    double v2 = 0.0;
    double x() const;
    double y() const;
};

/// The 2d+1 color NNSOFT encoding of monomer-dimer tilings of Z^d:
/// axis-k edges (p,q) iff (p = k and q = k+d) or (p != k and q != d+k).
DigraphTuple md_digraph(int d);
/// Embedding u0 = (v^T, v^T, 0) giving each half-dimer in direction k the
/// weight e^{v_k}.
WeightVector md_weights(const std::vector<double>& v);

/// Monomer-dimer tilings of an L-site path, coefficient of x^{2k} = number of
/// tilings with k dimers. T_L = T_{L-1} + x^2 T_{L-2}, T_0 = T_1 = 1.
struct RingPolynomial {
    std::vector<std::uint64_t> coeff;  // index k = dimer count
    double eval_x(double x) const;     // sum coeff[k] x^{2k}
    std::uint64_t tilings() const;     // value at x = 1
};

RingPolynomial path_tiling_poly(int L);

/// Weighted tilings of the ring sites left free by `occupied` on the m-torus.
/// occupied = 0 uses the cycle count T_m + x^2 T_{m-2} (m >= 2; a 1-ring has
/// no dimer), occupied = full gives 1.
double free_set_weight(int m, std::uint32_t occupied, double x);
/// x * d/dx of the same weight (per-run product rule); used by exact densities.
double free_set_weight_dx(int m, std::uint32_t occupied, double x);

/// Dihedral (rotation + reflection) orbits of the 2^m subset masks.
struct OrbitTable {
    int m = 0;
    std::vector<std::int32_t> orbit_id;       // per mask
    std::vector<std::uint32_t> representative;  // per orbit
    std::vector<std::int32_t> orbit_size;       // per orbit
    std::size_t orbit_count() const { return representative.size(); }
};

OrbitTable build_orbits(int m);

struct MdOptions {
    int max_m = 20;           // matrix-free cap
    int max_m_reduced = 17;   // dense quotient cap
    SpectralOptions spectral;
};

/// The 2^m symmetric transfer operator B(m,v)_{S,T} = y^{#S+#T} f(x,S,T)
/// (zero when S and T intersect), matrix-free over submask enumeration.
class FullB final : public NonnegOperator {
  public:
    FullB(int m, DimerWeights v);
    std::size_t dim() const override { return std::size_t{1} << m_; }
    bool is_symmetric() const override { return true; }
    void apply(std::span<const double> x, std::span<double> y) const override;
    double entry(std::uint32_t S, std::uint32_t T) const;
    DenseMatrix materialize() const;  // small m only

  private:
    int m_;
    DimerWeights v_;
    std::vector<double> g_;     // f(x, mask) per combined mask
    std::vector<double> ypow_;  // y^k, k = 0..2m
};

/// Dihedral quotient of B(m,v): entries sum B over the column orbit, rescaled
/// by sqrt(|orbit(S)|/|orbit(T)|) so the quotient stays symmetric with the
/// same Perron root.
struct ReducedB {
    std::shared_ptr<const OrbitTable> orbits;
    DenseMatrix matrix;       // B reduced
    DenseMatrix d1, d2;       // reduced dB/dv1, dB/dv2 (built on demand)
    bool with_derivatives = false;
};

ReducedB build_reduced_B(int m, DimerWeights v, bool with_derivatives = false,
                         const MdOptions& opts = {});

/// Operator form of B(m,v): the matrix-free full operator, or the dense
/// dihedral quotient when reduce is set.
std::unique_ptr<NonnegOperator> build_B(int m, DimerWeights v, bool reduce,
                                        const MdOptions& opts = {});

/// P̄_{d-1}(m, v) for d = 2: log rho(B(m,v)) through the reduced operator;
/// P̄(0, v) := log 2.
double pbar1_md(int m, DimerWeights v, const MdOptions& opts = {});

struct PressureEstimate {
    double value = 0.0;  // midpoint
    double lower = 0.0;
    double upper = 0.0;
    int m_upper = 0, m_lo_hi = 0, m_lo_lo = 0;
    DimerWeights v;
};

/// Sandwich for the d=2 pressure: upper = P̄(m_upper,v)/m_upper with m_upper
/// even, lower = (P̄(m_lo_hi,v) - P̄(m_lo_lo,v))/(m_lo_hi - m_lo_lo) with
/// m_lo_lo even (0 allowed).
PressureEstimate md_bounds(int m_upper, int m_lo_hi, int m_lo_lo, DimerWeights v,
                           const MdOptions& opts = {});

struct DensityRecord {
    double p1 = 0.0, p2 = 0.0;  // dimer site-coverage per direction
    double h = 0.0;             // density entropy, filled by entropy_2d
    std::string method;         // "exact" or "fd(t)"
};

DensityRecord dimer_densities_exact(int m, DimerWeights v, const MdOptions& opts = {});
DensityRecord dimer_densities_fd(int m, DimerWeights v, double t, const MdOptions& opts = {});

/// h ≈ P̄(m,v)/m - p1 v1 - p2 v2 with forward-difference densities.
/// Throws NegativeEntropy below -1e-6 (signals an m/t mismatch).
DensityRecord entropy_2d(int m, DimerWeights v, double t, const MdOptions& opts = {});

struct BaxterRow {
    double s_inv = 0.0;
    double v = 0.0;  // log s
    double lower = 0.0, upper = 0.0;
    double p_total = 0.0;  // p1 + p2
    double entropy = 0.0;
    int m_upper = 0, m_lo_hi = 0, m_lo_lo = 0;
    double t = 0.0;
};

/// One row of the Baxter comparison table at v = (log s, log s).
BaxterRow baxter_row(double s, int m_upper, int m_lo_hi, int m_lo_lo, double t,
                     const MdOptions& opts = {});

/// The 18 s^{-1} values of the reference table.
const std::vector<double>& baxter_s_inverses();

/// Production m-ladder used for the reference table at a given s^{-1}:
/// upper 16, lower (16,14) for s^{-1} <= 0.3, lower (17,16) otherwise.
void baxter_production_params(double s_inv, int& m_upper, int& m_lo_hi, int& m_lo_lo);

struct SeriesValue {
    double value = 0.0;
    double error_bound = 0.0;
};

/// Dimer entropy of Z^2: (1/pi) sum (-1)^r / (2r+1)^2, alternating-series
/// error bound alongside.
SeriesValue fisher_kasteleyn_series(std::int64_t terms);

}  // namespace softpress::md
