#pragma once

#include <vector>

#include "softpress/digraph.hpp"
#include "softpress/spectral.hpp"

namespace softpress {

/// Weighted adjacency matrix of a 1D SOFT: d_ij(u) = [edge] * e^{(u_i+u_j)/2},
/// plus the boundary vector 1(u)_i = e^{u_i/2} used by the finite-Z identity
/// Z(m,u) = 1(u)^T D^{m-1} 1(u).
struct Transfer1D {
    Digraph gamma;
    WeightVector u;
    DenseMatrix matrix;
    std::vector<double> boundary;
};

Transfer1D build_transfer_1d(const Digraph& gamma_axis, const WeightVector& u);

/// log of the Perron root; max over strongly connected components when the
/// digraph is reducible; -inf when no component carries a cycle.
double pressure_1d(const Digraph& gamma_axis, const WeightVector& u,
                   const SpectralOptions& opts = {});

/// Color frequencies (y_i x_i) from the Perron pair. Requires strong
/// connectivity; throws Reducible otherwise.
std::vector<double> gradient_1d(const Digraph& gamma_axis, const WeightVector& u,
                                const SpectralOptions& opts = {});

struct DensityRecord1D {
    std::vector<double> p;
    double h = 0.0;
};

/// h(p(u)) = -p(u)^T u + log rho(D(u)); strong connectivity required.
DensityRecord1D density_entropy_1d(const Digraph& gamma_axis, const WeightVector& u,
                                   const SpectralOptions& opts = {});

/// Reducible digraphs, the documented route: evaluate per strongly connected
/// component, return the record of the component with maximal pressure, with
/// the density embedded into the full color space (zeros elsewhere).
DensityRecord1D component_density_entropy(const Digraph& gamma_axis, const WeightVector& u,
                                          const SpectralOptions& opts = {});

/// Closed forms for the two-color hard-core chain at u = (s, 0).
struct HardcoreReference {
    double rho;
    double pressure;
    double density;  // frequency of the occupied color
};

HardcoreReference hardcore_reference(double s);
/// Inverse map s(p) = log(p(1-p)/(1-2p)^2), defined for p in (0, 1/2).
double hardcore_s_of_density(double p);
/// Density entropy of the chain at occupied-density p, p in (0, 1/2).
double hardcore_entropy_of_density(double p);

}  // namespace softpress
