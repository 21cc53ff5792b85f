#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace softpress {

/// Potential on colors, u[i] = log-weight of color i. Colors are 1-based in
/// file formats and error messages, 0-based in code.
using WeightVector = std::vector<double>;

/// A single-axis constraint digraph on n colors, stored as a dense adjacency
/// matrix (n is small in every model we care about).
class Digraph {
  public:
    Digraph() = default;
    Digraph(int n, const std::vector<std::pair<int, int>>& edges_1based);

    static Digraph complete(int n);
    static Digraph from_adjacency(std::vector<std::vector<bool>> adj);
    /// Hard-core chain: color 1 = occupied, color 2 = empty, no two adjacent
    /// occupied sites. Edge set {(1,2),(2,1),(2,2)}.
    static Digraph hardcore();

    int n() const { return n_; }
    bool edge(int p, int q) const { return adj_[static_cast<size_t>(p) * n_ + q]; }
    bool symmetric() const;
    bool empty() const;
    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;  // 0-based
    Digraph reversed() const;
    Digraph induced(const std::vector<int>& vertices) const;

  private:
    int n_ = 0;
    std::vector<char> adj_;
};

/// The constraint system Gamma = (Gamma_1, ..., Gamma_d) on n colors.
struct DigraphTuple {
    int n = 0;
    int d = 0;
    std::vector<Digraph> axes;

    const Digraph& axis(int k) const { return axes.at(static_cast<size_t>(k)); }
    bool axis_symmetric(int k) const { return axes.at(static_cast<size_t>(k)).symmetric(); }
    /// True when every axis is empty; such a SOFT has pressure -inf by convention.
    bool all_axes_empty() const;
    void validate() const;
};

struct BoxShape {
    std::vector<int> dims;

    long long vol() const {
        long long v = 1;
        for (int m : dims) v *= m;
        return v;
    }
    int d() const { return static_cast<int>(dims.size()); }
};

/// One coloring of a box, colors 0-based, cells row-major in axis order
/// (last axis varies fastest).
struct Coloring {
    BoxShape shape;
    std::vector<int> cells;
};

/// Per-color site counts of a coloring.
std::vector<long long> color_count(const Coloring& c, int n);

/// Parse / serialize the digraph JSON format:
///   {"n": int, "d": int, "axes": [[[p,q],...], ...]}  with 1-based colors.
DigraphTuple digraph_from_json(const std::string& text);
DigraphTuple load_digraph(const std::string& path);
std::string digraph_to_json(const DigraphTuple& g);

}  // namespace softpress
