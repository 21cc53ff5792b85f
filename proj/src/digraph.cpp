#include "softpress/digraph.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "softpress/errors.hpp"

namespace softpress {

Digraph::Digraph(int n, const std::vector<std::pair<int, int>>& edges_1based)
    : n_(n), adj_(static_cast<size_t>(n) * n, 0) {
    if (n < 1) throw DomainError("digraph needs at least one color");
    for (auto [p, q] : edges_1based) {
        if (p < 1 || p > n || q < 1 || q > n) {
            std::ostringstream os;
            os << "edge (" << p << "," << q << ") out of range 1.." << n;
            throw DomainError(os.str());
        }
        adj_[static_cast<size_t>(p - 1) * n + (q - 1)] = 1;
    }
}

Digraph Digraph::complete(int n) {
    Digraph g;
    g.n_ = n;
    g.adj_.assign(static_cast<size_t>(n) * n, 1);
    return g;
}

Digraph Digraph::from_adjacency(std::vector<std::vector<bool>> adj) {
    Digraph g;
    g.n_ = static_cast<int>(adj.size());
    g.adj_.assign(static_cast<size_t>(g.n_) * g.n_, 0);
    for (int i = 0; i < g.n_; ++i)
        for (int j = 0; j < g.n_; ++j)
            if (adj[i][j]) g.adj_[static_cast<size_t>(i) * g.n_ + j] = 1;
    return g;
}

Digraph Digraph::hardcore() { return Digraph(2, {{1, 2}, {2, 1}, {2, 2}}); }

bool Digraph::symmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (edge(i, j) != edge(j, i)) return false;
    return true;
}

bool Digraph::empty() const {
    for (char c : adj_)
        if (c) return false;
    return true;
}

int Digraph::edge_count() const {
    int k = 0;
    for (char c : adj_) k += c;
    return k;
}

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (edge(i, j)) out.emplace_back(i, j);
    return out;
}

Digraph Digraph::reversed() const {
    Digraph g;
    g.n_ = n_;
    g.adj_.assign(adj_.size(), 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (edge(i, j)) g.adj_[static_cast<size_t>(j) * n_ + i] = 1;
    return g;
}

Digraph Digraph::induced(const std::vector<int>& vertices) const {
    Digraph g;
    g.n_ = static_cast<int>(vertices.size());
    g.adj_.assign(static_cast<size_t>(g.n_) * g.n_, 0);
    for (int a = 0; a < g.n_; ++a)
        for (int b = 0; b < g.n_; ++b)
            if (edge(vertices[a], vertices[b])) g.adj_[static_cast<size_t>(a) * g.n_ + b] = 1;
    return g;
}

bool DigraphTuple::all_axes_empty() const {
    for (const auto& g : axes)
        if (!g.empty()) return false;
    return true;
}

void DigraphTuple::validate() const {
    if (n < 1) throw DomainError("color count must be positive");
    if (d < 1) throw DomainError("dimension must be positive");
    if (static_cast<int>(axes.size()) != d) throw DomainError("axis count does not match d");
    for (const auto& g : axes)
        if (g.n() != n) throw DomainError("axis digraph on wrong color count");
}

DigraphTuple digraph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("digraph JSON parse error: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("d") || !j.contains("axes"))
        throw DomainError("digraph JSON needs fields n, d, axes");
    DigraphTuple g;
    g.n = j.at("n").get<int>();
    g.d = j.at("d").get<int>();
    if (g.n < 1) throw DomainError("n must be positive");
    if (g.d < 1) throw DomainError("d must be positive");
    const auto& axes = j.at("axes");
    if (!axes.is_array() || static_cast<int>(axes.size()) != g.d)
        throw DomainError("axes must be an array of d edge lists");
    for (const auto& axis : axes) {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : axis) {
            if (!e.is_array() || e.size() != 2)
                throw DomainError("each edge must be a [p,q] pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        g.axes.emplace_back(g.n, edges);  // range check happens here
    }
    g.validate();
    return g;
}

DigraphTuple load_digraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open digraph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return digraph_from_json(ss.str());
}

std::string digraph_to_json(const DigraphTuple& g) {
    nlohmann::json j;
    j["n"] = g.n;
    j["d"] = g.d;
    auto axes = nlohmann::json::array();
    for (const auto& axis : g.axes) {
        auto list = nlohmann::json::array();
        for (auto [p, q] : axis.edges()) list.push_back({p + 1, q + 1});
        axes.push_back(list);
    }
    j["axes"] = axes;
    return j.dump();
}

std::vector<long long> color_count(const Coloring& c, int n) {
    std::vector<long long> counts(static_cast<size_t>(n), 0);
    for (int cell : c.cells) counts.at(static_cast<size_t>(cell))++;
    return counts;
}

}  // namespace softpress
