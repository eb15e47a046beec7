#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwst {

/// Simple connected undirected graph on vertices 0..n-1.
/// Construction validates simplicity and connectivity.
class Graph {
public:
    Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
        if (n < 1) throw std::invalid_argument("Graph: need at least one vertex");
        for (auto [a, b] : edges) {
            if (a == b) throw std::invalid_argument("Graph: loop at vertex " + std::to_string(a));
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw std::invalid_argument("Graph: vertex out of range");
            if (a > b) std::swap(a, b);
            edges_.emplace_back(a, b);
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("Graph: duplicate edge");
        adj_.assign(n, {});
        for (auto [a, b] : edges_) {
            adj_[a].push_back(b);
            adj_[b].push_back(a);
        }
        if (!connected()) throw std::invalid_argument("Graph: not connected");
    }

    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(a, b));
    }

private:
    bool connected() const {
        if (n_ == 1) return true;
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adj_[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    ++count;
                    stack.push_back(u);
                }
        }
        return count == n_;
    }

    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Directed arcs of a graph, two per edge, in lexicographic (tail, head) order,
/// with the reversal permutation. This fixed ordering is the basis for every
/// arc-indexed matrix and vector in the walk.
struct ArcSpace {
    std::vector<std::pair<int, int>> arcs;
    std::vector<int> rev;

    int index(int a, int b) const {
        auto it = std::lower_bound(arcs.begin(), arcs.end(), std::make_pair(a, b));
        if (it == arcs.end() || *it != std::make_pair(a, b))
            throw std::invalid_argument("ArcSpace: no such arc");
        return static_cast<int>(it - arcs.begin());
    }
    int size() const { return static_cast<int>(arcs.size()); }
};

inline ArcSpace build_arc_space(const Graph& g) {
    ArcSpace as;
    for (auto [a, b] : g.edges()) {
        as.arcs.emplace_back(a, b);
        as.arcs.emplace_back(b, a);
    }
    std::sort(as.arcs.begin(), as.arcs.end());
    as.rev.resize(as.arcs.size());
    for (int k = 0; k < as.size(); ++k) {
        auto [a, b] = as.arcs[k];
        as.rev[k] = as.index(b, a);
    }
    return as;
}

}  // namespace qwst
