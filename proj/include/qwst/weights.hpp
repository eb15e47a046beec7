#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qwst/complexmat.hpp"
#include "qwst/graph.hpp"

namespace qwst {

namespace tol {
inline constexpr double normalization = 1e-12;
inline constexpr double identity = 1e-12;
inline constexpr double spectral = 1e-10;
inline constexpr double grouping = 1e-9;
inline constexpr double support = 1e-9;
inline constexpr double correspondence = 1e-9;
inline constexpr double unitarity = 1e-10;
inline constexpr double root_of_unity = 1e-8;
inline constexpr double pst_fidelity = 1e-9;
}  // namespace tol

/// Complex adjacency weights w_ab on the ordered adjacent pairs of a graph.
/// Normalized means sum_b |w_ab|^2 = 1 for every vertex a; the walk's
/// unitarity depends on it, so it is checked at construction.
class WeightMatrix {
public:
    WeightMatrix(const Graph& g, CMatrix w) : n_(g.vertex_count()), w_(std::move(w)) {
        if (w_.rows() != n_ || w_.cols() != n_)
            throw std::invalid_argument("WeightMatrix: shape mismatch with graph");
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                const bool edge = g.has_edge(a, b);
                const bool nonzero = std::abs(w_(a, b)) > 0.0;
                if (a == b && nonzero)
                    throw std::invalid_argument("WeightMatrix: nonzero diagonal");
                if (a != b && edge != nonzero)
                    throw std::invalid_argument(
                        "WeightMatrix: support mismatch at (" + std::to_string(a) + "," +
                        std::to_string(b) + ")");
            }
        for (int a = 0; a < n_; ++a) {
            double s = 0.0;
            for (int b : g.neighbors(a)) s += std::norm(w_(a, b));
            if (std::fabs(s - 1.0) > tol::normalization)
                throw std::invalid_argument("WeightMatrix: row " + std::to_string(a) +
                                            " not normalized (sum |w|^2 = " + std::to_string(s) + ")");
        }
    }

    int size() const { return n_; }
    cplx operator()(int a, int b) const { return w_(a, b); }
    const CMatrix& dense() const { return w_; }

private:
    int n_;
    CMatrix w_;
};

/// H = W o W^*: h_ab = w_ab * conj(w_ba). Hermitian with the graph's support.
class HermitianAdjacency {
public:
    HermitianAdjacency(const Graph& g, CMatrix h) : n_(g.vertex_count()), h_(std::move(h)) {
        if (h_.rows() != n_ || h_.cols() != n_)
            throw std::invalid_argument("HermitianAdjacency: shape mismatch");
        if (!h_.is_hermitian(1e-12))
            throw std::invalid_argument("HermitianAdjacency: not Hermitian");
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                const bool edge = a != b && g.has_edge(a, b);
                if (edge != (std::abs(h_(a, b)) > 0.0))
                    throw std::invalid_argument("HermitianAdjacency: support mismatch at (" +
                                                std::to_string(a) + "," + std::to_string(b) + ")");
            }
    }

    int size() const { return n_; }
    cplx operator()(int a, int b) const { return h_(a, b); }
    const CMatrix& dense() const { return h_; }

    /// Row sums of |h_ab|; the recovery lemma needs these equal to 1.
    double abs_row_sum(int a) const {
        double s = 0.0;
        for (int b = 0; b < n_; ++b) s += std::abs(h_(a, b));
        return s;
    }

private:
    int n_;
    CMatrix h_;
};

/// Weighted tail-arc incidence: N[u, (a,b)] = w_ab when u = a. For normalized
/// weights N N* = I and N*N is an orthogonal projection.
inline CMatrix tail_incidence(const Graph& g, const WeightMatrix& w, const ArcSpace& as) {
    CMatrix N(g.vertex_count(), as.size());
    for (int k = 0; k < as.size(); ++k) {
        auto [a, b] = as.arcs[k];
        N(a, k) = w(a, b);
    }
    return N;
}

inline CMatrix tail_incidence(const Graph& g, const WeightMatrix& w) {
    return tail_incidence(g, w, build_arc_space(g));
}

inline HermitianAdjacency hermitian_from_weights(const Graph& g, const WeightMatrix& w) {
    const int n = g.vertex_count();
    CMatrix h(n, n);
    for (auto [a, b] : g.edges()) {
        h(a, b) = w(a, b) * std::conj(w(b, a));
        h(b, a) = std::conj(h(a, b));
    }
    return HermitianAdjacency(g, std::move(h));
}

/// Recover a normalized weight matrix from H with unit |h| row sums.
/// For each edge {a,b} (direction a<b) and unit phase delta_ab:
///   w_ab = sqrt(|h_ab|) * delta_ab,   w_ba = conj(h_ab) / conj(w_ab).
/// Different phase choices give different walks with the same H.
inline WeightMatrix recover_weights(const Graph& g, const HermitianAdjacency& h,
                                    const CMatrix* phases = nullptr) {
    const int n = g.vertex_count();
    for (int a = 0; a < n; ++a) {
        const double s = h.abs_row_sum(a);
        if (std::fabs(s - 1.0) > tol::normalization)
            throw std::invalid_argument("recover_weights: |h| row sum at vertex " +
                                        std::to_string(a) + " is " + std::to_string(s) +
                                        ", not 1");
    }
    CMatrix w(n, n);
    for (auto [a, b] : g.edges()) {
        cplx delta = 1.0;
        if (phases) {
            delta = (*phases)(a, b);
            if (std::fabs(std::abs(delta) - 1.0) > 1e-12)
                throw std::invalid_argument("recover_weights: phase not unimodular on edge (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
        }
        const cplx hab = h(a, b);
        w(a, b) = std::sqrt(std::abs(hab)) * delta;
        w(b, a) = std::conj(hab) / std::conj(w(a, b));
    }
    return WeightMatrix(g, std::move(w));
}

/// Simplest normalized choice: w_ab = 1/sqrt(deg(a)), giving
/// h_ab = 1/sqrt(deg(a) deg(b)), the normalized adjacency matrix.
inline WeightMatrix degree_normalized_weights(const Graph& g) {
    const int n = g.vertex_count();
    CMatrix w(n, n);
    for (auto [a, b] : g.edges()) {
        w(a, b) = 1.0 / std::sqrt(static_cast<double>(g.degree(a)));
        w(b, a) = 1.0 / std::sqrt(static_cast<double>(g.degree(b)));
    }
    return WeightMatrix(g, std::move(w));
}

}  // namespace qwst
