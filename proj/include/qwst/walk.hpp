#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qwst/complexmat.hpp"
#include "qwst/graph.hpp"
#include "qwst/spectral.hpp"
#include "qwst/unitary_spectra.hpp"
#include "qwst/weights.hpp"

namespace qwst {

/// A quantum state on the arcs of the graph.
using WalkState = CVector;

/*
 * Transition matrix U = R (2 N* N - I) of the walk on (X, W).
 *
 * Applications run structurally in O(arcs): N has one nonzero per column, so
 * the coin needs one gather and one scatter over arcs, and R is the reversal
 * permutation. The dense form is materialized on demand for spectral work.
 */
class TransitionMatrix {
public:
    TransitionMatrix(const Graph& g, const WeightMatrix& w)
        : n_(g.vertex_count()), arcs_(build_arc_space(g)) {
        weights_.resize(arcs_.size());
        for (int k = 0; k < arcs_.size(); ++k) {
            auto [a, b] = arcs_.arcs[k];
            weights_[k] = w(a, b);
        }
        tails_.resize(arcs_.size());
        for (int k = 0; k < arcs_.size(); ++k) tails_[k] = arcs_.arcs[k].first;
    }

    int vertex_count() const { return n_; }
    int arc_count() const { return arcs_.size(); }
    const ArcSpace& arc_space() const { return arcs_; }
    cplx arc_weight(int k) const { return weights_[k]; }

    /// y = U x in O(arcs).
    WalkState apply(const WalkState& x) const {
        if (static_cast<int>(x.size()) != arcs_.size())
            throw std::invalid_argument("TransitionMatrix: state size mismatch");
        CVector v(n_);                                    // v = N x
        for (int k = 0; k < arcs_.size(); ++k) v[tails_[k]] += weights_[k] * x[k];
        WalkState y(arcs_.size());
        for (int k = 0; k < arcs_.size(); ++k)            // y = (2 N* N - I) x
            y[k] = 2.0 * std::conj(weights_[k]) * v[tails_[k]] - x[k];
        WalkState z(arcs_.size());
        for (int k = 0; k < arcs_.size(); ++k) z[k] = y[arcs_.rev[k]];  // z = R y
        return z;
    }

    /// Dense |arcs| x |arcs| matrix, built on first use.
    const CMatrix& dense() const {
        if (!dense_) {
            const int na = arcs_.size();
            CMatrix u(na, na);
            WalkState e(na);
            for (int j = 0; j < na; ++j) {
                e.assign(na, cplx{});
                e[j] = 1.0;
                WalkState col = apply(e);
                for (int i = 0; i < na; ++i) u(i, j) = col[i];
            }
            dense_ = std::move(u);
        }
        return *dense_;
    }

private:
    int n_;
    ArcSpace arcs_;
    std::vector<cplx> weights_;
    std::vector<int> tails_;
    mutable std::optional<CMatrix> dense_;
};

inline TransitionMatrix transition_matrix(const Graph& g, const WeightMatrix& w) {
    return TransitionMatrix(g, w);
}

/// N* e_a: the state concentrated on the outgoing arcs of a, with amplitude
/// conj(w_ab) on arc (a,b). Unit norm by normalization.
inline WalkState vertex_state(const TransitionMatrix& u, int a) {
    if (a < 0 || a >= u.vertex_count()) throw std::invalid_argument("vertex_state: bad vertex");
    WalkState s(u.arc_count());
    for (int k = 0; k < u.arc_count(); ++k)
        if (u.arc_space().arcs[k].first == a) s[k] = std::conj(u.arc_weight(k));
    return s;
}

/// U^t x by repeated application. Every 10^4 steps the accumulated norm drift
/// is checked (must stay under 1e-10 per step) and the state renormalized.
inline WalkState evolve(const TransitionMatrix& u, WalkState x, long long t) {
    if (t < 0) throw std::invalid_argument("evolve: negative time");
    const double n0 = norm2(x);
    long long since = 0;
    for (long long s = 0; s < t; ++s) {
        x = u.apply(x);
        if (++since == 10000) {
            const double drift = std::fabs(norm2(x) - n0);
            if (drift > 1e-10 * static_cast<double>(since))
                throw std::runtime_error("evolve: norm drift " + std::to_string(drift) +
                                         " over " + std::to_string(since) + " steps");
            if (n0 > 0) {
                const double scale = n0 / norm2(x);
                for (auto& v : x) v *= scale;
            }
            since = 0;
        }
    }
    return x;
}

/// |<U^t N* e_a, N* e_b>|: the transfer amplitude magnitude at time t.
inline double fidelity(const TransitionMatrix& u, int a, int b, long long t) {
    WalkState x = evolve(u, vertex_state(u, a), t);
    return std::abs(inner(x, vertex_state(u, b)));
}

struct SweepResult {
    std::vector<double> fidelities;  // index = t
    long long best_t = 0;
    double best = 0.0;
};

/// Exact fidelities for t = 0..t_max. Worker j evaluates disjoint t-blocks;
/// every t is computed from the checkpointed power at stride 1024, so the
/// result is bit-identical for any job count.
inline SweepResult fidelity_sweep(const TransitionMatrix& u, int a, int b, long long t_max,
                                  int jobs = 1) {
    if (t_max < 0) throw std::invalid_argument("fidelity_sweep: t_max must be >= 0");
    constexpr long long stride = 1024;
    const WalkState x0 = vertex_state(u, a);
    const WalkState y = vertex_state(u, b);

    const long long nckpt = t_max / stride + 1;
    std::vector<WalkState> ckpt;
    ckpt.reserve(nckpt);
    ckpt.push_back(x0);
    for (long long c = 1; c < nckpt; ++c) {
        WalkState s = ckpt.back();
        for (long long i = 0; i < stride; ++i) s = u.apply(s);
        ckpt.push_back(std::move(s));
    }

    SweepResult res;
    res.fidelities.assign(static_cast<size_t>(t_max) + 1, 0.0);
    auto run_block = [&](long long c0, long long c1) {
        for (long long c = c0; c < c1; ++c) {
            WalkState s = ckpt[c];
            const long long tend = std::min(t_max, c * stride + stride - 1);
            for (long long t = c * stride; t <= tend; ++t) {
                res.fidelities[static_cast<size_t>(t)] = std::abs(inner(s, y));
                if (t < tend) s = u.apply(s);
            }
        }
    };
    if (jobs <= 1) {
        run_block(0, nckpt);
    } else {
        std::vector<std::thread> pool;
        const long long per = (nckpt + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            const long long c0 = j * per;
            const long long c1 = std::min(nckpt, c0 + per);
            if (c0 < c1) pool.emplace_back(run_block, c0, c1);
        }
        for (auto& th : pool) th.join();
    }
    for (long long t = 0; t <= t_max; ++t)
        if (res.fidelities[static_cast<size_t>(t)] > res.best) {
            res.best = res.fidelities[static_cast<size_t>(t)];
            res.best_t = t;
        }
    return res;
}

/*
 * Eigenprojection F_theta of U onto the e^{i theta}-eigenspace.
 *
 * For theta not in {0, pi} the closed form
 *   F = (1 / 2 sin^2 theta) (N* - e^{i theta} R N*) E_lambda (N - e^{-i theta} N R)
 * with lambda = cos theta. For theta in {0, pi} the eigenspace has components
 * inside ker(N) that the closed form cannot see, so those projections are read
 * off the dense spectrum of U directly; N F_0 N* = E_1 and N F_pi N* = E_-1
 * remain the contract either way.
 */
inline CMatrix walk_eigenprojection(const SpectralData& sd, const Graph& g, const WeightMatrix& w,
                                    double theta) {
    const TransitionMatrix u(g, w);
    const double lambda = std::cos(theta);
    if (std::fabs(std::sin(theta)) < 1e-12) {
        // theta = 0 or pi: direct spectrum of U
        auto spaces = unitary_eigenspaces(u.dense());
        const double target = std::cos(theta) > 0 ? 0.0 : M_PI;
        for (auto& s : spaces)
            if (std::fabs(s.theta - target) < 1e-8 || std::fabs(s.theta + target) < 1e-8)
                return s.projection;
        // eigenphase absent: zero projection
        return CMatrix(u.arc_count(), u.arc_count());
    }
    const int gidx = sd.group_of(lambda);
    if (gidx < 0)
        throw std::invalid_argument("walk_eigenprojection: cos(theta) = " + std::to_string(lambda) +
                                    " is not an eigenvalue of H");
    const CMatrix& e = sd.projections[gidx];
    const CMatrix n = tail_incidence(g, w, u.arc_space());
    const CMatrix nstar = n.adjoint();
    const int na = u.arc_count();
    CMatrix r(na, na);
    for (int k = 0; k < na; ++k) r(u.arc_space().rev[k], k) = 1.0;
    const cplx eith = std::polar(1.0, theta);
    const CMatrix left = nstar - (r * nstar) * eith;
    const CMatrix right = n - (n * r) * std::conj(eith);
    const double s2 = std::sin(theta) * std::sin(theta);
    return (left * e * right) * cplx(1.0 / (2.0 * s2));
}

}  // namespace qwst
