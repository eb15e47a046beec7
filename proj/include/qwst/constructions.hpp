#pragma once

#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwst/graph.hpp"
#include "qwst/rational.hpp"
#include "qwst/spectral.hpp"
#include "qwst/weights.hpp"

namespace qwst {

/// A generated (graph, H, W) instance with the vertex pair the family's
/// transfer statement is about, plus metadata for serialization.
struct FamilyInstance {
    std::string family;
    std::vector<std::pair<std::string, long long>> params;
    Graph graph;
    HermitianAdjacency h;
    WeightMatrix weights;
    int pair_a = 0, pair_b = 0;
};

/// Cocktail party graph: complement of n disjoint edges, vertices i and i+n
/// antipodal, H = A/(2n-2). PST at t=6 for n=3 (and t=2 for n=2), PGST for
/// all larger n.
inline FamilyInstance cocktail_party(int n) {
    if (n < 2) throw std::invalid_argument("cocktail_party: n >= 2");
    const int nv = 2 * n;
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
            if (b != a + n) edges.emplace_back(a, b);
    Graph g(nv, edges);
    WeightMatrix w = degree_normalized_weights(g);
    return {"cocktail", {{"n", n}}, g, hermitian_from_weights(g, w), w, 0, n};
}

/// Hypercube Q_d with H = A/d; antipodal map is bit complement.
inline FamilyInstance hypercube(int d) {
    if (d < 1) throw std::invalid_argument("hypercube: d >= 1");
    const int nv = 1 << d;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < nv; ++v)
        for (int b = 0; b < d; ++b) {
            const int u = v ^ (1 << b);
            if (u > v) edges.emplace_back(v, u);
        }
    Graph g(nv, edges);
    WeightMatrix w = degree_normalized_weights(g);
    return {"hypercube", {{"d", d}}, g, hermitian_from_weights(g, w), w, 0, nv - 1};
}

/// K_{2n} with H the Seidel adjacency matrix of the perfect matching
/// {2i, 2i+1}, scaled by 1/(2n-1): spectrum {2n-3, 1, -3}/(2n-1).
inline FamilyInstance seidel_complete(int n) {
    if (n < 2) throw std::invalid_argument("seidel_complete: n >= 2");
    const int nv = 2 * n;
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b) edges.emplace_back(a, b);
    Graph g(nv, edges);
    CMatrix h(nv, nv);
    for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b) {
            if (a == b) continue;
            h(a, b) = (b == (a ^ 1)) ? -1.0 : 1.0;
            h(a, b) /= (2.0 * n - 1.0);
        }
    HermitianAdjacency H(g, std::move(h));
    WeightMatrix w = recover_weights(g, H);
    return {"seidel", {{"n", n}}, g, H, w, 0, 1};
}

namespace detail {

struct SignedEdge {
    int i, j, sign;
};

/// Frozen orientation of the line graph of Q_3 (a cuboctahedron), found by
/// find_orientation_fixture's search and certified: relative to i S, vertices
/// 1 and 10 are 2-strongly cospectral with supports {+-2} and {0, +-sqrt 12}.
inline const std::array<SignedEdge, 24>& fixture_orientation() {
    static const std::array<SignedEdge, 24> k = {{
        {0, 1, 1},  {0, 2, 1},   {0, 3, -1}, {0, 4, 1},   {1, 2, 1},   {1, 5, -1},
        {1, 6, 1},  {2, 8, -1},  {2, 9, -1}, {3, 4, -1},  {3, 5, 1},   {3, 7, 1},
        {4, 8, -1}, {4, 10, 1},  {5, 6, 1},  {5, 7, -1},  {6, 9, -1},  {6, 11, -1},
        {7, 10, -1}, {7, 11, 1}, {8, 9, 1},  {8, 10, -1}, {9, 11, -1}, {10, 11, 1},
    }};
    return k;
}

inline CMatrix fixture_h4() {
    CMatrix h(12, 12);
    for (const auto& e : fixture_orientation()) {
        h(e.i, e.j) = cplx(0.0, static_cast<double>(e.sign));
        h(e.j, e.i) = cplx(0.0, -static_cast<double>(e.sign));
    }
    return h;
}

/// Line graph of Q_3: vertices are Q_3's edges in lexicographic order,
/// adjacency is sharing an endpoint.
inline std::vector<std::pair<int, int>> line_q3_edges() {
    std::vector<std::pair<int, int>> q3;
    for (int v = 0; v < 8; ++v)
        for (int b = 0; b < 3; ++b) {
            const int u = v ^ (1 << b);
            if (u > v) q3.emplace_back(v, u);
        }
    std::vector<std::pair<int, int>> le;
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j) {
            auto [a1, b1] = q3[i];
            auto [a2, b2] = q3[j];
            if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) le.emplace_back(i, j);
        }
    return le;
}

}  // namespace detail

/// Search orientations of L(Q_3) for one whose i S admits a 2-strongly
/// cospectral pair with supports {+-2} and {0, +-sqrt 12}. Cheap filters
/// (trace((S S^T)^2), then spec(S S^T) in {0, 4, 12}) reject most samples
/// before the full certificate test; a valid orientation occurs at a rate
/// of roughly 1/1500, so the seeded search returns quickly. The result is
/// relabeled so the certified pair is (1, 10).
inline CMatrix find_orientation_fixture(unsigned seed = 20240901, long long max_tries = 2000000) {
    const auto ledges = detail::line_q3_edges();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long long> dist(0, (1 << 24) - 1);

    for (long long tries = 0; tries < max_tries; ++tries) {
        const long long bits = dist(rng);
        CMatrix s(12, 12);
        for (int k = 0; k < 24; ++k) {
            const double sg = (bits >> k) & 1 ? 1.0 : -1.0;
            s(ledges[k].first, ledges[k].second) = sg;
            s(ledges[k].second, ledges[k].first) = -sg;
        }
        // trace((S S^T)^2) must be one of the values compatible with
        // spectrum {0, +-2, +-sqrt 12}
        CMatrix m = s * s.adjoint();
        double t2 = 0.0;
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) t2 += std::norm(m(i, j));
        if (std::fabs(t2 - 288) > 1e-6 && std::fabs(t2 - 384) > 1e-6 && std::fabs(t2 - 480) > 1e-6)
            continue;
        EigenSystem es = jacobi_hermitian(m);
        bool okspec = true;
        for (double ev : es.values) {
            const double d0 = std::fabs(ev), d4 = std::fabs(ev - 4.0), d12 = std::fabs(ev - 12.0);
            if (std::min({d0, d4, d12}) > 1e-8) {
                okspec = false;
                break;
            }
        }
        if (!okspec) continue;

        CMatrix h(12, 12);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) h(i, j) = cplx(0.0, 1.0) * s(i, j);
        SpectralData sd = decompose(h);
        for (int a = 0; a < 12; ++a)
            for (int b = a + 1; b < 12; ++b) {
                CospectralityCertificate cert = strong_cospectrality(sd, a, b);
                if (!cert.cospectral) continue;
                if (!m_strong_cospectrality(cert) || cert.m != 2) continue;
                std::vector<double> l0, l1;
                for (size_t i = 0; i < cert.support.size(); ++i)
                    (cert.residues[i] == 0 ? l0 : l1).push_back(cert.support_values[i]);
                auto matches = [](std::vector<double> v, std::vector<double> want) {
                    if (v.size() != want.size()) return false;
                    std::sort(v.begin(), v.end());
                    std::sort(want.begin(), want.end());
                    for (size_t i = 0; i < v.size(); ++i)
                        if (std::fabs(v[i] - want[i]) > 1e-7) return false;
                    return true;
                };
                const double s12 = std::sqrt(12.0);
                const bool ok = (matches(l0, {2.0, -2.0}) && matches(l1, {0.0, s12, -s12})) ||
                                (matches(l1, {2.0, -2.0}) && matches(l0, {0.0, s12, -s12}));
                if (!ok) continue;
                // relabel so the pair is (1, 10): perm[new] = old
                std::vector<int> perm(12);
                std::iota(perm.begin(), perm.end(), 0);
                std::swap(perm[1], perm[a]);
                const int bpos = static_cast<int>(
                    std::find(perm.begin(), perm.end(), b) - perm.begin());
                std::swap(perm[10], perm[bpos]);
                CMatrix out(12, 12);
                for (int i = 0; i < 12; ++i)
                    for (int j = 0; j < 12; ++j) out(i, j) = s(perm[i], perm[j]);
                return out;
            }
    }
    throw std::runtime_error(
        "find_orientation_fixture: no valid orientation found (would contradict the construction)");
}

/// The cyclic-cover family: H_4 = i S(L(Q_3)) from the frozen fixture, then
///   H_d = [[H_{d-1}, iI], [-iI, -H_{d-1}]],
/// which maps each eigenvalue lambda to +-sqrt(lambda^2 + 1) and preserves
/// 2-strong cospectrality of the pair (1, 10). Scaled by 1/d (each row has
/// exactly d unit-modulus entries).
inline FamilyInstance cyclic_cover_family(int d) {
    if (d < 4) throw std::invalid_argument("cyclic_cover_family: d >= 4");
    CMatrix h = detail::fixture_h4();
    for (int k = 5; k <= d; ++k) {
        const int n = h.rows();
        CMatrix next(2 * n, 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                next(i, j) = h(i, j);
                next(n + i, n + j) = -h(i, j);
            }
        for (int i = 0; i < n; ++i) {
            next(i, n + i) = cplx(0.0, 1.0);
            next(n + i, i) = cplx(0.0, -1.0);
        }
        h = std::move(next);
    }
    const int nv = h.rows();
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
            if (std::abs(h(a, b)) > 0.5) edges.emplace_back(a, b);
    h = h * cplx(1.0 / d);
    Graph g(nv, edges);
    HermitianAdjacency H(g, std::move(h));
    WeightMatrix w = recover_weights(g, H);
    return {"cyclic_cover", {{"d", d}}, g, H, w, 1, 10};
}

namespace detail {

/// Deterministic fraction chooser for the Hadamard family: candidates are
/// q = 3, 5, 7, ... with the odd p coprime to q closest to q/2, and the
/// chosen window is the earliest run of n consecutive candidates whose
/// |cos(p pi / q)| values sum below 1.
inline std::vector<std::pair<long long, long long>> hadamard_default_fractions(int n) {
    auto candidate = [](int idx) {  // idx >= 0 -> q = 3 + 2 idx
        const long long q = 3 + 2 * idx;
        long long best_p = 1;
        double best_d = 1e9;
        for (long long p = 1; p < q; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            const double dd = std::fabs(static_cast<double>(p) / q - 0.5);
            if (dd < best_d) {
                best_d = dd;
                best_p = p;
            }
        }
        return std::make_pair(best_p, q);
    };
    for (int start = 0; start < 64; ++start) {
        std::vector<std::pair<long long, long long>> fr;
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            auto [p, q] = candidate(start + k);
            sum += std::fabs(std::cos(static_cast<double>(p) * M_PI / q));
            fr.emplace_back(p, q);
        }
        if (sum < 1.0) return fr;
    }
    throw std::runtime_error("hadamard_default_fractions: no admissible window");
}

}  // namespace detail

/// Real-weighted K_{n+1,n+1} (n = 2^{s-1} - 1) with perfect state transfer
/// between vertices 0 and 1 at t = q_1 q_2 ... q_n. H = P D P^T with P the
/// s-fold Hadamard tensor power and
///   D = diag(1, -1, -c_1, c_1, -c_2, c_2, ...),  c_j = cos(p_j pi / q_j).
/// Placing -c_j on the even slot (rather than +c_j) is what aligns the
/// eigenvalue phases so that the odd time t = prod q_j transfers 0 -> 1;
/// positivity of the entries needs sum |c_j| < 1.
inline FamilyInstance hadamard_bipartite(
    int s, std::optional<std::vector<std::pair<long long, long long>>> fractions = std::nullopt) {
    if (s < 1) throw std::invalid_argument("hadamard_bipartite: s >= 1");
    const int n = (1 << (s - 1)) - 1;
    std::vector<std::pair<long long, long long>> fr =
        fractions ? *fractions : detail::hadamard_default_fractions(n);
    if (static_cast<int>(fr.size()) != n)
        throw std::invalid_argument("hadamard_bipartite: need exactly " + std::to_string(n) +
                                    " fractions");
    double csum = 0.0;
    for (auto [p, q] : fr) {
        if (p <= 0 || q <= 0) throw std::invalid_argument("hadamard_bipartite: fractions must be positive");
        if (p % 2 == 0 || q % 2 == 0)
            throw std::invalid_argument("hadamard_bipartite: p and q must be odd");
        if (std::gcd(p, q) != 1) throw std::invalid_argument("hadamard_bipartite: p, q must be coprime");
        csum += std::fabs(std::cos(static_cast<double>(p) * M_PI / q));
    }
    if (csum >= 1.0)
        throw std::invalid_argument("hadamard_bipartite: sum of |cos(p pi/q)| must be < 1");

    const int nv = 1 << s;
    CMatrix p(1, 1);
    p(0, 0) = 1.0;
    for (int k = 0; k < s; ++k) {
        const int r = p.rows();
        CMatrix nx(2 * r, 2 * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                nx(i, j) = p(i, j);
                nx(i, r + j) = p(i, j);
                nx(r + i, j) = p(i, j);
                nx(r + i, r + j) = -p(i, j);
            }
        p = std::move(nx);
    }
    std::vector<double> diag(nv);
    diag[0] = 1.0;
    diag[1] = -1.0;
    for (int j = 0; j < n; ++j) {
        const double c = std::cos(static_cast<double>(fr[j].first) * M_PI / fr[j].second);
        diag[2 + 2 * j] = -c;
        diag[3 + 2 * j] = c;
    }
    CMatrix h(nv, nv);
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            double acc = 0.0;
            for (int k = 0; k < nv; ++k) acc += p(i, k).real() * diag[k] * p(j, k).real();
            if (std::fabs(acc) < 1e-12) acc = 0.0;
            h(i, j) = acc / (2.0 * n + 2.0);
        }
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
            if (std::abs(h(a, b)) > 0.0) edges.emplace_back(a, b);
    Graph g(nv, edges);
    // validate the bipartite support: evens vs odds, all weights positive
    for (auto [a, b] : edges) {
        if ((a & 1) == (b & 1))
            throw std::runtime_error("hadamard_bipartite: support is not bipartite by parity");
        if (h(a, b).real() <= 0.0)
            throw std::runtime_error("hadamard_bipartite: nonpositive weight in support");
    }
    HermitianAdjacency H(g, std::move(h));
    WeightMatrix w = recover_weights(g, H);
    FamilyInstance fi{"hadamard", {{"s", s}}, g, H, w, 0, 1};
    for (int j = 0; j < n; ++j) {
        fi.params.emplace_back("p" + std::to_string(j + 1), fr[j].first);
        fi.params.emplace_back("q" + std::to_string(j + 1), fr[j].second);
    }
    return fi;
}

/// PST time of the Hadamard family: prod q_j (1 when s = 1).
inline long long hadamard_pst_time(const FamilyInstance& fi) {
    long long t = 1;
    for (const auto& [k, v] : fi.params)
        if (k.size() > 1 && k[0] == 'q') t *= v;
    return t;
}

/// K_4 with m-strongly cospectral vertices 0, 1 for any even m: the displayed
/// Hermitian matrix with alpha = e^{2 pi i / m}, scaled by 1/(2p+2), has
/// spectrum {2+2p, 2-2p, -2, -2}/(2p+2) and classes Lambda^1 = {2+2p, 2-2p},
/// Lambda^{m/2+1} = {-2}.
inline FamilyInstance k4_family(int m, int p) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("k4_family: m must be even and >= 2");
    if (p <= 3) throw std::invalid_argument("k4_family: p must be a prime > 3");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("k4_family: p must be a prime > 3");
    const cplx alpha = std::polar(1.0, 2.0 * M_PI / m);
    const double pp = p;
    CMatrix h(4, 4);
    h(0, 1) = 2.0 * std::conj(alpha);
    h(0, 2) = pp;
    h(0, 3) = pp;
    h(1, 2) = pp * alpha;
    h(1, 3) = pp * alpha;
    h(2, 3) = 2.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) h(i, j) = std::conj(h(j, i));
    h = h * cplx(1.0 / (2.0 * pp + 2.0));
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) edges.emplace_back(a, b);
    Graph g(4, edges);
    HermitianAdjacency H(g, std::move(h));
    WeightMatrix w = recover_weights(g, H);
    return {"k4", {{"m", m}, {"p", p}}, g, H, w, 0, 1};
}

}  // namespace qwst
