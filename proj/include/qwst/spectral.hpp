#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qwst/complexmat.hpp"
#include "qwst/rational.hpp"
#include "qwst/weights.hpp"

namespace qwst {

/*
 * Deterministic cyclic Jacobi diagonalization for complex Hermitian matrices.
 *
 * Each (p,q) rotation is a unitary built from the phase of a_pq and the
 * classic tangent formula; sweeps run in fixed row-major order until the
 * off-diagonal Frobenius mass drops below 1e-13 relative to the matrix scale.
 * Rotation-based diagonalization keeps merged-eigenspace projections stable,
 * which the cospectrality certificates depend on.
 */
struct EigenSystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns are orthonormal eigenvectors
};

inline EigenSystem jacobi_hermitian(CMatrix a, int max_sweeps = 64) {
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("jacobi_hermitian: not square");
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(1.0, a.frobenius_norm());

    auto off_mass = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
        return std::sqrt(2.0 * s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        const double off = off_mass();
        if (off <= 1e-13 * scale) break;
        // skip rotations too small to matter this sweep; the off-diagonal
        // mass check still gates convergence at 1e-13
        const double thresh = std::max(1e-300, 0.05 * off / (static_cast<double>(n) * n));
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= thresh) continue;
                const cplx phase = apq / mag;  // a_pq = mag * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // G has G(p,p)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase), G(q,q)=c;
                // update a := G* a G, v := v G.
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(phase) * vkq;
                    v(k, q) = s * phase * vkp + c * vkq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
    }
    if (sweep == max_sweeps && off_mass() > 1e-13 * scale)
        throw std::runtime_error("jacobi_hermitian: no convergence after " +
                                 std::to_string(max_sweeps) + " sweeps");

    EigenSystem es;
    es.values.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });
    es.vectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        es.values[j] = d[order[j]];
        for (int i = 0; i < n; ++i) es.vectors(i, j) = v(i, order[j]);
    }
    return es;
}

/// Exact tag attached to a snapped eigenvalue: either the value itself is a
/// rational a/d, or its square is (quadratic surd +-sqrt(p/q), as in the
/// cyclic-cover family), or neither snapped.
struct EigenvalueTag {
    std::optional<Rational> rational;     // lambda itself
    std::optional<Rational> square;       // lambda^2, when lambda did not snap
    bool negative = false;                // sign of lambda when only square snapped
};

/// Spectral decomposition of a Hermitian matrix with eigenvalues grouped
/// (1e-9), sorted in descending order, plus the eigenprojections.
struct SpectralData {
    std::vector<double> eigenvalues;     // distinct, descending
    std::vector<int> multiplicities;
    std::vector<CMatrix> projections;    // E_lambda, Hermitian idempotents
    std::vector<EigenvalueTag> tags;
    int dim = 0;

    int group_count() const { return static_cast<int>(eigenvalues.size()); }

    CVector project_vertex(int g, int a) const { return projections[g].column(a); }

    CMatrix reconstruct() const {
        CMatrix h(dim, dim);
        for (int g = 0; g < group_count(); ++g) h = h + projections[g] * cplx(eigenvalues[g]);
        return h;
    }

    int group_of(double lambda, double tol_ = 1e-8) const {
        for (int g = 0; g < group_count(); ++g)
            if (std::fabs(eigenvalues[g] - lambda) <= tol_) return g;
        return -1;
    }
};

inline SpectralData decompose(const CMatrix& h) {
    if (!h.is_hermitian(1e-10)) throw std::invalid_argument("decompose: matrix not Hermitian");
    EigenSystem es = jacobi_hermitian(h);
    const int n = h.rows();
    SpectralData sd;
    sd.dim = n;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && std::fabs(es.values[j + 1] - es.values[j]) < tol::grouping) ++j;
        double mean = 0.0;
        for (int k = i; k <= j; ++k) mean += es.values[k];
        mean /= (j - i + 1);
        CMatrix proj(n, n);
        for (int k = i; k <= j; ++k) {
            CVector col = es.vectors.column(k);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) proj(r, c) += col[r] * std::conj(col[c]);
        }
        sd.eigenvalues.push_back(mean);
        sd.multiplicities.push_back(j - i + 1);
        sd.projections.push_back(std::move(proj));
        i = j + 1;
    }
    // descending order
    std::reverse(sd.eigenvalues.begin(), sd.eigenvalues.end());
    std::reverse(sd.multiplicities.begin(), sd.multiplicities.end());
    std::reverse(sd.projections.begin(), sd.projections.end());
    // rational / quadratic snapping for the transfer module
    sd.tags.resize(sd.group_count());
    for (int g = 0; g < sd.group_count(); ++g) {
        const double lam = sd.eigenvalues[g];
        if (auto r = snap_rational(lam)) {
            sd.tags[g].rational = *r;
        } else if (auto r2 = snap_rational(lam * lam)) {
            sd.tags[g].square = *r2;
            sd.tags[g].negative = lam < 0;
        }
    }
    return sd;
}

inline SpectralData decompose(const HermitianAdjacency& h) { return decompose(h.dense()); }

inline std::vector<int> eigenvalue_support(const SpectralData& sd, int a) {
    std::vector<int> sup;
    for (int g = 0; g < sd.group_count(); ++g)
        if (norm2(sd.project_vertex(g, a)) > tol::support) sup.push_back(g);
    return sup;
}

/// Strong/m-strong cospectrality certificate for a vertex pair.
/// support: group indices of Lambda_a; alphas: unit phases with
/// E_lambda e_a = alpha_lambda E_lambda e_b; after m-detection, residues
/// sigma with alpha = e^{2 pi i sigma / m} and the partition classes.
struct CospectralityCertificate {
    int a = 0, b = 0;
    bool cospectral = false;
    std::string failure;                  // first failing eigenvalue, when negative
    std::vector<int> support;             // group indices into SpectralData
    std::vector<double> support_values;   // eigenvalues for the groups above
    std::vector<cplx> alphas;

    bool root_of_unity = false;
    int m = 0;
    std::vector<int> residues;                     // sigma_lambda in Z_m, aligned with support
    std::map<int, std::vector<int>> partition;     // k -> indices into support (Lambda_ab^k)
};

inline CospectralityCertificate strong_cospectrality(const SpectralData& sd, int a, int b) {
    CospectralityCertificate cert;
    cert.a = a;
    cert.b = b;
    if (a == b) {
        cert.cospectral = true;
        cert.support = eigenvalue_support(sd, a);
        for (int g : cert.support) {
            cert.support_values.push_back(sd.eigenvalues[g]);
            cert.alphas.push_back(1.0);
        }
        return cert;
    }
    auto sup_a = eigenvalue_support(sd, a);
    auto sup_b = eigenvalue_support(sd, b);
    if (sup_a != sup_b) {
        // name the first eigenvalue where the supports disagree
        std::vector<int> diff;
        std::set_symmetric_difference(sup_a.begin(), sup_a.end(), sup_b.begin(), sup_b.end(),
                                      std::back_inserter(diff));
        cert.failure = "eigenvalue supports differ at lambda = " +
                       std::to_string(sd.eigenvalues[diff.front()]);
        return cert;
    }
    for (int g : sup_a) {
        CVector ea = sd.project_vertex(g, a);
        CVector eb = sd.project_vertex(g, b);
        const double na = norm2(ea), nb = norm2(eb);
        if (std::fabs(na - nb) > tol::support) {
            cert.failure = "projection norms differ at lambda = " + std::to_string(sd.eigenvalues[g]);
            return cert;
        }
        // phase from the larger-norm projection as reference; ties toward a
        cplx alpha;
        if (nb >= na) {
            alpha = inner(eb, ea) / (nb * nb);
        } else {
            alpha = std::conj(inner(ea, eb)) / (na * na);
        }
        double resid = 0.0;
        for (size_t i = 0; i < ea.size(); ++i) resid += std::norm(ea[i] - alpha * eb[i]);
        resid = std::sqrt(resid);
        if (resid > tol::support || std::fabs(std::abs(alpha) - 1.0) > tol::support) {
            cert.failure = "projections not parallel at lambda = " + std::to_string(sd.eigenvalues[g]);
            return cert;
        }
        cert.support.push_back(g);
        cert.support_values.push_back(sd.eigenvalues[g]);
        cert.alphas.push_back(alpha / std::abs(alpha));
    }
    cert.cospectral = true;
    return cert;
}

/// Find the least m <= m_max such that every alpha is within 1e-8 of an m-th
/// root of unity; with the least m, at least one residue is coprime to m.
/// Assembles the classes Lambda_ab^k. Returns false when no m fits (phases
/// like e^{-i arctan(1/2)} exist; PGST theory does not cover them).
inline bool m_strong_cospectrality(CospectralityCertificate& cert, int m_max = 64) {
    if (!cert.cospectral) return false;
    const double two_pi = 2.0 * M_PI;
    for (int m = 1; m <= m_max; ++m) {
        std::vector<int> res(cert.alphas.size());
        bool ok = true;
        for (size_t i = 0; i < cert.alphas.size() && ok; ++i) {
            double ang = std::arg(cert.alphas[i]);
            if (ang < 0) ang += two_pi;
            const double k = ang * m / two_pi;
            const long long kr = std::llround(k);
            const cplx root = std::polar(1.0, two_pi * kr / m);
            if (std::abs(cert.alphas[i] - root) > tol::root_of_unity) ok = false;
            res[i] = static_cast<int>(((kr % m) + m) % m);
        }
        if (!ok) continue;
        cert.root_of_unity = true;
        cert.m = m;
        cert.residues = res;
        cert.partition.clear();
        for (size_t i = 0; i < res.size(); ++i)
            cert.partition[res[i]].push_back(static_cast<int>(i));
        return true;
    }
    return false;
}

}  // namespace qwst
