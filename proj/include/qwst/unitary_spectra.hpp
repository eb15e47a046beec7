#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qwst/complexmat.hpp"
#include "qwst/spectral.hpp"

namespace qwst {

/// One eigenphase of a unitary matrix with its orthogonal eigenprojection.
struct UnitaryEigenspace {
    double theta = 0.0;  // eigenvalue e^{i theta}, theta in (-pi, pi]
    CMatrix projection;
};

/// Spectral decomposition of a unitary (normal) matrix, independent of any
/// walk structure: diagonalize the Hermitian part (U+U*)/2, then split each
/// cos-eigenspace by the compression of (U-U*)/(2i), which it commutes with.
/// Used as the dense oracle for the walk's spectral correspondence.
inline std::vector<UnitaryEigenspace> unitary_eigenspaces(const CMatrix& u) {
    const int n = u.rows();
    CMatrix ustar = u.adjoint();
    CMatrix re(n, n), im(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            re(i, j) = (u(i, j) + ustar(i, j)) * 0.5;
            im(i, j) = (u(i, j) - ustar(i, j)) * cplx(0.0, -0.5);
        }
    EigenSystem es = jacobi_hermitian(re);

    std::vector<UnitaryEigenspace> out;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && std::fabs(es.values[j + 1] - es.values[j]) < tol::grouping) ++j;
        const int k = j - i + 1;
        const double c = es.values[i];
        // basis Q of the cos-eigenspace, compression M = Q* B Q of the imaginary part
        CMatrix q(n, k);
        for (int col = 0; col < k; ++col)
            for (int r = 0; r < n; ++r) q(r, col) = es.vectors(r, i + col);
        CMatrix mq = im * q;
        CMatrix m(k, k);
        for (int r = 0; r < k; ++r)
            for (int c2 = 0; c2 < k; ++c2) {
                cplx s = 0.0;
                for (int t = 0; t < n; ++t) s += std::conj(q(t, r)) * mq(t, c2);
                m(r, c2) = s;
            }
        // enforce exact Hermiticity before the inner Jacobi
        for (int r = 0; r < k; ++r)
            for (int c2 = r; c2 < k; ++c2) {
                cplx avg = (m(r, c2) + std::conj(m(c2, r))) * 0.5;
                m(r, c2) = avg;
                m(c2, r) = std::conj(avg);
            }
        EigenSystem inner_es = jacobi_hermitian(m);
        int a = 0;
        while (a < k) {
            int b = a;
            while (b + 1 < k && std::fabs(inner_es.values[b + 1] - inner_es.values[a]) < tol::grouping) ++b;
            double smean = 0.0;
            for (int t = a; t <= b; ++t) smean += inner_es.values[t];
            smean /= (b - a + 1);
            UnitaryEigenspace ues;
            ues.theta = std::atan2(smean, c);
            CMatrix proj(n, n);
            for (int t = a; t <= b; ++t) {
                // eigenvector Q z
                CVector z = inner_es.vectors.column(t);
                CVector v(n);
                for (int r = 0; r < n; ++r) {
                    cplx acc = 0.0;
                    for (int c2 = 0; c2 < k; ++c2) acc += q(r, c2) * z[c2];
                    v[r] = acc;
                }
                for (int r = 0; r < n; ++r)
                    for (int c2 = 0; c2 < n; ++c2) proj(r, c2) += v[r] * std::conj(v[c2]);
            }
            ues.projection = std::move(proj);
            out.push_back(std::move(ues));
            a = b + 1;
        }
        i = j + 1;
    }
    std::sort(out.begin(), out.end(),
              [](const UnitaryEigenspace& x, const UnitaryEigenspace& y) { return x.theta < y.theta; });
    return out;
}

}  // namespace qwst
