#pragma once

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qwst {

/// Small exact integer linear algebra for the PGST relation lattice.
/// Matrices are dense vectors of rows; dimensions stay tiny (a dozen or so),
/// entries stay small, so long long arithmetic suffices.
using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

/// Basis of { x in Z^c : M x = 0 } via unimodular column elimination.
inline IntMat integer_kernel(IntMat m, int cols) {
    const int rows = static_cast<int>(m.size());
    for (auto& r : m)
        if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("integer_kernel: ragged matrix");
    // track column operations in u (cols x cols identity)
    IntMat u(cols, IntVec(cols, 0));
    for (int i = 0; i < cols; ++i) u[i][i] = 1;

    auto col_addmul = [&](int dst, int src, long long f) {
        if (f == 0) return;
        for (int r = 0; r < rows; ++r) m[r][dst] += f * m[r][src];
        for (int r = 0; r < cols; ++r) u[r][dst] += f * u[r][src];
    };
    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows; ++r) std::swap(m[r][i], m[r][j]);
        for (int r = 0; r < cols; ++r) std::swap(u[r][i], u[r][j]);
    };

    int lead = 0;  // next free column
    for (int r = 0; r < rows && lead < cols; ++r) {
        // gcd-reduce columns lead..cols-1 on row r until at most one nonzero
        while (true) {
            int nz = -1, cnt = 0;
            long long best = 0;
            for (int c = lead; c < cols; ++c)
                if (m[r][c] != 0) {
                    ++cnt;
                    if (nz < 0 || std::llabs(m[r][c]) < std::llabs(best)) {
                        nz = c;
                        best = m[r][c];
                    }
                }
            if (cnt == 0) { nz = -1; break; }
            if (cnt == 1) {
                col_swap(lead, nz);
                ++lead;
                break;
            }
            for (int c = lead; c < cols; ++c)
                if (c != nz && m[r][c] != 0) col_addmul(c, nz, -(m[r][c] / best));
        }
    }
    // columns lead..cols-1 of u span the kernel
    IntMat basis;
    for (int c = lead; c < cols; ++c) {
        IntVec v(cols);
        for (int r = 0; r < cols; ++r) v[r] = u[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Given generators g_i of a lattice L and a linear form f with integer values
/// on L, return generators of { x in L : f(x) = 0 mod modulus }.
inline IntMat congruence_sublattice(const IntMat& gens, const IntVec& fvals, long long modulus) {
    const int k = static_cast<int>(gens.size());
    if (static_cast<int>(fvals.size()) != k)
        throw std::invalid_argument("congruence_sublattice: size mismatch");
    if (k == 0) return {};
    // kernel of the 1 x (k+1) matrix [f_1 ... f_k modulus] over Z; drop the slack
    IntMat row(1, IntVec(k + 1));
    for (int i = 0; i < k; ++i) row[0][i] = ((fvals[i] % modulus) + modulus) % modulus;
    row[0][k] = modulus;
    IntMat coeff = integer_kernel(row, k + 1);
    const int dim = gens.empty() ? 0 : static_cast<int>(gens[0].size());
    IntMat out;
    for (const auto& a : coeff) {
        IntVec v(dim, 0);
        bool nonzero = false;
        for (int i = 0; i < k; ++i)
            if (a[i] != 0) {
                nonzero = true;
                for (int d = 0; d < dim; ++d) v[d] += a[i] * gens[i][d];
            }
        if (nonzero) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace qwst
