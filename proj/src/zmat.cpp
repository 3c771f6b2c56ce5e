/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "zmat.hpp"

namespace quatarith {

ZMat ZMat::identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ZMat mul(const ZMat& x, const ZMat& y) {
    check(x.cols == y.rows, "mul: shape mismatch");
    ZMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Z& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

namespace {

void swap_rows(ZMat& m, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

// row[i] -= q * row[j]
void submul_row(ZMat& m, int i, int j, const Z& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(j, c);
}

// Core HNF loop; reduces m in place; if u is non-null it is kept in sync as
// the transform (u starts as identity).  Returns rank.
int hnf_inplace(ZMat& m, ZMat* u) {
    int r = 0;
    for (int col = 0; col < m.cols && r < m.rows; ++col) {
        // Eliminate below position (r, col) by Euclidean steps.
        while (true) {
            int piv = -1;
            for (int i = r; i < m.rows; ++i)
                if (m.at(i, col) != 0 && (piv < 0 || mpz_cmpabs(m.at(i, col).get_mpz_t(), m.at(piv, col).get_mpz_t()) < 0))
                    piv = i;
            if (piv < 0) break;
            swap_rows(m, r, piv);
            if (u) swap_rows(*u, r, piv);
            bool clean = true;
            for (int i = r + 1; i < m.rows; ++i) {
                if (m.at(i, col) == 0) continue;
                Z q = fdiv(m.at(i, col), m.at(r, col));
                submul_row(m, i, r, q);
                if (u) submul_row(*u, i, r, q);
                if (m.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m.at(r, col) == 0) continue;
        if (m.at(r, col) < 0) {
            for (int c = 0; c < m.cols; ++c) m.at(r, c) = -m.at(r, c);
            if (u)
                for (int c = 0; c < u->cols; ++c) u->at(r, c) = -u->at(r, c);
        }
        for (int i = 0; i < r; ++i) {
            Z q = fdiv(m.at(i, col), m.at(r, col));
            submul_row(m, i, r, q);
            if (u) submul_row(*u, i, r, q);
        }
        ++r;
    }
    return r;
}

}  // namespace

ZMat hnf(ZMat m) {
    int r = hnf_inplace(m, nullptr);
    ZMat out(r, m.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

void hnf_with_transform(ZMat m, ZMat& h, ZMat& u, int& rank) {
    u = ZMat::identity(m.rows);
    rank = hnf_inplace(m, &u);
    h = m;
}

ZMat left_kernel(const ZMat& m) {
    ZMat h, u;
    int rank;
    hnf_with_transform(m, h, u, rank);
    ZMat k(m.rows - rank, m.rows);
    for (int i = rank; i < m.rows; ++i)
        for (int j = 0; j < m.rows; ++j) k.at(i - rank, j) = u.at(i, j);
    return k;
}

Z det(ZMat m) {
    check(m.rows == m.cols, "det: not square");
    int n = m.rows;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    Z prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            swap_rows(m, k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Z num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                check(num % prev == 0, "Bareiss divisibility");
                m.at(i, j) = num / prev;
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

void integral_row_preimage(const ZMat& A, const Z& den, ZMat& out, Z& outden) {
    int k = A.rows, mcols = A.cols;
    // Column HNF via row HNF of the transpose: L = hnf(A^T)^T is lower
    // triangular k x k, and {y : y*A in den*Z^m} = den * Z^k * L^{-1}.
    ZMat At(mcols, k);
    for (int i = 0; i < mcols; ++i)
        for (int j = 0; j < k; ++j) At.at(i, j) = A.at(j, i);
    ZMat H = hnf(At);
    check(H.rows == k, "integral_row_preimage: not full row rank");
    // Invert the upper-triangular H (so L^{-1} = (H^{-1})^T) by back
    // substitution over Q, then scale by den.
    std::vector<std::vector<Q>> inv(k, std::vector<Q>(k));
    for (int c = 0; c < k; ++c) {
        for (int i = k - 1; i >= 0; --i) {
            Q s = (i == c) ? Q(1) : Q(0);
            for (int j = i + 1; j < k; ++j) s -= Q(H.at(i, j)) * inv[j][c];
            inv[i][c] = s / Q(H.at(i, i));
        }
    }
    // y rows: den * rows of L^{-1}; (L^{-1})_{ij} = inv[j][i].
    Z l = 1;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Q v = Q(den) * inv[j][i];
            v.canonicalize();
            l = lcm(l, v.get_den());
        }
    out = ZMat(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Q v = Q(den) * inv[j][i] * Q(l);
            v.canonicalize();
            check(v.get_den() == 1, "integral_row_preimage: denominator");
            out.at(i, j) = v.get_num();
        }
    out = hnf(std::move(out));
    outden = l;
}

bool solve_left_rational(const ZMat& A, const std::vector<Z>& b, const Z& bden,
                         std::vector<Q>& x) {
    // Solve x * A = b/bden by Gaussian elimination on A^T | b^T.
    int k = A.rows, m = A.cols;
    std::vector<std::vector<Q>> M(m, std::vector<Q>(k + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < k; ++j) M[i][j] = Q(A.at(j, i));
        M[i][k] = Q(b[i]) / Q(bden);
    }
    int row = 0;
    std::vector<int> pivcol;
    for (int col = 0; col < k && row < m; ++col) {
        int piv = -1;
        for (int i = row; i < m; ++i)
            if (M[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(M[piv], M[row]);
        Q inv = 1 / M[row][col];
        for (int j = col; j <= k; ++j) M[row][j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == row || M[i][col] == 0) continue;
            Q f = M[i][col];
            for (int j = col; j <= k; ++j) M[i][j] -= f * M[row][j];
        }
        pivcol.push_back(col);
        ++row;
    }
    for (int i = row; i < m; ++i)
        if (M[i][k] != 0) return false;
    x.assign(k, Q(0));
    for (int i = 0; i < (int)pivcol.size(); ++i) x[pivcol[i]] = M[i][k];
    return true;
}

}  // namespace quatarith
