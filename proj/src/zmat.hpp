/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_ZMAT_HPP
#define QUATARITH_ZMAT_HPP

#include "util.hpp"

namespace quatarith {

// Dense integer matrix, row major.  Rows are lattice generators throughout.
struct ZMat {
    int rows = 0, cols = 0;
    std::vector<Z> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

    Z& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Z& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    static ZMat identity(int n);
    bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

ZMat mul(const ZMat& x, const ZMat& y);

// In-place row Hermite normal form: returns the matrix with zero rows
// removed, pivots positive, entries above each pivot reduced into [0, pivot).
ZMat hnf(ZMat m);

// Row HNF of [m] together with a unimodular U (rows of U express the HNF rows
// and the kernel rows in terms of the original rows).  Zero rows are kept at
// the bottom; their U-rows span the left kernel.
void hnf_with_transform(ZMat m, ZMat& h, ZMat& u, int& rank);

// Basis of {x : x * m = 0} as rows.
ZMat left_kernel(const ZMat& m);

// det of a square matrix (fraction-free Gaussian elimination).
Z det(ZMat m);

// Lattice {y : y * A in den * Z^cols}, for A of full row rank.  Returns a
// basis (rows, dimension = A.rows) of that lattice scaled to be integral:
// out/outden is the rational basis.
void integral_row_preimage(const ZMat& A, const Z& den, ZMat& out, Z& outden);

// Solve x * A = b over Q for full-row-rank A (cols >= rows);
// returns false if no solution.
bool solve_left_rational(const ZMat& A, const std::vector<Z>& b, const Z& bden,
                         std::vector<Q>& x);

}  // namespace quatarith

#endif
