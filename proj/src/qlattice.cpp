/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "qlattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quatarith {

namespace {

// rational matrix, row major
struct QM {
    int rows = 0, cols = 0;
    std::vector<Q> a;
    QM() = default;
    QM(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    Q& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Q& at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

QM qm_mul(const QM& x, const QM& y) {
    check(x.cols == y.rows, "qm_mul shape");
    QM r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Q& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

QM qm_inverse(QM m) {
    check(m.rows == m.cols, "qm_inverse shape");
    int n = m.rows;
    QM inv(n, n);
    for (int i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        check(piv >= 0, "qm_inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Q p = m.at(col, col);
        for (int j = 0; j < n; ++j) { m.at(col, j) /= p; inv.at(col, j) /= p; }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            Q f = m.at(i, col);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

QM lat_qm(const QLat& L) {
    QM r(L.m.rows, L.m.cols);
    for (int i = 0; i < L.m.rows; ++i)
        for (int j = 0; j < L.m.cols; ++j) r.at(i, j) = Q(L.m.at(i, j)) / Q(L.den);
    return r;
}

// standard basis quaternion number t (0..3) times omega^u
Qel basis_qel(int t, int u) {
    Qel r;
    r.c[t] = u == 0 ? Fel(1) : Fel(Q(0), Q(1));
    return r;
}

std::vector<Qel> std_basis(const QuatAlg& D) {
    int deg = D.field().degree();
    std::vector<Qel> b;
    for (int t = 0; t < 4; ++t)
        for (int u = 0; u < deg; ++u) b.push_back(basis_qel(t, u));
    return b;
}

// row(x * g) = row(x) * rmat(g)
QM rmat(const QuatAlg& D, const Qel& g) {
    int n = qdim(D);
    auto bas = std_basis(D);
    QM r(n, n);
    for (int s = 0; s < n; ++s) {
        auto v = qel_coords(D, D.mul(bas[s], g));
        for (int j = 0; j < n; ++j) r.at(s, j) = v[j];
    }
    return r;
}

// row(g * x) = row(x) * lmat(g)
QM lmat(const QuatAlg& D, const Qel& g) {
    int n = qdim(D);
    auto bas = std_basis(D);
    QM r(n, n);
    for (int s = 0; s < n; ++s) {
        auto v = qel_coords(D, D.mul(g, bas[s]));
        for (int j = 0; j < n; ++j) r.at(s, j) = v[j];
    }
    return r;
}

QLat lat_from_qm(const QM& rows) {
    Z den = 1;
    for (const Q& v : rows.a) den = lcm(den, Z(v.get_den()));
    ZMat m(rows.rows, rows.cols);
    for (int i = 0; i < rows.rows; ++i)
        for (int j = 0; j < rows.cols; ++j) {
            Q v = rows.at(i, j) * Q(den);
            m.at(i, j) = q_num(v);
        }
    QLat L;
    L.m = hnf(std::move(m));
    L.den = den;
    return lat_normalize(std::move(L));
}

// order-preserving preimage: lattice {x : x * A_rat in Z^cols}
QLat preimage_lattice(const QM& A) {
    Z den = 1;
    for (const Q& v : A.a) den = lcm(den, Z(v.get_den()));
    ZMat Ai(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) Ai.at(i, j) = q_num(A.at(i, j) * Q(den));
    QLat L;
    integral_row_preimage(Ai, den, L.m, L.den);
    L.m = hnf(std::move(L.m));
    return lat_normalize(std::move(L));
}

}  // namespace

std::vector<Q> lat_coords(const QLat& L, const std::vector<Q>& target) {
    Z bden = 1;
    for (const Q& v : target) {
        Q w = v * Q(L.den);
        bden = lcm(bden, Z(w.get_den()));
    }
    std::vector<Z> b;
    b.reserve(target.size());
    for (const Q& v : target) {
        Q w = v * Q(L.den) * Q(bden);
        b.push_back(q_num(w));
    }
    std::vector<Q> y;
    bool ok = solve_left_rational(L.m, b, bden, y);
    check(ok, "lat_coords: element outside the span");
    return y;
}

int qdim(const QuatAlg& D) { return 4 * D.field().degree(); }

std::vector<Q> qel_coords(const QuatAlg& D, const Qel& x) {
    int deg = D.field().degree();
    std::vector<Q> v(size_t(4) * deg);
    for (int t = 0; t < 4; ++t) {
        v[size_t(t) * deg] = x.c[t].a;
        if (deg == 2) v[size_t(t) * deg + 1] = x.c[t].b;
        else check(x.c[t].b == 0, "qel_coords: omega part over Q");
    }
    return v;
}

Qel qel_from_coords(const QuatAlg& D, const std::vector<Q>& v) {
    int deg = D.field().degree();
    check((int)v.size() == 4 * deg, "qel_from_coords size");
    Qel x;
    for (int t = 0; t < 4; ++t) {
        x.c[t].a = v[size_t(t) * deg];
        x.c[t].b = deg == 2 ? v[size_t(t) * deg + 1] : Q(0);
    }
    return x;
}

QLat lat_normalize(QLat L) {
    check(L.den > 0, "lat_normalize: nonpositive denominator");
    L.m = hnf(std::move(L.m));
    Z g = L.den;
    for (const Z& v : L.m.a) {
        g = gcd(g, v);
        if (g == 1) break;
    }
    if (g > 1) {
        for (Z& v : L.m.a) v /= g;
        L.den /= g;
    }
    return L;
}

QLat lat_from_rows(const QuatAlg& D, const std::vector<std::vector<Q>>& rows) {
    int n = qdim(D);
    QM a((int)rows.size(), n);
    for (int i = 0; i < a.rows; ++i) {
        check((int)rows[i].size() == n, "lat_from_rows size");
        for (int j = 0; j < n; ++j) a.at(i, j) = rows[i][j];
    }
    return lat_from_qm(a);
}

QLat lat_zspan(const QuatAlg& D, const std::vector<Qel>& gens) {
    std::vector<std::vector<Q>> rows;
    rows.reserve(gens.size());
    for (const Qel& g : gens) rows.push_back(qel_coords(D, g));
    return lat_from_rows(D, rows);
}

QLat lat_ofspan(const QuatAlg& D, const std::vector<Qel>& gens) {
    if (D.field().degree() == 1) return lat_zspan(D, gens);
    std::vector<Qel> all = gens;
    Fel omega(Q(0), Q(1));
    for (const Qel& g : gens) all.push_back(D.mul(g, omega));
    return lat_zspan(D, all);
}

std::vector<Qel> lat_basis(const QuatAlg& D, const QLat& L) {
    std::vector<Qel> b;
    b.reserve(L.m.rows);
    for (int i = 0; i < L.m.rows; ++i) {
        std::vector<Q> v(L.m.cols);
        for (int j = 0; j < L.m.cols; ++j) v[j] = Q(L.m.at(i, j)) / Q(L.den);
        b.push_back(qel_from_coords(D, v));
    }
    return b;
}

QLat lat_mul(const QuatAlg& D, const QLat& x, const QLat& y) {
    auto bx = lat_basis(D, x), by = lat_basis(D, y);
    std::vector<Qel> prods;
    prods.reserve(bx.size() * by.size());
    for (const Qel& u : bx)
        for (const Qel& v : by) prods.push_back(D.mul(u, v));
    return lat_zspan(D, prods);
}

QLat lat_mul(const QuatAlg& D, const QLat& x, const Qel& g) {
    auto bx = lat_basis(D, x);
    for (Qel& u : bx) u = D.mul(u, g);
    return lat_zspan(D, bx);
}

QLat lat_mul(const QuatAlg& D, const Qel& g, const QLat& x) {
    auto bx = lat_basis(D, x);
    for (Qel& u : bx) u = D.mul(g, u);
    return lat_zspan(D, bx);
}

QLat lat_mul(const QuatAlg& D, const QLat& x, const Q& s) {
    check(s != 0, "lat_mul: zero scalar");
    (void)D;
    QLat r = x;
    Z num = s.get_num() > 0 ? Z(s.get_num()) : Z(-s.get_num());
    for (Z& v : r.m.a) v *= num;
    r.den *= s.get_den();
    return lat_normalize(std::move(r));
}

QLat lat_scale(const QuatAlg& D, const QLat& x, const Fel& s) {
    Qel g;
    g.c[0] = s;
    return lat_mul(D, x, g);
}

QLat lat_scale(const QuatAlg& D, const QLat& x, const FIdeal& a) {
    auto bx = lat_basis(D, x);
    auto ba = D.field().basis(a);
    std::vector<Qel> prods;
    prods.reserve(bx.size() * ba.size());
    for (const Qel& u : bx)
        for (const Fel& s : ba) prods.push_back(D.mul(u, s));
    return lat_zspan(D, prods);
}

QLat lat_add(const QuatAlg& D, const QLat& x, const QLat& y) {
    std::vector<std::vector<Q>> rows;
    for (const QLat* L : {&x, &y})
        for (int i = 0; i < L->m.rows; ++i) {
            std::vector<Q> v(L->m.cols);
            for (int j = 0; j < L->m.cols; ++j) v[j] = Q(L->m.at(i, j)) / Q(L->den);
            rows.push_back(std::move(v));
        }
    return lat_from_rows(D, rows);
}

QLat lat_intersect(const QuatAlg& D, const QLat& x, const QLat& y) {
    (void)D;
    int n = x.m.cols;
    Z d = lcm(x.den, y.den);
    ZMat S(x.m.rows + y.m.rows, n);
    Z fx = d / x.den, fy = d / y.den;
    for (int i = 0; i < x.m.rows; ++i)
        for (int j = 0; j < n; ++j) S.at(i, j) = x.m.at(i, j) * fx;
    for (int i = 0; i < y.m.rows; ++i)
        for (int j = 0; j < n; ++j) S.at(x.m.rows + i, j) = -y.m.at(i, j) * fy;
    ZMat K = left_kernel(S);
    ZMat R(K.rows, n);
    for (int r = 0; r < K.rows; ++r)
        for (int j = 0; j < n; ++j) {
            Z v = 0;
            for (int i = 0; i < x.m.rows; ++i) v += K.at(r, i) * x.m.at(i, j) * fx;
            R.at(r, j) = v;
        }
    QLat res;
    res.m = hnf(std::move(R));
    res.den = d;
    return lat_normalize(std::move(res));
}

QLat lat_conj(const QuatAlg& D, const QLat& L) {
    auto b = lat_basis(D, L);
    for (Qel& u : b) u = D.conj(u);
    return lat_zspan(D, b);
}

bool lat_contains(const QuatAlg& D, const QLat& L, const Qel& x) {
    auto y = lat_coords(L, qel_coords(D, x));
    for (const Q& v : y)
        if (v.get_den() != 1) return false;
    return true;
}

bool lat_contains(const QuatAlg& D, const QLat& L, const QLat& M) {
    for (const Qel& u : lat_basis(D, M))
        if (!lat_contains(D, L, u)) return false;
    return true;
}

Q lat_index(const QuatAlg& D, const QLat& L, const QLat& M) {
    int n = qdim(D);
    check(L.m.rows == n && M.m.rows == n, "lat_index: lattice not full rank");
    Q dm = Q(det(M.m)), dl = Q(det(L.m));
    check(dm != 0 && dl != 0, "lat_index: degenerate lattice");
    Q r = dm / dl;
    for (int t = 0; t < n; ++t) r = r * Q(L.den) / Q(M.den);
    if (r < 0) r = -r;
    return r;
}

QLat left_order(const QuatAlg& D, const QLat& L) {
    int n = qdim(D);
    check(L.m.rows == n, "left_order: lattice not full rank");
    QM Binv = qm_inverse(lat_qm(L));
    auto bas = lat_basis(D, L);
    QM A(n, n * n);
    for (int j = 0; j < n; ++j) {
        QM block = qm_mul(rmat(D, bas[j]), Binv);
        for (int s = 0; s < n; ++s)
            for (int c = 0; c < n; ++c) A.at(s, j * n + c) = block.at(s, c);
    }
    return preimage_lattice(A);
}

QLat right_order(const QuatAlg& D, const QLat& L) {
    int n = qdim(D);
    check(L.m.rows == n, "right_order: lattice not full rank");
    QM Binv = qm_inverse(lat_qm(L));
    auto bas = lat_basis(D, L);
    QM A(n, n * n);
    for (int j = 0; j < n; ++j) {
        QM block = qm_mul(lmat(D, bas[j]), Binv);
        for (int s = 0; s < n; ++s)
            for (int c = 0; c < n; ++c) A.at(s, j * n + c) = block.at(s, c);
    }
    return preimage_lattice(A);
}

QLat lat_inverse(const QuatAlg& D, const QLat& L) {
    const Field& F = D.field();
    return lat_scale(D, lat_conj(D, L), F.inverse(nr_ideal(D, L)));
}

FIdeal nr_ideal(const QuatAlg& D, const QLat& L) {
    const Field& F = D.field();
    auto b = lat_basis(D, L);
    std::vector<Fel> gens;
    for (size_t i = 0; i < b.size(); ++i) {
        gens.push_back(D.nrd(b[i]));
        for (size_t j = i + 1; j < b.size(); ++j)
            gens.push_back(D.trd(D.mul(b[i], D.conj(b[j]))));
    }
    return F.ideal_from_generators(gens);
}

void lat_gram(const QuatAlg& D, const QLat& L, ZMat& g, Z& den2) {
    const Field& F = D.field();
    int n = qdim(D);
    check(L.m.rows == n, "lat_gram: lattice not full rank");
    auto b = lat_basis(D, L);
    QM gr(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Q v = F.trace(D.trd(D.mul(b[i], D.conj(b[j]))));
            gr.at(i, j) = v;
            gr.at(j, i) = v;
        }
    den2 = 1;
    for (const Q& v : gr.a) den2 = lcm(den2, Z(v.get_den()));
    g = ZMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = q_num(gr.at(i, j) * Q(den2));
}

namespace {

// LLL (delta = 3/4) on a positive definite rational Gram matrix; returns
// unimodular U with U g U^T reduced. The row operations are exact over Z;
// the Gram-Schmidt data steering them is float, which can only affect how
// well-reduced the result is, never its correctness.
std::vector<std::vector<Z>> lll_gram(const std::vector<std::vector<Q>>& g0) {
    int n = (int)g0.size();
    std::vector<std::vector<Z>> U(n, std::vector<Z>(n, 0));
    for (int i = 0; i < n; ++i) U[i][i] = 1;
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = g0[i][j].get_d();

    std::vector<std::vector<double>> G(n, std::vector<double>(n)),
        mu(n, std::vector<double>(n));
    std::vector<double> B(n);
    auto recompute = [&]() {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0;
                for (int k = 0; k < n; ++k) {
                    if (U[i][k] == 0) continue;
                    double row = 0;
                    for (int l = 0; l < n; ++l)
                        if (U[j][l] != 0) row += U[j][l].get_d() * g[k][l];
                    acc += U[i][k].get_d() * row;
                }
                G[i][j] = acc;
            }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                double acc = G[i][j];
                for (int k = 0; k < j; ++k) acc -= mu[i][k] * mu[j][k] * B[k];
                mu[i][j] = acc / B[j];
            }
            double acc = G[i][i];
            for (int k = 0; k < i; ++k) acc -= mu[i][k] * mu[i][k] * B[k];
            B[i] = acc;
            if (B[i] <= 0) return false;  // numerically degenerate, stop here
        }
        return true;
    };

    if (!recompute()) return U;
    int k = 1;
    for (long ops = 0; k < n && ops < 10000; ++ops) {
        bool changed = false;
        for (int j = k - 1; j >= 0; --j) {
            double r = std::floor(mu[k][j] + 0.5);
            if (!(std::fabs(r) < 9e15)) return U;
            if (r != 0) {
                Z rz((long)r);
                for (int l = 0; l < n; ++l) U[k][l] -= rz * U[j][l];
                changed = true;
            }
        }
        if (changed && !recompute()) break;
        if (B[k] < (0.75 - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            std::swap(U[k], U[k - 1]);
            if (!recompute()) break;
            k = k > 1 ? k - 1 : 1;
        } else {
            ++k;
        }
    }
    return U;
}

// Q(x) = sum_i d[i] (x_i + sum_{j>i} u[i][j] x_j)^2 in doubles; the search
// budget carries a safety margin and any leaf near the boundary is
// re-checked against the exact Gram matrix, so the result is exact
void fp_decompose_d(const std::vector<std::vector<Q>>& g, std::vector<double>& d,
                    std::vector<std::vector<double>>& u) {
    int n = (int)g.size();
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q[i][j] = g[i][j].get_d();
    for (int i = 0; i < n; ++i) {
        check(q[i][i] > 0, "short vectors: form not positive definite");
        for (int j = i + 1; j < n; ++j) q[j][i] = q[i][j], q[i][j] /= q[i][i];
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    d.assign(n, 0.0);
    u.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        d[i] = q[i][i];
        for (int j = i + 1; j < n; ++j) u[i][j] = q[i][j];
    }
}

// keep_rem drops interior leaves early: a leaf is kept only when its
// remaining budget is at most keep_rem (shell searches pass a small value,
// full-ball searches pass infinity)
void fp_recurse_d(int i, bool higher_zero, double budget, double keep_rem,
                  const std::vector<double>& d,
                  const std::vector<std::vector<double>>& u, std::vector<long>& x,
                  std::vector<std::vector<long>>& out) {
    if (i < 0) {
        if (!higher_zero && budget <= keep_rem) out.push_back(x);
        return;
    }
    int n = (int)d.size();
    if (budget < 0) return;
    double c = 0;
    for (int j = i + 1; j < n; ++j)
        if (x[j] != 0) c += u[i][j] * (double)x[j];
    double rad = std::sqrt(budget / d[i]);
    long lo = (long)std::ceil(-c - rad);
    long hi = (long)std::floor(-c + rad);
    if (higher_zero && lo < 0) lo = 0;
    for (long v = lo; v <= hi; ++v) {
        x[i] = v;
        double t = (double)v + c;
        fp_recurse_d(i - 1, higher_zero && v == 0, budget - d[i] * t * t, keep_rem,
                     d, u, x, out);
    }
    x[i] = 0;
}

}  // namespace

namespace {

double fel_d(const Field& F, const Fel& x, int i) {
    Q lo, hi;
    F.sigma_interval(x, i, 48, lo, hi);
    return (lo.get_d() + hi.get_d()) / 2;
}

// shared enumeration core; nu == nullptr collects T(x) <= bound, otherwise
// only the solutions of nrd(x) == *nu (with bound = 2 Tr(nu), the exact
// shell all solutions lie on)
std::vector<Qel> enum_short(const QuatAlg& D, const QLat& L, const Q& bound,
                            const Fel* nu) {
    const Field& F = D.field();
    int n = qdim(D);
    check(L.m.rows == n, "short_vectors: lattice not full rank");
    if (bound < 0) return {};
    ZMat G;
    Z den2;
    lat_gram(D, L, G, den2);
    std::vector<std::vector<Q>> g(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = Q(G.at(i, j)) / Q(den2);
    auto W = lll_gram(g);
    std::vector<std::vector<Q>> gr(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Q acc(0);
            for (int k = 0; k < n; ++k) {
                if (W[i][k] == 0) continue;
                Q row(0);
                for (int l = 0; l < n; ++l)
                    if (W[j][l] != 0) row += Q(W[j][l]) * g[k][l];
                acc += Q(W[i][k]) * row;
            }
            gr[i][j] = acc;
        }
    std::vector<double> d;
    std::vector<std::vector<double>> u;
    fp_decompose_d(gr, d, u);
    double bound_d = bound.get_d();
    double margin = 1e-4 + 1e-9 * std::max(1.0, std::fabs(bound_d));
    double keep_rem = nu ? 2 * margin : std::numeric_limits<double>::infinity();
    std::vector<long> x(n, 0);
    std::vector<std::vector<long>> leaves;
    fp_recurse_d(n - 1, true, bound_d + margin, keep_rem, d, u, x, leaves);

    auto bas = lat_basis(D, L);
    // reduced basis and, for norm searches, both embeddings of the
    // polarized norm form nrd(x) = (t B t^T) / 2, B_sr = trd(b_s conj(b_r))
    std::vector<Qel> rbas(n);
    for (int s = 0; s < n; ++s) {
        Qel v;
        for (int k = 0; k < n; ++k)
            if (W[s][k] != 0) v = v + D.mul(bas[k], Q(W[s][k]));
        rbas[s] = v;
    }
    std::vector<std::vector<double>> nrm0, nrm1;
    double target0 = 0, target1 = 0;
    if (nu) {
        nrm0.assign(n, std::vector<double>(n));
        nrm1.assign(n, std::vector<double>(n));
        for (int s = 0; s < n; ++s)
            for (int r = 0; r < n; ++r) {
                Fel b = D.trd(D.mul(rbas[s], D.conj(rbas[r])));
                nrm0[s][r] = fel_d(F, b, 0);
                nrm1[s][r] = F.degree() == 2 ? fel_d(F, b, 1) : nrm0[s][r];
            }
        target0 = fel_d(F, *nu, 0);
        target1 = F.degree() == 2 ? fel_d(F, *nu, 1) : target0;
    }
    std::vector<std::vector<double>> gd(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gd[i][j] = gr[i][j].get_d();

    std::vector<Qel> res;
    for (const auto& t : leaves) {
        if (nu) {
            double v0 = 0, v1 = 0;
            for (int i = 0; i < n; ++i) {
                if (t[i] == 0) continue;
                double r0 = 0, r1 = 0;
                for (int j = 0; j < n; ++j)
                    if (t[j] != 0) {
                        r0 += nrm0[i][j] * (double)t[j];
                        r1 += nrm1[i][j] * (double)t[j];
                    }
                v0 += r0 * (double)t[i];
                v1 += r1 * (double)t[i];
            }
            double tol = 1e-4 + 1e-9 * std::fabs(bound_d);
            if (std::fabs(v0 / 2 - target0) > tol ||
                std::fabs(v1 / 2 - target1) > tol)
                continue;
        } else {
            double td = 0;
            for (int i = 0; i < n; ++i) {
                if (t[i] == 0) continue;
                double row = 0;
                for (int j = 0; j < n; ++j)
                    if (t[j] != 0) row += gd[i][j] * (double)t[j];
                td += row * (double)t[i];
            }
            if (td > bound_d - margin) {
                // boundary band: settle against the exact Gram matrix
                Q te(0);
                for (int i = 0; i < n; ++i) {
                    if (t[i] == 0) continue;
                    Q row(0);
                    for (int j = 0; j < n; ++j)
                        if (t[j] != 0) row += gr[i][j] * Q(t[j]);
                    te += row * Q(t[i]);
                }
                if (te > bound) continue;
            }
        }
        Qel v;
        for (int s = 0; s < n; ++s) {
            if (t[s] == 0) continue;
            v = v + D.mul(rbas[s], Q(t[s]));
        }
        if (nu && D.nrd(v) != *nu) continue;
        res.push_back(v);
    }
    return res;
}

}  // namespace

std::vector<Qel> short_vectors(const QuatAlg& D, const QLat& L, const Q& bound) {
    return enum_short(D, L, bound, nullptr);
}

std::vector<Qel> reduced_basis(const QuatAlg& D, const QLat& L) {
    int n = qdim(D);
    check(L.m.rows == n, "reduced_basis: lattice not full rank");
    ZMat G;
    Z den2;
    lat_gram(D, L, G, den2);
    std::vector<std::vector<Q>> g(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = Q(G.at(i, j)) / Q(den2);
    auto W = lll_gram(g);
    auto bas = lat_basis(D, L);
    std::vector<Qel> out(n);
    for (int i = 0; i < n; ++i) {
        Qel v;
        for (int k = 0; k < n; ++k)
            if (W[i][k] != 0) v = v + D.mul(bas[k], Q(W[i][k]));
        out[i] = v;
    }
    return out;
}

std::vector<Qel> elements_of_nrd(const QuatAlg& D, const QLat& L, const Fel& nu) {
    const Field& F = D.field();
    if (nu.is_zero()) return {};
    if (!F.is_totally_positive(nu)) return {};
    // every solution sits on the exact shell T(x) = 2 Tr(nu)
    return enum_short(D, L, 2 * F.trace(nu), &nu);
}

std::vector<Qel> coset_reps(const QuatAlg& D, const QLat& M, const QLat& L,
                            const Z& limit) {
    int n = qdim(D);
    check(M.m.rows == n && L.m.rows == n, "coset_reps: lattice not full rank");
    auto mb = lat_basis(D, M);
    ZMat T(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<Q> v(n);
        for (int j = 0; j < n; ++j) v[j] = Q(L.m.at(i, j)) / Q(L.den);
        auto c = lat_coords(M, v);
        for (int j = 0; j < n; ++j) {
            check(c[j].get_den() == 1, "coset_reps: not a sublattice");
            T.at(i, j) = q_num(c[j]);
        }
    }
    ZMat H = hnf(std::move(T));
    check(H.rows == n, "coset_reps: sublattice not full rank");
    Z count = 1;
    for (int i = 0; i < n; ++i) count *= H.at(i, i);
    check(count <= limit, "coset_reps: index too large");

    std::vector<Qel> reps;
    reps.reserve(count.get_ui());
    std::vector<Z> t(n, 0);
    while (true) {
        Qel x;
        for (int i = 0; i < n; ++i)
            if (t[i] != 0) x = x + D.mul(mb[i], Q(t[i]));
        reps.push_back(x);
        int i = 0;
        while (i < n) {
            ++t[i];
            if (t[i] < H.at(i, i)) break;
            t[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return reps;
}

Qel qel_mod(const QuatAlg& D, const QLat& L, const Qel& x) {
    auto v = lat_coords(L, qel_coords(D, x));
    Qel r = x;
    auto bas = lat_basis(D, L);
    for (size_t i = 0; i < v.size(); ++i) {
        Z f = floor_q(v[i]);
        if (f != 0) r = r - D.mul(bas[i], Q(f));
    }
    return r;
}

}  // namespace quatarith
