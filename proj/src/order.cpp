/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "order.hpp"

#include <algorithm>

namespace quatarith {

namespace {

Fel fel_det(const Field& F, std::vector<std::vector<Fel>> m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    Fel acc;
    int sign = 1;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Fel>> minor(n - 1, std::vector<Fel>(n - 1));
        for (size_t i = 1; i < n; ++i) {
            size_t jj = 0;
            for (size_t j = 0; j < n; ++j) {
                if (j == c) continue;
                minor[i - 1][jj++] = m[i][j];
            }
        }
        Fel term = F.mul(m[0][c], fel_det(F, std::move(minor)));
        acc = sign > 0 ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}

// {x in D : trd(x b_j) in O_F for all basis elements b_j of L}
QLat trace_dual(const QuatAlg& D, const QLat& L) {
    const Field& F = D.field();
    int n = qdim(D);
    int deg = F.degree();
    auto bas = lat_basis(D, L);
    std::vector<std::vector<Q>> A(n, std::vector<Q>(size_t(n) * deg));
    for (int j = 0; j < n; ++j) {
        for (int s = 0; s < n; ++s) {
            std::vector<Q> es(n, Q(0));
            es[s] = 1;
            Fel t = D.trd(D.mul(qel_from_coords(D, es), bas[j]));
            A[s][size_t(j) * deg] = t.a;
            if (deg == 2) A[s][size_t(j) * deg + 1] = t.b;
        }
    }
    Z den = 1;
    for (auto& row : A)
        for (Q& v : row) den = lcm(den, Z(v.get_den()));
    ZMat Ai(n, n * deg);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n * deg; ++j) {
            Q w = A[i][j] * Q(den);
            Ai.at(i, j) = q_num(w);
        }
    QLat R;
    integral_row_preimage(Ai, den, R.m, R.den);
    R.m = hnf(std::move(R.m));
    return lat_normalize(std::move(R));
}

// multiplicative closure of an order lattice enlarged by x; empty result
// on failure to stabilize
bool order_closure(const QuatAlg& D, const QLat& start, const Qel& x, QLat& out) {
    QLat L = lat_add(D, start, lat_ofspan(D, {x}));
    for (int iter = 0; iter < 24; ++iter) {
        QLat L2 = lat_add(D, L, lat_mul(D, L, L));
        if (L2 == L) {
            out = L;
            return true;
        }
        L = L2;
    }
    return false;
}

bool is_integral_qel(const QuatAlg& D, const Qel& x) {
    const Field& F = D.field();
    return F.is_integral(D.trd(x)) && F.is_integral(D.nrd(x));
}

// one saturation pass at pr: returns true and replaces lat if an integral
// element outside lat was adjoined
bool saturate_once(const QuatAlg& D, QLat& lat, const FPrime& pr) {
    const Field& F = D.field();
    QLat frac = lat_scale(D, lat, F.inverse(pr.ideal));
    QLat C = lat_intersect(D, frac, trace_dual(D, lat));
    for (const Qel& x : coset_reps(D, C, lat, Z(4000000))) {
        if (x.is_zero() || lat_contains(D, lat, x)) continue;
        if (!is_integral_qel(D, x)) continue;
        QLat bigger;
        if (!order_closure(D, lat, x, bigger)) continue;
        bool ok = true;
        for (const Qel& b : lat_basis(D, bigger))
            if (!is_integral_qel(D, b)) { ok = false; break; }
        if (!ok) continue;
        lat = bigger;
        return true;
    }
    return false;
}

// radical of L/prL for an order lattice, odd residue characteristic:
// kernel of the reduced trace pairing into O_F/pr
QLat radical_odd(const QuatAlg& D, const QLat& L, const FPrime& pr) {
    const Field& F = D.field();
    int n = qdim(D);
    int deg = F.degree();
    auto bas = lat_basis(D, L);

    // pair membership in pr: coords * Pinv integral, P = ideal matrix of pr
    std::vector<std::vector<Q>> Pinv(deg, std::vector<Q>(deg));
    {
        const ZMat& P = pr.ideal.m;
        check(pr.ideal.den == 1, "radical_odd: fractional prime");
        if (deg == 1) {
            Pinv[0][0] = Q(1) / Q(P.at(0, 0));
        } else {
            Q dt = Q(P.at(0, 0)) * Q(P.at(1, 1)) - Q(P.at(0, 1)) * Q(P.at(1, 0));
            Pinv[0][0] = Q(P.at(1, 1)) / dt;
            Pinv[0][1] = -Q(P.at(0, 1)) / dt;
            Pinv[1][0] = -Q(P.at(1, 0)) / dt;
            Pinv[1][1] = Q(P.at(0, 0)) / dt;
        }
    }

    std::vector<std::vector<Q>> A(n, std::vector<Q>(size_t(n) * deg));
    for (int j = 0; j < n; ++j)
        for (int s = 0; s < n; ++s) {
            Fel t = D.trd(D.mul(bas[s], bas[j]));
            Q c[2] = {t.a, deg == 2 ? t.b : Q(0)};
            for (int u = 0; u < deg; ++u) {
                Q acc(0);
                for (int w = 0; w < deg; ++w) acc += c[w] * Pinv[w][u];
                A[s][size_t(j) * deg + u] = acc;
            }
        }
    Z den = 1;
    for (auto& row : A)
        for (Q& v : row) den = lcm(den, Z(v.get_den()));
    ZMat Ai(n, n * deg);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n * deg; ++j) {
            Q w = A[i][j] * Q(den);
            Ai.at(i, j) = q_num(w);
        }
    ZMat Tm;
    Z Tden;
    integral_row_preimage(Ai, den, Tm, Tden);
    // rows of Tm/Tden are coefficient vectors over the basis of L
    QLat J;
    J.m = mul(Tm, L.m);
    J.den = Tden * L.den;
    return lat_normalize(std::move(J));
}

// radical for residue characteristic 2 by nilpotency search inside the
// reduced trace kernel
QLat radical_dyadic(const QuatAlg& D, const QLat& L, const FPrime& pr) {
    QLat K1 = lat_intersect(D, radical_odd(D, L, pr), L);
    QLat PL = lat_scale(D, L, pr.ideal);
    std::vector<Qel> good;
    for (const Qel& z : coset_reps(D, K1, PL, Z(1 << 20))) {
        // z generates a nil ideal iff every element of (O z O + prO)/prO
        // is nilpotent
        std::vector<Qel> gens;
        auto bas = lat_basis(D, L);
        for (const Qel& u : bas)
            for (const Qel& v : bas) gens.push_back(D.mul(D.mul(u, z), v));
        QLat ideal = lat_add(D, lat_zspan(D, gens), PL);
        bool nil = true;
        for (const Qel& u : coset_reps(D, ideal, PL, Z(1 << 20))) {
            Qel u2 = D.mul(u, u);
            Qel u4 = D.mul(u2, u2);
            if (!lat_contains(D, PL, u4)) { nil = false; break; }
        }
        if (nil) good.push_back(z);
    }
    QLat J = PL;
    if (!good.empty()) J = lat_add(D, J, lat_zspan(D, good));
    return J;
}

int residue_dim(const QuatAlg& D, const QLat& num, const QLat& den_lat, const Z& q) {
    Q idx = lat_index(D, num, den_lat);
    check(idx.get_den() == 1, "residue_dim: bad index");
    Z n = idx.get_num();
    int dim = 0;
    while (n > 1) {
        check(n % q == 0, "residue_dim: index not a power of the residue size");
        n /= q;
        ++dim;
    }
    return dim;
}

bool is_residue_square(const Field& F, const FPrime& pr, const Fel& x) {
    QuotRing R(F, pr, 1);
    check(R.is_unit(x), "is_residue_square: not a unit");
    Z q = R.size();
    Z e = (q - 1) / 2;
    Fel acc(1), base = R.reduce(x);
    Z k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = R.reduce(F.mul(acc, base));
        base = R.reduce(F.mul(base, base));
        k /= 2;
    }
    return acc == R.reduce(Fel(1));
}

}  // namespace

FIdeal reduced_discriminant(const QuatAlg& D, const QLat& lat) {
    const Field& F = D.field();
    int n = qdim(D);
    check(lat.m.rows == n, "reduced_discriminant: lattice not full rank");
    auto bas = lat_basis(D, lat);
    std::vector<Fel> tr(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Fel t = D.trd(D.mul(bas[i], bas[j]));
            tr[size_t(i) * n + j] = t;
            tr[size_t(j) * n + i] = t;
        }
    std::vector<Fel> dets;
    std::vector<int> idx(4);
    // all 4-subsets of the basis
    std::vector<int> c = {0, 1, 2, 3};
    while (true) {
        std::vector<std::vector<Fel>> m(4, std::vector<Fel>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m[i][j] = tr[size_t(c[i]) * n + c[j]];
        dets.push_back(fel_det(F, std::move(m)));
        int i = 3;
        while (i >= 0 && c[i] == n - 4 + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < 4; ++j) c[j] = c[j - 1] + 1;
    }
    FIdeal disc = F.ideal_from_generators(dets);
    auto rd = F.sqrt_ideal(disc);
    check(rd.has_value(), "reduced_discriminant: discriminant not a square");
    return *rd;
}

Order make_order(const QuatAlg& D, const QLat& lat) {
    const Field& F = D.field();
    QLat L = lat_normalize(lat);
    check(L.m.rows == qdim(D), "make_order: lattice not full rank");
    check(lat_contains(D, L, D.one()), "make_order: 1 not in the lattice");
    if (F.degree() == 2) {
        Qel w;
        w.c[0] = Fel(Q(0), Q(1));
        check(lat_contains(D, L, w), "make_order: omega not in the lattice");
    }
    for (const Qel& b : lat_basis(D, L))
        check(is_integral_qel(D, b), "make_order: basis not integral");
    check(lat_contains(D, L, lat_mul(D, L, L)), "make_order: not closed");
    Order O;
    O.lat = L;
    O.rdisc = reduced_discriminant(D, L);
    O.level = F.ideal_one();
    return O;
}

Order standard_order(const QuatAlg& D) {
    return make_order(
        D, lat_ofspan(D, {D.one(), D.gen_i(), D.gen_j(), D.gen_k()}));
}

Order maximal_order(const QuatAlg& D) {
    const Field& F = D.field();
    check(D.totally_definite(), "maximal_order: algebra not totally definite");
    QLat lat = standard_order(D).lat;
    while (true) {
        FIdeal rd = reduced_discriminant(D, lat);
        if (rd == D.alg_disc()) break;
        bool grew = false;
        for (const auto& pe : F.factor_ideal(rd)) {
            const FPrime& pr = pe.first;
            // accelerate odd saturation with the radical idealizer
            if (pr.p % 2 != 0) {
                QLat J = lat_intersect(D, radical_odd(D, lat, pr), lat);
                QLat bigger = left_order(D, J);
                if (bigger != lat && lat_contains(D, bigger, lat)) {
                    bool ok = true;
                    for (const Qel& b : lat_basis(D, bigger))
                        if (!is_integral_qel(D, b)) { ok = false; break; }
                    if (ok) {
                        lat = bigger;
                        grew = true;
                        break;
                    }
                }
            }
            if (saturate_once(D, lat, pr)) {
                grew = true;
                break;
            }
        }
        if (!grew) {
            // no integral enlargement exists at any bad prime, so the order
            // is maximal; its discriminant must match the algebra invariants
            check(reduced_discriminant(D, lat) == D.alg_disc(),
                  "maximal_order: saturated order disagrees with the "
                  "ramification data");
            break;
        }
    }
    Order O = make_order(D, lat);
    O.kind = OrderKind::maximal;
    check(O.rdisc == D.alg_disc(), "maximal_order: discriminant mismatch");
    return O;
}

Qel split_idempotent(const QuatAlg& D, const QLat& olat, const FPrime& pr, int v) {
    const Field& F = D.field();
    check(v >= 1, "split_idempotent: level exponent");
    check(F.valuation(D.alg_disc(), pr) == 0, "split_idempotent: ramified prime");
    QLat PL = lat_scale(D, olat, pr.ideal);
    Qel e0;
    bool found = false;
    if (pr.p == 2) {
        for (const Qel& z : coset_reps(D, olat, PL, Z(1 << 16))) {
            if (lat_contains(D, PL, z) || lat_contains(D, PL, z - D.one()))
                continue;
            if (!lat_contains(D, PL, D.mul(z, z) - z)) continue;
            e0 = z;
            found = true;
            break;
        }
    } else {
        QuotRing R1(F, pr, 1);
        int n = qdim(D);
        auto bas = lat_basis(D, olat);
        long p = pr.p.get_si();
        std::vector<long> tv(n, 0);
        for (long tries = 0; !found && tries < (1L << 18); ++tries) {
            // advance a base-p counter, last coordinate fastest, so that
            // non-scalar candidates appear early
            int i = n - 1;
            while (i >= 0) {
                if (++tv[i] < p) break;
                tv[i] = 0;
                --i;
            }
            if (i < 0) break;
            Qel y;
            for (int s = 0; s < n; ++s)
                if (tv[s] != 0) y = y + D.mul(bas[s], Q(tv[s]));
            Fel t = D.trd(y), nm = D.nrd(y);
            Fel disc = F.mul(t, t) - F.mul(Fel(4), nm);
            if (R1.reduce(disc).is_zero()) continue;
            if (!is_residue_square(F, pr, disc)) continue;
            Fel root;
            bool has_root = false;
            for (const Fel& r : R1.residue_field_elements()) {
                Fel val = F.mul(r, r) - F.mul(t, r) + nm;
                if (R1.reduce(val).is_zero()) {
                    root = r;
                    has_root = true;
                    break;
                }
            }
            check(has_root, "split_idempotent: square discriminant without root");
            Fel s = t - root;
            Fel w = R1.inverse(R1.reduce(root - s));
            Qel ymins = y;
            ymins.c[0] = ymins.c[0] - s;
            e0 = qel_mod(D, PL, D.mul(ymins, w));
            found = true;
        }
    }
    check(found, "split_idempotent: no split element found");

    // Newton lifting: e <- 3e^2 - 2e^3 doubles the exponent
    Qel e = e0;
    int have = 1;
    while (have < v) {
        Qel e2 = D.mul(e, e);
        Qel e3 = D.mul(e2, e);
        Qel lifted = D.mul(e2, Q(3)) - D.mul(e3, Q(2));
        have *= 2;
        QLat mod = lat_scale(D, olat, F.pow(pr.ideal, have));
        e = qel_mod(D, mod, lifted);
    }

    QLat modv = lat_scale(D, olat, F.pow(pr.ideal, v));
    check(lat_contains(D, modv, D.mul(e, e) - e), "split_idempotent: not idempotent");
    FIdeal prv = F.pow(pr.ideal, v);
    check(F.contains(prv, D.trd(e) - Fel(1)), "split_idempotent: trace not 1");
    check(F.contains(prv, D.nrd(e)), "split_idempotent: norm not 0");
    return e;
}

Order eichler_order(const QuatAlg& D, const FIdeal& level) {
    const Field& F = D.field();
    check(F.is_integral(level), "eichler_order: level not integral");
    Order Omax = maximal_order(D);
    if (level == F.ideal_one()) return Omax;
    QLat lat = Omax.lat;
    int n = qdim(D);
    for (const auto& pe : F.factor_ideal(level)) {
        const FPrime& pr = pe.first;
        int v = pe.second;
        check(F.valuation(D.alg_disc(), pr) == 0,
              "eichler_order: level not coprime to the algebra discriminant");
        Qel e = split_idempotent(D, Omax.lat, pr, v);
        Qel f = D.one() - e;
        // sublattice {z in lat : e z f in pr^v Omax}; the condition matrix is
        // rank deficient, so solve t * B integral over integer coefficients t
        QLat target = lat_scale(D, Omax.lat, F.pow(pr.ideal, v));
        auto bas = lat_basis(D, lat);
        std::vector<std::vector<Q>> B(n);
        for (int s = 0; s < n; ++s) {
            Qel img = D.mul(D.mul(e, bas[s]), f);
            B[s] = lat_coords(target, qel_coords(D, img));
        }
        Z dB = 1;
        for (auto& row : B)
            for (Q& qv : row) dB = lcm(dB, Z(qv.get_den()));
        ZMat S(n + n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Q w = B[i][j] * Q(dB);
                S.at(i, j) = q_num(w);
            }
        for (int i = 0; i < n; ++i) S.at(n + i, i) = dB;
        ZMat K = left_kernel(S);
        check(K.rows == n, "eichler_order: condition kernel rank");
        ZMat T(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) T.at(i, j) = K.at(i, j);
        QLat cond;
        cond.m = hnf(mul(T, lat.m));
        cond.den = lat.den;
        lat = lat_normalize(std::move(cond));
    }
    Order O = make_order(D, lat);
    O.kind = OrderKind::eichler;
    O.level = level;
    check(O.rdisc == F.mul(D.alg_disc(), level), "eichler_order: wrong discriminant");
    return O;
}

QLat radical_lattice(const QuatAlg& D, const QLat& olat, const FPrime& pr) {
    if (pr.p == 2) return radical_dyadic(D, olat, pr);
    return lat_intersect(D, radical_odd(D, olat, pr), olat);
}

int eichler_invariant(const QuatAlg& D, const Order& O, const FPrime& pr) {
    const Field& F = D.field();
    if (F.valuation(O.rdisc, pr) == 0) return 2;
    Z q = F.norm(pr.ideal).get_num();
    if (q > 32 && O.kind != OrderKind::generic) {
        // structural shortcut for constructed orders
        if (O.kind == OrderKind::eichler && F.valuation(O.level, pr) > 0) return 1;
        if (F.valuation(D.alg_disc(), pr) == 1 && F.valuation(O.level, pr) == 0)
            return -1;
    }
    check(q <= 32, "eichler_invariant: residue field too large");
    QLat J = radical_lattice(D, O.lat, pr);
    QLat PL = lat_scale(D, O.lat, pr.ideal);
    int dim_j = residue_dim(D, J, PL, q);
    int s = 4 - dim_j;
    if (s == 1) return 0;
    check(s == 2, "eichler_invariant: unexpected semisimple dimension");
    // k x k has four idempotents, the quadratic field extension two
    long idem = 0;
    for (const Qel& x : coset_reps(D, O.lat, J, Z(1 << 20)))
        if (lat_contains(D, J, D.mul(x, x) - x)) ++idem;
    if (idem == 4) return 1;
    check(idem == 2, "eichler_invariant: unexpected idempotent count");
    return -1;
}

bool is_residually_unramified(const QuatAlg& D, const Order& O) {
    const Field& F = D.field();
    for (const auto& pe : F.factor_ideal(O.rdisc))
        if (eichler_invariant(D, O, pe.first) == 0) return false;
    return true;
}

}  // namespace quatarith
