/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "picent.hpp"

#include <algorithm>
#include <numeric>

namespace quatarith {

namespace {

// verifies the defining properties of the nontrivial primitive two-sided
// class at pr: integral, primitive, norm a power of pr, square central
bool primitive_checks(const QuatAlg& D, const Order& O, const FPrime& pr,
                      const QLat& P, int* v_out) {
    const Field& F = D.field();
    if (!lat_contains(D, O.lat, P)) return false;
    if (lat_contains(D, lat_scale(D, O.lat, pr.ideal), P)) return false;
    FIdeal nr = nr_ideal(D, P);
    int v = F.valuation(nr, pr);
    if (v < 1 || nr != F.pow(pr.ideal, v)) return false;
    if (lat_mul(D, O.lat, P) != P) return false;
    if (lat_mul(D, P, P) != lat_scale(D, O.lat, F.pow(pr.ideal, v))) return false;
    if (v_out) *v_out = v;
    return true;
}

// the nontrivial primitive two-sided ideal at pr, by bounded search over
// short vectors x with 1 <= v_pr(nrd x) <= ord + 1; the candidate ideal
// O x O + pr^v O erases the behaviour of x away from pr
QLat local_primitive(const QuatAlg& D, const Order& O, const FPrime& pr) {
    const Field& F = D.field();
    int e = eichler_invariant(D, O, pr);
    check(e != 0, "primitive_two_sided: residually ramified prime");
    int ord = F.valuation(O.rdisc, pr);
    if (e == -1 && ord == 1) {
        QLat P = radical_lattice(D, O.lat, pr);
        check(primitive_checks(D, O, pr, P, nullptr),
              "primitive_two_sided: radical is not the two-sided prime");
        return P;
    }
    for (long bound = 8; bound <= (1L << 16); bound *= 2) {
        std::vector<Qel> xs = short_vectors(D, O.lat, Q(bound));
        std::vector<std::pair<std::vector<Q>, Qel>> ord_xs;
        for (const Qel& x : xs) {
            std::vector<Q> key = {F.trace(D.trd(D.mul(x, D.conj(x))))};
            for (const Q& c : qel_coords(D, x)) key.push_back(c);
            ord_xs.push_back({key, x});
        }
        std::sort(ord_xs.begin(), ord_xs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [key, x] : ord_xs) {
            int v = F.valuation(D.nrd(x), pr);
            if (v < 1 || v > ord + 1) continue;
            QLat P = lat_add(
                D, lat_mul(D, lat_mul(D, O.lat, x), O.lat),
                lat_scale(D, O.lat, F.pow(pr.ideal, v)));
            if (primitive_checks(D, O, pr, P, nullptr)) return P;
        }
    }
    check(false, "primitive_two_sided: normalizer search exhausted");
    return O.lat;
}

}  // namespace

TwoSidedSet primitive_two_sided(const QuatAlg& D, const Order& O) {
    const Field& F = D.field();
    TwoSidedSet ts;
    for (const auto& [pr, mult] : F.factor_ideal(O.rdisc)) ts.primes.push_back(pr);
    std::sort(ts.primes.begin(), ts.primes.end(),
              [&](const FPrime& a, const FPrime& b) {
                  Q na = F.norm(a.ideal), nb = F.norm(b.ideal);
                  if (na != nb) return na < nb;
                  return a.root < b.root;
              });
    for (const FPrime& pr : ts.primes)
        ts.local_prim.push_back(local_primitive(D, O, pr));
    size_t n = size_t(1) << ts.primes.size();
    ts.prim.resize(n);
    ts.norms.resize(n);
    ts.prim[0] = O.lat;
    ts.norms[0] = F.ideal_one();
    for (size_t mask = 1; mask < n; ++mask) {
        size_t b = 0;
        while (!(mask & (size_t(1) << b))) ++b;
        ts.prim[mask] =
            lat_mul(D, ts.local_prim[b], ts.prim[mask ^ (size_t(1) << b)]);
        ts.norms[mask] = nr_ideal(D, ts.prim[mask]);
    }
    return ts;
}

PicentGroup picent(const QuatAlg& D, const Order& O) {
    const Field& F = D.field();
    check(is_residually_unramified(D, O), "picent: order residually ramified");
    PicentGroup G;
    G.prim = primitive_two_sided(D, O);
    G.cls = F.class_group().scrI;
    for (size_t c = 0; c < G.cls.size(); ++c)
        check(F.wide_class_of(G.cls[c]) == (int)c,
              "picent: class representative labels out of order");
    size_t nm = G.prim.prim.size();
    size_t n = G.cls.size() * nm;
    // central ideal absorbed when a primitive factor squares away
    std::vector<FIdeal> cent(G.prim.primes.size());
    for (size_t b = 0; b < cent.size(); ++b) {
        int v = F.valuation(G.prim.norms[size_t(1) << b], G.prim.primes[b]);
        cent[b] = F.pow(G.prim.primes[b].ideal, v);
    }
    G.grp.n = (int)n;
    G.grp.mul.assign(n, std::vector<int>(n, 0));
    for (size_t g = 0; g < n; ++g) {
        size_t c = g / nm, mask = g % nm;
        for (size_t g2 = 0; g2 < n; ++g2) {
            size_t c2 = g2 / nm, mask2 = g2 % nm;
            FIdeal prod = F.mul(G.cls[c], G.cls[c2]);
            for (size_t b = 0; b < cent.size(); ++b)
                if (mask & mask2 & (size_t(1) << b)) prod = F.mul(prod, cent[b]);
            G.grp.mul[g][g2] =
                (int)(F.wide_class_of(prod) * nm + (mask ^ mask2));
        }
    }
    G.grp.inv.assign(n, 0);
    for (size_t g = 0; g < n; ++g)
        for (size_t g2 = 0; g2 < n; ++g2)
            if (G.grp.mul[g][g2] == 0 && G.grp.mul[g2][g] == 0) G.grp.inv[g] = (int)g2;
    for (size_t g = 0; g < n; ++g) {
        size_t c = g / nm, mask = g % nm;
        G.reps.push_back(lat_scale(D, G.prim.prim[mask], G.cls[c]));
        FIdeal nr = F.mul(F.mul(G.cls[c], G.cls[c]), G.prim.norms[mask]);
        check(nr == nr_ideal(D, G.reps.back()),
              "picent: representative norm mismatch");
        G.nr.push_back(nr);
    }
    return G;
}

long fixed_point_count(const QuatAlg& D, const IdealClassSet& cs, const QLat& P) {
    const Field& F = D.field();
    if (F.narrow_class_of(nr_ideal(D, P)) != 0) return 0;
    long cnt = 0;
    for (const QLat& I : cs.reps) {
        QLat J = reduce_ideal(D, lat_mul(D, I, P));
        if (is_right_isomorphic(D, J, I)) ++cnt;
    }
    return cnt;
}

size_t picent_apply(const QuatAlg& D, const IdealClassSet& cs, size_t i,
                    const QLat& P) {
    const Field& F = D.field();
    QLat J = reduce_ideal(D, lat_mul(D, cs.reps[i], P));
    int nc = F.narrow_class_of(nr_ideal(D, J));
    for (size_t j = 0; j < cs.reps.size(); ++j) {
        if (cs.w[j] != cs.w[i]) continue;
        if (F.narrow_class_of(nr_ideal(D, cs.reps[j])) != nc) continue;
        if (is_right_isomorphic(D, J, cs.reps[j])) return j;
    }
    check(false, "picent_apply: image class not found");
    return 0;
}

long type_number_burnside(const QuatAlg& D, const Order& O,
                          const IdealClassSet& cs) {
    PicentGroup G = picent(D, O);
    long total = 0;
    for (const QLat& P : G.reps) total += fixed_point_count(D, cs, P);
    check(total % (long)G.reps.size() == 0,
          "type_number: fixed point sum not divisible by the group order");
    return total / (long)G.reps.size();
}

std::vector<size_t> type_orbit_roots(const QuatAlg& D, const PicentGroup& G,
                                     const IdealClassSet& cs) {
    size_t h = cs.reps.size();
    std::vector<size_t> par(h);
    std::iota(par.begin(), par.end(), size_t(0));
    auto find = [&](size_t a) {
        while (par[a] != a) a = par[a] = par[par[a]];
        return a;
    };
    const Field& F = D.field();
    std::vector<int> nc(h);
    std::vector<std::vector<Q>> th(h);
    for (size_t i = 0; i < h; ++i) {
        nc[i] = F.narrow_class_of(nr_ideal(D, cs.reps[i]));
        th[i] = order_theta(D, left_order(D, cs.reps[i]), 32);
    }
    for (size_t g = 1; g < G.reps.size(); ++g) {
        for (size_t i = 0; i < h; ++i) {
            QLat J = reduce_ideal(D, lat_mul(D, cs.reps[i], G.reps[g]));
            int ncJ = F.narrow_class_of(nr_ideal(D, J));
            size_t j = h;
            for (size_t c = 0; c < h && j == h; ++c) {
                if (cs.w[c] != cs.w[i] || nc[c] != ncJ || th[c] != th[i])
                    continue;
                if (is_right_isomorphic(D, J, cs.reps[c])) j = c;
            }
            check(j < h, "type_number: image class not found");
            par[find(i)] = find(j);
        }
    }
    std::vector<size_t> root(h, h);
    for (size_t i = 0; i < h; ++i) {
        size_t r = find(i);
        if (root[r] == h) root[r] = i;
    }
    for (size_t i = 0; i < h; ++i) root[i] = root[find(i)];
    return root;
}

long type_number_direct(const QuatAlg& D, const Order& O,
                        const IdealClassSet& cs) {
    PicentGroup G = picent(D, O);
    std::vector<size_t> root = type_orbit_roots(D, G, cs);
    long t = 0;
    for (size_t i = 0; i < root.size(); ++i)
        if (root[i] == i) ++t;
    return t;
}

}  // namespace quatarith
