/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "classset.hpp"

#include <algorithm>

namespace quatarith {

namespace {

bool lat_in(const std::vector<QLat>& v, const QLat& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

// representative of v modulo unit squares with minimal trace, so that
// norm-target enumerations search the smallest possible ball
Fel balanced(const Field& F, Fel v) {
    if (F.degree() == 1) return v;
    const UnitData& ud = F.units();
    Fel e2 = F.mul(ud.eps, ud.eps);
    for (Fel w = F.mul(v, e2); F.trace(w) < F.trace(v); w = F.mul(v, e2)) v = w;
    Fel e2i = F.inv(e2);
    for (Fel w = F.mul(v, e2i); F.trace(w) < F.trace(v); w = F.mul(v, e2i)) v = w;
    return v;
}

// first z in the order with e z f nonzero modulo pr, by a small
// coefficient scan over the basis
Qel off_diagonal_unit(const QuatAlg& D, const QLat& olat, const QLat& PL,
                      const Qel& e, const Qel& f, long p) {
    int n = qdim(D);
    auto bas = lat_basis(D, olat);
    std::vector<long> tv(n, 0);
    for (long tries = 0; tries < (1L << 16); ++tries) {
        int i = n - 1;
        while (i >= 0) {
            if (++tv[i] < p) break;
            tv[i] = 0;
            --i;
        }
        if (i < 0) break;
        Qel z;
        for (int s = 0; s < n; ++s)
            if (tv[s] != 0) z = z + D.mul(bas[s], Q(tv[s]));
        Qel w = D.mul(D.mul(e, z), f);
        if (!lat_contains(D, PL, w)) return w;
    }
    check(false, "subideals_of_norm: no off-diagonal element");
    return Qel();
}

// the q+1 norm-pr right ideals of an order maximal at pr: kernels
// {z : w z in pr O} = (w^-1 pr O) meet O over the rank-one residues w
std::vector<QLat> norm_pr_ideals_split(const QuatAlg& D, const QLat& olat,
                                       const FPrime& pr) {
    const Field& F = D.field();
    QLat PL = lat_scale(D, olat, pr.ideal);
    Qel e = split_idempotent(D, olat, pr, 1);
    Qel f = D.one() - e;
    Qel E = off_diagonal_unit(D, olat, PL, e, f, pr.p.get_si());
    QuotRing R1(F, pr, 1);
    std::vector<QLat> out;
    auto push = [&](const Qel& w) {
        QLat M = lat_intersect(D, lat_mul(D, D.inv(w), PL), olat);
        if (!lat_in(out, M)) out.push_back(M);
    };
    for (const Fel& lam : R1.residue_field_elements()) {
        Qel w = e;
        if (!lam.is_zero()) w = w + D.mul(E, lam);
        push(w);
    }
    push(f);
    Z q = q_num(F.norm(pr.ideal));
    check((Z)out.size() == q + 1, "subideals_of_norm: wrong split count");
    return out;
}

// exhaustive scan of the locally principal norm-pr right ideals of an
// order at a prime dividing rdisc (residue degree one only)
std::vector<QLat> norm_pr_ideals_ramified(const QuatAlg& D, const QLat& olat,
                                          const FPrime& pr) {
    const Field& F = D.field();
    check(pr.f == 1, "subideals_of_norm: residue degree at a bad prime");
    long p = pr.p.get_si();
    int n = qdim(D);
    QLat PL = lat_scale(D, olat, pr.ideal);
    ZMat T(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<Q> v(n);
        for (int j = 0; j < n; ++j) v[j] = Q(PL.m.at(i, j)) / Q(PL.den);
        auto c = lat_coords(olat, v);
        for (int j = 0; j < n; ++j) {
            check(c[j].get_den() == 1, "subideals_of_norm: scaled order not inside");
            T.at(i, j) = q_num(c[j]);
        }
    }
    ZMat H = hnf(std::move(T));
    // positions where the quotient O/prO has a p on the diagonal
    std::vector<int> pos;
    Z det = 1;
    for (int i = 0; i < H.rows; ++i) {
        det *= H.at(i, i);
        if (H.at(i, i) != 1) {
            check(H.at(i, i) == p, "subideals_of_norm: quotient not p-elementary");
            pos.push_back(i);
        }
    }
    check(pos.size() == 4 && det == Z(p) * p * p * p,
          "subideals_of_norm: quotient dimension");
    auto bas = lat_basis(D, olat);
    const auto& obas = bas;
    std::vector<QLat> out;
    // two-dimensional subspaces of the residue space via echelon forms
    for (int i0 = 0; i0 < 4; ++i0)
        for (int i1 = i0 + 1; i1 < 4; ++i1) {
            int nfree = (i1 - i0 - 1) + 2 * (4 - i1 - 1);
            long total = 1;
            for (int s = 0; s < nfree; ++s) total *= p;
            for (long code = 0; code < total; ++code) {
                long rem = code;
                std::vector<long> c0(4, 0), c1(4, 0);
                c0[i0] = 1;
                c1[i1] = 1;
                for (int s = i0 + 1; s < 4; ++s) {
                    if (s == i1) continue;
                    c0[s] = rem % p;
                    rem /= p;
                }
                for (int s = i1 + 1; s < 4; ++s) {
                    c1[s] = rem % p;
                    rem /= p;
                }
                Qel v0, v1;
                for (int s = 0; s < 4; ++s) {
                    if (c0[s] != 0) v0 = v0 + D.mul(obas[pos[s]], Q(c0[s]));
                    if (c1[s] != 0) v1 = v1 + D.mul(obas[pos[s]], Q(c1[s]));
                }
                QLat M = lat_add(D, lat_zspan(D, {v0, v1}), PL);
                bool stable = true;
                for (int s = 0; stable && s < qdim(D); ++s) {
                    if (!lat_contains(D, M, D.mul(v0, bas[s]))) stable = false;
                    if (stable && !lat_contains(D, M, D.mul(v1, bas[s])))
                        stable = false;
                }
                if (!stable) continue;
                if (nr_ideal(D, M) != pr.ideal) continue;
                // Nakayama: M is locally principal iff some u in M has
                // u O + pr M = M (primes away from pr impose nothing)
                QLat prM = lat_scale(D, M, pr.ideal);
                bool principal = false;
                for (const Qel& u : coset_reps(D, M, prM, Z(1) << 20)) {
                    if (lat_contains(D, prM, u)) continue;
                    if (lat_add(D, lat_mul(D, u, olat), prM) == M) {
                        principal = true;
                        break;
                    }
                }
                if (principal && !lat_in(out, M)) out.push_back(M);
            }
        }
    return out;
}

}  // namespace

std::vector<QLat> subideals_of_norm(const QuatAlg& D, const Order& O,
                                    const QLat& I, const FPrime& pr) {
    const Field& F = D.field();
    QLat Ol = left_order(D, I);
    int v = F.valuation(O.rdisc, pr);
    std::vector<QLat> parts;
    if (v == 0) {
        parts = norm_pr_ideals_split(D, Ol, pr);
    } else if (v == 1 && eichler_invariant(D, O, pr) == -1) {
        QLat J = radical_lattice(D, Ol, pr);
        check(nr_ideal(D, J) == pr.ideal, "subideals_of_norm: radical norm");
        parts.push_back(J);
    } else {
        parts = norm_pr_ideals_ramified(D, Ol, pr);
    }
    std::vector<QLat> out;
    out.reserve(parts.size());
    for (const QLat& M : parts) out.push_back(lat_mul(D, M, I));
    return out;
}

namespace {

// core of the right-isomorphism test with the J-side data precomputed,
// so a caller comparing one J against many I pays for inversion once
bool iso_core(const QuatAlg& D, const QLat& I, const FIdeal& nrI,
              const QLat& J, const QLat& Jinv, const FIdeal& nrJinv,
              Qel* witness) {
    const Field& F = D.field();
    FIdeal N = F.mul(nrI, nrJinv);
    Fel beta;
    if (!F.canonical_tot_pos_generator(N, beta)) return false;
    QLat L = lat_mul(D, I, Jinv);
    for (const Fel& eps : F.units().U)
        for (const Qel& x : elements_of_nrd(D, L, balanced(F, F.mul(beta, eps))))
            if (lat_mul(D, x, J) == I) {
                if (witness) *witness = x;
                return true;
            }
    return false;
}

}  // namespace

std::vector<Q> order_theta(const QuatAlg& D, const QLat& olat, long bound) {
    const Field& F = D.field();
    std::vector<Q> out;
    for (const Qel& x : short_vectors(D, olat, Q(bound)))
        out.push_back(F.trace(D.trd(D.mul(x, D.conj(x)))));
    std::sort(out.begin(), out.end());
    return out;
}

bool is_right_isomorphic(const QuatAlg& D, const QLat& I, const QLat& J,
                         Qel* witness) {
    const Field& F = D.field();
    if (I == J) {
        if (witness) *witness = D.one();
        return true;
    }
    return iso_core(D, I, nr_ideal(D, I), J, lat_inverse(D, J),
                    F.inverse(nr_ideal(D, J)), witness);
}

long unit_index(const QuatAlg& D, const QLat& olat) {
    const Field& F = D.field();
    long w = 0;
    for (const Fel& eps : F.units().U)
        w += (long)elements_of_nrd(D, olat, balanced(F, eps)).size();
    check(w >= 1, "unit_index: unit pair {1, -1} not found");
    return w;
}

Q mass_formula(const QuatAlg& D, const Order& O) {
    const Field& F = D.field();
    Q m = Q(F.class_group().h) * F.zeta_minus_one_abs() * F.norm(O.rdisc);
    for (int i = 1; i < F.degree(); ++i) m /= 2;
    for (const auto& pe : F.factor_ideal(O.rdisc)) {
        Q q = F.norm(pe.first.ideal);
        int e = eichler_invariant(D, O, pe.first);
        m *= (Q(1) - Q(1) / (q * q)) / (Q(1) - Q(e) / q);
    }
    return m;
}

QLat reduce_ideal(const QuatAlg& D, const QLat& I) {
    const Field& F = D.field();
    Qel best;
    Q best_t;
    bool have = false;
    for (const Qel& x : reduced_basis(D, I)) {
        Q t = F.trace(D.trd(D.mul(x, D.conj(x))));
        if (!have || t < best_t) {
            best = x;
            best_t = t;
            have = true;
        }
    }
    check(have && !D.nrd(best).is_zero(), "reduce_ideal: no reducing element");
    return lat_mul(D, D.inv(best), I);
}

IdealClassSet class_set(const QuatAlg& D, const Order& O,
                        bool ramified_neighbors) {
    const Field& F = D.field();
    const long theta_bound = 32;
    IdealClassSet cs;
    std::vector<int> ncls;
    std::vector<FIdeal> nrs;
    std::vector<std::vector<Q>> thetas;
    auto push = [&](const QLat& I, const FIdeal& nrI, int nc, long wc,
                    std::vector<Q> th) {
        cs.reps.push_back(I);
        cs.w.push_back(wc);
        ncls.push_back(nc);
        nrs.push_back(nrI);
        thetas.push_back(std::move(th));
        cs.mass += Q(1) / Q(wc);
    };
    push(O.lat, nr_ideal(D, O.lat), F.narrow_class_of(nr_ideal(D, O.lat)),
         unit_index(D, O.lat), order_theta(D, O.lat, theta_bound));
    Q target = mass_formula(D, O);
    if (cs.mass == target) return cs;
    for (long p = 2; p < 200; ++p) {
        bool prime = p > 1;
        for (long r = 2; r * r <= p; ++r)
            if (p % r == 0) prime = false;
        if (!prime) continue;
        for (const FPrime& pr : F.primes_above(Z(p))) {
            if (F.valuation(O.rdisc, pr) > 0 && !ramified_neighbors) continue;
            for (size_t idx = 0; idx < cs.reps.size(); ++idx) {
                for (const QLat& N : subideals_of_norm(D, O, cs.reps[idx], pr)) {
                    QLat cand = reduce_ideal(D, N);
                    if (lat_in(cs.reps, cand)) continue;
                    FIdeal nrC = nr_ideal(D, cand);
                    int nc = F.narrow_class_of(nrC);
                    QLat LO = left_order(D, cand);
                    long wc = unit_index(D, LO);
                    std::vector<Q> th = order_theta(D, LO, theta_bound);
                    QLat cand_inv = lat_inverse(D, cand);
                    FIdeal nrC_inv = F.inverse(nrC);
                    bool known = false;
                    for (size_t r = cs.reps.size(); r > 0 && !known; --r) {
                        size_t j = r - 1;
                        if (ncls[j] != nc || cs.w[j] != wc || thetas[j] != th)
                            continue;
                        known = iso_core(D, cs.reps[j], nrs[j], cand, cand_inv,
                                         nrC_inv, nullptr);
                    }
                    if (known) continue;
                    push(cand, nrC, nc, wc, std::move(th));
                    check(cs.mass <= target, "class_set: mass overshoot");
                    if (cs.mass == target) return cs;
                }
            }
        }
    }
    check(false, "class_set: mass not reached by prime 200");
    return cs;
}

}  // namespace quatarith
