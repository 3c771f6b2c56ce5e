/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qlattice.hpp"

using namespace quatarith;

namespace {

Qel qel(const Field& F, long c0, long c1, long c2, long c3) {
    Qel x;
    x.c[0] = Fel(c0);
    x.c[1] = Fel(c1);
    x.c[2] = Fel(c2);
    x.c[3] = Fel(c3);
    (void)F;
    return x;
}

QLat lipschitz(const QuatAlg& D) {
    const Field& F = D.field();
    return lat_ofspan(D, {D.one(), D.gen_i(), D.gen_j(), D.gen_k()});
}

QLat hurwitz(const QuatAlg& D) {
    Qel rho = D.mul(qel(D.field(), 1, 1, 1, 1), Q(1, 2));
    QLat L = lipschitz(D);
    return lat_add(D, L, lat_zspan(D, {rho}));
}

}  // namespace

TEST_CASE("lattice spans, membership and index over Q") {
    const Field& F = Field::rationals();
    QuatAlg D(F, Fel(-1), Fel(-1));
    QLat L = lipschitz(D);
    QLat H = hurwitz(D);

    CHECK(L.m.rows == 4);
    CHECK(lat_index(D, H, L) == Q(2));
    CHECK(lat_contains(D, H, L));
    CHECK(!lat_contains(D, L, H));

    Qel rho = D.mul(qel(F, 1, 1, 1, 1), Q(1, 2));
    CHECK(lat_contains(D, H, rho));
    CHECK(!lat_contains(D, L, rho));
    CHECK(lat_contains(D, L, qel(F, 3, -2, 0, 7)));

    QLat third = lat_mul(D, L, Q(1, 3));
    CHECK(lat_index(D, third, L) == Q(81));
    CHECK(lat_add(D, L, third) == third);
    CHECK(lat_normalize(third).den == 3);
}

TEST_CASE("multiplication, conjugation and norm ideals of lattices") {
    const Field& F = Field::rationals();
    QuatAlg D(F, Fel(-1), Fel(-1));
    QLat H = hurwitz(D);

    CHECK(lat_mul(D, H, H) == H);
    CHECK(lat_conj(D, H) == H);
    CHECK(nr_ideal(D, H) == F.ideal_one());

    Qel x = qel(F, 1, 1, 0, 0);
    QLat I = lat_mul(D, x, H);
    CHECK(nr_ideal(D, I) == F.ideal_from_rational(Q(2)));
    CHECK(lat_index(D, H, I) == Q(4));

    Qel y = qel(F, 0, 1, 2, 0);
    QLat J = lat_mul(D, H, y);
    QLat P = lat_mul(D, I, J);
    CHECK(nr_ideal(D, P) == F.mul(nr_ideal(D, I), nr_ideal(D, J)));
    CHECK(lat_conj(D, P) == lat_mul(D, lat_conj(D, J), lat_conj(D, I)));
}

TEST_CASE("left and right orders, inverses") {
    const Field& F = Field::rationals();
    QuatAlg D(F, Fel(-1), Fel(-1));
    QLat L = lipschitz(D);
    QLat H = hurwitz(D);

    CHECK(left_order(D, L) == L);
    CHECK(right_order(D, L) == L);
    CHECK(left_order(D, H) == H);
    CHECK(right_order(D, H) == H);

    Qel x = qel(F, 1, 1, 1, 0);
    QLat I = lat_mul(D, x, H);
    CHECK(right_order(D, I) == H);
    QLat Ol = left_order(D, I);
    QLat xHxinv = lat_mul(D, lat_mul(D, x, H), D.inv(x));
    CHECK(Ol == xHxinv);

    QLat Iinv = lat_inverse(D, I);
    CHECK(lat_mul(D, I, Iinv) == Ol);
    CHECK(lat_mul(D, Iinv, I) == H);

    QLat twoH = lat_mul(D, H, Q(2));
    CHECK(left_order(D, twoH) == H);
    CHECK(nr_ideal(D, twoH) == F.ideal_from_rational(Q(4)));
}

TEST_CASE("short vector counts match a direct box enumeration") {
    const Field& F = Field::rationals();
    QuatAlg D(F, Fel(-1), Fel(-1));
    QLat L = lipschitz(D);

    for (long bound = 1; bound <= 9; ++bound) {
        long direct = 0;
        for (long a = -3; a <= 3; ++a)
            for (long b = -3; b <= 3; ++b)
                for (long c = -3; c <= 3; ++c)
                    for (long e = -3; e <= 3; ++e) {
                        long q2 = 2 * (a * a + b * b + c * c + e * e);
                        if (q2 > 0 && q2 <= bound) ++direct;
                    }
        CHECK(2 * (long)short_vectors(D, L, Q(bound)).size() == direct);
    }
}

TEST_CASE("unit and norm-form counts of the classical maximal order") {
    const Field& F = Field::rationals();
    QuatAlg D(F, Fel(-1), Fel(-1));
    QLat L = lipschitz(D);
    QLat H = hurwitz(D);

    CHECK(elements_of_nrd(D, L, Fel(1)).size() == 4);
    CHECK(elements_of_nrd(D, H, Fel(1)).size() == 12);

    // representation numbers of four squares: r4(n) = 8 sigma(n) for odd n
    CHECK(elements_of_nrd(D, L, Fel(3)).size() == 16);
    CHECK(elements_of_nrd(D, L, Fel(5)).size() == 24);
    CHECK(elements_of_nrd(D, L, Fel(15)).size() == 96);

    // the maximal order represents odd n with multiplicity 24 sigma(n)
    CHECK(elements_of_nrd(D, H, Fel(3)).size() == 48);
    CHECK(elements_of_nrd(D, H, Fel(5)).size() == 72);

    CHECK(elements_of_nrd(D, H, Fel(0)).empty());
    CHECK(elements_of_nrd(D, H, Fel(-1)).empty());
}

TEST_CASE("rank-eight lattices over a real quadratic field") {
    const Field& F = Field::quadratic(2);
    QuatAlg D(F, Fel(-1), Fel(-1));
    QLat O = lat_ofspan(D, {D.one(), D.gen_i(), D.gen_j(), D.gen_k()});

    CHECK(O.m.rows == 8);
    CHECK(left_order(D, O) == O);
    CHECK(right_order(D, O) == O);
    CHECK(lat_mul(D, O, O) == O);
    CHECK(nr_ideal(D, O) == F.ideal_one());

    Fel omega(Q(0), Q(1));
    Qel wj;
    wj.c[2] = omega;
    CHECK(lat_contains(D, O, wj));

    // x = 1 + w*i is invertible; principal lattices transform as expected
    Qel x = D.one();
    x.c[1] = omega;
    QLat I = lat_mul(D, x, O);
    CHECK(right_order(D, I) == O);
    CHECK(left_order(D, I) == lat_mul(D, lat_mul(D, x, O), D.inv(x)));
    CHECK(nr_ideal(D, I) == F.principal_ideal(D.nrd(x)));
    QLat Iinv = lat_inverse(D, I);
    CHECK(lat_mul(D, Iinv, I) == O);

    // direct count of 2 Tr nrd(x) = sum_t (4 a_t^2 + 8 b_t^2) over the basis
    // (1, w, i, wi, j, wj, k, wk), w = sqrt(2)
    for (long bound : {4L, 8L, 12L, 16L}) {
        long direct = 0;
        long box[5] = {-2, -1, 0, 1, 2};
        for (long a0 : box) for (long b0 : box)
        for (long a1 : box) for (long b1 : box)
        for (long a2 : box) for (long b2 : box)
        for (long a3 : box) for (long b3 : box) {
            long q2 = 4 * (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3) +
                      8 * (b0 * b0 + b1 * b1 + b2 * b2 + b3 * b3);
            if (q2 > 0 && q2 <= bound) ++direct;
        }
        CHECK(2 * (long)short_vectors(D, O, Q(bound)).size() == direct);
    }

    ZMat G;
    Z den2;
    lat_gram(D, O, G, den2);
    CHECK(den2 == 1);
    CHECK(G.at(0, 0) == 4);   // Tr trd(1 * 1) = 2 [F:Q]
    CHECK(G.at(1, 1) == 8);   // Tr trd(w * w) = 2 Tr(w^2) = 8
    CHECK(G.at(0, 1) == 0);   // Tr(2w) = 0
}

TEST_CASE("lattice scaling by field ideals") {
    const Field& F = Field::quadratic(10);
    QuatAlg D(F, Fel(-1), Fel(-1));
    QLat O = lat_ofspan(D, {D.one(), D.gen_i(), D.gen_j(), D.gen_k()});

    FPrime p2 = F.prime_above(2);
    QLat P = lat_scale(D, O, p2.ideal);
    CHECK(lat_contains(D, O, P));
    CHECK(lat_index(D, O, P) == F.norm(p2.ideal) * F.norm(p2.ideal) *
                                    F.norm(p2.ideal) * F.norm(p2.ideal));
    CHECK(nr_ideal(D, P) == F.pow(p2.ideal, 2));
    CHECK(left_order(D, P) == O);
}
