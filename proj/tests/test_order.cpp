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
#include "order.hpp"

using namespace quatarith;

namespace {

QuatAlg rational_alg(long a, long b) {
    return QuatAlg(Field::rationals(), Fel(a), Fel(b));
}

long unit_pairs(const QuatAlg& D, const Order& O) {
    return (long)elements_of_nrd(D, O.lat, Fel(1)).size();
}

}  // namespace

TEST_CASE("discriminants and the classical maximal order over Q") {
    const Field& F = Field::rationals();
    QuatAlg D = rational_alg(-1, -1);

    Order O0 = standard_order(D);
    CHECK(O0.rdisc == F.ideal_from_rational(Q(4)));

    Order Om = maximal_order(D);
    CHECK(Om.rdisc == F.ideal_from_rational(Q(2)));
    CHECK(Om.rdisc == D.alg_disc());
    Qel rho = D.mul(D.one() + D.gen_i() + D.gen_j() + D.gen_k(), Q(1, 2));
    CHECK(lat_contains(D, Om.lat, rho));
    CHECK(lat_contains(D, Om.lat, O0.lat));
    CHECK(lat_index(D, Om.lat, O0.lat) == Q(2));
    CHECK(unit_pairs(D, Om) == 12);
}

TEST_CASE("maximal orders of the other small rational algebras") {
    const Field& F = Field::rationals();
    struct Row {
        long a, b, disc, w;  // w = 0 means skip the unit count
    };
    const Row rows[] = {
        {-1, -3, 3, 6}, {-2, -5, 5, 3}, {-1, -7, 7, 2},
        {-1, -11, 11, 0}, {-1, -23, 23, 0}, {-2, -3, 2, 12},
    };
    for (const Row& r : rows) {
        QuatAlg D = rational_alg(r.a, r.b);
        Order Om = maximal_order(D);
        CHECK(Om.rdisc == F.ideal_from_rational(Q(r.disc)));
        if (r.w) CHECK(unit_pairs(D, Om) == r.w);
    }

    // (-1,-11): the maximal order contains (1+j)/2
    QuatAlg D11 = rational_alg(-1, -11);
    Order Om11 = maximal_order(D11);
    Qel half;
    half.c[0] = Fel(Q(1, 2), Q(0));
    half.c[2] = Fel(Q(1, 2), Q(0));
    CHECK(lat_contains(D11, Om11.lat, half));
}

TEST_CASE("Eichler orders over Q and their discriminants") {
    const Field& F = Field::rationals();
    QuatAlg D = rational_alg(-1, -1);
    Order Om = maximal_order(D);

    for (long level : {3L, 5L, 9L, 15L}) {
        Order Oe = eichler_order(D, F.ideal_from_rational(Q(level)));
        CHECK(Oe.rdisc == F.ideal_from_rational(Q(2 * level)));
        CHECK(lat_contains(D, Om.lat, Oe.lat));
        CHECK(lat_index(D, Om.lat, Oe.lat) > 1);
    }

    Order O3 = eichler_order(D, F.ideal_from_rational(Q(3)));
    FPrime p2 = F.prime_above(2), p3 = F.prime_above(3), p5 = F.prime_above(5);
    CHECK(eichler_invariant(D, O3, p3) == 1);
    CHECK(eichler_invariant(D, O3, p2) == -1);
    CHECK(eichler_invariant(D, O3, p5) == 2);
    CHECK(is_residually_unramified(D, O3));

    CHECK(eichler_invariant(D, Om, p2) == -1);
    CHECK(is_residually_unramified(D, Om));
}

TEST_CASE("residually ramified orders have Eichler invariant zero") {
    const Field& F = Field::rationals();
    QuatAlg D = rational_alg(-1, -1);
    Order Om = maximal_order(D);

    for (long p : {2L, 3L}) {
        QLat small = lat_add(D, lat_ofspan(D, {D.one()}),
                             lat_mul(D, Om.lat, Q(p)));
        Order Op = make_order(D, small);
        CHECK(Op.rdisc == F.ideal_from_rational(Q(2 * p * p * p)));
        CHECK(eichler_invariant(D, Op, F.prime_above(p)) == 0);
        CHECK(!is_residually_unramified(D, Op));
    }
}

TEST_CASE("maximal orders over real quadratic fields") {
    {
        // the icosian ring: everywhere unramified, 120 units
        const Field& F = Field::quadratic(5);
        QuatAlg D(F, Fel(-1), Fel(-1));
        Order Om = maximal_order(D);
        CHECK(Om.rdisc == F.ideal_one());
        CHECK(unit_pairs(D, Om) == 60);
    }
    {
        const Field& F = Field::quadratic(2);
        QuatAlg D(F, Fel(-1), Fel(-1));
        Order Om = maximal_order(D);
        CHECK(Om.rdisc == F.ideal_one());
        CHECK(unit_pairs(D, Om) == 24);
    }
    {
        const Field& F = Field::quadratic(79);
        QuatAlg D(F, Fel(-1), Fel(-1));
        Order Om = maximal_order(D);
        CHECK(Om.rdisc == F.ideal_one());
    }
    {
        // ramified exactly at the two primes above 2
        const Field& F = Field::quadratic(65);
        QuatAlg D(F, Fel(-1), Fel(-1));
        Order Om = maximal_order(D);
        CHECK(Om.rdisc == F.ideal_from_rational(Q(2)));
        CHECK(is_residually_unramified(D, Om));
    }
    {
        // ramified at the two primes above 3
        const Field& F = Field::quadratic(10);
        QuatAlg D(F, Fel(-1), Fel(-3));
        Order Om = maximal_order(D);
        CHECK(Om.rdisc == F.ideal_from_rational(Q(3)));
        for (const FPrime& pr : F.primes_above(3))
            CHECK(eichler_invariant(D, Om, pr) == -1);
    }
}

TEST_CASE("Eichler orders over a real quadratic field") {
    const Field& F = Field::quadratic(79);
    QuatAlg D(F, Fel(-1), Fel(-1));

    // 3 splits in Q(sqrt 79)
    auto above3 = F.primes_above(3);
    REQUIRE(above3.size() == 2);
    const FPrime& p3 = above3[0];

    Order O1 = eichler_order(D, p3.ideal);
    CHECK(O1.rdisc == p3.ideal);
    CHECK(eichler_invariant(D, O1, p3) == 1);
    CHECK(eichler_invariant(D, O1, above3[1]) == 2);
    CHECK(is_residually_unramified(D, O1));

    Order O2 = eichler_order(D, F.pow(p3.ideal, 2));
    CHECK(O2.rdisc == F.pow(p3.ideal, 2));
    CHECK(lat_contains(D, O1.lat, O2.lat));
    CHECK(eichler_invariant(D, O2, p3) == 1);
}
