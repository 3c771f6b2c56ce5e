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
#include "classset.hpp"

#include <algorithm>

using namespace quatarith;

namespace {

QuatAlg rational_alg(long a, long b) {
    return QuatAlg(Field::rationals(), Fel(a), Fel(b));
}

std::vector<long> sorted_w(const IdealClassSet& cs) {
    std::vector<long> w = cs.w;
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace

TEST_CASE("norm-p subideals of the classical maximal order") {
    const Field& F = Field::rationals();
    QuatAlg D = rational_alg(-1, -1);
    Order O = maximal_order(D);

    auto at3 = subideals_of_norm(D, O, O.lat, F.prime_above(Z(3)));
    CHECK(at3.size() == 4);
    for (const QLat& N : at3) {
        CHECK(lat_contains(D, O.lat, N));
        CHECK(nr_ideal(D, N) == F.ideal_from_rational(Q(3)));
        CHECK(right_order(D, N) == O.lat);
    }

    CHECK(subideals_of_norm(D, O, O.lat, F.prime_above(Z(5))).size() == 6);

    // the ramified prime carries a single subideal, the two-sided radical
    auto at2 = subideals_of_norm(D, O, O.lat, F.prime_above(Z(2)));
    REQUIRE(at2.size() == 1);
    const QLat& P = at2[0];
    CHECK(nr_ideal(D, P) == F.ideal_from_rational(Q(2)));
    CHECK(left_order(D, P) == O.lat);
    CHECK(right_order(D, P) == O.lat);
    CHECK(lat_mul(D, P, P) == lat_mul(D, O.lat, Q(2)));

    // left orders of translates are conjugate
    Qel x = D.one() + D.gen_i();
    QLat xN = lat_mul(D, x, at3[0]);
    QLat LO = left_order(D, at3[0]);
    CHECK(left_order(D, xN) ==
          lat_mul(D, lat_mul(D, x, LO), D.inv(x)));
    CHECK(right_order(D, xN) == O.lat);
}

TEST_CASE("rational maximal orders: class numbers and unit weights") {
    // frozen from the classical class number formula
    // h = m + e4 + e3 with m = (p-1)/12, e4 = (1 - (-4|p))/4,
    // e3 = (1 - (-3|p))/3
    struct Row {
        long a, b;
        Q mass;
        std::vector<long> w;
    };
    const Row rows[] = {
        {-1, -1, Q(1, 12), {12}},
        {-1, -11, Q(5, 6), {2, 3}},
        {-1, -23, Q(11, 6), {1, 2, 3}},
    };
    for (const Row& r : rows) {
        QuatAlg D = rational_alg(r.a, r.b);
        Order O = maximal_order(D);
        CHECK(mass_formula(D, O) == r.mass);
        IdealClassSet cs = class_set(D, O);
        CHECK(cs.reps.size() == r.w.size());
        CHECK(sorted_w(cs) == r.w);
        CHECK(cs.mass == r.mass);
    }

    // expansion across the ramified prime discovers nothing new
    QuatAlg D = rational_alg(-1, -1);
    Order O = maximal_order(D);
    IdealClassSet cs = class_set(D, O, true);
    CHECK(cs.reps.size() == 1);
}

TEST_CASE("rational Eichler orders: class numbers and unit weights") {
    const Field& F = Field::rationals();
    QuatAlg D = rational_alg(-1, -1);
    struct Row {
        long level;
        Q mass;
        std::vector<long> w;
    };
    const Row rows[] = {
        {3, Q(1, 3), {3}},
        {5, Q(1, 2), {2}},
        {15, Q(2), {1, 1}},
    };
    for (const Row& r : rows) {
        Order O = eichler_order(D, F.ideal_from_rational(Q(r.level)));
        CHECK(mass_formula(D, O) == r.mass);
        IdealClassSet cs = class_set(D, O);
        CHECK(sorted_w(cs) == r.w);
    }

    // square level: mass 18/12 * (1/2) * (4/3) = 1, and the left orders of
    // all classes share the reduced discriminant
    Order O9 = eichler_order(D, F.ideal_from_rational(Q(9)));
    CHECK(mass_formula(D, O9) == Q(1));
    IdealClassSet cs9 = class_set(D, O9);
    CHECK(cs9.mass == Q(1));
    for (const QLat& I : cs9.reps)
        CHECK(reduced_discriminant(D, left_order(D, I)) ==
              F.ideal_from_rational(Q(18)));
}

TEST_CASE("subideal counts over a real quadratic field") {
    const Field& F = Field::quadratic(2);
    QuatAlg D(F, Fel(-1), Fel(-1));
    Order O = maximal_order(D);

    // 7 splits in Q(sqrt 2), residue field size 7
    auto pr7 = F.primes_above(Z(7));
    REQUIRE(pr7.size() == 2);
    CHECK(subideals_of_norm(D, O, O.lat, pr7[0]).size() == 8);

    // 3 is inert, residue field size 9
    auto pr3 = F.primes_above(Z(3));
    REQUIRE(pr3.size() == 1);
    CHECK(subideals_of_norm(D, O, O.lat, pr3[0]).size() == 10);
}

TEST_CASE("class sets over real quadratic fields") {
    {
        const Field& F = Field::quadratic(2);
        QuatAlg D(F, Fel(-1), Fel(-1));
        Order O = maximal_order(D);
        CHECK(mass_formula(D, O) == Q(1, 24));
        IdealClassSet cs = class_set(D, O);
        CHECK(cs.reps.size() == 1);
        CHECK(cs.w[0] == 24);
    }
    {
        const Field& F = Field::quadratic(5);
        QuatAlg D(F, Fel(-1), Fel(-1));
        Order O = maximal_order(D);
        CHECK(mass_formula(D, O) == Q(1, 60));
        IdealClassSet cs = class_set(D, O);
        CHECK(cs.reps.size() == 1);
        CHECK(cs.w[0] == 60);
    }
    {
        // ramified at both primes above 3; h(F) = 2 divides the class number
        const Field& F = Field::quadratic(10);
        QuatAlg D(F, Fel(-1), Fel(-3));
        Order O = maximal_order(D);
        IdealClassSet cs = class_set(D, O);
        CHECK(cs.mass == mass_formula(D, O));
        CHECK(cs.reps.size() % 2 == 0);
    }
    {
        // unramified at every finite place; mass h(F) |zeta(-1)| / 2 = 2
        const Field& F = Field::quadratic(15);
        QuatAlg D(F, Fel(-1), Fel(-1));
        CHECK(D.alg_disc() == F.ideal_one());
        Order O = maximal_order(D);
        CHECK(mass_formula(D, O) == Q(2));
        IdealClassSet cs = class_set(D, O);
        CHECK(cs.mass == Q(2));
        CHECK(cs.reps.size() % 2 == 0);
    }
}
