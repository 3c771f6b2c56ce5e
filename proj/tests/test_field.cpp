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
#include <doctest.h>

#include "field.hpp"

using namespace quatarith;

TEST_CASE("rational field basics") {
    const Field& F = Field::rationals();
    CHECK(F.degree() == 1);
    CHECK(F.zeta_minus_one_abs() == Q(1) / 12);
    CHECK(F.class_group().h == 1);
    CHECK(F.class_group().h_plus == 1);
    CHECK(F.units().U.size() == 1);
    Fel x(Q(3) / 2, Q(0)), y(Q(-4), Q(0));
    CHECK(F.mul(x, y).a == -6);
    CHECK(F.norm(y) == -4);
    CHECK(F.trace(x) == Q(3) / 2);
    CHECK(F.is_totally_positive(x));
    CHECK(!F.is_totally_positive(y));
    FPrime p5 = F.prime_above(5);
    CHECK(F.norm(p5.ideal) == 5);
    CHECK(F.valuation(Fel(50), p5) == 2);
}

TEST_CASE("quadratic field structure") {
    const Field& F = Field::quadratic(79);
    CHECK(F.disc() == 316);
    CHECK(!F.omega_half());
    const Field& G = Field::quadratic(65);
    CHECK(G.disc() == 65);
    CHECK(G.omega_half());
    // sqrt(65) = 2w - 1, norm -65
    CHECK(G.norm(Fel(Q(-1), Q(2))) == -65);
    CHECK(G.trace(Fel(Q(-1), Q(2))) == 0);
    // conjugation and norms in the w basis
    Fel w(Q(0), Q(1));
    CHECK(F.norm(w) == -79);
    CHECK(G.norm(w) == -16);  // w = (1+sqrt65)/2
    CHECK(G.trace(w) == 1);
    CHECK(F.mul(w, w).a == 79);
    CHECK(G.mul(w, w) == Fel(Q(16), Q(1)));
}

TEST_CASE("exact sign evaluation") {
    const Field& F = Field::quadratic(2);
    Fel x(Q(3), Q(-2));  // 3 - 2 sqrt2: sigma1 = 0.17..., sigma2 = 5.82...
    CHECK(F.sign_sigma(x, 0) == 1);
    CHECK(F.sign_sigma(x, 1) == 1);
    CHECK(F.is_totally_positive(x));
    Fel y(Q(1), Q(-1));  // 1 - sqrt2 < 0 < 1 + sqrt2
    CHECK(F.sign_sigma(y, 0) == -1);
    CHECK(F.sign_sigma(y, 1) == 1);
    CHECK(F.cmp_sigma(x, 0, Q(1)) == -1);
    CHECK(F.cmp_sigma(x, 1, Q(5)) == 1);
    // boundary: sigma1(1 + sqrt2) compared against itself via squaring
    Fel u(Q(1), Q(1));
    CHECK(F.cmp_sigma(F.mul(u, u), 0, Q(3)) == 1);   // (1+s2)^2 = 3 + 2 s2 > 3
    CHECK(F.cmp_sigma(F.mul(u, u), 1, Q(3)) == -1);  // 3 - 2 s2 < 3
    Q lo, hi;
    F.sigma_interval(x, 0, 30, lo, hi);
    CHECK(lo <= hi);
    CHECK(hi - lo <= Q(1) / (Z(1) << 30));
    CHECK(F.cmp_sigma(x, 0, lo) >= 0);
    CHECK(F.cmp_sigma(x, 0, hi) <= 0);
}

TEST_CASE("fundamental units") {
    struct Row {
        long d;
        Fel eps;
        int nm;
    };
    // classical fundamental units
    std::vector<Row> rows = {
        {2, {Q(1), Q(1)}, -1},     // 1 + sqrt2
        {3, {Q(2), Q(1)}, 1},      // 2 + sqrt3
        {5, {Q(0), Q(1)}, -1},     // (1+sqrt5)/2
        {10, {Q(3), Q(1)}, -1},    // 3 + sqrt10
        {15, {Q(4), Q(1)}, 1},     // 4 + sqrt15
        {26, {Q(5), Q(1)}, -1},    // 5 + sqrt26
        {34, {Q(35), Q(6)}, 1},    // 35 + 6 sqrt34
        {65, {Q(7), Q(2)}, -1},    // 8 + sqrt65
        {79, {Q(80), Q(9)}, 1},    // 80 + 9 sqrt79
    };
    for (const Row& r : rows) {
        const Field& F = Field::quadratic(r.d);
        CHECK(F.units().eps == r.eps);
        CHECK(F.units().eps_norm == r.nm);
        CHECK(F.units().U.size() == (r.nm == 1 ? 2 : 1));
        CHECK(F.is_totally_positive(F.units().eps_plus));
        CHECK(F.norm(F.units().eps_plus) == 1);
    }
}

TEST_CASE("zeta values at -1") {
    CHECK(Field::quadratic(2).zeta_minus_one_abs() == Q(1) / 12);
    CHECK(Field::quadratic(3).zeta_minus_one_abs() == Q(1) / 6);
    CHECK(Field::quadratic(5).zeta_minus_one_abs() == Q(1) / 30);
    CHECK(Field::quadratic(10).zeta_minus_one_abs() == Q(7) / 6);
    CHECK(Field::quadratic(15).zeta_minus_one_abs() == 2);
    CHECK(Field::quadratic(26).zeta_minus_one_abs() == Q(25) / 6);
    CHECK(Field::quadratic(34).zeta_minus_one_abs() == Q(23) / 3);
    CHECK(Field::quadratic(65).zeta_minus_one_abs() == Q(8) / 3);
    CHECK(Field::quadratic(79).zeta_minus_one_abs() == 28);
}

TEST_CASE("class numbers") {
    struct Row {
        long d;
        int h, hp;
    };
    std::vector<Row> rows = {{2, 1, 1},  {3, 1, 2},  {5, 1, 1},  {6, 1, 2},  {10, 2, 2},
                             {15, 2, 4}, {26, 2, 2}, {34, 2, 4}, {65, 2, 2}, {79, 3, 6}};
    for (const Row& r : rows) {
        const ClassGroupData& c = Field::quadratic(r.d).class_group();
        CHECK(c.h == r.h);
        CHECK(c.h_plus == r.hp);
        CHECK((int)c.scrI.size() == r.h);
        CHECK((int)c.narrow_reps.size() == r.hp);
    }
}

TEST_CASE("class group laws") {
    const Field& F = Field::quadratic(79);
    const ClassGroupData& c = F.class_group();
    const SmallGroup& g = c.narrow;
    for (int i = 0; i < g.n; ++i) {
        CHECK(g.op(i, 0) == i);
        CHECK(g.op(i, g.inv[i]) == 0);
        for (int j = 0; j < g.n; ++j) {
            CHECK(g.op(i, j) == g.op(j, i));
            for (int k = 0; k < g.n; ++k)
                CHECK(g.op(g.op(i, j), k) == g.op(i, g.op(j, k)));
        }
    }
    // evaluation is a homomorphism
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            FIdeal prod = F.mul(c.narrow_reps[i], c.narrow_reps[j]);
            CHECK(F.narrow_class_of(prod) == g.op(i, j));
        }
    // principality agrees with class labels
    for (int i = 0; i < g.n; ++i)
        CHECK(F.is_narrowly_principal(c.narrow_reps[i]) == (i == 0));
    // wide representatives live in their classes
    for (int k = 0; k < c.h; ++k) CHECK(F.wide_class_of(c.scrI[k]) == k);
}

TEST_CASE("prime decomposition in Q(sqrt 79)") {
    const Field& F = Field::quadratic(79);
    auto above2 = F.primes_above(2);
    REQUIRE(above2.size() == 1);
    CHECK(above2[0].e == 2);
    CHECK(F.norm(above2[0].ideal) == 2);
    // square of the ramified prime is (2)
    CHECK(F.mul(above2[0].ideal, above2[0].ideal) == F.ideal_from_rational(Q(2)));

    auto above3 = F.primes_above(3);
    REQUIRE(above3.size() == 2);
    CHECK(F.mul(above3[0].ideal, above3[1].ideal) == F.ideal_from_rational(Q(3)));
    CHECK(above3[0].ideal != above3[1].ideal);
    // omega is congruent to the stored root
    for (const FPrime& pr : above3)
        CHECK(F.contains(pr.ideal, Fel(Q(-pr.root), Q(1))));

    auto above11 = F.primes_above(11);
    REQUIRE(above11.size() == 1);
    CHECK(above11[0].f == 2);
    CHECK(F.norm(above11[0].ideal) == 121);

    // factor (6) = p2^2 p3 p3bar
    auto fac = F.factor_ideal(F.ideal_from_rational(Q(6)));
    Z total = 1;
    int sum_e = 0;
    for (const auto& [pr, e] : fac) {
        sum_e += e;
        for (int i = 0; i < e; ++i) total *= Z(F.norm(pr.ideal).get_num());
    }
    CHECK(total == 36);
    CHECK(sum_e == 4);

    CHECK(F.valuation(F.ideal_from_rational(Q(8)), above2[0]) == 6);
    CHECK(F.valuation(F.ideal_from_rational(Q(1) / 2), above2[0]) == -2);

    auto sq = F.sqrt_ideal(F.ideal_from_rational(Q(4)));
    REQUIRE(sq.has_value());
    CHECK(*sq == F.ideal_from_rational(Q(2)));
    CHECK(!F.sqrt_ideal(above3[0].ideal).has_value());
}

TEST_CASE("ideal arithmetic") {
    const Field& F = Field::quadratic(10);
    FPrime p2 = F.prime_above(2), p3 = F.prime_above(3);
    FIdeal a = F.mul(p2.ideal, p3.ideal);
    CHECK(F.norm(a) == 6);
    CHECK(F.mul(a, F.inverse(a)) == F.ideal_one());
    CHECK(F.contains(p2.ideal, a));
    CHECK(!F.contains(a, p2.ideal));
    CHECK(F.add(a, F.ideal_one()) == F.ideal_one());
    CHECK(F.add(F.pow(p2.ideal, 3), F.pow(p2.ideal, 2)) == F.pow(p2.ideal, 2));
    // norm is multiplicative
    CHECK(F.norm(F.mul(a, a)) == 36);
    // conjugate times ideal = norm
    CHECK(F.mul(p3.ideal, F.conj(p3.ideal)) == F.ideal_from_rational(Q(3)));
}

TEST_CASE("ideals of given norm") {
    const Field& F = Field::quadratic(79);
    CHECK(F.ideals_of_norm(1).size() == 1);
    CHECK(F.ideals_of_norm(2).size() == 1);   // ramified
    CHECK(F.ideals_of_norm(3).size() == 2);   // split
    CHECK(F.ideals_of_norm(4).size() == 1);   // only (2) = p2^2
    CHECK(F.ideals_of_norm(6).size() == 2);
    CHECK(F.ideals_of_norm(9).size() == 3);   // p3^2, p3bar^2, (3)
    CHECK(F.ideals_of_norm(121).size() == 1); // inert (11)
    for (const FIdeal& x : F.ideals_of_norm(9)) CHECK(F.norm(x) == 9);
}

TEST_CASE("principality and generators") {
    const Field& F = Field::quadratic(79);
    FPrime p3 = F.prime_above(3);
    // narrow class of p3 has order 6
    int c = F.narrow_class_of(p3.ideal);
    const SmallGroup& g = F.class_group().narrow;
    int ord = 1, x = c;
    while (x != 0) {
        x = g.op(x, c);
        ++ord;
    }
    CHECK(ord == 6);
    CHECK(!F.is_principal(p3.ideal));
    CHECK(!F.is_narrowly_principal(F.pow(p3.ideal, 3)));
    CHECK(F.is_principal(F.pow(p3.ideal, 3)));
    Fel gen;
    REQUIRE(F.is_principal(F.pow(p3.ideal, 3), &gen));
    CHECK(F.principal_ideal(gen) == F.pow(p3.ideal, 3));
    CHECK(abs(F.norm(gen)) == 27);

    REQUIRE(F.totally_positive_generator(F.pow(p3.ideal, 6), gen));
    CHECK(F.is_totally_positive(gen));
    CHECK(F.principal_ideal(gen) == F.pow(p3.ideal, 6));

    // canonical generator of a rational principal ideal is the rational itself
    REQUIRE(F.canonical_tot_pos_generator(F.ideal_from_rational(Q(7)), gen));
    CHECK(gen == Fel(7));
    const Field& G = Field::quadratic(10);
    REQUIRE(G.canonical_tot_pos_generator(G.ideal_from_rational(Q(5) / 3), gen));
    CHECK(gen == Fel(Q(5) / 3, Q(0)));
}

TEST_CASE("box enumeration") {
    const Field& F = Field::quadratic(2);
    FIdeal o = F.ideal_one();
    Q lo[2] = {Q(0), Q(0)}, hi[2] = {Q(3), Q(3)};
    auto pts = F.elements_in_box(o.m, o.den, lo, hi);
    REQUIRE(pts.size() == 4);
    for (const Fel& x : pts) {
        CHECK(x.b == 0);
        CHECK(x.a >= 0);
        CHECK(x.a <= 3);
    }
    Q lo1[2] = {Q(1), Q(1)}, hi1[2] = {Q(1), Q(1)};
    auto one = F.elements_in_box(o.m, o.den, lo1, hi1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Fel(1));
    // wider window catches conjugate pairs
    Q lo2[2] = {Q(-3), Q(-3)}, hi2[2] = {Q(3), Q(3)};
    auto sym = F.elements_in_box(o.m, o.den, lo2, hi2);
    // a + b sqrt2 with |a +- b sqrt2| <= 3: a in {-3..3} x b in {-1,0,1} feasible set
    int count = 0;
    for (long a = -3; a <= 3; ++a)
        for (long b = -2; b <= 2; ++b) {
            Fel x{Q(a), Q(b)};
            if (F.cmp_sigma(x, 0, Q(-3)) >= 0 && F.cmp_sigma(x, 0, Q(3)) <= 0 &&
                F.cmp_sigma(x, 1, Q(-3)) >= 0 && F.cmp_sigma(x, 1, Q(3)) <= 0)
                ++count;
        }
    CHECK((int)sym.size() == count);
}

TEST_CASE("quotient rings") {
    const Field& F = Field::quadratic(79);
    FPrime p3 = F.prime_above(3);
    QuotRing r1(F, p3, 1);
    CHECK(r1.size() == 3);
    QuotRing r3(F, p3, 3);
    CHECK(r3.size() == 27);
    int units = 0;
    for (const Fel& x : r3.elements()) {
        if (!r3.is_unit(x)) continue;
        ++units;
        Fel inv = r3.inverse(x);
        CHECK(r3.reduce(F.mul(x, inv)) == r3.reduce(Fel(1)));
    }
    CHECK(units == 18);  // 27 - 9 multiples of p3

    FPrime p11 = F.prime_above(11);
    QuotRing s(F, p11, 1);
    CHECK(s.size() == 121);
    int u2 = 0;
    for (const Fel& x : s.elements()) {
        if (!s.is_unit(x)) continue;
        ++u2;
        CHECK(s.reduce(F.mul(x, s.inverse(x))) == s.reduce(Fel(1)));
    }
    CHECK(u2 == 120);

    FPrime p2 = F.prime_above(2);
    QuotRing t(F, p2, 2);
    CHECK(t.size() == 4);
    for (const Fel& x : t.elements()) {
        if (!t.is_unit(x)) continue;
        CHECK(t.reduce(F.mul(x, t.inverse(x))) == t.reduce(Fel(1)));
    }

    // rational side
    const Field& Fq = Field::rationals();
    QuotRing rq(Fq, Fq.prime_above(5), 2);
    CHECK(rq.size() == 25);
    CHECK(rq.reduce(Fel(26)) == rq.reduce(Fel(1)));
    CHECK(rq.inverse(rq.reduce(Fel(7))) == rq.reduce(Fel(18)));  // 7*18 = 126 = 1 mod 25
}

TEST_CASE("narrow vs wide classes in Q(sqrt 34)") {
    // Nm(eps) = +1 here, so the narrow group is twice the wide group
    const Field& F = Field::quadratic(34);
    const ClassGroupData& c = F.class_group();
    CHECK(c.h_plus == 4);
    CHECK(c.h == 2);
    CHECK(c.sign_class != 0);
    // sign class is killed in the wide quotient
    CHECK(c.narrow_to_wide[c.sign_class] == 0);
    // p3^2 = (5 + sqrt34) has only mixed-signature generators (norm -9),
    // so it is wide-principal but its narrow class is the sign class
    FPrime p3 = F.prime_above(3);
    CHECK(!F.is_principal(p3.ideal));
    CHECK(F.is_principal(F.pow(p3.ideal, 2)));
    CHECK(!F.is_narrowly_principal(F.pow(p3.ideal, 2)));
    CHECK(F.narrow_class_of(F.pow(p3.ideal, 2)) == c.sign_class);
    Fel gen;
    REQUIRE(F.is_principal(F.pow(p3.ideal, 2), &gen));
    CHECK(abs(F.norm(gen)) == 9);
    CHECK(F.principal_ideal(gen) == F.pow(p3.ideal, 2));
}
