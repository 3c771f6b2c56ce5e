/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "spinor.hpp"

namespace quatarith {

SpinorGroups spinor_groups(const QuatAlg& D, const Order& O) {
    return spinor_groups(D, O, primitive_two_sided(D, O));
}

SpinorGroups spinor_groups(const QuatAlg& D, const Order& O,
                           const TwoSidedSet& ts) {
    const Field& F = D.field();
    check(is_residually_unramified(D, O),
          "spinor_groups: order residually ramified");
    const ClassGroupData& C = F.class_group();
    std::vector<int> gens = C.narrow.squares();
    for (size_t b = 0; b < ts.primes.size(); ++b)
        gens.push_back(F.narrow_class_of(ts.norms[size_t(1) << b]));
    SpinorGroups S;
    S.hplus = C.narrow.subgroup(gens);
    C.narrow.quotient(gens, S.sg_label, S.sg);
    std::vector<int> wgens;
    for (int g : gens) wgens.push_back(C.narrow_to_wide[g]);
    C.wide.quotient(wgens, S.wsg_label, S.wsg);
    return S;
}

int spinor_class_of(const QuatAlg& D, const QLat& I) {
    return D.field().narrow_class_of(nr_ideal(D, I));
}

int spinor_genus_from_ideal(const QuatAlg& D, const SpinorGroups& S,
                            const QLat& I) {
    return S.sg_label[spinor_class_of(D, I)];
}

QLat connecting_ideal(const QuatAlg& D, const Order& from, const Order& to) {
    if (to.lat == from.lat) return from.lat;
    QLat P = lat_mul(D, to.lat, from.lat);
    check(left_order(D, P) == to.lat, "connecting_ideal: left order mismatch");
    check(right_order(D, P) == from.lat,
          "connecting_ideal: right order mismatch");
    FIdeal nr = nr_ideal(D, P);
    check(lat_mul(D, P, lat_conj(D, P)) == lat_scale(D, to.lat, nr) &&
              lat_mul(D, lat_conj(D, P), P) == lat_scale(D, from.lat, nr),
          "connecting_ideal: product lattice is not invertible");
    return P;
}

int spinor_genus_of_order(const QuatAlg& D, const SpinorGroups& S,
                          const Order& O, const Order& Op) {
    return spinor_genus_from_ideal(D, S, connecting_ideal(D, O, Op));
}

SpinorTypePartition spinor_type_partition(const QuatAlg& D, const Order& O,
                                          const IdealClassSet& cs) {
    return spinor_type_partition(D, O, cs, picent(D, O));
}

SpinorTypePartition spinor_type_partition(const QuatAlg& D, const Order& O,
                                          const IdealClassSet& cs,
                                          const PicentGroup& G) {
    SpinorTypePartition T;
    T.S = spinor_groups(D, O, G.prim);
    std::vector<size_t> root = type_orbit_roots(D, G, cs);
    std::vector<int> lab(cs.reps.size());
    for (size_t i = 0; i < cs.reps.size(); ++i)
        lab[i] = spinor_genus_from_ideal(D, T.S, cs.reps[i]);
    T.types_per_genus.assign(T.S.sg.n, 0);
    for (size_t i = 0; i < cs.reps.size(); ++i) {
        check(lab[i] == lab[root[i]],
              "spinor_type_partition: orbit crosses spinor genera");
        if (root[i] != i) continue;
        T.type_reps.push_back(i);
        T.genus_of_type.push_back(lab[i]);
        ++T.types_per_genus[lab[i]];
        ++T.t;
    }
    T.t_sg = T.types_per_genus[0];
    return T;
}

long spinor_type_number(const QuatAlg& D, const Order& O,
                        const IdealClassSet& cs) {
    return spinor_type_partition(D, O, cs).t_sg;
}

Q spinor_class_mass(const QuatAlg& D, const IdealClassSet& cs,
                    int narrow_class) {
    Q m(0);
    for (size_t i = 0; i < cs.reps.size(); ++i)
        if (spinor_class_of(D, cs.reps[i]) == narrow_class)
            m += Q(1) / Q(cs.w[i]);
    return m;
}

}  // namespace quatarith
