/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_PICENT_HPP
#define QUATARITH_PICENT_HPP

#include "classset.hpp"

namespace quatarith {

// primitive two-sided O-ideals: at each prime dividing rdisc(O) there is
// exactly one nontrivial local class for residually unramified O, and the
// global set is indexed by subsets of those primes
struct TwoSidedSet {
    std::vector<FPrime> primes;    // divisors of rdisc(O), increasing norm
    std::vector<QLat> local_prim;  // nontrivial primitive ideal per prime
    std::vector<QLat> prim;        // product over subset bits; prim[0] = O
    std::vector<FIdeal> norms;     // Nr(prim[mask])
};

TwoSidedSet primitive_two_sided(const QuatAlg& D, const Order& O);

// central Picard group: invertible two-sided ideals modulo F^x, each class
// represented by cls[c] * prim[mask] at element index c * 2^omega + mask
struct PicentGroup {
    TwoSidedSet prim;
    std::vector<FIdeal> cls;  // integral ideal class representatives, cls[0] = O_F
    SmallGroup grp;
    std::vector<QLat> reps;
    std::vector<FIdeal> nr;  // Nr(reps[g])
};

PicentGroup picent(const QuatAlg& D, const Order& O);

// number of classes [I] with [I P] = [I]; zero whenever Nr(P) is not
// narrowly principal
long fixed_point_count(const QuatAlg& D, const IdealClassSet& cs, const QLat& P);

// index j with [reps[i] * P] = [reps[j]] in the class set
size_t picent_apply(const QuatAlg& D, const IdealClassSet& cs, size_t i,
                    const QLat& P);

// orbit of each ideal class under the two-sided action: root[i] is the
// smallest class index in the orbit of class i, so distinct roots are in
// bijection with the types
std::vector<size_t> type_orbit_roots(const QuatAlg& D, const PicentGroup& G,
                                     const IdealClassSet& cs);

// type number: orbit count of the Picent action on the class set, either
// as the Burnside average of fixed points or by direct orbit computation
long type_number_burnside(const QuatAlg& D, const Order& O,
                          const IdealClassSet& cs);
long type_number_direct(const QuatAlg& D, const Order& O,
                        const IdealClassSet& cs);

}  // namespace quatarith

#endif
