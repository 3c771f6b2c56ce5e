/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_SPINOR_HPP
#define QUATARITH_SPINOR_HPP

#include "picent.hpp"

namespace quatarith {

// Spinor class and spinor genus data of a residually unramified order.
// hplus is the subgroup of the narrow class group generated by the squares
// together with the classes of the local normalizer norms at the primes
// dividing rdisc(O); the spinor genus group is Cl^+ / hplus and the wide
// spinor genus group is the quotient of Cl by the image of hplus.
struct SpinorGroups {
    std::vector<int> hplus;      // sorted narrow class indices, contains 0
    SmallGroup sg;
    std::vector<int> sg_label;   // narrow class index -> sg element
    SmallGroup wsg;
    std::vector<int> wsg_label;  // wide class index -> wsg element
};

SpinorGroups spinor_groups(const QuatAlg& D, const Order& O);
SpinorGroups spinor_groups(const QuatAlg& D, const Order& O,
                           const TwoSidedSet& ts);

// narrow class of Nr(I); constant on right ideal classes and the label of
// the spinor class of I
int spinor_class_of(const QuatAlg& D, const QLat& I);

// sg element of the spinor genus of the left order of I relative to the
// right order of I
int spinor_genus_from_ideal(const QuatAlg& D, const SpinorGroups& S,
                            const QLat& I);

// ideal with left order `to` and right order `from`, built from the
// product lattice; the result is validated to be invertible with the
// stated orders, which always holds for maximal orders in one genus
QLat connecting_ideal(const QuatAlg& D, const Order& from, const Order& to);

// sg element of the spinor genus of Op within the genus of O
int spinor_genus_of_order(const QuatAlg& D, const SpinorGroups& S,
                          const Order& O, const Order& Op);

// types grouped by the spinor genus of their left orders
struct SpinorTypePartition {
    SpinorGroups S;
    std::vector<size_t> type_reps;      // one class index per type
    std::vector<int> genus_of_type;     // sg element per type
    std::vector<long> types_per_genus;  // indexed by sg element
    long t = 0;                         // total type count
    long t_sg = 0;                      // types in the spinor genus of O
};

SpinorTypePartition spinor_type_partition(const QuatAlg& D, const Order& O,
                                          const IdealClassSet& cs);
SpinorTypePartition spinor_type_partition(const QuatAlg& D, const Order& O,
                                          const IdealClassSet& cs,
                                          const PicentGroup& G);

// spinor type number by direct orbit enumeration
long spinor_type_number(const QuatAlg& D, const Order& O,
                        const IdealClassSet& cs);

// sum of 1/w over the classes in one spinor class; the same value
// mass / h^+ for every spinor class
Q spinor_class_mass(const QuatAlg& D, const IdealClassSet& cs,
                    int narrow_class);

}  // namespace quatarith

#endif
