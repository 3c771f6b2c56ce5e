/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_CLASSSET_HPP
#define QUATARITH_CLASSSET_HPP

#include "order.hpp"

namespace quatarith {

struct IdealClassSet {
    std::vector<QLat> reps;  // right O-ideals, reps[0] = O
    std::vector<long> w;     // unit index [O_l(I)^x : O_F^x] per class
    Q mass;                  // sum of 1/w, equals the mass formula on return
};

// locally principal right O-ideals J with pr * Nr(I) = Nr(J) inside I,
// for I an invertible right O-ideal
std::vector<QLat> subideals_of_norm(const QuatAlg& D, const Order& O,
                                    const QLat& I, const FPrime& pr);

// sorted values Tr_{F/Q} trd(x conj(x)) <= bound over +-pairs of x in an
// order lattice; invariant under conjugation, so conjugate orders give
// equal lists
std::vector<Q> order_theta(const QuatAlg& D, const QLat& olat, long bound);

// x with I = x J, both invertible right ideals over a common order
bool is_right_isomorphic(const QuatAlg& D, const QLat& I, const QLat& J,
                         Qel* witness = nullptr);

// [L^x : O_F^x] of an order lattice: one element per unit pair {x, -x}
// with nrd(x) a totally positive unit
long unit_index(const QuatAlg& D, const QLat& olat);

// Eichler mass of the right ideal class set of O
Q mass_formula(const QuatAlg& D, const Order& O);

// left-multiplies by the inverse of a shortest vector, shrinking the
// entries while keeping the right ideal class
QLat reduce_ideal(const QuatAlg& D, const QLat& I);

// right ideal class set by neighbour expansion at primes of increasing
// norm until the mass closes up; primes dividing rdisc are used only
// when ramified_neighbors is set
IdealClassSet class_set(const QuatAlg& D, const Order& O,
                        bool ramified_neighbors = false);

}  // namespace quatarith

#endif
