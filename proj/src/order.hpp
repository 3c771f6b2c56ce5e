/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_ORDER_HPP
#define QUATARITH_ORDER_HPP

#include "qlattice.hpp"

namespace quatarith {

enum class OrderKind { generic, maximal, eichler };

struct Order {
    QLat lat;
    FIdeal rdisc;   // reduced discriminant
    FIdeal level;   // Eichler level (O_F unless kind == eichler)
    OrderKind kind = OrderKind::generic;
};

// validates ring axioms (contains 1, O_F-stable, multiplicatively closed,
// integral basis) and computes the reduced discriminant
Order make_order(const QuatAlg& D, const QLat& lat);

// reduced discriminant of a full-rank lattice: sqrt of the O_F-ideal
// generated by the 4x4 determinants det(trd(x_i x_j))
FIdeal reduced_discriminant(const QuatAlg& D, const QLat& lat);

// the order O_F<1, i, j, ij>
Order standard_order(const QuatAlg& D);

// a maximal order containing the standard order
Order maximal_order(const QuatAlg& D);

// Eichler order of the given integral level (coprime to the algebra
// discriminant) inside a maximal order
Order eichler_order(const QuatAlg& D, const FIdeal& level);

// Eichler invariant at a prime: 2 when pr does not divide the reduced
// discriminant, otherwise 1, 0, -1 by the shape of O/rad(O) at pr
int eichler_invariant(const QuatAlg& D, const Order& O, const FPrime& pr);

// true when the Eichler invariant is nonzero at every prime dividing rdisc
bool is_residually_unramified(const QuatAlg& D, const Order& O);

// radical of O/prO pulled back to a lattice between O and pr*O
QLat radical_lattice(const QuatAlg& D, const QLat& olat, const FPrime& pr);

// idempotent e in O with e^2 = e, trd(e) = 1, nrd(e) = 0 modulo pr^v,
// for pr coprime to the algebra discriminant
Qel split_idempotent(const QuatAlg& D, const QLat& olat, const FPrime& pr, int v);

}  // namespace quatarith

#endif
