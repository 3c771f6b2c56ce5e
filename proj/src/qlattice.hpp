/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_QLATTICE_HPP
#define QUATARITH_QLATTICE_HPP

#include "quat.hpp"

namespace quatarith {

// Full-rank Z-lattice in D.  Rows of m, divided by den, are coordinates with
// respect to the standard basis (1, i, j, k) for F = Q and
// (1, w, i, wi, j, wj, k, wk) for quadratic F with integral basis (1, w).
struct QLat {
    ZMat m;
    Z den = 1;
    bool operator==(const QLat& o) const { return den == o.den && m == o.m; }
    bool operator!=(const QLat& o) const { return !(*this == o); }
};

int qdim(const QuatAlg& D);
std::vector<Q> qel_coords(const QuatAlg& D, const Qel& x);
Qel qel_from_coords(const QuatAlg& D, const std::vector<Q>& v);

// canonical form: HNF rows, denominator coprime to the content
QLat lat_normalize(QLat L);
QLat lat_from_rows(const QuatAlg& D, const std::vector<std::vector<Q>>& rows);
// Z-span and O_F-span of generators
QLat lat_zspan(const QuatAlg& D, const std::vector<Qel>& gens);
QLat lat_ofspan(const QuatAlg& D, const std::vector<Qel>& gens);
std::vector<Qel> lat_basis(const QuatAlg& D, const QLat& L);

QLat lat_mul(const QuatAlg& D, const QLat& x, const QLat& y);
QLat lat_mul(const QuatAlg& D, const QLat& x, const Qel& g);
QLat lat_mul(const QuatAlg& D, const Qel& g, const QLat& x);
QLat lat_mul(const QuatAlg& D, const QLat& x, const Q& s);
QLat lat_scale(const QuatAlg& D, const QLat& x, const Fel& s);
QLat lat_scale(const QuatAlg& D, const QLat& x, const FIdeal& a);
QLat lat_add(const QuatAlg& D, const QLat& x, const QLat& y);
QLat lat_intersect(const QuatAlg& D, const QLat& x, const QLat& y);
QLat lat_conj(const QuatAlg& D, const QLat& L);
bool lat_contains(const QuatAlg& D, const QLat& L, const Qel& x);
bool lat_contains(const QuatAlg& D, const QLat& L, const QLat& M);
// exact solution of y * (L.m / L.den) = target for full-rank L
std::vector<Q> lat_coords(const QLat& L, const std::vector<Q>& target);
// generalized index [L : M] as a positive rational
Q lat_index(const QuatAlg& D, const QLat& L, const QLat& M);

QLat left_order(const QuatAlg& D, const QLat& L);
QLat right_order(const QuatAlg& D, const QLat& L);
// inverse of an invertible lattice: conj(L) / Nr(L)
QLat lat_inverse(const QuatAlg& D, const QLat& L);
// reduced norm ideal: the O_F-ideal generated by nrd(x), x in L
FIdeal nr_ideal(const QuatAlg& D, const QLat& L);

// Gram matrix of the totally definite pairing (x, y) -> Tr_{F/Q} trd(x conj(y)),
// returned as g / den2
void lat_gram(const QuatAlg& D, const QLat& L, ZMat& g, Z& den2);

// Nonzero x in L with Tr_{F/Q} trd(x conj(x)) <= bound, one per +-pair
// (the representative's outermost nonzero coordinate is positive).
std::vector<Qel> short_vectors(const QuatAlg& D, const QLat& L, const Q& bound);
// basis of L that is LLL-reduced for the pairing above
std::vector<Qel> reduced_basis(const QuatAlg& D, const QLat& L);
// x in L with nrd(x) = nu exactly, one per +-pair
std::vector<Qel> elements_of_nrd(const QuatAlg& D, const QLat& L, const Fel& nu);

// representatives of M/L for L a finite-index sublattice of M;
// fails if the index exceeds limit
std::vector<Qel> coset_reps(const QuatAlg& D, const QLat& M, const QLat& L,
                            const Z& limit);
// representative of x modulo L with coordinates in [0, 1) on the basis of L
Qel qel_mod(const QuatAlg& D, const QLat& L, const Qel& x);

}  // namespace quatarith

#endif
