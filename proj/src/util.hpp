/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_UTIL_HPP
#define QUATARITH_UTIL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace quatarith {

using Z = mpz_class;
using Q = mpq_class;

// Thrown for violated preconditions and unsupported inputs (error code
// QA_ERR_DOMAIN at the C boundary).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

// Thrown when an internal invariant fails; always indicates a bug.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

inline void check(bool cond, const char* msg) {
    if (!cond) throw internal_error(msg);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw domain_error(msg);
}

inline Z isqrt(const Z& n) {
    check(n >= 0, "isqrt of negative");
    Z r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Z& n, Z* root = nullptr) {
    if (n < 0) return false;
    Z r = isqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

// floor(a/b) for b != 0, rounding toward minus infinity.
inline Z fdiv(const Z& a, const Z& b) {
    Z q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Z cdiv(const Z& a, const Z& b) {
    Z q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Z mod_floor(const Z& a, const Z& b) {
    Z r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Z gcd(const Z& a, const Z& b) {
    Z g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Z lcm(const Z& a, const Z& b) {
    Z g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Z floor_q(const Q& x) { return fdiv(x.get_num(), x.get_den()); }
inline Z ceil_q(const Q& x) { return cdiv(x.get_num(), x.get_den()); }

// floor(c + s*sqrt(r)) for rational c, rational r >= 0, sign s = +-1.
// Used for exact lattice enumeration bounds.
Z floor_plus_sqrt(const Q& c, const Q& r, int sign);

// ceil(c + s*sqrt(r)) = -floor(-c - s*sqrt(r)).
inline Z ceil_plus_sqrt(const Q& c, const Q& r, int sign) {
    return -floor_plus_sqrt(-c, r, -sign);
}

std::vector<std::pair<Z, int>> factorize(const Z& n);
Z sigma1(const Z& n);  // sum of positive divisors
bool is_prime(const Z& n);

// Legendre/Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(const Z& a, const Z& n) {
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

std::string q_to_string(const Q& x);

// numerator of a rational known to be an integer
inline Z q_num(const Q& q) {
    check(q.get_den() == 1, "expected an integer value");
    return q.get_num();
}

inline Z inv_mod(const Z& a, const Z& m) {
    Z r;
    int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    check(ok != 0, "inv_mod: not invertible");
    return r;
}

}  // namespace quatarith

#endif
