/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_QUAT_HPP
#define QUATARITH_QUAT_HPP

#include "field.hpp"

namespace quatarith {

// Quaternion x = c[0] + c[1] i + c[2] j + c[3] k over the base field,
// with i^2 = a, j^2 = b, k = ij = -ji.
struct Qel {
    Fel c[4];
    Qel() = default;
    explicit Qel(const Fel& x) { c[0] = x; }
    bool operator==(const Qel& o) const {
        for (int i = 0; i < 4; ++i)
            if (!(c[i] == o.c[i])) return false;
        return true;
    }
    bool operator!=(const Qel& o) const { return !(*this == o); }
    bool is_zero() const {
        for (int i = 0; i < 4; ++i)
            if (!c[i].is_zero()) return false;
        return true;
    }
    Qel operator+(const Qel& o) const {
        Qel r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Qel operator-(const Qel& o) const {
        Qel r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Qel operator-() const {
        Qel r;
        for (int i = 0; i < 4; ++i) r.c[i] = -c[i];
        return r;
    }
};

class QuatAlg {
  public:
    // a, b nonzero integral elements of F
    QuatAlg(const Field& F, const Fel& a, const Fel& b);

    const Field& field() const { return *F_; }
    const Fel& pa() const { return a_; }
    const Fel& pb() const { return b_; }

    Qel mul(const Qel& x, const Qel& y) const;
    Qel mul(const Qel& x, const Fel& s) const;
    Qel mul(const Qel& x, const Q& s) const;
    Qel conj(const Qel& x) const;
    Fel trd(const Qel& x) const;
    Fel nrd(const Qel& x) const;
    Qel inv(const Qel& x) const;
    std::string to_string(const Qel& x) const;

    // true when every real place of F is ramified (a, b totally negative)
    bool totally_definite() const;

    // Hilbert symbol (a, b) at the finite place pr
    int hilbert(const FPrime& pr) const;

    // finite ramified places, sorted by residue characteristic then ideal
    const std::vector<FPrime>& ramified_primes() const;

    // reduced discriminant of the algebra: product of the finite ramified primes
    FIdeal alg_disc() const;

    // basis quaternions
    Qel one() const { return Qel(Fel(1)); }
    Qel gen_i() const;
    Qel gen_j() const;
    Qel gen_k() const;

  private:
    const Field* F_;
    Fel a_, b_;
    mutable std::unique_ptr<std::vector<FPrime>> ram_;
};

}  // namespace quatarith

#endif
