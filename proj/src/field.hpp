/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef QUATARITH_FIELD_HPP
#define QUATARITH_FIELD_HPP

#include <map>
#include <memory>
#include <optional>

#include "zmat.hpp"

namespace quatarith {

class Field;

// Element a + b*omega of Q or Q(sqrt(d));  omega = sqrt(d) for d = 2,3 mod 4
// and (1+sqrt(d))/2 for d = 1 mod 4.  For the rational field b = 0.
struct Fel {
    Q a, b;
    Fel() = default;
    Fel(Q a_, Q b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit Fel(const Z& n) : a(n), b(0) {}
    explicit Fel(long n) : a(n), b(0) {}
    bool operator==(const Fel& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Fel& o) const { return !(*this == o); }
    bool is_zero() const { return a == 0 && b == 0; }
    Fel operator+(const Fel& o) const { return {a + o.a, b + o.b}; }
    Fel operator-(const Fel& o) const { return {a - o.a, b - o.b}; }
    Fel operator-() const { return {-a, -b}; }
};

// Fractional O_F-ideal: rows of m are Z-basis coordinates with respect to
// (1, omega) (just (1) for Q), the ideal is (1/den) * rowspan.
struct FIdeal {
    ZMat m;
    Z den = 1;
    bool operator==(const FIdeal& o) const { return den == o.den && m == o.m; }
    bool operator!=(const FIdeal& o) const { return !(*this == o); }
};

// Prime ideal data.
struct FPrime {
    Z p;           // rational prime below
    int e = 1;     // ramification index
    int f = 1;     // residue degree
    Z root = 0;    // root of the minimal polynomial of omega mod p (e*f = 1 or e = 2)
    FIdeal ideal;  // the prime as an ideal
    bool operator==(const FPrime& o) const { return ideal == o.ideal; }
};

// Finite abelian group given by an explicit multiplication table.
struct SmallGroup {
    int n = 1;
    std::vector<std::vector<int>> mul;  // n x n
    std::vector<int> inv;
    int op(int x, int y) const { return mul[x][y]; }
    std::vector<int> subgroup(std::vector<int> gens) const;  // sorted, contains 0
    // Quotient by the subgroup generated by gens: returns coset labels
    // (label 0 = trivial coset) and the quotient group.
    void quotient(const std::vector<int>& gens, std::vector<int>& label,
                  SmallGroup& q) const;
    std::vector<int> squares() const;
};

struct UnitData {
    Fel eps;              // fundamental unit, sigma1(eps) > 1 (unused for Q)
    int eps_norm = 1;     // Nm(eps) in {1, -1}
    Fel eps_plus;         // generator of totally positive units mod squares
    std::vector<Fel> U;   // representatives of totally positive units mod squares
};

struct ClassGroupData {
    int h_plus = 1, h = 1;
    SmallGroup narrow;                 // 0 = principal narrow class
    std::vector<FIdeal> narrow_reps;   // integral representative per narrow class
    int sign_class = 0;                // narrow class of a mixed-signature principal ideal
    std::vector<int> narrow_to_wide;   // coset labels, 0 = principal
    SmallGroup wide;
    std::vector<FIdeal> scrI;          // minimal-norm integral rep per wide class, scrI[0] = O_F
    // reduced binary form (a, b, c) of disc(F) -> narrow class index
    std::map<std::vector<Z>, int> form_class;
};

class Field {
  public:
    static const Field& rationals();
    static const Field& quadratic(long d);  // d squarefree, d > 1

    int degree() const { return deg_; }
    long d() const { return d_; }
    const Z& disc() const { return disc_; }
    bool omega_half() const { return omega_half_; }
    // minimal polynomial of omega: x^2 - tr_omega*x - nm_neg  (omega^2 = tr_omega*omega + c0)
    const Z& omega_c0() const { return omega_c0_; }
    int omega_tr() const { return omega_tr_; }

    // element arithmetic
    Fel mul(const Fel& x, const Fel& y) const;
    Fel conj(const Fel& x) const;
    Q trace(const Fel& x) const;
    Q norm(const Fel& x) const;
    Fel inv(const Fel& x) const;
    Fel div(const Fel& x, const Fel& y) const { return mul(x, inv(y)); }
    bool is_integral(const Fel& x) const { return x.a.get_den() == 1 && x.b.get_den() == 1; }
    // exact sign of sigma_i(x), i in {0, 1}; sigma_0(omega) > sigma_1(omega)
    int sign_sigma(const Fel& x, int i) const;
    // exact comparison sigma_i(x) <=> q
    int cmp_sigma(const Fel& x, int i, const Q& q) const;
    bool is_totally_positive(const Fel& x) const;
    std::string to_string(const Fel& x) const;

    // rational interval containing sigma_i(x), of width <= 2^-prec
    void sigma_interval(const Fel& x, int i, int prec, Q& lo, Q& hi) const;

    // ideals
    FIdeal ideal_one() const;
    FIdeal ideal_from_generators(const std::vector<Fel>& gens) const;
    FIdeal principal_ideal(const Fel& g) const;
    FIdeal ideal_from_rational(const Q& q) const;
    FIdeal mul(const FIdeal& x, const FIdeal& y) const;
    FIdeal mul(const FIdeal& x, const Fel& g) const;
    FIdeal add(const FIdeal& x, const FIdeal& y) const;
    FIdeal inverse(const FIdeal& x) const;
    FIdeal pow(const FIdeal& x, long e) const;
    Q norm(const FIdeal& x) const;  // positive rational
    FIdeal conj(const FIdeal& x) const;
    bool contains(const FIdeal& x, const Fel& g) const;
    bool contains(const FIdeal& x, const FIdeal& y) const;  // y subset of x
    bool is_integral(const FIdeal& x) const;
    // basis elements of the ideal (as field elements)
    std::vector<Fel> basis(const FIdeal& x) const;

    std::vector<FPrime> primes_above(const Z& p) const;
    FPrime prime_above(const Z& p) const;  // smallest-HNF prime above p
    int valuation(const FIdeal& x, const FPrime& pr) const;
    int valuation(const Fel& x, const FPrime& pr) const;
    std::vector<std::pair<FPrime, int>> factor_ideal(const FIdeal& x) const;
    std::vector<FIdeal> divisors(const FIdeal& x) const;  // integral x
    std::optional<FIdeal> sqrt_ideal(const FIdeal& x) const;

    // all integral ideals of norm exactly n (n >= 1)
    std::vector<FIdeal> ideals_of_norm(const Z& n) const;

    // units / totally positive structure
    const UnitData& units() const;
    Q zeta_minus_one_abs() const;  // |zeta_F(-1)|

    // class groups
    const ClassGroupData& class_group() const;
    int narrow_class_of(const FIdeal& x) const;
    int wide_class_of(const FIdeal& x) const;
    bool is_narrowly_principal(const FIdeal& x) const;
    // all totally positive generators in the fundamental sigma1-window
    bool totally_positive_generator(const FIdeal& x, Fel& gen) const;
    // canonical totally positive generator: minimal trace, tie broken by
    // larger sigma1 (deterministic)
    bool canonical_tot_pos_generator(const FIdeal& x, Fel& gen) const;
    bool is_principal(const FIdeal& x, Fel* gen = nullptr) const;

    // lattice-point enumeration: all x in (1/den)*rowspan(m) with
    // sigma_i(x) in [lo[i], hi[i]] (exact; bounds rational)
    std::vector<Fel> elements_in_box(const ZMat& m, const Z& den, const Q lo[2],
                                     const Q hi[2]) const;
    // all elements of the ideal with given exact norm value (up to nothing;
    // exact matches only), norm a rational
    std::vector<Fel> elements_of_norm(const FIdeal& x, const Q& nm) const;

  private:
    explicit Field(long d);
    int deg_;
    long d_ = 0;
    Z disc_;
    bool omega_half_ = false;
    Z omega_c0_;
    int omega_tr_ = 0;
    mutable std::unique_ptr<UnitData> units_;
    mutable std::unique_ptr<ClassGroupData> cls_;
    void ensure_units() const;
    void ensure_class_group() const;
};

// Quotient ring O_F / pr^k for a prime pr.
class QuotRing {
  public:
    QuotRing(const Field& F, const FPrime& pr, int k);
    const Field& field() const { return *F_; }
    const FIdeal& modulus() const { return mod_; }
    Z size() const;  // Nm(pr)^k
    Fel reduce(const Fel& x) const;  // x integral
    bool is_unit(const Fel& x) const;
    Fel inverse(const Fel& x) const;  // x a unit
    std::vector<Fel> elements() const;
    std::vector<Fel> residue_field_elements() const;  // reps of O_F/pr
    const FPrime& prime() const { return pr_; }
    int k() const { return k_; }

  private:
    const Field* F_;
    FPrime pr_;
    int k_;
    FIdeal mod_;
    Z d0_, d1_;  // HNF diagonal of mod_
    Z zmod_;     // mod_ intersect Z = (zmod_)
};

}  // namespace quatarith

#endif
