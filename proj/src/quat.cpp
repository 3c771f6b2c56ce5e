/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "quat.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_set>

namespace quatarith {

namespace {

Fel fel_pow(const Field& F, const Fel& x, int n) {
    Fel r(1);
    for (int i = 0; i < n; ++i) r = F.mul(r, x);
    return r;
}

// element of pr with valuation exactly 1
Fel uniformizer(const Field& F, const FPrime& pr) {
    std::vector<Fel> cand = F.basis(pr.ideal);
    cand.push_back(cand[0] + cand[1 % cand.size()]);
    for (const Fel& x : cand)
        if (!x.is_zero() && F.valuation(x, pr) == 1) return x;
    throw internal_error("uniformizer: no valuation-1 basis element");
}

// quadratic residue character of O_F/pr (odd residue characteristic),
// evaluated at an integral x with v_pr(x) = 0
int chi_residue(const Field& F, const FPrime& pr, const Fel& x) {
    QuotRing R(F, pr, 1);
    Z e = (R.size() - 1) / 2;
    Fel base = R.reduce(x);
    Fel r = R.reduce(Fel(1));
    Z k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = R.reduce(F.mul(r, base));
        base = R.reduce(F.mul(base, base));
        k >>= 1;
    }
    if (r == R.reduce(Fel(1))) return 1;
    if (r == R.reduce(Fel(-1))) return -1;
    throw internal_error("chi_residue: argument not a unit");
}

// residue-field representative t with x = pi^alpha * t mod pr^(alpha+1)
Fel unit_residue(const Field& F, const FPrime& pr, const Fel& x, int alpha,
                 const Fel& pi) {
    QuotRing R(F, pr, alpha + 1);
    Fel target = R.reduce(x);
    Fel w = fel_pow(F, pi, alpha);
    for (const Fel& t : R.residue_field_elements())
        if (R.reduce(F.mul(w, t)) == target) return t;
    throw internal_error("unit_residue: no representative found");
}

// key for set membership of reduced quotient-ring elements
uint64_t fel_key(const Fel& x) {
    Z a = q_num(x.a), b = q_num(x.b);
    check(a >= 0 && a < (Z(1) << 32) && b >= 0 && b < (Z(1) << 32),
          "fel_key: reduced coordinate out of range");
    return (a.get_ui() << 32) | b.get_ui();
}

// primitive solubility of z^2 = a x^2 + b y^2 over Z_2, for odd a2, b2 shifted
// by the valuation parities
int hilbert_scalar2(const Z& a2, const Z& b2, int va, int vb) {
    int m = 5 + 2 * std::max(va & 1, vb & 1);
    long mask = (1L << m) - 1;
    long a = mod_floor(a2 << (va & 1), Z(1) << m).get_si();
    long b = mod_floor(b2 << (vb & 1), Z(1) << m).get_si();
    std::vector<char> sq(size_t(mask) + 1, 0);
    for (long z = 0; z <= mask; ++z) sq[size_t((z * z) & mask)] = 1;
    for (long t = 0; t <= mask; ++t) {
        long t2 = (t * t) & mask;
        if (sq[size_t((a + b * t2) & mask)]) return 1;
        if (sq[size_t((a * t2 + b) & mask)]) return 1;
    }
    return -1;
}

// root of x^2 - omega_tr*x - omega_c0 mod 2^prec lifting pr.root (split 2)
Z lift_root2(const Field& F, const FPrime& pr, int prec) {
    Z mod = 4, r = pr.root, t = F.omega_tr(), c0 = F.omega_c0();
    for (int k = 2; ; k *= 2) {
        r = mod_floor(r - (r * r - t * r - c0) * inv_mod(2 * r - t, mod), mod);
        if (k >= prec) return mod_floor(r, Z(1) << prec);
        mod = mod * mod;
    }
}

Z scalar_rep(const Fel& x, const Z& r, const Z& mod) {
    return mod_floor(q_num(x.a) + q_num(x.b) * r, mod);
}

// multiply x by squares (pi^-2k and an integer unit square) so that the
// pr-valuation drops to v mod 2; every Hilbert symbol is preserved and the
// result is integral
Fel strip_even_valuation(const Field& F, const FPrime& pr, const Fel& x, int v) {
    if (v < 2) return x;
    Fel pi_inv = F.inv(uniformizer(F, pr));
    Fel y = F.mul(x, fel_pow(F, pi_inv, 2 * (v / 2)));
    Z den = lcm(y.a.get_den(), y.b.get_den());
    y = F.mul(y, Fel(den * den));
    check(F.valuation(y, pr) == v % 2, "strip_even_valuation: wrong valuation");
    return y;
}

struct DyadicRing {
    std::vector<Fel> els;
    std::vector<Fel> els2;  // reduced squares, aligned with els
    std::unordered_set<uint64_t> squares;
};

const DyadicRing& dyadic_ring(const Field& F, const FPrime& pr, int m,
                              const QuotRing& R) {
    static std::map<std::tuple<long, std::vector<Z>, int>, DyadicRing> cache;
    std::vector<Z> id{pr.p};
    id.insert(id.end(), pr.ideal.m.a.begin(), pr.ideal.m.a.end());
    auto key = std::make_tuple(F.d(), id, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    DyadicRing ring;
    ring.els = R.elements();
    ring.els2.reserve(ring.els.size());
    for (const Fel& z : ring.els) {
        Fel z2 = R.reduce(F.mul(z, z));
        ring.els2.push_back(z2);
        ring.squares.insert(fel_key(z2));
    }
    return cache.emplace(key, std::move(ring)).first->second;
}

}  // namespace

QuatAlg::QuatAlg(const Field& F, const Fel& a, const Fel& b)
    : F_(&F), a_(a), b_(b) {
    require(!a.is_zero() && !b.is_zero(), "quaternion algebra parameters must be nonzero");
    require(F.is_integral(a) && F.is_integral(b),
            "quaternion algebra parameters must be integral");
}

Qel QuatAlg::gen_i() const {
    Qel x;
    x.c[1] = Fel(1);
    return x;
}

Qel QuatAlg::gen_j() const {
    Qel x;
    x.c[2] = Fel(1);
    return x;
}

Qel QuatAlg::gen_k() const {
    Qel x;
    x.c[3] = Fel(1);
    return x;
}

Qel QuatAlg::mul(const Qel& x, const Qel& y) const {
    const Field& F = *F_;
    const Fel ab = F.mul(a_, b_);
    Qel z;
    z.c[0] = F.mul(x.c[0], y.c[0]) + F.mul(a_, F.mul(x.c[1], y.c[1])) +
             F.mul(b_, F.mul(x.c[2], y.c[2])) - F.mul(ab, F.mul(x.c[3], y.c[3]));
    z.c[1] = F.mul(x.c[0], y.c[1]) + F.mul(x.c[1], y.c[0]) -
             F.mul(b_, F.mul(x.c[2], y.c[3])) + F.mul(b_, F.mul(x.c[3], y.c[2]));
    z.c[2] = F.mul(x.c[0], y.c[2]) + F.mul(x.c[2], y.c[0]) +
             F.mul(a_, F.mul(x.c[1], y.c[3])) - F.mul(a_, F.mul(x.c[3], y.c[1]));
    z.c[3] = F.mul(x.c[0], y.c[3]) + F.mul(x.c[3], y.c[0]) +
             F.mul(x.c[1], y.c[2]) - F.mul(x.c[2], y.c[1]);
    return z;
}

Qel QuatAlg::mul(const Qel& x, const Fel& s) const {
    Qel z;
    for (int i = 0; i < 4; ++i) z.c[i] = F_->mul(x.c[i], s);
    return z;
}

Qel QuatAlg::mul(const Qel& x, const Q& s) const { return mul(x, Fel(s, 0)); }

Qel QuatAlg::conj(const Qel& x) const {
    Qel z;
    z.c[0] = x.c[0];
    for (int i = 1; i < 4; ++i) z.c[i] = -x.c[i];
    return z;
}

Fel QuatAlg::trd(const Qel& x) const { return x.c[0] + x.c[0]; }

Fel QuatAlg::nrd(const Qel& x) const {
    const Field& F = *F_;
    Fel n = F.mul(x.c[0], x.c[0]) - F.mul(a_, F.mul(x.c[1], x.c[1])) -
            F.mul(b_, F.mul(x.c[2], x.c[2])) +
            F.mul(F.mul(a_, b_), F.mul(x.c[3], x.c[3]));
    return n;
}

Qel QuatAlg::inv(const Qel& x) const {
    Fel n = nrd(x);
    require(!n.is_zero(), "inverse of a zero divisor");
    Qel z = conj(x);
    for (int i = 0; i < 4; ++i) z.c[i] = F_->div(z.c[i], n);
    return z;
}

std::string QuatAlg::to_string(const Qel& x) const {
    static const char* names[4] = {"", "*i", "*j", "*k"};
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (x.c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + F_->to_string(x.c[i]) + ")" + names[i];
    }
    return s.empty() ? "0" : s;
}

bool QuatAlg::totally_definite() const {
    for (int i = 0; i < F_->degree(); ++i)
        if (F_->sign_sigma(a_, i) >= 0 || F_->sign_sigma(b_, i) >= 0) return false;
    return true;
}

int QuatAlg::hilbert(const FPrime& pr) const {
    const Field& F = *F_;
    int va = F.valuation(a_, pr);
    int vb = F.valuation(b_, pr);
    if (pr.p != 2) {
        if (va % 2 == 0 && vb % 2 == 0) return 1;
        Fel pi = uniformizer(F, pr);
        int s = 1;
        if (va % 2 == 1 && vb % 2 == 1) s *= chi_residue(F, pr, Fel(-1));
        if (vb % 2 == 1) s *= chi_residue(F, pr, unit_residue(F, pr, a_, va, pi));
        if (va % 2 == 1) s *= chi_residue(F, pr, unit_residue(F, pr, b_, vb, pi));
        return s;
    }
    // Even residue characteristic: exact local solubility of z^2 = a x^2 + b y^2.
    // A primitive 2-adic zero can be scaled so that x or y equals 1 (x = y = 0
    // mod pr forces v(z^2) > 0 with z a unit, impossible), and with the
    // precision used below a solution mod pr^m lifts by Hensel's lemma, so the
    // finite searches are exact in both directions.
    if (pr.e == 1 && pr.f == 1) {
        // completion is Q_2 itself; strip valuations and work with scalars
        int prec = va + vb + 10;
        Z mod = Z(1) << prec;
        Z r = F.degree() == 2 ? lift_root2(F, pr, prec) : Z(0);
        Z am = scalar_rep(a_, r, mod) >> va;
        Z bm = scalar_rep(b_, r, mod) >> vb;
        check(mpz_odd_p(am.get_mpz_t()) && mpz_odd_p(bm.get_mpz_t()),
              "hilbert: unit part not odd");
        return hilbert_scalar2(am, bm, va, vb);
    }
    Fel aa = strip_even_valuation(F, pr, a_, va);
    Fel bb = strip_even_valuation(F, pr, b_, vb);
    va %= 2;
    vb %= 2;
    int m = 2 * pr.e + 2 * std::max(va, vb) + 3;
    QuotRing R(F, pr, m);
    const DyadicRing& ring = dyadic_ring(F, pr, m, R);
    for (const Fel& t2 : ring.els2) {
        if (ring.squares.count(fel_key(R.reduce(aa + F.mul(bb, t2))))) return 1;
        if (ring.squares.count(fel_key(R.reduce(F.mul(aa, t2) + bb)))) return 1;
    }
    return -1;
}

const std::vector<FPrime>& QuatAlg::ramified_primes() const {
    if (ram_) return *ram_;
    const Field& F = *F_;
    std::vector<FPrime> cand = F.primes_above(2);
    for (const Fel& x : {a_, b_})
        for (const auto& pe : F.factor_ideal(F.principal_ideal(x)))
            cand.push_back(pe.first);
    auto key = [](const FPrime& x) {
        std::vector<Z> k{x.p};
        k.insert(k.end(), x.ideal.m.a.begin(), x.ideal.m.a.end());
        return k;
    };
    std::sort(cand.begin(), cand.end(),
              [&](const FPrime& x, const FPrime& y) { return key(x) < key(y); });
    cand.erase(std::unique(cand.begin(), cand.end(),
                           [](const FPrime& x, const FPrime& y) { return x == y; }),
               cand.end());
    auto out = std::make_unique<std::vector<FPrime>>();
    for (const FPrime& pr : cand)
        if (hilbert(pr) == -1) out->push_back(pr);
    int inf_ram = 0;
    for (int i = 0; i < F.degree(); ++i)
        if (F.sign_sigma(a_, i) < 0 && F.sign_sigma(b_, i) < 0) ++inf_ram;
    check((out->size() + inf_ram) % 2 == 0, "ramified places: odd count");
    ram_ = std::move(out);
    return *ram_;
}

FIdeal QuatAlg::alg_disc() const {
    FIdeal d = F_->ideal_one();
    for (const FPrime& pr : ramified_primes()) d = F_->mul(d, pr.ideal);
    return d;
}

}  // namespace quatarith
