/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "field.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace quatarith {

namespace {

// directed rational enclosure of sqrt(n) for integer n >= 0, width 2^-prec
void sqrt_enclosure(const Z& n, int prec, Q& lo, Q& hi) {
    check(n >= 0, "sqrt_enclosure: negative argument");
    Z scale = Z(1) << prec;
    Z r = isqrt(n * scale * scale);
    lo = Q(r) / Q(scale);
    hi = Q(r + 1) / Q(scale);
}

// Tonelli-Shanks square root mod an odd prime.
Z sqrt_mod(const Z& a0, const Z& p) {
    Z a = mod_floor(a0, p);
    if (a == 0) return 0;
    check(mpz_jacobi(a.get_mpz_t(), p.get_mpz_t()) == 1, "sqrt_mod: non-residue");
    Z r;
    if (mod_floor(p, 4) == 3) {
        Z e = (p + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    } else {
        Z q = p - 1;
        int s = 0;
        while (q % 2 == 0) { q /= 2; ++s; }
        Z z = 2;
        while (mpz_jacobi(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
        Z m = s, c, t, e = (q + 1) / 2;
        mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        while (t != 1) {
            Z tt = t;
            long i = 0;
            while (tt != 1) { tt = tt * tt % p; ++i; }
            Z b = c;
            for (Z j = 0; j < m - i - 1; ++j) b = b * b % p;
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
    }
    check(r * r % p == a, "sqrt_mod: verification failed");
    return r;
}

}  // namespace

// ---------------------------------------------------------------- SmallGroup

std::vector<int> SmallGroup::subgroup(std::vector<int> gens) const {
    std::set<int> s = {0};
    std::vector<int> work = {0};
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (int g : gens) {
            int y = op(x, g);
            if (s.insert(y).second) work.push_back(y);
        }
    }
    return std::vector<int>(s.begin(), s.end());
}

void SmallGroup::quotient(const std::vector<int>& gens, std::vector<int>& label,
                          SmallGroup& q) const {
    std::vector<int> sub = subgroup(gens);
    label.assign(n, -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
        if (label[x] >= 0) continue;
        int ell = (int)reps.size();
        reps.push_back(x);
        for (int s : sub) label[op(x, s)] = ell;
    }
    q.n = (int)reps.size();
    q.mul.assign(q.n, std::vector<int>(q.n));
    q.inv.assign(q.n, 0);
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) {
            q.mul[i][j] = label[op(reps[i], reps[j])];
            if (q.mul[i][j] == 0) q.inv[i] = j;
        }
}

std::vector<int> SmallGroup::squares() const {
    std::set<int> s;
    for (int x = 0; x < n; ++x) s.insert(op(x, x));
    return std::vector<int>(s.begin(), s.end());
}

// --------------------------------------------------------------- Field setup

Field::Field(long d) {
    if (d == 0) {
        deg_ = 1;
        disc_ = 1;
        omega_c0_ = 0;
        omega_tr_ = 0;
        return;
    }
    check(d > 1, "field: d must exceed 1");
    for (long q = 2; q * q <= d; ++q)
        check(d % (q * q) != 0, "field: d must be squarefree");
    deg_ = 2;
    d_ = d;
    if (d % 4 == 1) {
        omega_half_ = true;
        disc_ = d;
        omega_c0_ = (Z(d) - 1) / 4;
        omega_tr_ = 1;
    } else {
        disc_ = 4 * Z(d);
        omega_c0_ = d;
        omega_tr_ = 0;
    }
}

const Field& Field::rationals() {
    static Field* F = [] {
        auto* f = new Field(0);
        f->ensure_units();
        f->ensure_class_group();
        return f;
    }();
    return *F;
}

const Field& Field::quadratic(long d) {
    static std::map<long, std::unique_ptr<Field>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it == cache.end()) {
        auto f = std::unique_ptr<Field>(new Field(d));
        f->ensure_units();
        f->ensure_class_group();
        it = cache.emplace(d, std::move(f)).first;
    }
    return *it->second;
}

// ---------------------------------------------------------- element algebra

Fel Field::mul(const Fel& x, const Fel& y) const {
    // (a + b w)(c + e w) with w^2 = c0 + t w
    Q a = x.a * y.a + x.b * y.b * Q(omega_c0_);
    Q b = x.a * y.b + x.b * y.a + x.b * y.b * omega_tr_;
    return {a, b};
}

Fel Field::conj(const Fel& x) const {
    if (deg_ == 1) return x;
    return {x.a + x.b * omega_tr_, -x.b};
}

Q Field::trace(const Fel& x) const {
    if (deg_ == 1) return x.a;
    return 2 * x.a + x.b * omega_tr_;
}

Q Field::norm(const Fel& x) const {
    if (deg_ == 1) return x.a;
    return x.a * x.a + x.a * x.b * omega_tr_ - x.b * x.b * Q(omega_c0_);
}

Fel Field::inv(const Fel& x) const {
    check(!x.is_zero(), "element inverse of zero");
    if (deg_ == 1) return {1 / x.a, Q(0)};
    Q n = norm(x);
    Fel c = conj(x);
    return {c.a / n, c.b / n};
}

int Field::sign_sigma(const Fel& x, int i) const {
    if (deg_ == 1) return sgn(x.a);
    // sigma_i(x) = A + B sqrt(d)
    Q A = x.a, B = x.b;
    if (omega_half_) {
        A += x.b / 2;
        B = x.b / 2;
    }
    if (i == 1) B = -B;
    int sa = sgn(A), sb = sgn(B);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    int c = cmp(A * A, B * B * d_);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
}

int Field::cmp_sigma(const Fel& x, int i, const Q& q) const {
    return sign_sigma({x.a - q, x.b}, i);
}

bool Field::is_totally_positive(const Fel& x) const {
    for (int i = 0; i < deg_; ++i)
        if (sign_sigma(x, i) <= 0) return false;
    return true;
}

std::string Field::to_string(const Fel& x) const {
    if (deg_ == 1 || x.b == 0) return q_to_string(x.a);
    std::string s = q_to_string(x.a);
    if (sgn(x.b) >= 0) s += "+";
    s += q_to_string(x.b) + "*w";
    return s;
}

void Field::sigma_interval(const Fel& x, int i, int prec, Q& lo, Q& hi) const {
    if (deg_ == 1) {
        lo = hi = x.a;
        return;
    }
    Q A = x.a, B = x.b;
    if (omega_half_) {
        A += x.b / 2;
        B = x.b / 2;
    }
    if (i == 1) B = -B;
    int bbits = (int)mpz_sizeinbase(B.get_num().get_mpz_t(), 2);
    Q slo, shi;
    sqrt_enclosure(Z(d_), prec + 8 + bbits, slo, shi);
    if (sgn(B) >= 0) {
        lo = A + B * slo;
        hi = A + B * shi;
    } else {
        lo = A + B * shi;
        hi = A + B * slo;
    }
}

// ------------------------------------------------------------------- ideals

namespace {

void normalize_ideal(FIdeal& x) {
    check(x.den > 0, "ideal: nonpositive denominator");
    Z g = x.den;
    for (const Z& v : x.m.a) g = gcd(g, v);
    if (g > 1) {
        for (Z& v : x.m.a) v /= g;
        x.den /= g;
    }
}

// divide out the rational content of an integral lattice, returning it
Z strip_content(ZMat& m) {
    Z c = 0;
    for (const Z& v : m.a) c = gcd(c, v);
    if (c > 1)
        for (Z& v : m.a) v /= c;
    return c;
}

}  // namespace

FIdeal Field::ideal_one() const {
    return {ZMat::identity(deg_), 1};
}

std::vector<Fel> Field::basis(const FIdeal& x) const {
    std::vector<Fel> out;
    for (int i = 0; i < x.m.rows; ++i) {
        Q a = Q(x.m.at(i, 0)) / Q(x.den);
        Q b = deg_ == 2 ? Q(x.m.at(i, 1)) / Q(x.den) : Q(0);
        out.push_back({a, b});
    }
    return out;
}

FIdeal Field::ideal_from_generators(const std::vector<Fel>& gens) const {
    Z den = 1;
    std::vector<Fel> prods;
    Fel w(Q(0), Q(1));
    for (const Fel& g : gens) {
        if (g.is_zero()) continue;
        prods.push_back(g);
        if (deg_ == 2) prods.push_back(mul(g, w));
    }
    check(!prods.empty(), "ideal generated by zero");
    for (const Fel& g : prods) {
        den = lcm(den, g.a.get_den());
        if (deg_ == 2) den = lcm(den, g.b.get_den());
    }
    ZMat m((int)prods.size(), deg_);
    for (size_t i = 0; i < prods.size(); ++i) {
        m.at((int)i, 0) = q_num(prods[i].a * den);
        if (deg_ == 2) m.at((int)i, 1) = q_num(prods[i].b * den);
    }
    FIdeal out{hnf(m), den};
    check(out.m.rows == deg_, "ideal: not full rank");
    normalize_ideal(out);
    return out;
}

FIdeal Field::principal_ideal(const Fel& g) const {
    return ideal_from_generators({g});
}

FIdeal Field::ideal_from_rational(const Q& q) const {
    check(q != 0, "ideal of zero");
    return principal_ideal({abs(q), Q(0)});
}

FIdeal Field::mul(const FIdeal& x, const FIdeal& y) const {
    std::vector<Fel> bx = basis(x), by = basis(y);
    std::vector<Fel> gens;
    for (const Fel& a : bx)
        for (const Fel& b : by) gens.push_back(mul(a, b));
    return ideal_from_generators(gens);
}

FIdeal Field::mul(const FIdeal& x, const Fel& g) const {
    std::vector<Fel> gens;
    for (const Fel& a : basis(x)) gens.push_back(mul(a, g));
    return ideal_from_generators(gens);
}

FIdeal Field::add(const FIdeal& x, const FIdeal& y) const {
    std::vector<Fel> gens = basis(x);
    for (const Fel& b : basis(y)) gens.push_back(b);
    return ideal_from_generators(gens);
}

Q Field::norm(const FIdeal& x) const {
    Q n = Q(abs(det(x.m)));
    for (int i = 0; i < deg_; ++i) n /= Q(x.den);
    return n;
}

FIdeal Field::conj(const FIdeal& x) const {
    std::vector<Fel> gens;
    for (const Fel& b : basis(x)) gens.push_back(conj(b));
    return ideal_from_generators(gens);
}

FIdeal Field::inverse(const FIdeal& x) const {
    if (deg_ == 1) return ideal_from_rational(Q(x.den) / Q(x.m.at(0, 0)));
    FIdeal c = conj(x);
    Q n = norm(x);
    std::vector<Fel> gens;
    for (const Fel& b : basis(c)) gens.push_back({b.a / n, b.b / n});
    return ideal_from_generators(gens);
}

FIdeal Field::pow(const FIdeal& x, long e) const {
    FIdeal b = e < 0 ? inverse(x) : x;
    long k = e < 0 ? -e : e;
    FIdeal r = ideal_one();
    for (long i = 0; i < k; ++i) r = mul(r, b);
    return r;
}

bool Field::contains(const FIdeal& x, const Fel& g) const {
    Q ca = g.a * x.den, cb = deg_ == 2 ? g.b * x.den : Q(0);
    if (ca.get_den() != 1 || cb.get_den() != 1) return false;
    std::vector<Z> w = {ca.get_num()};
    if (deg_ == 2) w.push_back(cb.get_num());
    for (int i = 0; i < x.m.rows; ++i) {
        int pc = 0;
        while (pc < deg_ && x.m.at(i, pc) == 0) ++pc;
        if (pc == deg_) continue;
        if (w[pc] % x.m.at(i, pc) != 0) return false;
        Z q = w[pc] / x.m.at(i, pc);
        for (int j = 0; j < deg_; ++j) w[j] -= q * x.m.at(i, j);
    }
    for (int j = 0; j < deg_; ++j)
        if (w[j] != 0) return false;
    return true;
}

bool Field::contains(const FIdeal& x, const FIdeal& y) const {
    for (const Fel& b : basis(y))
        if (!contains(x, b)) return false;
    return true;
}

bool Field::is_integral(const FIdeal& x) const {
    return x.den == 1;
}

// ------------------------------------------------------ primes and factoring

std::vector<FPrime> Field::primes_above(const Z& p) const {
    check(is_prime(p), "primes_above: composite");
    std::vector<FPrime> out;
    if (deg_ == 1) {
        FPrime pr;
        pr.p = p;
        pr.e = pr.f = 1;
        pr.ideal = ideal_from_rational(Q(p));
        out.push_back(pr);
        return out;
    }
    auto make = [&](const Z& r) {
        FPrime pr;
        pr.p = p;
        pr.root = mod_floor(r, p);
        pr.ideal = ideal_from_generators({Fel(Q(p), Q(0)), Fel(Q(-r), Q(1))});
        return pr;
    };
    int sym;
    if (p == 2) {
        if (omega_half_)
            sym = mod_floor(Z(d_), 8) == 1 ? 1 : -1;
        else
            sym = 0;
    } else {
        sym = mpz_jacobi(Z(d_).get_mpz_t(), p.get_mpz_t());
    }
    if (sym == -1) {
        FPrime pr;
        pr.p = p;
        pr.e = 1;
        pr.f = 2;
        pr.ideal = ideal_from_rational(Q(p));
        out.push_back(pr);
    } else if (sym == 0) {
        Z r;
        if (p == 2)
            r = mod_floor(Z(d_), 2);
        else if (omega_half_)
            r = inv_mod(2, p);  // double root of x^2 - x - (d-1)/4 when p | d
        else
            r = 0;
        FPrime pr = make(r);
        pr.e = 2;
        pr.f = 1;
        out.push_back(pr);
    } else {
        Z r1, r2;
        if (p == 2) {
            r1 = 0;
            r2 = 1;
        } else {
            Z sd = sqrt_mod(Z(d_), p);
            if (omega_half_) {
                Z i2 = inv_mod(2, p);
                r1 = mod_floor((1 + sd) * i2, p);
                r2 = mod_floor((1 - sd) * i2, p);
            } else {
                r1 = sd;
                r2 = p - sd;
            }
        }
        FPrime a = make(r1), b = make(r2);
        a.e = a.f = 1;
        b.e = b.f = 1;
        if (b.ideal.m.a < a.ideal.m.a) std::swap(a, b);
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

FPrime Field::prime_above(const Z& p) const {
    return primes_above(p).front();
}

int Field::valuation(const FIdeal& x, const FPrime& pr) const {
    FIdeal a{x.m, 1};
    int off = 0;
    if (x.den != 1) {
        Z den = x.den;
        while (den % pr.p == 0) {
            den /= pr.p;
            off -= pr.e;
        }
    }
    FIdeal pinv = inverse(pr.ideal);
    int v = 0;
    while (contains(pr.ideal, a)) {
        a = mul(a, pinv);
        ++v;
        check(v < 4096, "valuation: runaway loop");
    }
    return v + off;
}

int Field::valuation(const Fel& x, const FPrime& pr) const {
    check(!x.is_zero(), "valuation of zero");
    return valuation(principal_ideal(x), pr);
}

std::vector<std::pair<FPrime, int>> Field::factor_ideal(const FIdeal& x) const {
    Q n = norm(x);
    Z support = n.get_num() * n.get_den() * x.den;
    std::vector<std::pair<FPrime, int>> out;
    for (const auto& pe : factorize(abs(support))) {
        for (const FPrime& pr : primes_above(pe.first)) {
            int v = valuation(x, pr);
            if (v != 0) out.push_back({pr, v});
        }
    }
    return out;
}

std::vector<FIdeal> Field::divisors(const FIdeal& x) const {
    check(is_integral(x), "divisors: fractional ideal");
    auto fac = factor_ideal(x);
    std::vector<FIdeal> out = {ideal_one()};
    for (const auto& [pr, e] : fac) {
        std::vector<FIdeal> next;
        FIdeal pk = ideal_one();
        for (int j = 0; j <= e; ++j) {
            for (const FIdeal& d : out) next.push_back(mul(d, pk));
            if (j < e) pk = mul(pk, pr.ideal);
        }
        out = next;
    }
    return out;
}

std::optional<FIdeal> Field::sqrt_ideal(const FIdeal& x) const {
    FIdeal r = ideal_one();
    for (const auto& [pr, e] : factor_ideal(x)) {
        if (e % 2 != 0) return std::nullopt;
        r = mul(r, pow(pr.ideal, e / 2));
    }
    return r;
}

std::vector<FIdeal> Field::ideals_of_norm(const Z& n) const {
    check(n >= 1, "ideals_of_norm: n < 1");
    std::vector<FIdeal> out;
    if (deg_ == 1) {
        out.push_back(ideal_from_rational(Q(n)));
        return out;
    }
    Fel w(Q(0), Q(1));
    std::set<std::vector<Z>> seen;
    for (Z a = 1; a * a <= n; ++a) {
        if (n % a != 0) continue;
        for (int half = 0; half < 2; ++half) {
            Z A = half ? n / a : a, C = half ? a : n / a;
            if (half && A == C) break;
            for (Z b = 0; b < C; ++b) {
                ZMat m(2, 2);
                m.at(0, 0) = A;
                m.at(0, 1) = b;
                m.at(1, 1) = C;
                FIdeal cand{m, 1};
                bool ok = true;
                for (const Fel& r : basis(cand))
                    if (!contains(cand, mul(r, w))) {
                        ok = false;
                        break;
                    }
                if (ok && seen.insert(m.a).second) out.push_back(cand);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const FIdeal& x, const FIdeal& y) { return x.m.a < y.m.a; });
    return out;
}

// -------------------------------------------------------------------- units

void Field::ensure_units() const {
    if (units_) return;
    auto u = std::make_unique<UnitData>();
    if (deg_ == 1) {
        u->eps = Fel(1);
        u->eps_plus = Fel(1);
        u->U = {Fel(1)};
        units_ = std::move(u);
        return;
    }
    // smallest y > 0 with x^2 - d y^2 = +-1 (or +-4 when omega = (1+sqrt d)/2)
    Z target = omega_half_ ? 4 : 1;
    bool found = false;
    for (Z y = 1; y < 10000000 && !found; ++y) {
        for (int s : {-1, 1}) {
            Z x2 = Z(d_) * y * y + s * target;
            if (x2 < 0 || !is_square(x2)) continue;
            Z x = isqrt(x2);
            if (omega_half_ && mod_floor(x, 2) != mod_floor(y, 2)) continue;
            if (omega_half_)
                u->eps = {Q(x - y) / 2, Q(y)};
            else
                u->eps = {Q(x), Q(y)};
            u->eps_norm = s;
            found = true;
            break;
        }
    }
    check(found, "fundamental unit search exhausted");
    check(norm(u->eps) == u->eps_norm, "unit: norm mismatch");
    check(cmp_sigma(u->eps, 0, Q(1)) > 0, "unit: not normalized");
    u->eps_plus = u->eps_norm == 1 ? u->eps : mul(u->eps, u->eps);
    check(is_totally_positive(u->eps_plus), "unit: eps_plus not totally positive");
    u->U = {Fel(1)};
    if (u->eps_norm == 1) u->U.push_back(u->eps);
    units_ = std::move(u);
}

const UnitData& Field::units() const {
    ensure_units();
    return *units_;
}

Q Field::zeta_minus_one_abs() const {
    if (deg_ == 1) return Q(1) / 12;
    Z sum = 0;
    Z D = disc_;
    for (Z b = mod_floor(D, 2); b * b < D; b += 2) {
        Z term = sigma1((D - b * b) / 4);
        sum += b == 0 ? term : 2 * term;
    }
    return Q(sum) / 60;
}

// -------------------------------------------------- binary forms, class group

namespace {

struct BForm {
    Z a, b, c;
    bool operator<(const BForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    bool operator==(const BForm& o) const { return a == o.a && b == o.b && c == o.c; }
    std::vector<Z> key() const { return {a, b, c}; }
};

bool form_reduced(const BForm& f, const Z& D) {
    if (f.b <= 0 || f.b * f.b >= D) return false;
    Z t = D + 4 * f.a * f.a - f.b * f.b;
    if (t < 0) return true;
    return t * t < 16 * f.a * f.a * D;
}

// cycle step for indefinite forms
BForm form_rho(const BForm& f, const Z& D, const Z& s) {
    Z c = f.c;
    check(c != 0, "form_rho: degenerate form");
    Z twoc = 2 * abs(c);
    Z base = mod_floor(-f.b, twoc);
    Z r;
    if (abs(c) > s) {
        r = base > abs(c) ? base - twoc : base;  // -|c| < r <= |c|
    } else {
        r = base + fdiv(s - base, twoc) * twoc;  // s + 1 - 2|c| <= r <= s
    }
    Z cc = (r * r - D) / (4 * c);
    return {c, r, cc};
}

BForm form_reduce(BForm f, const Z& D, const Z& s) {
    for (int i = 0; i < 100000; ++i) {
        if (form_reduced(f, D)) return f;
        f = form_rho(f, D, s);
    }
    throw internal_error("form_reduce: no convergence");
}

// primitive oriented form attached to an integral ideal
BForm ideal_to_form(const Field& F, const FIdeal& x0) {
    FIdeal x{x0.m, 1};
    strip_content(x.m);
    std::vector<Fel> bs = F.basis(x);
    Fel alpha = bs[0], beta = bs[1];
    Fel gamma = F.mul(F.conj(alpha), beta);
    check(gamma.b != 0, "ideal_to_form: degenerate basis");
    if (sgn(gamma.b) < 0) {
        beta = -beta;
        gamma = -gamma;
    }
    Q n = F.norm(x);
    BForm f{q_num(F.norm(alpha) / n), q_num(F.trace(gamma) / n), q_num(F.norm(beta) / n)};
    check(f.b * f.b - 4 * f.a * f.c == F.disc(), "ideal_to_form: wrong discriminant");
    return f;
}

}  // namespace

void Field::ensure_class_group() const {
    if (cls_) return;
    auto c = std::make_unique<ClassGroupData>();
    if (deg_ == 1) {
        c->narrow.mul = {{0}};
        c->narrow.inv = {0};
        c->wide = c->narrow;
        c->narrow_reps = {ideal_one()};
        c->narrow_to_wide = {0};
        c->scrI = {ideal_one()};
        cls_ = std::move(c);
        return;
    }
    ensure_units();
    Z D = disc_;
    Z s = isqrt(D);
    std::set<BForm> reduced;
    for (Z b = 2 - mod_floor(D, 2); b <= s; b += 2) {
        Z m = (b * b - D) / 4;  // = a*c < 0
        for (Z a = 1; a * a <= abs(m); ++a) {
            if (abs(m) % a != 0) continue;
            Z c2 = m / a;
            for (const BForm& f :
                 {BForm{a, b, c2}, BForm{-a, b, -c2}, BForm{c2, b, a}, BForm{-c2, b, -a}}) {
                if (form_reduced(f, D)) reduced.insert(f);
            }
        }
    }
    std::map<BForm, int> cycle_of;
    int ncyc = 0;
    for (const BForm& f : reduced) {
        if (cycle_of.count(f)) continue;
        BForm g = f;
        do {
            cycle_of[g] = ncyc;
            g = form_rho(g, D, s);
            check(reduced.count(g) > 0, "class group: rho left the reduced set");
        } while (!(g == f));
        ++ncyc;
    }
    int hp = ncyc;
    c->h_plus = hp;

    auto eval_raw = [&](const FIdeal& x) -> int {
        BForm r = form_reduce(ideal_to_form(*this, x), D, s);
        auto it = cycle_of.find(r);
        check(it != cycle_of.end(), "class group: unknown cycle");
        return it->second;
    };

    int princ = eval_raw(ideal_one());
    std::vector<int> relabel(hp, -1);
    relabel[princ] = 0;
    int next = 1;
    for (int i = 0; i < hp; ++i)
        if (relabel[i] < 0) relabel[i] = next++;
    for (const auto& [f, cyc] : cycle_of) c->form_class[f.key()] = relabel[cyc];
    auto eval_cls = [&](const FIdeal& x) { return relabel[eval_raw(x)]; };

    c->narrow_reps.assign(hp, FIdeal{});
    std::vector<bool> have(hp, false);
    int found = 0;
    for (Z n = 1; n <= 2000 && found < hp; ++n) {
        for (const FIdeal& x : ideals_of_norm(n)) {
            int k = eval_cls(x);
            if (!have[k]) {
                have[k] = true;
                c->narrow_reps[k] = x;
                ++found;
            }
        }
    }
    check(found == hp, "class group: representative sweep exhausted");

    c->narrow.n = hp;
    c->narrow.mul.assign(hp, std::vector<int>(hp));
    c->narrow.inv.assign(hp, 0);
    for (int i = 0; i < hp; ++i)
        for (int j = 0; j < hp; ++j) {
            c->narrow.mul[i][j] = eval_cls(mul(c->narrow_reps[i], c->narrow_reps[j]));
            if (c->narrow.mul[i][j] == 0) c->narrow.inv[i] = j;
        }

    // class of the mixed-signature principal ideal (sqrt(d))
    Fel sqrtd = omega_half_ ? Fel{Q(-1), Q(2)} : Fel{Q(0), Q(1)};
    check(norm(sqrtd) == -Q(d_), "class group: bad sqrt(d)");
    c->sign_class = eval_cls(principal_ideal(sqrtd));

    c->narrow.quotient({c->sign_class}, c->narrow_to_wide, c->wide);
    c->h = c->wide.n;
    check(c->h_plus == c->h * (units_->eps_norm == 1 ? 2 : 1),
          "class group: narrow/wide mismatch");

    c->scrI.assign(c->h, FIdeal{});
    std::vector<bool> havew(c->h, false);
    int foundw = 0;
    for (Z n = 1; n <= 2000 && foundw < c->h; ++n) {
        for (const FIdeal& x : ideals_of_norm(n)) {
            int k = c->narrow_to_wide[eval_cls(x)];
            if (!havew[k]) {
                havew[k] = true;
                c->scrI[k] = x;
                ++foundw;
            }
        }
    }
    check(foundw == c->h, "class group: wide representative sweep exhausted");
    check(c->scrI[0] == ideal_one(), "class group: nontrivial rep for principal class");
    cls_ = std::move(c);
}

const ClassGroupData& Field::class_group() const {
    ensure_class_group();
    return *cls_;
}

int Field::narrow_class_of(const FIdeal& x) const {
    ensure_class_group();
    if (deg_ == 1) return 0;
    FIdeal y{x.m, 1};  // positive rational scaling preserves the narrow class
    BForm r = form_reduce(ideal_to_form(*this, y), disc_, isqrt(disc_));
    auto it = cls_->form_class.find(r.key());
    check(it != cls_->form_class.end(), "narrow_class_of: unknown form");
    return it->second;
}

int Field::wide_class_of(const FIdeal& x) const {
    ensure_class_group();
    return cls_->narrow_to_wide[narrow_class_of(x)];
}

bool Field::is_narrowly_principal(const FIdeal& x) const {
    return narrow_class_of(x) == 0;
}

// --------------------------------------------------------- generator search

bool Field::totally_positive_generator(const FIdeal& x, Fel& gen) const {
    if (deg_ == 1) {
        gen = Fel(Q(x.m.at(0, 0)) / Q(x.den), Q(0));
        return true;
    }
    if (narrow_class_of(x) != 0) return false;
    ensure_units();
    FIdeal x0{x.m, 1};
    Z c0 = strip_content(x0.m);
    Q cont = Q(c0) / Q(x.den);
    Z N = q_num(norm(x0));
    Q slo, shi;
    sqrt_enclosure(N, 24, slo, shi);
    Q elo, ehi;
    sigma_interval(units_->eps_plus, 0, 24, elo, ehi);
    Q lo[2], hi[2];
    lo[0] = slo;
    hi[0] = shi * ehi;
    hi[1] = Q(N) / slo;
    lo[1] = -hi[1];
    std::vector<Fel> found;
    // window test squares sigma1(g), so compare against N * eps_plus^2
    Fel neps2 = mul(Fel(N), mul(units_->eps_plus, units_->eps_plus));
    for (const Fel& g : elements_in_box(x0.m, x0.den, lo, hi)) {
        if (norm(g) != N) continue;
        if (!is_totally_positive(g)) continue;
        if (cmp_sigma(mul(g, g), 0, Q(N)) < 0) continue;      // sigma1 >= sqrt N
        if (sign_sigma(mul(g, g) - neps2, 0) >= 0) continue;  // sigma1 < sqrt N * s1(eps+)
        found.push_back(g);
    }
    check(found.size() == 1, "generator: window should contain exactly one");
    gen = {found[0].a * cont, found[0].b * cont};
    return true;
}

bool Field::canonical_tot_pos_generator(const FIdeal& x, Fel& gen) const {
    return totally_positive_generator(x, gen);
}

bool Field::is_principal(const FIdeal& x, Fel* gen) const {
    if (deg_ == 1) {
        if (gen) *gen = Fel(Q(x.m.at(0, 0)) / Q(x.den), Q(0));
        return true;
    }
    ensure_class_group();
    if (wide_class_of(x) != 0) return false;
    ensure_units();
    FIdeal x0{x.m, 1};
    Z c0 = strip_content(x0.m);
    Q cont = Q(c0) / Q(x.den);
    Z N = q_num(norm(x0));
    Q slo, shi;
    sqrt_enclosure(N, 24, slo, shi);
    Q elo, ehi;
    sigma_interval(units_->eps, 0, 24, elo, ehi);
    Q lo[2], hi[2];
    lo[0] = slo;
    hi[0] = shi * ehi;
    hi[1] = Q(N) / slo;
    lo[1] = -hi[1];
    std::vector<Fel> found;
    Fel neps2 = mul(Fel(N), mul(units_->eps, units_->eps));
    for (const Fel& g : elements_in_box(x0.m, x0.den, lo, hi)) {
        if (abs(norm(g)) != N) continue;
        if (sign_sigma(g, 0) <= 0) continue;
        if (cmp_sigma(mul(g, g), 0, Q(N)) < 0) continue;
        if (sign_sigma(mul(g, g) - neps2, 0) >= 0) continue;
        found.push_back(g);
    }
    check(found.size() == 1, "is_principal: window should contain exactly one");
    if (gen) *gen = {found[0].a * cont, found[0].b * cont};
    return true;
}

// ------------------------------------------------------------- enumeration

std::vector<Fel> Field::elements_in_box(const ZMat& m, const Z& den, const Q lo[2],
                                        const Q hi[2]) const {
    std::vector<Fel> out;
    if (deg_ == 1) {
        check(m.rows == 1 && m.at(0, 0) > 0, "elements_in_box: bad lattice");
        Q step = Q(m.at(0, 0)) / Q(den);
        Z k0 = ceil_q(lo[0] / step), k1 = floor_q(hi[0] / step);
        for (Z k = k0; k <= k1; ++k) out.push_back({Q(k) * step, Q(0)});
        return out;
    }
    check(m.rows == 2, "elements_in_box: bad lattice");
    std::vector<Fel> bs;
    for (int i = 0; i < 2; ++i)
        bs.push_back({Q(m.at(i, 0)) / Q(den), Q(m.at(i, 1)) / Q(den)});
    // Gauss-reduce the basis for the embedding norm Tr(x y), so the
    // coordinate ranges below stay proportional to the target box
    auto dot = [&](const Fel& x, const Fel& y) { return trace(mul(x, y)); };
    while (true) {
        if (dot(bs[0], bs[0]) > dot(bs[1], bs[1])) std::swap(bs[0], bs[1]);
        Q mu = dot(bs[0], bs[1]) / dot(bs[0], bs[0]);
        Z k = floor_q(mu + Q(1, 2));
        if (k == 0) break;
        bs[1] = {bs[1].a - Q(k) * bs[0].a, bs[1].b - Q(k) * bs[0].b};
    }
    auto imul = [](const Q& alo, const Q& ahi, const Q& blo, const Q& bhi, Q& rlo, Q& rhi) {
        Q c1 = alo * blo, c2 = alo * bhi, c3 = ahi * blo, c4 = ahi * bhi;
        rlo = std::min({c1, c2, c3, c4});
        rhi = std::max({c1, c2, c3, c4});
    };
    for (int prec = 32; prec <= 512; prec *= 2) {
        Q slo[2][2], shi[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sigma_interval(bs[j], i, prec, slo[i][j], shi[i][j]);
        Q t1lo, t1hi, t2lo, t2hi;
        imul(slo[0][0], shi[0][0], slo[1][1], shi[1][1], t1lo, t1hi);
        imul(slo[1][0], shi[1][0], slo[0][1], shi[0][1], t2lo, t2hi);
        Q dlo = t1lo - t2hi, dhi = t1hi - t2lo;
        if (sgn(dlo) != sgn(dhi) || sgn(dlo) == 0) continue;
        auto idiv = [&](const Q& nlo, const Q& nhi, Q& rlo, Q& rhi) {
            Q c1 = nlo / dlo, c2 = nlo / dhi, c3 = nhi / dlo, c4 = nhi / dhi;
            rlo = std::min({c1, c2, c3, c4});
            rhi = std::max({c1, c2, c3, c4});
        };
        // u = (s1(b1) s0(x) - s0(b1) s1(x)) / det
        // v = (s0(b0) s1(x) - s1(b0) s0(x)) / det
        Q a1lo, a1hi, a2lo, a2hi, ulo, uhi, vlo, vhi;
        imul(slo[1][1], shi[1][1], lo[0], hi[0], a1lo, a1hi);
        imul(slo[0][1], shi[0][1], lo[1], hi[1], a2lo, a2hi);
        idiv(a1lo - a2hi, a1hi - a2lo, ulo, uhi);
        imul(slo[0][0], shi[0][0], lo[1], hi[1], a1lo, a1hi);
        imul(slo[1][0], shi[1][0], lo[0], hi[0], a2lo, a2hi);
        idiv(a1lo - a2hi, a1hi - a2lo, vlo, vhi);
        Z u0 = ceil_q(ulo), u1 = floor_q(uhi);
        Z v0 = ceil_q(vlo), v1 = floor_q(vhi);
        for (Z u = u0; u <= u1; ++u)
            for (Z v = v0; v <= v1; ++v) {
                Fel x{Q(u) * bs[0].a + Q(v) * bs[1].a, Q(u) * bs[0].b + Q(v) * bs[1].b};
                bool ok = true;
                for (int i = 0; i < 2 && ok; ++i)
                    ok = cmp_sigma(x, i, lo[i]) >= 0 && cmp_sigma(x, i, hi[i]) <= 0;
                if (ok) out.push_back(x);
            }
        return out;
    }
    throw internal_error("elements_in_box: interval precision exhausted");
}

// ----------------------------------------------------------------- QuotRing

QuotRing::QuotRing(const Field& F, const FPrime& pr, int k) : F_(&F), pr_(pr), k_(k) {
    check(k >= 1, "QuotRing: k < 1");
    mod_ = F.pow(pr.ideal, k);
    check(F.is_integral(mod_), "QuotRing: fractional modulus");
    d0_ = mod_.m.at(0, 0);
    d1_ = F.degree() == 2 ? mod_.m.at(1, 1) : Z(1);
    if (F.degree() == 1) {
        zmod_ = d0_;
    } else {
        Z b01 = mod_.m.at(0, 1);
        zmod_ = d0_ * (d1_ / gcd(b01 == 0 ? d1_ : b01, d1_));
    }
}

Z QuotRing::size() const {
    return d0_ * d1_;
}

Fel QuotRing::reduce(const Fel& x) const {
    check(F_->is_integral(x), "QuotRing: non-integral element");
    Z a = x.a.get_num(), b = F_->degree() == 2 ? x.b.get_num() : Z(0);
    if (F_->degree() == 1) return Fel(Q(mod_floor(a, d0_)), Q(0));
    Z q = fdiv(a, d0_);
    a -= q * d0_;
    b -= q * mod_.m.at(0, 1);
    b = mod_floor(b, d1_);
    return {Q(a), Q(b)};
}

bool QuotRing::is_unit(const Fel& x) const {
    return !F_->contains(pr_.ideal, x);
}

Fel QuotRing::inverse(const Fel& x) const {
    check(is_unit(x), "QuotRing: inverse of non-unit");
    if (F_->degree() == 1) {
        Z a = reduce(x).a.get_num();
        return Fel(Q(inv_mod(a, d0_)), Q(0));
    }
    if (pr_.e == 1 && pr_.f == 1) {
        // split: O/pr^k = Z/p^k via omega -> lifted root of its minimal polynomial
        Z pk = zmod_;
        Z r = pr_.root, mod = pr_.p;
        while (mod < pk) {
            mod = mod * mod;
            if (mod > pk) mod = pk;
            Z f = r * r - F_->omega_tr() * r - F_->omega_c0();
            Z fp = mod_floor(2 * r - F_->omega_tr(), mod);
            r = mod_floor(r - f * inv_mod(fp, mod), mod);
        }
        Z fchk = r * r - F_->omega_tr() * r - F_->omega_c0();
        check(mod_floor(fchk, pk) == 0, "QuotRing: root lift failed");
        Fel xr = reduce(x);
        Z sc = mod_floor(xr.a.get_num() + xr.b.get_num() * r, pk);
        return reduce(Fel(Q(inv_mod(sc, pk)), Q(0)));
    }
    // inert or ramified: conj(x) / Nm(x), inverting Nm modulo mod_ intersect Z
    Fel xr = reduce(x);
    Z nm = q_num(F_->norm(xr));
    Z t = inv_mod(mod_floor(nm, zmod_), zmod_);
    Fel inv = reduce(F_->mul(F_->conj(xr), Fel(Q(t), Q(0))));
    Fel chk = reduce(F_->mul(xr, inv));
    check(chk == reduce(Fel(1)), "QuotRing: inverse verification failed");
    return inv;
}

std::vector<Fel> QuotRing::elements() const {
    std::vector<Fel> out;
    if (F_->degree() == 1) {
        for (Z i = 0; i < d0_; ++i) out.push_back(Fel(Q(i), Q(0)));
        return out;
    }
    for (Z i = 0; i < d0_; ++i)
        for (Z j = 0; j < d1_; ++j) out.push_back({Q(i), Q(j)});
    return out;
}

std::vector<Fel> QuotRing::residue_field_elements() const {
    if (k_ == 1) return elements();
    QuotRing r(*F_, pr_, 1);
    return r.elements();
}

}  // namespace quatarith
