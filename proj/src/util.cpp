/*
 * quatarith -- exact arithmetic for definite quaternion orders
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#include "util.hpp"

namespace quatarith {

Z floor_plus_sqrt(const Q& c, const Q& r, int sign) {
    check(r >= 0 && (sign == 1 || sign == -1), "floor_plus_sqrt: bad args");
    // Write c + s*sqrt(r) = (A + s*sqrt(B)) / C with C > 0.
    // floor((A + s*sqrt(B))/C) = fdiv(A + s*floor_or_ceil(sqrt(B)), C),
    // verified and corrected by exact comparison.
    Z A = c.get_num() * r.get_den();
    Z C = c.get_den() * r.get_den();
    Z B = r.get_num() * r.get_den() * c.get_den() * c.get_den();
    Z s = isqrt(B);
    Z num = sign > 0 ? Z(A + s) : Z(A - s);
    Z guess = fdiv(num, C);
    // x <= (A + s*sqrt(B))/C  <=>  x*C - A <= s*sqrt(B).
    auto le_val = [&](const Z& x) {
        Z lhs = x * C - A;
        if (sign > 0) {
            if (lhs <= 0) return true;
            return lhs * lhs <= B;
        }
        if (lhs > 0) return false;
        return lhs * lhs >= B;
    };
    while (!le_val(guess)) --guess;
    while (le_val(guess + 1)) ++guess;
    return guess;
}

bool is_prime(const Z& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<Z, int>> factorize(const Z& n) {
    require(n != 0, "factorize(0)");
    std::vector<std::pair<Z, int>> out;
    Z m = abs(n);
    for (Z p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

Z sigma1(const Z& n) {
    Z s = 1;
    for (auto& [p, e] : factorize(n)) {
        Z pe = 1, acc = 1;
        for (int i = 0; i < e; ++i) { pe *= p; acc += pe; }
        s *= acc;
    }
    return s;
}

std::string q_to_string(const Q& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace quatarith
