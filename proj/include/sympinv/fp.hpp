#pragma once

#include <cassert>
#include <cstdint>

#include "sympinv/errors.hpp"

namespace sympinv {

/// Arithmetic context for the prime field F_p, p an odd prime.
/// Elements are plain ints reduced to [0, p).
struct Fp {
    int p;

    explicit Fp(int p_) : p(p_) { assert(p >= 3 && p <= 101 && is_prime(p)); }

    static bool is_prime(int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    int reduce(long long a) const {
        int r = static_cast<int>(a % p);
        return r < 0 ? r + p : r;
    }
    int add(int a, int b) const { int s = a + b; return s >= p ? s - p : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + p : s; }
    int neg(int a) const { return a == 0 ? 0 : p - a; }
    int mul(int a, int b) const { return static_cast<int>(static_cast<long long>(a) * b % p); }

    int pow(int a, long long e) const {
        int r = 1, b = a;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
        }
        return r;
    }

    int inv(int a) const {
        if (a == 0) throw Singular();
        return pow(a, p - 2);
    }

    int div(int a, int b) const { return mul(a, inv(b)); }

    /// Euler's criterion; zero counts as a square.
    bool is_square(int a) const {
        if (a == 0) return true;
        return pow(a, (p - 1) / 2) == 1;
    }

    int half(int a) const { return mul(a, inv(2)); }
};

} // namespace sympinv
