#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "sympinv/fp.hpp"

namespace sympinv {

/// Dense polynomial over F_p, coefficients lowest degree first, trailing
/// zeros stripped. The zero polynomial is the empty vector.
struct Poly {
    int p = 0;
    std::vector<int> c;

    Poly() = default;
    Poly(int p_, std::vector<int> coeffs) : p(p_), c(std::move(coeffs)) { normalize(); }

    static Poly zero(int p) { return Poly(p, {}); }
    static Poly one(int p) { return Poly(p, {1}); }
    static Poly t(int p) { return Poly(p, {0, 1}); }
    static Poly constant(int p, int a) { return Poly(p, {a}); }
    /// t - a
    static Poly linear(int p, int a) {
        Fp F(p);
        return Poly(p, {F.neg(F.reduce(a)), 1});
    }

    void normalize() {
        Fp F(p);
        for (auto& a : c) a = F.reduce(a);
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    int lead() const { return c.empty() ? 0 : c.back(); }
    bool is_monic() const { return lead() == 1; }
    int coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : 0; }
    int constant_term() const { return coeff(0); }

    bool operator==(const Poly& o) const { return p == o.p && c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    /// Lexicographic by degree, then by coefficient vector low-to-high.
    bool operator<(const Poly& o) const {
        if (deg() != o.deg()) return deg() < o.deg();
        return c < o.c;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = deg(); i >= 0; --i) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
            if (i >= 1) s += "t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
};

inline void check_same_field(const Poly& a, const Poly& b) {
    if (a.p != b.p) throw ModulusMismatch();
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    Fp F(a.p);
    std::vector<int> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(a.p, std::move(c));
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    Fp F(a.p);
    std::vector<int> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(a.p, std::move(c));
}

inline Poly poly_scale(const Poly& a, int k) {
    Fp F(a.p);
    std::vector<int> c(a.c);
    for (auto& x : c) x = F.mul(x, F.reduce(k));
    return Poly(a.p, std::move(c));
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.p);
    Fp F(a.p);
    std::vector<int> c(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
    return Poly(a.p, std::move(c));
}

/// Quotient and remainder; divisor must be nonzero.
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (b.is_zero()) throw Singular();
    Fp F(a.p);
    std::vector<int> rem(a.c);
    int db = b.deg();
    int inv_lead = F.inv(b.lead());
    if (a.deg() < db) return {Poly::zero(a.p), a};
    std::vector<int> quot(a.deg() - db + 1, 0);
    for (int i = a.deg(); i >= db; --i) {
        if (rem[i] == 0) continue;
        int q = F.mul(rem[i], inv_lead);
        quot[i - db] = q;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(q, b.c[j]));
    }
    return {Poly(a.p, std::move(quot)), Poly(a.p, std::move(rem))};
}

inline Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }
inline Poly poly_div(const Poly& a, const Poly& b) { return poly_divmod(a, b).first; }

inline bool poly_divides(const Poly& d, const Poly& a) { return poly_mod(a, d).is_zero(); }

inline Poly poly_monic(const Poly& a) {
    if (a.is_zero()) return a;
    Fp F(a.p);
    return poly_scale(a, F.inv(a.lead()));
}

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

inline int poly_eval(const Poly& a, int x) {
    Fp F(a.p);
    int r = 0;
    for (int i = a.deg(); i >= 0; --i) r = F.add(F.mul(r, F.reduce(x)), a.c[i]);
    return r;
}

inline Poly poly_pow(const Poly& a, int e) {
    Poly r = Poly::one(a.p), b = a;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = poly_mul(r, b);
        if (e > 1) b = poly_mul(b, b);
    }
    return r;
}

/// base^e mod m, with e given as p^k steps handled by the caller; plain
/// square-and-multiply on a 64-bit exponent here.
inline Poly poly_powmod(const Poly& base, unsigned long long e, const Poly& m) {
    Poly r = Poly::one(base.p), b = poly_mod(base, m);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = poly_mod(poly_mul(r, b), m);
        b = poly_mod(poly_mul(b, b), m);
    }
    return r;
}

/// p(-t)
inline Poly poly_sub_neg_t(const Poly& a) {
    Fp F(a.p);
    std::vector<int> c(a.c);
    for (size_t i = 1; i < c.size(); i += 2) c[i] = F.neg(c[i]);
    return Poly(a.p, std::move(c));
}

/// Compose a with t^2: returns a(t^2).
inline Poly poly_compose_t2(const Poly& a) {
    if (a.is_zero()) return a;
    std::vector<int> c(2 * a.deg() + 1, 0);
    for (int i = 0; i <= a.deg(); ++i) c[2 * i] = a.c[i];
    return Poly(a.p, std::move(c));
}

/// Reciprocal polynomial p# = p(0)^{-1} t^d p(t^{-1}).
inline Poly reciprocal(const Poly& a) {
    if (a.constant_term() == 0) throw ZeroConstantTerm();
    Fp F(a.p);
    std::vector<int> c(a.c.rbegin(), a.c.rend());
    int s = F.inv(a.constant_term());
    for (auto& x : c) x = F.mul(x, s);
    return Poly(a.p, std::move(c));
}

inline bool is_palindromial(const Poly& a) {
    if (a.constant_term() == 0) throw ZeroConstantTerm();
    return a == reciprocal(a);
}

/// True iff p(-t) = p(t), i.e. all odd-degree coefficients vanish.
inline bool is_even_poly(const Poly& a) {
    for (size_t i = 1; i < a.c.size(); i += 2)
        if (a.c[i] != 0) return false;
    return true;
}

/// Rabin's irreducibility test. Degree <= 3 reduces to a root scan.
inline bool is_irreducible(const Poly& f) {
    if (f.deg() < 1) throw NotMonic();
    if (!f.is_monic()) throw NotMonic();
    int d = f.deg(), p = f.p;
    if (d == 1) return true;
    if (f.constant_term() == 0) return false;
    if (d <= 3) {
        for (int x = 0; x < p; ++x)
            if (poly_eval(f, x) == 0) return false;
        return true;
    }
    // t^(p^d) == t mod f, and gcd(t^(p^(d/l)) - t, f) = 1 for prime l | d.
    auto frob_pow = [&](int k) { // t^(p^k) mod f
        Poly r = Poly::t(p);
        for (int i = 0; i < k; ++i) r = poly_powmod(r, static_cast<unsigned long long>(p), f);
        return r;
    };
    for (int l = 2; l <= d; ++l) {
        if (d % l != 0 || !Fp::is_prime(l)) continue;
        Poly g = poly_gcd(poly_sub(frob_pow(d / l), Poly::t(p)), f);
        if (g.deg() != 0) return false;
    }
    return poly_sub(frob_pow(d), Poly::t(p)).is_zero();
}

namespace detail {

/// Cached monic irreducibles of a fixed degree, built by exhaustive scan.
/// Only built when p^deg is small; the table is frozen after construction.
inline const std::vector<Poly>& irreducible_table(int p, int deg) {
    static std::map<std::pair<int, int>, std::vector<Poly>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, deg);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Poly> out;
    std::vector<int> coeffs(deg + 1, 0);
    coeffs[deg] = 1;
    long long count = 1;
    for (int i = 0; i < deg; ++i) count *= p;
    for (long long n = 0; n < count; ++n) {
        long long m = n;
        for (int i = 0; i < deg; ++i) { coeffs[i] = static_cast<int>(m % p); m /= p; }
        Poly f(p, coeffs);
        if (is_irreducible(f)) out.push_back(f);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

} // namespace detail

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted. Linear factors by root scan, the rest by trial division in
/// increasing degree (a minimal-degree monic divisor is irreducible).
inline std::vector<std::pair<Poly, int>> factorize(const Poly& f) {
    if (f.deg() < 1 || !f.is_monic()) throw NotMonic();
    int p = f.p;
    std::vector<std::pair<Poly, int>> out;
    Poly rest = f;
    auto strip = [&](const Poly& q) {
        int mult = 0;
        while (poly_divides(q, rest)) {
            rest = poly_div(rest, q);
            ++mult;
        }
        if (mult > 0) out.emplace_back(q, mult);
    };
    for (int x = 0; x < p && rest.deg() >= 1; ++x) strip(Poly::linear(p, x));
    for (int d = 2; 2 * d <= rest.deg(); ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        if (count <= 2'000'000) {
            for (const Poly& q : detail::irreducible_table(p, d)) {
                if (rest.deg() < 2 * d) break;
                strip(q);
            }
        } else {
            // large field: enumerate candidate divisors directly
            std::vector<int> coeffs(d + 1, 0);
            coeffs[d] = 1;
            for (long long n = 0; n < count && rest.deg() >= 2 * d; ++n) {
                long long m = n;
                for (int i = 0; i < d; ++i) { coeffs[i] = static_cast<int>(m % p); m /= p; }
                strip(Poly(p, coeffs));
            }
        }
    }
    if (rest.deg() >= 1) out.emplace_back(rest, 1);
    std::sort(out.begin(), out.end());
    return out;
}

/// Least (lexicographic by coefficient vector) monic irreducible of degree n
/// with prescribed constant term c.
inline Poly find_irreducible_const(int p, int n, int c) {
    if (n < 1) throw NotFound("degree must be >= 1");
    Fp F(p);
    c = F.reduce(c);
    if (n == 1) {
        // t + c, irreducible always; root is -c
        Poly f(p, {c, 1});
        return f;
    }
    if (c == 0) throw NotFound("constant term 0 admits no irreducible of degree >= 2");
    std::vector<int> coeffs(n + 1, 0);
    coeffs[0] = c;
    coeffs[n] = 1;
    long long count = 1;
    for (int i = 1; i < n; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
        long long m = idx;
        for (int i = 1; i < n; ++i) { coeffs[i] = static_cast<int>(m % p); m /= p; }
        Poly f(p, coeffs);
        if (is_irreducible(f)) return f;
    }
    throw NotFound("no monic irreducible of degree " + std::to_string(n) +
                   " with constant term " + std::to_string(c));
}

/// Least monic irreducible even polynomial of degree two_n; with the flag
/// set, t^2+1 is excluded (needs |F| > 3 when two_n = 2).
inline Poly find_even_irreducible(int p, int two_n, bool avoid_t2_plus_1) {
    if (two_n < 2 || two_n % 2 != 0) throw NotFound("degree must be even and >= 2");
    int n = two_n / 2;
    Poly t2p1(p, {1, 0, 1});
    std::vector<int> coeffs(two_n + 1, 0);
    coeffs[two_n] = 1;
    long long count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
        long long m = idx;
        for (int i = 0; i < n; ++i) { coeffs[2 * i] = static_cast<int>(m % p); m /= p; }
        Poly f(p, coeffs);
        if (avoid_t2_plus_1 && f == t2p1) continue;
        if (is_irreducible(f)) return f;
    }
    throw NotFound("no even monic irreducible of degree " + std::to_string(two_n) +
                   (avoid_t2_plus_1 ? " distinct from t^2+1" : ""));
}

} // namespace sympinv
