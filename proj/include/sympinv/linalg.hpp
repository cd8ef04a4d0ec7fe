#pragma once

#include <vector>

#include "sympinv/mat.hpp"
#include "sympinv/poly.hpp"

namespace sympinv {

/// Invariant factors of an endomorphism: monic, ascending divisibility
/// chain, product equals the characteristic polynomial.
struct InvariantFactors {
    std::vector<Poly> factors;

    bool operator==(const InvariantFactors& o) const { return factors == o.factors; }
    bool operator!=(const InvariantFactors& o) const { return !(*this == o); }
    bool operator<(const InvariantFactors& o) const { return factors < o.factors; }
};

namespace detail {

/// Smith normal form diagonal of the polynomial matrix tI - A over F_p[t].
inline std::vector<Poly> smith_diagonal_tI_minus_A(const Mat& A) {
    int n = A.n, p = A.p;
    Fp F(p);
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> c = {F.neg(A.at(i, j))};
            if (i == j) c.push_back(1);
            m[i][j] = Poly(p, c);
        }

    for (int k = 0; k < n; ++k) {
        for (;;) {
            // minimal-degree nonzero pivot in the trailing block
            int pi = -1, pj = -1, best = -1;
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j) {
                    if (m[i][j].is_zero()) continue;
                    if (best < 0 || m[i][j].deg() < best) { best = m[i][j].deg(); pi = i; pj = j; }
                }
            if (pi < 0) break; // trailing block is zero
            std::swap(m[pi], m[k]);
            for (int i = 0; i < n; ++i) std::swap(m[i][pj], m[i][k]);

            bool clean = true;
            for (int i = k + 1; i < n; ++i) {
                if (m[i][k].is_zero()) continue;
                Poly q = poly_div(m[i][k], m[k][k]);
                for (int j = k; j < n; ++j) m[i][j] = poly_sub(m[i][j], poly_mul(q, m[k][j]));
                if (!m[i][k].is_zero()) clean = false;
            }
            for (int j = k + 1; j < n; ++j) {
                if (m[k][j].is_zero()) continue;
                Poly q = poly_div(m[k][j], m[k][k]);
                for (int i = k; i < n; ++i) m[i][j] = poly_sub(m[i][j], poly_mul(q, m[i][k]));
                if (!m[k][j].is_zero()) clean = false;
            }
            if (!clean) continue;

            // enforce divisibility of the trailing block by the pivot
            bool divides_all = true;
            for (int i = k + 1; i < n && divides_all; ++i)
                for (int j = k + 1; j < n && divides_all; ++j)
                    if (!m[i][j].is_zero() && !poly_divides(m[k][k], m[i][j])) {
                        for (int jj = k; jj < n; ++jj) m[k][jj] = poly_add(m[k][jj], m[i][jj]);
                        divides_all = false;
                    }
            if (divides_all) break;
        }
    }
    std::vector<Poly> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = poly_monic(m[i][i]);
    return diag;
}

} // namespace detail

inline InvariantFactors invariant_factors(const Mat& A) {
    InvariantFactors out;
    for (Poly& d : detail::smith_diagonal_tI_minus_A(A))
        if (d.deg() >= 1) out.factors.push_back(std::move(d));
    return out;
}

inline Poly char_poly(const Mat& A) {
    Poly prod = Poly::one(A.p);
    for (const Poly& f : invariant_factors(A).factors) prod = poly_mul(prod, f);
    return prod;
}

inline Poly min_poly(const Mat& A) {
    InvariantFactors inv = invariant_factors(A);
    if (inv.factors.empty()) return Poly::one(A.p); // n = 0
    return inv.factors.back();
}

inline bool is_cyclic(const Mat& A) { return invariant_factors(A).factors.size() <= 1; }

/// Independent characteristic polynomial via Hessenberg reduction, used as
/// a cross-check against the Smith-form route.
inline Poly char_poly_hessenberg(Mat A) {
    int n = A.n, p = A.p;
    Fp F(p);
    for (int k = 0; k < n - 2; ++k) {
        int piv = -1;
        for (int i = k + 1; i < n; ++i)
            if (A.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != k + 1) { // similarity swap
            for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(k + 1, j));
            for (int i = 0; i < n; ++i) std::swap(A.at(i, piv), A.at(i, k + 1));
        }
        int inv = F.inv(A.at(k + 1, k));
        for (int i = k + 2; i < n; ++i) {
            int f = F.mul(A.at(i, k), inv);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(k + 1, j)));
            for (int ii = 0; ii < n; ++ii) A.at(ii, k + 1) = F.add(A.at(ii, k + 1), F.mul(f, A.at(ii, i)));
        }
    }
    // recurrence on leading principal char polys of the Hessenberg form
    std::vector<Poly> cp(n + 1);
    cp[0] = Poly::one(p);
    for (int k = 1; k <= n; ++k) {
        Poly term = poly_mul(Poly(p, {F.neg(A.at(k - 1, k - 1)), 1}), cp[k - 1]);
        int prod = 1;
        for (int i = k - 1; i >= 1; --i) {
            prod = F.mul(prod, A.at(i, i - 1));
            int coef = F.mul(prod, A.at(i - 1, k - 1));
            if (coef != 0) term = poly_sub(term, poly_scale(cp[i - 1], coef));
        }
        cp[k] = term;
    }
    return cp[n];
}

/// Jordan number n_{q,r}(A): count of primary invariants equal to q^r,
/// by the rank formula.
inline int jordan_number(const Mat& A, const Poly& q, int r) {
    if (!q.is_monic()) throw NotMonic();
    Mat Q = poly_at_mat(q, A);
    auto rank_pow = [&](int e) {
        Mat P = Mat::identity(A.p, A.n);
        for (int i = 0; i < e; ++i) P = mat_mul(P, Q);
        return rank(P);
    };
    int num = rank_pow(r - 1) - 2 * rank_pow(r) + rank_pow(r + 1);
    return num / q.deg();
}

/// Jordan numbers from the primary decomposition of the invariant factors;
/// independent of the rank formula.
inline int jordan_number_from_factors(const InvariantFactors& inv, const Poly& q, int r) {
    int count = 0;
    for (const Poly& f : inv.factors) {
        Poly rest = f;
        int mult = 0;
        while (poly_divides(q, rest)) { rest = poly_div(rest, q); ++mult; }
        if (mult == r) ++count;
    }
    return count;
}

inline bool similar(const Mat& A, const Mat& B) {
    if (A.p != B.p) throw ModulusMismatch();
    if (A.n != B.n) throw DimensionMismatch();
    return invariant_factors(A) == invariant_factors(B);
}

} // namespace sympinv
