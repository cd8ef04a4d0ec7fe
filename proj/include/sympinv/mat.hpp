#pragma once

#include <cstdint>
#include <vector>

#include "sympinv/fp.hpp"
#include "sympinv/poly.hpp"

namespace sympinv {

using Vec = std::vector<int>;

/// Exact square matrix over F_p, row-major, entries in [0, p).
struct Mat {
    int p = 0;
    int n = 0;
    std::vector<int> a; // n*n, row-major

    Mat() = default;
    Mat(int p_, int n_) : p(p_), n(n_), a(static_cast<size_t>(n_) * n_, 0) {}

    int& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    int at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static Mat identity(int p, int n) {
        Mat m(p, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Mat from_rows(int p, const std::vector<Vec>& rows) {
        Mat m(p, static_cast<int>(rows.size()));
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j) m.at(i, j) = Fp(p).reduce(rows[i][j]);
        return m;
    }

    bool operator==(const Mat& o) const { return p == o.p && n == o.n && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool operator<(const Mat& o) const { return a < o.a; }

    bool is_identity() const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    /// Canonical base-p packing, row-major, for hash-set group enumeration.
    /// Fits in 128 bits for every in-scope (n, p).
    unsigned __int128 pack() const {
        unsigned __int128 key = 0;
        for (size_t i = a.size(); i-- > 0;) key = key * static_cast<unsigned>(p) + static_cast<unsigned>(a[i]);
        return key;
    }

    static Mat unpack(int p, int n, unsigned __int128 key) {
        Mat m(p, n);
        for (auto& x : m.a) {
            x = static_cast<int>(key % static_cast<unsigned>(p));
            key /= static_cast<unsigned>(p);
        }
        return m;
    }
};

inline void check_compatible(const Mat& A, const Mat& B) {
    if (A.p != B.p) throw ModulusMismatch();
    if (A.n != B.n) throw DimensionMismatch();
}

inline Mat mat_mul(const Mat& A, const Mat& B) {
    check_compatible(A, B);
    Fp F(A.p);
    Mat C(A.p, A.n);
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.n; ++k) {
            int aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < A.n; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

inline Mat mat_add(const Mat& A, const Mat& B) {
    check_compatible(A, B);
    Fp F(A.p);
    Mat C(A.p, A.n);
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

inline Mat mat_sub(const Mat& A, const Mat& B) {
    check_compatible(A, B);
    Fp F(A.p);
    Mat C(A.p, A.n);
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

inline Mat mat_scale(const Mat& A, int k) {
    Fp F(A.p);
    Mat C = A;
    k = F.reduce(k);
    for (auto& x : C.a) x = F.mul(x, k);
    return C;
}

inline Mat mat_neg(const Mat& A) { return mat_scale(A, -1); }

inline Mat transpose(const Mat& A) {
    Mat C(A.p, A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) C.at(j, i) = A.at(i, j);
    return C;
}

inline Vec mat_apply(const Mat& A, const Vec& v) {
    Fp F(A.p);
    Vec w(A.n, 0);
    for (int i = 0; i < A.n; ++i) {
        int s = 0;
        for (int j = 0; j < A.n; ++j) s = F.add(s, F.mul(A.at(i, j), F.reduce(v[j])));
        w[i] = s;
    }
    return w;
}

namespace detail {

/// In-place Gauss-Jordan to reduced row echelon form on an r x c array.
/// First-nonzero pivoting; returns pivot column indices.
inline std::vector<int> rref(int p, std::vector<int>& m, int rows, int cols) {
    Fp F(p);
    auto at = [&](int i, int j) -> int& { return m[static_cast<size_t>(i) * cols + j]; };
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (at(i, col) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j) std::swap(at(pr, j), at(r, j));
        int inv = F.inv(at(r, col));
        for (int j = 0; j < cols; ++j) at(r, j) = F.mul(at(r, j), inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || at(i, col) == 0) continue;
            int f = at(i, col);
            for (int j = 0; j < cols; ++j) at(i, j) = F.sub(at(i, j), F.mul(f, at(r, j)));
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

} // namespace detail

inline int rank(const Mat& A) {
    std::vector<int> m = A.a;
    return static_cast<int>(detail::rref(A.p, m, A.n, A.n).size());
}

/// Reduced-echelon basis of the right kernel of A.
inline std::vector<Vec> kernel_basis(const Mat& A) {
    std::vector<int> m = A.a;
    std::vector<int> pivots = detail::rref(A.p, m, A.n, A.n);
    Fp F(A.p);
    std::vector<bool> is_pivot(A.n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < A.n; ++free) {
        if (is_pivot[free]) continue;
        Vec v(A.n, 0);
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = F.neg(m[static_cast<size_t>(r) * A.n + free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Mat inverse(const Mat& A) {
    Fp F(A.p);
    int n = A.n;
    std::vector<int> m(static_cast<size_t>(n) * 2 * n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * 2 * n + j] = A.at(i, j);
        m[static_cast<size_t>(i) * 2 * n + n + i] = 1;
    }
    std::vector<int> pivots = detail::rref(A.p, m, n, 2 * n);
    if (static_cast<int>(pivots.size()) != n || pivots.back() >= n) throw Singular();
    Mat inv(A.p, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = m[static_cast<size_t>(i) * 2 * n + n + j];
    return inv;
}

inline bool is_invertible(const Mat& A) { return rank(A) == A.n; }

/// Solve A x = b; throws Inconsistent when no solution exists. Returns one
/// solution (free variables set to zero).
inline Vec solve(const Mat& A, const Vec& b) {
    Fp F(A.p);
    int n = A.n;
    std::vector<int> m(static_cast<size_t>(n) * (n + 1), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * (n + 1) + j] = A.at(i, j);
        m[static_cast<size_t>(i) * (n + 1) + n] = F.reduce(b[i]);
    }
    std::vector<int> pivots = detail::rref(A.p, m, n, n + 1);
    if (!pivots.empty() && pivots.back() == n) throw Inconsistent();
    Vec x(n, 0);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[static_cast<size_t>(r) * (n + 1) + n];
    return x;
}

/// M# = (M^T)^{-1}
inline Mat sharp(const Mat& M) { return inverse(transpose(M)); }

inline Mat companion(const Poly& f) {
    if (!f.is_monic() || f.deg() < 1) throw NotMonic();
    int n = f.deg();
    Fp F(f.p);
    Mat C(f.p, n);
    for (int i = 1; i < n; ++i) C.at(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) C.at(i, n - 1) = F.neg(f.c[i]);
    return C;
}

inline Mat block_diag(const Mat& A, const Mat& B) {
    if (A.p != B.p) throw ModulusMismatch();
    Mat C(A.p, A.n + B.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) C.at(A.n + i, A.n + j) = B.at(i, j);
    return C;
}

/// Evaluate a polynomial at a matrix.
inline Mat poly_at_mat(const Poly& f, const Mat& A) {
    Mat R(A.p, A.n);
    Mat P = Mat::identity(A.p, A.n);
    Fp F(A.p);
    for (int i = 0; i <= f.deg(); ++i) {
        if (f.c[i] != 0) R = mat_add(R, mat_scale(P, f.c[i]));
        if (i < f.deg()) P = mat_mul(P, A);
    }
    return R;
}

/// Matrix whose columns are the given vectors (must be square).
inline Mat mat_from_cols(int p, const std::vector<Vec>& cols) {
    Mat m(p, static_cast<int>(cols.size()));
    for (int j = 0; j < m.n; ++j)
        for (int i = 0; i < m.n; ++i) m.at(i, j) = Fp(p).reduce(cols[j][i]);
    return m;
}

/// Coordinates of b in the span of a linearly independent family; throws
/// Inconsistent when b lies outside the span.
inline Vec coords_in_span(int p, const std::vector<Vec>& basis, const Vec& b) {
    Fp F(p);
    int dim = static_cast<int>(b.size());
    int k = static_cast<int>(basis.size());
    std::vector<int> m(static_cast<size_t>(dim) * (k + 1), 0);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < k; ++j) m[static_cast<size_t>(i) * (k + 1) + j] = F.reduce(basis[j][i]);
        m[static_cast<size_t>(i) * (k + 1) + k] = F.reduce(b[i]);
    }
    std::vector<int> pivots = detail::rref(p, m, dim, k + 1);
    if (!pivots.empty() && pivots.back() == k) throw Inconsistent();
    Vec x(k, 0);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[static_cast<size_t>(r) * (k + 1) + k];
    return x;
}

/// Span dimension of a family of vectors of length dim.
inline int span_rank(int p, const std::vector<Vec>& vecs, int dim) {
    if (vecs.empty()) return 0;
    std::vector<int> m;
    m.reserve(vecs.size() * dim);
    for (const auto& v : vecs) m.insert(m.end(), v.begin(), v.end());
    return static_cast<int>(detail::rref(p, m, static_cast<int>(vecs.size()), dim).size());
}

} // namespace sympinv
