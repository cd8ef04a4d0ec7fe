// Symplectic structure over F_p: the fixed Gram convention
// J = [[0, I_m], [-I_m, 0]] in basis order (e_1..e_m, f_1..f_m), membership
// and involution tests, symplectic extensions, orthogonal sums, transvections,
// full group / involution enumeration, Lagrangian utilities, and orthogonal
// primary splitting.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "sympinv/linalg.hpp"

namespace sympinv {

struct SympSpace {
    int p = 3;
    int two_m = 0;
    Mat gram;

    SympSpace(int p_, int two_m_) : p(p_), two_m(two_m_), gram(p_, two_m_) {
        if (two_m < 0 || two_m % 2 != 0) throw DimensionMismatch();
        Fp F(p);
        int m = two_m / 2;
        for (int i = 0; i < m; ++i) {
            gram.at(i, m + i) = 1;
            gram.at(m + i, i) = F.neg(1);
        }
    }

    int m() const { return two_m / 2; }

    bool operator==(const SympSpace& o) const { return p == o.p && two_m == o.two_m; }
};

/// s(x, y) = x^T J y.
inline int s_form(const SympSpace& sp, const Vec& x, const Vec& y) {
    if (static_cast<int>(x.size()) != sp.two_m || static_cast<int>(y.size()) != sp.two_m)
        throw DimensionMismatch();
    Fp F(sp.p);
    Vec Jy = mat_apply(sp.gram, y);
    int acc = 0;
    for (int i = 0; i < sp.two_m; ++i) acc = F.add(acc, F.mul(F.reduce(x[i]), Jy[i]));
    return acc;
}

inline bool is_symplectic(const SympSpace& sp, const Mat& U) {
    if (U.p != sp.p) throw ModulusMismatch();
    if (U.n != sp.two_m) throw DimensionMismatch();
    return mat_mul(mat_mul(transpose(U), sp.gram), U) == sp.gram;
}

inline bool is_symplectic_involution(const SympSpace& sp, const Mat& U) {
    return is_symplectic(sp, U) && mat_mul(U, U).is_identity();
}

struct SPair {
    SympSpace space;
    Mat u;

    SPair(SympSpace sp, Mat u_) : space(std::move(sp)), u(std::move(u_)) {
        if (!is_symplectic(space, u)) throw PreconditionViolated("SPair: u is not symplectic");
    }
};

/// A |-> [[A, 0], [0, A#]]; a group homomorphism GL_m -> Sp_2m.
inline Mat symplectic_extension(const Mat& A) {
    return block_diag(A, sharp(A));
}

/// Internal orthogonal sum, reindexed so the result satisfies the fixed Gram
/// convention: e-blocks of all parts first, then f-blocks.
inline SPair orthogonal_sum(const std::vector<SPair>& parts) {
    if (parts.empty()) throw InvalidProblem("orthogonal_sum: need the field; pass at least a 0-dim pair");
    int p = parts[0].space.p;
    int M = 0;
    for (const auto& part : parts) {
        if (part.space.p != p) throw ModulusMismatch();
        M += part.space.m();
    }
    SympSpace sp(p, 2 * M);
    Mat u(p, 2 * M);
    int off = 0;
    for (const auto& part : parts) {
        int mk = part.space.m();
        auto g = [&](int i) { return i < mk ? off + i : M + off + (i - mk); };
        for (int i = 0; i < 2 * mk; ++i)
            for (int j = 0; j < 2 * mk; ++j) u.at(g(i), g(j)) = part.u.at(i, j);
        off += mk;
    }
    return SPair(sp, u);
}

/// x |-> x + lambda * s(x, v) * v.
inline Mat transvection(const SympSpace& sp, const Vec& v, int lambda) {
    if (static_cast<int>(v.size()) != sp.two_m) throw DimensionMismatch();
    Fp F(sp.p);
    bool zero = true;
    for (int x : v)
        if (F.reduce(x) != 0) zero = false;
    if (zero) throw ZeroVector();
    Vec Jv = mat_apply(sp.gram, v);
    Mat T = Mat::identity(sp.p, sp.two_m);
    for (int i = 0; i < sp.two_m; ++i)
        for (int j = 0; j < sp.two_m; ++j)
            T.at(i, j) = F.add(T.at(i, j), F.mul(F.mul(F.reduce(lambda), F.reduce(v[i])), Jv[j]));
    return T;
}

/// |Sp_2m(F_q)| = q^{m^2} * prod_{i=1..m} (q^{2i} - 1); UINT64_MAX on overflow.
inline std::uint64_t sp_order(int two_m, int p) {
    unsigned __int128 ord = 1;
    int m = two_m / 2;
    for (int i = 0; i < m * m; ++i) {
        ord *= static_cast<unsigned>(p);
        if (ord > UINT64_MAX) return UINT64_MAX;
    }
    for (int i = 1; i <= m; ++i) {
        unsigned __int128 q2i = 1;
        for (int j = 0; j < 2 * i; ++j) q2i *= static_cast<unsigned>(p);
        ord *= q2i - 1;
        if (ord > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(ord);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Open-addressing hash set of packed matrix encodings. UINT64_MAX is the
/// empty-slot sentinel (no packed matrix in scope reaches it).
class PackedSet {
  public:
    explicit PackedSet(std::uint64_t expected) {
        std::size_t cap = 16;
        while (cap < expected * 2) cap <<= 1;
        mask_ = cap - 1;
        slots_.assign(cap, UINT64_MAX);
    }

    bool insert(std::uint64_t key) {
        std::size_t i = splitmix64(key) & mask_;
        for (;;) {
            if (slots_[i] == key) return false;
            if (slots_[i] == UINT64_MAX) {
                slots_[i] = key;
                ++count_;
                return true;
            }
            i = (i + 1) & mask_;
        }
    }

    bool contains(std::uint64_t key) const {
        std::size_t i = splitmix64(key) & mask_;
        for (;;) {
            if (slots_[i] == key) return true;
            if (slots_[i] == UINT64_MAX) return false;
            i = (i + 1) & mask_;
        }
    }

    std::uint64_t size() const { return count_; }

  private:
    std::vector<std::uint64_t> slots_;
    std::size_t mask_ = 0;
    std::uint64_t count_ = 0;
};

inline std::uint64_t pack64(const Mat& M) {
    unsigned __int128 key = M.pack();
    if (key > UINT64_MAX) throw TooLarge();
    return static_cast<std::uint64_t>(key);
}

/// Transvection generating set: directions e_1..e_m, f_1..f_m, e_1 + f_1, and
/// the coupling directions e_i + e_{i+1}, all with lambda = 1. Completeness is
/// certified by the order-formula count in enumerate_group, not by proof; the
/// coupling directions are needed to mix the m hyperbolic planes.
inline std::vector<Mat> transvection_generators(const SympSpace& sp) {
    std::vector<Vec> dirs;
    for (int i = 0; i < sp.two_m; ++i) {
        Vec v(sp.two_m, 0);
        v[i] = 1;
        dirs.push_back(std::move(v));
    }
    {
        Vec v(sp.two_m, 0);
        v[0] = 1;
        v[sp.m()] = 1;
        dirs.push_back(std::move(v));
    }
    for (int i = 0; i + 1 < sp.m(); ++i) {
        Vec v(sp.two_m, 0);
        v[i] = 1;
        v[i + 1] = 1;
        dirs.push_back(std::move(v));
    }
    std::vector<Mat> gens;
    for (const Vec& v : dirs) gens.push_back(transvection(sp, v, 1));
    return gens;
}

inline std::string cache_path(int two_m, int p) {
    const char* dir = std::getenv("SYMPINV_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/sp" + std::to_string(two_m) + "_f" + std::to_string(p) + ".bin";
}

inline bool load_group_cache(const std::string& path, std::uint64_t order, int p, int two_m,
                             std::vector<std::uint64_t>& packed) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    packed.assign(order, 0);
    bool ok = true;
    for (std::uint64_t k = 0; k < order && ok; ++k) {
        unsigned char w[16];
        if (std::fread(w, 1, 16, f) != 16) { ok = false; break; }
        std::uint64_t lo = 0, hi = 0;
        for (int i = 0; i < 8; ++i) lo |= static_cast<std::uint64_t>(w[i]) << (8 * i);
        for (int i = 0; i < 8; ++i) hi |= static_cast<std::uint64_t>(w[8 + i]) << (8 * i);
        if (hi != 0) { ok = false; break; }
        packed[k] = lo;
    }
    unsigned char extra;
    if (ok && std::fread(&extra, 1, 1, f) == 1) ok = false; // trailing data
    std::fclose(f);
    if (!ok) packed.clear();
    (void)p;
    (void)two_m;
    return ok;
}

inline void store_group_cache(const std::string& path, const std::vector<std::uint64_t>& packed) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) return;
    for (std::uint64_t key : packed) {
        unsigned char w[16] = {0};
        for (int i = 0; i < 8; ++i) w[i] = static_cast<unsigned char>(key >> (8 * i));
        std::fwrite(w, 1, 16, f);
    }
    std::fclose(f);
}

} // namespace detail

inline constexpr std::uint64_t kDefaultGroupCap = 20'000'000;

/// All elements of Sp_2m(F_p) as packed encodings, sorted (canonical order).
/// Closure under left multiplication by the transvection generators, certified
/// against the order formula.
inline std::vector<std::uint64_t> enumerate_group_packed(int two_m, int p,
                                                         std::uint64_t cap = kDefaultGroupCap) {
    SympSpace sp(p, two_m);
    std::uint64_t order = sp_order(two_m, p);
    if (order > cap) throw TooLarge();

    std::string path = detail::cache_path(two_m, p);
    std::vector<std::uint64_t> packed;
    if (!path.empty() && detail::load_group_cache(path, order, p, two_m, packed)) return packed;

    std::vector<Mat> gens = detail::transvection_generators(sp);
    detail::PackedSet seen(order);
    packed.reserve(order);
    packed.push_back(detail::pack64(Mat::identity(p, two_m)));
    seen.insert(packed[0]);
    for (std::size_t head = 0; head < packed.size(); ++head) {
        Mat cur = Mat::unpack(p, two_m, packed[head]);
        for (const Mat& g : gens) {
            std::uint64_t key = detail::pack64(mat_mul(g, cur));
            if (seen.insert(key)) packed.push_back(key);
        }
    }
    if (packed.size() != order)
        throw Inconsistent(); // generating set failed certification
    std::sort(packed.begin(), packed.end());
    if (!path.empty()) detail::store_group_cache(path, packed);
    return packed;
}

inline std::vector<Mat> enumerate_group(int two_m, int p, std::uint64_t cap = kDefaultGroupCap) {
    std::vector<std::uint64_t> packed = enumerate_group_packed(two_m, p, cap);
    std::vector<Mat> out;
    out.reserve(packed.size());
    for (std::uint64_t key : packed) out.push_back(Mat::unpack(p, two_m, key));
    return out;
}

/// Reduced-echelon bases of all k-dimensional subspaces of F_p^n.
inline std::vector<std::vector<Vec>> enumerate_subspaces(int p, int n, int k) {
    std::vector<std::vector<Vec>> out;
    if (k < 0 || k > n) return out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> pivots(k);
    // iterate over pivot-column combinations
    for (int i = 0; i < k; ++i) pivots[i] = i;
    for (;;) {
        // free entries: positions (row i, col j) with j > pivots[i], j not a pivot
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < k; ++i)
            for (int j = pivots[i] + 1; j < n; ++j)
                if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
                    free_pos.emplace_back(i, j);
        std::vector<int> vals(free_pos.size(), 0);
        for (;;) {
            std::vector<Vec> basis(k, Vec(n, 0));
            for (int i = 0; i < k; ++i) basis[i][pivots[i]] = 1;
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                basis[free_pos[t].first][free_pos[t].second] = vals[t];
            out.push_back(std::move(basis));
            std::size_t t = 0;
            while (t < vals.size() && vals[t] == p - 1) vals[t++] = 0;
            if (t == vals.size()) break;
            ++vals[t];
        }
        int i = k - 1;
        while (i >= 0 && pivots[i] == n - k + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return out;
}

/// Gram matrix of s restricted to the span of the given vectors.
inline Mat restricted_gram(const SympSpace& sp, const std::vector<Vec>& basis) {
    Mat G(sp.p, static_cast<int>(basis.size()));
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) G.at(i, j) = s_form(sp, basis[i], basis[j]);
    return G;
}

/// s-orthogonal complement of the span of the given vectors.
inline std::vector<Vec> s_perp(const SympSpace& sp, const std::vector<Vec>& basis) {
    // rows b_i^T J; kernel = perp. Embed as square matrix padded with zero rows.
    Mat A(sp.p, sp.two_m);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Vec row(sp.two_m);
        // (b^T J)_j = s(b, e_j) = -s(e_j, b)
        Vec Jb = mat_apply(sp.gram, basis[i]);
        Fp F(sp.p);
        for (int j = 0; j < sp.two_m; ++j) row[j] = F.neg(Jb[j]);
        for (int j = 0; j < sp.two_m; ++j) A.at(static_cast<int>(i), j) = row[j];
    }
    return kernel_basis(A);
}

/// The involution with +1-eigenspace P and -1-eigenspace P^perp; requires P
/// s-regular (restricted Gram invertible).
inline Mat involution_from_regular_subspace(const SympSpace& sp, const std::vector<Vec>& pbasis) {
    if (!is_invertible(restricted_gram(sp, pbasis))) throw PreconditionViolated("subspace is not s-regular");
    std::vector<Vec> cols = pbasis;
    std::vector<Vec> perp = s_perp(sp, pbasis);
    cols.insert(cols.end(), perp.begin(), perp.end());
    if (static_cast<int>(cols.size()) != sp.two_m) throw DimensionMismatch();
    Mat B = mat_from_cols(sp.p, cols);
    Mat D(sp.p, sp.two_m);
    Fp F(sp.p);
    for (int i = 0; i < sp.two_m; ++i)
        D.at(i, i) = i < static_cast<int>(pbasis.size()) ? 1 : F.neg(1);
    return mat_mul(mat_mul(B, D), inverse(B));
}

/// All symplectic involutions (including +-I). Filter mode when the group is
/// enumerable under the cap; constructive mode (s-regular +1-eigenspaces) for
/// two_m = 4 above the cap.
inline std::vector<Mat> enumerate_involutions(int two_m, int p, std::uint64_t cap = kDefaultGroupCap) {
    SympSpace sp(p, two_m);
    std::vector<Mat> out;
    if (sp_order(two_m, p) <= cap) {
        for (std::uint64_t key : enumerate_group_packed(two_m, p, cap)) {
            Mat U = Mat::unpack(p, two_m, key);
            if (mat_mul(U, U).is_identity()) out.push_back(U);
        }
        return out;
    }
    // Constructive: +-I, plus one involution per s-regular subspace of even
    // dimension a in [2, two_m - 2] (the +1-eigenspace; odd-dimensional
    // eigenspaces cannot be s-regular, so these splits are exhaustive).
    out.push_back(Mat::identity(p, two_m));
    out.push_back(mat_neg(Mat::identity(p, two_m)));
    for (int a = 2; a <= two_m - 2; a += 2)
        for (const auto& sub : enumerate_subspaces(p, two_m, a))
            if (is_invertible(restricted_gram(sp, sub)))
                out.push_back(involution_from_regular_subspace(sp, sub));
    std::sort(out.begin(), out.end(),
              [](const Mat& a, const Mat& b) { return a.pack() < b.pack(); });
    return out;
}

inline bool is_totally_singular(const SympSpace& sp, const std::vector<Vec>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j)
            if (s_form(sp, basis[i], basis[j]) != 0) return false;
    return true;
}

inline std::vector<Vec> standard_lagrangian(const SympSpace& sp) {
    std::vector<Vec> basis;
    for (int i = 0; i < sp.m(); ++i) {
        Vec v(sp.two_m, 0);
        v[i] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// A Lagrangian L' with L + L' = V, built by solving for a dual family and
/// correcting it to be totally singular.
inline std::vector<Vec> transverse_complement(const SympSpace& sp, const std::vector<Vec>& lbasis) {
    int m = sp.m();
    if (static_cast<int>(lbasis.size()) != m || span_rank(sp.p, lbasis, sp.two_m) != m ||
        !is_totally_singular(sp, lbasis))
        throw NotLagrangian();
    Fp F(sp.p);
    std::vector<Vec> dual;
    for (int j = 0; j < m; ++j) {
        // raw v_j with s(l_i, v_j) = delta_ij: rows l_i^T J
        Mat A(sp.p, sp.two_m);
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < sp.two_m; ++c) {
                int acc = 0;
                for (int r = 0; r < sp.two_m; ++r)
                    acc = F.add(acc, F.mul(F.reduce(lbasis[i][r]), sp.gram.at(r, c)));
                A.at(i, c) = acc;
            }
        Vec b(sp.two_m, 0);
        b[j] = 1;
        Vec v = solve(A, b);
        // correct against previously chosen duals: v += sum_k c_k l_k keeps the
        // pairing with L and can cancel s(v, dual_k)
        for (std::size_t k = 0; k < dual.size(); ++k) {
            int c = F.neg(s_form(sp, v, dual[k]));
            for (int r = 0; r < sp.two_m; ++r) v[r] = F.add(v[r], F.mul(c, F.reduce(lbasis[k][r])));
        }
        dual.push_back(std::move(v));
    }
    if (!is_totally_singular(sp, dual)) throw Inconsistent();
    return dual;
}

namespace detail {

/// Symplectic basis (v_1..v_k, w_1..w_k) of an s-regular subspace given by a
/// spanning independent family, via symplectic Gram-Schmidt.
inline std::vector<Vec> symplectic_basis_of(const SympSpace& sp, std::vector<Vec> pool) {
    Fp F(sp.p);
    std::vector<Vec> vs, ws;
    while (!pool.empty()) {
        Vec v = pool.front();
        pool.erase(pool.begin());
        // find a partner with s(v, w) != 0
        int wi = -1, alpha = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            alpha = s_form(sp, v, pool[i]);
            if (alpha != 0) { wi = static_cast<int>(i); break; }
        }
        if (wi < 0) throw PreconditionViolated("subspace is not s-regular");
        Vec w = pool[wi];
        pool.erase(pool.begin() + wi);
        int ia = F.inv(alpha);
        for (int r = 0; r < sp.two_m; ++r) w[r] = F.mul(ia, F.reduce(w[r]));
        // project the rest into the s-orthogonal of span(v, w)
        for (auto& x : pool) {
            int a = s_form(sp, x, w);
            int b = s_form(sp, x, v);
            for (int r = 0; r < sp.two_m; ++r)
                x[r] = F.add(F.reduce(x[r]),
                             F.add(F.mul(F.neg(a), F.reduce(v[r])), F.mul(b, F.reduce(w[r]))));
        }
        // drop vectors that became dependent
        std::vector<Vec> kept;
        for (auto& x : pool) {
            std::vector<Vec> trial = kept;
            trial.push_back(x);
            if (span_rank(sp.p, trial, sp.two_m) == static_cast<int>(trial.size()))
                kept.push_back(std::move(x));
        }
        pool = std::move(kept);
        vs.push_back(std::move(v));
        ws.push_back(std::move(w));
    }
    std::vector<Vec> basis = vs;
    basis.insert(basis.end(), ws.begin(), ws.end());
    return basis;
}

} // namespace detail

/// Restriction of pair.u to the span of a u-stable s-regular family, expressed
/// in a symplectic basis of that span (fixed Gram convention).
inline SPair restrict_pair(const SPair& pair, const std::vector<Vec>& span) {
    std::vector<Vec> basis = detail::symplectic_basis_of(pair.space, span);
    int k = static_cast<int>(basis.size());
    SympSpace sub(pair.space.p, k);
    Mat u(pair.space.p, k);
    for (int j = 0; j < k; ++j) {
        Vec c = coords_in_span(pair.space.p, basis, mat_apply(pair.u, basis[j]));
        for (int i = 0; i < k; ++i) u.at(i, j) = c[i];
    }
    return SPair(sub, u);
}

/// Splits V into u-stable s-regular summands, one per unordered pair {q, q#}
/// of irreducible factors of char(u) (a single generalized kernel when q = q#).
inline std::vector<SPair> orthogonal_primary_split(const SPair& pair) {
    if (pair.space.two_m == 0) return {pair};
    Poly cp = char_poly(pair.u);
    auto factors = factorize(cp);
    // group factors into reciprocal-mate classes, keyed by min(q, q#)
    std::vector<std::pair<Poly, std::vector<std::pair<Poly, int>>>> classes;
    for (const auto& [q, mult] : factors) {
        Poly qr = poly_monic(reciprocal(q));
        Poly key = std::min(q, qr);
        bool found = false;
        for (auto& [k, members] : classes)
            if (k == key) {
                members.emplace_back(q, mult);
                found = true;
            }
        if (!found) classes.push_back({key, {{q, mult}}});
    }
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<SPair> out;
    for (const auto& [key, members] : classes) {
        Poly prod = Poly::one(pair.space.p);
        for (const auto& [q, mult] : members) prod = poly_mul(prod, poly_pow(q, mult));
        std::vector<Vec> span = kernel_basis(poly_at_mat(prod, pair.u));
        out.push_back(restrict_pair(pair, span));
    }
    return out;
}

} // namespace sympinv
