// Conjugacy invariants of s-pairs over F_p: quotient spaces V_{q,r},
// quadratic Wall invariants, quadratic-form classification, the invariant
// profile, and the conjugacy decision (invariant factors + equivalence of all
// quadratic Wall invariants). Hermitian Wall invariants are represented only
// by their ranks, which are the plain Jordan numbers, so they never appear
// explicitly in a profile.
#pragma once

#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sympinv/symp.hpp"

namespace sympinv {

/// Equivalence class of a symmetric bilinear form over F_p: rank plus the
/// square-class of the discriminant (meaningful when rank > 0).
struct QuadFormClass {
    int p = 3;
    int rank = 0;
    bool disc_is_square = true;

    bool operator==(const QuadFormClass& o) const {
        return p == o.p && rank == o.rank && (rank == 0 || disc_is_square == o.disc_is_square);
    }
    bool operator!=(const QuadFormClass& o) const { return !(*this == o); }
};

/// Hyperbolic iff rank is even and the disc class equals the class of
/// (-1)^{rank/2}; rank 0 is vacuously hyperbolic.
inline bool is_hyperbolic(const QuadFormClass& c) {
    if (c.rank % 2 != 0) return false;
    if (c.rank == 0) return true;
    Fp F(c.p);
    bool target = (c.rank / 2) % 2 == 0 ? true : F.is_square(F.neg(1));
    return c.disc_is_square == target;
}

/// Rank and discriminant square-class by symmetric diagonalization.
inline QuadFormClass classify_quadratic(const Mat& G) {
    if (G != transpose(G)) throw NotSymmetric();
    Fp F(G.p);
    Mat A = G;
    int n = A.n;
    int disc = 1, rank = 0;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        // find a usable diagonal entry, creating one if necessary
        int piv = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && A.at(i, i) != 0) { piv = i; break; }
        if (piv < 0) {
            int bi = -1, bj = -1;
            for (int i = 0; i < n && bi < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && A.at(i, j) != 0) { bi = i; bj = j; break; }
            if (bi < 0) break; // remaining block is zero
            // x_bi <- x_bi + x_bj puts 2*A(bi,bj) on the diagonal (p odd)
            for (int k = 0; k < n; ++k) A.at(bi, k) = F.add(A.at(bi, k), A.at(bj, k));
            for (int k = 0; k < n; ++k) A.at(k, bi) = F.add(A.at(k, bi), A.at(k, bj));
            piv = bi;
        }
        int d = A.at(piv, piv);
        int dinv = F.inv(d);
        for (int i = 0; i < n; ++i) {
            if (i == piv || A.at(i, piv) == 0) continue;
            int f = F.mul(A.at(i, piv), dinv);
            for (int k = 0; k < n; ++k) A.at(i, k) = F.sub(A.at(i, k), F.mul(f, A.at(piv, k)));
            for (int k = 0; k < n; ++k) A.at(k, i) = F.sub(A.at(k, i), F.mul(f, A.at(k, piv)));
        }
        done[piv] = true;
        disc = F.mul(disc, d);
        ++rank;
    }
    QuadFormClass c;
    c.p = G.p;
    c.rank = rank;
    c.disc_is_square = rank == 0 ? true : F.is_square(disc);
    return c;
}

/// Lifted basis of the quotient V_{q,r}: a complement, inside
/// Ker q(u)^r / Ker q(u)^{r-1}, of the image of Ker q(u)^{r+1} under q(u).
inline std::vector<Vec> quotient_basis(const SPair& pair, const Poly& q, int r) {
    if (!is_irreducible(q)) throw InvalidPolynomial("quotient_basis: q must be irreducible");
    int p = pair.space.p;
    int n = pair.space.two_m;
    Mat qu = poly_at_mat(q, pair.u);
    auto ker = [&](int j) { return kernel_basis(poly_at_mat(poly_pow(q, j), pair.u)); };
    std::vector<Vec> k_rm1 = r >= 1 ? ker(r - 1) : std::vector<Vec>{};
    std::vector<Vec> k_r = ker(r);
    std::vector<Vec> k_rp1 = ker(r + 1);
    // subspace to complement: K_{r-1} + q(u) K_{r+1}
    std::vector<Vec> sub = k_rm1;
    for (const Vec& x : k_rp1) sub.push_back(mat_apply(qu, x));
    int base = span_rank(p, sub, n);
    std::vector<Vec> lifted;
    for (const Vec& v : k_r) {
        std::vector<Vec> trial = sub;
        trial.insert(trial.end(), lifted.begin(), lifted.end());
        trial.push_back(v);
        if (span_rank(p, trial, n) == base + static_cast<int>(lifted.size()) + 1)
            lifted.push_back(v);
    }
    return lifted;
}

/// Gram of (x, y) -> 1/2 s(x, (u - u^{-1})(u + u^{-1} - 2 eta id)^k y) on the
/// lifted quotient basis of V_{t-eta, r}, with r = 2k + 2, plus its class.
inline std::pair<Mat, QuadFormClass> quadratic_wall_invariant(const SPair& pair, int eta, int r) {
    if (r < 2 || r % 2 != 0) throw InvalidProblem("quadratic Wall invariants exist only for even r >= 2");
    int p = pair.space.p;
    Fp F(p);
    int e = F.reduce(eta);
    if (e != 1 && e != p - 1) throw InvalidScalar("eta must be +1 or -1");
    Poly lin = Poly::linear(p, eta); // t - eta
    std::vector<Vec> basis = quotient_basis(pair, lin, r);
    Mat uinv = inverse(pair.u);
    Mat w1 = mat_sub(pair.u, uinv);
    Mat w2 = mat_sub(mat_add(pair.u, uinv), mat_scale(Mat::identity(p, pair.space.two_m), 2 * eta));
    Mat w = w1;
    for (int i = 0; i < (r - 2) / 2; ++i) w = mat_mul(w, w2);
    Mat G(p, static_cast<int>(basis.size()));
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j)
            G.at(i, j) = F.half(s_form(pair.space, basis[i], mat_apply(w, basis[j])));
    return {G, classify_quadratic(G)};
}

struct WallEntry {
    int eta = 1; // +1 or -1
    int r = 2;
    QuadFormClass cls;

    bool operator==(const WallEntry& o) const { return eta == o.eta && r == o.r && cls == o.cls; }
};

struct InvariantProfile {
    int p = 3;
    int n = 0;
    InvariantFactors inv_factors;
    std::vector<WallEntry> wall; // sorted by (eta: +1 first, then r ascending)

    bool operator==(const InvariantProfile& o) const {
        return p == o.p && n == o.n && inv_factors == o.inv_factors && wall == o.wall;
    }
    bool operator!=(const InvariantProfile& o) const { return !(*this == o); }
};

/// Canonical serialization; defines a total order on profiles and serves as
/// the memoization key for the reflectional-length engine.
inline std::string profile_key(const InvariantProfile& pr) {
    std::ostringstream os;
    os << "p" << pr.p << ";n" << pr.n << ";if";
    for (const Poly& f : pr.inv_factors.factors) {
        os << "[";
        for (std::size_t i = 0; i < f.c.size(); ++i) os << (i ? "," : "") << f.c[i];
        os << "]";
    }
    os << ";wall";
    for (const WallEntry& w : pr.wall)
        os << "(" << w.eta << "," << w.r << "," << w.cls.rank << ","
           << ((w.cls.rank == 0 || w.cls.disc_is_square) ? 1 : 0) << ")";
    return os.str();
}

inline bool operator<(const InvariantProfile& a, const InvariantProfile& b) {
    return profile_key(a) < profile_key(b);
}

inline InvariantProfile profile(const SPair& pair) {
    InvariantProfile pr;
    pr.p = pair.space.p;
    pr.n = pair.space.two_m;
    pr.inv_factors = invariant_factors(pair.u);
    for (int eta : {1, -1}) {
        Poly lin = Poly::linear(pr.p, eta);
        for (int r = 2; r <= pr.n; r += 2) {
            if (jordan_number(pair.u, lin, r) == 0) continue;
            auto [G, cls] = quadratic_wall_invariant(pair, eta, r);
            pr.wall.push_back(WallEntry{eta, r, cls});
        }
    }
    return pr;
}

namespace detail {

/// Factorization cache keyed by (p, coefficients); char polys of symplectic
/// matrices repeat heavily during bulk censuses.
inline const std::vector<std::pair<Poly, int>>& factorize_cached(const Poly& f) {
    static std::mutex mu;
    static std::map<std::pair<int, std::vector<int>>, std::vector<std::pair<Poly, int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(f.p, f.c);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, factorize(f)).first;
    return it->second;
}

} // namespace detail

/// Same result as profile(), computed from Jordan numbers (rank descents of
/// q(u)^r) instead of a polynomial Smith form; much faster for bulk use.
inline InvariantProfile profile_fast(const SPair& pair) {
    InvariantProfile pr;
    int p = pair.space.p;
    int n = pair.space.two_m;
    pr.p = p;
    pr.n = n;
    Poly cp = char_poly_hessenberg(pair.u);
    const auto& factors = detail::factorize_cached(cp);
    // block sizes per irreducible factor, one entry per Jordan cell
    std::vector<std::pair<Poly, std::vector<int>>> blocks;
    std::size_t nfac = 0;
    for (const auto& [q, mult] : factors) {
        Mat qu = poly_at_mat(q, pair.u);
        std::vector<int> rk{n}; // rank of q(u)^0, q(u)^1, ...
        Mat pw = qu;
        for (int r = 1; r <= mult; ++r) {
            rk.push_back(rank(pw));
            if (r < mult) pw = mat_mul(pw, qu);
        }
        rk.push_back(rk.back()); // rank stabilizes past the multiplicity
        std::vector<int> sizes;
        for (int r = 1; r <= mult; ++r) {
            int nr = (rk[r - 1] - 2 * rk[r] + rk[r + 1]) / q.deg();
            for (int c = 0; c < nr; ++c) sizes.push_back(r);
            if (q.deg() == 1 && r % 2 == 0 && nr > 0) {
                int eta = Fp(p).reduce(-q.c[0]) == 1 ? 1 : -1;
                auto [G, cls] = quadratic_wall_invariant(pair, eta, r);
                pr.wall.push_back(WallEntry{eta, r, cls});
            }
        }
        std::sort(sizes.rbegin(), sizes.rend());
        nfac = std::max(nfac, sizes.size());
        blocks.emplace_back(q, std::move(sizes));
    }
    // invariant factor j (from the top of the chain) collects the j-th largest
    // block of every irreducible factor
    std::vector<Poly> chain;
    for (std::size_t j = 0; j < nfac; ++j) {
        Poly f = Poly::one(p);
        for (const auto& [q, sizes] : blocks)
            if (j < sizes.size()) f = poly_mul(f, poly_pow(q, sizes[j]));
        chain.push_back(std::move(f));
    }
    std::reverse(chain.begin(), chain.end());
    pr.inv_factors.factors = std::move(chain);
    // wall entries: +1 block first, then -1, r ascending
    std::sort(pr.wall.begin(), pr.wall.end(), [](const WallEntry& a, const WallEntry& b) {
        if (a.eta != b.eta) return a.eta > b.eta;
        return a.r < b.r;
    });
    return pr;
}

/// Wall's theorem over finite fields: conjugate in Sp iff equal profiles.
inline bool is_conjugate(const SPair& a, const SPair& b) {
    if (a.space.p != b.space.p) throw ModulusMismatch();
    if (a.space.two_m != b.space.two_m) throw DimensionMismatch();
    return profile(a) == profile(b);
}

} // namespace sympinv
