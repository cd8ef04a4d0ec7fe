// Involution-decomposition certificates: schema, strict verifier, and
// extraction from the reflectional-length engine's level-set witnesses.
#pragma once

#include <string>
#include <vector>

#include "sympinv/reflengine.hpp"

namespace sympinv {

/// Factors are stored left-to-right with product convention
/// target = f_1 * f_2 * ... * f_k (matrix product applied right-to-left to
/// column vectors).
struct Certificate {
    int p = 3;
    int two_m = 0;
    Mat target;
    std::vector<Mat> factors;

    Certificate(int p_, int two_m_, Mat target_, std::vector<Mat> factors_)
        : p(p_), two_m(two_m_), target(std::move(target_)), factors(std::move(factors_)) {}
};

struct VerifyReport {
    bool ok = true;
    std::string clause; // first violated clause, with factor index when apt
    int index = -1;     // offending factor index, -1 when not factor-specific

    static VerifyReport pass() { return {}; }
    static VerifyReport fail(std::string c, int i = -1) { return {false, std::move(c), i}; }
};

/// Strict verification: field/dimension coherence, symplectic membership of
/// target and factors, involution property of factors, product equality.
/// Reports the first violated clause.
inline VerifyReport verify(const Certificate& cert) {
    if (cert.p < 3 || cert.two_m <= 0 || cert.two_m % 2 != 0)
        return VerifyReport::fail("p/two_m are not a valid odd-field symplectic signature");
    if (cert.target.p != cert.p || cert.target.n != cert.two_m)
        return VerifyReport::fail("target field/dimension disagrees with the header");
    SympSpace sp(cert.p, cert.two_m);
    if (!is_symplectic(sp, cert.target))
        return VerifyReport::fail("target is not symplectic");
    for (std::size_t i = 0; i < cert.factors.size(); ++i) {
        const Mat& f = cert.factors[i];
        if (f.p != cert.p || f.n != cert.two_m)
            return VerifyReport::fail("factor field/dimension disagrees with the header",
                                      static_cast<int>(i));
        if (!is_symplectic(sp, f))
            return VerifyReport::fail("factor is not symplectic", static_cast<int>(i));
        if (!mat_mul(f, f).is_identity())
            return VerifyReport::fail("factor is not an involution", static_cast<int>(i));
    }
    Mat prod = Mat::identity(cert.p, cert.two_m);
    for (const Mat& f : cert.factors) prod = mat_mul(prod, f);
    if (prod != cert.target)
        return VerifyReport::fail("ordered product of factors does not equal target");
    return VerifyReport::pass();
}

/// Certificate of length exactly refl_length(pair): peel one involution per
/// level, each time picking a factor i whose complement i * u sits one level
/// lower. Throws Exceeds when the length is not within max_k.
inline Certificate extract_certificate(const SPair& pair, const std::vector<Mat>& involutions,
                                       int max_k = kDefaultMaxK) {
    const SympSpace& sp = pair.space;
    std::vector<Mat> factors;
    Mat cur = pair.u;
    int remaining = refl_length(pair, involutions, max_k); // throws Exceeds
    while (remaining > 0) {
        if (mat_mul(cur, cur).is_identity()) {
            // also covers remaining == 1 exactly
            factors.push_back(cur);
            remaining = 0;
            break;
        }
        bool peeled = false;
        for (const Mat& i : involutions) {
            Mat rest = mat_mul(i, cur);
            int len;
            try {
                len = refl_length(SPair(sp, rest), involutions, remaining - 1);
            } catch (const Exceeds&) {
                continue;
            }
            if (len == remaining - 1) {
                factors.push_back(i);
                cur = std::move(rest);
                remaining = len;
                peeled = true;
                break;
            }
        }
        if (!peeled) throw Inconsistent(); // engine length must be witnessed
    }
    Certificate cert(sp.p, sp.two_m, pair.u, std::move(factors));
    if (!verify(cert).ok) throw Inconsistent();
    return cert;
}

} // namespace sympinv
