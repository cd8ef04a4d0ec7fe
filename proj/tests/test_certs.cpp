#include <catch2/catch_amalgamated.hpp>

#include "sympinv/certs.hpp"
#include "sympinv/construct.hpp"
#include "sympinv/io.hpp"

using namespace sympinv;

namespace {

const std::vector<Mat>& group4f3() {
    static std::vector<Mat> g = enumerate_group(4, 3);
    return g;
}

const std::vector<Mat>& inv4f3() {
    static std::vector<Mat> v = enumerate_involutions(4, 3);
    return v;
}

const CensusTable& census43() {
    static CensusTable t = census(4, 3);
    return t;
}

} // namespace

TEST_CASE("verify accepts the trivial certificates") {
    Mat I = Mat::identity(3, 4);
    CHECK(verify(Certificate(3, 4, I, {})).ok);
    Mat mI = mat_neg(I);
    CHECK(verify(Certificate(3, 4, mI, {mI})).ok);
}

TEST_CASE("verify reports the first violated clause") {
    Mat I = Mat::identity(3, 4);
    SECTION("bad signature") {
        VerifyReport r = verify(Certificate(3, 3, Mat::identity(3, 3), {}));
        CHECK_FALSE(r.ok);
        CHECK(r.clause == "p/two_m are not a valid odd-field symplectic signature");
    }
    SECTION("target dimension mismatch") {
        VerifyReport r = verify(Certificate(3, 4, Mat::identity(3, 2), {}));
        CHECK_FALSE(r.ok);
        CHECK(r.clause == "target field/dimension disagrees with the header");
    }
    SECTION("non-symplectic target") {
        Mat M = Mat::identity(3, 4);
        M.at(0, 0) = 2; // diag(2,1,1,1) is not symplectic
        VerifyReport r = verify(Certificate(3, 4, M, {}));
        CHECK_FALSE(r.ok);
        CHECK(r.clause == "target is not symplectic");
    }
    SECTION("non-involution factor, with index") {
        SympSpace sp(3, 4);
        Mat t = transvection(sp, {1, 0, 0, 0}, 1); // symplectic, order 3
        VerifyReport r = verify(Certificate(3, 4, I, {mat_neg(I), t}));
        CHECK_FALSE(r.ok);
        CHECK(r.clause == "factor is not an involution");
        CHECK(r.index == 1);
    }
    SECTION("product mismatch") {
        Mat mI = mat_neg(I);
        VerifyReport r = verify(Certificate(3, 4, I, {mI}));
        CHECK_FALSE(r.ok);
        CHECK(r.clause == "ordered product of factors does not equal target");
    }
}

TEST_CASE("extract_certificate: identity and involutions") {
    SympSpace sp(3, 4);
    Certificate c0 = extract_certificate(SPair(sp, Mat::identity(3, 4)), inv4f3());
    CHECK(c0.factors.empty());
    CHECK(verify(c0).ok);

    Certificate c1 = extract_certificate(SPair(sp, inv4f3()[5]), inv4f3());
    CHECK(c1.factors.size() == 1);
    CHECK(verify(c1).ok);
}

TEST_CASE("round trip: every Sp_4(F_3) class representative certifies") {
    SympSpace sp(3, 4);
    for (const CensusRow& row : census43().rows) {
        REQUIRE(row.refl_length >= 0);
        Certificate cert = extract_certificate(SPair(sp, row.representative), inv4f3());
        CHECK(static_cast<int>(cert.factors.size()) == row.refl_length);
        CHECK(verify(cert).ok);
    }
}

TEST_CASE("a concrete C(t^4+1) element certifies at length 3") {
    SympSpace sp(3, 4);
    SPair pair(sp, companion(Poly(3, {1, 0, 0, 0, 1})));
    Certificate cert = extract_certificate(pair, inv4f3());
    CHECK(cert.factors.size() == 3);
    CHECK(verify(cert).ok);
}

TEST_CASE("minimality: no shorter product exists for length-3 classes") {
    // independent of the engine: the set {i * j} of two-involution products
    // misses every length-3 class representative
    SympSpace sp(3, 4);
    std::vector<const CensusRow*> rows3;
    for (const CensusRow& row : census43().rows)
        if (row.refl_length == 3) rows3.push_back(&row);
    REQUIRE(!rows3.empty());
    detail::PackedSet two_products(inv4f3().size() * inv4f3().size());
    for (const Mat& a : inv4f3())
        for (const Mat& b : inv4f3()) two_products.insert(detail::pack64(mat_mul(a, b)));
    for (const CensusRow* row : rows3)
        CHECK_FALSE(two_products.contains(detail::pack64(row->representative)));
}

TEST_CASE("certificate JSON round trip") {
    SympSpace sp(3, 4);
    SPair pair(sp, companion(Poly(3, {1, 0, 0, 0, 1})));
    Certificate cert = extract_certificate(pair, inv4f3());
    json j = cert_to_json(cert);
    CHECK(j.at("format") == "sympinv-cert-1");
    CHECK(j.at("gram") == "J-std-v1");
    Certificate back = cert_from_json(j);
    CHECK(back.target == cert.target);
    REQUIRE(back.factors.size() == cert.factors.size());
    for (std::size_t i = 0; i < back.factors.size(); ++i)
        CHECK(back.factors[i] == cert.factors[i]);
    CHECK(verify(back).ok);

    // tampering breaks verification
    j["factors"][0][0][0] = (j["factors"][0][0][0].get<int>() + 1) % 3;
    VerifyReport r = verify(cert_from_json(j));
    CHECK_FALSE(r.ok);
}

TEST_CASE("matrix and profile JSON") {
    Mat M = companion(Poly(3, {1, 0, 0, 0, 1}));
    Mat back = mat_from_json(mat_to_json(M));
    CHECK(back == M);
    CHECK_THROWS_AS(mat_from_json(json{{"p", 3}, {"n", 2}, {"entries", {{0, 5}, {1, 0}}}}),
                    InvalidProblem);

    SympSpace sp(3, 4);
    InvariantProfile prof = profile_fast(SPair(sp, Mat::identity(3, 4)));
    json pj = profile_to_json(prof);
    CHECK(pj.at("p") == 3);
    CHECK(pj.at("n") == 4);
    CHECK(pj.at("invariant_factors").size() == 4);
    CHECK(pj.at("wall").size() == 0);
}

TEST_CASE("census JSON and text rendering") {
    const CensusTable& t = census43();
    json j = census_to_json(t);
    CHECK(j.at("group_order") == 51840);
    CHECK(j.at("rows").size() == 34);
    std::string text = format_census_table(t);
    CHECK(text.find("Sp_4(F_3)") != std::string::npos);
    CHECK(text.find("invariant factors") != std::string::npos);
}
