#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <unordered_set>

#include "sympinv/reflengine.hpp"

using namespace sympinv;

namespace {

const std::vector<Mat>& sp4f3() {
    static std::vector<Mat> g = enumerate_group(4, 3);
    return g;
}

const std::vector<Mat>& inv4f3_table() {
    static std::vector<Mat> t = enumerate_involutions(4, 3);
    return t;
}

const CensusTable& census43() {
    static CensusTable t = census(4, 3);
    return t;
}

Mat u_s(int p, const Mat& S) {
    Mat U = Mat::identity(p, 2 * S.n);
    for (int i = 0; i < S.n; ++i)
        for (int j = 0; j < S.n; ++j) U.at(i, S.n + j) = S.at(i, j);
    return U;
}

/// Census representative whose invariant factors equal the given chain.
Mat rep_with_factors(const std::vector<Poly>& chain) {
    for (const CensusRow& row : census43().rows)
        if (row.prof.inv_factors.factors == chain) return row.representative;
    throw NotFound();
}

} // namespace

TEST_CASE("nielsen_2refl examples") {
    SympSpace sp2(3, 2);
    SympSpace sp4(3, 4);

    SPair cell(sp2, companion(Poly(3, {1, 0, 1})));
    CHECK(nielsen_2refl(orthogonal_sum({cell, cell}))); // quarter turn

    CHECK(nielsen_2refl(SPair(sp4, u_s(3, Mat::from_rows(3, {{1, 0}, {0, 2}})))));
    CHECK_FALSE(nielsen_2refl(SPair(sp4, u_s(3, Mat::from_rows(3, {{1, 1}, {1, 2}})))));

    Mat c4 = rep_with_factors({Poly(3, {1, 0, 0, 0, 1})});
    CHECK_FALSE(nielsen_2refl(SPair(sp4, c4))); // single odd Jordan number

    CHECK(nielsen_2refl(SPair(sp4, Mat::identity(3, 4))));
    CHECK(nielsen_2refl(SPair(sp4, mat_neg(Mat::identity(3, 4)))));
}

TEST_CASE("oracle equivalence: nielsen set equals products of two involutions") {
    // Sp2(F3), Sp2(F5): the only involutions are +-I, so {i*j} = {+-I}
    for (int p : {3, 5}) {
        SympSpace sp2(p, 2);
        auto invs = enumerate_involutions(2, p);
        REQUIRE(invs.size() == 2);
        for (const Mat& U : enumerate_group(2, p)) {
            bool in_products = U.is_identity() || mat_neg(U).is_identity();
            CHECK(nielsen_2refl(SPair(sp2, U)) == in_products);
        }
    }

    // Sp4(F3): decisive exhaustive check
    SympSpace sp4(3, 4);
    std::unordered_set<unsigned long long> products;
    for (const Mat& i : inv4f3_table())
        for (const Mat& j : inv4f3_table())
            products.insert(static_cast<unsigned long long>(mat_mul(i, j).pack()));
    for (const Mat& U : sp4f3()) {
        bool in_products = products.count(static_cast<unsigned long long>(U.pack())) > 0;
        CHECK(nielsen_2refl(SPair(sp4, U)) == in_products);
    }
}

TEST_CASE("refl_length base cases and the length-5 class") {
    SympSpace sp4(3, 4);
    const auto& invs = inv4f3_table();
    CHECK(refl_length(SPair(sp4, Mat::identity(3, 4)), invs) == 0);
    CHECK(refl_length(SPair(sp4, mat_neg(Mat::identity(3, 4))), invs) == 1);

    // minimal polynomial (t^2+1)(t-1)^2: length 5
    SympSpace sp2(3, 2);
    SPair a(sp2, companion(Poly(3, {1, 0, 1})));
    SPair b(sp2, companion(Poly(3, {1, 1, 1}))); // (t-1)^2
    SPair sum = orthogonal_sum({a, b});
    CHECK(min_poly(sum.u) == Poly(3, {1, 1, 2, 1, 1}));
    CHECK(refl_length(sum, invs) == 5);

    // an element beyond any bound: Sp2(F3) has only trivial involutions
    SPair shear(sp2, Mat::from_rows(3, {{1, 1}, {0, 1}}));
    auto invs2 = enumerate_involutions(2, 3);
    CHECK_THROWS_AS(refl_length(shear, invs2), Exceeds);
}

TEST_CASE("census of Sp2(F3)") {
    CensusTable t = census(2, 3);
    CHECK(t.group_order == 24);
    CHECK(t.involution_count == 2);
    std::uint64_t total = 0;
    for (const CensusRow& row : t.rows) {
        total += row.class_size;
        if (row.representative.is_identity())
            CHECK(row.refl_length == 0);
        else if (mat_neg(row.representative).is_identity())
            CHECK(row.refl_length == 1);
        else
            CHECK(row.refl_length == -1); // unreachable: involutions are only +-I
    }
    CHECK(total == 24);
}

TEST_CASE("census of Sp4(F3) reproduces the expected class structure") {
    const CensusTable& t = census43();
    CHECK(t.group_order == 51840);
    CHECK(t.involution_count == 92);
    CHECK(t.rows.size() == 34);
    std::uint64_t total = 0;
    int ninv = 0, nlen5 = 0;
    for (const CensusRow& row : t.rows) {
        total += row.class_size;
        if (row.refl_length <= 1) ++ninv;
        if (row.refl_length == 5) ++nlen5;
        CHECK(row.refl_length >= 0);
        CHECK(row.refl_length <= 5);
    }
    CHECK(total == 51840);
    CHECK(ninv == 3); // I, -I, and the (2,2) eigenspace-split involution class
    CHECK(nlen5 == 6); // (t^2-1)^2 opposite pairing (x2) + (t^2+1)(t-eta)^2 (x4)
}

TEST_CASE("compare_table2 matches the embedded expectations") {
    Table2Report report = compare_table2(census43());
    for (const auto& line : report.mismatched) UNSCOPED_INFO(line);
    CHECK(report.ok);
    CHECK(report.matched.size() == 17); // 12 printed rows, eta expanded
    // six classes are not covered by the printed table rows (all length 4)
    CHECK(report.extras.size() == 6);
    for (const auto& line : report.extras) CHECK(line.find("length 4") != std::string::npos);
}

TEST_CASE("compare_table2 negative control") {
    CensusTable t = census43();
    for (CensusRow& row : t.rows)
        if (row.refl_length == 3) { row.refl_length = 2; break; }
    Table2Report report = compare_table2(t);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.mismatched.empty());
}

TEST_CASE("trace trick: length-3 classes have trace 0") {
    Fp F(3);
    for (const CensusRow& row : census43().rows) {
        if (row.refl_length != 3) continue;
        int tr = 0;
        for (int i = 0; i < 4; ++i) tr = F.add(tr, row.representative.at(i, i));
        CHECK(tr == 0);
    }
}

TEST_CASE("negation symmetry of lengths") {
    const CensusTable& t = census43();
    SympSpace sp4(3, 4);
    std::map<std::string, int> len;
    for (const CensusRow& row : t.rows) len[profile_key(row.prof)] = row.refl_length;
    for (const CensusRow& row : t.rows) {
        Mat rep = row.representative;
        if (rep.is_identity() || mat_neg(rep).is_identity()) continue;
        int neg_len = len.at(profile_key(profile_fast(SPair(sp4, mat_neg(rep)))));
        CHECK(neg_len == row.refl_length);
    }
}

TEST_CASE("refl_length is a class function") {
    SympSpace sp4(3, 4);
    const auto& invs = inv4f3_table();
    std::mt19937 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        const Mat& U = sp4f3()[rng() % sp4f3().size()];
        const Mat& g = sp4f3()[rng() % sp4f3().size()];
        Mat c = mat_mul(mat_mul(g, U), inverse(g));
        CHECK(refl_length(SPair(sp4, U), invs) == refl_length(SPair(sp4, c), invs));
    }
}

TEST_CASE("bottom-up census agrees with direct search") {
    SympSpace sp4(3, 4);
    const auto& invs = inv4f3_table();
    std::map<std::string, int> len;
    for (const CensusRow& row : census43().rows) len[profile_key(row.prof)] = row.refl_length;
    std::mt19937 rng(11);
    for (int iter = 0; iter < 30; ++iter) {
        const Mat& U = sp4f3()[rng() % sp4f3().size()];
        CHECK(refl_length(SPair(sp4, U), invs) ==
              len.at(profile_key(profile_fast(SPair(sp4, U)))));
    }
}

TEST_CASE("find_adjacent_witness") {
    SympSpace sp4(3, 4);
    const auto& invs = inv4f3_table();
    auto nielsen_pred = [](const SPair& q) { return nielsen_2refl(q); };

    Mat c4 = rep_with_factors({Poly(3, {1, 0, 0, 0, 1})}); // t^4+1, length 3
    Mat w = find_adjacent_witness(SPair(sp4, c4), nielsen_pred, invs);
    CHECK(is_symplectic_involution(sp4, w));
    CHECK(nielsen_2refl(SPair(sp4, mat_mul(w, c4))));

    // a length-5 class cannot be Nielsen-adjacent
    Mat len5 = rep_with_factors({Poly(3, {1, 1, 2, 1, 1})});
    CHECK_THROWS_AS(find_adjacent_witness(SPair(sp4, len5), nielsen_pred, invs), NotFound);

    const Mat& i0 = invs[5];
    Mat found = find_adjacent_witness(SPair(sp4, Mat::identity(3, 4)),
                                      [&](const SPair& q) { return q.u == i0; }, invs);
    CHECK(mat_mul(found, Mat::identity(3, 4)) == i0);
}

TEST_CASE("verify_theorem") {
    TheoremResult r5 = verify_theorem(3, 4, 5);
    CHECK(r5.ok);

    TheoremResult r4 = verify_theorem(3, 4, 4);
    CHECK_FALSE(r4.ok);
    REQUIRE(r4.witness.has_value());
    Poly mp = min_poly(*r4.witness);
    bool expected = mp == Poly(3, {1, 1, 2, 1, 1}) || mp == Poly(3, {1, 2, 2, 2, 1}) ||
                    mp == Poly(3, {1, 0, 1, 0, 1});
    CHECK(expected);

    TheoremResult r2 = verify_theorem(3, 2, 2);
    CHECK_FALSE(r2.ok);
    CHECK(r2.witness.has_value());
}
