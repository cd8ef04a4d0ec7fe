// JSON (de)serialization for matrices, polynomials, profiles, certificates,
// and census tables, plus the aligned-text census rendering.
#pragma once

#include <array>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sympinv/certs.hpp"

namespace sympinv {

using nlohmann::json;

// ---- matrices: {"p": 3, "n": 4, "entries": [[...], ...]} row-major ----

inline json mat_to_json(const Mat& M) {
    json rows = json::array();
    for (int i = 0; i < M.n; ++i) {
        json row = json::array();
        for (int j = 0; j < M.n; ++j) row.push_back(M.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"p", M.p}, {"n", M.n}, {"entries", std::move(rows)}};
}

inline Mat mat_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("n") || !j.contains("entries"))
        throw InvalidProblem("matrix JSON needs p, n, entries");
    int p = j.at("p").get<int>();
    int n = j.at("n").get<int>();
    if (p < 2 || n < 0) throw InvalidProblem("matrix JSON has invalid p or n");
    const json& e = j.at("entries");
    if (!e.is_array() || static_cast<int>(e.size()) != n)
        throw InvalidProblem("matrix JSON entries must be an n-row array");
    Mat M(p, n);
    for (int i = 0; i < n; ++i) {
        if (!e[i].is_array() || static_cast<int>(e[i].size()) != n)
            throw InvalidProblem("matrix JSON rows must have n entries");
        for (int jj = 0; jj < n; ++jj) {
            int v = e[i][jj].get<int>();
            if (v < 0 || v >= p) throw InvalidProblem("matrix JSON entry out of [0, p)");
            M.at(i, jj) = v;
        }
    }
    return M;
}

// ---- polynomials: coefficient array lowest-first, entries in [0, p) ----

inline json poly_to_json(const Poly& f) {
    json a = json::array();
    for (int i = 0; i <= f.deg(); ++i) a.push_back(f.coeff(i));
    return a;
}

inline Poly poly_from_json(int p, const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidProblem("polynomial JSON must be a nonempty array");
    std::vector<int> c;
    for (const auto& v : j) {
        int x = v.get<int>();
        if (x < 0 || x >= p) throw InvalidProblem("polynomial coefficient out of [0, p)");
        c.push_back(x);
    }
    return Poly(p, c);
}

// ---- profiles ----

inline json profile_to_json(const InvariantProfile& prof) {
    json factors = json::array();
    for (const Poly& f : prof.inv_factors.factors) factors.push_back(poly_to_json(f));
    json wall = json::array();
    for (const WallEntry& w : prof.wall)
        wall.push_back(json{{"eta", w.eta},
                            {"r", w.r},
                            {"rank", w.cls.rank},
                            {"disc_square", w.cls.disc_is_square}});
    return json{{"p", prof.p},
                {"n", prof.n},
                {"invariant_factors", std::move(factors)},
                {"wall", std::move(wall)}};
}

// ---- certificates ----

inline json cert_to_json(const Certificate& cert) {
    json factors = json::array();
    for (const Mat& f : cert.factors) factors.push_back(mat_to_json(f).at("entries"));
    return json{{"format", "sympinv-cert-1"},
                {"p", cert.p},
                {"n", cert.two_m},
                {"gram", "J-std-v1"},
                {"target", mat_to_json(cert.target).at("entries")},
                {"factors", std::move(factors)}};
}

inline Certificate cert_from_json(const json& j) {
    if (!j.is_object() || j.value("format", "") != std::string("sympinv-cert-1"))
        throw InvalidProblem("not a sympinv-cert-1 document");
    if (j.value("gram", "") != std::string("J-std-v1"))
        throw InvalidProblem("unsupported Gram convention identifier");
    int p = j.at("p").get<int>();
    int n = j.at("n").get<int>();
    auto entries_to_mat = [&](const json& e) {
        return mat_from_json(json{{"p", p}, {"n", n}, {"entries", e}});
    };
    Mat target = entries_to_mat(j.at("target"));
    std::vector<Mat> factors;
    for (const auto& f : j.at("factors")) factors.push_back(entries_to_mat(f));
    return Certificate(p, n, std::move(target), std::move(factors));
}

// ---- census tables ----

inline json census_to_json(const CensusTable& table) {
    json rows = json::array();
    for (const CensusRow& row : table.rows)
        rows.push_back(json{{"profile", profile_to_json(row.prof)},
                            {"class_size", row.class_size},
                            {"refl_length", row.refl_length},
                            {"representative", mat_to_json(row.representative).at("entries")}});
    return json{{"p", table.p},
                {"n", table.two_m},
                {"group_order", table.group_order},
                {"involution_count", table.involution_count},
                {"max_k", table.max_k},
                {"rows", std::move(rows)}};
}

namespace detail {

inline std::string poly_text(const Poly& f) {
    std::string s = "[";
    for (int i = 0; i <= f.deg(); ++i) {
        if (i) s += ",";
        s += std::to_string(f.coeff(i));
    }
    return s + "]";
}

} // namespace detail

/// Aligned text table: invariant factors, Wall entries, reflectional length,
/// class size. Lengths of -1 render as ">max_k".
inline std::string format_census_table(const CensusTable& table) {
    std::ostringstream os;
    os << "Sp_" << table.two_m << "(F_" << table.p << ")  order " << table.group_order
       << "  involutions " << table.involution_count << "  classes " << table.rows.size()
       << "\n";
    std::vector<std::array<std::string, 4>> cells;
    for (const CensusRow& row : table.rows) {
        std::string inv;
        for (const Poly& f : row.prof.inv_factors.factors) {
            if (!inv.empty()) inv += " ";
            inv += detail::poly_text(f);
        }
        std::string wall;
        for (const WallEntry& w : row.prof.wall) {
            if (!wall.empty()) wall += " ";
            wall += "(" + std::string(w.eta == 1 ? "+1" : "-1") + "," + std::to_string(w.r) +
                    "," + std::to_string(w.cls.rank) + "," + (w.cls.disc_is_square ? "sq" : "ns") +
                    ")";
        }
        if (wall.empty()) wall = "-";
        std::string len = row.refl_length >= 0 ? std::to_string(row.refl_length)
                                               : (">" + std::to_string(table.max_k));
        cells.push_back({inv, wall, len, std::to_string(row.class_size)});
    }
    std::array<std::size_t, 4> width = {17, 4, 3, 4}; // header widths
    for (const auto& c : cells)
        for (int i = 0; i < 4; ++i) width[i] = std::max(width[i], c[i].size());
    auto emit = [&](const std::array<std::string, 4>& c) {
        os << "  " << std::left << std::setw(static_cast<int>(width[0]) + 2) << c[0]
           << std::setw(static_cast<int>(width[1]) + 2) << c[1]
           << std::setw(static_cast<int>(width[2]) + 2) << c[2] << c[3] << "\n";
    };
    emit({"invariant factors", "wall", "len", "size"});
    for (const auto& c : cells) emit(c);
    return os.str();
}

} // namespace sympinv
