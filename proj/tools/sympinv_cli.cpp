// Command-line frontend: censuses, reflectional lengths, profiles, conjugacy
// tests, certificate verification, polynomial searches, and fixtures.
//
// Exit codes: 0 success/true, 1 clean false, 2 infeasible (group too large),
// 3 table mismatch, 4 input error, 5 length bound exceeded.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sympinv/construct.hpp"
#include "sympinv/io.hpp"

using namespace sympinv;

namespace {

constexpr int kExitFalse = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitInput = 4;
constexpr int kExitExceeds = 5;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidProblem("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidProblem("cannot write " + path);
    out << text;
}

struct CensusArgs {
    int p = 3;
    int two_m = 4;
    std::uint64_t cap = kDefaultGroupCap;
    int max_k = kDefaultMaxK;
    int threads = 1;
    std::string format = "table";
    std::string out_path;
    bool compare_table2_flag = false;
};

int cmd_census(const CensusArgs& a) {
    CensusTable table = census(a.two_m, a.p, a.cap, a.max_k, a.threads);
    std::string text =
        a.format == "json" ? census_to_json(table).dump(2) + "\n" : format_census_table(table);
    if (a.out_path.empty())
        std::cout << text;
    else
        write_text(a.out_path, text);
    if (!a.compare_table2_flag) return 0;
    Table2Report report = compare_table2(table);
    for (const std::string& line : report.matched) std::cout << "match    " << line << "\n";
    for (const std::string& line : report.mismatched) std::cout << "MISMATCH " << line << "\n";
    for (const std::string& line : report.extras) std::cout << "extra    " << line << "\n";
    return report.ok ? 0 : kExitMismatch;
}

struct RlArgs {
    std::string matrix_path;
    int max_k = kDefaultMaxK;
    std::uint64_t cap = kDefaultGroupCap;
    std::string cert_path;
};

int cmd_rl(const RlArgs& a) {
    Mat u = mat_from_json(load_json(a.matrix_path));
    SympSpace sp(u.p, u.n);
    if (!is_symplectic(sp, u)) {
        std::cerr << "input is not symplectic: U^T J U != J for the standard Gram matrix\n";
        return kExitInput;
    }
    std::vector<Mat> involutions = enumerate_involutions(u.n, u.p, a.cap);
    SPair pair(sp, u);
    int k = refl_length(pair, involutions, a.max_k); // Exceeds handled by caller
    std::cout << k << "\n";
    if (!a.cert_path.empty()) {
        Certificate cert = extract_certificate(pair, involutions, a.max_k);
        write_text(a.cert_path, cert_to_json(cert).dump(2) + "\n");
    }
    return 0;
}

int cmd_profile(const std::string& path) {
    Mat u = mat_from_json(load_json(path));
    SympSpace sp(u.p, u.n);
    if (!is_symplectic(sp, u)) {
        std::cerr << "input is not symplectic: U^T J U != J for the standard Gram matrix\n";
        return kExitInput;
    }
    std::cout << profile_to_json(profile_fast(SPair(sp, u))).dump(2) << "\n";
    return 0;
}

int cmd_conj(const std::string& path_a, const std::string& path_b) {
    Mat a = mat_from_json(load_json(path_a));
    Mat b = mat_from_json(load_json(path_b));
    if (a.p != b.p || a.n != b.n) {
        std::cerr << "matrices live in different groups\n";
        return kExitInput;
    }
    SympSpace sp(a.p, a.n);
    if (!is_symplectic(sp, a) || !is_symplectic(sp, b)) {
        std::cerr << "input is not symplectic: U^T J U != J for the standard Gram matrix\n";
        return kExitInput;
    }
    bool conj = is_conjugate(SPair(sp, a), SPair(sp, b));
    std::cout << (conj ? "conjugate" : "not conjugate") << "\n";
    return conj ? 0 : kExitFalse;
}

int cmd_verify(const std::string& path) {
    VerifyReport report = verify(cert_from_json(load_json(path)));
    if (report.ok) {
        std::cout << "ok\n";
        return 0;
    }
    std::cout << "FAIL: " << report.clause;
    if (report.index >= 0) std::cout << " (factor " << report.index << ")";
    std::cout << "\n";
    return kExitFalse;
}

struct PolyArgs {
    std::string kind; // irr | even-irr
    int p = 3;
    int deg = 2;
    int constant = -1;
    bool avoid_t2p1 = false;
};

int cmd_poly(const PolyArgs& a) {
    Poly f = a.kind == "irr" ? find_irreducible_const(a.p, a.deg, a.constant)
                             : find_even_irreducible(a.p, a.deg, a.avoid_t2p1);
    std::cout << poly_to_json(f).dump() << "\n";
    return 0;
}

struct FixtureArgs {
    std::string name;
    std::vector<std::string> params; // key=value (integers)
};

int cmd_fixture(const FixtureArgs& a) {
    std::map<std::string, int> params;
    for (const std::string& kv : a.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidProblem("parameter must be key=value: " + kv);
        params[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
    }
    NamedFixture f = named_fixture(a.name, params);
    json out = {{"pair", mat_to_json(f.pair.u)}, {"involutions", json::array()}};
    for (const Mat& i : f.involutions) out["involutions"].push_back(mat_to_json(i));
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symplectic conjugacy invariants and reflectional lengths"};
    app.require_subcommand(1);

    CensusArgs ca;
    auto* census_cmd = app.add_subcommand("census", "conjugacy census of Sp_n(F_p)");
    census_cmd->add_option("--p", ca.p, "odd prime field");
    census_cmd->add_option("--n", ca.two_m, "even dimension 2m");
    census_cmd->add_option("--cap", ca.cap, "group order cap");
    census_cmd->add_option("--max-k", ca.max_k, "length search bound");
    census_cmd->add_option("--threads", ca.threads, "census worker pool size");
    census_cmd->add_option("--format", ca.format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    census_cmd->add_option("--out", ca.out_path, "write the table to a file");
    census_cmd->add_flag("--compare-table2", ca.compare_table2_flag,
                         "compare against the tabulated expectations (p=3, n=4)");

    RlArgs ra;
    auto* rl_cmd = app.add_subcommand("rl", "reflectional length of a matrix");
    rl_cmd->add_option("matrix", ra.matrix_path, "matrix JSON file")->required();
    rl_cmd->add_option("--max-k", ra.max_k, "length search bound");
    rl_cmd->add_option("--cap", ra.cap, "group order cap");
    rl_cmd->add_option("--certificate", ra.cert_path, "write certificate JSON here");

    std::string profile_path;
    auto* profile_cmd = app.add_subcommand("profile", "conjugacy profile of a matrix");
    profile_cmd->add_option("matrix", profile_path, "matrix JSON file")->required();

    std::string conj_a, conj_b;
    auto* conj_cmd = app.add_subcommand("conj", "conjugacy test for two matrices");
    conj_cmd->add_option("a", conj_a, "matrix JSON file")->required();
    conj_cmd->add_option("b", conj_b, "matrix JSON file")->required();

    std::string verify_path;
    auto* verify_cmd = app.add_subcommand("verify", "verify a certificate");
    verify_cmd->add_option("certificate", verify_path, "certificate JSON file")->required();

    PolyArgs pa;
    auto* poly_cmd = app.add_subcommand("poly", "polynomial searches");
    poly_cmd->add_option("kind", pa.kind, "irr|even-irr")
        ->required()
        ->check(CLI::IsMember({"irr", "even-irr"}));
    poly_cmd->add_option("--p", pa.p, "odd prime field");
    poly_cmd->add_option("--deg", pa.deg, "degree");
    poly_cmd->add_option("--const", pa.constant, "constant term (irr)");
    poly_cmd->add_flag("--avoid-t2p1", pa.avoid_t2p1, "exclude t^2+1 (even-irr)");

    FixtureArgs fa;
    auto* fixture_cmd = app.add_subcommand("fixture", "named fixture catalog");
    fixture_cmd->add_option("name", fa.name, "fixture name")->required();
    fixture_cmd->add_option("params", fa.params, "key=value parameters");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*census_cmd) return cmd_census(ca);
        if (*rl_cmd) return cmd_rl(ra);
        if (*profile_cmd) return cmd_profile(profile_path);
        if (*conj_cmd) return cmd_conj(conj_a, conj_b);
        if (*verify_cmd) return cmd_verify(verify_path);
        if (*poly_cmd) return cmd_poly(pa);
        if (*fixture_cmd) return cmd_fixture(fa);
    } catch (const TooLarge& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Exceeds& e) {
        std::cerr << e.what() << "\n";
        return kExitExceeds;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
