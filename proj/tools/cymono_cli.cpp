// cymono: orbit tables, identity checks, class screening and numerical
// monodromy for the fourteen hypergeometric Calabi-Yau families.
//
// Exit codes: 0 success, 1 verification or reference mismatch, 2 usage or
// input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cymono/conjecture.hpp"
#include "cymono/family_catalog.hpp"
#include "cymono/golden_tables.hpp"
#include "cymono/orbit.hpp"
#include "cymono/pf/monodromy.hpp"
#include "cymono/skew_form.hpp"
#include "cymono/tables.hpp"
#include "cymono/word_search.hpp"

namespace fs = std::filesystem;
using namespace cymono;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntVec4 parse_vector(const std::string& text) {
    static const std::regex re(R"(^\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw UsageError("malformed vector '" + text + "', expected n1,n2,n3,n4");
    return {BigInt(m[1].str()), BigInt(m[2].str()), BigInt(m[3].str()), BigInt(m[4].str())};
}

Prime parse_prime(std::uint64_t p) {
    try {
        return Prime(p);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

FamilyParams require_family(int d, int k) {
    auto f = find_family(d, k);
    if (!f) throw UsageError("no catalog family with (d,k) = (" + std::to_string(d) + "," + std::to_string(k) + ")");
    return *f;
}

pf::Complex parse_complex(const std::string& text) {
    static const std::regex re(
        R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*(?:([-+])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*i)?\s*$)");
    std::smatch m;
    if (text.empty() || !std::regex_match(text, m, re) || (!m[1].matched && !m[2].matched))
        throw UsageError("malformed complex number '" + text + "', expected e.g. 0.5+0.25i");
    const double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double im_part = 0.0;
    if (m[2].matched) {
        im_part = m[3].matched ? std::stod(m[3].str()) : 1.0;
        if (m[2].str() == "-") im_part = -im_part;
    }
    return {re_part, im_part};
}

std::string residues_text(const ResidueVec4& v) { return v.str(); }

// ---------------------------------------------------------------- orbit

struct OrbitArgs {
    int d = 5, k = 5;
    std::uint64_t p = 2;
    std::string seed = "0,1,0,0";
    std::string format = "text";
    bool all = false;
};

int cmd_orbit(const OrbitArgs& a) {
    const FamilyParams f = require_family(a.d, a.k);
    const Prime p = parse_prime(a.p);
    const IntVec4 seed = parse_vector(a.seed);
    const OrbitSet o = orbit_mod_p(seed, p, f);
    const bool complete = is_complete(o);

    if (a.format == "json") {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& v : o.members) members.push_back(v.entries());
        nlohmann::json out{{"family", {{"d", f.d}, {"k", f.k}}},
                           {"p", p.value()},
                           {"seed", {seed[0].str(), seed[1].str(), seed[2].str(), seed[3].str()}},
                           {"complete", complete},
                           {"size", o.size()},
                           {"members", members}};
        std::cout << out.dump(2) << "\n";
    } else if (a.format == "csv") {
        std::cout << "n1,n2,n3,n4\n";
        for (const auto& v : o.members) std::cout << v[0] << "," << v[1] << "," << v[2] << "," << v[3] << "\n";
    } else {
        if (complete) std::cout << "Complete (" << o.size() << " vectors)\n";
        if (!complete || a.all)
            for (const auto& v : o.members) std::cout << residues_text(v) << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- tables

struct TablesArgs {
    std::vector<std::uint64_t> primes = default_primes();
    std::string out_dir;
    std::string format = "csv";
    std::optional<std::string> diff;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    out << text;
    if (!out) throw UsageError("write failed for " + path.string());
}

int cmd_tables(const TablesArgs& a, unsigned threads) {
    if (a.out_dir.empty() && !a.diff) throw UsageError("tables: give --out DIR and/or --diff [DIR]");
    for (auto p : a.primes) parse_prime(p);
    const OrbitTables t = compute_tables(catalog(), a.primes, threads);
    struct Named {
        const char* name;
        const char* title;
        const std::vector<TableRow>* rows;
        std::string_view embedded;
    };
    const Named tables[] = {
        {"table2", "Orbits of delta2 and delta4 (union)", &t.union_rows, golden::kTable2Csv},
        {"table3", "Orbits of delta2", &t.delta2_rows, golden::kTable3Csv},
        {"table4", "Orbits of delta4", &t.delta4_rows, golden::kTable4Csv},
    };

    if (!a.out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(a.out_dir, ec);
        if (ec) throw UsageError("cannot create " + a.out_dir + ": " + ec.message());
        for (const auto& n : tables) {
            std::string ext, text;
            if (a.format == "csv") {
                ext = ".csv";
                text = to_csv(*n.rows);
            } else if (a.format == "json") {
                ext = ".json";
                text = to_json_text(*n.rows);
            } else {
                ext = ".md";
                text = to_markdown(*n.rows, n.title);
            }
            write_file(fs::path(a.out_dir) / (std::string(n.name) + ext), text);
        }
        std::cout << "wrote table2, table3, table4 (" << a.format << ") to " << a.out_dir << "\n";
    }

    if (!a.diff) return kOk;
    const bool embedded = a.diff->empty() || *a.diff == "embedded";
    std::size_t mismatches = 0, rows = 0;
    for (const auto& n : tables) {
        std::vector<TableRow> reference;
        try {
            reference = parse_csv(embedded ? std::string(n.embedded)
                                           : read_file(fs::path(*a.diff) / (std::string(n.name) + ".csv")));
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const UsageError*>(&e)) throw;
            throw UsageError(std::string(n.name) + ": " + e.what());
        }
        const auto diff = diff_tables(*n.rows, reference);
        for (const auto& m : diff) std::cout << n.name << " MISMATCH " << m.str() << "\n";
        mismatches += diff.size();
        rows += n.rows->size();
    }
    if (mismatches) {
        std::cout << "tables: " << mismatches << " mismatching row(s) against "
                  << (embedded ? "embedded reference" : *a.diff) << "\n";
        return kMismatch;
    }
    std::cout << "tables: all " << rows << " rows match " << (embedded ? "embedded reference" : *a.diff) << "\n";
    return kOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& fault) {
    if (!fault.empty() && fault != "m1") throw UsageError("unknown fault '" + fault + "'");
    IntMat4 gen1 = m1();
    if (fault == "m1") gen1(1, 3) += 1;

    std::size_t total = 0, passed = 0;
    auto line = [&](bool ok, const std::string& what) {
        ++total;
        passed += ok;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
    };

    for (const auto& c : verify_identities(quintic_bases(), m0(quintic()), gen1)) line(c.pass, "identity: " + c.name);

    for (const auto& f : catalog())
        for (auto pv : default_primes()) {
            const auto r = verify_power_lemma(f, Prime(pv), m0(f), gen1);
            line(r.pass(), "power lemma " + f.tag() + " p=" + std::to_string(pv) + ": M0^" +
                               std::to_string(r.m0_exponent) + " = Id, M1^" + std::to_string(pv) + " = Id (mod p)");
        }

    for (const auto& f : catalog()) {
        bool ok = true;
        IntMat4 power = IntMat4::identity();
        for (std::uint64_t m = 1; m <= 50 && ok; ++m) {
            power = power * m0(f);
            ok = m0_power_closed_form(f, m) == power;
        }
        line(ok, "closed form " + f.tag() + ": M0^m for m = 1..50");
    }

    for (const auto& f : catalog()) {
        const IntMat4 g0 = m0(f);
        const auto forms = solve_invariant_skew_form({g0, gen1});
        bool ok = false;
        for (const auto& w : forms)
            if (w.nondegenerate() && w.preserved_by(g0) && w.preserved_by(gen1) &&
                w.preserved_by(mat_inverse(g0 * gen1)))
                ok = true;
        line(ok, "invariant skew form " + f.tag() + ": dim " + std::to_string(forms.size()) +
                     ", nondegenerate, preserved by M0, M1, M_inf");
    }

    std::cout << "verify: " << passed << "/" << total << " checks passed\n";
    return passed == total ? kOk : kMismatch;
}

// ---------------------------------------------------------------- screen

struct ScreenArgs {
    std::string vector;
    bool search = false;
    std::size_t max_len = 12;
    std::string max_entry = "1000000";
};

int cmd_screen(const ScreenArgs& a) {
    const IntVec4 v = parse_vector(a.vector);
    BigInt max_entry;
    try {
        max_entry = BigInt(a.max_entry);
    } catch (const std::exception&) {
        throw UsageError("malformed --max-entry '" + a.max_entry + "'");
    }
    const ScreenResult r = conjecture_screen_detail(v);
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "vector: " << v << "\n";
    std::cout << "mod 2: " << r.mod2 << "  torus list: " << yn(r.mod2_torus) << "  sphere list: " << yn(r.mod2_sphere)
              << "\n";
    std::cout << "mod 5: " << r.mod5 << "  torus list: " << yn(r.mod5_torus) << "  sphere list: " << yn(r.mod5_sphere)
              << "\n";
    std::cout << "verdict: " << to_string(r.verdict) << "\n";
    if (!a.search) return kOk;

    std::optional<IntVec4> seed;
    if (r.verdict == ConjectureVerdict::TorusCandidate) seed = delta2();
    if (r.verdict == ConjectureVerdict::SphereCandidate) seed = delta4();
    if (!seed) {
        std::cout << "search: skipped, no candidate seed for this verdict\n";
        return kOk;
    }
    if (max_entry < v.max_abs()) throw UsageError("--max-entry is smaller than the vector entries");
    const auto w = word_search(*seed, v, quintic(), a.max_len, max_entry);
    if (w)
        std::cout << "witness: " << seed->str() << " * " << w->str() << " = " << v << "\n";
    else
        std::cout << "witness: none within max-len " << a.max_len << ", max-entry " << a.max_entry
                  << " (not a disproof)\n";
    return kOk;
}

// ---------------------------------------------------------------- catalog

int cmd_catalog_dump() {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : catalog())
        arr.push_back({{"d", f.d}, {"k", f.k}, {"A", to_string(f.A)}, {"B", to_string(f.B)}, {"label", f.label}});
    std::cout << arr.dump(2) << "\n";
    return kOk;
}

// ---------------------------------------------------------------- pf

struct PfArgs {
    std::string family = "5,5";
    double tol = 1e-4;
    double local_tol = 1e-10;
    std::string base = "0.5+0.25i";
    double radius = 0.45;
    int min_steps = 2000;
};

int cmd_pf_check(const PfArgs& a) {
    static const std::regex re(R"(^\s*(\d+)\s*,\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(a.family, m, re)) throw UsageError("malformed --family '" + a.family + "', expected d,k");
    const FamilyParams f = require_family(std::stoi(m[1].str()), std::stoi(m[2].str()));
    if (!(a.tol > 0)) throw UsageError("--tol must be positive");
    if (!(a.radius > 0)) throw UsageError("--radius must be positive");

    pf::InvariantOptions opt;
    opt.tol = a.tol;
    opt.local_tol = a.local_tol;
    opt.base = parse_complex(a.base);
    opt.radius = a.radius;
    opt.min_steps = a.min_steps;

    pf::InvariantReport report;
    try {
        report = pf::compare_invariants(f, opt);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : report.loops) {
        nlohmann::json numeric = nlohmann::json::array(), integer = nlohmann::json::array();
        for (const auto& c : l.charpoly_numeric) numeric.push_back({c.real(), c.imag()});
        for (const auto& c : l.charpoly_integer) integer.push_back(c.convert_to<long long>());
        arr.push_back({{"family", f.tag()},
                       {"loop", l.loop},
                       {"charpoly_numeric", numeric},
                       {"charpoly_integer", integer},
                       {"matched", l.matched},
                       {"max_dev", l.max_dev},
                       {"err", l.err},
                       {"pass", l.pass}});
    }
    std::cout << arr.dump(2) << "\n";
    return report.pass() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monodromy orbits and invariants of hypergeometric Calabi-Yau families"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for table computation")->check(CLI::PositiveNumber);

    OrbitArgs orbit;
    auto* orbit_cmd = app.add_subcommand("orbit", "Orbit of a class modulo p");
    orbit_cmd->add_option("--d", orbit.d, "Family parameter d")->required();
    orbit_cmd->add_option("--k", orbit.k, "Family parameter k")->required();
    orbit_cmd->add_option("--p", orbit.p, "Prime modulus")->required();
    orbit_cmd->add_option("--seed", orbit.seed, "Seed class n1,n2,n3,n4")->required();
    orbit_cmd->add_option("--format", orbit.format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    orbit_cmd->add_flag("--all", orbit.all, "List members even when the orbit is complete");

    TablesArgs tables;
    auto* tables_cmd = app.add_subcommand("tables", "Orbit tables for all families");
    tables_cmd->add_option("--primes", tables.primes, "Primes to tabulate")->delimiter(',');
    tables_cmd->add_option("--out", tables.out_dir, "Output directory for table2/3/4");
    tables_cmd->add_option("--format", tables.format, "csv, json or md")->check(CLI::IsMember({"csv", "json", "md"}));
    tables_cmd
        ->add_option_function<std::string>(
            "--diff", [&](const std::string& dir) { tables.diff = dir; },
            "Compare with reference CSVs in DIR (or the embedded copy when DIR is omitted or 'embedded')")
        ->expected(0, 1);

    std::string fault;
    auto* verify_cmd = app.add_subcommand("verify", "Exact identity, power-lemma, closed-form and skew-form checks");
    verify_cmd->add_option("--fault-inject", fault, "Testing only: corrupt a generator (m1)")->group("");

    ScreenArgs screen;
    auto* screen_cmd = app.add_subcommand("screen", "Screen an integer class of the mirror quintic");
    screen_cmd->add_option("vector", screen.vector, "Class n1,n2,n3,n4")->required();
    screen_cmd->add_flag("--search", screen.search, "Search for a witness word from delta2 or delta4");
    screen_cmd->add_option("--max-len", screen.max_len, "Longest word (letters) explored");
    screen_cmd->add_option("--max-entry", screen.max_entry, "Prune classes with a larger entry");

    auto* catalog_cmd = app.add_subcommand("catalog", "Family catalog");
    catalog_cmd->require_subcommand(1);
    auto* dump_cmd = catalog_cmd->add_subcommand("dump", "Print the fourteen families as JSON");

    PfArgs pfa;
    auto* pf_cmd = app.add_subcommand("pf", "Numerical Picard-Fuchs monodromy");
    pf_cmd->require_subcommand(1);
    auto* check_cmd = pf_cmd->add_subcommand("check", "Compare numeric loop invariants with the integer matrices");
    check_cmd->add_option("--family", pfa.family, "Family d,k");
    check_cmd->add_option("--tol", pfa.tol, "Tolerance on characteristic polynomial coefficients");
    check_cmd->add_option("--local-tol", pfa.local_tol, "Integrator local tolerance");
    check_cmd->add_option("--base", pfa.base, "Base point, e.g. 0.5+0.25i");
    check_cmd->add_option("--radius", pfa.radius, "Loop radius");
    check_cmd->add_option("--min-steps", pfa.min_steps, "Minimum integration steps per loop");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*orbit_cmd) return cmd_orbit(orbit);
        if (*tables_cmd) return cmd_tables(tables, threads);
        if (*verify_cmd) return cmd_verify(fault);
        if (*screen_cmd) return cmd_screen(screen);
        if (*dump_cmd) return cmd_catalog_dump();
        if (*check_cmd) return cmd_pf_check(pfa);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return kMismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kUsage;
}
