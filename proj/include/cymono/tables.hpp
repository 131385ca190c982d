#pragma once

/**
 * @file tables.hpp
 * @brief Orbit tables for all families: construction, serialization and
 *        comparison against reference transcriptions.
 *
 * Three tables are produced per run: orbits of delta2 ("table3"), orbits of
 * delta4 ("table4") and their union ("table2"). A row is either Complete
 * (all p^4 - 1 nonzero vectors) or Listed with its sorted vectors.
 *
 * CSV schema, one vector per line, empty vector column for Complete rows:
 *
 *     d,k,p,seed_tag,status,vector
 *     5,5,2,delta2,Listed,0 0 1 1
 *     5,5,3,delta2,Complete,
 */

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "cymono/orbit.hpp"

namespace cymono {

enum class SeedTag { Delta2, Delta4, Union };
enum class RowStatus { Listed, Complete };

inline std::string to_string(SeedTag t) {
    switch (t) {
        case SeedTag::Delta2: return "delta2";
        case SeedTag::Delta4: return "delta4";
        case SeedTag::Union: return "union";
    }
    return "?";
}

inline std::string to_string(RowStatus s) { return s == RowStatus::Complete ? "Complete" : "Listed"; }

inline SeedTag parse_seed_tag(const std::string& s) {
    if (s == "delta2") return SeedTag::Delta2;
    if (s == "delta4") return SeedTag::Delta4;
    if (s == "union") return SeedTag::Union;
    throw std::invalid_argument("unknown seed tag '" + s + "'");
}

inline RowStatus parse_status(const std::string& s) {
    if (s == "Listed") return RowStatus::Listed;
    if (s == "Complete") return RowStatus::Complete;
    throw std::invalid_argument("unknown row status '" + s + "'");
}

/// Orbit entries are kept as plain residues; the prime is stored per row.
using Residues = std::array<std::uint32_t, 4>;

struct TableRow {
    int d = 0, k = 0;
    std::uint64_t p = 0;
    SeedTag seed = SeedTag::Delta2;
    RowStatus status = RowStatus::Listed;
    std::vector<Residues> vectors;  // sorted; empty when Complete

    using Key = std::tuple<int, int, std::uint64_t, SeedTag>;
    Key key() const { return {d, k, p, seed}; }

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

inline TableRow make_row(const FamilyParams& f, Prime p, SeedTag tag, const std::vector<ResidueVec4>& members) {
    TableRow row{f.d, f.k, p.value(), tag, RowStatus::Listed, {}};
    if (is_complete(members, p)) {
        row.status = RowStatus::Complete;
        return row;
    }
    row.vectors.reserve(members.size());
    for (const auto& v : members) row.vectors.push_back(v.entries());
    return row;
}

struct OrbitTables {
    std::vector<TableRow> union_rows;   // table2
    std::vector<TableRow> delta2_rows;  // table3
    std::vector<TableRow> delta4_rows;  // table4
};

/// The nine primes tabulated for every family.
inline const std::vector<std::uint64_t>& default_primes() {
    static const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23};
    return primes;
}

/// Rows for every family x prime, in catalog order then ascending prime.
/// Independent (family, prime) jobs are spread over `threads` workers; the
/// output order does not depend on scheduling.
inline OrbitTables compute_tables(const std::vector<FamilyParams>& families, std::vector<std::uint64_t> primes,
                                  unsigned threads = 1) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<Prime> ps;
    for (auto p : primes) ps.emplace_back(p);

    const std::size_t jobs = families.size() * ps.size();
    std::vector<std::array<TableRow, 3>> results(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs; j = next++) {
            const FamilyParams& f = families[j / ps.size()];
            const Prime p = ps[j % ps.size()];
            const OrbitSet o2 = orbit_mod_p(delta2(), p, f);
            const OrbitSet o4 = orbit_mod_p(delta4(), p, f);
            results[j] = {make_row(f, p, SeedTag::Union, orbit_union(o2, o4)),
                          make_row(f, p, SeedTag::Delta2, o2.members), make_row(f, p, SeedTag::Delta4, o4.members)};
        }
    };
    threads = std::max(1U, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    OrbitTables out;
    for (auto& r : results) {
        out.union_rows.push_back(std::move(r[0]));
        out.delta2_rows.push_back(std::move(r[1]));
        out.delta4_rows.push_back(std::move(r[2]));
    }
    return out;
}

inline std::string vector_text(const Residues& v) {
    return std::to_string(v[0]) + " " + std::to_string(v[1]) + " " + std::to_string(v[2]) + " " + std::to_string(v[3]);
}

inline std::string to_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "d,k,p,seed_tag,status,vector\n";
    for (const auto& r : rows) {
        const std::string prefix = std::to_string(r.d) + "," + std::to_string(r.k) + "," + std::to_string(r.p) + "," +
                                   to_string(r.seed) + "," + to_string(r.status) + ",";
        if (r.status == RowStatus::Complete) {
            os << prefix << "\n";
            continue;
        }
        for (const auto& v : r.vectors) os << prefix << vector_text(v) << "\n";
    }
    return os.str();
}

inline nlohmann::json to_json(const TableRow& r) {
    nlohmann::json vectors = nlohmann::json::array();
    for (const auto& v : r.vectors) vectors.push_back(v);
    return {{"d", r.d},
            {"k", r.k},
            {"p", r.p},
            {"seed_tag", to_string(r.seed)},
            {"status", to_string(r.status)},
            {"vectors", std::move(vectors)}};
}

inline std::string to_json_text(const std::vector<TableRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

/// One table line per (family, prime), vectors written "(0 1 0 0)".
inline std::string to_markdown(const std::vector<TableRow>& rows, const std::string& title) {
    std::ostringstream os;
    os << "## " << title << "\n\n| (d,k) | Prime | Orbit |\n|---|---|---|\n";
    for (const auto& r : rows) {
        os << "| (" << r.d << "," << r.k << ") | p=" << r.p << " | ";
        if (r.status == RowStatus::Complete) {
            os << "Complete";
        } else {
            for (std::size_t i = 0; i < r.vectors.size(); ++i) os << (i ? ", (" : "(") << vector_text(r.vectors[i]) << ")";
        }
        os << " |\n";
    }
    return os.str();
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

/// Parses the CSV schema above. Rows are assembled from consecutive lines
/// sharing (d, k, p, seed_tag); vectors are sorted on load.
/// @throws std::runtime_error naming the offending line.
inline std::vector<TableRow> parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<TableRow> rows;
    auto fail = [&](const std::string& why) {
        throw std::runtime_error("table csv line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != "d,k,p,seed_tag,status,vector") fail("unexpected header");
            continue;
        }
        const auto cols = detail::split(line, ',');
        if (cols.size() != 6) fail("expected 6 columns");
        TableRow row;
        try {
            row.d = std::stoi(cols[0]);
            row.k = std::stoi(cols[1]);
            row.p = std::stoull(cols[2]);
            row.seed = parse_seed_tag(cols[3]);
            row.status = parse_status(cols[4]);
        } catch (const std::exception& e) {
            fail(e.what());
        }
        if (row.status == RowStatus::Listed) {
            std::istringstream vs(cols[5]);
            Residues v{};
            for (auto& x : v)
                if (!(vs >> x)) fail("malformed vector '" + cols[5] + "'");
            std::string extra;
            if (vs >> extra) fail("malformed vector '" + cols[5] + "'");
            for (auto x : v)
                if (x >= row.p) fail("vector entry out of range for p = " + std::to_string(row.p));
            row.vectors.push_back(v);
        } else if (!cols[5].empty()) {
            fail("Complete row carries a vector");
        }

        if (!rows.empty() && rows.back().key() == row.key()) {
            if (rows.back().status != row.status) fail("mixed status within one row");
            if (row.status == RowStatus::Complete) fail("duplicate Complete row");
            rows.back().vectors.push_back(row.vectors.front());
        } else {
            rows.push_back(std::move(row));
        }
    }
    for (auto& r : rows) std::sort(r.vectors.begin(), r.vectors.end());
    return rows;
}

struct TableMismatch {
    TableRow::Key key;
    std::string what;

    std::string str() const {
        const auto& [d, k, p, tag] = key;
        return "(" + std::to_string(d) + "," + std::to_string(k) + ") p=" + std::to_string(p) + " " + to_string(tag) +
               ": " + what;
    }
};

/// Compares every computed row against the reference row with the same key.
/// Reference rows without a computed counterpart are ignored, so a run over
/// a subset of primes can still be checked.
inline std::vector<TableMismatch> diff_tables(const std::vector<TableRow>& computed,
                                              const std::vector<TableRow>& reference) {
    std::map<TableRow::Key, const TableRow*> ref;
    std::vector<TableMismatch> out;
    for (const auto& r : reference) {
        if (!ref.emplace(r.key(), &r).second) out.push_back({r.key(), "duplicate reference row"});
    }
    for (const auto& c : computed) {
        const auto it = ref.find(c.key());
        if (it == ref.end()) {
            out.push_back({c.key(), "missing from reference"});
            continue;
        }
        const TableRow& g = *it->second;
        if (c.status != g.status) {
            out.push_back({c.key(), "status " + to_string(c.status) + ", reference " + to_string(g.status)});
            continue;
        }
        if (c.vectors == g.vectors) continue;
        std::vector<Residues> extra, missing;
        std::set_difference(c.vectors.begin(), c.vectors.end(), g.vectors.begin(), g.vectors.end(),
                            std::back_inserter(extra));
        std::set_difference(g.vectors.begin(), g.vectors.end(), c.vectors.begin(), c.vectors.end(),
                            std::back_inserter(missing));
        std::string what = "orbit differs:";
        for (const auto& v : extra) what += " +(" + vector_text(v) + ")";
        for (const auto& v : missing) what += " -(" + vector_text(v) + ")";
        out.push_back({c.key(), what});
    }
    return out;
}

}  // namespace cymono
