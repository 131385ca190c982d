#pragma once

/**
 * @file family_catalog.hpp
 * @brief The fourteen one-parameter Calabi-Yau families and their monodromy.
 *
 * Each family is labelled by (d, k), which fixes the monodromy around the
 * point of maximal unipotency,
 *
 *     M0 = [[1, 1, 0, 0], [0, 1, 0, 0], [d, d, 1, 0], [0, -k, -1, 1]],
 *
 * and by the exponents (A, B) of its hypergeometric Picard-Fuchs operator
 *
 *     theta^4 - phi (theta + A)(theta + 1 - A)(theta + B)(theta + 1 - B).
 *
 * The conifold monodromy M1 = Id + E(2,4) is shared by all families and
 * M_inf = (M0 M1)^-1. The catalog is compiled in.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cymono/int_matrix.hpp"
#include "cymono/residue.hpp"

namespace cymono {

struct FamilyParams {
    int d = 0;
    int k = 0;
    Rational A;
    Rational B;
    std::string label;  // A-model complete intersection

    /// "(d,k)".
    std::string tag() const { return "(" + std::to_string(d) + "," + std::to_string(k) + ")"; }

    friend bool operator==(const FamilyParams& a, const FamilyParams& b) {
        return a.d == b.d && a.k == b.k && a.A == b.A && a.B == b.B && a.label == b.label;
    }
};

namespace detail {

inline FamilyParams make_family(int d, int k, long an, long ad, long bn, long bd, std::string label) {
    Rational a(an, ad), b(bn, bd);
    if (b < a) std::swap(a, b);
    return {d, k, a, b, std::move(label)};
}

}  // namespace detail

/// The fourteen families, in the order of the published table.
inline const std::vector<FamilyParams>& catalog() {
    using detail::make_family;
    static const std::vector<FamilyParams> families{
        make_family(5, 5, 1, 5, 2, 5, "X(5) ⊂ P^4"),
        make_family(2, 4, 1, 8, 3, 8, "X(8) ⊂ P^4(1,1,1,1,4)"),
        make_family(1, 4, 1, 12, 5, 12, "X(2,12) ⊂ P^5(1,1,1,1,4,6)"),
        make_family(16, 8, 1, 2, 1, 2, "X(2,2,2,2) ⊂ P^7"),
        make_family(12, 7, 1, 3, 1, 2, "X(2,2,3) ⊂ P^6"),
        make_family(8, 6, 1, 4, 1, 2, "X(2,4) ⊂ P^5"),
        make_family(4, 5, 1, 6, 1, 2, "X(2,6) ⊂ P^5(1,1,1,1,1,3)"),
        make_family(2, 3, 1, 4, 1, 3, "X(4,6) ⊂ P^5(1,1,1,2,2,3)"),
        make_family(1, 2, 1, 6, 1, 6, "X(6,6) ⊂ P^5(1,1,2,2,3,3)"),
        make_family(6, 5, 1, 6, 1, 4, "X(3,4) ⊂ P^5(1,1,1,1,1,2)"),
        make_family(3, 4, 1, 6, 1, 3, "X(6) ⊂ P^4(1,1,1,1,2)"),
        make_family(1, 3, 1, 10, 3, 10, "X(5) ⊂ P^4(1,1,1,2,5)"),
        make_family(4, 4, 1, 4, 1, 4, "X(4,4) ⊂ P^5(1,1,1,1,2,2)"),
        make_family(9, 6, 1, 3, 1, 3, "X(3,3) ⊂ P^5"),
    };
    return families;
}

inline std::optional<FamilyParams> find_family(int d, int k) {
    for (const auto& f : catalog())
        if (f.d == d && f.k == k) return f;
    return std::nullopt;
}

/// The mirror quintic, (d, k) = (5, 5).
inline const FamilyParams& quintic() { return catalog().front(); }

inline IntMat4 m0(const FamilyParams& f) {
    const long long d = f.d, k = f.k;
    return IntMat4{{1, 1, 0, 0}, {0, 1, 0, 0}, {d, d, 1, 0}, {0, -k, -1, 1}};
}

inline IntMat4 m1() { return IntMat4::identity() + IntMat4::unit(1, 3); }

inline IntMat4 m_infinity(const FamilyParams& f) { return mat_inverse(m0(f) * m1()); }

/// M0^m from the closed form
///   [[1, m, 0, 0], [0, 1, 0, 0], [d m, a_m, 1, 0], [b_m, c_m, -m, 1]]
/// with a_m = d m(m+1)/2, b_m = d m(1-m)/2, c_m = d m(1-m^2)/6 - k m.
inline IntMat4 m0_power_closed_form(const FamilyParams& f, std::uint64_t m) {
    const BigInt mm = m;
    const BigInt d = f.d, k = f.k;
    // m(m+1), m(1-m) are even and m(1-m^2) = (m-1)m(m+1) * -1 is divisible by 6;
    // divide before scaling by d so every intermediate stays integral.
    const BigInt a_m = d * (mm * (mm + 1) / 2);
    const BigInt b_m = d * (mm * (1 - mm) / 2);
    const BigInt c_m = d * (mm * (1 - mm * mm) / 6) - k * mm;
    IntMat4 r = IntMat4::identity();
    r(0, 1) = mm;
    r(2, 0) = d * mm;
    r(2, 1) = a_m;
    r(3, 0) = b_m;
    r(3, 1) = c_m;
    r(3, 2) = -mm;
    return r;
}

/// Matrices relating the (M0, M1) basis to two other bases used in the
/// literature for the quintic.
struct QuinticBases {
    IntMat4 T0, T1;    // conjugates of M0, M1 via P
    IntMat4 P;
    IntMat4 S1, Sinf;  // monodromy in the psi = phi^(-1/5) coordinate
    IntMat4 M;         // change of basis with M^-1 S1 M = M1
};

inline QuinticBases quintic_bases() {
    return {
        IntMat4{{1, 1, 0, 0}, {0, 1, 5, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}},
        IntMat4{{1, 0, 0, 0}, {-5, 1, 0, 0}, {-1, 0, 1, 0}, {-1, 0, 0, 1}},
        IntMat4{{0, 0, 0, -1}, {0, 5, 1, 0}, {1, 1, 0, 0}, {0, 1, 0, 0}},
        IntMat4{{1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}},
        IntMat4{{51, 90, -25, 0}, {0, 1, 0, 0}, {100, 175, -49, 0}, {-75, -125, 35, 1}},
        IntMat4{{3, 0, 1, 0}, {0, 1, 0, 0}, {5, 0, 2, 0}, {0, 0, 0, 1}},
    };
}

struct CheckResult {
    std::string name;
    bool pass = false;
};

using CheckReport = std::vector<CheckResult>;

inline bool all_pass(const CheckReport& report) {
    for (const auto& c : report)
        if (!c.pass) return false;
    return true;
}

/// Exact conjugation identities between the bases, against the given M0, M1
/// of the quintic. Never throws; a non-invertible P or M fails its checks.
inline CheckReport verify_identities(const QuinticBases& b, const IntMat4& quintic_m0, const IntMat4& quintic_m1) {
    CheckReport report;
    auto conj = [](const IntMat4& by, const IntMat4& x) -> std::optional<IntMat4> {
        if (const BigInt dt = det(by); dt != 1 && dt != -1) return std::nullopt;
        return mat_inverse(by) * x * by;
    };
    auto check = [&](std::string name, const std::optional<IntMat4>& lhs, const IntMat4& rhs) {
        report.push_back({std::move(name), lhs.has_value() && *lhs == rhs});
    };
    check("P^-1 T0 P = M0", conj(b.P, b.T0), quintic_m0);
    check("P^-1 T1 P = M1", conj(b.P, b.T1), quintic_m1);
    check("M^-1 S1 M = M1", conj(b.M, b.S1), quintic_m1);
    check("M^-1 Sinf M = M0^5", conj(b.M, b.Sinf), mat_pow(quintic_m0, 5));

    const IntVec4 delta2{0, 1, 0, 0}, delta4{0, 0, 0, 1};
    report.push_back({"delta2 M = delta2", delta2 * b.M == delta2});
    report.push_back({"delta4 M = delta4", delta4 * b.M == delta4});
    return report;
}

inline CheckReport verify_identities() { return verify_identities(quintic_bases(), m0(quintic()), m1()); }

/// Exponent e with M0^e = Id mod p: 4 for p = 2, 9 for p = 3, p otherwise.
inline std::uint64_t power_lemma_exponent(Prime p) {
    if (p.value() == 2) return 4;
    if (p.value() == 3) return 9;
    return p.value();
}

struct PowerLemmaResult {
    int d = 0, k = 0;
    std::uint64_t p = 0;
    std::uint64_t m0_exponent = 0;
    bool m0_pass = false;  // M0^e = Id (mod p)
    bool m1_pass = false;  // M1^p = Id (mod p)
    bool pass() const { return m0_pass && m1_pass; }
};

inline PowerLemmaResult verify_power_lemma(const FamilyParams& f, Prime p, const IntMat4& gen0, const IntMat4& gen1) {
    const auto e = power_lemma_exponent(p);
    const ResidueMat4 id = ResidueMat4::identity(p);
    return {f.d, f.k, p.value(), e, reduce_mod(mat_pow(gen0, e), p) == id, reduce_mod(mat_pow(gen1, p.value()), p) == id};
}

inline PowerLemmaResult verify_power_lemma(const FamilyParams& f, Prime p) { return verify_power_lemma(f, p, m0(f), m1()); }

}  // namespace cymono
