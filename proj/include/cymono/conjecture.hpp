#pragma once

// Screening of integer homology classes of the mirror quintic against the
// mod 2 / mod 5 orbit criterion for Lagrangian tori and spheres.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cymono/orbit.hpp"

namespace cymono {

/// gcd(|n1|, ..., |n4|) == 1.
inline bool primitive(const IntVec4& v) {
    BigInt g = 0;
    for (const auto& x : v.components()) g = gcd(g, x);
    return g == 1;
}

enum class ConjectureVerdict { TorusCandidate, SphereCandidate, Neither, NotPrimitive, Zero };

inline std::string_view to_string(ConjectureVerdict v) {
    switch (v) {
        case ConjectureVerdict::TorusCandidate: return "TorusCandidate";
        case ConjectureVerdict::SphereCandidate: return "SphereCandidate";
        case ConjectureVerdict::Neither: return "Neither";
        case ConjectureVerdict::NotPrimitive: return "NotPrimitive";
        case ConjectureVerdict::Zero: return "Zero";
    }
    return "?";
}

struct ScreenResult {
    ConjectureVerdict verdict = ConjectureVerdict::Zero;
    ResidueVec4 mod2{Prime(2)};
    ResidueVec4 mod5{Prime(5)};
    bool mod2_torus = false;   // mod2 in orb_2(delta2)
    bool mod5_torus = false;   // mod5 in orb_5(delta2)
    bool mod2_sphere = false;  // mod2 in orb_2(delta4)
    bool mod5_sphere = false;  // mod5 in orb_5(delta4)
};

namespace golden {

// Reference copies of the four quintic orbit lists. The screen regenerates
// the lists and refuses to start when they disagree with these.
inline std::vector<ResidueVec4> vectors(std::initializer_list<ResidueVec4::Entries> rows, unsigned p) {
    std::vector<ResidueVec4> out;
    for (const auto& r : rows) out.emplace_back(r, Prime(p));
    return out;
}

inline std::vector<ResidueVec4> torus_mod2() {
    return vectors({{0, 0, 1, 1}, {0, 1, 0, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {1, 0, 1, 1}}, 2);
}

inline std::vector<ResidueVec4> torus_mod5() {
    std::vector<ResidueVec4> out;
    for (std::uint32_t a = 0; a < 5; ++a)
        for (std::uint32_t b = 0; b < 5; ++b) out.emplace_back(ResidueVec4::Entries{0, 1, a, b}, Prime(5));
    return out;
}

inline std::vector<ResidueVec4> sphere_mod2() {
    return vectors({{0, 0, 0, 1},
                    {0, 0, 1, 0},
                    {0, 1, 1, 0},
                    {0, 1, 1, 1},
                    {1, 0, 0, 0},
                    {1, 0, 1, 0},
                    {1, 1, 0, 0},
                    {1, 1, 0, 1},
                    {1, 1, 1, 0},
                    {1, 1, 1, 1}},
                   2);
}

inline std::vector<ResidueVec4> sphere_mod5() {
    return vectors({{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 0, 2, 1}, {0, 0, 3, 1}, {0, 0, 4, 1}}, 5);
}

}  // namespace golden

/// The four quintic orbit lists: orb_2 and orb_5 of delta2 (torus side) and
/// of delta4 (sphere side).
struct ScreenLists {
    OrbitSet torus_mod2, torus_mod5, sphere_mod2, sphere_mod5;
};

/// Recomputes the lists with orbit_mod_p for the quintic.
/// @throws std::logic_error when a regenerated list differs from its
///         reference copy.
inline ScreenLists regenerate_screen_lists() {
    const FamilyParams& f = quintic();
    ScreenLists lists{orbit_mod_p(delta2(), Prime(2), f), orbit_mod_p(delta2(), Prime(5), f),
                      orbit_mod_p(delta4(), Prime(2), f), orbit_mod_p(delta4(), Prime(5), f)};
    auto expect = [](const OrbitSet& got, const std::vector<ResidueVec4>& want, const char* name) {
        if (got.members != want)
            throw std::logic_error(std::string("regenerated orbit list ") + name + " disagrees with reference copy");
    };
    expect(lists.torus_mod2, golden::torus_mod2(), "orb_2(delta2)");
    expect(lists.torus_mod5, golden::torus_mod5(), "orb_5(delta2)");
    expect(lists.sphere_mod2, golden::sphere_mod2(), "orb_2(delta4)");
    expect(lists.sphere_mod5, golden::sphere_mod5(), "orb_5(delta4)");
    return lists;
}

/// Lists are built on first use; a mismatch surfaces as std::logic_error
/// from the first call.
inline const ScreenLists& screen_lists() {
    static const ScreenLists lists = regenerate_screen_lists();
    return lists;
}

inline ScreenResult conjecture_screen_detail(const IntVec4& v) {
    const auto& lists = screen_lists();
    ScreenResult r;
    r.mod2 = reduce_mod(v, Prime(2));
    r.mod5 = reduce_mod(v, Prime(5));
    r.mod2_torus = lists.torus_mod2.contains(r.mod2);
    r.mod5_torus = lists.torus_mod5.contains(r.mod5);
    r.mod2_sphere = lists.sphere_mod2.contains(r.mod2);
    r.mod5_sphere = lists.sphere_mod5.contains(r.mod5);
    if (v.is_zero())
        r.verdict = ConjectureVerdict::Zero;
    else if (!primitive(v))
        r.verdict = ConjectureVerdict::NotPrimitive;
    else if (r.mod2_torus && r.mod5_torus)
        r.verdict = ConjectureVerdict::TorusCandidate;
    else if (r.mod2_sphere && r.mod5_sphere)
        r.verdict = ConjectureVerdict::SphereCandidate;
    else
        r.verdict = ConjectureVerdict::Neither;
    return r;
}

inline ConjectureVerdict conjecture_screen(const IntVec4& v) { return conjecture_screen_detail(v).verdict; }

}  // namespace cymono
