#pragma once

/**
 * @file orbit.hpp
 * @brief Orbits of homology classes modulo p under the monodromy group.
 *
 * The group generated by M0 and M1 acts on (Z/pZ)^4 by v -> v G. Both
 * generators are bijections of a finite set, so the smallest set containing
 * the seed and closed under v -> v M0 and v -> v M1 is already the full group
 * orbit; inverses never need to be applied.
 */

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <stdexcept>
#include <vector>

#include "cymono/family_catalog.hpp"
#include "cymono/residue.hpp"

namespace cymono {

struct OrbitSet {
    FamilyParams family;
    Prime p;
    IntVec4 seed;
    std::vector<ResidueVec4> members;  // ascending lexicographic order

    std::size_t size() const { return members.size(); }
    bool contains(const ResidueVec4& v) const { return std::binary_search(members.begin(), members.end(), v); }
};

namespace detail {

// Largest prime whose residue space (p^4 points) we are willing to index
// with a dense bitmap.
inline constexpr std::uint64_t kMaxOrbitPrime = 251;

inline std::uint64_t space_size(Prime p) {
    if (p.value() > kMaxOrbitPrime)
        throw std::out_of_range("orbit enumeration supports p <= " + std::to_string(kMaxOrbitPrime));
    const std::uint64_t q = p.value();
    return q * q * q * q;
}

inline std::vector<ResidueVec4> sorted_members(const std::vector<std::uint64_t>& keys, Prime p) {
    std::vector<ResidueVec4> out;
    out.reserve(keys.size());
    for (auto key : keys) out.push_back(ResidueVec4::unpack(key, p));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Closure of {seed} under right multiplication by each generator, sorted.
inline std::vector<ResidueVec4> orbit_closure(const ResidueVec4& seed, std::span<const ResidueMat4> generators) {
    const Prime p = seed.modulus();
    std::vector<bool> seen(detail::space_size(p), false);
    std::vector<std::uint64_t> found{seed.pack()};
    seen[seed.pack()] = true;
    std::vector<ResidueVec4> frontier{seed};
    while (!frontier.empty()) {
        const ResidueVec4 w = frontier.back();
        frontier.pop_back();
        for (const auto& g : generators) {
            const ResidueVec4 image = w * g;
            const auto key = image.pack();
            if (seen[key]) continue;
            seen[key] = true;
            found.push_back(key);
            frontier.push_back(image);
        }
    }
    return detail::sorted_members(found, p);
}

inline OrbitSet orbit_mod_p(const IntVec4& seed, Prime p, const FamilyParams& f) {
    const ResidueMat4 gens[] = {reduce_mod(m0(f), p), reduce_mod(m1(), p)};
    return {f, p, seed, orbit_closure(reduce_mod(seed, p), gens)};
}

/// The fixpoint iteration over all products M1^j M0^i with 0 <= i, j <= p:
/// every pass maps each vector known at the start of the pass through the
/// (p+1)^2 products and appends the new images, until a pass adds nothing.
/// Slower than orbit_mod_p; kept as an independent route to the same set.
inline OrbitSet orbit_mod_p_power_loop(const IntVec4& seed, Prime p, const FamilyParams& f) {
    const ResidueMat4 g0 = reduce_mod(m0(f), p), g1 = reduce_mod(m1(), p);
    std::vector<ResidueMat4> words;
    ResidueMat4 g1_pow = ResidueMat4::identity(p);
    for (std::uint64_t j = 0; j <= p.value(); ++j) {
        ResidueMat4 w = g1_pow;
        for (std::uint64_t i = 0; i <= p.value(); ++i) {
            words.push_back(w);
            w = w * g0;
        }
        g1_pow = g1_pow * g1;
    }

    std::vector<bool> seen(detail::space_size(p), false);
    std::vector<ResidueVec4> orb{reduce_mod(seed, p)};
    seen[orb.front().pack()] = true;
    std::size_t grown = 1;
    while (grown > 0) {
        const std::vector<ResidueVec4> snapshot = orb;
        for (const auto& w : snapshot)
            for (const auto& word : words) {
                const ResidueVec4 image = w * word;
                if (seen[image.pack()]) continue;
                seen[image.pack()] = true;
                orb.push_back(image);
            }
        grown = orb.size() - snapshot.size();
    }
    std::sort(orb.begin(), orb.end());
    return {f, p, seed, std::move(orb)};
}

/// Number of nonzero vectors in (Z/pZ)^4.
inline std::uint64_t nonzero_count(Prime p) {
    const std::uint64_t q = p.value();
    return q * q * q * q - 1;
}

/// True iff the orbit is all of (Z/pZ)^4 minus the origin.
inline bool is_complete(std::span<const ResidueVec4> members, Prime p) {
    if (members.size() != nonzero_count(p)) return false;
    return std::none_of(members.begin(), members.end(), [](const ResidueVec4& v) { return v.is_zero(); });
}

inline bool is_complete(const OrbitSet& o) { return is_complete(o.members, o.p); }

/// Sorted union of two orbits of the same family and prime.
/// @throws std::invalid_argument on mismatched prime or family.
inline std::vector<ResidueVec4> orbit_union(const OrbitSet& a, const OrbitSet& b) {
    if (a.p != b.p) throw std::invalid_argument("orbit_union: orbits are modulo different primes");
    if (!(a.family == b.family)) throw std::invalid_argument("orbit_union: orbits belong to different families");
    std::vector<ResidueVec4> out;
    out.reserve(a.members.size() + b.members.size());
    std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(), std::back_inserter(out));
    return out;
}

/// delta_2 = (0 1 0 0), the class of the vanishing torus.
inline IntVec4 delta2() { return {0, 1, 0, 0}; }
/// delta_4 = (0 0 0 1), the class of the vanishing sphere.
inline IntVec4 delta4() { return {0, 0, 0, 1}; }

}  // namespace cymono
