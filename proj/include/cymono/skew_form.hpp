#pragma once

// Skew-symmetric bilinear forms preserved by a set of integer matrices.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cymono/int_matrix.hpp"

namespace cymono {

/// An integer matrix with transpose equal to its negative.
class SkewForm {
public:
    explicit SkewForm(IntMat4 omega) : omega_(std::move(omega)) {
        if (transpose(omega_) != BigInt(-1) * omega_) throw std::invalid_argument("SkewForm: matrix is not skew-symmetric");
    }

    const IntMat4& matrix() const { return omega_; }

    bool nondegenerate() const { return det(omega_) != 0; }

    /// G * Omega * G^T == Omega, i.e. the form (u, v) -> u Omega v^T is
    /// invariant under the right action v -> v G.
    bool preserved_by(const IntMat4& g) const { return g * omega_ * transpose(g) == omega_; }

    friend bool operator==(const SkewForm&, const SkewForm&) = default;

private:
    IntMat4 omega_;
};

namespace detail {

// Upper-triangular coordinates (i < j) of a 4x4 skew matrix.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kSkewSlots{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline IntMat4 skew_basis(std::size_t slot) {
    auto [i, j] = kSkewSlots[slot];
    IntMat4 e;
    e(i, j) = 1;
    e(j, i) = -1;
    return e;
}

// Basis of the right null space of `rows` (each row has `cols` entries),
// by reduction to reduced row echelon form over Q.
inline std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> rows, std::size_t cols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        const Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -rows[k][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Clears denominators, divides by the content and makes the first nonzero
// entry positive.
inline std::vector<BigInt> primitive_integer(const std::vector<Rational>& v) {
    BigInt den = 1;
    for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
    std::vector<BigInt> out;
    out.reserve(v.size());
    BigInt g = 0;
    for (const auto& x : v) {
        BigInt n = boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x));
        g = gcd(g, n);
        out.push_back(std::move(n));
    }
    if (g == 0) return out;
    BigInt sign = 1;
    for (const auto& n : out)
        if (n != 0) {
            sign = n < 0 ? -1 : 1;
            break;
        }
    for (auto& n : out) n = n / g * sign;
    return out;
}

}  // namespace detail

/// Basis of {Omega skew : G Omega G^T = Omega for every G in gens}, solved
/// over Q in the six upper-triangular unknowns and returned as primitive
/// integer matrices with positive leading nonzero entry (in the order
/// (1,2),(1,3),(1,4),(2,3),(2,4),(3,4)). An empty result is valid.
inline std::vector<SkewForm> solve_invariant_skew_form(std::span<const IntMat4> gens) {
    constexpr std::size_t n = detail::kSkewSlots.size();
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : gens) {
        const IntMat4 gt = transpose(g);
        std::array<IntMat4, n> images;
        for (std::size_t s = 0; s < n; ++s) {
            const IntMat4 e = detail::skew_basis(s);
            images[s] = g * e * gt - e;
        }
        for (std::size_t i = 0; i < kDim; ++i)
            for (std::size_t j = 0; j < kDim; ++j) {
                std::vector<Rational> row(n);
                bool any = false;
                for (std::size_t s = 0; s < n; ++s) {
                    row[s] = Rational(images[s](i, j));
                    any = any || images[s](i, j) != 0;
                }
                if (any) rows.push_back(std::move(row));
            }
    }

    std::vector<SkewForm> forms;
    for (const auto& v : detail::null_space(std::move(rows), n)) {
        const auto coeffs = detail::primitive_integer(v);
        IntMat4 omega;
        for (std::size_t s = 0; s < n; ++s) {
            auto [i, j] = detail::kSkewSlots[s];
            omega(i, j) = coeffs[s];
            omega(j, i) = -coeffs[s];
        }
        forms.emplace_back(std::move(omega));
    }
    return forms;
}

inline std::vector<SkewForm> solve_invariant_skew_form(std::initializer_list<IntMat4> gens) {
    return solve_invariant_skew_form(std::span<const IntMat4>(gens.begin(), gens.size()));
}

}  // namespace cymono
