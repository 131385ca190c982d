#pragma once

/**
 * @file int_matrix.hpp
 * @brief Exact 4x4 integer matrices and row vectors.
 *
 * All arithmetic is carried out with arbitrary-precision integers, so powers
 * and long words in the monodromy generators never overflow.
 *
 * Convention: vectors are rows and matrices act on the right, v -> v * A.
 * A homology class n1*d1 + ... + n4*d4 is the row (n1 n2 n3 n4).
 */

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cymono/integer.hpp"

namespace cymono {

inline constexpr std::size_t kDim = 4;

class IntVec4 {
public:
    IntVec4() = default;
    IntVec4(BigInt n1, BigInt n2, BigInt n3, BigInt n4)
        : c_{std::move(n1), std::move(n2), std::move(n3), std::move(n4)} {}

    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    BigInt& operator[](std::size_t i) { return c_[i]; }

    const std::array<BigInt, kDim>& components() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// Largest |n_i|.
    BigInt max_abs() const {
        BigInt m = 0;
        for (const auto& x : c_) {
            BigInt a = abs_value(x);
            if (a > m) m = a;
        }
        return m;
    }

    friend bool operator==(const IntVec4&, const IntVec4&) = default;
    friend std::strong_ordering operator<=>(const IntVec4& a, const IntVec4& b) {
        for (std::size_t i = 0; i < kDim; ++i) {
            if (a.c_[i] < b.c_[i]) return std::strong_ordering::less;
            if (b.c_[i] < a.c_[i]) return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    /// Space separated, parenthesised: "(0 1 0 0)".
    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < kDim; ++i) {
            if (i) s += ' ';
            s += c_[i].str();
        }
        return s + ")";
    }

private:
    std::array<BigInt, kDim> c_{};
};

inline std::ostream& operator<<(std::ostream& os, const IntVec4& v) { return os << v.str(); }

class IntMat4 {
public:
    IntMat4() = default;

    /// Row-major literal: IntMat4{{1,1,0,0},{0,1,0,0},...}.
    IntMat4(std::initializer_list<std::initializer_list<long long>> rows) {
        if (rows.size() != kDim) throw std::invalid_argument("IntMat4 needs 4 rows");
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != kDim) throw std::invalid_argument("IntMat4 needs 4 columns");
            std::size_t c = 0;
            for (long long x : row) e_[r * kDim + c++] = x;
            ++r;
        }
    }

    static IntMat4 identity() {
        IntMat4 m;
        for (std::size_t i = 0; i < kDim; ++i) m(i, i) = 1;
        return m;
    }

    /// Matrix unit E(i,j), zero-based.
    static IntMat4 unit(std::size_t i, std::size_t j) {
        IntMat4 m;
        m(i, j) = 1;
        return m;
    }

    const BigInt& operator()(std::size_t r, std::size_t c) const { return e_[r * kDim + c]; }
    BigInt& operator()(std::size_t r, std::size_t c) { return e_[r * kDim + c]; }

    IntVec4 row(std::size_t r) const {
        return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2), (*this)(r, 3)};
    }

    friend bool operator==(const IntMat4&, const IntMat4&) = default;

    IntMat4& operator+=(const IntMat4& o) {
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
        return *this;
    }
    IntMat4& operator-=(const IntMat4& o) {
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
        return *this;
    }
    friend IntMat4 operator+(IntMat4 a, const IntMat4& b) { return a += b; }
    friend IntMat4 operator-(IntMat4 a, const IntMat4& b) { return a -= b; }

    friend IntMat4 operator*(const IntMat4& a, const IntMat4& b) {
        IntMat4 out;
        for (std::size_t i = 0; i < kDim; ++i)
            for (std::size_t k = 0; k < kDim; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < kDim; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend IntMat4 operator*(const BigInt& s, IntMat4 a) {
        for (auto& x : a.e_) x *= s;
        return a;
    }

    std::string str() const {
        std::string s;
        for (std::size_t r = 0; r < kDim; ++r) {
            s += r ? "\n[" : "[";
            for (std::size_t c = 0; c < kDim; ++c) {
                if (c) s += ' ';
                s += (*this)(r, c).str();
            }
            s += ']';
        }
        return s;
    }

private:
    std::array<BigInt, kDim * kDim> e_{};
};

inline std::ostream& operator<<(std::ostream& os, const IntMat4& m) { return os << m.str(); }

inline IntMat4 mat_mul(const IntMat4& a, const IntMat4& b) { return a * b; }

/// Binary exponentiation; a^0 = Id.
inline IntMat4 mat_pow(IntMat4 a, std::uint64_t m) {
    IntMat4 result = IntMat4::identity();
    while (m > 0) {
        if (m & 1U) result = result * a;
        m >>= 1U;
        if (m) a = a * a;
    }
    return result;
}

/// Right action v * a.
inline IntVec4 vec_mul_mat(const IntVec4& v, const IntMat4& a) {
    IntVec4 out;
    for (std::size_t i = 0; i < kDim; ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < kDim; ++j) out[j] += v[i] * a(i, j);
    }
    return out;
}

inline IntVec4 operator*(const IntVec4& v, const IntMat4& a) { return vec_mul_mat(v, a); }

inline IntMat4 transpose(const IntMat4& a) {
    IntMat4 t;
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) t(j, i) = a(i, j);
    return t;
}

inline BigInt trace(const IntMat4& a) {
    BigInt t = 0;
    for (std::size_t i = 0; i < kDim; ++i) t += a(i, i);
    return t;
}

namespace detail {

// 3x3 minor of a with row r and column c deleted.
inline BigInt minor3(const IntMat4& a, std::size_t r, std::size_t c) {
    std::array<std::size_t, 3> rs{}, cs{};
    for (std::size_t i = 0, k = 0; i < kDim; ++i)
        if (i != r) rs[k++] = i;
    for (std::size_t j = 0, k = 0; j < kDim; ++j)
        if (j != c) cs[k++] = j;
    auto m = [&](std::size_t i, std::size_t j) -> const BigInt& { return a(rs[i], cs[j]); };
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline BigInt cofactor(const IntMat4& a, std::size_t r, std::size_t c) {
    BigInt m = minor3(a, r, c);
    return ((r + c) % 2 == 0) ? m : BigInt(-m);
}

}  // namespace detail

/// Laplace expansion along the first row.
inline BigInt det(const IntMat4& a) {
    BigInt d = 0;
    for (std::size_t c = 0; c < kDim; ++c)
        if (a(0, c) != 0) d += a(0, c) * detail::cofactor(a, 0, c);
    return d;
}

/// Monic characteristic polynomial det(x*Id - a), coefficients ordered from
/// x^4 down to the constant term.
using IntCharpoly = std::array<BigInt, kDim + 1>;

/// Faddeev-LeVerrier recurrence; every division by k is exact over Z.
inline IntCharpoly charpoly(const IntMat4& a) {
    IntCharpoly c{};
    c[0] = 1;
    IntMat4 mk;  // M_0 = 0
    for (std::size_t k = 1; k <= kDim; ++k) {
        IntMat4 next = a * mk;
        for (std::size_t i = 0; i < kDim; ++i) next(i, i) += c[k - 1];
        mk = std::move(next);
        const BigInt t = trace(a * mk);
        c[k] = -t / static_cast<long>(k);
    }
    return c;
}

inline IntMat4 adjugate(const IntMat4& a) {
    IntMat4 adj;
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) adj(j, i) = detail::cofactor(a, i, j);
    return adj;
}

/// Exact inverse of a unimodular matrix.
/// @throws std::domain_error when det(a) is not +-1.
inline IntMat4 mat_inverse(const IntMat4& a) {
    const BigInt d = det(a);
    if (d != 1 && d != -1) throw std::domain_error("mat_inverse: matrix is not unimodular (det = " + d.str() + ")");
    IntMat4 inv = adjugate(a);
    if (d == -1) inv = BigInt(-1) * inv;
    return inv;
}

/// Rank over Q.
inline std::size_t rank(const IntMat4& a) {
    std::array<std::array<Rational, kDim>, kDim> m;
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) m[i][j] = Rational(a(i, j));
    std::size_t r = 0;
    for (std::size_t col = 0; col < kDim && r < kDim; ++col) {
        std::size_t piv = r;
        while (piv < kDim && m[piv][col] == 0) ++piv;
        if (piv == kDim) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < kDim; ++i) {
            if (m[i][col] == 0) continue;
            const Rational f = m[i][col] / m[r][col];
            for (std::size_t j = col; j < kDim; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace cymono
