#pragma once

// Vectors and matrices over Z/pZ in the least non-negative residue system.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cymono/int_matrix.hpp"

namespace cymono {

/// A prime modulus. Construction runs a deterministic trial-division test.
class Prime {
public:
    // Keeps products of two residues plus a 4-term sum inside 64 bits.
    static constexpr std::uint64_t kMax = (std::uint64_t{1} << 31) - 1;

    explicit Prime(std::uint64_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        if (p > kMax) throw std::out_of_range("prime " + std::to_string(p) + " exceeds supported modulus range");
    }

    std::uint64_t value() const { return p_; }
    operator std::uint64_t() const { return p_; }

    friend bool operator==(Prime, Prime) = default;
    friend auto operator<=>(Prime, Prime) = default;

    static constexpr bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (std::uint64_t d = 3; d <= n / d; d += 2)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint64_t p_;
};

class ResidueVec4 {
public:
    using Entries = std::array<std::uint32_t, kDim>;

    explicit ResidueVec4(Prime p) : p_(p) {}
    ResidueVec4(Entries e, Prime p) : e_(e), p_(p) {
        for (auto x : e_)
            if (x >= p_.value()) throw std::out_of_range("residue entry outside [0, p)");
    }

    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    const Entries& entries() const { return e_; }
    Prime modulus() const { return p_; }

    bool is_zero() const { return e_ == Entries{}; }

    /// n1 + n2 p + n3 p^2 + n4 p^3.
    std::uint64_t pack() const {
        const std::uint64_t p = p_.value();
        return e_[0] + p * (e_[1] + p * (e_[2] + p * std::uint64_t{e_[3]}));
    }

    static ResidueVec4 unpack(std::uint64_t key, Prime p) {
        Entries e{};
        for (auto& x : e) {
            x = static_cast<std::uint32_t>(key % p.value());
            key /= p.value();
        }
        return {e, p};
    }

    friend bool operator==(const ResidueVec4&, const ResidueVec4&) = default;
    /// Lexicographic in (n1, n2, n3, n4); the modulus breaks ties last.
    friend std::strong_ordering operator<=>(const ResidueVec4& a, const ResidueVec4& b) {
        if (auto c = a.e_ <=> b.e_; c != 0) return c;
        return a.p_.value() <=> b.p_.value();
    }

    /// "(0 1 0 0)".
    std::string str() const {
        return "(" + std::to_string(e_[0]) + " " + std::to_string(e_[1]) + " " + std::to_string(e_[2]) + " " +
               std::to_string(e_[3]) + ")";
    }

private:
    Entries e_{};
    Prime p_;
};

inline std::ostream& operator<<(std::ostream& os, const ResidueVec4& v) { return os << v.str(); }

class ResidueMat4 {
public:
    explicit ResidueMat4(Prime p) : p_(p) {}

    static ResidueMat4 identity(Prime p) {
        ResidueMat4 m(p);
        for (std::size_t i = 0; i < kDim; ++i) m.e_[i * kDim + i] = 1;
        return m;
    }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return e_[r * kDim + c]; }
    void set(std::size_t r, std::size_t c, std::uint64_t value) {
        e_[r * kDim + c] = static_cast<std::uint32_t>(value % p_.value());
    }
    Prime modulus() const { return p_; }

    friend bool operator==(const ResidueMat4&, const ResidueMat4&) = default;

    friend ResidueMat4 operator*(const ResidueMat4& a, const ResidueMat4& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("residue matrices have different moduli");
        ResidueMat4 out(a.p_);
        for (std::size_t i = 0; i < kDim; ++i)
            for (std::size_t j = 0; j < kDim; ++j) {
                std::uint64_t s = 0;
                for (std::size_t k = 0; k < kDim; ++k) s += std::uint64_t{a(i, k)} * b(k, j);
                out.set(i, j, s);
            }
        return out;
    }

private:
    std::array<std::uint32_t, kDim * kDim> e_{};
    Prime p_;
};

/// Right action v * a over Z/pZ.
/// @throws std::invalid_argument when the moduli differ.
inline ResidueVec4 vec_mul_mat(const ResidueVec4& v, const ResidueMat4& a) {
    if (v.modulus() != a.modulus()) throw std::invalid_argument("vector and matrix have different moduli");
    const std::uint64_t p = v.modulus().value();
    ResidueVec4::Entries out{};
    for (std::size_t j = 0; j < kDim; ++j) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < kDim; ++i) s += std::uint64_t{v[i]} * a(i, j);
        out[j] = static_cast<std::uint32_t>(s % p);
    }
    return {out, v.modulus()};
}

inline ResidueVec4 operator*(const ResidueVec4& v, const ResidueMat4& a) { return vec_mul_mat(v, a); }

inline std::uint64_t reduce_mod(const BigInt& x, Prime p) {
    BigInt r = x % p.value();
    if (r < 0) r += p.value();
    return static_cast<std::uint64_t>(r);
}

inline ResidueVec4 reduce_mod(const IntVec4& v, Prime p) {
    ResidueVec4::Entries e{};
    for (std::size_t i = 0; i < kDim; ++i) e[i] = static_cast<std::uint32_t>(reduce_mod(v[i], p));
    return {e, p};
}

inline ResidueMat4 reduce_mod(const IntMat4& a, Prime p) {
    ResidueMat4 m(p);
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) m.set(i, j, reduce_mod(a(i, j), p));
    return m;
}

/// Lifts a residue vector to its least non-negative integer representative.
inline IntVec4 lift(const ResidueVec4& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace cymono
