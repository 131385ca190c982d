#pragma once

// Bounded breadth-first search for words in M0^{+-1}, M1^{+-1} carrying one
// integer class to another under the right action.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cymono/family_catalog.hpp"

namespace cymono {

enum class Generator { M0, M1 };

/// A freely reduced word, stored with run-length exponents. Tokens are
/// applied left to right: v * W = v * g1^e1 * g2^e2 * ...
class Word {
public:
    struct Token {
        Generator gen;
        int exponent;  // nonzero
        friend bool operator==(const Token&, const Token&) = default;
    };

    Word() = default;
    Word(std::initializer_list<Token> tokens) {
        for (const auto& t : tokens) append(t.gen, t.exponent);
    }

    /// Appends g^e, merging with the last run and cancelling to zero.
    void append(Generator g, int exponent) {
        if (exponent == 0) return;
        if (!tokens_.empty() && tokens_.back().gen == g) {
            tokens_.back().exponent += exponent;
            if (tokens_.back().exponent == 0) tokens_.pop_back();
            return;
        }
        tokens_.push_back({g, exponent});
    }

    const std::vector<Token>& tokens() const { return tokens_; }
    bool empty() const { return tokens_.empty(); }

    /// Number of letters, sum of |exponent|.
    std::size_t length() const {
        std::size_t n = 0;
        for (const auto& t : tokens_) n += static_cast<std::size_t>(t.exponent < 0 ? -t.exponent : t.exponent);
        return n;
    }

    /// Product of the tokens for the given family.
    IntMat4 matrix(const FamilyParams& f) const {
        const IntMat4 g0 = m0(f), g1 = m1();
        const IntMat4 g0i = mat_inverse(g0), g1i = mat_inverse(g1);
        IntMat4 out = IntMat4::identity();
        for (const auto& t : tokens_) {
            const IntMat4& base = t.gen == Generator::M0 ? (t.exponent > 0 ? g0 : g0i) : (t.exponent > 0 ? g1 : g1i);
            out = out * mat_pow(base, static_cast<std::uint64_t>(t.exponent < 0 ? -t.exponent : t.exponent));
        }
        return out;
    }

    /// "[M0^-1 M1 M0^2]"; the empty word is "[]".
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < tokens_.size(); ++i) {
            if (i) s += ' ';
            s += tokens_[i].gen == Generator::M0 ? "M0" : "M1";
            if (tokens_[i].exponent != 1) s += "^" + std::to_string(tokens_[i].exponent);
        }
        return s + "]";
    }

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Token> tokens_;
};

inline IntVec4 apply(const IntVec4& v, const Word& w, const FamilyParams& f) { return v * w.matrix(f); }

/// Shortest word W (in letters) with seed * W = target, found by a
/// level-synchronous BFS over the classes reachable from seed. Images with
/// an entry of absolute value above max_abs_entry are pruned and words
/// longer than max_len letters are not explored, so std::nullopt only means
/// "not found within the bounds".
/// @throws std::invalid_argument when max_abs_entry is below the seed or
///         target magnitude.
inline std::optional<Word> word_search(const IntVec4& seed, const IntVec4& target, const FamilyParams& f,
                                       std::size_t max_len, const BigInt& max_abs_entry) {
    if (seed.max_abs() > max_abs_entry || target.max_abs() > max_abs_entry)
        throw std::invalid_argument("word_search: max_abs_entry is smaller than the seed or target entries");
    if (seed == target) return Word{};

    struct Letter {
        Generator gen;
        int exponent;
        IntMat4 matrix;
    };
    const IntMat4 g0 = m0(f), g1 = m1();
    const std::vector<Letter> letters{{Generator::M0, 1, g0},
                                      {Generator::M0, -1, mat_inverse(g0)},
                                      {Generator::M1, 1, g1},
                                      {Generator::M1, -1, mat_inverse(g1)}};

    struct Node {
        std::size_t parent;
        std::size_t letter;
    };
    std::vector<Node> nodes{{0, 0}};
    std::map<IntVec4, std::size_t> index{{seed, 0}};
    std::vector<std::pair<IntVec4, std::size_t>> level{{seed, 0}};

    auto rebuild = [&](std::size_t node) {
        std::vector<std::size_t> path;
        for (; node != 0; node = nodes[node].parent) path.push_back(nodes[node].letter);
        Word w;
        for (auto it = path.rbegin(); it != path.rend(); ++it) w.append(letters[*it].gen, letters[*it].exponent);
        return w;
    };

    for (std::size_t depth = 0; depth < max_len && !level.empty(); ++depth) {
        std::vector<std::pair<IntVec4, std::size_t>> next;
        for (const auto& [v, node] : level) {
            for (std::size_t l = 0; l < letters.size(); ++l) {
                IntVec4 image = v * letters[l].matrix;
                if (image.max_abs() > max_abs_entry) continue;
                if (index.contains(image)) continue;
                const std::size_t id = nodes.size();
                nodes.push_back({node, l});
                if (image == target) return rebuild(id);
                index.emplace(image, id);
                next.emplace_back(std::move(image), id);
            }
        }
        level = std::move(next);
    }
    return std::nullopt;
}

}  // namespace cymono
