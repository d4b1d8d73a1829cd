#pragma once

// Free products of k copies of Z and r copies of Z/2, their reduced words, and
// the d-regular Cayley tree they span (d = 2k + r).
//
// Letter encoding (stable, used by serialization and environment keys):
//   code 2i - 2     -> a_i        (1 <= i <= k)
//   code 2i - 1     -> a_i^-1     (1 <= i <= k)
//   code 2k + j - 1 -> b_j        (1 <= j <= r), b_j is its own inverse

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwre/error.hpp"

namespace rwre {

/// A generator of S, identified by its code in [0, d).
struct Letter {
    std::uint8_t code = 0;

    constexpr Letter() = default;
    constexpr explicit Letter(std::uint8_t c) : code(c) {}

    friend constexpr auto operator<=>(Letter, Letter) = default;
};

/// A reduced word alpha_n ... alpha_1, addressing the tree vertex at distance n
/// from the root e. Logically the leading (most recently applied) letter comes
/// first; storage is root-first so that extending or shortening is O(1).
class Word {
public:
    Word() = default;

    /// Builds from letters listed leading-first, the way the word is written.
    /// The caller vouches for reducedness; Presentation::make_word checks it.
    static Word from_leading_first(std::span<const Letter> letters)
    {
        Word w;
        w.root_first_.assign(letters.rbegin(), letters.rend());
        return w;
    }

    static Word from_root_first(std::span<const Letter> letters)
    {
        Word w;
        w.root_first_.assign(letters.begin(), letters.end());
        return w;
    }

    std::size_t length() const noexcept { return root_first_.size(); }
    bool is_root() const noexcept { return root_first_.empty(); }

    /// alpha_n, the most recently applied letter. Requires !is_root().
    Letter leading() const { return root_first_.back(); }

    /// alpha_k for 1 <= k <= length(): the k-th letter counted from the root.
    Letter letter_from_root(std::size_t k) const { return root_first_[k - 1]; }

    /// alpha_1 ... alpha_n.
    std::span<const Letter> root_first() const noexcept { return root_first_; }

    /// alpha_n ... alpha_1.
    std::vector<Letter> leading_first() const
    {
        return {root_first_.rbegin(), root_first_.rend()};
    }

    void push_leading(Letter s) { root_first_.push_back(s); }
    void pop_leading() { root_first_.pop_back(); }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b)
    {
        return std::lexicographical_compare_three_way(
            a.root_first_.begin(), a.root_first_.end(),
            b.root_first_.begin(), b.root_first_.end());
    }

private:
    std::vector<Letter> root_first_;
};

/// The group shape: k infinite cyclic factors and r factors of order two.
class Presentation {
public:
    Presentation(int k, int r) : k_(k), r_(r)
    {
        if (k < 0 || r < 0) {
            throw InvalidParameter("presentation: k and r must be nonnegative");
        }
        if (k + r < 2) {
            throw InvalidParameter("presentation: need at least two free factors (k + r >= 2)");
        }
        const long d = 2L * k + r;
        if (d < 3) {
            throw InvalidParameter("presentation: degree d = 2k + r must be at least 3");
        }
        if (d >= 256) {
            throw InvalidParameter("presentation: degree d = 2k + r must be below 256");
        }
        d_ = static_cast<int>(d);
    }

    int k() const noexcept { return k_; }
    int r() const noexcept { return r_; }
    int degree() const noexcept { return d_; }

    bool valid(Letter s) const noexcept { return s.code < d_; }

    Letter letter(int code) const
    {
        if (code < 0 || code >= d_) {
            throw InvalidLetter("letter code " + std::to_string(code) + " outside [0, "
                                + std::to_string(d_) + ")");
        }
        return Letter(static_cast<std::uint8_t>(code));
    }

    /// a_i (1-based), a_i^-1, b_j (1-based).
    Letter a(int i) const { return checked_factor(i, k_, "a", 2 * i - 2); }
    Letter a_inv(int i) const { return checked_factor(i, k_, "a", 2 * i - 1); }
    Letter b(int j) const { return checked_factor(j, r_, "b", 2 * k_ + j - 1); }

    Letter inverse(Letter s) const noexcept
    {
        if (s.code < 2 * k_) {
            return Letter(static_cast<std::uint8_t>(s.code ^ 1u));
        }
        return s;
    }

    /// The symmetric generating set S in code order.
    std::vector<Letter> generators() const
    {
        std::vector<Letter> s;
        s.reserve(d_);
        for (int c = 0; c < d_; ++c) {
            s.emplace_back(static_cast<std::uint8_t>(c));
        }
        return s;
    }

    std::string name(Letter s) const
    {
        if (s.code < 2 * k_) {
            std::string n = "a" + std::to_string(s.code / 2 + 1);
            return (s.code & 1u) ? n + "^-1" : n;
        }
        return "b" + std::to_string(s.code - 2 * k_ + 1);
    }

    std::string to_string(const Word& w) const
    {
        if (w.is_root()) {
            return "e";
        }
        std::string out;
        for (Letter s : w.leading_first()) {
            if (!out.empty()) {
                out += ' ';
            }
            out += name(s);
        }
        return out;
    }

    /// True when no adjacent pair cancels and every letter is valid.
    bool is_reduced(const Word& w) const
    {
        auto letters = w.root_first();
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (!valid(letters[i])) {
                return false;
            }
            if (i > 0 && letters[i] == inverse(letters[i - 1])) {
                return false;
            }
        }
        return true;
    }

    /// Builds a word from leading-first letters, reducing as it goes.
    Word make_word(std::span<const Letter> leading_first) const
    {
        Word w;
        for (auto it = leading_first.rbegin(); it != leading_first.rend(); ++it) {
            apply_in_place(w, *it);
        }
        return w;
    }

    /// w <- reduced form of s * w.
    void apply_in_place(Word& w, Letter s) const
    {
        if (!valid(s)) {
            throw InvalidLetter("letter code " + std::to_string(s.code) + " outside [0, "
                                + std::to_string(d_) + ")");
        }
        if (!w.is_root() && w.leading() == inverse(s)) {
            w.pop_leading();
        } else {
            w.push_leading(s);
        }
    }

    /// Reduced form of s * w.
    Word apply(Word w, Letter s) const
    {
        apply_in_place(w, s);
        return w;
    }

    /// The d pairs (s, s * w) in code order.
    std::vector<std::pair<Letter, Word>> neighbors(const Word& w) const
    {
        std::vector<std::pair<Letter, Word>> out;
        out.reserve(d_);
        for (Letter s : generators()) {
            out.emplace_back(s, apply(w, s));
        }
        return out;
    }

    /// (alpha_n^-1, alpha_{n-1} ... alpha_1).
    std::pair<Letter, Word> parent(const Word& w) const
    {
        if (w.is_root()) {
            throw NoParent();
        }
        Word p = w;
        p.pop_leading();
        return {inverse(w.leading()), std::move(p)};
    }

    /// |{x : |x| = n}| = d (d - 1)^(n - 1), or 1 at n = 0.
    std::uint64_t sphere_size(std::uint64_t n) const
    {
        if (n == 0) {
            return 1;
        }
        std::uint64_t count = static_cast<std::uint64_t>(d_);
        const auto branching = static_cast<std::uint64_t>(d_ - 1);
        for (std::uint64_t i = 1; i < n; ++i) {
            if (count > std::numeric_limits<std::uint64_t>::max() / branching) {
                throw Overflow("sphere_size: d(d-1)^(n-1) overflows 64 bits at n = "
                               + std::to_string(n));
            }
            count *= branching;
        }
        return count;
    }

    /// Vertices of the ball of radius n, checked.
    std::uint64_t ball_size(std::uint64_t n) const
    {
        std::uint64_t total = 0;
        for (std::uint64_t m = 0; m <= n; ++m) {
            const std::uint64_t s = sphere_size(m);
            if (total > std::numeric_limits<std::uint64_t>::max() - s) {
                throw Overflow("ball_size overflows 64 bits");
            }
            total += s;
        }
        return total;
    }

    friend bool operator==(const Presentation&, const Presentation&) = default;

private:
    Letter checked_factor(int i, int count, const char* sym, int code) const
    {
        if (i < 1 || i > count) {
            throw InvalidLetter(std::string("no generator ") + sym + std::to_string(i)
                                + " in this presentation");
        }
        return Letter(static_cast<std::uint8_t>(code));
    }

    int k_;
    int r_;
    int d_ = 0;
};

// Canonical byte encoding: LEB128 length, then the letter codes leading-first.
// The root encodes as the single byte 0x00.

inline std::vector<std::uint8_t> serialize(const Word& w)
{
    std::vector<std::uint8_t> out;
    std::uint64_t n = w.length();
    do {
        std::uint8_t byte = n & 0x7Fu;
        n >>= 7;
        if (n != 0) {
            byte |= 0x80u;
        }
        out.push_back(byte);
    } while (n != 0);
    auto letters = w.root_first();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        out.push_back(it->code);
    }
    return out;
}

/// Inverse of serialize; rejects malformed, non-reduced or foreign input.
inline Word deserialize(const Presentation& p, std::span<const std::uint8_t> bytes)
{
    std::uint64_t n = 0;
    std::size_t pos = 0;
    for (int shift = 0;; shift += 7) {
        if (pos >= bytes.size() || shift > 63) {
            throw InvalidParameter("deserialize: truncated length prefix");
        }
        const std::uint8_t byte = bytes[pos++];
        n |= static_cast<std::uint64_t>(byte & 0x7Fu) << shift;
        if ((byte & 0x80u) == 0) {
            break;
        }
    }
    if (bytes.size() - pos != n) {
        throw InvalidParameter("deserialize: length prefix does not match payload");
    }
    std::vector<Letter> leading_first;
    leading_first.reserve(n);
    for (; pos < bytes.size(); ++pos) {
        leading_first.push_back(p.letter(bytes[pos]));
    }
    Word w = Word::from_leading_first(leading_first);
    if (!p.is_reduced(w)) {
        throw InvalidParameter("deserialize: word is not reduced");
    }
    return w;
}

} // namespace rwre
