#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqfree {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

/// Thrown when an operation's documented precondition does not hold.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an exhaustive verification or a certificate-backed step fails.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a request exceeds a resource guard.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr unsigned ternary = 3;

// Text format: ASCII digits, no separators.
Word parse_word(std::string_view text, unsigned alphabet = ternary);
std::string to_string(WordView w);

/// Cyclic letter rotation i -> i+1 mod n, applied letterwise.
inline Letter rotate(Letter a, unsigned times = 1, unsigned alphabet = ternary)
{
    return static_cast<Letter>((a + times) % alphabet);
}
Word rotate(WordView w, unsigned times = 1, unsigned alphabet = ternary);

/// Drops the first `alpha` letters.
Word shift(WordView w, std::size_t alpha);

/// Letters at positions alpha, alpha + p, alpha + 2p, ...
Word subsequence(WordView w, std::size_t p, std::size_t alpha = 0);

/// O(n log n) square detection (divide and conquer over the midpoint,
/// crossing squares located with Z-functions).
bool is_squarefree(WordView w);

/// True iff some square w[i-2l+1 .. i] exists; used by incremental searches.
bool has_square_ending_at(WordView w, std::size_t i);

/// Bit i is 1 iff w[i] == w[i+2].
using PansiotCode = std::vector<std::uint8_t>;
PansiotCode pansiot_code(WordView w);

/// Adjacent positions i, i+1 with i = 0 mod p and i+1 = 0 mod q (or the
/// symmetric case) carry distinct letters.
bool satisfies_star(WordView w, std::size_t p, std::size_t q);

std::size_t distinct_factor_count(WordView w, std::size_t len);

/// Partial word: cells over the alphabet plus a wildcard.
class PartialWord {
public:
    static constexpr Letter wildcard = 0xff;

    PartialWord() = default;
    explicit PartialWord(std::size_t length) : cells_(length, wildcard) {}
    explicit PartialWord(std::vector<Letter> cells) : cells_(std::move(cells)) {}

    /// Same text format as words, with '.' for the wildcard.
    static PartialWord parse(std::string_view text);
    std::string str() const;

    std::size_t size() const { return cells_.size(); }
    bool forced(std::size_t i) const { return cells_[i] != wildcard; }
    Letter operator[](std::size_t i) const { return cells_[i]; }
    void force(std::size_t i, Letter a) { cells_.at(i) = a; }
    const std::vector<Letter>& cells() const { return cells_; }

private:
    std::vector<Letter> cells_;
};

/// |w| <= |v| and w agrees with every forced cell of v inside |w|.
bool is_compatible(WordView w, const PartialWord& v);

/// Every square-free word of the given length over the alphabet, in
/// lexicographic order. Optionally restricted to a fixed prefix.
std::vector<Word> enumerate_squarefree(std::size_t length, WordView prefix = {},
                                       unsigned alphabet = ternary);

} // namespace sqfree
