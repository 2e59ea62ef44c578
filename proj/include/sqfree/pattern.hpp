#pragma once

#include "sqfree/word.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace sqfree {

/// Bit a is set when letter a is allowed in a cell.
using LetterSet = std::uint8_t;

inline constexpr LetterSet letter_set(Letter a) { return static_cast<LetterSet>(1u << a); }
inline constexpr LetterSet full_set(unsigned alphabet = ternary)
{
    return static_cast<LetterSet>((1u << alphabet) - 1);
}
/// Every letter except a.
inline constexpr LetterSet complement(Letter a, unsigned alphabet = ternary)
{
    return static_cast<LetterSet>(full_set(alphabet) & ~letter_set(a));
}

/// One forced letter-set followed by `gap` unconstrained cells.
struct ConstraintCell {
    LetterSet letters;
    std::size_t gap;
};

/// A set of words of one common shape, kept implicitly as a per-cell mask.
class ConstraintWord {
public:
    ConstraintWord() = default;
    explicit ConstraintWord(std::vector<LetterSet> cells, unsigned alphabet = ternary);
    static ConstraintWord exact(WordView w, unsigned alphabet = ternary);

    std::size_t size() const { return cells_.size(); }
    const std::vector<LetterSet>& cells() const { return cells_; }
    unsigned alphabet() const { return alphabet_; }

    bool matches_at(WordView w, std::size_t pos) const
    {
        if (pos + cells_.size() > w.size())
            return false;
        for (std::size_t k = 0; k < cells_.size(); ++k)
            if (!(cells_[k] & letter_set(w[pos + k])))
                return false;
        return true;
    }

    /// Number of words this shape stands for (saturates at UINT64_MAX).
    std::uint64_t count() const;

    /// Constraint notation, e.g. "[12].{16}0.{16}[01]".
    std::string str() const;

private:
    std::vector<LetterSet> cells_;
    unsigned alphabet_ = ternary;
};

/// A finite set of non-empty words; occurs at i when some member matches at i.
/// Members are stored as constraint shapes and materialized only on request
/// below `materialize_limit`.
class Pattern {
public:
    static constexpr std::uint64_t materialize_limit = 10000;

    Pattern() = default;
    explicit Pattern(std::vector<ConstraintWord> alternatives);
    Pattern(std::initializer_list<Word> words);
    static Pattern of_words(const std::vector<Word>& words, unsigned alphabet = ternary);

    const std::vector<ConstraintWord>& alternatives() const { return alternatives_; }
    std::size_t max_length() const;
    std::size_t min_length() const;

    bool occurs_at(WordView w, std::size_t pos) const;

    /// Upper bound on the number of members (exact when shapes are disjoint).
    std::uint64_t size_bound() const;
    /// Explicit members, sorted; throws ResourceError above the limit.
    std::vector<Word> members() const;

    std::string str() const;

    /// Union of two patterns.
    Pattern operator|(const Pattern& other) const;

private:
    std::vector<ConstraintWord> alternatives_;
};

/// A0 <>^d0 A1 <>^d1 ... ; the gap of the last cell is ignored.
Pattern make_constraint_pattern(const std::vector<ConstraintCell>& shape, unsigned alphabet = ternary);

std::optional<std::size_t> pattern_first_occurrence(WordView w, const Pattern& p, std::size_t from = 0);

/// Length-3 factors with w[i] == w[i+2] (palindromes) or w[i] != w[i+2].
Pattern palindrome_pattern();
Pattern non_palindrome_pattern();

} // namespace sqfree
