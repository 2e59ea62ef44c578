#include "sqfree/pattern.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

namespace sqfree {

ConstraintWord::ConstraintWord(std::vector<LetterSet> cells, unsigned alphabet)
    : cells_(std::move(cells)), alphabet_(alphabet)
{
    if (cells_.empty())
        throw ArgumentError("pattern members must be non-empty");
    for (LetterSet s : cells_)
        if ((s & full_set(alphabet)) == 0 || (s & ~full_set(alphabet)) != 0)
            throw ArgumentError("letter-set must be a non-empty subset of the alphabet");
}

ConstraintWord ConstraintWord::exact(WordView w, unsigned alphabet)
{
    std::vector<LetterSet> cells;
    cells.reserve(w.size());
    for (Letter a : w)
        cells.push_back(letter_set(a));
    return ConstraintWord(std::move(cells), alphabet);
}

std::uint64_t ConstraintWord::count() const
{
    std::uint64_t n = 1;
    for (LetterSet s : cells_) {
        const auto k = static_cast<std::uint64_t>(std::popcount(s));
        if (n > std::numeric_limits<std::uint64_t>::max() / k)
            return std::numeric_limits<std::uint64_t>::max();
        n *= k;
    }
    return n;
}

std::string ConstraintWord::str() const
{
    auto cell = [&](LetterSet s) -> std::string {
        if (s == full_set(alphabet_))
            return ".";
        if (std::popcount(s) == 1)
            return std::string(1, static_cast<char>('0' + std::countr_zero(s)));
        std::string out = "[";
        for (unsigned a = 0; a < alphabet_; ++a)
            if (s & (1u << a))
                out.push_back(static_cast<char>('0' + a));
        return out + "]";
    };
    std::string out;
    for (std::size_t i = 0; i < cells_.size();) {
        if (cells_[i] == full_set(alphabet_)) {
            std::size_t j = i;
            while (j < cells_.size() && cells_[j] == full_set(alphabet_))
                ++j;
            out += j - i == 1 ? "." : ".{" + std::to_string(j - i) + "}";
            i = j;
        } else {
            out += cell(cells_[i]);
            ++i;
        }
    }
    return out;
}

Pattern::Pattern(std::vector<ConstraintWord> alternatives) : alternatives_(std::move(alternatives))
{
    if (alternatives_.empty())
        throw ArgumentError("a pattern needs at least one member");
}

Pattern::Pattern(std::initializer_list<Word> words) : Pattern(of_words(std::vector<Word>(words))) {}

Pattern Pattern::of_words(const std::vector<Word>& words, unsigned alphabet)
{
    std::vector<ConstraintWord> alts;
    alts.reserve(words.size());
    for (const auto& w : words)
        alts.push_back(ConstraintWord::exact(w, alphabet));
    return Pattern(std::move(alts));
}

std::size_t Pattern::max_length() const
{
    std::size_t n = 0;
    for (const auto& a : alternatives_)
        n = std::max(n, a.size());
    return n;
}

std::size_t Pattern::min_length() const
{
    std::size_t n = std::numeric_limits<std::size_t>::max();
    for (const auto& a : alternatives_)
        n = std::min(n, a.size());
    return n;
}

bool Pattern::occurs_at(WordView w, std::size_t pos) const
{
    return std::any_of(alternatives_.begin(), alternatives_.end(),
                       [&](const ConstraintWord& a) { return a.matches_at(w, pos); });
}

std::uint64_t Pattern::size_bound() const
{
    std::uint64_t n = 0;
    for (const auto& a : alternatives_) {
        const auto c = a.count();
        if (c > std::numeric_limits<std::uint64_t>::max() - n)
            return std::numeric_limits<std::uint64_t>::max();
        n += c;
    }
    return n;
}

std::vector<Word> Pattern::members() const
{
    if (size_bound() > materialize_limit)
        throw ResourceError("pattern too large to materialize (" + std::to_string(size_bound()) +
                            " members)");
    std::set<Word> out;
    for (const auto& alt : alternatives_) {
        std::vector<Word> partial{Word{}};
        for (LetterSet s : alt.cells()) {
            std::vector<Word> next;
            for (const auto& prefix : partial)
                for (unsigned a = 0; a < alt.alphabet(); ++a)
                    if (s & (1u << a)) {
                        Word w = prefix;
                        w.push_back(static_cast<Letter>(a));
                        next.push_back(std::move(w));
                    }
            partial = std::move(next);
        }
        out.insert(partial.begin(), partial.end());
    }
    return {out.begin(), out.end()};
}

std::string Pattern::str() const
{
    std::string out;
    for (std::size_t i = 0; i < alternatives_.size(); ++i) {
        if (i)
            out += " | ";
        out += alternatives_[i].str();
    }
    return out;
}

Pattern Pattern::operator|(const Pattern& other) const
{
    auto alts = alternatives_;
    alts.insert(alts.end(), other.alternatives_.begin(), other.alternatives_.end());
    return Pattern(std::move(alts));
}

Pattern make_constraint_pattern(const std::vector<ConstraintCell>& shape, unsigned alphabet)
{
    if (shape.empty())
        throw ArgumentError("constraint pattern needs at least one cell");
    std::vector<LetterSet> cells;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (shape[i].letters == 0)
            throw ArgumentError("empty letter-set in constraint pattern");
        cells.push_back(shape[i].letters);
        if (i + 1 < shape.size())
            cells.insert(cells.end(), shape[i].gap, full_set(alphabet));
    }
    return Pattern({ConstraintWord(std::move(cells), alphabet)});
}

std::optional<std::size_t> pattern_first_occurrence(WordView w, const Pattern& p, std::size_t from)
{
    const std::size_t shortest = p.min_length();
    for (std::size_t j = from; j + shortest <= w.size(); ++j)
        if (p.occurs_at(w, j))
            return j;
    return std::nullopt;
}

Pattern palindrome_pattern()
{
    std::vector<ConstraintWord> alts;
    for (Letter a = 0; a < 3; ++a)
        alts.emplace_back(std::vector<LetterSet>{letter_set(a), full_set(), letter_set(a)});
    return Pattern(std::move(alts));
}

Pattern non_palindrome_pattern()
{
    std::vector<ConstraintWord> alts;
    for (Letter a = 0; a < 3; ++a)
        alts.emplace_back(std::vector<LetterSet>{letter_set(a), full_set(), complement(a)});
    return Pattern(std::move(alts));
}

} // namespace sqfree
