#pragma once

#include "sqfree/word.hpp"

#include <array>
#include <vector>

namespace sqfree {

/// Six length-6 rules indexed by ordered pairs of distinct letters. The rule
/// for (i, j) starts with i, so the completion's subsequence modulo 6 is the
/// pre-image minus its last letter.
class RuleSet {
public:
    static constexpr std::size_t rule_length = 6;

    /// The completion rules R_01 = 012102, ..., R_21 = 201210.
    static const RuleSet& completion();

    explicit RuleSet(std::array<std::array<Word, 3>, 3> rules);

    const Word& rule(Letter i, Letter j) const;

    /// Pairs (i, j) whose rule has letter `a` at offset `alpha`.
    std::vector<std::array<Letter, 2>> pairs_with_letter_at(std::size_t alpha, Letter a) const;

private:
    std::array<std::array<Word, 3>, 3> rules_;
};

/// Concatenation of the rules over adjacent letter pairs of t.
Word r_complete(WordView t, const RuleSet& rules = RuleSet::completion());

/// The finite case of the completion's square-freeness argument: for every
/// period 1..9 and start 0..5, the factors of length min(period, 5) at d and
/// d + period differ.
bool short_period_factors_differ(WordView w);

} // namespace sqfree
