#include "sqfree/rule_set.hpp"

#include <algorithm>

namespace sqfree {

const RuleSet& RuleSet::completion()
{
    static const RuleSet r = [] {
        std::array<std::array<Word, 3>, 3> rules;
        rules[0][1] = parse_word("012102");
        rules[0][2] = parse_word("012021");
        rules[1][0] = parse_word("120102");
        rules[1][2] = parse_word("120210");
        rules[2][0] = parse_word("201021");
        rules[2][1] = parse_word("201210");
        return RuleSet(rules);
    }();
    return r;
}

RuleSet::RuleSet(std::array<std::array<Word, 3>, 3> rules) : rules_(std::move(rules))
{
    for (Letter i = 0; i < 3; ++i)
        for (Letter j = 0; j < 3; ++j) {
            if (i == j)
                continue;
            const Word& r = rules_[i][j];
            if (r.size() != rule_length || r.front() != i)
                throw ArgumentError("rule (i,j) must have length 6 and start with i");
            Word rj = r;
            rj.push_back(j);
            if (!is_squarefree(rj))
                throw ArgumentError("rule (i,j) followed by j must be square-free");
        }
}

const Word& RuleSet::rule(Letter i, Letter j) const
{
    if (i >= 3 || j >= 3 || i == j)
        throw ArgumentError("rules are indexed by distinct ternary letters");
    return rules_[i][j];
}

std::vector<std::array<Letter, 2>> RuleSet::pairs_with_letter_at(std::size_t alpha, Letter a) const
{
    std::vector<std::array<Letter, 2>> out;
    for (Letter i = 0; i < 3; ++i)
        for (Letter j = 0; j < 3; ++j)
            if (i != j && rules_[i][j].at(alpha) == a)
                out.push_back({i, j});
    return out;
}

Word r_complete(WordView t, const RuleSet& rules)
{
    if (t.size() < 2)
        throw ArgumentError("completion needs a pre-image of length at least 2");
    if (!is_squarefree(t))
        throw ArgumentError("completion needs a square-free pre-image");
    Word out;
    out.reserve(RuleSet::rule_length * (t.size() - 1));
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const Word& r = rules.rule(t[i], t[i + 1]);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

bool short_period_factors_differ(WordView w)
{
    for (std::size_t period = 1; period <= 9; ++period) {
        const std::size_t len = std::min<std::size_t>(period, 5);
        for (std::size_t d = 0; d <= 5; ++d) {
            if (d + period + len > w.size())
                throw ArgumentError("word too short for the short-period check");
            if (std::equal(w.begin() + d, w.begin() + d + len, w.begin() + d + period))
                return false;
        }
    }
    return true;
}

} // namespace sqfree
