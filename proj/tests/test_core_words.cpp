#include "oracles.hpp"

#include "sqfree/pattern.hpp"
#include "sqfree/word.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace sqfree;
using oracle::w;

TEST_CASE("is_squarefree on small words")
{
    CHECK(is_squarefree(w("010")));
    CHECK_FALSE(is_squarefree(w("0101")));
    CHECK(is_squarefree(w("01210212021012021201210")));
    CHECK(is_squarefree(Word{}));
    CHECK_FALSE(is_squarefree(w("00")));
}

TEST_CASE("is_squarefree agrees with the cubic scan on every word up to length 14")
{
    for (std::size_t n = 0; n <= 14; ++n) {
        std::size_t mismatches = 0;
        for (const Word& v : oracle::all_words(n))
            mismatches += is_squarefree(v) != oracle::squarefree(v);
        CHECK_MESSAGE(mismatches == 0, "length " << n);
    }
}

TEST_CASE("is_squarefree agrees with the cubic scan on long random words")
{
    std::mt19937_64 rng(11);
    const auto pool = enumerate_squarefree(40, oracle::w("0121"));
    for (int trial = 0; trial < 300; ++trial) {
        Word v = pool[rng() % pool.size()];
        if (trial % 2)
            v[rng() % v.size()] = static_cast<Letter>(rng() % 3);
        CHECK(is_squarefree(v) == oracle::squarefree(v));
    }
}

TEST_CASE("has_square_ending_at finds exactly the squares ending at i")
{
    for (const Word& v : oracle::all_words(8))
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Word prefix(v.begin(), v.begin() + static_cast<long>(i) + 1);
            bool expected = false;
            for (std::size_t l = 1; 2 * l <= prefix.size(); ++l)
                expected = expected || std::equal(prefix.end() - 2 * static_cast<long>(l),
                                                  prefix.end() - static_cast<long>(l),
                                                  prefix.end() - static_cast<long>(l));
            REQUIRE(has_square_ending_at(v, i) == expected);
        }
}

TEST_CASE("subsequence")
{
    CHECK(to_string(subsequence(w("012102120210"), 6, 0)) == "01");
    const Word x = w("0120212");
    CHECK(subsequence(x, 1, 0) == x);
    CHECK(to_string(subsequence(w("0121021"), 3, 1)) == "10");
    CHECK_THROWS_AS(subsequence(x, 3, 3), ArgumentError);
    CHECK_THROWS_AS(subsequence(x, 0, 0), ArgumentError);
}

TEST_CASE("subsequences interleave back to the word")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Word v(1 + rng() % 80);
        for (auto& a : v)
            a = static_cast<Letter>(rng() % 3);
        const std::size_t p = 1 + rng() % 9;
        std::vector<Word> parts;
        for (std::size_t alpha = 0; alpha < p; ++alpha) {
            parts.push_back(subsequence(v, p, alpha));
            CHECK(parts.back() == oracle::every(v, p, alpha));
        }
        Word back(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            back[i] = parts[i % p][i / p];
        CHECK(back == v);
    }
}

TEST_CASE("rotate and shift")
{
    CHECK(to_string(rotate(w("012"))) == "120");
    CHECK(to_string(rotate(w("012"), 2)) == "201");
    CHECK(to_string(shift(w("01210"), 2)) == "210");
    CHECK(parse_word("0120") == w("0120"));
    CHECK_THROWS_AS(parse_word("0130"), ArgumentError);
    CHECK_THROWS_AS(parse_word("012", 2), ArgumentError);
}

TEST_CASE("gap pattern over the binary alphabet has the four expected members")
{
    const Pattern p = make_constraint_pattern({{letter_set(0), 2}, {letter_set(0), 0}}, 2);
    const std::vector<Word> expected = {w("0000"), w("0010"), w("0100"), w("0110")};
    CHECK(p.members() == expected);
    CHECK(pattern_first_occurrence(w("010010"), p) == std::size_t{0});
    CHECK(pattern_first_occurrence(w("010010"), p, 1) == std::size_t{2});
}

TEST_CASE("pattern occurrences")
{
    const Word v = w("0120212");
    CHECK(pattern_first_occurrence(v, Pattern{v}) == std::size_t{0});
    CHECK_FALSE(pattern_first_occurrence(w("012"), Pattern{w("21")}).has_value());
    const Pattern single = make_constraint_pattern({{letter_set(1), 0}});
    CHECK(single.members() == std::vector<Word>{w("1")});
}

TEST_CASE("large gap pattern is kept implicit")
{
    const Pattern p = make_constraint_pattern({{letter_set(0), 16}, {letter_set(1), 0}});
    CHECK(p.size_bound() == 43046721u);
    CHECK(p.max_length() == 18);
    CHECK_THROWS_AS(p.members(), ResourceError);
    Word v(18, 2);
    v[0] = 0;
    v[17] = 1;
    CHECK(p.occurs_at(v, 0));
    v[17] = 0;
    CHECK_FALSE(p.occurs_at(v, 0));
}

TEST_CASE("pattern occurrence agrees with a naive member scan")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ConstraintCell> cells;
        const std::size_t n = 1 + rng() % 3;
        for (std::size_t i = 0; i < n; ++i)
            cells.push_back({static_cast<LetterSet>(1 + rng() % 7), rng() % 3});
        const Pattern p = make_constraint_pattern(cells);
        const auto members = p.members();
        Word v(2 + rng() % 20);
        for (auto& a : v)
            a = static_cast<Letter>(rng() % 3);
        std::optional<std::size_t> expected;
        for (std::size_t i = 0; i < v.size() && !expected; ++i)
            for (const Word& m : members)
                if (i + m.size() <= v.size() && std::equal(m.begin(), m.end(), v.begin() + static_cast<long>(i)))
                    expected = i;
        CHECK(pattern_first_occurrence(v, p) == expected);
    }
}

TEST_CASE("is_compatible")
{
    CHECK(is_compatible(w("012010210"), PartialWord::parse("0.2...21.")));
    CHECK(is_compatible(w("0120"), PartialWord(4)));
    CHECK_FALSE(is_compatible(w("0"), PartialWord::parse("1")));
    CHECK_FALSE(is_compatible(w("012"), PartialWord::parse("01")));
    CHECK(PartialWord::parse("0.2").str() == "0.2");
}

TEST_CASE("masking a square-free word keeps it compatible")
{
    std::mt19937_64 rng(9);
    const auto pool = enumerate_squarefree(24);
    for (int trial = 0; trial < 100; ++trial) {
        const Word& v = pool[rng() % pool.size()];
        PartialWord mask(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (rng() % 2)
                mask.force(i, v[i]);
        CHECK(is_compatible(v, mask));
    }
}

TEST_CASE("pansiot_code")
{
    const auto bits = [](const PansiotCode& c) {
        std::string s;
        for (auto b : c)
            s.push_back(static_cast<char>('0' + b));
        return s;
    };
    CHECK(bits(pansiot_code(w("0102"))) == "10");
    CHECK(bits(pansiot_code(w("012"))) == "0");
    const Word v = w("01021012");
    std::string expected;
    for (std::size_t i = 0; i + 2 < v.size(); ++i)
        expected.push_back(v[i] == v[i + 2] ? '1' : '0');
    CHECK(expected.size() == 6);
    CHECK(bits(pansiot_code(v)) == expected);
    CHECK_THROWS_AS(pansiot_code(w("01")), ArgumentError);
}

TEST_CASE("satisfies_star")
{
    CHECK_FALSE(satisfies_star(w("0112"), 2, 1));
    CHECK(satisfies_star(w("0110"), 5, 5));
    std::mt19937_64 rng(17);
    std::size_t seen_true = 0, seen_false = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Word v(60);
        for (auto& a : v)
            a = static_cast<Letter>(rng() % 3);
        const bool got = satisfies_star(v, 5, 6);
        CHECK(got == oracle::star(v, 5, 6));
        (got ? seen_true : seen_false)++;
    }
    CHECK(seen_true > 0);
    CHECK(seen_false > 0);
}

TEST_CASE("distinct_factor_count")
{
    CHECK(distinct_factor_count(w("01021012"), 2) == 5);
    CHECK(distinct_factor_count(w("010"), 2) == 2);
    const Word v = w("0120212");
    CHECK(distinct_factor_count(v, v.size()) == 1);
}

TEST_CASE("every square-free word of length 8 has at least five length-2 factors")
{
    const auto words = enumerate_squarefree(8);
    CHECK(words.size() == oracle::squarefree_words(8).size());
    std::size_t fewest = 9;
    for (const Word& v : words)
        fewest = std::min(fewest, distinct_factor_count(v, 2));
    CHECK(fewest >= 5);
    CHECK(distinct_factor_count(w("01021012"), 2) == 5);
}

TEST_CASE("palindrome starts within 3 and non-palindrome starts within 1")
{
    const auto words = enumerate_squarefree(6);
    CHECK(words == oracle::squarefree_words(6));
    for (const Word& v : words) {
        CHECK(pattern_first_occurrence(v, palindrome_pattern()).value_or(99) <= 3);
        CHECK(pattern_first_occurrence(v, non_palindrome_pattern()).value_or(99) <= 1);
    }
    const std::vector<Word> canonical = {w("010201"), w("010210"), w("010212"), w("012010"),
                                         w("012021"), w("012101"), w("012102")};
    CHECK(enumerate_squarefree(6, w("01")) == canonical);
    std::set<Word> closure;
    for (const Word& c : canonical)
        for (const auto& perm : std::vector<std::array<Letter, 3>>{
                 {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}) {
            Word x;
            for (Letter a : c)
                x.push_back(perm[a]);
            closure.insert(x);
        }
    CHECK(std::vector<Word>(closure.begin(), closure.end()) == words);
}

TEST_CASE("enumerate_squarefree matches brute force")
{
    for (std::size_t n = 0; n <= 10; ++n)
        CHECK(enumerate_squarefree(n) == oracle::squarefree_words(n));
    for (const Word& v : enumerate_squarefree(9, w("0212")))
        CHECK(to_string(v).rfind("0212", 0) == 0);
    CHECK(enumerate_squarefree(5, w("00")).empty());
}
