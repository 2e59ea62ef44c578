#include "oracles.hpp"

#include "sqfree/construction.hpp"
#include "sqfree/data.hpp"
#include "sqfree/rule_set.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace sqfree;
using oracle::w;

namespace {

bool same_prefix(const Word& a, const Word& b, std::size_t upto)
{
    return a.size() > upto && b.size() > upto && std::equal(a.begin(), a.begin() + static_cast<long>(upto) + 1, b.begin());
}

bool occurs_at(const Word& img, const Pattern& p, std::size_t pos)
{
    return p.occurs_at(img, pos);
}

// Whole-word checks used on long outputs; the square test is the library one,
// itself validated against the cubic scan on every short word.
void check_modular(const Word& x, std::size_t p, std::size_t q)
{
    CHECK(is_squarefree(x));
    CHECK(is_squarefree(oracle::every(x, p)));
    CHECK(is_squarefree(oracle::every(x, q)));
}

} // namespace

TEST_CASE("construction state bookkeeping")
{
    auto s = ConstructionState::start(w("0120"));
    CHECK(s.gamma == GuidingSequence(4, 26));
    CHECK(s.image_start(2) == 52);
    CHECK(s.image() == apply_h26(w("0120")));
    CHECK(s.image_prefix(30).size() >= 30);
    CHECK_THROWS_AS(s.image_start(5), ArgumentError);
}

TEST_CASE("palindrome contraction at the minimal distance")
{
    for (std::size_t N : {0, 17, 100, 333}) {
        for (bool pal : {true, false}) {
            auto s = ConstructionState::start(default_squarefree_word(60));
            const Word before = s.image();
            const Pattern p = pal ? palindrome_pattern() : non_palindrome_pattern();
            const std::size_t delta = pal ? 3 : 1;
            const std::size_t Np = N + 4 + 26 * ((delta + 2) / 3);
            contract_recurrent(s, N, Np, p, delta);
            const Word after = s.image();
            CHECK(same_prefix(before, after, N));
            CHECK(occurs_at(after, p, Np));
            CHECK(oracle::squarefree(Word(after.begin(), after.begin() + 200)));
        }
    }
    auto s = ConstructionState::start(default_squarefree_word(60));
    CHECK_THROWS_AS(contract_recurrent(s, 10, 39, palindrome_pattern(), 3), ArgumentError);
}

TEST_CASE("no contraction when the pattern is already in place")
{
    auto s = ConstructionState::start(default_squarefree_word(40));
    const Word img = s.image();
    const std::size_t N = 50, Np = 90;
    const Pattern p{Word{img[Np]}};
    const auto rep = contract_recurrent(s, N, Np, p, 3);
    CHECK(rep.shift == 0);
    CHECK(s.image() == img);
}

TEST_CASE("single-letter contractions on 200 random instances")
{
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = ConstructionState::start(default_squarefree_word(200, static_cast<Letter>(trial % 3)));
        std::size_t N = rng() % 50;
        for (int step = 0; step < 5; ++step) {
            const std::size_t Np = N + 30 + rng() % 60;
            const Letter a = static_cast<Letter>(rng() % 3);
            const Word before = s.image();
            contract_recurrent(s, N, Np, Pattern{Word{a}}, 3);
            const Word after = s.image();
            REQUIRE(same_prefix(before, after, N));
            REQUIRE(after[Np] == a);
            N = Np;
        }
        REQUIRE(is_squarefree(s.image()));
    }
}

TEST_CASE("constructible contractions")
{
    const auto cert3 = check_constructible(gap_pattern(0, 2, 3), 10, 2);
    auto s = ConstructionState::start(default_squarefree_word(80));
    const Word before = s.image();
    const auto rep = contract_constructible(s, 40, 40 + 302, cert3);
    CHECK(rep.splice_index.has_value());
    const Word after = s.image();
    CHECK(same_prefix(before, after, 40));
    CHECK(occurs_at(after, cert3.pattern, 342));
    CHECK_THROWS_AS(contract_constructible(s, 400, 400 + 301, cert3), ArgumentError);

    const TripleSpec bad = p_bad_catalogue()[4];
    const auto cert13 = check_constructible(bad.pattern(), 13, 2);
    auto s2 = ConstructionState::start(default_squarefree_word(80, 1));
    const Word b2 = s2.image();
    contract_constructible(s2, 10, 10 + 328, cert13);
    CHECK(same_prefix(b2, s2.image(), 10));
    CHECK(occurs_at(s2.image(), bad.pattern(), 338));
}

TEST_CASE("constructible contractions on 200 random instances")
{
    std::mt19937_64 rng(202);
    std::vector<ConstructibilityCertificate> certs;
    for (Letter a = 0; a < 3; ++a)
        for (Letter b = 0; b < 3; ++b)
            certs.push_back(check_constructible(gap_pattern(a, b, 3), 10, 2));
    for (const auto& t : p_bad_catalogue())
        certs.push_back(check_constructible(t.pattern(), 13, 2));
    for (int trial = 0; trial < 200; ++trial) {
        const auto& cert = certs[rng() % certs.size()];
        auto s = ConstructionState::start(default_squarefree_word(120, static_cast<Letter>(rng() % 3)));
        const std::size_t N = rng() % 300;
        const std::size_t Np = N + 26 * ((cert.delta + 3) / 3) + 198 + rng() % 200;
        const Word before = s.image();
        contract_constructible(s, N, Np, cert);
        const Word after = s.image();
        REQUIRE(same_prefix(before, after, N));
        REQUIRE(occurs_at(after, cert.pattern, Np));
        REQUIRE(is_squarefree(after));
    }
}

TEST_CASE("prescribed palindromes")
{
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i + 2 < 200; i += 30)
        pos.push_back(i);
    const Word all = prescribe_palindromes(pos, std::vector<bool>(pos.size(), true), 200);
    CHECK(all.size() == 200);
    CHECK(oracle::squarefree(all));
    for (std::size_t p : pos)
        CHECK(all[p] == all[p + 2]);

    const Word one = prescribe_palindromes({7}, {false}, 50);
    CHECK(one[7] != one[9]);
    CHECK(oracle::squarefree(one));

    CHECK_THROWS_AS(prescribe_palindromes({0, 29}, {true, true}, 100), ArgumentError);
    CHECK_THROWS_AS(prescribe_palindromes({0, 98}, {true, true}, 100), ArgumentError);
}

TEST_CASE("alternating palindromes at gap 30 over 1000 letters")
{
    std::vector<std::size_t> pos;
    std::vector<bool> flags;
    for (std::size_t i = 0; i + 2 < 1000; i += 30) {
        pos.push_back(i);
        flags.push_back(pos.size() % 2 == 1);
    }
    const Word x = prescribe_palindromes(pos, flags, 1000);
    CHECK(x.size() == 1000);
    CHECK(is_squarefree(x));
    for (std::size_t i = 0; i < pos.size(); ++i)
        CHECK((x[pos[i]] == x[pos[i] + 2]) == flags[i]);
}

TEST_CASE("random palindrome prescriptions")
{
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::size_t> pos;
        std::vector<bool> flags;
        std::size_t p = rng() % 40;
        while (p + 2 < 600) {
            pos.push_back(p);
            flags.push_back(rng() % 2);
            p += 30 + rng() % 20;
        }
        const Word x = prescribe_palindromes(pos, flags, 600);
        REQUIRE(is_squarefree(x));
        for (std::size_t i = 0; i < pos.size(); ++i)
            REQUIRE((x[pos[i]] == x[pos[i] + 2]) == flags[i]);
    }
}

TEST_CASE("crt offsets")
{
    const auto c56 = crt_offsets(5, 6);
    CHECK(c56.a == 1);
    CHECK(c56.b == 4);
    CHECK(c56.s_plus == 25);
    CHECK(c56.s_minus == 5);
    const auto c311 = crt_offsets(3, 11);
    CHECK(c311.a == 4);
    CHECK(c311.b == 3);
    CHECK(c311.s_plus == 12);
    CHECK(c311.s_minus == 21);
    CHECK_THROWS_AS(crt_offsets(4, 6), ArgumentError);
    CHECK_THROWS_AS(crt_offsets(2, 5), ArgumentError);
}

TEST_CASE("crt offsets agree with a brute scan for all coprime pairs up to 50")
{
    std::size_t pairs = 0;
    for (std::size_t p = 3; p <= 50; ++p)
        for (std::size_t q = 3; q <= 50; ++q) {
            if (oracle::gcd(p, q) != 1)
                continue;
            std::size_t sp = 0, sm = 0;
            for (std::size_t x = 1; x < p * q; ++x) {
                if (x % p)
                    continue;
                if (x % q == 1)
                    sp = x;
                if (x % q == q - 1)
                    sm = x;
            }
            const auto c = crt_offsets(p, q);
            REQUIRE(c.s_plus == sp);
            REQUIRE(c.s_minus == sm);
            REQUIRE(sp + sm == p * q);
            REQUIRE(c.a == std::min(sp, sm) / p);
            REQUIRE(2 * c.a + c.b == q);
            ++pairs;
        }
    CHECK(pairs > 1000);
}

TEST_CASE("filling partial words")
{
    const Word free = fill_partial_word(PartialWord(100));
    CHECK(free.size() == 100);
    CHECK(oracle::squarefree(free));

    std::mt19937_64 rng(404);
    for (std::size_t spacing : {19, 25}) {
        PartialWord v(10000);
        for (std::size_t i = 0; i < v.size(); i += spacing)
            v.force(i, static_cast<Letter>(rng() % 3));
        const Word x = fill_partial_word(v);
        CHECK(is_compatible(x, v));
        CHECK(x.size() == v.size());
        CHECK(is_squarefree(x));
    }
    PartialWord close(100);
    close.force(0, 0);
    close.force(18, 1);
    CHECK_THROWS_AS(fill_partial_word(close), ArgumentError);
}

TEST_CASE("default square-free word")
{
    const Word x = default_squarefree_word(300);
    CHECK(x == fill_partial_word(PartialWord(300)));
    CHECK(default_squarefree_word(300, 2) == rotate(x, 2));
    CHECK(to_string(default_squarefree_word(6)) == "010201");
}

TEST_CASE("star words on each branch")
{
    // pairs with q >= 364 reaching each branch, found by scanning crt offsets
    std::map<StarBranch, std::pair<std::size_t, std::size_t>> found;
    for (std::size_t q = 364; q <= 1500 && found.size() < 3; ++q)
        for (std::size_t p = 3; p <= 40; ++p)
            if (oracle::gcd(p, q) == 1 && !found.count(star_branch(p, q)))
                found[star_branch(p, q)] = {p, q};
    REQUIRE(found.size() == 3);
    for (const auto& [branch, pq] : found) {
        const auto [p, q] = pq;
        const Word s = default_squarefree_word(200 * p);
        const std::size_t len = 60 * q;
        const StarWord u = build_star_word(p, q, s, len);
        CHECK(u.branch == branch);
        REQUIRE(u.word.size() >= len);
        CHECK(is_squarefree(u.word));
        for (std::size_t j = 0; j < len; ++j) {
            const std::size_t x = j * p;
            if (x % q == 0)
                REQUIRE(u.word[j] == s[x / q]);
            if ((x + 1) % q == 0)
                REQUIRE(u.word[j] != s[(x + 1) / q]);
            if (x > 0 && (x - 1) % q == 0)
                REQUIRE(u.word[j] != s[(x - 1) / q]);
        }
        MESSAGE(std::string(to_string(branch)) << " at (" << p << "," << q << ")");
    }
    CHECK_THROWS_AS(build_star_word(5, 363, default_squarefree_word(100), 100), ArgumentError);
}

TEST_CASE("large pairs")
{
    const Word x = build_large_pq_word(331, 365, 50000);
    CHECK(x.size() == 50000);
    check_modular(x, 331, 365);
    CHECK(oracle::star(x, 331, 365));
    const Word s = default_squarefree_word(200);
    CHECK(oracle::every(x, 365) == Word(s.begin(), s.begin() + static_cast<long>(oracle::every(x, 365).size())));

    const Word y = build_large_pq_word(997, 1000, 60000);
    check_modular(y, 997, 1000);

    CHECK_THROWS_AS(build_large_pq_word(330, 367, 1000), ArgumentError);
    CHECK_THROWS_AS(build_large_pq_word(340, 360, 1000), ArgumentError);
    CHECK_THROWS_AS(build_large_pq_word(333, 369, 1000), ArgumentError);
}

TEST_CASE("circular morphism constructions")
{
    const MorphismFile f = load_bundled_morphism(5);
    const std::size_t k = *f.k, alpha = *f.alpha;
    std::mt19937_64 rng(505);
    const Word t = default_squarefree_word(400, 1);
    const Word x = build_from_circular_morphism(f.morphism, k, 5, alpha, 1301, t, 100000);
    CHECK(x.size() == 100000);
    check_modular(x, 5, 1301);
    const Word sub = oracle::every(x, 1301);
    CHECK(std::equal(sub.begin(), sub.end(), t.begin()));

    const std::size_t boundary = 19 * k * 5;
    const Word y = build_from_circular_morphism(f.morphism, k, 5, alpha, boundary, t, 20000);
    check_modular(y, 5, boundary);
    CHECK_THROWS_AS(build_from_circular_morphism(f.morphism, k, 5, alpha, boundary - 1, t, 20000), ArgumentError);

    const MorphismFile f3 = load_bundled_morphism(3);
    const Word z = build_from_circular_morphism(f3.morphism, *f3.k, 3, *f3.alpha, 1085, t, 30000);
    check_modular(z, 3, 1085);
    CHECK_THROWS_AS(build_from_circular_morphism(f3.morphism, *f3.k, 3, 0, 1085, t, 30000), ArgumentError);
}

TEST_CASE("completion shifting")
{
    const auto pairs = RuleSet::completion().pairs_with_letter_at(0, 0);
    CHECK(pairs == std::vector<std::array<Letter, 2>>{{0, 1}, {0, 2}});

    auto s = ConstructionState::start(default_squarefree_word(100));
    const Word before = r_complete(s.image_prefix(500));
    shift_in_completions(s, 60, 60 + 341, 2);
    const Word after = r_complete(s.image_prefix(500));
    CHECK(same_prefix(before, after, 60));
    CHECK(after[401] == 2);
    CHECK_THROWS_AS(shift_in_completions(s, 500, 840, 0), ArgumentError);

    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        auto st = ConstructionState::start(default_squarefree_word(400, static_cast<Letter>(rng() % 3)));
        std::size_t M = rng() % 100;
        for (int step = 0; step < 3; ++step) {
            const std::size_t Mp = M + 341 + rng() % 300;
            const Letter a = static_cast<Letter>(rng() % 3);
            const Word b = r_complete(st.image_prefix(Mp / 6 + 3));
            shift_in_completions(st, M, Mp, a);
            const Word c = r_complete(st.image_prefix(Mp / 6 + 3));
            REQUIRE(same_prefix(b, c, M));
            REQUIRE(c[Mp] == a);
            M = Mp;
        }
    }
}

TEST_CASE("modulo 6 constructions")
{
    const Word x = build_p6_word(341, {}, {}, 50000);
    CHECK(x.size() == 50000);
    check_modular(x, 6, 341);
    CHECK_THROWS_AS(build_p6_word(340, {}, {}, 1000), ArgumentError);
    const Word y = build_p6_word(500, {}, {}, 20000);
    check_modular(y, 6, 500);
}
