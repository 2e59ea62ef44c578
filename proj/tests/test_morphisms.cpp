#include "oracles.hpp"

#include "sqfree/data.hpp"
#include "sqfree/h_morphism.hpp"
#include "sqfree/morphism.hpp"
#include "sqfree/properties.hpp"
#include "sqfree/rule_set.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace sqfree;
using oracle::w;

namespace {

const std::string p3_image = "012021201210201021012102012021012102120102012102120210";

Morphism p3() { return Morphism::rotation_completed(w(p3_image)); }

// Square-freeness of images of all square-free words up to n, scanned naively.
bool images_squarefree(const Morphism& m, std::size_t n)
{
    for (std::size_t len = 1; len <= n; ++len)
        for (const Word& t : oracle::squarefree_words(len))
            if (!oracle::squarefree(sqfree::apply(m, t)))
                return false;
    return true;
}

Word random_squarefree(std::mt19937_64& rng, std::size_t len)
{
    Word v;
    while (v.size() < len) {
        v.push_back(static_cast<Letter>(rng() % 3));
        int tries = 0;
        while (!is_squarefree(v) && tries++ < 3)
            v.back() = static_cast<Letter>((v.back() + 1) % 3);
        if (!is_squarefree(v))
            v.resize(v.size() > 4 ? v.size() - 4 : 0);
    }
    return v;
}

} // namespace

TEST_CASE("apply")
{
    CHECK(to_string(sqfree::apply(Morphism::rotation(), w("012"))) == "120");
    CHECK(sqfree::apply(p3(), Word{}).empty());
    CHECK(to_string(sqfree::apply(p3(), w("0"))) == p3_image);
    CHECK(p3().image(1) == rotate(w(p3_image)));
    CHECK(p3().uniform_length() == std::size_t{54});
    const Morphism m({w("0"), w("12"), w("")});
    CHECK(to_string(m(w("0112"))) == "01212");
    CHECK_FALSE(m.is_uniform());
}

TEST_CASE("is_circular")
{
    CHECK(is_circular(Morphism::rotation()));
    CHECK_FALSE(is_circular(Morphism({w("0"), w("0"), w("0")})));
    const Morphism g = p3();
    CHECK(is_circular(g));
    for (Letter a = 0; a < 3; ++a)
        CHECK(g.image(rotate(a)) == rotate(g.image(a)));
}

TEST_CASE("crochemore_test")
{
    CHECK(crochemore_test(Morphism::identity()).squarefree);
    const auto bad = crochemore_test(Morphism({w("0"), w("0"), w("1")}));
    CHECK_FALSE(bad.squarefree);
    REQUIRE(bad.witness.has_value());
    CHECK(to_string(*bad.witness) == "01");
    const auto good = crochemore_test(p3());
    CHECK(good.squarefree);
    CHECK(good.test_length == 3);
    CHECK(images_squarefree(p3(), 6));
}

TEST_CASE("crochemore_test agrees with naive image scans")
{
    std::mt19937_64 rng(41);
    std::size_t positives = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Word> images;
        const bool uniform = trial % 2 == 0;
        const std::size_t len = 1 + rng() % 7;
        for (int i = 0; i < 3; ++i)
            images.push_back(random_squarefree(rng, uniform ? len : 1 + rng() % 7));
        const Morphism m(images);
        const auto v = crochemore_test(m);
        CHECK(v.squarefree == images_squarefree(m, 7));
        if (!v.squarefree) {
            REQUIRE(v.witness.has_value());
            CHECK(oracle::squarefree(*v.witness));
            CHECK_FALSE(oracle::squarefree(sqfree::apply(m, *v.witness)));
        }
        positives += v.squarefree;
    }
    // Leech
    CHECK(crochemore_test(Morphism::rotation_completed(w("0121021201210"))).squarefree);
    MESSAGE("square-free random morphisms: " << positives);
}

TEST_CASE("modular_morphism")
{
    const Morphism g = p3();
    CHECK(modular_morphism(g, 0, 1) == g);
    const Morphism g13 = modular_morphism(g, 1, 3);
    CHECK(g13.uniform_length() == std::size_t{18});
    CHECK(crochemore_test(g13).squarefree);
    CHECK_THROWS_AS(modular_morphism(g, 0, 5), ArgumentError);
    CHECK_THROWS_AS(modular_morphism(g, 3, 3), ArgumentError);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Word t = random_squarefree(rng, 20);
        const std::size_t alpha = rng() % 3;
        CHECK(sqfree::apply(modular_morphism(g, alpha, 3), t) ==
              oracle::every(shift(sqfree::apply(g, t), alpha), 3));
    }
}

TEST_CASE("morphism files round-trip")
{
    const MorphismFile f = parse_morphism_file("# c\np=3\nk=18\nalpha=1\nq_min=1080\n0 -> " + p3_image + "\n");
    CHECK(f.morphism == p3());
    CHECK(f.k == std::size_t{18});
    CHECK(f.alpha == std::size_t{1});
    const MorphismFile back = parse_morphism_file(format_morphism_file(f));
    CHECK(back.morphism == f.morphism);
    CHECK(back.q_min == f.q_min);
    CHECK_THROWS_AS(parse_morphism_file("0 => 01\n"), ArgumentError);
    CHECK_THROWS_AS(parse_morphism_file("x=1\n0 -> 01\n"), ArgumentError);
}

TEST_CASE("every bundled morphism is certified")
{
    const std::vector<std::size_t> rows = {3, 4, 5, 7, 8, 9, 10, 11, 12, 14, 15, 16, 20, 21, 22};
    CHECK(morphism_moduli() == rows);
    for (std::size_t p : rows) {
        const auto c = certify_bundled_morphism(p);
        CHECK_MESSAGE(c.passed(), "p=" << p);
        CHECK(c.q_min == 20 * c.k * p);
    }
    CHECK(to_string(load_bundled_morphism(3).morphism.image(0)) == p3_image);
}

TEST_CASE("h images")
{
    CHECK(to_string(h_image(0, 23)) == "01210212021012021201210");
    CHECK(to_string(h_image(0, 26)) == "01210212021020121021201210");
    for (unsigned g = 23; g <= 26; ++g) {
        CHECK(h_image(0, g).size() == g);
        CHECK(h_image(1, g) == rotate(h_image(0, g)));
        CHECK(h_image(2, g) == rotate(h_image(0, g), 2));
        CHECK(oracle::squarefree(h_image(0, g)));
    }
    CHECK_THROWS_AS(h_image(0, 22), ArgumentError);
    CHECK(apply_h(w("0"), {23}) == h_image(0, 23));
    const Word two = apply_h(w("01"), {26, 26});
    CHECK(two.size() == 52);
    CHECK(oracle::squarefree(two));
    CHECK(apply_h26(w("01")) == two);
    CHECK_THROWS_AS(apply_h(w("012"), {26, 26}), ArgumentError);
}

TEST_CASE("h images share the common prefix and suffix")
{
    for (Letter a = 0; a < 3; ++a)
        for (unsigned g = 23; g <= 26; ++g) {
            const Word& x = h_image(a, g);
            const Word& y = h_image(a, 26);
            CHECK(std::equal(x.begin(), x.begin() + h_common_prefix, y.begin()));
            CHECK(std::equal(x.end() - h_common_suffix, x.end(), y.end() - h_common_suffix));
        }
}

TEST_CASE("guided images of square-free words of length 5 are square-free")
{
    std::size_t checked = 0;
    for (const Word& t : oracle::squarefree_words(5))
        for (std::size_t code = 0; code < 1024; ++code) {
            GuidingSequence g(5);
            std::size_t x = code;
            for (auto& v : g) {
                v = static_cast<GuidingValue>(23 + x % 4);
                x /= 4;
            }
            const Word img = apply_h(t, g);
            CHECK(is_squarefree(img));
            if (code % 97 == 0)
                CHECK(oracle::squarefree(img));
            ++checked;
        }
    CHECK(checked == 30 * 1024);
}

TEST_CASE("h26 factor sets")
{
    const FactorSet one = enumerate_h26_factors(1);
    CHECK(one.factors == std::vector<Word>{w("0"), w("1"), w("2")});
    const FactorSet f = enumerate_h26_factors(30);
    // independent: windows of images of every square-free word two letters longer
    std::set<Word> brute;
    for (const Word& t : oracle::squarefree_words(f.preimage_length + 2)) {
        const Word img = apply_h26(t);
        for (std::size_t i = 0; i + 30 <= img.size(); ++i)
            brute.insert(Word(img.begin() + static_cast<long>(i), img.begin() + static_cast<long>(i) + 30));
    }
    CHECK(std::vector<Word>(brute.begin(), brute.end()) == f.factors);
    CHECK_THROWS_AS(enumerate_h26_factors(h26_factor_guard + 1), ResourceError);
}

TEST_CASE("completion rules")
{
    CHECK(to_string(r_complete(w("012"))) == "012102120210");
    CHECK(to_string(r_complete(w("01"))) == "012102");
    CHECK(to_string(RuleSet::completion().rule(0, 1)) == "012102");
    CHECK(to_string(RuleSet::completion().rule(2, 1)) == "201210");
    CHECK_THROWS_AS(r_complete(w("0")), ArgumentError);
    CHECK_THROWS_AS(r_complete(w("0101")), ArgumentError);
}

TEST_CASE("completion of square-free words up to length 12")
{
    for (std::size_t n = 2; n <= 12; ++n)
        for (const Word& t : enumerate_squarefree(n)) {
            const Word r = r_complete(t);
            REQUIRE(r.size() == 6 * (n - 1));
            REQUIRE(is_squarefree(r));
            REQUIRE(oracle::every(r, 6) == Word(t.begin(), t.end() - 1));
        }
    CHECK(oracle::squarefree(r_complete(enumerate_squarefree(12).back())));
}

TEST_CASE("the six completion words pass the short-period check")
{
    const auto words = load_completion_check_words();
    REQUIRE(words.size() == 6);
    for (const Word& v : words) {
        CHECK(short_period_factors_differ(v));
        // independent restatement of the check
        bool ok = true;
        for (std::size_t delta = 1; delta <= 9; ++delta)
            for (std::size_t d = 0; d <= 5; ++d) {
                const std::size_t len = std::min<std::size_t>(delta, 5);
                if (d + delta + len <= v.size())
                    ok = ok && !std::equal(v.begin() + static_cast<long>(d), v.begin() + static_cast<long>(d + len),
                                           v.begin() + static_cast<long>(d + delta));
            }
        CHECK(ok);
    }
    CHECK_FALSE(short_period_factors_differ(w("0101010101010101010")));
}
