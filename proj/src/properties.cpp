#include "sqfree/properties.hpp"

#include "sqfree/data.hpp"
#include "sqfree/h_morphism.hpp"
#include "sqfree/morphism.hpp"
#include "sqfree/recurrence.hpp"
#include "sqfree/rule_set.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <random>

namespace sqfree {

BundledMorphismCertificate certify_bundled_morphism(std::size_t p)
{
    const MorphismFile f = load_bundled_morphism(p);
    BundledMorphismCertificate c;
    c.p = p;
    c.k = f.k.value_or(0);
    c.alpha = f.alpha.value_or(0);
    c.q_min = f.q_min.value_or(0);
    const auto len = f.morphism.uniform_length();
    c.uniform_kp = len && c.k > 0 && *len == c.k * p;
    c.circular = is_circular(f.morphism);
    c.squarefree = crochemore_test(f.morphism).squarefree;
    if (c.uniform_kp && c.alpha < p)
        c.squarefree_modulo_p = crochemore_test(modular_morphism(f.morphism, c.alpha, p)).squarefree;
    return c;
}

namespace {

std::size_t common_prefix(WordView a, WordView b)
{
    std::size_t n = 0;
    while (n < a.size() && n < b.size() && a[n] == b[n])
        ++n;
    return n;
}

std::size_t common_suffix(WordView a, WordView b)
{
    std::size_t n = 0;
    while (n < a.size() && n < b.size() && a[a.size() - 1 - n] == b[b.size() - 1 - n])
        ++n;
    return n;
}

void h_prefix_suffix(PropertyCheck& c)
{
    std::size_t min_pre = 1000, min_suf = 1000;
    for (Letter a = 0; a < 3; ++a)
        for (unsigned g1 = h_min_length; g1 <= h_max_length; ++g1)
            for (unsigned g2 = g1 + 1; g2 <= h_max_length; ++g2) {
                min_pre = std::min(min_pre, common_prefix(h_image(a, g1), h_image(a, g2)));
                min_suf = std::min(min_suf, common_suffix(h_image(a, g1), h_image(a, g2)));
            }
    c.passed = min_pre == h_common_prefix && min_suf == h_common_suffix;
    c.detail = "shortest common prefix " + std::to_string(min_pre) + ", suffix " + std::to_string(min_suf);
}

void h_preserves(PropertyCheck& c, unsigned threads)
{
    constexpr std::size_t len = 6;
    const auto words = enumerate_squarefree(len);
    std::size_t sequences = 1;
    for (std::size_t i = 0; i < len; ++i)
        sequences *= 4;
    std::atomic<std::size_t> bad{0};
    parallel_for(words.size(), threads, [&](std::size_t i) {
        GuidingSequence g(len);
        for (std::size_t code = 0; code < sequences; ++code) {
            std::size_t x = code;
            for (std::size_t j = 0; j < len; ++j, x /= 4)
                g[j] = static_cast<GuidingValue>(h_min_length + x % 4);
            if (!is_squarefree(apply_h(words[i], g)))
                ++bad;
        }
    });
    c.passed = bad == 0;
    c.detail = std::to_string(words.size() * sequences) + " images, " + std::to_string(bad.load()) +
               " with a square";
}

void completion_preserves(PropertyCheck& c)
{
    std::size_t checked = 0, bad = 0;
    for (std::size_t len = 2; len <= 12; ++len)
        for (const Word& t : enumerate_squarefree(len)) {
            ++checked;
            const Word r = r_complete(t);
            if (!is_squarefree(r) || subsequence(r, 6) != Word(t.begin(), t.end() - 1))
                ++bad;
        }
    c.passed = bad == 0 && to_string(r_complete(parse_word("012"))) == "012102120210";
    c.detail = std::to_string(checked) + " pre-images, " + std::to_string(bad) + " failures";
}

void check_words(PropertyCheck& c)
{
    const auto words = load_completion_check_words();
    std::size_t ok = 0;
    for (const Word& w : words)
        ok += short_period_factors_differ(w) ? 1 : 0;
    c.passed = words.size() == 6 && ok == words.size();
    c.detail = std::to_string(ok) + "/" + std::to_string(words.size()) + " words pass";
}

void crochemore_vs_brute(PropertyCheck& c)
{
    std::mt19937_64 rng(20240601);
    std::size_t agree = 0, positives = 0;
    constexpr std::size_t trials = 50;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t len = 1 + rng() % 8;
        std::vector<Word> images;
        if (t % 2 == 0) {
            const auto pool = enumerate_squarefree(len);
            for (int i = 0; i < 3; ++i)
                images.push_back(pool[rng() % pool.size()]);
        } else {
            for (int i = 0; i < 3; ++i) {
                Word w(len);
                for (auto& a : w)
                    a = static_cast<Letter>(rng() % 3);
                images.push_back(w);
            }
        }
        const Morphism m(images);
        const bool fast = crochemore_test(m).squarefree;
        agree += fast == squarefree_images_up_to(m, 12).squarefree ? 1 : 0;
        positives += fast ? 1 : 0;
    }
    c.passed = agree == trials;
    c.detail = std::to_string(agree) + "/" + std::to_string(trials) + " agree, " + std::to_string(positives) +
               " square-free";
}

void modular_commutes(PropertyCheck& c)
{
    std::mt19937_64 rng(7);
    std::size_t checked = 0, bad = 0;
    for (std::size_t p : morphism_moduli()) {
        const MorphismFile f = load_bundled_morphism(p);
        const auto pool = enumerate_squarefree(12);
        for (std::size_t alpha = 0; alpha < p; ++alpha)
            for (int trial = 0; trial < 3; ++trial) {
                const Word& t = pool[rng() % pool.size()];
                const Word lhs = subsequence(shift(sqfree::apply(f.morphism, t), alpha), p);
                const Word rhs = sqfree::apply(modular_morphism(f.morphism, alpha, p), t);
                ++checked;
                bad += lhs == rhs ? 0 : 1;
            }
    }
    c.passed = bad == 0;
    c.detail = std::to_string(checked) + " cases, " + std::to_string(bad) + " mismatches";
}

void bundled_morphisms_certified(PropertyCheck& c)
{
    std::size_t ok = 0;
    std::string failed;
    for (std::size_t p : morphism_moduli()) {
        if (certify_bundled_morphism(p).passed())
            ++ok;
        else
            failed += " " + std::to_string(p);
    }
    c.passed = ok == morphism_moduli().size();
    c.detail = std::to_string(ok) + "/" + std::to_string(morphism_moduli().size()) + " certified" +
               (failed.empty() ? "" : ", failing p:" + failed);
}

} // namespace

std::vector<PropertyCheck> morphism_properties(unsigned threads)
{
    struct Item {
        const char* id;
        const char* description;
        std::function<void(PropertyCheck&)> run;
    };
    const std::vector<Item> items = {
        {"h-prefix-suffix", "images of one letter share exactly 12 leading and 9 trailing letters", h_prefix_suffix},
        {"h-preserves-6", "every guided image of a square-free word of length 6 is square-free",
         [threads](PropertyCheck& c) { h_preserves(c, threads); }},
        {"completion-12", "completion of square-free words up to length 12 is square-free with the right subsequence",
         completion_preserves},
        {"completion-words", "short-period factor check on the six completion words", check_words},
        {"crochemore-random", "Crochemore verdict equals brute force up to length 12 on 50 seeded morphisms",
         crochemore_vs_brute},
        {"modular-commutes", "subsequences of shifted images equal images under the derived morphism",
         modular_commutes},
        {"bundled-morphisms-certified", "bundled morphisms are kp-uniform, circular and square-free with their modulus",
         bundled_morphisms_certified},
    };
    std::vector<PropertyCheck> out;
    for (const auto& it : items) {
        PropertyCheck c;
        c.id = it.id;
        c.description = it.description;
        const auto t0 = std::chrono::steady_clock::now();
        it.run(c);
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace sqfree
