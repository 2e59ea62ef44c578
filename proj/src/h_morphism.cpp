#include "sqfree/h_morphism.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace sqfree {

namespace {

const std::array<std::array<Word, 3>, 4>& image_table()
{
    static const auto table = [] {
        const std::array<const char*, 4> zero = {
            "012102120210" "12" "021201210",
            "012102120210" "201" "021201210",
            "012102120210" "2012" "021201210",
            "012102120210" "20121" "021201210",
        };
        std::array<std::array<Word, 3>, 4> t;
        for (std::size_t g = 0; g < 4; ++g) {
            const Word base = parse_word(zero[g]);
            for (unsigned a = 0; a < 3; ++a)
                t[g][a] = rotate(base, a);
        }
        return t;
    }();
    return table;
}

} // namespace

const Word& h_image(Letter a, unsigned gamma)
{
    if (!valid_guiding_value(gamma))
        throw ArgumentError("guiding value must lie in {23,24,25,26}, got " + std::to_string(gamma));
    if (a >= 3)
        throw ArgumentError("h is defined on the ternary alphabet");
    return image_table()[gamma - h_min_length][a];
}

Word apply_h(WordView t, const GuidingSequence& gamma)
{
    if (gamma.size() < t.size())
        throw ArgumentError("guiding sequence shorter than the pre-image");
    Word out;
    out.reserve(t.size() * h_max_length);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Word& img = h_image(t[i], gamma[i]);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

Word apply_h26(WordView t)
{
    return apply_h(t, constant_guiding(t.size()));
}

GuidingSequence constant_guiding(std::size_t length, GuidingValue value)
{
    if (!valid_guiding_value(value))
        throw ArgumentError("guiding value must lie in {23,24,25,26}");
    return GuidingSequence(length, value);
}

FactorSet h26_factors_at(std::size_t factor_length, std::size_t preimage_length)
{
    if (factor_length == 0)
        throw ArgumentError("factor length must be positive");
    if (factor_length > h26_factor_guard)
        throw ResourceError("factor length above the guard of " + std::to_string(h26_factor_guard));
    if (preimage_length * h_max_length < factor_length)
        throw ArgumentError("pre-image too short to contain any factor");
    std::set<Word> seen;
    for (const auto& t : enumerate_squarefree(preimage_length)) {
        const Word img = apply_h26(t);
        for (std::size_t i = 0; i + factor_length <= img.size(); ++i)
            seen.emplace(img.begin() + static_cast<std::ptrdiff_t>(i),
                         img.begin() + static_cast<std::ptrdiff_t>(i + factor_length));
    }
    FactorSet fs;
    fs.factor_length = factor_length;
    fs.preimage_length = preimage_length;
    fs.factors.assign(seen.begin(), seen.end());
    return fs;
}

FactorSet enumerate_h26_factors(std::size_t factor_length)
{
    static std::mutex cache_mutex;
    static std::map<std::size_t, FactorSet> cache;
    {
        std::lock_guard lock(cache_mutex);
        if (auto it = cache.find(factor_length); it != cache.end())
            return it->second;
    }
    if (factor_length > h26_factor_guard)
        throw ResourceError("factor length above the guard of " + std::to_string(h26_factor_guard));
    std::size_t k = (factor_length + h_max_length - 1) / h_max_length + 2;
    FactorSet current = h26_factors_at(factor_length, k);
    int stable_steps = 0;
    for (std::size_t step = 0; step < 24 && stable_steps < 2; ++step) {
        FactorSet next = h26_factors_at(factor_length, k + 1);
        if (next.factors == current.factors) {
            ++stable_steps;
        } else {
            stable_steps = 0;
            current = std::move(next);
            current.preimage_length = k + 1;
        }
        ++k;
    }
    if (stable_steps < 2)
        throw ResourceError("factor set did not saturate");
    std::lock_guard lock(cache_mutex);
    cache.emplace(factor_length, current);
    return current;
}

} // namespace sqfree
