#pragma once

#include "sqfree/word.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace sqfree {

// The multi-valued circular morphism h: four images per letter, of lengths
// 23..26, selected per input position by a guiding sequence.

inline constexpr unsigned h_min_length = 23;
inline constexpr unsigned h_max_length = 26;
/// All images of one letter agree on this many leading letters ...
inline constexpr std::size_t h_common_prefix = 12;
/// ... and on this many trailing letters.
inline constexpr std::size_t h_common_suffix = 9;

using GuidingValue = std::uint8_t;
using GuidingSequence = std::vector<GuidingValue>;

inline bool valid_guiding_value(unsigned gamma)
{
    return gamma >= h_min_length && gamma <= h_max_length;
}

/// h_gamma(a): the image of 0 rotated a times.
const Word& h_image(Letter a, unsigned gamma);

/// h_{g0}(t0) h_{g1}(t1) ...
Word apply_h(WordView t, const GuidingSequence& gamma);
/// apply_h with every value equal to 26.
Word apply_h26(WordView t);

GuidingSequence constant_guiding(std::size_t length, GuidingValue value = h_max_length);

/// The set of length-L factors of h26-images of square-free words.
struct FactorSet {
    std::size_t factor_length = 0;
    /// Pre-image length at which the set stopped changing.
    std::size_t preimage_length = 0;
    std::vector<Word> factors; // sorted, unique
};

/// Windows of length L over h26(t) for every square-free t of the given length.
FactorSet h26_factors_at(std::size_t factor_length, std::size_t preimage_length);

inline constexpr std::size_t h26_factor_guard = 120;

/// Starts at pre-image length ceil(L/26) + 2 and grows it until the factor
/// set is stable for two consecutive steps (growth can only remove factors).
FactorSet enumerate_h26_factors(std::size_t factor_length);

} // namespace sqfree
