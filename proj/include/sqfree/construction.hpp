#pragma once

#include "sqfree/h_morphism.hpp"
#include "sqfree/morphism.hpp"
#include "sqfree/pattern.hpp"
#include "sqfree/recurrence.hpp"

#include <optional>
#include <vector>

namespace sqfree {

/// A pre-image with its guiding sequence; the word under construction is
/// apply_h(base, gamma). Single owner.
struct ConstructionState {
    Word base;
    GuidingSequence gamma;
    /// Every registered constraint at a position <= satisfied_upto holds.
    std::size_t satisfied_upto = 0;

    /// Constant guiding value 26.
    static ConstructionState start(Word base);

    Word image() const { return apply_h(base, gamma); }
    /// Start of the image of base[n].
    std::size_t image_start(std::size_t n) const;
    /// Prefix of the image covering at least `length` letters (or the whole image).
    Word image_prefix(std::size_t length) const;
};

struct ContractionReport {
    /// First image whose guiding value could change.
    std::size_t reset_index = 0;
    /// Distance the pattern was moved left.
    std::size_t shift = 0;
    /// Index of the contraction layout used; 0 is the canonical one.
    std::size_t variant = 0;
    /// Image index where a constructibility witness was spliced.
    std::optional<std::size_t> splice_index;
};

/// Places P at N' keeping the image unchanged on [0, protect] (protect
/// defaults to N). P must be (delta, h26)-recurrent and N' >= N + 4 + 26*ceil(delta/3).
ContractionReport contract_recurrent(ConstructionState& state, std::size_t N, std::size_t N_prime,
                                     const Pattern& p, std::size_t delta,
                                     std::optional<std::size_t> protect = std::nullopt);

/// Splices the certificate's witness near N', then contracts.
/// Requires N' >= N + 26*ceil((cert.delta + 1)/3) + 198.
ContractionReport contract_constructible(ConstructionState& state, std::size_t N, std::size_t N_prime,
                                         const ConstructibilityCertificate& cert,
                                         std::optional<std::size_t> protect = std::nullopt);

/// Square-free word where w[p_i] == w[p_i + 2] iff palindrome[i].
/// Positions must increase by at least 30 and satisfy p_i + 2 < length.
Word prescribe_palindromes(const std::vector<std::size_t>& positions, const std::vector<bool>& palindrome,
                           std::size_t length);

struct CrtOffsets {
    std::size_t a = 0;
    std::size_t b = 0;
    /// The multiples of p in ]0, pq[ congruent to +1 and -1 modulo q.
    std::size_t s_plus = 0;
    std::size_t s_minus = 0;
};

CrtOffsets crt_offsets(std::size_t p, std::size_t q);

/// Lexicographically least square-free word compatible with v. Forced
/// cells must be separated by at least 18 wildcards.
Word fill_partial_word(const PartialWord& v);

/// Lexicographically least square-free word of the given length, rotated to
/// start with `first`.
Word default_squarefree_word(std::size_t length, Letter first = 0);

enum class StarBranch { Filling, SmallA, SmallB };

const char* to_string(StarBranch b);
StarBranch star_branch(std::size_t p, std::size_t q);

struct StarWord {
    /// The word read at multiples of p, indexed by multiple.
    Word word;
    StarBranch branch = StarBranch::Filling;
};

/// For coprime 3 <= p <= q with q >= 364, a square-free word u of the given
/// length such that u[iq] = s[ip], and u[j] differs from the letter of s at
/// the multiple of q adjacent to jp whenever there is one.
StarWord build_star_word(std::size_t p, std::size_t q, WordView s, std::size_t length);

/// Square-free word of the given length that is square-free modulo p and
/// modulo q, for coprime p, q >= 331 with max(p, q) >= 364. The word read at
/// multiples of max(p, q) is a prefix of s (default: default_squarefree_word).
Word build_large_pq_word(std::size_t p, std::size_t q, std::size_t length, std::optional<Word> s = std::nullopt);

/// shift^alpha(g(w)) truncated to `length`, with w chosen so that the
/// subsequence of positions 0, q, 2q, ... is a prefix of t.
Word build_from_circular_morphism(const Morphism& g, std::size_t k, std::size_t p, std::size_t alpha,
                                  std::size_t q, WordView t, std::size_t length);

/// Places letter a at position M' of the completion of the image while
/// keeping positions <= M. Requires M' >= M + 341.
ContractionReport shift_in_completions(ConstructionState& state, std::size_t M, std::size_t M_prime, Letter a);

/// Completion of apply_h(t, gamma) truncated to `length`, square-free modulo 6,
/// whose subsequence of positions 0, q, 2q, ... is a prefix of s. Requires q >= 341
/// and s[0] == t[0]; empty s/t select defaults.
Word build_p6_word(std::size_t q, WordView s, WordView t, std::size_t length);

} // namespace sqfree
