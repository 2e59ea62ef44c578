#pragma once

#include "sqfree/h_morphism.hpp"
#include "sqfree/pattern.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sqfree {

/// Outcome of checking that a pattern starts within `delta` of every
/// position of every h26-image of a square-free word.
struct RecurrenceCertificate {
    Pattern pattern;
    std::size_t delta = 0;
    std::size_t factor_length = 0;
    std::size_t preimage_length = 0;
    std::size_t factors_checked = 0;
    bool verdict = false;
    /// First factor (in sorted order) where the pattern starts after delta.
    std::optional<Word> witness;
    /// Largest first-occurrence position seen over the factors.
    std::optional<std::size_t> worst_position;
};

RecurrenceCertificate check_recurrent(const Pattern& p, std::size_t delta, std::size_t factor_length);

/// Smallest delta for which check_recurrent holds; absent if some factor
/// does not contain the pattern at all.
std::optional<std::size_t> min_recurrence_delta(const Pattern& p, std::size_t factor_length);

struct ConstructionWitness {
    Word preimage;
    GuidingSequence gamma;
    /// First occurrence of the pattern in apply_h(preimage, gamma).
    std::optional<std::size_t> position;
};

/// For every square-free pre-image of length k, a guiding sequence of
/// length k placing the pattern at position <= delta.
struct ConstructibilityCertificate {
    Pattern pattern;
    std::size_t delta = 0;
    std::size_t preimage_length = 0;
    std::vector<ConstructionWitness> witnesses; // lexicographic pre-image order
    bool verdict = false;

    const ConstructionWitness& witness_for(WordView preimage) const;
};

/// Exhaustive search over {23..26}^k per pre-image, minimizing the first
/// occurrence; ties go to the lexicographically smallest guiding sequence.
ConstructibilityCertificate check_constructible(const Pattern& p, std::size_t delta, std::size_t k = 2);

/// Re-applies every witness and checks the recorded positions.
bool replay_certificate(const ConstructibilityCertificate& cert);

/// a <>^gap b for gap >= 16 placed at position <= 2 by inspection: put a at
/// its offset l <= 2 in the first image, find b within 3 letters of l + gap
/// and shorten the first image by that distance.
ConstructibilityCertificate constructible_delta16_analytic(Letter a, Letter b, std::size_t gap);

/// a <>^gap b
Pattern gap_pattern(Letter a, Letter b, std::size_t gap);
/// !a <>^gap !b
Pattern forbidden_gap_pattern(Letter a, Letter b, std::size_t gap);
/// !a <>^gap b <>^gap !c
Pattern triple_pattern(Letter a, Letter b, Letter c, std::size_t gap);

struct TripleSpec {
    Letter left_forbidden;
    Letter middle;
    Letter right_forbidden;
    std::size_t gap;

    Pattern pattern() const { return triple_pattern(left_forbidden, middle, right_forbidden, gap); }
    std::string str() const;
    bool operator==(const TripleSpec&) const = default;
};

/// The twelve bad triple families instantiated for every letter (36 entries),
/// in template order then letter order.
const std::vector<TripleSpec>& p_bad_catalogue();
bool is_p_bad(const TripleSpec& t);
/// Template table in text form: "gap middle_rotation right_rotation" rows.
std::string p_bad_templates_text();

struct LemmaFailure {
    std::string pattern;
    std::string witness;
};

struct LemmaRecord {
    std::string id;
    std::string description;
    std::string pattern_family;
    std::size_t delta = 0;
    /// Factor length for recurrence checks, pre-image length for constructibility.
    std::size_t length = 0;
    std::size_t patterns_checked = 0;
    bool verdict = false;
    std::vector<LemmaFailure> failures;
    double seconds = 0;
};

struct LemmaOptions {
    unsigned threads = 1;
    /// Replace the default factor lengths (30/40/70) when set.
    std::optional<std::size_t> factor_length_override;
    /// Add the bad patterns to the triple sweep (they are then reported as failures).
    bool include_p_bad_in_triple_sweep = false;
    /// Gap range for the analytic constructibility check.
    std::size_t analytic_max_gap = 64;
};

std::vector<std::string> lemma_ids();
LemmaRecord run_lemma(const std::string& id, const LemmaOptions& opts = {});
std::vector<LemmaRecord> reproduce_lemma_constants(const LemmaOptions& opts = {});

/// Runs f(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

} // namespace sqfree
