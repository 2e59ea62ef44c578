#pragma once

#include "sqfree/morphism.hpp"
#include "sqfree/word.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sqfree {

enum class SearchStatus { Terminated, LimitReached };
const char* to_string(SearchStatus s);

struct SearchOutcome {
    SearchStatus status = SearchStatus::LimitReached;
    /// Lexicographically first word of maximal length seen.
    Word longest;
    std::size_t longest_length = 0;
    std::uint64_t nodes_expanded = 0;

    bool operator==(const SearchOutcome&) const = default;
};

struct BacktrackOptions {
    std::size_t max_length = 10000;
    std::uint64_t node_cap = 1000000000;
    unsigned threads = 1;
    /// The tree is cut into subtrees at this depth; caps are checked at
    /// subtree boundaries, so results do not depend on the worker count.
    std::size_t partition_depth = 16;
    /// false: only the subsequences modulo p and q must be square-free.
    bool squarefree_carrier = true;
    std::optional<std::filesystem::path> checkpoint;
    std::uint64_t checkpoint_interval = 10000000;
    /// Continue from the checkpoint file if it exists and matches; the node cap may be raised.
    bool resume = false;
};

/// Depth-first search in lexicographic order for the longest ternary word
/// that is square-free (unless relaxed) and square-free modulo p and q.
/// Words are counted up to letter permutation: the tree holds the words
/// starting with 01 (with 0 in the relaxed mode, where unconstrained
/// positions are fixed to 0). nodes_expanded counts the words of the tree.
SearchOutcome backtrack(std::size_t p, std::size_t q, const BacktrackOptions& opts);
SearchOutcome backtrack(std::size_t p, std::size_t q, std::size_t max_length, std::uint64_t node_cap);

struct PositiveMorphismCertificate {
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t alpha = 0;
    CrochemoreVerdict base;
    CrochemoreVerdict mod_p;
    CrochemoreVerdict mod_q;
    bool verdict = false;
    /// "base", "mod p" or "mod q" for the first failing check.
    std::optional<std::string> failed_check;
};

/// g, g^{alpha mod p, p} and g^{alpha mod q, q} all pass the Crochemore test.
/// Requires a ternary uniform g whose image length is divisible by p and q.
PositiveMorphismCertificate verify_positive_morphism(const Morphism& g, std::size_t p, std::size_t q,
                                                     std::size_t alpha = 0);

/// Image of the failing source word under the morphism the check was made on.
Word failing_image(const Morphism& g, const PositiveMorphismCertificate& cert);

struct ImplicationRecord {
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t k = 1;
    /// "(kp,kq) positive implies (p,q) positive for a not necessarily square-free word"
    std::string statement;
};

ImplicationRecord reduce_noncoprime(std::size_t p, std::size_t q, std::size_t k);

enum class Verdict { Positive, Negative, Unknown };
const char* to_string(Verdict v);

enum class EvidenceKind {
    None,
    NegativeFamily,
    TerminatedSearch,
    ThresholdResult,
    MorphismCertificate,
    /// Table entry whose morphism is not bundled.
    TabulatedResult,
};
const char* to_string(EvidenceKind e);

struct PairReport {
    std::size_t p = 0;
    std::size_t q = 0;
    Verdict verdict = Verdict::Unknown;
    EvidenceKind evidence = EvidenceKind::None;
    std::string detail;
    /// The artifact can rerun the evidence (search, reduction, morphism check or constructor).
    bool replayable = false;
    /// For negative families: the base pair whose relaxed search grounds the verdict.
    std::optional<ImplicationRecord> reduction;
    /// For bundled morphisms: the data file used.
    std::optional<std::string> morphism_file;
};

/// Applies, with p <= q: families with 2, (t,2t), (2t,3t); the explicit
/// negative list; (5,8); the four positive threshold results; the
/// tabulated cells for p, q <= 20; otherwise unknown.
PairReport classify_pair(std::size_t p, std::size_t q);

/// The explicit negative pairs outside the families, with p < q.
const std::vector<std::pair<std::size_t, std::size_t>>& explicit_negative_pairs();

struct UnresolvedCount {
    /// Ordered coprime pairs p, q >= 3 left unknown by classify_pair.
    std::uint64_t unknown = 0;
    /// Same, leaving out the region p, q <= 20.
    std::uint64_t unknown_outside_small = 0;
};

/// Full sweep over the finite region left by the threshold results.
UnresolvedCount count_unresolved_pairs();

struct MiningOptions {
    std::size_t iterations = 200;
    std::uint64_t word_budget = 2000000;
    /// Pruning continues while a word of this many blocks survives.
    std::size_t blocks = 50;
    std::size_t max_image_blocks = 4;
    /// Distinct factors per image length tried as arbitrary image triples.
    std::size_t max_triple_factors = 10;
};

struct MiningResult {
    std::optional<Morphism> morphism;
    std::size_t surviving_codes = 0;
    std::size_t iterations_done = 0;
    std::size_t word_length = 0;
};

/// Prunes Pansiot codes of blocks of length lcm(p,q), then looks for a
/// uniform morphism built from block-aligned factors. A returned morphism
/// always passes verify_positive_morphism.
MiningResult mine_pansiot(std::size_t p, std::size_t q, const MiningOptions& opts = {});

struct CountOptions {
    std::uint64_t node_budget = 500000000;
    unsigned threads = 1;
};

/// counts[n-1] = number of ternary words of length n that are square-free
/// and square-free modulo p and q.
std::vector<std::uint64_t> count_words(std::size_t p, std::size_t q, std::size_t n_max,
                                       const CountOptions& opts = {});

/// Ordered square-free-modulo checks used by the search, on a whole word.
bool qualifies(WordView w, std::size_t p, std::size_t q, bool squarefree_carrier = true);

} // namespace sqfree
