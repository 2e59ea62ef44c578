#include "sqfree/search.hpp"

#include "sqfree/data.hpp"
#include "sqfree/recurrence.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace sqfree {

const char* to_string(SearchStatus s)
{
    return s == SearchStatus::Terminated ? "terminated" : "limit-reached";
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::Negative: return "negative";
    default: return "unknown";
    }
}

const char* to_string(EvidenceKind e)
{
    switch (e) {
    case EvidenceKind::NegativeFamily: return "negative-family";
    case EvidenceKind::TerminatedSearch: return "terminated-search";
    case EvidenceKind::ThresholdResult: return "threshold-result";
    case EvidenceKind::MorphismCertificate: return "morphism-certificate";
    case EvidenceKind::TabulatedResult: return "tabulated-result";
    default: return "none";
    }
}

bool qualifies(WordView w, std::size_t p, std::size_t q, bool squarefree_carrier)
{
    if (p == 0 || q == 0)
        throw ArgumentError("moduli must be positive");
    if (squarefree_carrier && !is_squarefree(w))
        return false;
    return is_squarefree(subsequence(w, p)) && is_squarefree(subsequence(w, q));
}

namespace {

/// The word with its residue-0 subsequences, each extended one letter at a time.
class Engine {
public:
    Engine(std::size_t p, std::size_t q, bool strict) : p_(p), q_(q), strict_(strict)
    {
        if (p == 0 || q == 0)
            throw ArgumentError("moduli must be positive");
    }

    const Word& word() const { return w_; }
    std::size_t size() const { return w_.size(); }

    /// Letters allowed at the next index, before any square check.
    std::pair<Letter, Letter> letter_range() const
    {
        const std::size_t i = w_.size();
        if (i == 0)
            return {0, 0};
        if (strict_)
            return i == 1 ? std::pair<Letter, Letter>{1, 1} : std::pair<Letter, Letter>{0, 2};
        if (i % p_ != 0 && i % q_ != 0)
            return {0, 0};
        return {0, 2};
    }

    bool push(Letter a)
    {
        const std::size_t i = w_.size();
        const bool mp = tracks_p(i), mq = tracks_q(i);
        if (mp) {
            sp_.push_back(a);
            if (has_square_ending_at(sp_, sp_.size() - 1)) {
                sp_.pop_back();
                return false;
            }
        }
        if (mq) {
            sq_.push_back(a);
            if (has_square_ending_at(sq_, sq_.size() - 1)) {
                sq_.pop_back();
                if (mp)
                    sp_.pop_back();
                return false;
            }
        }
        w_.push_back(a);
        if (strict_ && has_square_ending_at(w_, i)) {
            w_.pop_back();
            if (mq)
                sq_.pop_back();
            if (mp)
                sp_.pop_back();
            return false;
        }
        return true;
    }

    void pop()
    {
        const std::size_t i = w_.size() - 1;
        if (tracks_q(i))
            sq_.pop_back();
        if (tracks_p(i))
            sp_.pop_back();
        w_.pop_back();
    }

private:
    bool tracks_p(std::size_t i) const { return i % p_ == 0 && !(strict_ && p_ == 1); }
    bool tracks_q(std::size_t i) const { return q_ != p_ && i % q_ == 0 && !(strict_ && q_ == 1); }

    std::size_t p_, q_;
    bool strict_;
    Word w_, sp_, sq_;
};

struct DfsResult {
    std::uint64_t nodes = 0;
    Word best;
    bool hit_max = false;
    bool hit_cap = false;
    std::vector<Word> leaves;
};

/// Explores below the engine's current word. Words of length leaf_depth
/// are collected and not expanded; reaching max_length stops everything.
DfsResult dfs(Engine& e, std::size_t leaf_depth, std::size_t max_length, std::uint64_t cap)
{
    DfsResult r;
    r.best = e.word();
    const std::size_t base = e.size();
    if (base >= max_length) {
        r.hit_max = true;
        return r;
    }
    if (base >= leaf_depth) {
        r.leaves.push_back(e.word());
        return r;
    }
    // next[d - base] is the next letter to try at index d.
    std::vector<int> next;
    std::vector<int> last;
    auto open = [&] {
        const auto [lo, hi] = e.letter_range();
        next.push_back(lo);
        last.push_back(hi);
    };
    open();
    while (!next.empty()) {
        if (next.back() > last.back()) {
            next.pop_back();
            last.pop_back();
            if (e.size() > base)
                e.pop();
            continue;
        }
        const Letter a = static_cast<Letter>(next.back()++);
        if (!e.push(a))
            continue;
        if (r.nodes == cap) {
            e.pop();
            r.hit_cap = true;
            break;
        }
        ++r.nodes;
        if (e.size() > r.best.size())
            r.best = e.word();
        if (e.size() == max_length) {
            r.hit_max = true;
            e.pop();
            break;
        }
        if (e.size() == leaf_depth) {
            r.leaves.push_back(e.word());
            e.pop();
            continue;
        }
        open();
    }
    while (e.size() > base)
        e.pop();
    return r;
}

Engine engine_at(std::size_t p, std::size_t q, bool strict, WordView prefix)
{
    Engine e(p, q, strict);
    for (Letter a : prefix)
        if (!e.push(a))
            throw ArgumentError("prefix does not qualify");
    return e;
}

using nlohmann::json;

json checkpoint_json(std::size_t p, std::size_t q, const BacktrackOptions& o, std::size_t next_partition,
                     std::uint64_t nodes, const Word& best)
{
    return json{{"p", p},
                {"q", q},
                {"max_length", o.max_length},
                {"node_cap", o.node_cap},
                {"partition_depth", o.partition_depth},
                {"squarefree_carrier", o.squarefree_carrier},
                {"next_partition", next_partition},
                {"nodes_expanded", nodes},
                {"longest", to_string(best)}};
}

void write_atomically(const std::filesystem::path& path, const std::string& text)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw ArgumentError("cannot write checkpoint " + tmp.string());
        out << text << '\n';
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

SearchOutcome backtrack(std::size_t p, std::size_t q, std::size_t max_length, std::uint64_t node_cap)
{
    BacktrackOptions o;
    o.max_length = max_length;
    o.node_cap = node_cap;
    return backtrack(p, q, o);
}

SearchOutcome backtrack(std::size_t p, std::size_t q, const BacktrackOptions& opts)
{
    if (p == 0 || q == 0)
        throw ArgumentError("moduli must be positive");
    if (opts.partition_depth == 0)
        throw ArgumentError("partition depth must be positive");

    SearchOutcome out;
    Engine root(p, q, opts.squarefree_carrier);
    DfsResult top = dfs(root, opts.partition_depth, opts.max_length, opts.node_cap);
    Word best = top.best;
    std::uint64_t nodes = top.nodes;

    auto finish = [&](SearchStatus s) {
        out.status = s;
        out.longest = best;
        out.longest_length = best.size();
        out.nodes_expanded = nodes;
        return out;
    };
    if (top.hit_max || top.hit_cap)
        return finish(SearchStatus::LimitReached);

    const std::vector<Word>& parts = top.leaves;
    const std::uint64_t local_cap = opts.node_cap - top.nodes;
    std::size_t frontier = 0;

    if (opts.resume && opts.checkpoint && std::filesystem::exists(*opts.checkpoint)) {
        std::ifstream in(*opts.checkpoint);
        const json j = json::parse(in);
        const json expect = checkpoint_json(p, q, opts, 0, 0, {});
        for (const char* key : {"p", "q", "max_length", "partition_depth", "squarefree_carrier"})
            if (j.at(key) != expect.at(key))
                throw ArgumentError(std::string("checkpoint does not match the search parameter ") + key);
        frontier = j.at("next_partition").get<std::size_t>();
        nodes = j.at("nodes_expanded").get<std::uint64_t>();
        best = parse_word(j.at("longest").get<std::string>());
        if (frontier > parts.size())
            throw ArgumentError("checkpoint partition index out of range");
    }

    std::vector<std::optional<DfsResult>> results(parts.size());
    std::mutex m;
    std::size_t stop = parts.size(); // first partition after which the search stops
    bool stopped = false;
    std::uint64_t last_checkpoint = nodes;
    std::atomic<std::size_t> next{frontier};
    std::atomic<std::size_t> skip_after{parts.size()};
    // Last partition boundary before a cap was hit; a resumed run restarts there.
    std::size_t resume_frontier = 0;
    std::uint64_t resume_nodes = 0;
    Word resume_best;

    auto advance = [&] {
        while (frontier < parts.size() && results[frontier] && !stopped) {
            DfsResult& r = *results[frontier];
            resume_frontier = frontier;
            resume_nodes = nodes;
            resume_best = best;
            nodes += r.nodes;
            if (r.best.size() > best.size())
                best = std::move(r.best);
            results[frontier].reset();
            if (r.hit_max || r.hit_cap || nodes > opts.node_cap) {
                stopped = true;
                stop = frontier;
                skip_after = frontier;
            }
            ++frontier;
            if (opts.checkpoint && !stopped && nodes - last_checkpoint >= opts.checkpoint_interval) {
                write_atomically(*opts.checkpoint, checkpoint_json(p, q, opts, frontier, nodes, best).dump());
                last_checkpoint = nodes;
            }
        }
    };

    std::exception_ptr failure;
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t j = next.fetch_add(1);
                if (j >= parts.size() || j > skip_after.load())
                    return;
                Engine e = engine_at(p, q, opts.squarefree_carrier, parts[j]);
                DfsResult r = dfs(e, opts.max_length + 1, opts.max_length, local_cap);
                std::lock_guard lock(m);
                if (r.hit_max || r.hit_cap)
                    skip_after = std::min(skip_after.load(), j);
                results[j] = std::move(r);
                advance();
            }
        } catch (...) {
            std::lock_guard lock(m);
            if (!failure)
                failure = std::current_exception();
            skip_after = 0;
        }
    };

    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    (void)stop;

    if (opts.checkpoint) {
        const json j = stopped ? checkpoint_json(p, q, opts, resume_frontier, resume_nodes, resume_best)
                               : checkpoint_json(p, q, opts, frontier, nodes, best);
        write_atomically(*opts.checkpoint, j.dump());
    }
    return finish(stopped ? SearchStatus::LimitReached : SearchStatus::Terminated);
}

PositiveMorphismCertificate verify_positive_morphism(const Morphism& g, std::size_t p, std::size_t q,
                                                     std::size_t alpha)
{
    if (g.source_alphabet() != ternary || g.target_alphabet() != ternary)
        throw ArgumentError("morphism must be ternary");
    const auto len = g.uniform_length();
    if (!len || *len == 0)
        throw ArgumentError("morphism must be uniform");
    for (std::size_t m : {p, q})
        if (m == 0 || *len % m != 0)
            throw ArgumentError("image length " + std::to_string(*len) + " is not divisible by the modulus " +
                                std::to_string(m));

    PositiveMorphismCertificate c;
    c.p = p;
    c.q = q;
    c.alpha = alpha;
    c.base = crochemore_test(g);
    c.mod_p = crochemore_test(modular_morphism(g, alpha % p, p));
    c.mod_q = crochemore_test(modular_morphism(g, alpha % q, q));
    if (!c.base.squarefree)
        c.failed_check = "base";
    else if (!c.mod_p.squarefree)
        c.failed_check = "mod p";
    else if (!c.mod_q.squarefree)
        c.failed_check = "mod q";
    c.verdict = !c.failed_check;
    return c;
}

Word failing_image(const Morphism& g, const PositiveMorphismCertificate& cert)
{
    if (!cert.failed_check)
        throw ArgumentError("certificate has no failing check");
    if (*cert.failed_check == "base")
        return sqfree::apply(g, *cert.base.witness);
    if (*cert.failed_check == "mod p")
        return sqfree::apply(modular_morphism(g, cert.alpha % cert.p, cert.p), *cert.mod_p.witness);
    return sqfree::apply(modular_morphism(g, cert.alpha % cert.q, cert.q), *cert.mod_q.witness);
}

ImplicationRecord reduce_noncoprime(std::size_t p, std::size_t q, std::size_t k)
{
    if (k == 0 || p == 0 || q == 0)
        throw ArgumentError("reduction needs positive p, q and k");
    ImplicationRecord r;
    r.p = p;
    r.q = q;
    r.k = k;
    r.statement = "a square-free word square-free modulo " + std::to_string(k * p) + " and " +
                  std::to_string(k * q) + " yields, by keeping the letters at multiples of " +
                  std::to_string(k) + ", a word square-free modulo " + std::to_string(p) + " and " + std::to_string(q);
    return r;
}

const std::vector<std::pair<std::size_t, std::size_t>>& explicit_negative_pairs()
{
    static const std::vector<std::pair<std::size_t, std::size_t>> s = {
        {3, 4}, {3, 5}, {3, 7}, {3, 8}, {3, 10}, {4, 5}, {4, 7}, {4, 9}, {4, 10}, {4, 14}, {6, 7}};
    return s;
}

namespace {

bool in_list(std::size_t p, const std::vector<std::size_t>& v)
{
    return std::find(v.begin(), v.end(), p) != v.end();
}

bool circular_family_modulus(std::size_t p)
{
    return p == 13 || p == 17 || p == 18 || p == 19 || p >= 23;
}

const std::map<std::size_t, std::size_t>& morphism_thresholds()
{
    static std::mutex m;
    static std::map<std::filesystem::path, std::map<std::size_t, std::size_t>> cache;
    std::lock_guard lock(m);
    auto& entry = cache[data_dir()];
    if (entry.empty())
        for (std::size_t p : morphism_moduli()) {
            const auto f = load_bundled_morphism(p);
            if (!f.q_min)
                throw ArgumentError("bundled morphism for p = " + std::to_string(p) + " lacks q_min");
            entry[p] = *f.q_min;
        }
    return entry;
}

/// Positive threshold results with p <= q; fills the report when one applies.
bool threshold_positive(std::size_t p, std::size_t q, PairReport* r)
{
    auto set = [&](EvidenceKind e, bool replayable, std::string detail) {
        if (r) {
            r->verdict = Verdict::Positive;
            r->evidence = e;
            r->replayable = replayable;
            r->detail = std::move(detail);
        }
        return true;
    };
    if (p >= 331 && q >= 364 && std::gcd(p, q) == 1)
        return set(EvidenceKind::ThresholdResult, true,
                   "coprime pair with both members >= 331 and the larger >= 364; replay with build_large_pq_word");
    if (circular_family_modulus(p) && q >= 19 * p)
        return set(EvidenceKind::ThresholdResult, false,
                   "q >= 19p with a square-free circular morphism of length p (not bundled)");
    if (p == 6 && q >= 341)
        return set(EvidenceKind::ThresholdResult, true, "p = 6 and q >= 341; replay with build_p6_word");
    if (in_list(p, morphism_moduli())) {
        const std::size_t q_min = morphism_thresholds().at(p);
        if (q >= q_min) {
            if (r) {
                set(EvidenceKind::MorphismCertificate, true,
                    "bundled circular morphism, q >= " + std::to_string(q_min) +
                        "; replay with verify_positive_morphism and build_from_circular_morphism");
                r->morphism_file = morphism_path(p).string();
            }
            return true;
        }
    }
    return false;
}

} // namespace

PairReport classify_pair(std::size_t p, std::size_t q)
{
    if (p == 0 || q == 0)
        throw ArgumentError("moduli must be positive");
    PairReport r;
    r.p = p;
    r.q = q;
    if (p > q)
        std::swap(p, q);

    auto negative_family = [&](std::string detail, ImplicationRecord red) {
        r.verdict = Verdict::Negative;
        r.evidence = EvidenceKind::NegativeFamily;
        r.replayable = true;
        r.detail = std::move(detail);
        r.reduction = std::move(red);
        return r;
    };
    if (p == 2 || q == 2) {
        const std::size_t other = p == 2 ? q : p;
        if (other == 4 || other == 1)
            return negative_family("(t, 2t) with t = " + std::to_string(other == 4 ? 2 : 1),
                                   reduce_noncoprime(1, 2, other == 4 ? 2 : 1));
        if (other == 3)
            return negative_family("(2t, 3t) with t = 1", reduce_noncoprime(2, 3, 1));
        return negative_family("a member equals 2: the word itself and its subsequence modulo 2 cannot both be "
                               "square-free",
                               reduce_noncoprime(1, 2, 1));
    }
    if (q == 2 * p)
        return negative_family("(t, 2t) with t = " + std::to_string(p), reduce_noncoprime(1, 2, p));
    if (2 * q == 3 * p)
        return negative_family("(2t, 3t) with t = " + std::to_string(p / 2), reduce_noncoprime(2, 3, p / 2));

    for (const auto& [a, b] : explicit_negative_pairs())
        if (a == p && b == q) {
            r.verdict = Verdict::Negative;
            r.evidence = EvidenceKind::TerminatedSearch;
            r.replayable = true;
            r.detail = "exhaustive search terminates";
            return r;
        }
    if (p == 5 && q == 8) {
        r.detail = "open pair";
        return r;
    }
    if (threshold_positive(p, q, &r))
        return r;
    if (q <= 20) {
        const auto& t = pair_table();
        const auto it = t.find({p, q});
        if (it != t.end() && it->second == "positive") {
            r.verdict = Verdict::Positive;
            r.evidence = EvidenceKind::TabulatedResult;
            r.replayable = false;
            r.detail = "tabulated positive pair; its morphism is not bundled (verify-morphism checks supplied files)";
            return r;
        }
    }
    r.detail = "no applicable result";
    return r;
}

UnresolvedCount count_unresolved_pairs()
{
    std::size_t q_bound = 364;
    for (const auto& [p, t] : morphism_thresholds())
        q_bound = std::max(q_bound, t);
    q_bound = std::max<std::size_t>(q_bound, 19 * 331);
    const auto& small = pair_table();
    UnresolvedCount c;
    for (std::size_t p = 3; p < 364; ++p)
        for (std::size_t q = p + 1; q <= q_bound; ++q) {
            if (std::gcd(p, q) != 1 || threshold_positive(p, q, nullptr))
                continue;
            if (q <= 20) {
                const auto it = small.find({p, q});
                if (it == small.end() || it->second == "unknown")
                    c.unknown += 2;
                continue;
            }
            c.unknown += 2;
            c.unknown_outside_small += 2;
        }
    return c;
}

namespace {

std::uint64_t block_code(WordView w, std::size_t start, std::size_t len)
{
    std::uint64_t c = 0;
    for (std::size_t i = start; i + 2 < start + len; ++i)
        c = (c << 1) | (w[i] == w[i + 2] ? 1u : 0u);
    return c;
}

/// Lexicographic search for a qualifying word of the target length whose
/// block codes avoid the forbidden set.
std::optional<Word> build_coded_word(std::size_t p, std::size_t q, std::size_t ell, std::size_t target,
                                     const std::vector<std::uint64_t>& forbidden, std::uint64_t budget)
{
    Engine e(p, q, true);
    std::vector<int> next, last;
    std::uint64_t nodes = 0;
    auto open = [&] {
        const auto [lo, hi] = e.letter_range();
        next.push_back(lo);
        last.push_back(hi);
    };
    open();
    while (!next.empty()) {
        if (next.back() > last.back()) {
            next.pop_back();
            last.pop_back();
            if (e.size() > 0)
                e.pop();
            continue;
        }
        const Letter a = static_cast<Letter>(next.back()++);
        if (!e.push(a))
            continue;
        const std::size_t n = e.size();
        if (n % ell == 0 && std::binary_search(forbidden.begin(), forbidden.end(), block_code(e.word(), n - ell, ell))) {
            e.pop();
            continue;
        }
        if (++nodes > budget)
            return std::nullopt;
        if (n == target)
            return e.word();
        open();
    }
    return std::nullopt;
}

} // namespace

namespace {

std::optional<Morphism> assemble_morphism(WordView w, std::size_t p, std::size_t q, std::size_t ell,
                                          const MiningOptions& opts)
{
    for (std::size_t m = 1; m <= opts.max_image_blocks; ++m) {
        std::vector<Word> factors;
        for (std::size_t s = 0; s + m * ell <= w.size(); s += ell) {
            Word f(w.begin() + s, w.begin() + s + m * ell);
            if (std::find(factors.begin(), factors.end(), f) == factors.end())
                factors.push_back(std::move(f));
        }
        for (const Word& f : factors) {
            const Morphism g = Morphism::rotation_completed(rotate(f, (3 - f[0]) % 3));
            if (verify_positive_morphism(g, p, q).verdict)
                return g;
        }
        // Three distinct factors, in order of first appearance.
        const std::size_t n = std::min(factors.size(), opts.max_triple_factors);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    if (a == b || b == c || a == c)
                        continue;
                    const Morphism g({factors[a], factors[b], factors[c]});
                    if (verify_positive_morphism(g, p, q).verdict)
                        return g;
                }
    }
    return std::nullopt;
}

std::size_t code_count(WordView w, std::size_t ell)
{
    std::map<std::uint64_t, std::size_t> freq;
    for (std::size_t s = 0; s + ell <= w.size(); s += ell)
        ++freq[block_code(w, s, ell)];
    return freq.size();
}

} // namespace

MiningResult mine_pansiot(std::size_t p, std::size_t q, const MiningOptions& opts)
{
    if (p == 0 || q == 0)
        throw ArgumentError("moduli must be positive");
    const std::size_t ell = std::lcm(p, q);
    if (ell > 40)
        throw ResourceError("block length lcm(p,q) = " + std::to_string(ell) + " exceeds 40");
    if (ell < 3)
        throw ArgumentError("block length lcm(p,q) must be at least 3");
    const std::size_t target = opts.blocks * ell;

    MiningResult res;
    std::vector<std::uint64_t> forbidden;
    auto word = build_coded_word(p, q, ell, target, forbidden, opts.word_budget);
    if (!word)
        return res;
    auto record = [&] {
        res.surviving_codes = code_count(*word, ell);
        res.word_length = word->size();
        res.morphism = assemble_morphism(*word, p, q, ell, opts);
        return res.morphism.has_value();
    };
    if (record())
        return res;
    for (; res.iterations_done < opts.iterations; ++res.iterations_done) {
        std::map<std::uint64_t, std::size_t> freq;
        for (std::size_t s = 0; s + ell <= word->size(); s += ell)
            ++freq[block_code(*word, s, ell)];
        if (freq.size() <= 1)
            break;
        auto least = freq.begin();
        for (auto it = freq.begin(); it != freq.end(); ++it)
            if (it->second < least->second)
                least = it;
        auto trial = forbidden;
        trial.insert(std::upper_bound(trial.begin(), trial.end(), least->first), least->first);
        auto next_word = build_coded_word(p, q, ell, target, trial, opts.word_budget);
        if (!next_word)
            break;
        forbidden = std::move(trial);
        word = std::move(next_word);
        if (record()) {
            ++res.iterations_done;
            return res;
        }
    }
    return res;
}

std::vector<std::uint64_t> count_words(std::size_t p, std::size_t q, std::size_t n_max, const CountOptions& opts)
{
    if (p == 0 || q == 0)
        throw ArgumentError("moduli must be positive");
    if (n_max > 200)
        throw ResourceError("count length above 200");
    std::vector<std::uint64_t> counts(n_max, 0);
    if (n_max == 0)
        return counts;
    counts[0] = 3;
    if (n_max == 1)
        return counts;

    // Words starting with 01, split at a small depth.
    const std::size_t split = std::min<std::size_t>(n_max, 10);
    std::vector<Word> parts;
    std::vector<std::uint64_t> top(n_max + 1, 0);
    {
        Engine e(p, q, true);
        e.push(0);
        if (!e.push(1))
            return counts;
        std::vector<int> next, last;
        auto open = [&] {
            next.push_back(0);
            last.push_back(2);
        };
        ++top[2];
        if (split == 2)
            parts.push_back(e.word());
        else
            open();
        while (!next.empty()) {
            if (next.back() > last.back()) {
                next.pop_back();
                last.pop_back();
                e.pop();
                continue;
            }
            const Letter a = static_cast<Letter>(next.back()++);
            if (!e.push(a))
                continue;
            ++top[e.size()];
            if (e.size() == split) {
                parts.push_back(e.word());
                e.pop();
                continue;
            }
            open();
        }
    }

    std::vector<std::vector<std::uint64_t>> per(parts.size(), std::vector<std::uint64_t>(n_max + 1, 0));
    std::atomic<std::uint64_t> total{0};
    std::atomic<bool> over{false};
    parallel_for(parts.size(), std::max(1u, opts.threads), [&](std::size_t j) {
        if (over)
            return;
        Engine e = engine_at(p, q, true, parts[j]);
        const std::size_t base = e.size();
        std::vector<int> next;
        std::uint64_t local = 0;
        if (base < n_max)
            next.push_back(0);
        while (!next.empty()) {
            if (next.back() > 2) {
                next.pop_back();
                if (e.size() > base)
                    e.pop();
                continue;
            }
            const Letter a = static_cast<Letter>(next.back()++);
            if (!e.push(a))
                continue;
            ++per[j][e.size()];
            if (++local % 65536 == 0 && total.fetch_add(65536) + 65536 > opts.node_budget) {
                over = true;
                return;
            }
            if (e.size() < n_max)
                next.push_back(0);
            else
                e.pop();
        }
    });
    if (over)
        throw ResourceError("count exceeded the node budget");
    for (std::size_t n = 2; n <= n_max; ++n) {
        std::uint64_t c = top[n];
        for (const auto& v : per)
            c += v[n];
        counts[n - 1] = 6 * c;
    }
    return counts;
}

} // namespace sqfree
