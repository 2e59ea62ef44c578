#include "sqfree/recurrence.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace sqfree {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f)
{
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

namespace {

void require_decidable(const Pattern& p, std::size_t delta, std::size_t factor_length)
{
    if (p.alternatives().empty())
        throw ArgumentError("empty pattern");
    if (factor_length < delta + p.max_length())
        throw ArgumentError("factor length " + std::to_string(factor_length) +
                            " too small to decide recurrence within " + std::to_string(delta) +
                            " for a pattern of length " + std::to_string(p.max_length()));
}

} // namespace

RecurrenceCertificate check_recurrent(const Pattern& p, std::size_t delta, std::size_t factor_length)
{
    require_decidable(p, delta, factor_length);
    const FactorSet fs = enumerate_h26_factors(factor_length);
    RecurrenceCertificate cert;
    cert.pattern = p;
    cert.delta = delta;
    cert.factor_length = factor_length;
    cert.preimage_length = fs.preimage_length;
    cert.verdict = true;
    std::size_t worst = 0;
    bool all_found = true;
    for (const Word& f : fs.factors) {
        ++cert.factors_checked;
        const auto pos = pattern_first_occurrence(f, p);
        if (!pos)
            all_found = false;
        else
            worst = std::max(worst, *pos);
        if ((!pos || *pos > delta) && cert.verdict) {
            cert.verdict = false;
            cert.witness = f;
        }
    }
    if (all_found)
        cert.worst_position = worst;
    return cert;
}

std::optional<std::size_t> min_recurrence_delta(const Pattern& p, std::size_t factor_length)
{
    require_decidable(p, 0, factor_length);
    const auto cert = check_recurrent(p, 0, factor_length);
    if (!cert.worst_position || *cert.worst_position + p.max_length() > factor_length)
        return std::nullopt;
    return cert.worst_position;
}

const ConstructionWitness& ConstructibilityCertificate::witness_for(WordView preimage) const
{
    for (const auto& w : witnesses)
        if (std::equal(w.preimage.begin(), w.preimage.end(), preimage.begin(), preimage.end()))
            return w;
    throw ArgumentError("no witness for pre-image " + to_string(preimage));
}

ConstructibilityCertificate check_constructible(const Pattern& p, std::size_t delta, std::size_t k)
{
    if (k == 0)
        throw ArgumentError("pre-image length must be positive");
    if (p.alternatives().empty())
        throw ArgumentError("empty pattern");
    ConstructibilityCertificate cert;
    cert.pattern = p;
    cert.delta = delta;
    cert.preimage_length = k;
    cert.verdict = true;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i)
        combos *= 4;
    for (const Word& t : enumerate_squarefree(k)) {
        ConstructionWitness best;
        best.preimage = t;
        GuidingSequence gamma(k);
        for (std::size_t c = 0; c < combos; ++c) {
            std::size_t code = c;
            for (std::size_t i = k; i-- > 0;) {
                gamma[i] = static_cast<GuidingValue>(h_min_length + code % 4);
                code /= 4;
            }
            const auto pos = pattern_first_occurrence(apply_h(t, gamma), p);
            if (pos && (!best.position || *pos < *best.position)) {
                best.position = pos;
                best.gamma = gamma;
            }
        }
        if (!best.position || *best.position > delta)
            cert.verdict = false;
        cert.witnesses.push_back(std::move(best));
    }
    return cert;
}

bool replay_certificate(const ConstructibilityCertificate& cert)
{
    for (const auto& w : cert.witnesses) {
        if (!w.position)
            return false;
        const auto pos = pattern_first_occurrence(apply_h(w.preimage, w.gamma), cert.pattern);
        if (pos != w.position)
            return false;
    }
    return true;
}

Pattern gap_pattern(Letter a, Letter b, std::size_t gap)
{
    return make_constraint_pattern({{letter_set(a), gap}, {letter_set(b), 0}});
}

Pattern forbidden_gap_pattern(Letter a, Letter b, std::size_t gap)
{
    return make_constraint_pattern({{complement(a), gap}, {complement(b), 0}});
}

Pattern triple_pattern(Letter a, Letter b, Letter c, std::size_t gap)
{
    return make_constraint_pattern({{complement(a), gap}, {letter_set(b), gap}, {complement(c), 0}});
}

ConstructibilityCertificate constructible_delta16_analytic(Letter a, Letter b, std::size_t gap)
{
    if (gap < 16)
        throw ArgumentError("the analytic construction needs a gap of at least 16");
    if (a >= 3 || b >= 3)
        throw ArgumentError("letters must be ternary");
    const std::size_t k = std::max<std::size_t>(2, (gap + 7 + h_max_length - 1) / h_max_length);
    ConstructibilityCertificate cert;
    cert.pattern = gap_pattern(a, b, gap);
    cert.delta = 2;
    cert.preimage_length = k;
    cert.verdict = true;
    for (const Word& t : enumerate_squarefree(k)) {
        // h(x) starts with x, x+1, x+2
        const std::size_t ell = (a + 3 - t[0]) % 3;
        const Word full = apply_h26(t);
        const std::size_t target = ell + gap + 1;
        std::size_t shortening = 0;
        while (shortening <= 3 && full.at(target + shortening) != b)
            ++shortening;
        if (shortening > 3)
            throw VerificationError("no letter " + std::to_string(b) + " within 4 letters of the target");
        ConstructionWitness w;
        w.preimage = t;
        w.gamma = constant_guiding(k);
        w.gamma[0] = static_cast<GuidingValue>(h_max_length - shortening);
        w.position = pattern_first_occurrence(apply_h(t, w.gamma), cert.pattern);
        if (!w.position || *w.position > 2)
            cert.verdict = false;
        cert.witnesses.push_back(std::move(w));
    }
    return cert;
}

namespace {

struct BadTemplate {
    std::size_t gap;
    unsigned middle_rotation;
    unsigned right_rotation;
};

constexpr std::array<BadTemplate, 12> bad_templates{{
    {16, 0, 0}, {16, 0, 2}, {14, 0, 1}, {12, 0, 0}, {12, 2, 0}, {12, 1, 2},
    {10, 1, 0}, {8, 2, 0},  {8, 1, 2},  {6, 2, 1},  {0, 2, 0},  {0, 1, 0},
}};

} // namespace

std::string TripleSpec::str() const
{
    const auto g = std::to_string(gap);
    return "!" + std::to_string(left_forbidden) + "<>" + g + " " + std::to_string(middle) + "<>" + g +
           " !" + std::to_string(right_forbidden);
}

const std::vector<TripleSpec>& p_bad_catalogue()
{
    static const std::vector<TripleSpec> cat = [] {
        std::vector<TripleSpec> out;
        for (const auto& t : bad_templates)
            for (Letter a = 0; a < 3; ++a)
                out.push_back({a, rotate(a, t.middle_rotation), rotate(a, t.right_rotation), t.gap});
        return out;
    }();
    return cat;
}

bool is_p_bad(const TripleSpec& t)
{
    const auto& cat = p_bad_catalogue();
    return std::find(cat.begin(), cat.end(), t) != cat.end();
}

std::string p_bad_templates_text()
{
    std::string out;
    for (const auto& t : bad_templates)
        out += std::to_string(t.gap) + " " + std::to_string(t.middle_rotation) + " " +
               std::to_string(t.right_rotation) + "\n";
    return out;
}

namespace {

struct Job {
    std::string label;
    Pattern pattern;
};

std::vector<Job> two_letter_jobs(const std::vector<std::size_t>& gaps)
{
    std::vector<Job> jobs;
    for (std::size_t g : gaps)
        for (Letter a = 0; a < 3; ++a)
            for (Letter b = 0; b < 3; ++b) {
                const auto p = gap_pattern(a, b, g);
                jobs.push_back({p.str(), p});
            }
    return jobs;
}

std::vector<Job> triple_jobs(bool bad, bool good)
{
    std::vector<Job> jobs;
    for (std::size_t g = 0; g <= 17; ++g)
        for (Letter a = 0; a < 3; ++a)
            for (Letter b = 0; b < 3; ++b)
                for (Letter c = 0; c < 3; ++c) {
                    const TripleSpec t{a, b, c, g};
                    const bool member = is_p_bad(t);
                    if ((member && bad) || (!member && good))
                        jobs.push_back({t.str(), t.pattern()});
                }
    return jobs;
}

void recurrence_sweep(LemmaRecord& rec, const std::vector<Job>& jobs, std::size_t delta,
                      std::size_t factor_length, unsigned threads, bool expect_failure = false)
{
    rec.delta = delta;
    rec.length = factor_length;
    rec.patterns_checked = jobs.size();
    enumerate_h26_factors(factor_length);
    std::vector<RecurrenceCertificate> certs(jobs.size());
    parallel_for(jobs.size(), threads,
                 [&](std::size_t i) { certs[i] = check_recurrent(jobs[i].pattern, delta, factor_length); });
    rec.verdict = true;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (certs[i].verdict == !expect_failure)
            continue;
        rec.verdict = false;
        rec.failures.push_back({jobs[i].label, certs[i].witness ? to_string(*certs[i].witness) : ""});
    }
}

void constructible_sweep(LemmaRecord& rec, const std::vector<Job>& jobs, std::size_t delta, unsigned threads)
{
    rec.delta = delta;
    rec.length = 2;
    rec.patterns_checked = jobs.size();
    std::vector<ConstructibilityCertificate> certs(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i) { certs[i] = check_constructible(jobs[i].pattern, delta, 2); });
    rec.verdict = true;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (certs[i].verdict && replay_certificate(certs[i]))
            continue;
        rec.verdict = false;
        std::string bad;
        for (const auto& w : certs[i].witnesses)
            if (!w.position || *w.position > delta)
                bad += (bad.empty() ? "" : ",") + to_string(w.preimage);
        rec.failures.push_back({jobs[i].label, bad});
    }
}

} // namespace

std::vector<std::string> lemma_ids()
{
    return {"ab-12",        "a-gap-b-27",  "not-gap-not-6", "triple-27",  "p-bad-excluded",
            "a-gap3-b-10h", "a-gap-b-8h",  "a-gap-b-2h",    "p-bad-13h",  "uv-pairs-6"};
}

LemmaRecord run_lemma(const std::string& id, const LemmaOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    const auto len = [&](std::size_t dflt) { return opts.factor_length_override.value_or(dflt); };
    LemmaRecord rec;
    rec.id = id;
    if (id == "ab-12") {
        rec.description = "ab with a != b is (12, h26)-recurrent";
        rec.pattern_family = "ab";
        std::vector<Job> jobs;
        for (Letter a = 0; a < 3; ++a)
            for (Letter b = 0; b < 3; ++b)
                if (a != b)
                    jobs.push_back({to_string(Word{a, b}), Pattern{Word{a, b}}});
        recurrence_sweep(rec, jobs, 12, len(40), opts.threads);
    } else if (id == "a-gap-b-27") {
        rec.description = "a<>^d b for d in {1,2,4,...,8} is (27, h26)-recurrent";
        rec.pattern_family = "a<>^d b";
        recurrence_sweep(rec, two_letter_jobs({1, 2, 4, 5, 6, 7, 8}), 27, len(40), opts.threads);
    } else if (id == "not-gap-not-6") {
        rec.description = "!a<>^d !b for d <= 17 is (6, h26)-recurrent";
        rec.pattern_family = "!a<>^d !b";
        std::vector<Job> jobs;
        for (std::size_t g = 0; g <= 17; ++g)
            for (Letter a = 0; a < 3; ++a)
                for (Letter b = 0; b < 3; ++b) {
                    const auto p = forbidden_gap_pattern(a, b, g);
                    jobs.push_back({p.str(), p});
                }
        recurrence_sweep(rec, jobs, 6, len(30), opts.threads);
    } else if (id == "triple-27") {
        rec.description = "!a<>^d b<>^d !c for d <= 17 outside the bad set is (27, h26)-recurrent";
        rec.pattern_family = "!a<>^d b<>^d !c";
        recurrence_sweep(rec, triple_jobs(opts.include_p_bad_in_triple_sweep, true), 27, len(70), opts.threads);
    } else if (id == "p-bad-excluded") {
        rec.description = "every bad triple pattern fails (27, h26)-recurrence";
        rec.pattern_family = "bad triples";
        recurrence_sweep(rec, triple_jobs(true, false), 27, len(70), opts.threads, true);
    } else if (id == "a-gap3-b-10h") {
        rec.description = "a<>^3 b is (10, h)-constructible";
        rec.pattern_family = "a<>^3 b";
        constructible_sweep(rec, two_letter_jobs({3}), 10, opts.threads);
    } else if (id == "a-gap-b-8h") {
        rec.description = "a<>^d b for 9 <= d <= 15 is (8, h)-constructible";
        rec.pattern_family = "a<>^d b";
        constructible_sweep(rec, two_letter_jobs({9, 10, 11, 12, 13, 14, 15}), 8, opts.threads);
    } else if (id == "a-gap-b-2h") {
        rec.description = "a<>^d b for d >= 16 is (2, h)-constructible by inspection (checked up to the gap limit)";
        rec.pattern_family = "a<>^d b";
        rec.delta = 2;
        rec.length = 2;
        rec.verdict = true;
        for (std::size_t g = 16; g <= opts.analytic_max_gap; ++g)
            for (Letter a = 0; a < 3; ++a)
                for (Letter b = 0; b < 3; ++b) {
                    ++rec.patterns_checked;
                    const auto cert = constructible_delta16_analytic(a, b, g);
                    if (!cert.verdict || !replay_certificate(cert)) {
                        rec.verdict = false;
                        rec.failures.push_back({cert.pattern.str(), ""});
                    }
                }
    } else if (id == "p-bad-13h") {
        rec.description = "every bad triple pattern is (13, h)-constructible";
        rec.pattern_family = "bad triples";
        constructible_sweep(rec, triple_jobs(true, false), 13, opts.threads);
    } else if (id == "uv-pairs-6") {
        rec.description = "{u, v} for distinct square-free words of length 2 is (6, h26)-recurrent";
        rec.pattern_family = "{u, v}";
        const auto words = enumerate_squarefree(2);
        std::vector<Job> jobs;
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                const Pattern p{words[i], words[j]};
                jobs.push_back({"{" + to_string(words[i]) + "," + to_string(words[j]) + "}", p});
            }
        recurrence_sweep(rec, jobs, 6, len(30), opts.threads);
    } else {
        throw ArgumentError("unknown lemma id '" + id + "'");
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<LemmaRecord> reproduce_lemma_constants(const LemmaOptions& opts)
{
    std::vector<LemmaRecord> out;
    for (const auto& id : lemma_ids())
        out.push_back(run_lemma(id, opts));
    return out;
}

} // namespace sqfree
