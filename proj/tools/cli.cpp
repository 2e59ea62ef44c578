#include "cli.hpp"

#include "sqfree/construction.hpp"
#include "sqfree/data.hpp"
#include "sqfree/properties.hpp"
#include "sqfree/recurrence.hpp"
#include "sqfree/search.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace sqfree::cli {

using nlohmann::json;

json RunReport::to_json() const
{
    json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["verdict"] = verdict;
    j["evidence_path"] = evidence_path ? json(*evidence_path) : json(nullptr);
    j["results"] = results;
    j["timings"] = timings;
    return j;
}

RunReport RunReport::from_json(const json& j)
{
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    r.verdict = j.at("verdict").get<std::string>();
    if (!j.at("evidence_path").is_null())
        r.evidence_path = j.at("evidence_path").get<std::string>();
    r.results = j.at("results");
    r.timings = j.at("timings").get<std::map<std::string, double>>();
    return r;
}

namespace {

void text_value(std::ostringstream& out, const std::string& indent, const std::string& key, const json& v)
{
    if (v.is_object()) {
        out << indent << key << ":\n";
        for (auto it = v.begin(); it != v.end(); ++it)
            text_value(out, indent + "  ", it.key(), it.value());
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
        out << indent << key << ":\n";
        for (const auto& item : v) {
            out << indent << "  -";
            for (auto it = item.begin(); it != item.end(); ++it)
                out << " " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
            out << "\n";
        }
    } else {
        out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

} // namespace

std::string RunReport::to_text() const
{
    std::ostringstream out;
    out << "command: " << command << "\n";
    for (const auto& [k, v] : parameters)
        out << "  " << k << " = " << v << "\n";
    out << "verdict: " << verdict << "\n";
    if (evidence_path)
        out << "evidence: " << *evidence_path << "\n";
    for (auto it = results.begin(); it != results.end(); ++it)
        text_value(out, "", it.key(), it.value());
    for (const auto& [k, v] : timings)
        out << "time " << k << ": " << v << " s\n";
    return out.str();
}

namespace {

/// Word from a file: whitespace ignored, '#' starts a comment line.
Word read_word_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ArgumentError("cannot open " + path);
    std::string text, line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#')
            continue;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                text.push_back(c);
    }
    return parse_word(text);
}

void write_word_file(const std::string& path, WordView w)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw ArgumentError("cannot write " + path);
    out << to_string(w) << "\n";
}

class Timer {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json lemma_json(const LemmaRecord& r)
{
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"pattern", f.pattern}, {"witness", f.witness}});
    return {{"id", r.id},
            {"description", r.description},
            {"patterns", r.pattern_family},
            {"delta", r.delta},
            {"length", r.length},
            {"patterns_checked", r.patterns_checked},
            {"verdict", r.verdict},
            {"failures", failures}};
}

json word_checks(WordView w, std::size_t p, std::size_t q)
{
    return {{"length", w.size()},
            {"squarefree", is_squarefree(w)},
            {"squarefree_mod_p", is_squarefree(subsequence(w, p))},
            {"squarefree_mod_q", is_squarefree(subsequence(w, q))},
            {"satisfies_star", satisfies_star(w, p, q)}};
}

struct Globals {
    unsigned threads = 1;
    std::string format = "text";
};

int run_verify_lemma(RunReport& rep, const Globals& g, bool all, const std::string& name, bool with_p_bad)
{
    Timer t;
    LemmaOptions o;
    o.threads = g.threads;
    o.include_p_bad_in_triple_sweep = with_p_bad;
    std::vector<LemmaRecord> records;
    if (all)
        records = reproduce_lemma_constants(o);
    else
        records.push_back(run_lemma(name, o));
    bool ok = true;
    json lemmas = json::array();
    for (const auto& r : records) {
        ok = ok && r.verdict;
        lemmas.push_back(lemma_json(r));
        rep.timings["lemma " + r.id] = r.seconds;
    }
    rep.results["lemmas"] = lemmas;
    if (all) {
        json props = json::array();
        for (const auto& c : morphism_properties(g.threads)) {
            ok = ok && c.passed;
            props.push_back({{"id", c.id}, {"description", c.description}, {"passed", c.passed}, {"detail", c.detail}});
            rep.timings["property " + c.id] = c.seconds;
        }
        rep.results["morphism_properties"] = props;
    }
    rep.timings["total"] = t.seconds();
    rep.verdict = ok ? "pass" : "fail";
    return ok ? exit_code::verdict : exit_code::internal;
}

int run_verify_morphism(RunReport& rep, const std::string& file, std::size_t p, std::size_t q,
                        std::optional<std::size_t> alpha)
{
    Timer t;
    const MorphismFile f = load_morphism_file(file);
    const std::size_t a = alpha ? *alpha : f.alpha.value_or(0);
    rep.parameters["alpha"] = std::to_string(a);
    const auto cert = verify_positive_morphism(f.morphism, p, q, a);
    rep.results["image_length"] = f.morphism.uniform_length().value_or(0);
    rep.results["circular"] = is_circular(f.morphism);
    rep.results["squarefree"] = cert.base.squarefree;
    rep.results["squarefree_mod_p"] = cert.mod_p.squarefree;
    rep.results["squarefree_mod_q"] = cert.mod_q.squarefree;

    // Recheck from the primitive predicates.
    bool consistent = true;
    if (cert.verdict) {
        std::mt19937_64 rng(12345);
        const auto pool = enumerate_squarefree(30, parse_word("01"));
        for (int i = 0; i < 20; ++i) {
            const Word img = shift(sqfree::apply(f.morphism, pool[rng() % pool.size()]), a);
            consistent = consistent && is_squarefree(img) && is_squarefree(subsequence(img, p)) &&
                         is_squarefree(subsequence(img, q));
        }
    } else {
        const Word witness_image = failing_image(f.morphism, cert);
        rep.results["failed_check"] = *cert.failed_check;
        rep.results["witness_image"] = to_string(witness_image);
        consistent = !is_squarefree(witness_image);
    }
    rep.results["recheck_consistent"] = consistent;
    rep.timings["total"] = t.seconds();
    rep.verdict = cert.verdict ? "positive" : "rejected";
    return consistent ? exit_code::verdict : exit_code::internal;
}

std::string choose_method(std::size_t p, std::size_t q)
{
    const std::size_t lo = std::min(p, q), hi = std::max(p, q);
    if (lo == 6 && hi >= 341)
        return "p6";
    if (lo >= 331 && hi >= 364 && std::gcd(lo, hi) == 1)
        return "large";
    const auto mods = morphism_moduli();
    if (std::find(mods.begin(), mods.end(), lo) != mods.end() && hi >= load_bundled_morphism(lo).q_min.value_or(0))
        return "circular";
    throw ArgumentError("no construction applies to (" + std::to_string(p) + ", " + std::to_string(q) + ")");
}

int run_construct(RunReport& rep, std::size_t p, std::size_t q, std::size_t length, const std::string& method_in,
                  const std::string& seed_file, const std::string& out_file)
{
    Timer t;
    const std::string method = method_in == "auto" ? choose_method(p, q) : method_in;
    rep.parameters["method"] = method;
    std::optional<Word> seed;
    if (!seed_file.empty())
        seed = read_word_file(seed_file);
    const std::size_t lo = std::min(p, q), hi = std::max(p, q);
    Word w;
    if (method == "large") {
        w = build_large_pq_word(p, q, length, seed);
    } else if (method == "p6") {
        if (lo != 6)
            throw ArgumentError("the p6 method needs 6 as the smaller modulus");
        Word s = seed ? *seed : Word{};
        w = build_p6_word(hi, s, {}, length);
    } else if (method == "circular") {
        const MorphismFile f = load_bundled_morphism(lo);
        const Word tw = seed ? *seed : default_squarefree_word(length / hi + 2);
        w = build_from_circular_morphism(f.morphism, f.k.value_or(1), lo, f.alpha.value_or(0), hi, tw, length);
        rep.evidence_path = morphism_path(lo).string();
    } else {
        throw ArgumentError("unknown method " + method);
    }
    rep.timings["construct"] = t.seconds();
    Timer v;
    const json checks = word_checks(w, p, q);
    rep.results["checks"] = checks;
    bool ok = checks["squarefree"] && checks["squarefree_mod_p"] && checks["squarefree_mod_q"] && w.size() == length;
    if (seed) {
        const Word sub = subsequence(w, hi);
        const bool prefix_ok = sub.size() <= seed->size() && std::equal(sub.begin(), sub.end(), seed->begin());
        rep.results["follows_seed"] = prefix_ok;
        ok = ok && prefix_ok;
    }
    rep.timings["scan"] = v.seconds();
    if (!out_file.empty()) {
        write_word_file(out_file, w);
        rep.evidence_path = out_file;
    } else {
        rep.results["word"] = to_string(w);
    }
    rep.verdict = ok ? "verified" : "scan-failed";
    return ok ? exit_code::verdict : exit_code::internal;
}

int run_prove_negative(RunReport& rep, const Globals& g, std::size_t p, std::size_t q, std::size_t max_len,
                       std::uint64_t node_cap, const std::string& checkpoint, bool resume, bool relaxed)
{
    Timer t;
    BacktrackOptions o;
    o.max_length = max_len;
    o.node_cap = node_cap;
    o.threads = g.threads;
    o.squarefree_carrier = !relaxed;
    o.resume = resume;
    if (!checkpoint.empty()) {
        o.checkpoint = checkpoint;
        rep.evidence_path = checkpoint;
    }
    const SearchOutcome r = backtrack(p, q, o);
    rep.timings["search"] = t.seconds();
    rep.results["status"] = to_string(r.status);
    rep.results["longest"] = to_string(r.longest);
    rep.results["longest_length"] = r.longest_length;
    rep.results["nodes_expanded"] = r.nodes_expanded;
    const bool recheck = qualifies(r.longest, p, q, !relaxed);
    rep.results["longest_qualifies"] = recheck;
    if (!recheck) {
        rep.verdict = "inconsistent";
        return exit_code::internal;
    }
    if (r.status == SearchStatus::Terminated) {
        rep.verdict = "negative";
        return exit_code::verdict;
    }
    rep.verdict = "limit-reached";
    return exit_code::limit;
}

int run_classify(RunReport& rep, const Globals& g, std::optional<std::size_t> p, std::optional<std::size_t> q,
                 bool sweep, bool replay)
{
    Timer t;
    if (sweep) {
        const auto c = count_unresolved_pairs();
        rep.results["unresolved_ordered_coprime_pairs"] = c.unknown;
        rep.results["unresolved_outside_small_region"] = c.unknown_outside_small;
        rep.timings["sweep"] = t.seconds();
        if (!p || !q) {
            rep.verdict = "counted";
            return exit_code::verdict;
        }
    }
    if (!p || !q)
        throw ArgumentError("classify needs --p and --q (or --count-unresolved)");
    const PairReport r = classify_pair(*p, *q);
    rep.verdict = to_string(r.verdict);
    rep.results["evidence"] = to_string(r.evidence);
    rep.results["detail"] = r.detail;
    rep.results["replayable"] = r.replayable;
    if (r.reduction)
        rep.results["reduction"] = {{"base_p", r.reduction->p},
                                    {"base_q", r.reduction->q},
                                    {"k", r.reduction->k},
                                    {"statement", r.reduction->statement}};
    if (r.morphism_file)
        rep.evidence_path = *r.morphism_file;
    if (replay && r.replayable) {
        Timer rt;
        bool ok = true;
        if (r.evidence == EvidenceKind::NegativeFamily || r.evidence == EvidenceKind::TerminatedSearch) {
            BacktrackOptions o;
            o.threads = g.threads;
            std::size_t bp = std::min(*p, *q), bq = std::max(*p, *q);
            if (r.reduction) {
                bp = r.reduction->p;
                bq = r.reduction->q;
                o.squarefree_carrier = false;
            }
            const SearchOutcome s = backtrack(bp, bq, o);
            rep.results["replay_search"] = {{"p", bp},
                                            {"q", bq},
                                            {"relaxed", r.reduction.has_value()},
                                            {"status", to_string(s.status)},
                                            {"longest_length", s.longest_length},
                                            {"nodes_expanded", s.nodes_expanded}};
            ok = s.status == SearchStatus::Terminated;
        } else if (r.evidence == EvidenceKind::MorphismCertificate) {
            const std::size_t lo = std::min(*p, *q);
            ok = certify_bundled_morphism(lo).passed();
            rep.results["replay_certificate"] = ok;
        } else {
            rep.results["replay"] = "use the construct subcommand";
        }
        rep.timings["replay"] = rt.seconds();
        if (!ok) {
            rep.verdict = "replay-failed";
            return exit_code::internal;
        }
    }
    rep.timings["total"] = t.seconds();
    return exit_code::verdict;
}

int run_mine(RunReport& rep, std::size_t p, std::size_t q, std::size_t iterations, std::uint64_t budget,
             const std::string& out_file)
{
    Timer t;
    MiningOptions o;
    o.iterations = iterations;
    o.word_budget = budget;
    const MiningResult m = mine_pansiot(p, q, o);
    rep.timings["mine"] = t.seconds();
    rep.results["surviving_codes"] = m.surviving_codes;
    rep.results["iterations"] = m.iterations_done;
    rep.results["word_length"] = m.word_length;
    if (!m.morphism) {
        rep.verdict = "absent";
        return exit_code::limit;
    }
    const bool ok = verify_positive_morphism(*m.morphism, p, q).verdict;
    rep.results["image0"] = to_string(m.morphism->image(0));
    rep.results["image1"] = to_string(m.morphism->image(1));
    rep.results["image2"] = to_string(m.morphism->image(2));
    rep.results["verified"] = ok;
    if (!out_file.empty()) {
        MorphismFile f;
        f.morphism = *m.morphism;
        std::ofstream out(out_file, std::ios::trunc);
        out << format_morphism_file(f);
        rep.evidence_path = out_file;
    }
    rep.verdict = ok ? "found" : "unverified";
    return ok ? exit_code::verdict : exit_code::internal;
}

int run_count(RunReport& rep, const Globals& g, std::size_t p, std::size_t q, std::size_t n)
{
    Timer t;
    CountOptions o;
    o.threads = g.threads;
    const auto counts = count_words(p, q, n, o);
    rep.timings["count"] = t.seconds();
    json rows = json::array();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double root = counts[i] ? std::pow(static_cast<double>(counts[i]), 1.0 / double(i + 1)) : 0.0;
        std::ostringstream r;
        r.precision(6);
        r << std::fixed << root;
        rows.push_back({{"n", i + 1}, {"count", counts[i]}, {"root", r.str()}});
    }
    rep.results["counts"] = rows;
    rep.verdict = "counted";
    return exit_code::verdict;
}

int run_verify_word(RunReport& rep, const std::string& file, std::size_t p, std::size_t q)
{
    Timer t;
    Word w;
    try {
        w = read_word_file(file);
    } catch (const ArgumentError& e) {
        throw ParseFailure(e.what());
    }
    const json checks = word_checks(w, p, q);
    rep.results["checks"] = checks;
    rep.timings["scan"] = t.seconds();
    const bool all = checks["squarefree"] && checks["squarefree_mod_p"] && checks["squarefree_mod_q"];
    rep.verdict = all ? "qualifies" : "fails";
    return exit_code::verdict;
}

} // namespace

DispatchResult dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Square-free words modulo p and q: verification, construction and search", "sqfree-mod"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"text", "json"}));

    RunReport rep;
    std::function<int()> action;

    auto* lemma = app.add_subcommand("verify-lemma", "re-run the exhaustive lemma checks");
    bool all = false, with_p_bad = false;
    std::string lemma_name;
    auto* all_opt = lemma->add_flag("--all", all, "every lemma plus the morphism properties");
    lemma->add_option("--name", lemma_name, "one lemma id")->excludes(all_opt)->check(CLI::IsMember(lemma_ids()));
    lemma->add_flag("--include-p-bad", with_p_bad, "add the bad triples to the triple sweep");
    lemma->callback([&] {
        if (!all && lemma_name.empty())
            throw CLI::ValidationError("verify-lemma", "give --all or --name");
        rep.parameters["selection"] = all ? "all" : lemma_name;
        action = [&] { return run_verify_lemma(rep, g, all, lemma_name, with_p_bad); };
    });

    std::size_t p = 0, q = 0;
    std::optional<std::size_t> op, oq;
    auto add_pq = [&](CLI::App* sub, bool required) {
        auto* a = sub->add_option("--p", p, "first modulus")->check(CLI::PositiveNumber);
        auto* b = sub->add_option("--q", q, "second modulus")->check(CLI::PositiveNumber);
        if (required) {
            a->required();
            b->required();
        }
    };
    auto record_pq = [&] {
        rep.parameters["p"] = std::to_string(p);
        rep.parameters["q"] = std::to_string(q);
    };

    auto* vm = app.add_subcommand("verify-morphism", "check a uniform morphism file for a pair");
    std::string file;
    std::optional<std::size_t> alpha;
    vm->add_option("--file", file, "morphism file")->required();
    vm->add_option("--alpha", alpha, "offset (default: the file's alpha, else 0)");
    add_pq(vm, true);
    vm->callback([&] {
        record_pq();
        rep.parameters["file"] = file;
        action = [&] { return run_verify_morphism(rep, file, p, q, alpha); };
    });

    auto* cons = app.add_subcommand("construct", "build a qualifying word prefix");
    std::size_t length = 0;
    std::string method = "auto", seed, out_file;
    add_pq(cons, true);
    cons->add_option("--length", length, "prefix length")->required()->check(CLI::PositiveNumber);
    cons->add_option("--method", method)->check(CLI::IsMember({"auto", "large", "circular", "p6"}));
    cons->add_option("--seed", seed, "word file prescribing the subsequence at multiples of the larger modulus");
    cons->add_option("--out", out_file, "write the word here");
    cons->callback([&] {
        record_pq();
        rep.parameters["length"] = std::to_string(length);
        action = [&] { return run_construct(rep, p, q, length, method, seed, out_file); };
    });

    auto* neg = app.add_subcommand("prove-negative", "exhaustive lexicographic search");
    std::size_t max_len = 10000;
    std::uint64_t node_cap = 1000000000;
    std::string checkpoint;
    bool resume = false, relaxed = false;
    add_pq(neg, true);
    neg->add_option("--max-len", max_len)->check(CLI::PositiveNumber);
    neg->add_option("--node-cap", node_cap)->check(CLI::PositiveNumber);
    neg->add_option("--checkpoint", checkpoint, "progress file");
    neg->add_flag("--resume", resume, "continue from the checkpoint");
    neg->add_flag("--relaxed", relaxed, "do not require the word itself to be square-free");
    neg->callback([&] {
        record_pq();
        rep.parameters["max_len"] = std::to_string(max_len);
        rep.parameters["node_cap"] = std::to_string(node_cap);
        rep.parameters["relaxed"] = relaxed ? "true" : "false";
        action = [&] { return run_prove_negative(rep, g, p, q, max_len, node_cap, checkpoint, resume, relaxed); };
    });

    auto* cls = app.add_subcommand("classify", "classify a pair");
    bool sweep = false, replay = false;
    auto* cp = cls->add_option("--p", op)->check(CLI::PositiveNumber);
    auto* cq = cls->add_option("--q", oq)->check(CLI::PositiveNumber);
    cp->needs(cq);
    cq->needs(cp);
    cls->add_flag("--count-unresolved", sweep, "count coprime pairs left unknown");
    cls->add_flag("--replay", replay, "rerun the evidence when the artifact can");
    cls->callback([&] {
        if (op) {
            rep.parameters["p"] = std::to_string(*op);
            rep.parameters["q"] = std::to_string(*oq);
        }
        if (sweep)
            rep.parameters["count_unresolved"] = "true";
        action = [&] { return run_classify(rep, g, op, oq, sweep, replay); };
    });

    auto* mine = app.add_subcommand("mine", "search for a morphism through Pansiot codes");
    std::size_t iterations = 200;
    std::uint64_t budget = 2000000;
    add_pq(mine, true);
    mine->add_option("--iterations", iterations);
    mine->add_option("--budget", budget, "nodes per word search");
    mine->add_option("--out", out_file, "write the morphism here");
    mine->callback([&] {
        record_pq();
        action = [&] { return run_mine(rep, p, q, iterations, budget, out_file); };
    });

    auto* cnt = app.add_subcommand("count", "count qualifying words by length");
    std::size_t n = 0;
    add_pq(cnt, true);
    cnt->add_option("--n", n, "largest length")->required()->check(CLI::PositiveNumber);
    cnt->callback([&] {
        record_pq();
        rep.parameters["n"] = std::to_string(n);
        action = [&] { return run_count(rep, g, p, q, n); };
    });

    auto* vw = app.add_subcommand("verify-word", "check a word file");
    add_pq(vw, true);
    vw->add_option("--file", file, "word file")->required();
    vw->callback([&] {
        record_pq();
        rep.parameters["file"] = file;
        action = [&] { return run_verify_word(rep, file, p, q); };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return {exit_code::verdict, std::nullopt};
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return {exit_code::verdict, std::nullopt};
    } catch (const CLI::ParseError& e) {
        err << "sqfree-mod: " << e.what() << "\n" << app.help();
        return {exit_code::usage, std::nullopt};
    }

    for (auto* sub : app.get_subcommands())
        rep.command = sub->get_name();
    if (g.threads != 1)
        rep.parameters["threads"] = std::to_string(g.threads);

    int code = exit_code::internal;
    try {
        code = action();
    } catch (const ParseFailure& e) {
        err << "sqfree-mod: " << e.what() << "\n";
        return {exit_code::parse, std::nullopt};
    } catch (const ArgumentError& e) {
        err << "sqfree-mod: " << e.what() << "\n";
        return {exit_code::usage, std::nullopt};
    } catch (const std::exception& e) {
        err << "sqfree-mod: internal error: " << e.what() << "\n";
        return {exit_code::internal, std::nullopt};
    }
    if (g.format == "json")
        out << rep.to_json().dump(2) << "\n";
    else
        out << rep.to_text();
    return {code, rep};
}

} // namespace sqfree::cli
