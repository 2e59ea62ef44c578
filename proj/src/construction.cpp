#include "sqfree/construction.hpp"

#include "sqfree/rule_set.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace sqfree {

ConstructionState ConstructionState::start(Word base)
{
    ConstructionState s;
    s.gamma = constant_guiding(base.size());
    s.base = std::move(base);
    return s;
}

std::size_t ConstructionState::image_start(std::size_t n) const
{
    if (n > gamma.size())
        throw ArgumentError("image index past the pre-image");
    return std::accumulate(gamma.begin(), gamma.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});
}

namespace {

/// Letters of images first, first+1, ... starting at absolute position
/// start(first), until at least `end` absolute letters are covered.
Word render(const Word& base, const GuidingSequence& gamma, std::size_t first, std::size_t start, std::size_t end)
{
    Word out;
    for (std::size_t i = first; i < base.size() && start + out.size() < end; ++i) {
        const Word& img = h_image(base[i], gamma[i]);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

std::size_t prefix_sum(const GuidingSequence& g, std::size_t n)
{
    return std::accumulate(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::vector<std::vector<unsigned>> decompositions(std::size_t d)
{
    std::vector<std::vector<unsigned>> out;
    const auto add = [&](std::vector<unsigned> v) {
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(std::move(v));
    };
    const std::size_t q = d / 3, r = d % 3;
    std::vector<unsigned> canonical(q, 3);
    if (r)
        canonical.push_back(static_cast<unsigned>(r));
    add(canonical);
    if (r) {
        std::vector<unsigned> v{static_cast<unsigned>(r)};
        v.insert(v.end(), q, 3);
        add(v);
    }
    for (std::size_t c = ceil_div(d, 3); c <= ceil_div(d, 3) + 2 && c <= d; ++c) {
        std::vector<unsigned> v(c, static_cast<unsigned>(d / c));
        for (std::size_t i = 0; i < d % c; ++i)
            ++v[i];
        add(v);
    }
    return out;
}

struct Placement {
    const Pattern* pattern;
    std::size_t N_prime;
    std::size_t protect;
};

/// Prefix [0, protect] unchanged and the pattern at N'.
bool placement_holds(const ConstructionState& s, const GuidingSequence& before, const GuidingSequence& after,
                     std::size_t from_image, const Placement& pl)
{
    std::size_t f = 0;
    while (f < before.size() && before[f] == after[f])
        ++f;
    f = std::min(f, from_image);
    const std::size_t start = prefix_sum(after, f);
    if (start > pl.N_prime)
        throw VerificationError("placement window starts after the target position");
    const Word old_w = render(s.base, before, f, start, pl.protect + 1);
    const Word new_w = render(s.base, after, f, start, pl.N_prime + pl.pattern->max_length());
    for (std::size_t i = start; i <= pl.protect; ++i) {
        const std::size_t k = i - start;
        if (k >= old_w.size() || k >= new_w.size() || old_w[k] != new_w[k])
            return false;
    }
    return pl.pattern->occurs_at(new_w, pl.N_prime - start);
}

std::string trace(std::size_t N, std::size_t N_prime, std::size_t protect, const Pattern& p, std::size_t shift)
{
    std::ostringstream os;
    os << "N=" << N << " N'=" << N_prime << " protect=" << protect << " pattern=" << p.str() << " shift=" << shift;
    return os.str();
}

ContractionReport shift_into_place(ConstructionState& s, std::size_t N, std::size_t N_prime, const Pattern& p,
                                   std::size_t max_shift, std::size_t protect,
                                   const ConstructibilityCertificate* cert)
{
    if (protect < N)
        throw ArgumentError("protected prefix must cover N");
    if (protect >= N_prime)
        throw ArgumentError("target position inside the protected prefix");
    ContractionReport rep;
    std::size_t n = 0, S = 0;
    while (protect > 11 + S) {
        if (n >= s.base.size())
            throw ResourceError("pre-image too short for the protected prefix");
        S += s.gamma[n++];
    }
    rep.reset_index = n;
    const GuidingSequence before = s.gamma;
    GuidingSequence work = s.gamma;
    std::fill(work.begin() + static_cast<std::ptrdiff_t>(n), work.end(), h_max_length);

    std::size_t splice_end = work.size();
    if (cert) {
        std::size_t m = n, Sm = S;
        while (Sm < N_prime) {
            if (m >= work.size())
                throw ResourceError("pre-image too short for the splice");
            Sm += work[m++];
        }
        const std::size_t k = cert->preimage_length;
        if (m + k > s.base.size())
            throw ResourceError("pre-image too short for the splice");
        const auto& w = cert->witness_for(WordView(s.base).subspan(m, k));
        std::copy(w.gamma.begin(), w.gamma.end(), work.begin() + static_cast<std::ptrdiff_t>(m));
        rep.splice_index = m;
        splice_end = m;
    }

    const Word window = render(s.base, work, n, S, N_prime + max_shift + p.max_length());
    std::optional<std::size_t> shift;
    for (std::size_t d = 0; d <= max_shift; ++d)
        if (p.occurs_at(window, N_prime + d - S)) {
            shift = d;
            break;
        }
    if (!shift)
        throw VerificationError("pattern not found within the certified distance after the tail reset: " +
                                trace(N, N_prime, protect, p, max_shift));
    rep.shift = *shift;
    const Placement pl{&p, N_prime, protect};

    if (*shift == 0) {
        if (!placement_holds(s, before, work, n, pl))
            throw VerificationError("tail reset broke the protected prefix: " + trace(N, N_prime, protect, p, 0));
        s.gamma = std::move(work);
        s.satisfied_upto = N_prime + p.max_length() - 1;
        return rep;
    }

    std::vector<std::size_t> starts;
    for (std::size_t m = n; m <= n + 3; ++m)
        starts.push_back(m);
    if (n > 0)
        starts.push_back(n - 1);
    const auto decomps = decompositions(*shift);
    std::size_t variant = 0;
    for (std::size_t m : starts)
        for (const auto& parts : decomps) {
            GuidingSequence g = work;
            bool ok = true;
            for (std::size_t i = 0; i < parts.size() && ok; ++i) {
                const std::size_t idx = m + i;
                if (idx >= splice_end || g[idx] < h_min_length + parts[i])
                    ok = false;
                else
                    g[idx] = static_cast<GuidingValue>(g[idx] - parts[i]);
            }
            if (ok && placement_holds(s, before, g, std::min(n, m), pl)) {
                rep.variant = variant;
                s.gamma = std::move(g);
                s.satisfied_upto = N_prime + p.max_length() - 1;
                return rep;
            }
            ++variant;
        }
    throw VerificationError("no contraction layout places the pattern: " + trace(N, N_prime, protect, p, *shift));
}

} // namespace

Word ConstructionState::image_prefix(std::size_t length) const
{
    return render(base, gamma, 0, 0, length);
}

ContractionReport contract_recurrent(ConstructionState& state, std::size_t N, std::size_t N_prime,
                                     const Pattern& p, std::size_t delta, std::optional<std::size_t> protect)
{
    if (N_prime < N + 4 + 26 * ceil_div(delta, 3))
        throw ArgumentError("gap too small for a recurrent contraction: N=" + std::to_string(N) +
                            " N'=" + std::to_string(N_prime) + " delta=" + std::to_string(delta));
    return shift_into_place(state, N, N_prime, p, delta, protect.value_or(N), nullptr);
}

ContractionReport contract_constructible(ConstructionState& state, std::size_t N, std::size_t N_prime,
                                         const ConstructibilityCertificate& cert, std::optional<std::size_t> protect)
{
    if (!cert.verdict)
        throw ArgumentError("certificate does not establish constructibility");
    if (N_prime < N + 26 * ceil_div(cert.delta + 1, 3) + 198)
        throw ArgumentError("gap too small for a constructible contraction: N=" + std::to_string(N) +
                            " N'=" + std::to_string(N_prime) + " delta=" + std::to_string(cert.delta));
    return shift_into_place(state, N, N_prime, cert.pattern, cert.delta + 25, protect.value_or(N), &cert);
}

Word fill_partial_word(const PartialWord& v)
{
    const std::size_t n = v.size();
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < n; ++i) {
        if (!v.forced(i))
            continue;
        if (v[i] >= ternary)
            throw ArgumentError("forced cell outside the ternary alphabet");
        if (last && i - *last < 19)
            throw ArgumentError("forced cells " + std::to_string(*last) + " and " + std::to_string(i) +
                                " are separated by fewer than 18 wildcards");
        last = i;
    }
    Word w(n);
    std::vector<int> tried(n, -1);
    std::size_t i = 0;
    while (i < n) {
        bool placed = false;
        if (v.forced(i)) {
            if (tried[i] < 0) {
                tried[i] = 3;
                w[i] = v[i];
                placed = !has_square_ending_at(w, i);
            }
        } else {
            while (++tried[i] < 3) {
                w[i] = static_cast<Letter>(tried[i]);
                if (!has_square_ending_at(w, i)) {
                    placed = true;
                    break;
                }
            }
        }
        if (placed) {
            ++i;
            continue;
        }
        tried[i] = -1;
        if (i == 0)
            throw VerificationError("partial word has no square-free completion");
        --i;
    }
    return w;
}

Word default_squarefree_word(std::size_t length, Letter first)
{
    static std::mutex mutex;
    static Word cache;
    Word base;
    {
        std::lock_guard lock(mutex);
        if (cache.size() < length)
            cache = fill_partial_word(PartialWord(std::max<std::size_t>(length, 2 * cache.size())));
        base.assign(cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(length));
    }
    return rotate(base, first);
}

Word prescribe_palindromes(const std::vector<std::size_t>& positions, const std::vector<bool>& palindrome,
                           std::size_t length)
{
    if (positions.size() != palindrome.size())
        throw ArgumentError("one flag per position is required");
    for (std::size_t i = 0; i + 1 < positions.size(); ++i)
        if (positions[i + 1] < positions[i] + 30)
            throw ArgumentError("consecutive positions must differ by at least 30");
    if (!positions.empty() && positions.back() + 2 >= length)
        throw ArgumentError("every prescribed factor must fit in the requested length");
    if (positions.empty())
        return default_squarefree_word(length);

    const Pattern pal = palindrome_pattern(), nonpal = non_palindrome_pattern();
    const auto pattern_for = [&](std::size_t i) -> const Pattern& { return palindrome[i] ? pal : nonpal; };
    const auto delta_for = [&](std::size_t i) -> std::size_t { return palindrome[i] ? 3 : 1; };

    constexpr std::size_t align_cap = 10000;
    const std::size_t p0 = positions.front();
    auto state = ConstructionState::start(default_squarefree_word(ceil_div(p0 + length + align_cap, 23) + 8));
    const Word probe = state.image_prefix(p0 + align_cap + 3);
    std::optional<std::size_t> delta;
    for (std::size_t d = p0; d <= p0 + align_cap && d + 2 < probe.size(); ++d)
        if (pattern_for(0).occurs_at(probe, d)) {
            delta = d;
            break;
        }
    if (!delta)
        throw ResourceError("no aligned start for the first prescribed factor");
    const std::size_t offset = *delta - p0;

    for (std::size_t i = 1; i < positions.size(); ++i) {
        const std::size_t N = positions[i - 1] + offset;
        contract_recurrent(state, N, positions[i] + offset, pattern_for(i), delta_for(i), N + 2);
    }
    const Word img = state.image_prefix(offset + length);
    if (img.size() < offset + length)
        throw ResourceError("pre-image too short for the requested length");
    Word out(img.begin() + static_cast<std::ptrdiff_t>(offset),
             img.begin() + static_cast<std::ptrdiff_t>(offset + length));
    for (std::size_t i = 0; i < positions.size(); ++i)
        if ((out[positions[i]] == out[positions[i] + 2]) != palindrome[i])
            throw VerificationError("prescribed factor missing at " + std::to_string(positions[i]));
    return out;
}

CrtOffsets crt_offsets(std::size_t p, std::size_t q)
{
    if (p < 3 || q < 3)
        throw ArgumentError("crt offsets need p, q >= 3");
    if (std::gcd(p, q) != 1)
        throw ArgumentError("crt offsets need coprime p and q");
    CrtOffsets c;
    for (std::size_t j = 1; j < q; ++j) {
        if ((j * p) % q == 1)
            c.s_plus = j * p;
        if ((j * p) % q == q - 1)
            c.s_minus = j * p;
    }
    const std::size_t lo = std::min(c.s_plus, c.s_minus), hi = std::max(c.s_plus, c.s_minus);
    c.a = lo / p;
    c.b = hi / p - c.a;
    return c;
}

const char* to_string(StarBranch b)
{
    switch (b) {
    case StarBranch::Filling: return "filling";
    case StarBranch::SmallA: return "small-a";
    case StarBranch::SmallB: return "small-b";
    }
    return "?";
}

StarBranch star_branch(std::size_t p, std::size_t q)
{
    const auto c = crt_offsets(p, q);
    if (c.a >= 19 && c.b >= 19)
        return StarBranch::Filling;
    return c.a <= 18 ? StarBranch::SmallA : StarBranch::SmallB;
}

namespace {

struct StarConstraint {
    std::size_t pos;
    bool forced;
    Letter letter; // forced letter, or the forbidden one
};

std::vector<StarConstraint> star_constraints(std::size_t p, std::size_t q, WordView s, std::size_t length)
{
    std::vector<StarConstraint> out;
    for (std::size_t j = 0; j < length; ++j) {
        const std::size_t x = j * p, r = x % q;
        std::optional<std::size_t> idx;
        bool forced = false;
        if (r == 0) {
            idx = x / q;
            forced = true;
        } else if (r == 1) {
            idx = (x - 1) / q;
        } else if (r == q - 1) {
            idx = (x + 1) / q;
        }
        if (!idx)
            continue;
        if (*idx >= s.size())
            throw ArgumentError("fixed subsequence too short for the requested length");
        out.push_back({j, forced, s[*idx]});
    }
    return out;
}

Letter smallest_other(Letter x) { return x == 0 ? 1 : 0; }

struct CertificateCache {
    std::mutex mutex;
    std::map<std::tuple<std::string, std::size_t>, ConstructibilityCertificate> certs;

    const ConstructibilityCertificate& get(const Pattern& p, std::size_t delta, bool analytic, Letter a, Letter b,
                                           std::size_t gap)
    {
        std::lock_guard lock(mutex);
        const auto key = std::make_tuple(p.str(), delta);
        auto it = certs.find(key);
        if (it == certs.end()) {
            auto cert = analytic ? constructible_delta16_analytic(a, b, gap) : check_constructible(p, delta, 2);
            if (!cert.verdict)
                throw VerificationError("no constructibility certificate for " + p.str());
            it = certs.emplace(key, std::move(cert)).first;
        }
        return it->second;
    }
};

CertificateCache& certificate_cache()
{
    static CertificateCache c;
    return c;
}

} // namespace

StarWord build_star_word(std::size_t p, std::size_t q, WordView s, std::size_t length)
{
    if (std::gcd(p, q) != 1)
        throw ArgumentError("p and q must be coprime");
    if (p < 3 || p > q)
        throw ArgumentError("need 3 <= p <= q");
    if (q < 364)
        throw ArgumentError("need q >= 364");
    StarWord res;
    res.branch = star_branch(p, q);
    const auto c = crt_offsets(p, q);
    // one extra period so every pair or cluster starting before `length` is whole
    const std::size_t ext = length + q;
    const auto cons = star_constraints(p, q, s, ext);

    if (res.branch == StarBranch::Filling) {
        PartialWord v(ext);
        for (const auto& k : cons)
            v.force(k.pos, k.forced ? k.letter : smallest_other(k.letter));
        res.word = fill_partial_word(v);
    } else {
        constexpr std::size_t align_cap = 10000;
        auto state = ConstructionState::start(default_squarefree_word(ceil_div(ext + align_cap, 23) + 8, s[0]));
        std::size_t offset = 0;
        if (res.branch == StarBranch::SmallA) {
            const Pattern first = make_constraint_pattern(
                {{letter_set(cons[0].letter), c.a - 1}, {complement(cons[1].letter), 0}});
            const Word probe = state.image_prefix(align_cap + c.a + 1);
            std::optional<std::size_t> d;
            for (std::size_t i = 0; i <= align_cap && i + c.a < probe.size(); ++i)
                if (first.occurs_at(probe, i)) {
                    d = i;
                    break;
                }
            if (!d)
                throw ResourceError("no aligned start for the first constraint pair");
            offset = *d;
            for (std::size_t n = 2; n + 2 < cons.size(); n += 3) {
                const TripleSpec t{cons[n].letter, cons[n + 1].letter, cons[n + 2].letter, c.a - 1};
                const Pattern pt = t.pattern();
                const std::size_t N = cons[n - 1].pos + offset, Np = cons[n].pos + offset;
                if (is_p_bad(t))
                    contract_constructible(state, N, Np, certificate_cache().get(pt, 13, false, 0, 0, 0));
                else
                    contract_recurrent(state, N, Np, pt, 27);
            }
        } else {
            for (std::size_t n = 1; n < cons.size(); ++n) {
                const std::size_t N = cons[n - 1].pos, Np = cons[n].pos;
                if (cons[n].forced) {
                    contract_recurrent(state, N, Np, Pattern{Word{cons[n].letter}}, 3);
                } else if (n + 1 < cons.size()) {
                    contract_recurrent(state, N, Np, forbidden_gap_pattern(cons[n].letter, cons[n + 1].letter, c.b - 1),
                                       6);
                    ++n;
                }
            }
        }
        const Word img = state.image_prefix(offset + length);
        if (img.size() < offset + length)
            throw ResourceError("pre-image too short for the requested length");
        res.word.assign(img.begin() + static_cast<std::ptrdiff_t>(offset),
                        img.begin() + static_cast<std::ptrdiff_t>(offset + length));
    }
    res.word.resize(length);
    for (const auto& k : cons) {
        if (k.pos >= length)
            break;
        if ((res.word[k.pos] == k.letter) != k.forced)
            throw VerificationError("star word violates the constraint at " + std::to_string(k.pos));
    }
    return res;
}

Word build_large_pq_word(std::size_t p, std::size_t q, std::size_t length, std::optional<Word> s)
{
    if (std::gcd(p, q) != 1)
        throw ArgumentError("p and q must be coprime");
    if (std::min(p, q) < 331 || std::max(p, q) < 364)
        throw ArgumentError("need p, q >= 331 and max(p, q) >= 364");
    const std::size_t P = std::min(p, q), Q = std::max(p, q);
    const std::size_t star_len = ceil_div(length, P) + 1;
    const std::size_t s_needed = (star_len + Q) * P / Q + 2;
    Word fixed = s ? std::move(*s) : default_squarefree_word(s_needed);
    if (fixed.size() < s_needed)
        throw ArgumentError("fixed subsequence must have at least " + std::to_string(s_needed) + " letters");
    const Word star = build_star_word(P, Q, fixed, star_len).word;

    const auto target = [&](std::size_t x) { return x % P == 0 ? star[x / P] : fixed[x / Q]; };
    std::vector<std::size_t> u;
    for (std::size_t x = 0; x < length; ++x)
        if (x % P == 0 || x % Q == 0)
            u.push_back(x);

    auto state = ConstructionState::start(default_squarefree_word(ceil_div(length, 23) + 12, target(0)));
    for (std::size_t n = 0; n + 1 < u.size(); ++n) {
        const std::size_t gap = u[n + 1] - u[n];
        if (gap >= 30) {
            contract_recurrent(state, u[n], u[n + 1], Pattern{Word{target(u[n + 1])}}, 3);
            continue;
        }
        if (n == 0)
            throw VerificationError("close constraints at the start of the word");
        const std::size_t delta = gap - 1;
        const Letter a = target(u[n]), b = target(u[n + 1]);
        const std::size_t N = u[n - 1], Np = u[n];
        if (delta == 0) {
            if (a == b)
                throw VerificationError("adjacent multiples carry equal letters at " + std::to_string(u[n]));
            contract_recurrent(state, N, Np, Pattern{Word{a, b}}, 12);
        } else if (delta <= 8 && delta != 3) {
            contract_recurrent(state, N, Np, gap_pattern(a, b, delta), 27);
        } else {
            const Pattern pt = gap_pattern(a, b, delta);
            const std::size_t d = delta == 3 ? 10 : delta <= 15 ? 8 : 2;
            contract_constructible(state, N, Np, certificate_cache().get(pt, d, delta >= 16, a, b, delta));
        }
    }
    Word out = state.image_prefix(length);
    if (out.size() < length)
        throw ResourceError("pre-image too short for the requested length");
    out.resize(length);
    for (std::size_t x : u)
        if (out[x] != target(x))
            throw VerificationError("constructed word misses the prescribed letter at " + std::to_string(x));
    return out;
}

Word build_from_circular_morphism(const Morphism& g, std::size_t k, std::size_t p, std::size_t alpha,
                                  std::size_t q, WordView t, std::size_t length)
{
    if (k == 0 || p == 0)
        throw ArgumentError("k and p must be positive");
    if (alpha >= p)
        throw ArgumentError("alpha must be smaller than p");
    if (g.source_alphabet() != ternary || g.target_alphabet() != ternary)
        throw ArgumentError("morphism must be ternary");
    if (!is_circular(g))
        throw ArgumentError("morphism is not circular");
    if (g.uniform_length() != k * p)
        throw ArgumentError("morphism is not kp-uniform");
    if (!crochemore_test(g).squarefree)
        throw ArgumentError("morphism is not square-free");
    if (!crochemore_test(modular_morphism(g, alpha, p)).squarefree)
        throw ArgumentError("modular morphism is not square-free");
    if (q < 19 * k * p)
        throw ArgumentError("need q >= 19kp");
    const std::size_t kp = k * p;
    const std::size_t count = ceil_div(length, q);
    if (t.size() < count)
        throw ArgumentError("t must have at least " + std::to_string(count) + " letters");
    PartialWord w(ceil_div(length + alpha, kp));
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t pos = i * q + alpha, d = pos / kp, r = pos % kp;
        Letter x = 0;
        while (g.image(x)[r] != t[i])
            ++x;
        w.force(d, x);
    }
    Word out = shift(g(fill_partial_word(w)), alpha);
    out.resize(length);
    for (std::size_t i = 0; i < count; ++i)
        if (out[i * q] != t[i])
            throw VerificationError("constructed word misses t at " + std::to_string(i * q));
    return out;
}

ContractionReport shift_in_completions(ConstructionState& state, std::size_t M, std::size_t M_prime, Letter a)
{
    if (M_prime < M + 341)
        throw ArgumentError("need M' >= M + 341");
    const std::size_t alpha = M_prime % 6, Mpp = M_prime / 6;
    const auto pairs = RuleSet::completion().pairs_with_letter_at(alpha, a);
    if (pairs.size() != 2)
        throw VerificationError("rule table does not yield exactly two pairs");
    const Pattern p{Word{pairs[0][0], pairs[0][1]}, Word{pairs[1][0], pairs[1][1]}};
    return contract_recurrent(state, ceil_div(M, 6), Mpp, p, 6);
}

Word build_p6_word(std::size_t q, WordView s, WordView t, std::size_t length)
{
    if (q < 341)
        throw ArgumentError("need q >= 341");
    const std::size_t count = ceil_div(length, q);
    const std::size_t h_len = ceil_div(length, 6) + 1;
    const std::size_t base_len = ceil_div(h_len + 2, 23) + 8;
    Word s_word = s.empty() ? default_squarefree_word(std::max<std::size_t>(count, 1), t.empty() ? 0 : t[0])
                            : Word(s.begin(), s.end());
    Word t_word = t.empty() ? default_squarefree_word(base_len, s_word[0]) : Word(t.begin(), t.end());
    if (s_word.size() < count)
        throw ArgumentError("s must have at least " + std::to_string(count) + " letters");
    if (t_word.size() < base_len)
        throw ArgumentError("t must have at least " + std::to_string(base_len) + " letters");
    if (s_word[0] != t_word[0])
        throw ArgumentError("s and t must start with the same letter");
    t_word.resize(base_len);
    auto state = ConstructionState::start(std::move(t_word));
    for (std::size_t i = 1; i < count; ++i)
        shift_in_completions(state, (i - 1) * q, i * q, s_word[i]);
    Word x = state.image_prefix(h_len);
    x.resize(h_len);
    Word out = r_complete(x);
    out.resize(length);
    for (std::size_t i = 0; i < count; ++i)
        if (out[i * q] != s_word[i])
            throw VerificationError("completion misses s at " + std::to_string(i * q));
    return out;
}

} // namespace sqfree
