#include "sqfree/word.hpp"

#include <algorithm>
#include <unordered_set>

namespace sqfree {

Word parse_word(std::string_view text, unsigned alphabet)
{
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        if (c < '0' || static_cast<unsigned>(c - '0') >= alphabet)
            throw ArgumentError("invalid letter '" + std::string(1, c) + "' in word");
        w.push_back(static_cast<Letter>(c - '0'));
    }
    return w;
}

std::string to_string(WordView w)
{
    std::string s;
    s.reserve(w.size());
    for (Letter a : w)
        s.push_back(static_cast<char>('0' + a));
    return s;
}

Word rotate(WordView w, unsigned times, unsigned alphabet)
{
    Word out(w.size());
    std::transform(w.begin(), w.end(), out.begin(),
                   [&](Letter a) { return rotate(a, times, alphabet); });
    return out;
}

Word shift(WordView w, std::size_t alpha)
{
    if (alpha >= w.size())
        return {};
    return Word(w.begin() + static_cast<std::ptrdiff_t>(alpha), w.end());
}

Word subsequence(WordView w, std::size_t p, std::size_t alpha)
{
    if (p == 0)
        throw ArgumentError("subsequence modulus must be positive");
    if (alpha >= p)
        throw ArgumentError("subsequence offset must be smaller than the modulus");
    Word out;
    out.reserve(w.size() / p + 1);
    for (std::size_t i = alpha; i < w.size(); i += p)
        out.push_back(w[i]);
    return out;
}

namespace {

constexpr Letter separator = 0xfe;

std::vector<std::size_t> z_function(const std::vector<Letter>& s)
{
    const std::size_t n = s.size();
    std::vector<std::size_t> z(n, 0);
    if (n == 0)
        return z;
    z[0] = n;
    std::size_t l = 0, r = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (i < r)
            z[i] = std::min(r - i, z[i - l]);
        while (i + z[i] < n && s[z[i]] == s[i + z[i]])
            ++z[i];
        if (i + z[i] > r) {
            l = i;
            r = i + z[i];
        }
    }
    return z;
}

// Is there a square that contains both u.back() and v.front()?
bool crossing_square(WordView u, WordView v)
{
    const std::size_t m = u.size(), nv = v.size();

    std::vector<Letter> ru(u.rbegin(), u.rend());
    std::vector<Letter> vv(v.begin(), v.end());
    std::vector<Letter> rv(v.rbegin(), v.rend());

    auto z_ru = z_function(ru);
    auto z_v = z_function(vv);

    std::vector<Letter> v_u = vv;
    v_u.push_back(separator);
    v_u.insert(v_u.end(), u.begin(), u.end());
    auto z_vu = z_function(v_u);

    std::vector<Letter> ru_rv = ru;
    ru_rv.push_back(separator);
    ru_rv.insert(ru_rv.end(), rv.begin(), rv.end());
    auto z_rurv = z_function(ru_rv);

    // Second half starts inside u or exactly at the boundary.
    for (std::size_t l = 1; l <= m; ++l) {
        const std::size_t k1 = l < m ? z_ru[l] : 0;
        const std::size_t k2 = z_vu[nv + 1 + (m - l)];
        const std::size_t lo = l > k2 ? l - k2 : 0;
        const std::size_t hi = std::min(k1, l - 1);
        if (lo <= hi)
            return true;
    }
    // First half contains the boundary.
    for (std::size_t l = 1; l <= nv; ++l) {
        const std::size_t k3 = z_rurv[m + 1 + (nv - l)];
        const std::size_t k4 = l < nv ? z_v[l] : 0;
        const std::size_t lo = std::max<std::size_t>(1, l > k4 ? l - k4 : 0);
        const std::size_t hi = std::min(k3, l - 1);
        if (lo <= hi)
            return true;
    }
    return false;
}

bool naive_contains_square(WordView w)
{
    for (std::size_t i = 1; i < w.size(); ++i)
        if (has_square_ending_at(w, i))
            return true;
    return false;
}

bool contains_square(WordView w)
{
    if (w.size() < 2)
        return false;
    if (w.size() <= 32)
        return naive_contains_square(w);
    const std::size_t mid = w.size() / 2;
    WordView u = w.first(mid), v = w.subspan(mid);
    return contains_square(u) || contains_square(v) || crossing_square(u, v);
}

} // namespace

bool is_squarefree(WordView w)
{
    return !contains_square(w);
}

bool has_square_ending_at(WordView w, std::size_t i)
{
    if (i >= w.size())
        throw ArgumentError("index past the end of the word");
    const std::size_t len = i + 1;
    for (std::size_t period = 1; 2 * period <= len; ++period) {
        std::size_t k = 0;
        while (k < period && w[i - k] == w[i - period - k])
            ++k;
        if (k == period)
            return true;
    }
    return false;
}

PansiotCode pansiot_code(WordView w)
{
    if (w.size() < 3)
        throw ArgumentError("Pansiot code needs a word of length at least 3");
    PansiotCode c(w.size() - 2);
    for (std::size_t i = 0; i + 2 < w.size(); ++i)
        c[i] = w[i] == w[i + 2] ? 1 : 0;
    return c;
}

bool satisfies_star(WordView w, std::size_t p, std::size_t q)
{
    if (p == 0 || q == 0)
        throw ArgumentError("moduli must be positive");
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const bool triggered = (i % p == 0 && (i + 1) % q == 0) ||
                               (i % q == 0 && (i + 1) % p == 0);
        if (triggered && w[i] == w[i + 1])
            return false;
    }
    return true;
}

std::size_t distinct_factor_count(WordView w, std::size_t len)
{
    if (len == 0 || len > w.size())
        throw ArgumentError("factor length must lie in [1, |w|]");
    if (len > 40)
        throw ArgumentError("factor length too large for packed counting");
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t i = 0; i + len <= w.size(); ++i) {
        std::uint64_t packed = 0;
        for (std::size_t k = 0; k < len; ++k)
            packed = packed * 3 + w[i + k];
        seen.insert(packed);
    }
    return seen.size();
}

PartialWord PartialWord::parse(std::string_view text)
{
    std::vector<Letter> cells;
    cells.reserve(text.size());
    for (char c : text) {
        if (c == '.')
            cells.push_back(wildcard);
        else if (c >= '0' && c <= '2')
            cells.push_back(static_cast<Letter>(c - '0'));
        else
            throw ArgumentError("invalid cell '" + std::string(1, c) + "' in partial word");
    }
    return PartialWord(std::move(cells));
}

std::string PartialWord::str() const
{
    std::string s;
    for (Letter c : cells_)
        s.push_back(c == wildcard ? '.' : static_cast<char>('0' + c));
    return s;
}

bool is_compatible(WordView w, const PartialWord& v)
{
    if (w.size() > v.size())
        return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (v.forced(i) && v[i] != w[i])
            return false;
    return true;
}

std::vector<Word> enumerate_squarefree(std::size_t length, WordView prefix, unsigned alphabet)
{
    std::vector<Word> out;
    if (prefix.size() > length)
        return out;
    Word w(prefix.begin(), prefix.end());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (has_square_ending_at(w, i))
            return out;
    if (length == 0) {
        out.push_back(w);
        return out;
    }
    const std::size_t base = w.size();
    std::vector<unsigned> next(length + 1, 0);
    while (true) {
        if (w.size() == length) {
            out.push_back(w);
        } else if (next[w.size()] < alphabet) {
            const Letter a = static_cast<Letter>(next[w.size()]++);
            w.push_back(a);
            if (has_square_ending_at(w, w.size() - 1))
                w.pop_back();
            else
                next[w.size()] = 0;
            continue;
        }
        if (w.size() == base)
            break;
        w.pop_back();
    }
    return out;
}

} // namespace sqfree
