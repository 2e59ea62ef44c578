#include "sqfree/morphism.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace sqfree {

Morphism::Morphism(std::vector<Word> images, unsigned target_alphabet)
    : images_(std::move(images)), target_alphabet_(target_alphabet)
{
    if (images_.empty())
        throw ArgumentError("a morphism needs at least one source letter");
    for (const auto& img : images_)
        for (Letter a : img)
            if (a >= target_alphabet_)
                throw ArgumentError("image letter outside the target alphabet");
}

Morphism Morphism::rotation_completed(const Word& image0, unsigned alphabet)
{
    std::vector<Word> images;
    for (unsigned i = 0; i < alphabet; ++i)
        images.push_back(rotate(image0, i, alphabet));
    return Morphism(std::move(images), alphabet);
}

Morphism Morphism::identity(unsigned alphabet)
{
    std::vector<Word> images;
    for (unsigned i = 0; i < alphabet; ++i)
        images.push_back(Word{static_cast<Letter>(i)});
    return Morphism(std::move(images), alphabet);
}

Morphism Morphism::rotation(unsigned alphabet)
{
    std::vector<Word> images;
    for (unsigned i = 0; i < alphabet; ++i)
        images.push_back(Word{rotate(static_cast<Letter>(i), 1, alphabet)});
    return Morphism(std::move(images), alphabet);
}

std::optional<std::size_t> Morphism::uniform_length() const
{
    const std::size_t k = images_.front().size();
    for (const auto& img : images_)
        if (img.size() != k)
            return std::nullopt;
    return k;
}

Word Morphism::operator()(WordView w) const
{
    Word out;
    for (Letter a : w) {
        if (a >= images_.size())
            throw ArgumentError("letter outside the morphism's source alphabet");
        const Word& img = images_[a];
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

Word apply(const Morphism& m, WordView w)
{
    return m(w);
}

bool is_circular(const Morphism& m)
{
    const unsigned n = m.source_alphabet();
    if (n != m.target_alphabet())
        throw ArgumentError("circularity needs equal source and target alphabets");
    for (unsigned i = 0; i < n; ++i) {
        const Letter next = rotate(static_cast<Letter>(i), 1, n);
        if (m.image(next) != rotate(m.image(static_cast<Letter>(i)), 1, n))
            return false;
    }
    return true;
}

CrochemoreVerdict squarefree_images_up_to(const Morphism& m, std::size_t max_length)
{
    CrochemoreVerdict v;
    v.test_length = max_length;
    for (std::size_t len = 1; len <= max_length; ++len) {
        for (const auto& w : enumerate_squarefree(len, {}, m.source_alphabet())) {
            if (!is_squarefree(m(w))) {
                v.squarefree = false;
                v.witness = w;
                return v;
            }
        }
    }
    v.squarefree = true;
    return v;
}

CrochemoreVerdict crochemore_test(const Morphism& m)
{
    if (m.is_uniform())
        return squarefree_images_up_to(m, 3);
    if (m.source_alphabet() == 3)
        return squarefree_images_up_to(m, 5);
    throw ArgumentError("Crochemore's criterion needs a uniform or a ternary morphism");
}

Morphism modular_morphism(const Morphism& m, std::size_t alpha, std::size_t p)
{
    const auto len = m.uniform_length();
    if (!len)
        throw ArgumentError("modular morphism needs a uniform morphism");
    if (p == 0 || *len % p != 0 || *len == 0)
        throw ArgumentError("image length " + std::to_string(*len) + " is not a positive multiple of " +
                            std::to_string(p));
    if (alpha >= p)
        throw ArgumentError("offset must be smaller than the modulus");
    std::vector<Word> images;
    for (const auto& img : m.images())
        images.push_back(subsequence(img, p, alpha));
    return Morphism(std::move(images), m.target_alphabet());
}

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_count(const std::string& s, const std::string& key)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ArgumentError("invalid value for '" + key + "': " + s);
    return v;
}

} // namespace

MorphismFile parse_morphism_file(std::string_view text)
{
    MorphismFile f;
    std::map<unsigned, Word> images;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty())
            continue;
        if (auto arrow = line.find("->"); arrow != std::string::npos) {
            const std::string lhs = trim(line.substr(0, arrow));
            const std::string rhs = trim(line.substr(arrow + 2));
            if (lhs.size() != 1 || lhs[0] < '0' || lhs[0] > '9')
                throw ArgumentError("line " + std::to_string(lineno) + ": bad source letter");
            images[static_cast<unsigned>(lhs[0] - '0')] = parse_word(rhs);
        } else if (auto eq = line.find('='); eq != std::string::npos) {
            const std::string key = trim(line.substr(0, eq));
            const std::size_t value = parse_count(trim(line.substr(eq + 1)), key);
            if (key == "p")
                f.p = value;
            else if (key == "k")
                f.k = value;
            else if (key == "alpha")
                f.alpha = value;
            else if (key == "q_min" || key == "q")
                f.q_min = value;
            else
                throw ArgumentError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } else {
            throw ArgumentError("line " + std::to_string(lineno) + ": expected 'LETTER -> WORD'");
        }
    }
    if (images.empty())
        throw ArgumentError("morphism file has no images");
    if (images.size() == 1 && images.count(0)) {
        f.morphism = Morphism::rotation_completed(images.at(0));
        return f;
    }
    std::vector<Word> list;
    for (unsigned a = 0; a < images.size(); ++a) {
        if (!images.count(a))
            throw ArgumentError("morphism file is missing the image of " + std::to_string(a));
        list.push_back(images.at(a));
    }
    f.morphism = Morphism(std::move(list));
    return f;
}

MorphismFile load_morphism_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ArgumentError("cannot open morphism file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_morphism_file(buf.str());
}

std::string format_morphism_file(const MorphismFile& f)
{
    std::ostringstream out;
    if (f.p)
        out << "p=" << *f.p << '\n';
    if (f.k)
        out << "k=" << *f.k << '\n';
    if (f.alpha)
        out << "alpha=" << *f.alpha << '\n';
    if (f.q_min)
        out << "q_min=" << *f.q_min << '\n';
    for (unsigned a = 0; a < f.morphism.source_alphabet(); ++a)
        out << a << " -> " << to_string(f.morphism.image(static_cast<Letter>(a))) << '\n';
    return out.str();
}

} // namespace sqfree
