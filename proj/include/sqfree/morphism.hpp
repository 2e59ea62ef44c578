#pragma once

#include "sqfree/word.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sqfree {

/// Letter-to-word map extended to words by concatenation.
class Morphism {
public:
    Morphism() = default;
    Morphism(std::vector<Word> images, unsigned target_alphabet = ternary);

    /// image(i) = rotate(image0, i) for every source letter.
    static Morphism rotation_completed(const Word& image0, unsigned alphabet = ternary);
    static Morphism identity(unsigned alphabet = ternary);
    /// Letterwise cyclic rotation (the morphism written pi_n).
    static Morphism rotation(unsigned alphabet = ternary);

    unsigned source_alphabet() const { return static_cast<unsigned>(images_.size()); }
    unsigned target_alphabet() const { return target_alphabet_; }
    const Word& image(Letter a) const { return images_.at(a); }
    const std::vector<Word>& images() const { return images_; }

    /// Common image length, if any.
    std::optional<std::size_t> uniform_length() const;
    bool is_uniform() const { return uniform_length().has_value(); }

    Word operator()(WordView w) const;

    bool operator==(const Morphism&) const = default;

private:
    std::vector<Word> images_;
    unsigned target_alphabet_ = ternary;
};

Word apply(const Morphism& m, WordView w);

/// image(rotate(i)) == rotate(image(i)) for every letter.
bool is_circular(const Morphism& m);

struct CrochemoreVerdict {
    bool squarefree = false;
    /// Shortest square-free source word whose image contains a square.
    std::optional<Word> witness;
    /// Length of the test words required by the criterion (3 or 5).
    std::size_t test_length = 0;
};

/// Uniform morphisms: images of square-free words of length <= 3.
/// Non-uniform ternary morphisms: images of square-free words of length <= 5.
CrochemoreVerdict crochemore_test(const Morphism& m);

/// Brute force: images of every square-free word up to max_length.
CrochemoreVerdict squarefree_images_up_to(const Morphism& m, std::size_t max_length);

/// Image of a is the subsequence mod p of image(a) shifted by alpha.
Morphism modular_morphism(const Morphism& m, std::size_t alpha, std::size_t p);

/// Morphism file: "LETTER -> WORD" lines, optional "key=value" headers and
/// '#' comments. A file giving only the image of 0 is completed by rotation.
struct MorphismFile {
    Morphism morphism;
    std::optional<std::size_t> p;
    std::optional<std::size_t> k;
    std::optional<std::size_t> alpha;
    std::optional<std::size_t> q_min;
};

MorphismFile parse_morphism_file(std::string_view text);
MorphismFile load_morphism_file(const std::filesystem::path& path);
std::string format_morphism_file(const MorphismFile& f);

} // namespace sqfree
