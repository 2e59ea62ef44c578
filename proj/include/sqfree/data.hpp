#pragma once

#include "sqfree/morphism.hpp"
#include "sqfree/word.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqfree {

/// $SQFREE_DATA_DIR if set, else the source tree's data directory.
std::filesystem::path data_dir();

/// Bundled circular morphisms keyed by p.
std::vector<std::size_t> morphism_moduli();
std::filesystem::path morphism_path(std::size_t p);
/// Throws ArgumentError if no morphism is bundled for p.
MorphismFile load_bundled_morphism(std::size_t p);

/// Cell classes: positive, negative-search, negative-double,
/// negative-three-halves, unknown.
using PairTable = std::map<std::pair<std::size_t, std::size_t>, std::string>;
const PairTable& pair_table();

std::vector<Word> load_completion_check_words();

/// "gap middle right" rows.
std::vector<std::array<std::size_t, 3>> load_p_bad_templates();

/// Lines without comments and blank lines.
std::vector<std::string> read_data_lines(const std::filesystem::path& path);

} // namespace sqfree
