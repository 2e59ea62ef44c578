#include "sqfree/data.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

namespace sqfree {

std::filesystem::path data_dir()
{
    if (const char* env = std::getenv("SQFREE_DATA_DIR"); env && *env)
        return env;
    return SQFREE_DEFAULT_DATA_DIR;
}

std::vector<std::string> read_data_lines(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ArgumentError("cannot open data file " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        const auto e = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

std::vector<std::size_t> morphism_moduli()
{
    return {3, 4, 5, 7, 8, 9, 10, 11, 12, 14, 15, 16, 20, 21, 22};
}

std::filesystem::path morphism_path(std::size_t p)
{
    std::string name = std::to_string(p);
    if (name.size() < 2)
        name = "0" + name;
    return data_dir() / "morphisms" / ("p" + name + ".txt");
}

MorphismFile load_bundled_morphism(std::size_t p)
{
    const auto path = morphism_path(p);
    if (!std::filesystem::exists(path))
        throw ArgumentError("no bundled morphism for p = " + std::to_string(p));
    return load_morphism_file(path);
}

const PairTable& pair_table()
{
    static std::mutex m;
    static std::optional<PairTable> cache;
    static std::filesystem::path cached_dir;
    std::lock_guard lock(m);
    const auto dir = data_dir();
    if (!cache || cached_dir != dir) {
        PairTable t;
        for (const auto& line : read_data_lines(dir / "pairs" / "pairs.txt")) {
            std::istringstream in(line);
            std::size_t p = 0, q = 0;
            std::string cls;
            if (!(in >> p >> q >> cls))
                throw ArgumentError("malformed pair table line: " + line);
            t[{p, q}] = cls;
        }
        cache = std::move(t);
        cached_dir = dir;
    }
    return *cache;
}

std::vector<Word> load_completion_check_words()
{
    std::vector<Word> out;
    for (const auto& line : read_data_lines(data_dir() / "words" / "completion_check_words.txt"))
        out.push_back(parse_word(line));
    return out;
}

std::vector<std::array<std::size_t, 3>> load_p_bad_templates()
{
    std::vector<std::array<std::size_t, 3>> out;
    for (const auto& line : read_data_lines(data_dir() / "catalogues" / "p_bad_templates.txt")) {
        std::istringstream in(line);
        std::array<std::size_t, 3> row{};
        if (!(in >> row[0] >> row[1] >> row[2]))
            throw ArgumentError("malformed template line: " + line);
        out.push_back(row);
    }
    return out;
}

} // namespace sqfree
