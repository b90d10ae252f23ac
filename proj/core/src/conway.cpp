#include "glq/conway.hpp"

#include <fstream>
#include <sstream>

#include "glq/errors.hpp"

namespace glq {

namespace {

// Same content as core/data/conway_polynomials.txt.
const char* kBuiltinTable = R"(# conway-polynomials format 1
# p degree c0 c1 ... cdeg   (monic, coefficients low-to-high)
2 1 1 1
2 2 1 1 1
2 3 1 1 0 1
2 4 1 1 0 0 1
2 5 1 0 1 0 0 1
2 6 1 1 0 1 1 0 1
2 7 1 1 0 0 0 0 0 1
2 8 1 0 1 1 1 0 0 0 1
3 1 1 1
3 2 2 2 1
3 3 1 2 0 1
3 4 2 0 0 2 1
3 5 1 2 0 0 0 1
3 6 2 2 1 0 2 0 1
3 7 1 0 2 0 0 0 0 1
3 8 2 2 2 0 1 2 0 0 1
5 1 3 1
5 2 2 4 1
5 3 3 3 0 1
5 4 2 4 4 0 1
5 5 3 4 0 0 0 1
5 6 2 0 1 4 1 0 1
5 7 3 3 0 0 0 0 0 1
5 8 2 4 3 0 1 0 0 0 1
7 1 4 1
7 2 3 6 1
7 3 4 0 6 1
7 4 3 4 5 0 1
7 5 4 1 0 0 0 1
7 6 3 6 4 5 1 0 1
7 7 4 6 0 0 0 0 0 1
7 8 3 2 6 4 0 0 0 0 1
)";

}  // namespace

const ConwayTable& ConwayTable::builtin()
{
    static const ConwayTable table = ConwayTable::parse(kBuiltinTable);
    return table;
}

ConwayTable ConwayTable::parse(const std::string& text)
{
    ConwayTable table;
    std::istringstream in(text);
    std::string line;
    bool saw_version = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!saw_version) {
                const std::string tag = "format ";
                const auto pos = line.find(tag);
                if (pos != std::string::npos) {
                    table.format_version_ = std::stoi(line.substr(pos + tag.size()));
                    saw_version = true;
                }
            }
            continue;
        }
        std::istringstream ls(line);
        Entry e;
        if (!(ls >> e.p >> e.degree)) throw Error("conway table: malformed line: " + line);
        std::uint32_t c;
        while (ls >> c) e.coeffs.push_back(c);
        if (e.coeffs.size() != e.degree + 1)
            throw Error("conway table: wrong coefficient count on line: " + line);
        if (e.coeffs.back() != 1) throw Error("conway table: entry not monic: " + line);
        for (auto cc : e.coeffs)
            if (cc >= e.p) throw Error("conway table: coefficient out of range: " + line);
        table.entries_.push_back(std::move(e));
    }
    if (!saw_version) throw Error("conway table: missing format header");
    return table;
}

ConwayTable ConwayTable::load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("conway table: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::optional<std::vector<std::uint32_t>> ConwayTable::lookup(std::uint32_t p,
                                                              std::uint32_t degree) const
{
    for (const auto& e : entries_)
        if (e.p == p && e.degree == degree) return e.coeffs;
    return std::nullopt;
}

}  // namespace glq
