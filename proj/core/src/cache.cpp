#include "glq/cache.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "glq/errors.hpp"

namespace glq {

using nlohmann::json;

std::string cache_file_path(const std::string& dir, std::uint64_t q, int n)
{
    return (std::filesystem::path(dir) /
            ("glq_table_q" + std::to_string(q) + "_n" + std::to_string(n) + ".json"))
        .string();
}

void save_table(const CharacterTable& table, const std::string& dir)
{
    const Field& F = table.field();
    std::filesystem::create_directories(dir);

    json j;
    j["format"] = kCacheFormatVersion;
    j["q"] = F.q();
    j["n"] = table.n();
    j["p"] = F.p();
    j["f"] = F.f();
    j["modulus"] = F.modulus();
    j["ell"] = table.dixon_prime();
    j["exponent"] = table.group_exponent();

    const ClassData& cd = table.classes();
    json labels = json::array();
    for (int i = 0; i < cd.count(); ++i) labels.push_back(cd.label(i).to_string());
    j["class_labels"] = std::move(labels);

    const auto raw = table.raw();
    j["dims"] = raw.dims;
    json rows = json::array();
    for (const auto& row : raw.values) {
        json jr = json::array();
        for (const auto& val : row) {
            json terms = json::array();
            for (const auto& t : val) terms.push_back({t.order, t.exp, t.coeff});
            jr.push_back(std::move(terms));
        }
        rows.push_back(std::move(jr));
    }
    j["values"] = std::move(rows);

    json meta;
    meta["whittaker"] = raw.whit;
    meta["cuspidal"] = raw.cuspidal;
    meta["contragredient"] = raw.contragredient;
    json sup = json::array();
    for (const auto& s : raw.support) {
        json js = json::array();
        for (const auto& e : s) js.push_back({e.block_size, e.row});
        sup.push_back(std::move(js));
    }
    meta["support"] = std::move(sup);
    meta["orbit_tag"] = raw.orbit_tag;
    j["meta"] = std::move(meta);

    const std::string path = cache_file_path(dir, F.q(), table.n());
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cache: cannot write " + tmp);
        out << "# glq character table cache; json payload follows\n";
        out << j.dump() << "\n";
    }
    std::filesystem::rename(tmp, path);
}

std::unique_ptr<CharacterTable> load_table(const Field& F, int n, const std::string& dir)
{
    const std::string path = cache_file_path(dir, F.q(), n);
    std::ifstream in(path);
    if (!in) return nullptr;
    std::string header;
    std::getline(in, header);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("cache: corrupted payload in " + path + ": " + e.what());
    }
    if (j.value("format", -1) != kCacheFormatVersion)
        throw Error("cache: format version mismatch in " + path);
    if (j["q"] != F.q() || j["n"] != n || j["p"] != F.p() || j["f"] != F.f() ||
        j["modulus"].get<std::vector<std::uint32_t>>() != F.modulus())
        throw Error("cache: field mismatch in " + path);

    // class labels must match the deterministic rebuild
    const ClassData& cd = ClassData::get(F, n);
    const auto labels = j["class_labels"].get<std::vector<std::string>>();
    if (static_cast<int>(labels.size()) != cd.count())
        throw Error("cache: class count mismatch in " + path);
    for (int i = 0; i < cd.count(); ++i)
        if (labels[i] != cd.label(i).to_string())
            throw Error("cache: class label mismatch in " + path);

    CharacterTable::Raw raw;
    raw.dims = j["dims"].get<std::vector<std::int64_t>>();
    for (const auto& jr : j["values"]) {
        std::vector<CycloValue> row;
        for (const auto& jv : jr) {
            CycloValue val;
            for (const auto& t : jv)
                val.push_back({t[0].get<std::uint32_t>(), t[1].get<std::uint32_t>(),
                               t[2].get<std::int64_t>()});
            row.push_back(std::move(val));
        }
        raw.values.push_back(std::move(row));
    }
    raw.whit = j["meta"]["whittaker"].get<std::vector<std::int64_t>>();
    raw.cuspidal = j["meta"]["cuspidal"].get<std::vector<char>>();
    raw.contragredient = j["meta"]["contragredient"].get<std::vector<int>>();
    for (const auto& js : j["meta"]["support"]) {
        std::vector<SupportEntry> s;
        for (const auto& e : js) s.push_back({e[0].get<int>(), e[1].get<int>()});
        raw.support.push_back(std::move(s));
    }
    raw.orbit_tag = j["meta"]["orbit_tag"].get<std::vector<std::int64_t>>();
    raw.ell = j["ell"].get<std::uint64_t>();
    raw.exponent = j["exponent"].get<std::uint64_t>();
    return CharacterTable::from_raw(F, n, std::move(raw));
}

namespace detail {

std::unique_ptr<CharacterTable> try_load_table(const Field& F, int n, const std::string& dir)
{
    try {
        return load_table(F, n, dir);
    } catch (const Error&) {
        return nullptr;  // incompatible cache: rebuild
    }
}

void try_save_table(const CharacterTable& table, const std::string& dir)
{
    try {
        save_table(table, dir);
    } catch (const Error&) {
        // persistence is best effort; computation proceeds without it
    }
}

}  // namespace detail

}  // namespace glq
