#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "glq/cache.hpp"
#include "glq/errors.hpp"
#include "glq/gamma.hpp"

using namespace glq;

TEST_SUITE_BEGIN("harness");

namespace {

std::string run_cli(const std::string& args, int* exit_code = nullptr)
{
    const std::string cmd = std::string(GLQ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    if (exit_code) *exit_code = WEXITSTATUS(status);
    return out;
}

std::string strip_comments(const std::string& s)
{
    std::istringstream in(s);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') out << line << "\n";
    return out.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("glq_test_cache_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("cache round trip reproduces bit-identical tables")
{
    TempDir tmp;
    const CharacterTable& built = character_table(3, 2);
    save_table(built, tmp.path.string());
    CHECK(std::filesystem::exists(cache_file_path(tmp.path.string(), 3, 2)));

    const auto loaded = load_table(built.field(), 2, tmp.path.string());
    REQUIRE(loaded != nullptr);
    CHECK(loaded->irrep_count() == built.irrep_count());
    for (int t = 0; t < built.irrep_count(); ++t) {
        CHECK(loaded->dim(t) == built.dim(t));
        CHECK(loaded->whittaker_multiplicity(t) == built.whittaker_multiplicity(t));
        CHECK(loaded->is_cuspidal(t) == built.is_cuspidal(t));
        CHECK(loaded->contragredient(t) == built.contragredient(t));
        CHECK(loaded->cuspidal_support(t) == built.cuspidal_support(t));
        CHECK(loaded->orbit_tag(t) == built.orbit_tag(t));
        for (int c = 0; c < built.classes().count(); ++c) {
            CHECK(loaded->cyclo(t, c) == built.cyclo(t, c));  // exact payload
            // complex lifts are recomputed and must be bit-identical
            CHECK(loaded->value(t, c) == built.value(t, c));
        }
    }

    // identical verdicts: a gamma computed through the reloaded table matches
    const int pi = built.cuspidal_rows()[0];
    const cxd a = jpss_gamma(irrep(built, pi), contragredient(irrep(built, pi)), 1).value;
    const cxd b = jpss_gamma(irrep(*loaded, pi), contragredient(irrep(*loaded, pi)), 1).value;
    CHECK(a == b);
}

TEST_CASE("cache rejects corruption and version drift")
{
    TempDir tmp;
    const CharacterTable& built = character_table(2, 2);
    save_table(built, tmp.path.string());
    const std::string path = cache_file_path(tmp.path.string(), 2, 2);

    // missing file: nullptr, no throw
    CHECK(load_table(built.field(), 1, tmp.path.string()) == nullptr);

    // corrupted payload
    {
        std::ofstream out(path, std::ios::trunc);
        out << "# header\n{not json\n";
    }
    CHECK_THROWS_AS(load_table(built.field(), 2, tmp.path.string()), Error);

    // version mismatch forces rebuild
    save_table(built, tmp.path.string());
    {
        std::ifstream in(path);
        std::string header, payload;
        std::getline(in, header);
        std::getline(in, payload);
        auto pos = payload.find("\"format\":1");
        REQUIRE(pos != std::string::npos);
        payload.replace(pos, 10, "\"format\":9");
        std::ofstream out(path, std::ios::trunc);
        out << header << "\n" << payload << "\n";
    }
    CHECK_THROWS_AS(load_table(built.field(), 2, tmp.path.string()), Error);
}

TEST_CASE("cli: reps output shape")
{
    int code = -1;
    const std::string out = run_cli("reps --q 3 --n 2 --format csv", &code);
    CHECK(code == 0);
    int rows = 0, generic = 0, cuspidal = 0;
    std::istringstream in(strip_comments(out));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        // row,dim,whittaker,generic,cuspidal,...
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() >= 8);
        if (cells[3] == "1") ++generic;
        if (cells[4] == "1") ++cuspidal;
    }
    CHECK(rows == 8);
    CHECK(generic == 6);
    CHECK(cuspidal == 3);
}

TEST_CASE("cli: gamma table shape and exit codes")
{
    int code = -1;
    const std::string out = run_cli("gamma --q 3 --n 2 --m 1 --format csv", &code);
    CHECK(code == 0);
    const std::string body = strip_comments(out);
    CHECK(body.find("q,n,m,pi_id,sigma_id,psi_a,method,re,im,abs,provenance") == 0);
    int rows = 0;
    std::istringstream in(body);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 12);  // 6 generic pi x 2 chi

    // verification success is exit 0
    run_cli("verify thm.appendix_minus_one --qn 3,2 --format text", &code);
    CHECK(code == 0);
    // an unreachable tolerance turns the same run into exit 2
    run_cli("verify thm.appendix_minus_one --qn 3,2 --tolerance 1e-30", &code);
    CHECK(code == 2);
    // usage errors are exit 1
    run_cli("gamma --q 6 --n 1 --m 1", &code);
    CHECK(code == 1);
    run_cli("nonsense", &code);
    CHECK(code == 1);
    run_cli("verify thm.nope --qn 3,1", &code);
    CHECK(code == 1);
    // envelope refusal is exit 1 with an actionable message
    run_cli("table --q 7 --n 3", &code);
    CHECK(code == 1);
}

TEST_CASE("cli: output determinism modulo the timestamp header")
{
    int c1 = -1, c2 = -1;
    const std::string a = run_cli("gamma --q 3 --n 2 --m 2 --format csv", &c1);
    const std::string b = run_cli("gamma --q 3 --n 2 --m 2 --format csv", &c2);
    CHECK(c1 == 0);
    CHECK(c2 == 0);
    CHECK(strip_comments(a) == strip_comments(b));

    const std::string k1 = run_cli("kloosterman --q 3 --n 2 --format csv", &c1);
    const std::string k2 = run_cli("kloosterman --q 3 --n 2 --format csv", &c2);
    CHECK(strip_comments(k1) == strip_comments(k2));
    CHECK(c1 == 0);
}

TEST_CASE("cli: kloosterman values match the bessel special values")
{
    int code = -1;
    const std::string out = run_cli("kloosterman --q 3 --n 2 --c all --format csv", &code);
    CHECK(code == 0);
    int rows = 0;
    std::istringstream in(strip_comments(out));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3 * 2);  // cuspidal count x |F_q^*|
}

TEST_CASE("cli: bessel table and cached table command")
{
    TempDir tmp;
    int code = -1;
    const std::string out = run_cli(
        "table --q 3 --n 2 --cache-dir " + tmp.path.string() + " --format text", &code);
    CHECK(code == 0);
    CHECK(out.find("48") != std::string::npos);
    CHECK(std::filesystem::exists(cache_file_path(tmp.path.string(), 3, 2)));
    // second run loads from the cache and reports identically
    const std::string out2 = run_cli(
        "table --q 3 --n 2 --cache-dir " + tmp.path.string() + " --format text", &code);
    CHECK(code == 0);
    CHECK(strip_comments(out) == strip_comments(out2));

    const std::string bt = run_cli("bessel --q 3 --n 2 --pi cuspidal --format csv", &code);
    CHECK(code == 0);
    int rows = 0;
    std::istringstream in(strip_comments(bt));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3 * 2);  // 3 cuspidal x (q-1) two-block values
}

TEST_SUITE_END();
