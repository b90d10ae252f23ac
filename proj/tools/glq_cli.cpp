// glq: tables, Bessel functions, gamma factors and theorem verification for
// GL_n(F_q) at desk scale.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "glq/bessel.hpp"
#include "glq/cache.hpp"
#include "glq/errors.hpp"
#include "glq/gamma.hpp"
#include "glq/verify.hpp"

using namespace glq;
using nlohmann::json;

namespace {

enum class Format { text, csv, jsonfmt };

struct Options {
    std::uint64_t q = 3;
    int n = 2;
    int m = 1;
    int psi_a = 1;
    std::string format = "text";
    std::string cache;
    int jobs = 1;
    double tolerance = kIdentityTol;
};

Format parse_format(const std::string& s)
{
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::jsonfmt;
    throw UsageError("unknown format: " + s);
}

std::string timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void print_header(Format f)
{
    if (f == Format::text || f == Format::csv)
        std::cout << "# generated-at " << timestamp() << "\n";
}

constexpr const char* kCsvColumns = "q,n,m,pi_id,sigma_id,psi_a,method,re,im,abs,provenance";

struct CsvRow {
    std::uint64_t q;
    int n, m;
    std::string pi_id, sigma_id;
    int psi_a;
    std::string method;
    cxd value;
    std::string provenance;
};

void emit_rows(Format f, const std::vector<CsvRow>& rows, const std::string& json_kind)
{
    std::cout << std::setprecision(15);
    if (f == Format::csv) {
        std::cout << kCsvColumns << "\n";
        for (const auto& r : rows)
            std::cout << r.q << "," << r.n << "," << r.m << "," << r.pi_id << "," << r.sigma_id
                      << "," << r.psi_a << "," << r.method << "," << r.value.real() << ","
                      << r.value.imag() << "," << std::abs(r.value) << "," << r.provenance
                      << "\n";
        return;
    }
    if (f == Format::jsonfmt) {
        json j;
        j["kind"] = json_kind;
        j["generated_at"] = timestamp();
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"q", r.q},
                                 {"n", r.n},
                                 {"m", r.m},
                                 {"pi_id", r.pi_id},
                                 {"sigma_id", r.sigma_id},
                                 {"psi_a", r.psi_a},
                                 {"method", r.method},
                                 {"re", r.value.real()},
                                 {"im", r.value.imag()},
                                 {"abs", std::abs(r.value)},
                                 {"provenance", r.provenance}});
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& r : rows)
        std::cout << "q=" << r.q << " (n,m)=(" << r.n << "," << r.m << ") pi=" << r.pi_id
                  << " sigma=" << r.sigma_id << " a=" << r.psi_a << " " << r.method << " = ("
                  << r.value.real() << ", " << r.value.imag() << ") |.|=" << std::abs(r.value)
                  << "  [" << r.provenance << "]\n";
}

std::string support_string(const CharacterTable& t, int row)
{
    std::ostringstream os;
    const auto& sup = t.cuspidal_support(row);
    for (std::size_t i = 0; i < sup.size(); ++i) {
        if (i) os << "+";
        os << "GL" << sup[i].block_size << "#" << sup[i].row;
    }
    return os.str();
}

std::vector<int> select_rows(const CharacterTable& t, const std::string& sel)
{
    if (sel == "all") {
        std::vector<int> out(t.irrep_count());
        for (int i = 0; i < t.irrep_count(); ++i) out[i] = i;
        return out;
    }
    if (sel == "generic") return t.generic_rows();
    if (sel == "cuspidal") return t.cuspidal_rows();
    try {
        const int row = std::stoi(sel);
        if (row < 0 || row >= t.irrep_count())
            throw UsageError("row " + sel + " out of range (0.." +
                             std::to_string(t.irrep_count() - 1) + ")");
        return {row};
    } catch (const std::invalid_argument&) {
        throw UsageError("bad irrep selector: " + sel + " (want all|generic|cuspidal|<row>)");
    }
}

Scope parse_scope(const std::vector<std::string>& qn_args)
{
    Scope s;
    for (const auto& a : qn_args) {
        const auto comma = a.find(',');
        if (comma == std::string::npos) throw UsageError("bad --qn entry (want q,n): " + a);
        s.qn.emplace_back(std::stoull(a.substr(0, comma)), std::stoi(a.substr(comma + 1)));
    }
    return s;
}


int cmd_table(const Options& o, Format f)
{
    const CharacterTable& t = character_table(o.q, o.n);
    print_header(f);
    if (f == Format::jsonfmt) {
        json j;
        j["generated_at"] = timestamp();
        j["q"] = o.q;
        j["n"] = o.n;
        j["group_order"] = t.group_order();
        j["classes"] = t.classes().count();
        j["dixon_prime"] = t.dixon_prime();
        j["exponent"] = t.group_exponent();
        json dims = json::array();
        for (int i = 0; i < t.irrep_count(); ++i) dims.push_back(t.dim(i));
        j["dims"] = dims;
        if (!cache_dir().empty()) j["cache_file"] = cache_file_path(cache_dir(), o.q, o.n);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "GL_" << o.n << "(F_" << o.q << "): |G| = " << t.group_order() << ", "
              << t.classes().count() << " conjugacy classes, exponent " << t.group_exponent()
              << ", Dixon prime " << t.dixon_prime() << "\n";
    std::cout << "dims:";
    for (int i = 0; i < t.irrep_count(); ++i) std::cout << " " << t.dim(i);
    std::cout << "\n";
    if (!cache_dir().empty())
        std::cout << "cached at " << cache_file_path(cache_dir(), o.q, o.n) << "\n";
    return 0;
}

int cmd_reps(const Options& o, Format f)
{
    const CharacterTable& t = character_table(o.q, o.n);
    print_header(f);
    if (f == Format::jsonfmt) {
        json j;
        j["generated_at"] = timestamp();
        j["q"] = o.q;
        j["n"] = o.n;
        j["irreps"] = json::array();
        for (int i = 0; i < t.irrep_count(); ++i)
            j["irreps"].push_back({{"row", i},
                                   {"dim", t.dim(i)},
                                   {"whittaker", t.whittaker_multiplicity(i)},
                                   {"generic", t.is_generic(i)},
                                   {"cuspidal", t.is_cuspidal(i)},
                                   {"support", support_string(t, i)},
                                   {"orbit", t.orbit_tag(i)},
                                   {"contragredient", t.contragredient(i)}});
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (f == Format::csv) {
        std::cout << "row,dim,whittaker,generic,cuspidal,support,orbit,contragredient\n";
        for (int i = 0; i < t.irrep_count(); ++i)
            std::cout << i << "," << t.dim(i) << "," << t.whittaker_multiplicity(i) << ","
                      << t.is_generic(i) << "," << t.is_cuspidal(i) << ","
                      << support_string(t, i) << "," << t.orbit_tag(i) << ","
                      << t.contragredient(i) << "\n";
        return 0;
    }
    std::cout << "irreps of GL_" << o.n << "(F_" << o.q << "):\n";
    for (int i = 0; i < t.irrep_count(); ++i) {
        std::cout << "  #" << i << " dim=" << t.dim(i)
                  << (t.is_generic(i) ? " generic" : "        ")
                  << (t.is_cuspidal(i) ? " cuspidal" : "         ")
                  << " support=" << support_string(t, i);
        if (t.orbit_tag(i) >= 0) std::cout << " orbit=" << t.orbit_tag(i);
        std::cout << "\n";
    }
    return 0;
}

int cmd_bessel(const Options& o, Format f, const std::string& sel, const std::string& domain)
{
    const CharacterTable& t = character_table(o.q, o.n);
    BesselDomain dom;
    if (domain == "two_block") dom = BesselDomain::two_block;
    else if (domain == "three_block") dom = BesselDomain::three_block;
    else if (domain == "full") dom = BesselDomain::full;
    else throw UsageError("unknown domain: " + domain + " (want two_block|three_block|full)");

    std::vector<CsvRow> rows;
    for (int row : select_rows(t, sel)) {
        if (!t.is_generic(row)) continue;
        for (const auto& r : bessel_table(irrep(t, row), static_cast<Fel>(o.psi_a), dom))
            rows.push_back({o.q, o.n, o.n, std::to_string(row), r.canonical_key.to_string(),
                            o.psi_a, "bessel", r.value, "domain=" + domain});
    }
    print_header(f);
    emit_rows(f, rows, "bessel");
    return 0;
}

int cmd_gamma(const Options& o, Format f, const std::string& pi_sel, const std::string& sig_sel)
{
    const CharacterTable& tn = character_table(o.q, o.n);
    const CharacterTable& tm = character_table(o.q, o.m);
    const Fel a = static_cast<Fel>(o.psi_a);
    std::vector<CsvRow> rows;
    for (int pi : select_rows(tn, pi_sel)) {
        if (!tn.is_generic(pi)) continue;
        for (int sg : select_rows(tm, sig_sel)) {
            if (!tm.is_generic(sg)) continue;
            const GammaValue g = shahidi_gamma(irrep(tn, pi), irrep(tm, sg), a);
            std::ostringstream prov;
            prov << (o.n > o.m ? "case=n>m" : (o.n == o.m ? "case=n=m" : "case=n<m"));
            // cross-check against an independent path where one is available
            if (o.m == 1) {
                const MultChar chi(tm.field(),
                                   static_cast<std::uint64_t>(tm.orbit_tag(sg)));
                const cxd k = kondo_gamma_gl1(irrep(tn, pi), chi, a).value;
                prov << " xcheck=kondo:" << std::abs(g.value - k);
            } else if (std::pow(static_cast<double>(o.q), o.n * o.m) <= 1e4) {
                const cxd k = gamma_intertwining_oracle(irrep(tn, pi), irrep(tm, sg), a).value;
                prov << " xcheck=oracle:" << std::abs(g.value - k);
            }
            rows.push_back({o.q, o.n, o.m, std::to_string(pi), std::to_string(sg), o.psi_a,
                            to_string(g.method), g.value, prov.str()});
        }
    }
    print_header(f);
    emit_rows(f, rows, "gamma");
    return 0;
}

int cmd_kloosterman(const Options& o, Format f, const std::string& orbit_sel,
                    const std::string& c_range)
{
    const CharacterTable& t = character_table(o.q, o.n);
    const Field& F = t.field();
    std::vector<int> rows_sel =
        (orbit_sel == "all") ? t.cuspidal_rows() : select_rows(t, orbit_sel);

    std::vector<Fel> cs;
    if (c_range == "all")
        for (Fel c = 1; c < F.q(); ++c) cs.push_back(c);
    else
        cs.push_back(static_cast<Fel>(std::stoul(c_range)));

    std::vector<CsvRow> rows;
    for (int row : rows_sel) {
        if (!t.is_cuspidal(row)) continue;
        for (Fel c : cs) {
            if (c == 0 || c >= F.q()) throw UsageError("c out of F_q^*");
            const cxd v = two_block_special_value(irrep(t, row), c, static_cast<Fel>(o.psi_a));
            std::ostringstream prov;
            prov << "orbit=" << t.orbit_tag(row) << " normalized=(-1)^{n+1}q^{-n+1}K";
            rows.push_back({o.q, o.n, 1, std::to_string(row), std::to_string(c), o.psi_a,
                            "kloosterman_bessel", v, prov.str()});
        }
    }
    print_header(f);
    emit_rows(f, rows, "kloosterman");
    return 0;
}

int cmd_verify(const Options& o, Format f, std::vector<std::string> ids,
               const std::vector<std::string>& qn_args)
{
    if (ids.size() == 1 && ids[0] == "all") ids.clear();
    for (const auto& id : ids) {
        const auto known = theorem_ids();
        if (std::find(known.begin(), known.end(), id) == known.end())
            throw UnknownTheoremError("unknown theorem id: " + id);
    }
    const auto reports = qn_args.empty()
                             ? verify_default_scopes(ids, o.tolerance, o.jobs)
                             : verify_many(ids, parse_scope(qn_args), o.tolerance, o.jobs);
    print_header(f);
    bool all_pass = true;
    if (f == Format::jsonfmt) {
        json j;
        j["generated_at"] = timestamp();
        j["reports"] = json::array();
        for (const auto& r : reports) {
            all_pass = all_pass && r.pass;
            j["reports"].push_back({{"theorem", r.theorem_id},
                                    {"scope", r.scope},
                                    {"instances", r.instances},
                                    {"max_residual", r.max_residual},
                                    {"tolerance", r.tolerance},
                                    {"pass", r.pass},
                                    {"wall_seconds", r.wall_seconds},
                                    {"worst_instance", r.worst_instance}});
        }
        j["all_pass"] = all_pass;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            all_pass = all_pass && r.pass;
            std::cout << format_report_text(r) << "\n";
        }
        std::cout << (all_pass ? "ALL PASS" : "VERIFICATION FAILED") << "\n";
    }
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"computational engine for Bessel functions and gamma factors of GL_n(F_q)"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--q", o.q, "field cardinality (prime power)")->capture_default_str();
    app.add_option("--n", o.n, "matrix size n")->capture_default_str();
    app.add_option("--m", o.m, "second matrix size m")->capture_default_str();
    app.add_option("--psi-a", o.psi_a, "additive character twist a (nonzero)")
        ->capture_default_str();
    app.add_option("--format", o.format, "output format: text|csv|json")->capture_default_str();
    app.add_option("--cache-dir", o.cache, "character table cache directory (or GLQ_CACHE_DIR)");
    app.add_option("--jobs", o.jobs, "verification parallelism")->capture_default_str();
    app.add_option("--tolerance", o.tolerance, "verification tolerance override")
        ->capture_default_str();

    auto* table = app.add_subcommand("table", "build (and cache) the character table");
    auto* reps = app.add_subcommand("reps", "list irreducible representations with metadata");

    auto* bessel = app.add_subcommand("bessel", "tabulate normalized Bessel function values");
    std::string bessel_sel = "generic", bessel_domain = "two_block";
    bessel->add_option("--pi", bessel_sel, "irrep selector: all|generic|cuspidal|<row>")
        ->capture_default_str();
    bessel->add_option("--domain", bessel_domain, "two_block|three_block|full")
        ->capture_default_str();

    auto* gamma = app.add_subcommand("gamma", "Shahidi gamma factors for pairs of irreps");
    std::string pi_sel = "generic", sig_sel = "generic";
    gamma->add_option("--pi", pi_sel, "GL_n irrep selector")->capture_default_str();
    gamma->add_option("--sigma", sig_sel, "GL_m irrep selector")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "verify theorems exhaustively over a scope");
    std::vector<std::string> ids{"all"};
    std::vector<std::string> qn_args;
    verify_cmd->add_option("ids", ids, "theorem ids (or 'all'); see --list")->capture_default_str();
    verify_cmd->add_option("--qn", qn_args, "scope entries q,n (repeatable)");
    bool list_ids = false;
    verify_cmd->add_flag("--list", list_ids, "list available theorem ids");

    auto* kloo = app.add_subcommand("kloosterman", "exotic Kloosterman / two-block values");
    std::string orbit_sel = "all", c_range = "all";
    kloo->add_option("--orbit", orbit_sel, "cuspidal selector: all|cuspidal|<row>")
        ->capture_default_str();
    kloo->add_option("--c", c_range, "c value in F_q^* or 'all'")->capture_default_str();

    try {
        app.parse(argc, argv);
        const Format fmt = parse_format(o.format);
        if (o.psi_a == 0) throw UsageError("--psi-a must be nonzero");
        if (!o.cache.empty()) set_cache_dir(o.cache);

        if (list_ids) {
            for (const auto& id : theorem_ids()) std::cout << id << "\n";
            return 0;
        }
        if (table->parsed()) return cmd_table(o, fmt);
        if (reps->parsed()) return cmd_reps(o, fmt);
        if (bessel->parsed()) return cmd_bessel(o, fmt, bessel_sel, bessel_domain);
        if (gamma->parsed()) return cmd_gamma(o, fmt, pi_sel, sig_sel);
        if (verify_cmd->parsed()) return cmd_verify(o, fmt, ids, qn_args);
        if (kloo->parsed()) return cmd_kloosterman(o, fmt, orbit_sel, c_range);
        throw UsageError("no subcommand");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const EnvelopeExceededError& e) {
        std::cerr << "envelope error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
