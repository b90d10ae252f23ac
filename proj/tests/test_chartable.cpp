#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "glq/chartable.hpp"
#include "glq/errors.hpp"
#include "glq/group.hpp"

using namespace glq;

TEST_SUITE_BEGIN("chartab");

namespace {

std::multiset<std::int64_t> dim_multiset(const CharacterTable& t)
{
    std::multiset<std::int64_t> out;
    for (int i = 0; i < t.irrep_count(); ++i) out.insert(t.dim(i));
    return out;
}

}  // namespace

TEST_CASE("GL_1 tables are the character groups")
{
    const CharacterTable& t = character_table(3, 1);
    CHECK(t.irrep_count() == 2);
    CHECK(t.dim(0) == 1);
    CHECK(t.dim(1) == 1);
    for (int r = 0; r < 2; ++r) {
        CHECK(t.is_generic(r));
        CHECK(t.is_cuspidal(r));
    }

    // row with orbit tag k is the character zeta^{k dlog}
    const CharacterTable& t5 = character_table(5, 1);
    const Field& F5 = t5.field();
    for (int r = 0; r < t5.irrep_count(); ++r) {
        const std::uint64_t k = static_cast<std::uint64_t>(t5.orbit_tag(r));
        for (Fel a = 1; a < 5; ++a) {
            const cxd expect = unit_root(static_cast<std::int64_t>(k * F5.dlog(a)), 4);
            CHECK(std::abs(t5.value_at(r, Mat::scalar(F5, 1, a)) - expect) < 1e-12);
        }
    }
}

TEST_CASE("GL_2(F_3): the classical classification")
{
    const CharacterTable& t = character_table(3, 2);
    CHECK(t.irrep_count() == 8);
    CHECK(dim_multiset(t) == std::multiset<std::int64_t>{1, 1, 2, 2, 2, 3, 3, 4});

    // q-1 linear, q(q-1)/2 cuspidal of dim q-1, (q-1)(q-2)/2 of dim q+1, q-1 of dim q
    int linear = 0, cusp = 0, dimq = 0, dimq1 = 0;
    for (int i = 0; i < 8; ++i) {
        if (t.dim(i) == 1) ++linear;
        if (t.is_cuspidal(i)) {
            ++cusp;
            CHECK(t.dim(i) == 2);
        }
        if (t.dim(i) == 3) ++dimq;
        if (t.dim(i) == 4) ++dimq1;
    }
    CHECK(linear == 2);
    CHECK(cusp == 3);
    CHECK(dimq == 2);
    CHECK(dimq1 == 1);
    CHECK(t.generic_rows().size() == 6);
}

TEST_CASE("GL_3(F_2): dimensions against the independent class data")
{
    const CharacterTable& t = character_table(2, 3);
    CHECK(t.irrep_count() == 6);
    CHECK(dim_multiset(t) == std::multiset<std::int64_t>{1, 3, 3, 6, 7, 8});
    std::uint64_t s = 0;
    for (int i = 0; i < 6; ++i) s += t.dim(i) * t.dim(i);
    CHECK(s == 168);
}

TEST_CASE("row and column orthogonality")
{
    for (auto [q, n] : {std::pair{3u, 2}, {2u, 3}, {5u, 2}}) {
        const CharacterTable& t = character_table(q, n);
        const ClassData& cd = t.classes();
        const int c = t.irrep_count();
        for (int a = 0; a < c; ++a)
            for (int b = 0; b < c; ++b) {
                KahanSum acc;
                for (int i = 0; i < cd.count(); ++i)
                    acc.add(static_cast<double>(cd.size(i)) * t.value(a, i) *
                            std::conj(t.value(b, i)));
                const cxd ip = acc.value() / static_cast<double>(cd.group_order());
                CHECK(std::abs(ip - (a == b ? cxd{1, 0} : cxd{0, 0})) < 1e-8);
            }
        // columns
        for (int i = 0; i < cd.count(); ++i)
            for (int j = 0; j < cd.count(); ++j) {
                KahanSum acc;
                for (int a = 0; a < c; ++a)
                    acc.add(t.value(a, i) * std::conj(t.value(a, j)));
                const double want =
                    (i == j) ? static_cast<double>(cd.group_order()) / cd.size(i) : 0.0;
                CHECK(std::abs(acc.value() - want) < 1e-7 * want + 1e-7);
            }
    }
}

TEST_CASE("whittaker multiplicities")
{
    const CharacterTable& t = character_table(3, 2);
    const Field& F = t.field();
    for (int i = 0; i < t.irrep_count(); ++i) {
        if (t.dim(i) == 1) CHECK(t.whittaker_multiplicity(i) == 0);
        if (t.is_cuspidal(i)) CHECK(t.whittaker_multiplicity(i) == 1);
        CHECK((t.whittaker_multiplicity(i) == 0 || t.whittaker_multiplicity(i) == 1));
        CHECK(t.is_generic(i) == (t.whittaker_multiplicity(i) >= 1));
        // independence of the psi twist
        for (Fel a = 2; a < F.q(); ++a)
            CHECK(t.whittaker_multiplicity(i, AdditiveCharacter(F, a)) ==
                  t.whittaker_multiplicity(i));
    }

    // Gelfand-Graev dimension: sum of dims over generic rows = |G|/|U|
    for (auto [q, n] : {std::pair{3u, 2}, {2u, 3}, {3u, 3}}) {
        const CharacterTable& tt = character_table(q, n);
        std::uint64_t s = 0;
        for (int i : tt.generic_rows()) s += static_cast<std::uint64_t>(tt.dim(i));
        CHECK(s == tt.group_order() /
                       subgroup_order(tt.field(), n, SubgroupKind::upper_unipotent));
    }
}

TEST_CASE("cuspidality")
{
    // n = 1: every character is cuspidal
    const CharacterTable& t1 = character_table(2, 1);
    CHECK(t1.cuspidal_rows().size() == 1);

    const CharacterTable& t = character_table(3, 2);
    CHECK(t.cuspidal_rows().size() == 3);
    // the dim-q (Steinberg-type) rows are generic but not cuspidal
    for (int i = 0; i < t.irrep_count(); ++i)
        if (t.dim(i) == 3) {
            CHECK(t.is_generic(i));
            CHECK(!t.is_cuspidal(i));
        }

    // count = regular orbit count across the envelope sample
    for (auto [q, n] : {std::pair{3u, 2}, {2u, 3}, {3u, 3}, {2u, 4}, {5u, 2}})
        CHECK(character_table(q, n).cuspidal_rows().size() == regular_orbit_count(q, n));
}

TEST_CASE("parabolic induction")
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);

    // Ind(chi x chi') with chi != chi': degree 4, irreducible
    const auto ind = t2.induce_from_levi({1, 1}, {irrep(t1, 0), irrep(t1, 1)});
    CHECK(std::abs(ind[t2.classes().identity_class()] - cxd{4.0, 0.0}) < 1e-8);
    CHECK(std::abs(t2.inner(ind, ind) - cxd{1.0, 0.0}) < 1e-8);
    // it is the dim-4 row
    for (int i = 0; i < t2.irrep_count(); ++i)
        CHECK(t2.inner_with_row(ind, i) == (t2.dim(i) == 4 ? 1 : 0));

    // whittaker multiplicity of an induction of Whittaker-type factors is 1
    for (auto factors : {std::pair{0, 0}, {0, 1}, {1, 1}}) {
        const auto f = t2.induce_from_levi({1, 1},
                                           {irrep(t1, factors.first), irrep(t1, factors.second)});
        std::int64_t mult = 0;
        for (int i = 0; i < t2.irrep_count(); ++i)
            mult += t2.inner_with_row(f, i) * t2.whittaker_multiplicity(i);
        CHECK(mult == 1);
    }

    // associativity at the class-function level on GL_3(F_3):
    // Ind(Ind(chi1, chi2), chi3) = Ind(chi1, chi2, chi3)
    const CharacterTable& t3 = character_table(3, 3);
    const auto lhs_direct = t3.induce_from_levi(
        {1, 1, 1}, {irrep(t1, 0), irrep(t1, 1), irrep(t1, 1)});
    const auto inner2 = t2.induce_from_levi({1, 1}, {irrep(t1, 0), irrep(t1, 1)});
    std::vector<cxd> lhs_nested(t3.classes().count(), cxd{0, 0});
    for (int i = 0; i < t2.irrep_count(); ++i) {
        const std::int64_t m = t2.inner_with_row(inner2, i);
        if (m == 0) continue;
        const auto term = t3.induce_from_levi({2, 1}, {irrep(t2, i), irrep(t1, 1)});
        for (std::size_t k = 0; k < term.size(); ++k)
            lhs_nested[k] += static_cast<double>(m) * term[k];
    }
    for (std::size_t k = 0; k < lhs_nested.size(); ++k)
        CHECK(std::abs(lhs_nested[k] - lhs_direct[k]) < 1e-7);

    // shape errors
    CHECK_THROWS_AS(t2.induce_from_levi({1, 2}, {irrep(t1, 0), irrep(t1, 0)}),
                    CompositionMismatchError);
    CHECK_THROWS_AS(t2.induce_from_levi({1, 1}, {irrep(t1, 0)}), CompositionMismatchError);
}

TEST_CASE("cuspidal support")
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);

    for (int i : t2.cuspidal_rows()) {
        const auto& sup = t2.cuspidal_support(i);
        REQUIRE(sup.size() == 1);
        CHECK(sup[0].block_size == 2);
        CHECK(sup[0].row == i);
    }
    // dim-4 row: two distinct GL_1 characters
    for (int i = 0; i < t2.irrep_count(); ++i)
        if (t2.dim(i) == 4) {
            const auto& sup = t2.cuspidal_support(i);
            REQUIRE(sup.size() == 2);
            CHECK(sup[0].block_size == 1);
            CHECK(sup[1].block_size == 1);
            CHECK(sup[0].row != sup[1].row);
        }

    // uniqueness on GL_3(F_2): each generic irrep matches exactly one multiset
    const CharacterTable& t32 = character_table(2, 3);
    const CharacterTable& t21 = character_table(2, 1);
    const CharacterTable& t22 = character_table(2, 2);
    std::map<int, int> matches;
    // partition [2,1]
    for (int c2 : t22.cuspidal_rows())
        for (int c1 : t21.cuspidal_rows()) {
            const auto ind = t32.induce_from_levi({2, 1}, {irrep(t22, c2), irrep(t21, c1)});
            for (int i = 0; i < t32.irrep_count(); ++i)
                if (t32.inner_with_row(ind, i) >= 1) ++matches[i];
        }
    // partition [1,1,1] (single cuspidal multiset over F_2)
    {
        const auto ind = t32.induce_from_levi(
            {1, 1, 1}, {irrep(t21, 0), irrep(t21, 0), irrep(t21, 0)});
        for (int i = 0; i < t32.irrep_count(); ++i)
            if (t32.inner_with_row(ind, i) >= 1) ++matches[i];
    }
    for (int i = 0; i < t32.irrep_count(); ++i) {
        if (t32.is_cuspidal(i))
            CHECK(matches.count(i) == 0);
        else
            CHECK(matches[i] == 1);  // unique support for non-cuspidal rows
    }
}

TEST_CASE("generic of support and round trips")
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);

    // {1, 1} with the trivial character twice: the dim-3 constituent
    const int trivial = [&] {
        for (int r = 0; r < t1.irrep_count(); ++r)
            if (t1.orbit_tag(r) == 0) return r;
        return -1;
    }();
    const int st = t2.generic_of_support({{1, trivial}, {1, trivial}});
    CHECK(t2.dim(st) == 3);

    // singleton cuspidal support round trip
    for (int i : t2.cuspidal_rows())
        CHECK(t2.generic_of_support({{2, i}}) == i);

    // round trip over all cuspidal multisets for GL_2(F_3) and GL_3(F_2)
    for (std::uint64_t q : {3u, 2u}) {
        const CharacterTable& tn = character_table(q, 2);
        const CharacterTable& tone = character_table(q, 1);
        for (int a = 0; a < tone.irrep_count(); ++a)
            for (int b = a; b < tone.irrep_count(); ++b) {
                std::vector<SupportEntry> s{{1, a}, {1, b}};
                CHECK(tn.cuspidal_support(tn.generic_of_support(s)) == s);
            }
    }
}

TEST_CASE("central characters")
{
    const CharacterTable& t = character_table(3, 2);
    const Field& F = t.field();
    for (int i = 0; i < t.irrep_count(); ++i) {
        CHECK(std::abs(t.central_character(i, F.one()) - cxd{1.0, 0.0}) < 1e-10);
        for (Fel a = 1; a < F.q(); ++a) {
            CHECK(std::abs(std::abs(t.central_character(i, a)) - 1.0) < 1e-10);
            for (Fel b = 1; b < F.q(); ++b)
                CHECK(std::abs(t.central_character(i, F.mul(a, b)) -
                               t.central_character(i, a) * t.central_character(i, b)) < 1e-9);
        }
        // chi o det on GL_n: omega(a) = chi(a)^n
        if (t.dim(i) == 1)
            for (Fel a = 1; a < F.q(); ++a)
                CHECK(std::abs(t.central_character(i, a) -
                               t.value_at(i, Mat::scalar(F, 2, a))) < 1e-10);
    }
}

TEST_CASE("contragredient rows")
{
    for (auto [q, n] : {std::pair{3u, 2}, {2u, 3}}) {
        const CharacterTable& t = character_table(q, n);
        const ClassData& cd = t.classes();
        for (int i = 0; i < t.irrep_count(); ++i) {
            const int ic = t.contragredient(i);
            CHECK(t.contragredient(ic) == i);
            CHECK(t.dim(ic) == t.dim(i));
            CHECK(t.is_cuspidal(ic) == t.is_cuspidal(i));
            for (int cidx = 0; cidx < cd.count(); ++cidx)
                CHECK(std::abs(t.value(ic, cidx) - std::conj(t.value(i, cidx))) < 1e-10);
        }
    }
}

TEST_CASE("cuspidal orbit identification")
{
    // GL_2(F_3): 3 cuspidals biject with the 3 regular orbits
    const CharacterTable& t = character_table(3, 2);
    const auto orbits = frobenius_orbits(ext_of(t.field(), 2));
    std::vector<std::int64_t> regular_reps;
    for (const auto& o : orbits)
        if (o.regular()) regular_reps.push_back(static_cast<std::int64_t>(o.rep()));
    std::vector<std::int64_t> tags;
    for (int i : t.cuspidal_rows()) tags.push_back(t.orbit_tag(i));
    std::sort(tags.begin(), tags.end());
    std::sort(regular_reps.begin(), regular_reps.end());
    CHECK(tags == regular_reps);

    // non-cuspidal rows carry no orbit
    for (int i = 0; i < t.irrep_count(); ++i)
        if (!t.is_cuspidal(i)) CHECK(t.orbit_tag(i) == -1);

    // lookup round trip
    for (int i : t.cuspidal_rows())
        CHECK(t.cuspidal_row_by_orbit(static_cast<std::uint64_t>(t.orbit_tag(i))) == i);
}

TEST_CASE("dixon internals are exposed and sane")
{
    const CharacterTable& t = character_table(3, 2);
    CHECK(t.group_exponent() == 24);
    CHECK(t.dixon_prime() % t.group_exponent() == 1);
    CHECK(t.dixon_prime() > 2 * 6);  // 2 sqrt(48) ~ 13.8
}

TEST_SUITE_END();
