#include <doctest.h>

#include <set>

#include "glq/conway.hpp"
#include "glq/errors.hpp"
#include "glq/field.hpp"

using namespace glq;

TEST_SUITE_BEGIN("algebra.field");

namespace {

// order of a by repeated multiplication
std::uint64_t order_of(const Field& F, Fel a)
{
    Fel x = a;
    std::uint64_t k = 1;
    while (x != F.one()) {
        x = F.mul(x, a);
        ++k;
        REQUIRE(k <= F.q());
    }
    return k;
}

}  // namespace

TEST_CASE("prime fields")
{
    const Field& F3 = make_field(3, 1);
    CHECK(F3.q() == 3);
    CHECK(order_of(F3, F3.generator()) == 2);

    const Field& F2 = make_field(2, 1);
    CHECK(F2.q() == 2);
    CHECK(F2.generator() == F2.one());
}

TEST_CASE("F_25 generator has order 24")
{
    const Field& F = make_field(5, 2);
    CHECK(F.q() == 25);
    CHECK(order_of(F, F.generator()) == 24);
}

TEST_CASE("construction errors")
{
    CHECK_THROWS_AS(make_field(4, 1), NonPrimeError);
    CHECK_THROWS_AS(make_field(6, 2), NonPrimeError);
    CHECK_THROWS_AS(make_field(2, 21), TooLargeError);
    CHECK_THROWS_AS(make_field(1048583, 1), TooLargeError);  // prime > 2^20
}

TEST_CASE("modulus selection is the Conway polynomial")
{
    CHECK(make_field(3, 2).modulus() == std::vector<std::uint32_t>{2, 2, 1});
    CHECK(make_field(2, 4).modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
    // repeated calls return the same object
    CHECK(&make_field(3, 2) == &make_field(3, 2));
}

TEST_CASE("log and antilog are mutually inverse on F_q^*")
{
    for (auto [p, f] : {std::pair{2u, 4u}, {3u, 2u}, {5u, 2u}, {7u, 1u}}) {
        const Field& F = Field::get(p, f);
        std::set<Fel> seen;
        for (std::uint32_t k = 0; k < F.q() - 1; ++k) {
            const Fel x = F.exp(k);
            CHECK(F.dlog(x) == k);
            seen.insert(x);
        }
        CHECK(seen.size() == F.q() - 1);
        CHECK(order_of(F, F.generator()) == F.q() - 1);
    }
}

TEST_CASE("field axioms, exhaustive on F_9")
{
    const Field& F = make_field(3, 2);
    for (Fel a = 0; a < F.q(); ++a)
        for (Fel b = 0; b < F.q(); ++b) {
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.add(a, F.neg(a)) == 0);
            for (Fel c = 0; c < F.q(); ++c)
                CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            if (b != 0) CHECK(F.mul(F.div(a, b), b) == a);
        }
}

TEST_CASE("trace to the prime field on F_4")
{
    const Field& F = make_field(2, 2);
    // Tr(x) = x + x^2
    for (Fel x = 0; x < 4; ++x) {
        const Fel tr = F.add(x, F.mul(x, x));
        CHECK(F.trace_to_prime(x) == tr);
    }
}

TEST_CASE("additive characters")
{
    for (std::uint64_t q : {2, 3, 4, 5, 9}) {
        const Field& F = (q == 4) ? Field::get(2, 2) : (q == 9) ? Field::get(3, 2)
                                                                : Field::get(static_cast<std::uint32_t>(q), 1);
        const AdditiveCharacter psi = default_psi(F);
        CHECK(psi(0) == cxd{1.0, 0.0});

        KahanSum full, nonzero;
        for (Fel x = 0; x < F.q(); ++x) {
            CHECK(std::abs(std::abs(psi(x)) - 1.0) < 1e-12);
            full.add(psi(x));
            if (x != 0) nonzero.add(psi(x));
        }
        CHECK(std::abs(full.value()) < 1e-9);                    // orthogonality
        CHECK(std::abs(nonzero.value() - cxd{-1.0, 0.0}) < 1e-9);  // minus the x=0 term

        // psi_a(x+y) = psi_a(x) psi_a(y); trivial iff a = 0
        for (Fel a = 0; a < F.q(); ++a) {
            const AdditiveCharacter pa(F, a);
            bool trivial = true;
            for (Fel x = 0; x < F.q(); ++x) {
                if (std::abs(pa(x) - cxd{1.0, 0.0}) > 1e-12) trivial = false;
                for (Fel y = 0; y < F.q(); ++y)
                    CHECK(std::abs(pa(F.add(x, y)) - pa(x) * pa(y)) < 1e-12);
            }
            CHECK(trivial == (a == 0));
        }
    }
}

TEST_CASE("conway table: file matches builtin and entries are primitive")
{
    const ConwayTable& builtin = ConwayTable::builtin();
    const ConwayTable file = ConwayTable::load_file(std::string(GLQ_DATA_DIR) +
                                                    "/conway_polynomials.txt");
    CHECK(file.format_version() == 1);
    CHECK(file.size() == builtin.size());
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (std::uint32_t d = 1; d <= 8; ++d) {
            auto a = builtin.lookup(p, d);
            auto b = file.lookup(p, d);
            REQUIRE(a.has_value());
            REQUIRE(b.has_value());
            CHECK(*a == *b);
        }
    // constructing a field validates that x mod C_{p,f} has order p^f - 1
    for (auto [p, f] : {std::pair{2u, 8u}, {3u, 6u}, {5u, 4u}, {7u, 3u}})
        CHECK(order_of(Field::get(p, f), Field::get(p, f).generator()) ==
              Field::get(p, f).q() - 1);
}

TEST_CASE("fallback modulus beyond the table is primitive")
{
    const Field& F = Field::get(2, 10);  // degree > 8: lexicographic fallback
    CHECK(order_of(F, F.generator()) == 1023);
}

TEST_SUITE_END();
