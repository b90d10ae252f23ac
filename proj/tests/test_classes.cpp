#include <doctest.h>

#include <map>

#include "glq/classes.hpp"
#include "glq/errors.hpp"

using namespace glq;

TEST_SUITE_BEGIN("glgroup.classes");

TEST_CASE("named labels")
{
    const Field& F = make_field(3, 1);

    // identity: (x - 1, (1,...,1))
    const ClassLabel id2 = class_label(Mat::identity(F, 2));
    REQUIRE(id2.parts.size() == 1);
    CHECK(id2.parts[0].first == Poly::x_minus(F, 1));
    CHECK(id2.parts[0].second == std::vector<int>{1, 1});

    // regular elliptic: irreducible characteristic polynomial, partition (1)
    const Poly f(F, {1, 0, 1});  // x^2 + 1, irreducible over F_3
    Mat companion(F, 2);
    companion(1, 0) = F.one();
    companion(0, 1) = F.neg(f.coeff(0));
    companion(1, 1) = F.neg(f.coeff(1));
    const ClassLabel ell = class_label(companion);
    REQUIRE(ell.parts.size() == 1);
    CHECK(ell.parts[0].first == f);
    CHECK(ell.parts[0].second == std::vector<int>{1});

    // regular unipotent: (x - 1, (2))
    Mat u = Mat::identity(F, 2);
    u(0, 1) = 1;
    const ClassLabel uni = class_label(u);
    REQUIRE(uni.parts.size() == 1);
    CHECK(uni.parts[0].second == std::vector<int>{2});
}

TEST_CASE("class counts")
{
    CHECK(ClassData::get(make_field(3, 1), 2).count() == 8);   // q^2 - 1
    CHECK(ClassData::get(make_field(2, 1), 3).count() == 6);
    CHECK(ClassData::get(make_field(2, 1), 2).count() == 3);   // GL_2(F_2) = S_3
    CHECK(ClassData::get(make_field(5, 1), 2).count() == 24);
}

TEST_CASE("labels are conjugation invariants")
{
    for (auto [q, n] : {std::pair{3u, 2}, {2u, 3}}) {
        const Field& F = make_field(q, 1);
        std::vector<Mat> elems;
        for_each_group_element(F, n, [&](const Mat& g) { elems.push_back(g); });
        for (int k = 0; k < 200; ++k) {
            const Mat& g = elems[(13 * k + 7) % elems.size()];
            const Mat& h = elems[(29 * k + 3) % elems.size()];
            CHECK(class_label(h * g * h.inverse()) == class_label(g));
        }
    }
}

TEST_CASE("sizes against brute-force centralizers and full bucketing")
{
    for (auto [q, n] : {std::pair{3u, 2}, {2u, 3}, {2u, 2}}) {
        const Field& F = make_field(q, 1);
        const ClassData& cd = ClassData::get(F, n);

        // orbit sizes by bucketing the whole group
        std::map<int, std::uint64_t> bucket;
        for_each_group_element(F, n, [&](const Mat& g) { bucket[cd.index_of(g)] += 1; });
        REQUIRE(static_cast<int>(bucket.size()) == cd.count());
        std::uint64_t total = 0;
        for (int i = 0; i < cd.count(); ++i) {
            CHECK(bucket[i] == cd.size(i));
            total += cd.size(i);
        }
        CHECK(total == cd.group_order());

        // centralizer orders by direct commutation count
        for (int i = 0; i < cd.count(); ++i) {
            const Mat& r = cd.representative(i);
            CHECK(class_label(r) == cd.label(i));
            std::uint64_t cent = 0;
            for_each_group_element(F, n, [&](const Mat& x) {
                if (x * r == r * x) ++cent;
            });
            CHECK(cent == cd.centralizer_order(i));
        }
    }
}

TEST_CASE("inverse classes, powers and orders")
{
    const ClassData& cd = ClassData::get(make_field(3, 1), 2);
    for (int i = 0; i < cd.count(); ++i) {
        const Mat& r = cd.representative(i);
        const std::uint64_t ord = cd.element_order(i);
        CHECK(r.pow(ord).is_identity());
        // minimality: r^(ord/d) != I for prime divisors d
        for (std::uint64_t d = 2; d <= ord; ++d)
            if (ord % d == 0) CHECK(!r.pow(ord / d).is_identity());
        CHECK(cd.index_of(r.inverse()) == cd.inverse_class(i));
        CHECK(cd.power_class(i, 0) == cd.identity_class());
        CHECK(cd.power_class(i, ord) == cd.identity_class());
        CHECK(cd.power_class(i, 1) == i);
    }
    CHECK(cd.exponent() == 24);  // lcm of element orders of GL_2(F_3)
}

TEST_CASE("partitions helper")
{
    CHECK(partitions_of(1).size() == 1);
    CHECK(partitions_of(4).size() == 5);
    for (const auto& lam : partitions_of(4)) {
        int s = 0;
        for (std::size_t i = 0; i + 1 < lam.size(); ++i) CHECK(lam[i] >= lam[i + 1]);
        for (int part : lam) s += part;
        CHECK(s == 4);
    }
}

TEST_SUITE_END();
