#include <doctest.h>

#include "glq/errors.hpp"
#include "glq/gamma.hpp"
#include "glq/verify.hpp"

using namespace glq;

TEST_SUITE_BEGIN("gamma");

TEST_CASE("closed form for GL_1 x GL_1: gamma(chi x chi) = -chi(-1)")
{
    for (std::uint64_t q : {2u, 3u, 5u}) {
        const CharacterTable& t = character_table(q, 1);
        const Field& F = t.field();
        const Fel minus1 = F.neg(F.one());
        for (int r = 0; r < t.irrep_count(); ++r) {
            const auto g = shahidi_gamma(irrep(t, r), irrep(t, r), 1);
            const cxd expect = -t.central_character(r, minus1);
            CHECK(std::abs(g.value - expect) < 1e-12);
            CHECK(std::abs(std::abs(normalized_of(g)) - std::pow(double(q), -0.5)) < 1e-12);
            CHECK(g.method == GammaMethod::shahidi_bessel);
            CHECK(g.n == 1);
            CHECK(g.m == 1);
        }
    }
}

TEST_CASE("multiplicativity on GL_2(F_3) x (GL_1 o GL_1)")
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);
    for (int pi : t2.generic_rows())
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
                std::vector<SupportEntry> sup{{1, s1}, {1, s2}};
                std::sort(sup.begin(), sup.end());
                const int sigma = t2.generic_of_support(sup);
                const cxd lhs = shahidi_gamma(irrep(t2, pi), irrep(t2, sigma), 1).value;
                const cxd rhs = shahidi_gamma(irrep(t2, pi), irrep(t1, s1), 1).value *
                                shahidi_gamma(irrep(t2, pi), irrep(t1, s2), 1).value;
                CHECK(std::abs(lhs - rhs) < 1e-9);
            }
}

TEST_CASE("involution and contragredient corollary, n,m <= 2, q = 3")
{
    const Scope scope{{{3, 1}, {3, 2}}};
    const auto rep = verify("cor.contragredient", scope);
    CHECK(rep.pass);
    CHECK(rep.max_residual < 1e-7);
}

TEST_CASE("change of additive character, n,m <= 2, q = 3")
{
    const auto rep = verify("thm.change_of_psi", Scope{{{3, 1}, {3, 2}}});
    CHECK(rep.pass);
    CHECK(rep.max_residual < 1e-7);
}

TEST_CASE("intertwining oracle agrees with the closed forms")
{
    // (1,1,3) reduces to the closed form
    const CharacterTable& t1 = character_table(3, 1);
    for (int r = 0; r < 2; ++r) {
        const cxd a = shahidi_gamma(irrep(t1, r), irrep(t1, r), 1).value;
        const cxd b = gamma_intertwining_oracle(irrep(t1, r), irrep(t1, r), 1).value;
        CHECK(std::abs(a - b) < 1e-10);
    }
    // (2,1,2) and (2,1,3): all generic pi, all chi
    for (std::uint64_t q : {2u, 3u}) {
        const CharacterTable& tn = character_table(q, 2);
        const CharacterTable& tm = character_table(q, 1);
        for (int pi : tn.generic_rows())
            for (int sg = 0; sg < tm.irrep_count(); ++sg) {
                const cxd a = shahidi_gamma(irrep(tn, pi), irrep(tm, sg), 1).value;
                const cxd b = gamma_intertwining_oracle(irrep(tn, pi), irrep(tm, sg), 1).value;
                CHECK(std::abs(a - b) < 1e-9);
            }
    }
    // (2,2,3): all generic pairs
    {
        const CharacterTable& t = character_table(3, 2);
        for (int pi : t.generic_rows())
            for (int sg : t.generic_rows()) {
                const cxd a = shahidi_gamma(irrep(t, pi), irrep(t, sg), 1).value;
                const cxd b = gamma_intertwining_oracle(irrep(t, pi), irrep(t, sg), 1).value;
                CHECK(std::abs(a - b) < 1e-9);
            }
    }
}

TEST_CASE("jpss gamma: preconditions and laws")
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);
    const int st = [&] {
        for (int i : t2.generic_rows())
            if (!t2.is_cuspidal(i)) return i;
        return -1;
    }();

    CHECK_THROWS_AS(jpss_gamma(irrep(t2, st), irrep(t1, 0), 1), PreconditionError);
    CHECK_THROWS_AS(jpss_gamma(irrep(t1, 0), irrep(t2, t2.cuspidal_rows()[0]), 1),
                    PreconditionError);
    CHECK_THROWS_AS(
        jpss_gamma(irrep(t2, t2.cuspidal_rows()[0]), irrep(t2, st), 1), PreconditionError);

    // appendix theorem on GL_2(F_3)
    for (int pi : t2.cuspidal_rows()) {
        const cxd g = jpss_gamma(irrep(t2, pi), contragredient(irrep(t2, pi)), 1).value;
        CHECK(std::abs(g - cxd{-1.0, 0.0}) < 1e-9);
    }

    // |gamma_RS| = q^{-m(n-m-1)/2} for n > m
    for (auto [q, n, m] : {std::tuple{3u, 2, 1}, {2u, 3, 1}, {2u, 3, 2}}) {
        const CharacterTable& tn = character_table(q, n);
        const CharacterTable& tm = character_table(q, m);
        const double expect = std::pow(double(q), -0.5 * m * (n - m - 1));
        for (int pi : tn.cuspidal_rows())
            for (int sg : tm.generic_rows()) {
                const cxd g = jpss_gamma(irrep(tn, pi), irrep(tm, sg), 1).value;
                CHECK(std::abs(std::abs(g) - expect) < 1e-9);
            }
    }

    // conjugation: conj gamma_RS(pi x sigma, psi) = gamma_RS(pi-check x sigma-check, psi^{-1})
    const Field& F = t2.field();
    for (int pi : t2.cuspidal_rows())
        for (int sg = 0; sg < t1.irrep_count(); ++sg) {
            const cxd lhs = std::conj(jpss_gamma(irrep(t2, pi), irrep(t1, sg), 1).value);
            const cxd rhs = jpss_gamma(contragredient(irrep(t2, pi)),
                                       contragredient(irrep(t1, sg)), F.neg(F.one()))
                                .value;
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }

    // |gamma_RS| = q^{n/2} for cuspidal pairs of equal size with pi != sigma-check
    for (int pi : t2.cuspidal_rows())
        for (int sg : t2.cuspidal_rows()) {
            if (contragredient(irrep(t2, sg)).row == pi) continue;
            const cxd g = jpss_gamma(irrep(t2, pi), irrep(t2, sg), 1).value;
            CHECK(std::abs(std::abs(g) - 3.0) < 1e-9);
        }
}

TEST_CASE("bridge between the Shahidi and JPSS gamma factors")
{
    const auto rep = verify("cor.jpss_bridge", Scope{{{3, 1}, {3, 2}}});
    CHECK(rep.pass);
}

TEST_CASE("normalized sizes for cuspidal pairs")
{
    const CharacterTable& t = character_table(3, 2);
    for (int pi : t.cuspidal_rows())
        for (int sg : t.cuspidal_rows()) {
            const double a = std::abs(normalized_gamma(irrep(t, pi), irrep(t, sg), 1).value);
            if (pi == sg)
                CHECK(std::abs(a - 1.0 / 3.0) < 1e-9);  // q^{-n/2} = 3^{-1}
            else
                CHECK(std::abs(a - 1.0) < 1e-9);  // includes sigma = pi-check, pi not self-dual
        }

    // the absolute value detects exactly the support multiplicity
    const CharacterTable& t32 = character_table(2, 3);
    const CharacterTable& t1 = character_table(2, 1);
    for (int pi : t32.generic_rows()) {
        const int d = support_multiplicity(irrep(t32, pi), irrep(t1, 0));
        const double a = std::abs(normalized_gamma(irrep(t32, pi), irrep(t1, 0), 1).value);
        CHECK(std::abs(a - std::pow(2.0, -0.5 * d)) < 1e-9);
    }
}

TEST_CASE("kondo product equals the bessel-sum gamma")
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);
    const Field& F = t2.field();
    for (int pi : t2.generic_rows())
        for (std::uint64_t k = 0; k < 2; ++k) {
            const cxd lhs =
                shahidi_gamma(irrep(t2, pi), irrep(t1, t1.cuspidal_row_by_orbit(k)), 1).value;
            const cxd rhs = kondo_gamma_gl1(irrep(t2, pi), MultChar(F, k), 1).value;
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    // n = 1 instance: the product is a single Gauss sum
    for (std::uint64_t k = 0; k < 2; ++k)
        for (int r = 0; r < 2; ++r) {
            const cxd lhs = shahidi_gamma(irrep(t1, r), irrep(t1, t1.cuspidal_row_by_orbit(k)), 1).value;
            const cxd rhs = kondo_gamma_gl1(irrep(t1, r), MultChar(F, k), 1).value;
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    // GL_3(F_2), trivial chi
    const CharacterTable& t32 = character_table(2, 3);
    const CharacterTable& t12 = character_table(2, 1);
    for (int pi : t32.generic_rows()) {
        const cxd lhs = shahidi_gamma(irrep(t32, pi), irrep(t12, 0), 1).value;
        const cxd rhs = kondo_gamma_gl1(irrep(t32, pi), MultChar(t32.field(), 0), 1).value;
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("two-block special value against direct evaluation")
{
    for (auto [q, n] : {std::pair{3u, 2}, {2u, 3}}) {
        const CharacterTable& t = character_table(q, n);
        const Field& F = t.field();
        for (int pi : t.generic_rows())
            for (Fel c = 1; c < F.q(); ++c) {
                const cxd direct = bessel_value(irrep(t, pi), 1, two_block_matrix(F, n, c));
                const cxd formula = two_block_special_value(irrep(t, pi), c, 1);
                CHECK(std::abs(direct - formula) < 1e-9);
                // triangle bound: |K| <= (#solutions) q^{-n+1}
                CHECK(std::abs(formula) <= std::pow(double(q), n - 1) + 1e-9);
            }
    }
    CHECK_THROWS_AS(two_block_special_value(irrep(character_table(3, 1), 0), 1, 1),
                    PreconditionError);
}

TEST_CASE("three-block convolution formula and its delta term")
{
    const CharacterTable& t = character_table(3, 3);
    const Field& F = t.field();
    const AdditiveCharacter psi = default_psi(F);
    bool delta_matters = false;
    for (int pi : t.generic_rows())
        for (Fel c = 1; c < F.q(); ++c)
            for (Fel cp = 1; cp < F.q(); ++cp) {
                const cxd direct = bessel_value(irrep(t, pi), 1, three_block_matrix(F, 3, c, cp));
                const cxd formula = three_block_special_value(irrep(t, pi), c, cp, 1);
                CHECK(std::abs(direct - formula) < 1e-9);
                // recompute without the delta correction
                KahanSum bare;
                const BesselEvaluator& ev = bessel_evaluator(irrep(t, pi), 1);
                for (Fel s = 1; s < F.q(); ++s)
                    bare.add(ev.value(two_block_matrix(F, 3, F.mul(F.inv(s), c))) *
                             ev.value(two_block_matrix_flipped(F, 3, F.mul(s, cp))) *
                             (psi(s) - cxd{1.0, 0.0}));
                if (F.mul(c, cp) == F.one()) {
                    if (std::abs(direct - bare.value()) > 1e-9) delta_matters = true;
                } else {
                    CHECK(std::abs(direct - bare.value()) < 1e-9);  // no delta off the wall
                }
            }
    CHECK(delta_matters);
    const CharacterTable& t22 = character_table(3, 2);
    CHECK_THROWS_AS(three_block_special_value(irrep(t22, t22.generic_rows()[0]), 1, 1, 1),
                    PreconditionError);
}

TEST_CASE("fourier-bessel identity, exhaustive on small groups")
{
    for (auto [q, n] : {std::pair{3u, 2}, {2u, 3}}) {
        const CharacterTable& t = character_table(q, n);
        for (int pi : t.generic_rows())
            for (Fel c = 1; c < t.field().q(); ++c) {
                const auto rep = fourier_bessel_identity_check(irrep(t, pi), c, 1);
                CHECK(rep.pass);
                CHECK(rep.max_residual < 1e-8);
            }
    }
}

TEST_CASE("functional equation, n > m")
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);
    for (int pi : t2.cuspidal_rows())
        for (int sg = 0; sg < t1.irrep_count(); ++sg) {
            const auto rep = check_fe_n_gt_m(irrep(t2, pi), irrep(t1, sg), 1);
            CHECK(rep.pass);
            CHECK(rep.max_residual < 1e-7);
        }
    CHECK_THROWS_AS(
        check_fe_n_gt_m(irrep(t1, 0), irrep(t1, 0), 1), PreconditionError);
}

TEST_CASE("zj sums are bilinear")
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);
    const Field& F = t2.field();
    const BesselEvaluator& Jpi = bessel_evaluator(irrep(t2, t2.cuspidal_rows()[0]), 1);
    const BesselEvaluator& Jsg = bessel_evaluator(irrep(t1, 1), F.neg(F.one()));
    const auto X = spanning_translates(Jpi);
    REQUIRE(X.size() >= 2);
    auto W1 = [&](const Mat& g) { return Jpi.value(g * X[0]); };
    auto W2 = [&](const Mat& g) { return Jpi.value(g * X[1]); };
    auto Wsum = [&](const Mat& g) { return 2.0 * W1(g) - 3.0 * W2(g); };
    auto Wp = [&](const Mat& h) { return Jsg.value(h); };
    const cxd lhs = zj_sum(Wsum, Wp, F, 2, 1, 0);
    const cxd rhs = 2.0 * zj_sum(W1, Wp, F, 2, 1, 0) - 3.0 * zj_sum(W2, Wp, F, 2, 1, 0);
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("functional equation, n = m, with Fourier machinery")
{
    const Field& F = make_field(3, 1);
    const AdditiveCharacter psi = default_psi(F);

    // F_psi(delta_0) is the constant function 1
    const auto fd0 = fourier_transform(SchwartzFunction::delta(F, 2, 0), psi);
    for (std::uint64_t i = 0; i < fd0.size(); ++i)
        CHECK(std::abs(fd0[i] - cxd{1.0, 0.0}) < 1e-12);

    // double transform = q^n id on deterministic pseudo-random tables
    for (int n = 1; n <= 3; ++n) {
        SchwartzFunction phi(F, n);
        for (std::uint64_t i = 0; i < phi.size(); ++i)
            phi[i] = cxd{std::cos(1.7 * double(i) + 0.3), std::sin(0.9 * double(i))};
        const auto f2 = fourier_transform(fourier_transform(phi, psi), psi.inverse());
        for (std::uint64_t i = 0; i < phi.size(); ++i)
            CHECK(std::abs(f2[i] - double(phi.size()) * phi[i]) < 1e-9);
    }

    const CharacterTable& t2 = character_table(3, 2);
    const auto cusp = t2.cuspidal_rows();
    for (int pi : cusp)
        for (int sg : cusp) {
            const auto rep = check_fe_n_eq_m(irrep(t2, pi), irrep(t2, sg), 1);
            CHECK(rep.pass);
            CHECK(rep.max_residual < 1e-7);
        }
    // non-cuspidal input is refused
    const int st = [&] {
        for (int i : t2.generic_rows())
            if (!t2.is_cuspidal(i)) return i;
        return -1;
    }();
    CHECK_THROWS_AS(check_fe_n_eq_m(irrep(t2, st), irrep(t2, cusp[0]), 1), PreconditionError);
}

TEST_CASE("gamma is never zero on generic pairs (small scope)")
{
    const auto rep = verify("thm.gamma_nonzero", Scope{{{2, 1}, {2, 2}, {3, 1}, {3, 2}}});
    CHECK(rep.pass);
}

TEST_CASE("verify registry surface")
{
    CHECK_THROWS_AS(verify("thm.does_not_exist", Scope{{{3, 1}}}), UnknownTheoremError);
    const auto ids = theorem_ids();
    CHECK(ids.size() >= 18);
    for (const auto& id : {"thm.multiplicativity", "thm.appendix_minus_one", "thm.two_block",
                           "suite.structural"})
        CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    // reports are structured
    const auto rep = verify("thm.appendix_minus_one", Scope{{{3, 2}}});
    CHECK(rep.pass);
    CHECK(rep.instances == 3);
    CHECK(rep.theorem_id == "thm.appendix_minus_one");
    CHECK(rep.wall_seconds >= 0.0);
    CHECK(!format_report_text(rep).empty());
}

TEST_SUITE_END();
