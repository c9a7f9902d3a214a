#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace superint;

TEST_CASE("counting formulas") {
    REQUIRE(counts(2) == std::pair<long, long>{6, 4});
    REQUIRE(counts(3) == std::pair<long, long>{9, 6});
    REQUIRE(counts(4) == std::pair<long, long>{12, 9});
    REQUIRE(counts(5) == std::pair<long, long>{16, 12});
    REQUIRE(counts(10) == std::pair<long, long>{42, 36});
    for (int N = 2; N <= 12; ++N) {
        auto [eqs, unk] = counts(N);
        if (N % 2)
            REQUIRE(4 * eqs == (N + 3) * (N + 3));
        else
            REQUIRE(4 * eqs == (N + 2) * (N + 4));
        if (N % 2)
            REQUIRE(4 * unk == (N + 1) * (N + 3));
        else
            REQUIRE(4 * unk == (N + 2) * (N + 2));
    }
    REQUIRE_THROWS_AS(counts(1), std::invalid_argument);
}

TEST_CASE("closed-form level-0 coefficients") {
    const Vocab& v = Vocab::get();
    AMap A2;
    A2[{0, 2, 0}] = DPoly(Rat(1, 2));
    A2[{0, 0, 2}] = DPoly(Rat(-1, 2));
    auto f = IntegralAnsatz::compute_f_j0(2, A2);
    REQUIRE(f[0] == DPoly(Rat(-1, 2)));
    REQUIRE(f[1].is_zero());
    REQUIRE(f[2] == DPoly(Rat(1, 2)));

    AMap A3;
    A3[{0, 3, 0}] = DPoly(1);
    auto f3 = IntegralAnsatz::compute_f_j0(3, A3);
    REQUIRE(f3[3] == DPoly(1));
    for (int j = 0; j < 3; ++j) REQUIRE(f3[static_cast<size_t>(j)].is_zero());

    AMap A5;
    A5[{1, 2, 2}] = DPoly(1);
    auto f5 = IntegralAnsatz::compute_f_j0(5, A5);
    REQUIRE(f5[2] == DPoly::var(v.x));
    REQUIRE(f5[3] == -DPoly::var(v.y));
}

TEST_CASE("level-0 equations are solved identically by the closed form") {
    std::mt19937 rng(17);
    for (int N : {2, 3, 4, 5, 6, 7}) {
        IntegralAnsatz ansatz(N, testutil::random_amap(rng, N));
        for (int j = 0; j <= N + 1; ++j) REQUIRE(ansatz.M(j, 0).is_zero());
    }
}

TEST_CASE("the separation integral X annihilates every determining equation") {
    AMap A2;
    A2[{0, 2, 0}] = DPoly(Rat(1, 2));
    A2[{0, 0, 2}] = DPoly(Rat(-1, 2));
    IntegralAnsatz X(2, A2);
    X.resolve(0, 1, parse_expression("V1 - V2"));
    DetSystem sys = determining_system(X);
    REQUIRE(sys.equation_count() == 6);
    for (const auto& lev : sys.levels)
        for (const auto& eq : lev.equations) REQUIRE(eq.is_zero());
}

TEST_CASE("phi boundary conventions") {
    AMap A3;
    A3[{0, 3, 0}] = DPoly::var(Vocab::get().cgamma);
    A3[{0, 0, 3}] = DPoly::var(Vocab::get().sgamma);
    IntegralAnsatz y3(3, A3);
    REQUIRE(y3.phi(0, 0).is_zero());
    REQUIRE(y3.phi(0, -1).is_zero());
    // constant level-0 coefficients make every phi vanish
    for (int j = 0; j <= 3; ++j) {
        REQUIRE(y3.phi(j, 1).is_zero());
        REQUIRE(y3.phi(j, 2).is_zero());
    }
    // N=3, l=1: the correction is built from phi derivatives alone
    for (int j = 0; j <= 2; ++j) REQUIRE(y3.quantum_correction(j, 1).is_zero());
}

TEST_CASE("quantum correction enters at hbar^2 only") {
    std::mt19937 rng(29);
    IntegralAnsatz a(5, testutil::random_amap(rng, 5));
    for (int l = 1; l <= 3; ++l)
        for (int j = 0; j <= 5 - 2 * l + 1; ++j) {
            DPoly m = a.M(j, l);
            DPoly cl = m.at_hbar_zero();
            // the classical part carries no correction: it is linear in the jets
            // of the unknown f's and the potential separately
            DPoly q = a.quantum_correction(j, l);
            if (!q.is_zero()) {
                DPoly diff = m + DPoly::term(Monomial{{{Vocab::get().hbar, 2}}}, GaussRat(1)) * q;
                REQUIRE(diff.at_hbar_zero() == cl);
            }
        }
}

TEST_CASE("formula path equals the commutator oracle") {
    std::mt19937 rng(41);
    SECTION("family seeds") {
        for (int N : {3, 4, 5}) {
            AMap A = (N % 2) ? family_I(N) : AMap{{{0, 2, 2}, DPoly(1)}};
            auto rep = cross_check(IntegralAnsatz(N, A));
            CAPTURE(N);
            REQUIRE(rep.all_match);
        }
    }
    SECTION("random rational maps") {
        for (int N : {2, 3, 4}) {
            for (int t = 0; t < 4; ++t) {
                auto rep = cross_check(IntegralAnsatz(N, testutil::random_amap(rng, N)));
                CAPTURE(N, t);
                REQUIRE(rep.all_match);
            }
        }
    }
}

TEST_CASE("determining system serializes to the documented JSON shape") {
    AMap A3;
    A3[{0, 3, 0}] = DPoly(1);
    DetSystem sys = determining_system(IntegralAnsatz(3, A3));
    json j = to_json(sys);
    REQUIRE(j["N"] == 3);
    REQUIRE(j["levels"].size() == 3);
    REQUIRE(j["levels"][0]["l"] == 0);
    REQUIRE(j["levels"][1]["equations"].size() == 3);
}
