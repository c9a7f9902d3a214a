#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace superint;

namespace {

OpPoly random_op(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, 2);
    OpPoly p;
    for (int w = 0; w < 3; ++w) p += OpPoly::word(testutil::random_dpoly(rng, 2), d(rng), d(rng));
    return p;
}

} // namespace

TEST_CASE("canonical commutation and e(2) closure") {
    const Vocab& v = Vocab::get();
    OpPoly X(DPoly::var(v.x));
    REQUIRE(commutator(p1(), X) == OpPoly(parse_expression("0 - i*hbar")));
    // [L_z, p1] = i hbar p2 = hbar^2 dy; [L_z, p2] = -i hbar p1; [p1, p2] = 0
    DPoly ih = parse_expression("i*hbar");
    REQUIRE(commutator(angular_momentum(), p1()) == OpPoly(ih) * p2());
    REQUIRE(commutator(angular_momentum(), p2()) == OpPoly(-ih) * p1());
    REQUIRE(commutator(p1(), p2()).is_zero());
}

TEST_CASE("normal ordering pushes derivatives right") {
    // p1 . V1 = V1 p1 - i hbar V1'
    OpPoly lhs = p1() * OpPoly(parse_expression("V1"));
    OpPoly rhs = OpPoly(parse_expression("V1")) * p1() + OpPoly(parse_expression("0 - i*hbar*V1'"));
    REQUIRE(lhs == rhs);
}

TEST_CASE("antisymmetry and Jacobi identity") {
    std::mt19937 rng(5);
    for (int i = 0; i < 8; ++i) {
        OpPoly a = random_op(rng), b = random_op(rng), c = random_op(rng);
        REQUIRE(commutator(a, a).is_zero());
        OpPoly jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                     commutator(c, commutator(a, b));
        REQUIRE(jac.is_zero());
    }
}

TEST_CASE("symmetrized anticommutators are Hermitian") {
    REQUIRE(sym_anticommutator(DPoly(1), 2, 0) == momentum(2, 0));
    // 1/2 {x, p1} = x p1 - (i hbar / 2)
    OpPoly s = sym_anticommutator(DPoly::var(Vocab::get().x), 1, 0);
    OpPoly expect = OpPoly(DPoly::var(Vocab::get().x)) * p1() + OpPoly(parse_expression("0 - 1/2*i*hbar"));
    REQUIRE(s == expect);
    REQUIRE(s.is_hermitian());

    std::mt19937 rng(9);
    for (int i = 0; i < 10; ++i) {
        DPoly f = testutil::random_dpoly(rng, 3);
        // real function factor: strip any imaginary part
        std::vector<DPoly::Term> acc;
        for (auto [m, c] : f.terms()) acc.push_back({m, GaussRat(c.re)});
        f = DPoly::from_unsorted(std::move(acc));
        REQUIRE(sym_anticommutator(f, 1, 2).is_hermitian());
    }
}

TEST_CASE("X commutes with H; [H, p1] leaves only the potential gradient") {
    // X = (p1^2 - p2^2)/2 + V1 - V2
    OpPoly X = (momentum(2, 0) - momentum(0, 2)).scaled(GaussRat(Rat(1, 2))) +
               OpPoly(parse_expression("V1 - V2"));
    REQUIRE(commutator(hamiltonian(), X).is_zero());
    REQUIRE(extract_coeffs(commutator(hamiltonian(), X)).empty());

    auto Z = extract_coeffs(commutator(hamiltonian(), p1()));
    REQUIRE(Z.size() == 1);
    REQUIRE(Z.at({0, 0}) == parse_expression("i*hbar*V1'"));
}

TEST_CASE("build_wn reproduces the displayed leading terms") {
    const Vocab& v = Vocab::get();
    AMap A3;
    A3[{0, 3, 0}] = DPoly::var(v.cgamma);
    A3[{0, 0, 3}] = DPoly::var(v.sgamma);
    OpPoly w3 = build_wn(3, A3);
    REQUIRE(w3 == OpPoly(DPoly::var(v.cgamma)) * momentum(3, 0) + OpPoly(DPoly::var(v.sgamma)) * momentum(0, 3));

    AMap A2;
    A2[{0, 2, 0}] = DPoly(Rat(1, 2));
    A2[{0, 0, 2}] = DPoly(Rat(-1, 2));
    REQUIRE(build_wn(2, A2) == (momentum(2, 0) - momentum(0, 2)).scaled(GaussRat(Rat(1, 2))));

    AMap A5;
    A5[{1, 2, 2}] = DPoly(1);
    OpPoly w5 = build_wn(5, A5);
    REQUIRE(w5 == anticommutator(angular_momentum(), momentum(2, 2)).scaled(GaussRat(Rat(1, 2))));
    REQUIRE(w5.is_hermitian());

    REQUIRE_THROWS_AS(build_wn(4, AMap{{{0, 2, 2}, DPoly()}}), std::invalid_argument);
}

TEST_CASE("leading-order theorem: W_N expands on the f_j0 solutions") {
    std::mt19937 rng(31);
    const Vocab& v = Vocab::get();
    for (int N : {3, 4, 5, 6}) {
        AMap A = testutil::random_amap(rng, N);
        OpPoly w = build_wn(N, A);
        auto f0 = IntegralAnsatz::compute_f_j0(N, A);
        GaussRat phase = minus_i_pow(N);
        for (int j = 0; j <= N; ++j) {
            DPoly expect = f0[static_cast<size_t>(j)] *
                           DPoly::term(Monomial{{{v.hbar, N}}}, phase);
            DPoly got;
            auto it = w.words().find({j, N - j});
            if (it != w.words().end()) got = it->second;
            REQUIRE(got == expect);
        }
    }
}

TEST_CASE("[H, Y] is anti-Hermitian for Hermitian Y") {
    std::mt19937 rng(13);
    for (int N : {2, 3, 4, 5}) {
        IntegralAnsatz ansatz(N, testutil::random_amap(rng, N));
        OpPoly Y = ansatz.to_operator();
        REQUIRE(Y.is_hermitian());
        REQUIRE(commutator(hamiltonian(), Y).is_antihermitian());
    }
}

TEST_CASE("classical limit of a determining set") {
    AMap A3;
    A3[{0, 3, 0}] = DPoly(1);
    IntegralAnsatz y3(3, A3);
    std::vector<DPoly> eqs;
    for (int j = 0; j <= 2; ++j) eqs.push_back(y3.M(j, 1));
    auto cl = classical_limit(eqs);
    for (const auto& e : cl) REQUIRE(e.max_exponent(Vocab::get().hbar) == 0);
    // the j=2 classical equation keeps its potential coupling
    REQUIRE(cl[2] == parse_expression("2*f_1_2^(1,0) - 6*V1'"));
}
