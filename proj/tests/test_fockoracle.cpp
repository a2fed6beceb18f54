#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qcs/fockoracle.hpp"
#include "qcs/observables.hpp"

using namespace qcs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const Deformation q09(0.9);
} // namespace

TEST_CASE("ladder matrices have the square-root band structure") {
    const auto a = annihilation_matrix(5, q09);
    REQUIRE(a.dim == 5);
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) {
            const auto want = (c == r + 1) ? std::sqrt(q_integer(c, q09)) : 0.0;
            CHECK(a.entries(r, c) == std::complex<double>(want));
        }
    const auto adag = creation_matrix(5, q09);
    CHECK(adag.entries == a.entries.adjoint());
    CHECK_THROWS_AS(annihilation_matrix(1, q09), invalid_argument);
}

TEST_CASE("truncated matrices satisfy the deformed commutation relation") {
    // AA+ - q^2 A+A = 1 holds exactly away from the truncation edge.
    const int dim = 12;
    const auto a = annihilation_matrix(dim, q09).entries;
    const auto adag = creation_matrix(dim, q09).entries;
    const Eigen::MatrixXcd lhs = a * adag - q09.q_sq() * adag * a;
    for (int r = 0; r < dim - 1; ++r)
        for (int c = 0; c < dim - 1; ++c)
            CHECK_THAT(std::abs(lhs(r, c) - (r == c ? 1.0 : 0.0)), WithinAbs(0.0, 1e-14));
}

TEST_CASE("oracle matches the exact bilinear closed forms") {
    const CoherentState s(2.0, 1.1, q09);
    const auto n_word = oracle_expectation(s, {Ladder::raise, Ladder::lower});
    CHECK_THAT(n_word.real(), WithinRel(2.0, 1e-12));
    CHECK_THAT(n_word.imag(), WithinAbs(0.0, 1e-13));
    const auto anti = oracle_expectation(s, {Ladder::lower, Ladder::raise});
    CHECK_THAT(anti.real(), WithinRel(1.0 + q09.q_sq() * 2.0, 1e-12));
}

TEST_CASE("oracle agrees with every closed-form word") {
    const CoherentState s(2.0, 1.1, q09);
    const auto bi = expect_bilinears(s);
    const auto tri = expect_trilinears(s);
    const struct {
        std::complex<double> closed;
        std::initializer_list<Ladder> word;
    } cases[] = {
        {expect_a(s), {Ladder::lower}},
        {expect_a_dagger(s), {Ladder::raise}},
        {bi.adag_adag, {Ladder::raise, Ladder::raise}},
        {bi.a_a, {Ladder::lower, Ladder::lower}},
        {tri.adag_adag_a, {Ladder::raise, Ladder::raise, Ladder::lower}},
        {tri.adag_a_adag, {Ladder::raise, Ladder::lower, Ladder::raise}},
        {tri.adag_a_a, {Ladder::raise, Ladder::lower, Ladder::lower}},
        {tri.a_adag_a, {Ladder::lower, Ladder::raise, Ladder::lower}},
    };
    for (const auto& c : cases) {
        const auto got = oracle_expectation(s, c.word);
        CHECK_THAT(std::abs(got - c.closed), WithinAbs(0.0, 1e-10 * std::max(1.0, std::abs(c.closed))));
    }
}

TEST_CASE("empty word returns the squared norm of the truncated state") {
    const CoherentState s(2.0, 0.3, q09);
    const auto norm = oracle_expectation(s, std::initializer_list<Ladder>{});
    CHECK_THAT(norm.real(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(norm.imag(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("automatic dimension certifies the coefficient tail") {
    const CoherentState s(2.0, 0.0, q09);
    const int dim = automatic_dimension(s, 2);
    CHECK(dim >= 4);

    // Doubling the dimension must not move any oracle value.
    const auto base = oracle_expectation(s, {Ladder::raise, Ladder::raise}, dim);
    const auto wide = oracle_expectation(s, {Ladder::raise, Ladder::raise}, 2 * dim);
    CHECK_THAT(std::abs(base - wide), WithinAbs(0.0, 1e-12));
}

TEST_CASE("undersized explicit dimensions are rejected") {
    const CoherentState s(2.0, 0.0, q09);
    CHECK_THROWS_AS(oracle_expectation(s, {Ladder::raise, Ladder::lower}, 4),
                    insufficient_truncation_error);
    // A term cap that certifies the norm but not the much smaller oracle
    // tail is also rejected.
    const CoherentState coarse(0.01, 0.0, q09, Truncation(1e-14, 6));
    CHECK_THROWS_AS(automatic_dimension(coarse, 1), insufficient_truncation_error);
}

TEST_CASE("span and initializer-list entry points agree") {
    const CoherentState s(1.0, 0.8, q09);
    const std::vector<Ladder> word{Ladder::raise, Ladder::lower, Ladder::raise};
    const auto via_span = oracle_expectation(s, std::span<const Ladder>(word));
    const auto via_list = oracle_expectation(s, {Ladder::raise, Ladder::lower, Ladder::raise});
    CHECK(via_span == via_list);
}
