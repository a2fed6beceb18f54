#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "oracle.hpp"
#include "qcs/qkernel.hpp"

using namespace qcs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const Deformation q09(0.9);
const Deformation q_fig = Deformation::from_tau(0.005);
} // namespace

TEST_CASE("deformation validates its domain") {
    CHECK_THROWS_AS(Deformation(0.0), invalid_argument);
    CHECK_THROWS_AS(Deformation(-0.3), invalid_argument);
    CHECK_THROWS_AS(Deformation(1.0001), invalid_argument);
    CHECK_THROWS_AS(Deformation(std::nan("")), invalid_argument);
    CHECK_THROWS_AS(Deformation::from_tau(-0.1), invalid_argument);
    CHECK(Deformation(1.0).classical());
    CHECK(Deformation::from_tau(0.0).classical());
    CHECK(Deformation::from_tau(0.005).q() == std::exp(-0.005));
}

TEST_CASE("deformation exposes derived constants") {
    CHECK_THAT(q09.q_sq(), WithinRel(0.81, 1e-15));
    CHECK_THAT(q09.radius(), WithinRel(1.0 / 0.19, 1e-15));
    // 1/(1 - q^2) amplifies the 1-ulp representation error of q by ~2/(1-q^2);
    // at q = e^{-0.005} that caps the achievable agreement near 1e-13.
    CHECK_THAT(q_fig.radius(), WithinRel(100.50083333194444775, 1e-13));
    CHECK(std::isinf(Deformation(1.0).radius()));
}

TEST_CASE("truncation validates its parameters") {
    CHECK_THROWS_AS(Truncation(0.0, 100), invalid_argument);
    CHECK_THROWS_AS(Truncation(-1e-10, 100), invalid_argument);
    CHECK_THROWS_AS(Truncation(1e-14, 0), invalid_argument);
    const Truncation t;
    CHECK(t.tol == 1e-14);
    CHECK(t.n_max == 512);
}

TEST_CASE("q-integers: base cases, recursion, classical branch") {
    CHECK(q_integer(0, q09) == 0.0);
    CHECK(q_integer(1, q09) == 1.0);
    CHECK_THAT(q_integer(2, q09), WithinRel(1.81, 1e-15));
    CHECK_THROWS_AS(q_integer(-1, q09), invalid_argument);

    const Deformation classical(1.0);
    for (int n = 0; n < 40; ++n) CHECK(q_integer(n, classical) == static_cast<double>(n));

    for (const double q : {0.3, 0.7, 0.95}) {
        const Deformation d(q);
        for (int n = 0; n < 80; ++n)
            CHECK_THAT(q_integer(n + 1, d), WithinRel(1.0 + d.q_sq() * q_integer(n, d), 1e-14));
    }
}

TEST_CASE("q-integers increase monotonically to the radius") {
    for (const double q : {0.5, 0.9, 0.99}) {
        const Deformation d(q);
        // Strict growth holds only while q^{2n} is above one ulp; past that
        // point [n]_q saturates to exactly radius() in double precision.
        for (int n = 0; n < 20; ++n) CHECK(q_integer(n + 1, d) > q_integer(n, d));
        double prev = -1.0;
        bool ordered = true;
        bool bounded = true;
        for (int n = 0; n <= 400; ++n) {
            const double cur = q_integer(n, d);
            ordered = ordered && cur >= prev;
            bounded = bounded && cur <= d.radius();
            prev = cur;
        }
        CHECK(ordered);
        CHECK(bounded);
        CHECK_THAT(q_integer(4000, d), WithinRel(d.radius(), 1e-12));
    }
}

TEST_CASE("q-factorial matches the reference value and the classical limit") {
    CHECK(q_factorial(0, q09) == 1.0);
    CHECK(q_factorial(1, q09) == 1.0);
    CHECK_THAT(q_factorial(8, q09), WithinRel(3014.961136154266759671, 1e-14));
    const Deformation classical(1.0);
    CHECK_THAT(q_factorial(10, classical), WithinRel(3628800.0, 1e-15));
    CHECK_THROWS_AS(q_factorial(-2, q09), invalid_argument);
}

TEST_CASE("q-factorial overflow raises range_error") {
    // [n]_q! ~ radius^n eventually overflows for q close to 1.
    CHECK_THROWS_AS(q_factorial(100000, Deformation(0.999999)), std::range_error);
}

TEST_CASE("q-exponential reproduces frozen reference values") {
    CHECK(q_exponential(0.0, q09).value.real() == 1.0);
    CHECK_THAT(q_exponential(2.0, q09).value.real(),
               WithinRel(9.59821388957440644375, 1e-14));
    CHECK_THAT(q_exponential(3.0, q09).value.real(),
               WithinRel(39.8014994971020219831, 1e-14));
    CHECK_THAT(q_exponential(6.0, q_fig).value.real(),
               WithinRel(442.5190134047128987994, 1e-13));
    CHECK_THAT(q_exponential(4.0, Deformation(1.0)).value.real(),
               WithinRel(std::exp(4.0), 1e-14));
}

TEST_CASE("q-exponential reports its certificate") {
    const auto r = q_exponential(6.0, q_fig);
    CHECK(r.terms_used >= 30);
    CHECK(r.terms_used <= 60);
    CHECK(r.tail_bound <= 1e-14);
    CHECK(r.tail_bound >= 0.0);
    CHECK(r.value.imag() == 0.0);
}

TEST_CASE("series engine rejects out-of-domain arguments") {
    CHECK_THROWS_AS(q_exponential(-0.5, q09), invalid_argument);
    CHECK_THROWS_AS(q_exponential(std::nan(""), q09), invalid_argument);

    const Deformation half(0.5); // radius 4/3
    CHECK_THROWS_AS(q_exponential(6.0, half), divergence_error);
    CHECK_THROWS_AS(q_exponential(0.99 * half.radius(), half), divergence_error);
    CHECK_NOTHROW(q_exponential(0.9 * half.radius(), half));
    CHECK_THROWS_WITH(q_exponential(2.0, half), Catch::Matchers::ContainsSubstring("radius"));

    // q = 1 has infinite radius: the domain guard accepts large arguments.
    // The tail tolerance is absolute, so a sum of magnitude e^500 needs the
    // term cap raised well past the n ~ 500 peak of J^n/n!.
    CHECK_NOTHROW(q_exponential(50.0, Deformation(1.0)));
    CHECK_NOTHROW(q_exponential(500.0, Deformation(1.0), Truncation(1e-14, 2048)));
}

TEST_CASE("series engine raises convergence_error at the term cap") {
    CHECK_THROWS_AS(q_exponential(6.0, q_fig, Truncation(1e-14, 12)), convergence_error);
    CHECK_THROWS_AS(f_q(6.0, 1.0, q_fig, Truncation(1e-14, 12)), convergence_error);
    CHECK_THROWS_AS(q_exponential_derivative(6.0, q_fig, Truncation(1e-14, 12)),
                    convergence_error);
}

TEST_CASE("tighter tolerance never loosens the certificate") {
    const auto loose = q_exponential(3.0, q09, Truncation(1e-8, 512));
    const auto tight = q_exponential(3.0, q09, Truncation(1e-15, 512));
    CHECK(loose.terms_used <= tight.terms_used);
    CHECK(std::abs(loose.value.real() - tight.value.real()) <= loose.tail_bound);
}

TEST_CASE("F_q basics: gamma = 0, conjugation, modulus bound") {
    CHECK(f_q(3.0, 0.0, q09).value == q_exponential(3.0, q09).value);

    const double e = q_exponential(3.0, q09).value.real();
    for (const double g : {0.3, 1.9, 11.0, 4000.0}) {
        const auto plus = f_q(3.0, g, q09).value;
        const auto minus = f_q(3.0, -g, q09).value;
        CHECK_THAT(std::abs(plus - std::conj(minus)), WithinAbs(0.0, 1e-14 * e));
        CHECK(std::abs(plus) <= e + 1e-12);
    }
}

TEST_CASE("F_q matches the extended-precision reference") {
    for (const double g : {0.7, 2.0, 31.4}) {
        const auto fast = f_q(6.0, g, q_fig).value;
        const auto slow = refsum::f_q(6.0L, g, std::exp(-0.005L), 400);
        CHECK_THAT(std::abs(fast - std::complex<double>(slow)),
                   WithinAbs(0.0, 1e-12 * std::abs(fast)));
    }
}

TEST_CASE("derivative series matches a central finite difference") {
    const double h = 1e-6;
    for (const double j : {0.5, 3.0}) {
        const double series = q_exponential_derivative(j, q09).value.real();
        const double fd = (q_exponential(j + h, q09).value.real() -
                           q_exponential(j - h, q09).value.real()) /
                          (2.0 * h);
        CHECK_THAT(series, WithinRel(fd, 1e-8));
    }
    const double classical = q_exponential_derivative(2.0, Deformation(1.0)).value.real();
    CHECK_THAT(classical, WithinRel(std::exp(2.0), 1e-13));
}

TEST_CASE("jackson derivative: definition, identity and degenerate policy") {
    const auto e_of = [&](double j) { return q_exponential(j, q09).value; };

    const auto direct = jackson_derivative(e_of, 2.0, q09);
    const double expected = (q_exponential(2.0, q09).value.real() -
                             q_exponential(0.81 * 2.0, q09).value.real()) /
                            (2.0 * 0.19);
    CHECK_THAT(direct.real(), WithinRel(expected, 1e-15));

    // D_q E_q = E_q.
    for (const double j : {0.4, 2.0, 4.4})
        CHECK_THAT(jackson_derivative(e_of, j, q09).real(),
                   WithinRel(q_exponential(j, q09).value.real(), 1e-10));

    CHECK_THROWS_AS(jackson_derivative(e_of, 2.0, Deformation(1.0)),
                    degenerate_deformation_error);
    CHECK_THROWS_AS(jackson_derivative(e_of, 0.0, q09), degenerate_deformation_error);

    const auto classical = jackson_derivative(
        [](double j) { return std::complex<double>(std::exp(j)); }, 2.0, Deformation(1.0),
        JacksonPolicy::ordinary_limit);
    CHECK_THAT(classical.real(), WithinRel(std::exp(2.0), 1e-8));
    const auto at_zero =
        jackson_derivative(e_of, 0.0, q09, JacksonPolicy::ordinary_limit);
    CHECK_THAT(at_zero.real(), WithinRel(1.0, 1e-8)); // E_q'(0) = 1
}

TEST_CASE("phase reduction stays on the unit circle at scan scales") {
    CHECK_THAT(reduce_phase(two_pi * 2 + 0.3), WithinAbs(0.3, 1e-14));
    for (const double phi : {0.1, 1e3, 1e7, -4e5}) {
        CHECK(std::abs(reduce_phase(phi)) <= pi);
        CHECK_THAT(std::abs(unit_phase(phi)), WithinAbs(1.0, 1e-15));
    }
}

TEST_CASE("series evaluation is deterministic") {
    const auto a = f_q(6.0, 17.3, q_fig);
    const auto b = f_q(6.0, 17.3, q_fig);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.terms_used == b.terms_used);
    CHECK(a.tail_bound == b.tail_bound);
}
