#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/qkernel.hpp"
#include "qcs/scales.hpp"

// Closed-form expectation values on |J,gamma>_q, the quadratures X and P,
// the generalized uncertainty relation and Ehrenfest's theorem. All formulas
// are assembled from E_q(J) and F_q(J, .); quantities that are real by
// symmetry are computed in complex arithmetic and checked before the real
// part is returned, so convention bugs fail loudly instead of silently.

namespace qcs {

namespace detail {

// F_q(J, arg) / E_q(J) with the state's own series policy.
inline std::complex<double> f_over_e(const CoherentState& s, double arg) {
    return f_q(s.action(), arg, s.deformation(), s.truncation()).value / s.normalization_sq();
}

inline double real_checked(std::complex<double> z, const char* label) {
    if (!(std::abs(z.imag()) <= 1e-12 * std::abs(z)) && z.imag() != 0.0)
        throw consistency_error(std::string(label) + " acquired an imaginary residue " +
                                std::to_string(z.imag()) + " beyond 1e-12 relative");
    return z.real();
}

} // namespace detail

// <A> = sqrt(J) F_q(J,-gamma)/E_q(J).
inline std::complex<double> expect_a(const CoherentState& s) {
    return std::sqrt(s.action()) * detail::f_over_e(s, -s.angle());
}

// <A^dag> = sqrt(J) F_q(J,gamma)/E_q(J) = conj(<A>).
inline std::complex<double> expect_a_dagger(const CoherentState& s) {
    return std::sqrt(s.action()) * detail::f_over_e(s, s.angle());
}

// The four quadratic expectation values. <A^dag A> and <A A^dag> are exact
// closed forms, J and 1 + q^2 J.
struct Bilinears {
    std::complex<double> adag_adag;
    std::complex<double> a_a;
    std::complex<double> adag_a;
    std::complex<double> a_adag;
};

inline Bilinears expect_bilinears(const CoherentState& s) {
    const double j = s.action();
    const double arg = s.angle() * (1.0 + s.deformation().q_sq());
    Bilinears b;
    b.adag_adag = j * detail::f_over_e(s, arg);
    b.a_a = j * detail::f_over_e(s, -arg);
    b.adag_a = j;
    b.a_adag = 1.0 + s.deformation().q_sq() * j;
    return b;
}

// The four cubic words entering Ehrenfest's theorem.
struct Trilinears {
    std::complex<double> adag_adag_a;
    std::complex<double> adag_a_adag;
    std::complex<double> adag_a_a;
    std::complex<double> a_adag_a;
};

inline Trilinears expect_trilinears(const CoherentState& s) {
    const double j = s.action();
    const double j32 = j * std::sqrt(j);
    const double q_sq = s.deformation().q_sq();
    const double g = s.angle();
    Trilinears tr;
    tr.adag_adag_a = j32 * detail::f_over_e(s, q_sq * g);
    tr.adag_a_adag = std::sqrt(j) * detail::f_over_e(s, g) + q_sq * tr.adag_adag_a;
    tr.adag_a_a = j32 * detail::f_over_e(s, -q_sq * g);
    tr.a_adag_a = std::sqrt(j) * detail::f_over_e(s, -g) + q_sq * tr.adag_a_a;
    return tr;
}

// <X> = alpha sqrt(J) [F_q(J,gamma) + F_q(J,-gamma)] / E_q(J).
inline double expect_x(const CoherentState& s, const PhysicalScales& scales) {
    const QuadratureCoeffs c(s.deformation(), scales);
    const auto sum = detail::f_over_e(s, s.angle()) + detail::f_over_e(s, -s.angle());
    return detail::real_checked(c.alpha * std::sqrt(s.action()) * sum, "<X>");
}

// <P> = i beta sqrt(J) [F_q(J,gamma) - F_q(J,-gamma)] / E_q(J).
inline double expect_p(const CoherentState& s, const PhysicalScales& scales) {
    const QuadratureCoeffs c(s.deformation(), scales);
    const auto diff = detail::f_over_e(s, s.angle()) - detail::f_over_e(s, -s.angle());
    const std::complex<double> i(0.0, 1.0);
    return detail::real_checked(i * c.beta * std::sqrt(s.action()) * diff, "<P>");
}

inline double expect_x2(const CoherentState& s, const PhysicalScales& scales) {
    const QuadratureCoeffs c(s.deformation(), scales);
    const double j = s.action();
    const double q_sq = s.deformation().q_sq();
    const double arg = s.angle() * (1.0 + q_sq);
    const auto sum = detail::f_over_e(s, arg) + detail::f_over_e(s, -arg);
    return detail::real_checked(c.alpha * c.alpha * (j * sum + 1.0 + j + q_sq * j), "<X^2>");
}

inline double expect_p2(const CoherentState& s, const PhysicalScales& scales) {
    const QuadratureCoeffs c(s.deformation(), scales);
    const double j = s.action();
    const double q_sq = s.deformation().q_sq();
    const double arg = s.angle() * (1.0 + q_sq);
    const auto sum = detail::f_over_e(s, arg) + detail::f_over_e(s, -arg);
    return detail::real_checked(-c.beta * c.beta * (j * sum - 1.0 - j - q_sq * j), "<P^2>");
}

// The amplitude functions of the uncertainty product:
//   gc = (2 sqrt(J)/E_q) sum J^n cos(gamma q^{2n})/[n]_q!
//   gs = (2 sqrt(J)/E_q) sum J^n sin(gamma q^{2n})/[n]_q!   (real convention)
//   gq = sqrt(J) gc(gamma (1 + q^2))
struct GFunctions {
    double gc;
    double gs;
    double gq;
};

inline GFunctions g_functions(const CoherentState& s) {
    const double j = s.action();
    const auto f1 = detail::f_over_e(s, s.angle());
    const auto f2 = detail::f_over_e(s, s.angle() * (1.0 + s.deformation().q_sq()));
    return {2.0 * std::sqrt(j) * f1.real(), 2.0 * std::sqrt(j) * f1.imag(), 2.0 * j * f2.real()};
}

// Everything the generalized uncertainty relation check produces.
struct UncertaintyReport {
    double dx;      // sqrt(<X^2> - <X>^2)
    double dp;      // sqrt(<P^2> - <P>^2)
    double product; // dx * dp
    double bound;   // (hbar/4)(1+q^2)[1 + (q^2-1) J], gamma-independent
    double ratio;   // product / bound; >= 1, = 1 at gamma = 0
    double gc;
    double gs;
    double gq;
};

// Variance route is the source of truth; the bracketed closed-form product
// is recomputed alongside and must agree to 1e-10 relative.
inline UncertaintyReport uncertainty(const CoherentState& s, const PhysicalScales& scales) {
    const QuadratureCoeffs c(s.deformation(), scales);
    const double j = s.action();
    const double q_sq = s.deformation().q_sq();

    const double x = expect_x(s, scales);
    const double p = expect_p(s, scales);
    const double dx_sq = expect_x2(s, scales) - x * x;
    const double dp_sq = expect_p2(s, scales) - p * p;
    const double variance_product = dx_sq * dp_sq;

    const auto [gc, gs, gq] = g_functions(s);
    const double common = 1.0 + (1.0 + q_sq) * j;
    const double closed_product =
        c.alpha * c.alpha * c.beta * c.beta * (common + gq - gc * gc) * (common - gq - gs * gs);

    const double rel = std::abs(closed_product - variance_product) /
                       std::max({std::abs(closed_product), std::abs(variance_product), 1e-300});
    if (!(rel <= 1e-10))
        throw consistency_error(
            "uncertainty product: closed form and variance route disagree by relative " +
            std::to_string(rel));

    UncertaintyReport r;
    r.dx = std::sqrt(dx_sq);
    r.dp = std::sqrt(dp_sq);
    r.product = r.dx * r.dp;
    r.bound = 0.25 * scales.hbar * (1.0 + q_sq) * (1.0 + (q_sq - 1.0) * j);
    r.ratio = r.product / r.bound;
    r.gc = gc;
    r.gs = gs;
    r.gq = gq;
    return r;
}

// (1/2) |<hbar + ((q^2-1)/(q^2+1)) (m omega X^2 + P^2/(m omega))>|, the right
// hand side of the uncertainty relation. Equals (hbar/4)(1+q^2)[1+(q^2-1)J]
// for every gamma.
inline double commutator_expectation(const CoherentState& s, const PhysicalScales& scales) {
    const double q_sq = s.deformation().q_sq();
    const double mo = scales.mass * scales.omega;
    const double quad = mo * expect_x2(s, scales) + expect_p2(s, scales) / mo;
    return 0.5 * std::abs(scales.hbar + (q_sq - 1.0) / (q_sq + 1.0) * quad);
}

enum class Quadrature { position, momentum };

struct EhrenfestResiduals {
    double closed;            // |E1 - E2| between the two closed forms
    double finite_difference; // |i hbar d<O>/dt (central diff) - E2|
    double scale;             // characteristic magnitude for relative checks
};

// Ehrenfest's theorem at t = gamma/omega: i hbar d<O>/dt = <[O, H]>. E1 is
// the derivative route through the gamma-derivative identity of F_q, E2 the
// commutator route through the trilinear expectation values. A step h <= 0
// selects the default 1e-4/omega.
inline EhrenfestResiduals ehrenfest_residual(const CoherentState& s, const PhysicalScales& scales,
                                             Quadrature which, double h = 0.0) {
    if (h <= 0.0) h = 1e-4 / scales.omega;
    const QuadratureCoeffs qc(s.deformation(), scales);
    const double j = s.action();
    const double g = s.angle();
    const double q_sq = s.deformation().q_sq();
    const auto& d = s.deformation();
    const auto& t = s.truncation();
    const double e = s.normalization_sq();
    const std::complex<double> i(0.0, 1.0);

    const auto f = [&](double arg_j, double arg_g) { return f_q(arg_j, arg_g, d, t).value / e; };

    std::complex<double> e1, e2, fd_derivative;
    double coeff;
    if (which == Quadrature::position) {
        coeff = qc.alpha;
        e1 = -scales.omega * scales.hbar * coeff * std::sqrt(j) *
             (f(q_sq * j, g) - f(q_sq * j, -g));
        e2 = -scales.omega * scales.hbar * coeff * std::sqrt(j) *
             ((f(j, g) - f(j, -g)) + j * (q_sq - 1.0) * (f(j, q_sq * g) - f(j, -q_sq * g)));
        const double plus = expect_x(s.evolve(h, scales.omega), scales);
        const double minus = expect_x(s.evolve(-h, scales.omega), scales);
        fd_derivative = i * scales.hbar * (plus - minus) / (2.0 * h);
    } else {
        coeff = qc.beta;
        e1 = -i * scales.omega * scales.hbar * coeff * std::sqrt(j) *
             (f(q_sq * j, g) + f(q_sq * j, -g));
        e2 = -i * scales.omega * scales.hbar * coeff * std::sqrt(j) *
             ((f(j, g) + f(j, -g)) + j * (q_sq - 1.0) * (f(j, q_sq * g) + f(j, -q_sq * g)));
        const double plus = expect_p(s.evolve(h, scales.omega), scales);
        const double minus = expect_p(s.evolve(-h, scales.omega), scales);
        fd_derivative = i * scales.hbar * (plus - minus) / (2.0 * h);
    }

    EhrenfestResiduals r;
    r.closed = std::abs(e1 - e2);
    r.finite_difference = std::abs(fd_derivative - e2);
    r.scale = 2.0 * scales.omega * scales.hbar * coeff * std::sqrt(std::max(j, 1.0));
    return r;
}

} // namespace qcs
