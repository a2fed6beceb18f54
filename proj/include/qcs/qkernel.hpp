#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include "qcs/errors.hpp"

// q-arithmetic and convergent series evaluation: q-integers, q-factorials,
// the q-exponential E_q, the two-parameter series F_q and the Jackson
// derivative. Everything here is a pure function over immutable values.

namespace qcs {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

// Fraction of the convergence radius beyond which series arguments are
// rejected. Near the radius the certified tail bound degrades to useless
// term counts, so the region is treated as out of domain.
inline constexpr double convergence_guard = 0.99;

// Reduce a trigonometric argument to [-pi, pi] before sin/cos. Phases reach
// ~1e7 at superrevival timescales; the representation error |phi|*eps of the
// incoming argument (~1e-9 at that scale) is the accepted precision budget.
inline double reduce_phase(double phi) { return std::remainder(phi, two_pi); }

// exp(i*phi) with range reduction.
inline std::complex<double> unit_phase(double phi) {
    const double r = reduce_phase(phi);
    return {std::cos(r), std::sin(r)};
}

// Deformation parameter q in (0, 1] with its derived constants. q = 1 is the
// undeformed oscillator; for q < 1 the q-exponential series have finite
// convergence radius 1/(1-q^2).
class Deformation {
  public:
    explicit Deformation(double q) : q_(q) {
        if (!(q > 0.0) || !(q <= 1.0) || !std::isfinite(q))
            throw invalid_argument("deformation parameter must satisfy 0 < q <= 1, got q = " +
                                   std::to_string(q));
        q_sq_ = q_ * q_;
        one_minus_q_sq_ = 1.0 - q_sq_;
        radius_ = classical() ? std::numeric_limits<double>::infinity() : 1.0 / one_minus_q_sq_;
    }

    // q = exp(-tau), the parameterization used for near-classical deformations.
    static Deformation from_tau(double tau) {
        if (!(tau >= 0.0) || !std::isfinite(tau))
            throw invalid_argument("tau must be finite and >= 0, got tau = " + std::to_string(tau));
        return Deformation(std::exp(-tau));
    }

    double q() const { return q_; }
    double q_sq() const { return q_sq_; }
    double one_minus_q_sq() const { return one_minus_q_sq_; }
    double radius() const { return radius_; }
    bool classical() const { return q_ == 1.0; }

    friend bool operator==(const Deformation& a, const Deformation& b) { return a.q_ == b.q_; }

  private:
    double q_;
    double q_sq_;
    double one_minus_q_sq_;
    double radius_;
};

// Series evaluation policy: absolute tail tolerance and hard term cap.
struct Truncation {
    double tol = 1e-14;
    int n_max = 512;

    Truncation() = default;
    Truncation(double tol_, int n_max_) : tol(tol_), n_max(n_max_) {
        if (!(tol > 0.0) || !std::isfinite(tol))
            throw invalid_argument("truncation tolerance must be positive");
        if (n_max < 1) throw invalid_argument("truncation term cap must be >= 1");
    }
};

// A summed series value together with the number of terms used and the
// certified bound on the discarded tail.
struct SeriesValue {
    std::complex<double> value;
    int terms_used = 0;
    double tail_bound = 0.0;
};

// [n]_q = (1 - q^{2n})/(1 - q^2); the q = 1 branch returns n exactly.
inline double q_integer(int n, const Deformation& d) {
    if (n < 0) throw invalid_argument("q_integer requires n >= 0");
    if (d.classical()) return static_cast<double>(n);
    return (1.0 - std::pow(d.q_sq(), n)) / d.one_minus_q_sq();
}

// [n]_q! = prod_{k=1..n} [k]_q, with [0]_q! = 1.
inline double q_factorial(int n, const Deformation& d) {
    if (n < 0) throw invalid_argument("q_factorial requires n >= 0");
    double acc = 1.0;
    for (int k = 1; k <= n; ++k) {
        acc *= q_integer(k, d);
        if (!std::isfinite(acc))
            throw std::range_error("q_factorial overflow at n = " + std::to_string(k));
    }
    return acc;
}

namespace detail {

inline void check_series_domain(double J, const Deformation& d) {
    if (!(J >= 0.0) || !std::isfinite(J))
        throw invalid_argument("series argument must satisfy J >= 0, got J = " + std::to_string(J));
    if (!d.classical() && J >= convergence_guard * d.radius())
        throw divergence_error("J = " + std::to_string(J) + " is at or beyond " +
                               std::to_string(convergence_guard) + " of the convergence radius " +
                               std::to_string(d.radius()));
}

// Sums sum_n w_n * phase(n) where w_n = J^n/[n]_q! and |phase(n)| <= 1.
// Once the term ratio r_n = J/[n+1]_q drops below 1 the ratios keep
// decreasing, so the tail is bounded by w_n * r_n / (1 - r_n); summation
// stops when that bound reaches tol.
template <typename PhaseFn>
SeriesValue sum_q_power_series(double J, const Deformation& d, const Truncation& t,
                               PhaseFn&& phase) {
    check_series_domain(J, d);
    std::complex<double> sum = 0.0;
    double weight = 1.0; // w_0
    for (int n = 0;; ++n) {
        sum += weight * phase(n);
        const double ratio = J / q_integer(n + 1, d);
        const double next = weight * ratio;
        if (ratio < 1.0) {
            const double tail = next / (1.0 - ratio);
            if (tail <= t.tol) return {sum, n + 1, tail};
        }
        if (n + 1 >= t.n_max)
            throw convergence_error("series did not reach tol = " + std::to_string(t.tol) +
                                    " within " + std::to_string(t.n_max) + " terms (J = " +
                                    std::to_string(J) + ", q = " + std::to_string(d.q()) + ")");
        weight = next;
    }
}

} // namespace detail

// E_q(J) = sum_n J^n/[n]_q!; the coherent-state normalization squared. For
// q = 1 this is exp(J) through the limit branch of [n]_q.
inline SeriesValue q_exponential(double J, const Deformation& d, const Truncation& t = {}) {
    return detail::sum_q_power_series(J, d, t, [](int) { return 1.0; });
}

// F_q(J, gamma) = sum_n J^n exp(i gamma q^{2n})/[n]_q!. Reduces to E_q at
// gamma = 0 and satisfies F_q(J, -gamma) = conj(F_q(J, gamma)).
inline SeriesValue f_q(double J, double gamma, const Deformation& d, const Truncation& t = {}) {
    const double q_sq = d.q_sq();
    double qpow = 1.0; // q^{2n}
    return detail::sum_q_power_series(J, d, t, [&](int) {
        const auto ph = unit_phase(gamma * qpow);
        qpow *= q_sq;
        return ph;
    });
}

// dE_q/dJ = sum_{n>=1} n J^{n-1}/[n]_q!, summed termwise with the same
// certified-tail scheme (term ratio ((n+1)/n) * J/[n+1]_q is decreasing).
inline SeriesValue q_exponential_derivative(double J, const Deformation& d,
                                            const Truncation& t = {}) {
    detail::check_series_domain(J, d);
    std::complex<double> sum = 0.0;
    double term = 1.0 / q_integer(1, d); // u_1 = 1/[1]_q!
    for (int n = 1;; ++n) {
        sum += term;
        const double ratio = (static_cast<double>(n + 1) / n) * (J / q_integer(n + 1, d));
        const double next = term * ratio;
        if (ratio < 1.0) {
            const double tail = next / (1.0 - ratio);
            if (tail <= t.tol) return {sum, n, tail};
        }
        if (n >= t.n_max)
            throw convergence_error("derivative series did not converge within " +
                                    std::to_string(t.n_max) + " terms (J = " + std::to_string(J) +
                                    ", q = " + std::to_string(d.q()) + ")");
        term = next;
    }
}

// How to treat the degenerate points of the Jackson difference quotient.
enum class JacksonPolicy {
    reject,         // q = 1 or J = 0 raises degenerate_deformation_error
    ordinary_limit, // fall back to the central-difference ordinary derivative
};

// Jackson derivative D_q f(J) = [f(J) - f(q^2 J)] / [J (1 - q^2)]. Reduces to
// the ordinary derivative as q -> 1 or J -> 0; that limit is only taken when
// explicitly requested.
template <typename Fn>
std::complex<double> jackson_derivative(Fn&& f, double J, const Deformation& d,
                                        JacksonPolicy policy = JacksonPolicy::reject) {
    if (d.classical() || J == 0.0) {
        if (policy == JacksonPolicy::reject)
            throw degenerate_deformation_error(
                "Jackson derivative is undefined at q = 1 / J = 0; request the "
                "ordinary-derivative limit explicitly");
        const double h = 1e-6 * std::max(1.0, std::abs(J));
        // One-sided second-order stencil at the edge so f is never probed at
        // negative action.
        if (J - h < 0.0)
            return (4.0 * f(J + h) - 3.0 * f(J) - f(J + 2.0 * h)) / (2.0 * h);
        return (f(J + h) - f(J - h)) / (2.0 * h);
    }
    return (f(J) - f(d.q_sq() * J)) / (J * d.one_minus_q_sq());
}

} // namespace qcs
