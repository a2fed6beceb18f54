#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcs/coherent.hpp"
#include "qcs/fockoracle.hpp"
#include "qcs/io.hpp"
#include "qcs/observables.hpp"
#include "qcs/qkernel.hpp"
#include "qcs/revival.hpp"
#include "qcs/scales.hpp"

// The invariant suite behind the `verify` command: every module property,
// evaluated on the standard (q, J, gamma) grid, as a named pass/fail check.

namespace qcs {

struct Check {
    std::string name;
    std::function<std::string()> run; // empty result = pass, else failure detail
};

struct CheckOutcome {
    std::string name;
    bool passed;
    std::string detail;
};

// Runs every check, prints one line per check plus a summary, returns 0 iff
// all passed. A check that throws counts as failed with the exception text.
inline int run_checks(const std::vector<Check>& checks, std::ostream& out) {
    int failed = 0;
    for (const auto& check : checks) {
        CheckOutcome outcome{check.name, true, {}};
        try {
            outcome.detail = check.run();
            outcome.passed = outcome.detail.empty();
        } catch (const std::exception& ex) {
            outcome.passed = false;
            outcome.detail = ex.what();
        }
        if (!outcome.passed) ++failed;
        out << (outcome.passed ? "[PASS] " : "[FAIL] ") << outcome.name;
        if (!outcome.passed) out << "  " << outcome.detail;
        out << '\n';
    }
    out << checks.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

struct GridPoint {
    Deformation d;
    double action;
};

// q in {0.5, 0.8, 0.95, e^-0.005} crossed with J in {0.1, 1, 6, 0.45 radius},
// keeping only points inside the series convergence guard.
inline std::vector<GridPoint> standard_grid() {
    std::vector<GridPoint> grid;
    for (const double q : {0.5, 0.8, 0.95, std::exp(-0.005)}) {
        const Deformation d(q);
        for (const double j : {0.1, 1.0, 6.0, 0.45 * d.radius()}) {
            if (j < convergence_guard * d.radius()) grid.push_back({d, j});
        }
    }
    return grid;
}

inline std::vector<double> gamma_grid(int points = 64) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] = 4.0 * pi * i / (points - 1);
    return grid;
}

namespace detail {

inline double rel_diff(std::complex<double> a, std::complex<double> b, double floor = 1.0) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline std::string describe(const Deformation& d, double j, double gamma) {
    return "(q=" + format_number(d.q(), 10) + ", J=" + format_number(j, 10) +
           ", gamma=" + format_number(gamma, 10) + ")";
}

// Long-double reference sums for the tail-bound soundness check. These stay
// independent of the series engine: plain term recurrences, no certified
// stopping, fixed term counts.
inline long double q_integer_ld(int n, long double q_sq) {
    if (q_sq == 1.0L) return static_cast<long double>(n);
    return (1.0L - std::pow(q_sq, static_cast<long double>(n))) / (1.0L - q_sq);
}

// Sum of terms n in [from, to). Tail measurements pass from = terms_used so
// the rounding noise scales with the tail itself, not with the full sum;
// certified bounds are nearly tight at small actions.
inline std::complex<long double> f_q_reference(double action, double gamma, const Deformation& d,
                                               int from, int to) {
    const long double q_sq = static_cast<long double>(d.q()) * static_cast<long double>(d.q());
    std::complex<long double> sum = 0.0L;
    long double weight = 1.0L;
    long double qpow = 1.0L;
    for (int n = 0; n < to; ++n) {
        if (n >= from) {
            const long double phase = std::remainder(static_cast<long double>(gamma) * qpow,
                                                     2.0L * 3.14159265358979323846L);
            sum += weight * std::complex<long double>(std::cos(phase), std::sin(phase));
        }
        weight *= static_cast<long double>(action) / q_integer_ld(n + 1, q_sq);
        qpow *= q_sq;
    }
    return sum;
}

} // namespace detail

// The full cross-module invariant suite. Heavier sweeps (finer gamma grids,
// larger oracle dimensions) live in the acceptance tests; this set is sized
// to run in a few seconds.
inline std::vector<Check> standard_checks(const Truncation& trunc = {}) {
    using std::abs;
    std::vector<Check> checks;
    const auto grid = standard_grid();
    const auto gammas = gamma_grid();
    const PhysicalScales scales;

    checks.push_back({"qkernel/q-integer-recursion", [grid] {
        for (const auto& p : grid)
            for (int n = 0; n < 64; ++n) {
                const double lhs = q_integer(n + 1, p.d);
                const double rhs = 1.0 + p.d.q_sq() * q_integer(n, p.d);
                if (!(abs(lhs - rhs) <= 1e-12 * std::max(1.0, lhs)))
                    return "[n+1]_q != 1 + q^2 [n]_q at n=" + std::to_string(n) +
                           ", q=" + format_number(p.d.q(), 10);
            }
        return std::string{};
    }});

    checks.push_back({"qkernel/q-integer-monotone-limit", [grid] {
        for (const auto& p : grid) {
            if (p.d.classical()) continue;
            // [n]_q saturates to exactly radius() in double precision once
            // q^{2n} falls below one ulp, so monotonicity is non-strict.
            double prev = q_integer(0, p.d);
            for (int n = 1; n <= 256; ++n) {
                const double cur = q_integer(n, p.d);
                if (!(cur >= prev)) return "[n]_q decreases at n=" + std::to_string(n);
                if (!(cur <= p.d.radius()))
                    return "[n]_q exceeds the radius at n=" + std::to_string(n);
                prev = cur;
            }
            const int far =
                static_cast<int>(std::ceil(std::log(1e-10) / std::log(p.d.q_sq()))) + 1;
            const double gap = p.d.radius() - q_integer(far, p.d);
            if (!(gap >= 0.0 && gap <= 1e-9 * p.d.radius()))
                return "[n]_q does not approach the radius by n=" + std::to_string(far);
        }
        return std::string{};
    }});

    checks.push_back({"qkernel/identity-ID1-gamma-derivative", [grid, trunc] {
        const double h = 1e-4;
        const std::complex<double> i(0.0, 1.0);
        for (const auto& p : grid) {
            if (p.d.classical()) continue;
            for (const double g : {0.5, 2.0}) {
                const double e = q_exponential(p.action, p.d, trunc).value.real();
                const auto fd = -i *
                                (f_q(p.action, g + h, p.d, trunc).value -
                                 f_q(p.action, g - h, p.d, trunc).value) /
                                (2.0 * h);
                const auto rhs = f_q(p.d.q_sq() * p.action, g, p.d, trunc).value;
                if (!(abs(fd - rhs) / e <= h * h + 1e-9))
                    return "-i dF/dgamma != F(q^2 J, gamma) at " + detail::describe(p.d, p.action, g);
            }
        }
        return std::string{};
    }});

    checks.push_back({"qkernel/identity-ID2-jackson", [grid, trunc] {
        for (const auto& p : grid) {
            if (p.d.classical() || p.action == 0.0) continue;
            for (const double g : {0.5, 2.0}) {
                const double e = q_exponential(p.action, p.d, trunc).value.real();
                const auto lhs = jackson_derivative(
                    [&](double j) { return f_q(j, g, p.d, trunc).value; }, p.action, p.d);
                const auto rhs = f_q(p.action, p.d.q_sq() * g, p.d, trunc).value;
                const double budget =
                    100.0 * (2.0 * trunc.tol / (p.action * p.d.one_minus_q_sq()) + trunc.tol);
                if (!(abs(lhs - rhs) / e <= budget / e + 1e-10))
                    return "D_q F != F(J, q^2 gamma) at " + detail::describe(p.d, p.action, g);
            }
        }
        return std::string{};
    }});

    checks.push_back({"qkernel/jackson-fixes-q-exponential", [grid, trunc] {
        for (const auto& p : grid) {
            if (p.d.classical() || p.action == 0.0) continue;
            const auto dq = jackson_derivative(
                [&](double j) { return q_exponential(j, p.d, trunc).value; }, p.action, p.d);
            const double e = q_exponential(p.action, p.d, trunc).value.real();
            if (!(abs(dq - e) / e <= 1e-9))
                return "D_q E_q != E_q at " + detail::describe(p.d, p.action, 0.0);
        }
        return std::string{};
    }});

    checks.push_back({"qkernel/tail-bound-soundness", [grid, trunc] {
        for (const auto& p : grid) {
            for (const double g : {0.0, 1.7}) {
                const auto reported = f_q(p.action, g, p.d, trunc);
                const auto partial =
                    detail::f_q_reference(p.action, g, p.d, 0, reported.terms_used);
                const auto discarded = detail::f_q_reference(p.action, g, p.d,
                                                             reported.terms_used, 4 * trunc.n_max);
                const double actual_tail = static_cast<double>(std::abs(discarded));
                if (!(actual_tail <= reported.tail_bound))
                    return "actual tail " + format_number(actual_tail, 6) + " exceeds bound " +
                           format_number(reported.tail_bound, 6) + " at " +
                           detail::describe(p.d, p.action, g);
                const double rounding = 8.0 * reported.terms_used *
                                        std::numeric_limits<double>::epsilon() *
                                        std::abs(reported.value);
                if (!(abs(reported.value - std::complex<double>(partial)) <=
                      reported.tail_bound + rounding))
                    return "reported value drifts from the reference partial sum at " +
                           detail::describe(p.d, p.action, g);
            }
        }
        return std::string{};
    }});

    checks.push_back({"coherent/normalization", [grid, trunc] {
        for (const auto& p : grid) {
            const CoherentState s(p.action, 0.8, p.d, trunc);
            if (!(abs(s.norm_check() - 1.0) <= 1e-12))
                return "norm_check deviates from 1 at " + detail::describe(p.d, p.action, 0.8);
        }
        const CoherentState classical(4.0, 0.3, Deformation(1.0), trunc);
        if (!(abs(classical.norm_check() - 1.0) <= 1e-12))
            return std::string("norm_check deviates from 1 at q=1, J=4");
        return std::string{};
    }});

    checks.push_back({"coherent/temporal-stability", [grid, trunc, scales] {
        for (const auto& p : grid) {
            const CoherentState s(p.action, 1.1, p.d, trunc);
            const auto evolved = s.evolve(2.5, scales.omega);
            for (int n = 0; n < std::min(s.levels(), 24); ++n) {
                const auto expected =
                    s.coefficient(n) * unit_phase(-scales.omega * 2.5 * q_integer(n, p.d));
                if (!(abs(evolved.coefficient(n) - expected) <= 1e-12))
                    return "evolved coefficient differs from phase shift at n=" +
                           std::to_string(n) + ", " + detail::describe(p.d, p.action, 1.1);
            }
        }
        return std::string{};
    }});

    checks.push_back({"coherent/coefficient-moduli-gamma-invariant", [grid, trunc] {
        for (const auto& p : grid) {
            const CoherentState a(p.action, 0.0, p.d, trunc);
            const CoherentState b(p.action, 5.3, p.d, trunc);
            for (int n = 0; n < std::min(a.levels(), 24); ++n)
                if (!(abs(abs(a.coefficient(n)) - abs(b.coefficient(n))) <= 1e-14))
                    return "|c_n| depends on gamma at n=" + std::to_string(n) + ", " +
                           detail::describe(p.d, p.action, 5.3);
        }
        return std::string{};
    }});

    checks.push_back({"coherent/overlap-conjugate-symmetry", [grid, trunc] {
        for (const auto& p : grid) {
            const CoherentState a(p.action, 0.4, p.d, trunc);
            const CoherentState b(p.action, 2.9, p.d, trunc);
            if (!(abs(overlap(a, b) - std::conj(overlap(b, a))) <= 1e-12))
                return "overlap(a,b) != conj(overlap(b,a)) at " +
                       detail::describe(p.d, p.action, 2.9);
        }
        return std::string{};
    }});

    checks.push_back({"coherent/action-angle-identity", [grid, trunc, gammas, scales] {
        for (const auto& p : grid)
            for (const double g : {gammas[3], gammas[40]}) {
                const CoherentState s(p.action, g, p.d, trunc);
                const double energy = energy_expectation(s, scales);
                if (!(abs(energy / (scales.hbar * scales.omega) - p.action) <=
                      1e-10 * std::max(1.0, p.action)))
                    return "<H>/(hbar omega) != J at " + detail::describe(p.d, p.action, g);
            }
        return std::string{};
    }});

    checks.push_back({"observables/saturation-at-gamma-zero", [grid, trunc, scales] {
        for (const auto& p : grid) {
            const auto report = uncertainty(CoherentState(p.action, 0.0, p.d, trunc), scales);
            if (!(abs(report.ratio - 1.0) <= 1e-9))
                return "uncertainty not saturated at gamma=0, " +
                       detail::describe(p.d, p.action, 0.0);
        }
        return std::string{};
    }});

    checks.push_back({"observables/uncertainty-inequality", [grid, trunc, gammas, scales] {
        for (const auto& p : grid)
            for (const double g : gammas) {
                const auto report = uncertainty(CoherentState(p.action, g, p.d, trunc), scales);
                if (!(report.ratio >= 1.0 - 1e-9))
                    return "uncertainty ratio " + format_number(report.ratio, 12) + " < 1 at " +
                           detail::describe(p.d, p.action, g);
            }
        return std::string{};
    }});

    checks.push_back({"observables/closed-form-vs-variance-product", [grid, trunc, gammas,
                                                                      scales] {
        for (const auto& p : grid)
            for (const double g : gammas) {
                const CoherentState s(p.action, g, p.d, trunc);
                const QuadratureCoeffs c(p.d, scales);
                const double x = expect_x(s, scales);
                const double px = expect_p(s, scales);
                const double variance_product = (expect_x2(s, scales) - x * x) *
                                                (expect_p2(s, scales) - px * px);
                const auto [gc, gs, gq] = g_functions(s);
                const double common = 1.0 + (1.0 + p.d.q_sq()) * p.action;
                const double closed = c.alpha * c.alpha * c.beta * c.beta *
                                      (common + gq - gc * gc) * (common - gq - gs * gs);
                if (!(detail::rel_diff(closed, variance_product,
                                       1e-6 * c.alpha * c.alpha * c.beta * c.beta) <= 1e-10))
                    return "closed-form product disagrees with variances at " +
                           detail::describe(p.d, p.action, g);
            }
        return std::string{};
    }});

    checks.push_back({"observables/oracle-equivalence", [grid, trunc] {
        const auto words = std::vector<std::pair<std::string, std::vector<Ladder>>>{
            {"<A>", {Ladder::lower}},
            {"<A+>", {Ladder::raise}},
            {"<A+A+>", {Ladder::raise, Ladder::raise}},
            {"<AA>", {Ladder::lower, Ladder::lower}},
            {"<A+A>", {Ladder::raise, Ladder::lower}},
            {"<AA+>", {Ladder::lower, Ladder::raise}},
            {"<A+A+A>", {Ladder::raise, Ladder::raise, Ladder::lower}},
            {"<A+AA+>", {Ladder::raise, Ladder::lower, Ladder::raise}},
            {"<A+AA>", {Ladder::raise, Ladder::lower, Ladder::lower}},
            {"<AA+A>", {Ladder::lower, Ladder::raise, Ladder::lower}},
        };
        for (const auto& p : grid)
            for (const double g : {0.3, 1.1, 2.7}) {
                const CoherentState s(p.action, g, p.d, trunc);
                const auto bi = expect_bilinears(s);
                const auto tri = expect_trilinears(s);
                const std::complex<double> closed[] = {
                    expect_a(s),   expect_a_dagger(s), bi.adag_adag,   bi.a_a,       bi.adag_a,
                    bi.a_adag,     tri.adag_adag_a,    tri.adag_a_adag, tri.adag_a_a, tri.a_adag_a};
                for (std::size_t w = 0; w < words.size(); ++w) {
                    const auto oracle = oracle_expectation(s, std::span<const Ladder>(words[w].second));
                    if (!(detail::rel_diff(closed[w], oracle) <= 1e-10))
                        return words[w].first + " disagrees with the Fock oracle at " +
                               detail::describe(p.d, p.action, g);
                }
            }
        return std::string{};
    }});

    checks.push_back({"observables/commutator-gamma-constant", [grid, trunc, gammas, scales] {
        for (const auto& p : grid) {
            const double at_zero =
                commutator_expectation(CoherentState(p.action, 0.0, p.d, trunc), scales);
            for (const double g : gammas) {
                const double at_g =
                    commutator_expectation(CoherentState(p.action, g, p.d, trunc), scales);
                if (!(abs(at_g - at_zero) <= 1e-12 * std::max(1.0, at_zero)))
                    return "commutator bound varies with gamma at " +
                           detail::describe(p.d, p.action, g);
            }
        }
        return std::string{};
    }});

    checks.push_back({"observables/ehrenfest-closed-residual", [grid, trunc, scales] {
        for (const auto& p : grid)
            for (const double g : {0.7, 2.3})
                for (const auto which : {Quadrature::position, Quadrature::momentum}) {
                    const CoherentState s(p.action, g, p.d, trunc);
                    const auto r = ehrenfest_residual(s, scales, which);
                    if (!(r.closed <= 1e-10 * r.scale))
                        return "E1 and E2 closed forms disagree at " +
                               detail::describe(p.d, p.action, g);
                }
        return std::string{};
    }});

    checks.push_back({"observables/ehrenfest-fd-order", [trunc, scales] {
        for (const auto& [q, j, g] :
             {std::tuple{0.9, 2.0, 0.7}, std::tuple{std::exp(-0.005), 6.0, 1.3}}) {
            const CoherentState s(j, g, Deformation(q), trunc);
            for (const auto which : {Quadrature::position, Quadrature::momentum}) {
                const double coarse = ehrenfest_residual(s, scales, which, 2e-3).finite_difference;
                const double fine = ehrenfest_residual(s, scales, which, 1e-3).finite_difference;
                const double order = std::log2(coarse / fine);
                if (!(order >= 1.8 && order <= 2.2))
                    return "finite-difference order " + format_number(order, 4) +
                           " outside 2.0 +- 0.2 at q=" + format_number(q, 10);
            }
        }
        return std::string{};
    }});

    checks.push_back({"observables/g-function-bounds", [grid, trunc, gammas] {
        for (const auto& p : grid)
            for (const double g : gammas) {
                const CoherentState s(p.action, g, p.d, trunc);
                const auto [gc, gs, gq] = g_functions(s);
                if (!(abs(gq) <= 2.0 * p.action + 1e-12))
                    return "|gq| > 2J at " + detail::describe(p.d, p.action, g);
                if (!(gc * gc + gs * gs <= 4.0 * p.action + 1e-12))
                    return "gc^2 + gs^2 > 4J at " + detail::describe(p.d, p.action, g);
                const auto f = f_q(p.action, g, p.d, trunc).value / s.normalization_sq();
                if (!(abs(gc * gc + gs * gs - 4.0 * p.action * std::norm(f)) <=
                      1e-10 * std::max(1.0, 4.0 * p.action)))
                    return "gc^2 + gs^2 != 4J |F|^2/E^2 at " + detail::describe(p.d, p.action, g);
            }
        return std::string{};
    }});

    checks.push_back({"revival/time-ratio-identities", [trunc, scales] {
        for (const double q : {0.5, 0.8, 0.95, std::exp(-0.005)}) {
            const Deformation d(q);
            const auto times = revival_times(1.0, d, scales, trunc);
            const double abs_ln_q = -std::log(q);
            if (!(abs(times.t_rev / times.t_cl * abs_ln_q - 1.0) <= 1e-12))
                return "t_rev/t_cl != 1/|ln q| at q=" + format_number(q, 10);
            if (!(abs(times.t_suprev / times.t_rev * abs_ln_q / 1.5 - 1.0) <= 1e-12))
                return "t_suprev/t_rev != 3/(2|ln q|) at q=" + format_number(q, 10);
        }
        return std::string{};
    }});

    checks.push_back({"revival/autocorrelation-modulus-identity", [grid, trunc, scales] {
        for (const auto& p : grid) {
            if (p.d.classical()) continue;
            const CoherentState at_zero(p.action, 0.0, p.d, trunc);
            for (const double time : {0.4, 3.9, 17.0}) {
                const double gamma = scales.omega * time;
                const auto direct = overlap(at_zero, at_zero.evolve(time, scales.omega));
                const double e = at_zero.normalization_sq();
                const double via_f =
                    abs(f_q(p.action, gamma / p.d.one_minus_q_sq(), p.d, trunc).value) / e;
                if (!(abs(abs(direct) - via_f) <= 1e-10))
                    return "|overlap| != |F_q(J, gamma/(1-q^2))|/E_q at " +
                           detail::describe(p.d, p.action, gamma);
            }
        }
        return std::string{};
    }});

    checks.push_back({"revival/autocorrelation-bounded", [trunc, scales] {
        const auto scan = autocorrelation_scan(6.0, Deformation::from_tau(0.005), scales, trunc,
                                               0.0, 20.0, 400);
        for (const auto& row : scan.rows)
            if (!(row.values[2] >= 0.0 && row.values[2] <= 1.0 + 1e-10))
                return "|A|^2 outside [0, 1] at t=" + format_number(row.t, 10);
        if (!(abs(scan.rows.front().values[2] - 1.0) <= 1e-12))
            return std::string("|A(0)|^2 != 1");
        return std::string{};
    }});

    checks.push_back({"revival/classical-limit-autocorrelation", [trunc, scales] {
        const double j = 3.0;
        const auto scan =
            autocorrelation_scan(j, Deformation(1.0), scales, trunc, 0.0, 4.0 * pi, 257);
        for (const auto& row : scan.rows) {
            const double expected = std::exp(2.0 * j * (std::cos(scales.omega * row.t) - 1.0));
            if (!(abs(row.values[2] - expected) <= 1e-10))
                return "q=1 autocorrelation differs from exp(2J(cos wt - 1)) at t=" +
                       format_number(row.t, 10);
        }
        return std::string{};
    }});

    checks.push_back({"observables/classical-limit-saturation", [trunc, gammas, scales] {
        for (const double j : {0.5, 4.0})
            for (const double g : gammas) {
                const auto report = uncertainty(CoherentState(j, g, Deformation(1.0), trunc), scales);
                if (!(abs(report.ratio - 1.0) <= 1e-10))
                    return "q=1 state does not saturate hbar/2 at J=" + format_number(j, 10) +
                           ", gamma=" + format_number(g, 10);
                if (!(abs(report.bound - 0.5 * scales.hbar) <= 1e-12))
                    return std::string("q=1 bound != hbar/2");
            }
        return std::string{};
    }});

    return checks;
}

} // namespace qcs
