#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/parallel.hpp"
#include "qcs/qkernel.hpp"
#include "qcs/scales.hpp"

// Revival-time hierarchy and autocorrelation time scans. The timescales are
// set by the derivatives of E_n = hbar omega [n]_q at the wave-packet center
// n_bar; the autocorrelation is |<J,0|J,omega t>|^2.

namespace qcs {

struct RevivalTimes {
    double t_cl;     // classical period, 2 pi hbar / |E'|
    double t_rev;    // revival time, 4 pi hbar / |E''|
    double t_suprev; // superrevival time, 12 pi hbar / |E'''|
    double n_bar;
};

// d^k E_n / dn^k at n = n_bar: hbar omega 2^k q^{2 n_bar} ln^k(q) / (q^2 - 1).
// At q = 1 the spectrum is linear: k = 1 gives hbar omega, higher orders
// vanish identically.
inline double energy_derivative(int order, double n_bar, const Deformation& d,
                                const PhysicalScales& scales) {
    if (order < 1) throw invalid_argument("derivative order must be >= 1");
    if (d.classical()) return order == 1 ? scales.hbar * scales.omega : 0.0;
    const double ln_q = std::log(d.q());
    return scales.hbar * scales.omega * std::pow(2.0, order) * std::pow(d.q_sq(), n_bar) *
           std::pow(ln_q, order) / (d.q_sq() - 1.0);
}

inline RevivalTimes revival_times(double action, const Deformation& d,
                                  const PhysicalScales& scales, const Truncation& t = {}) {
    if (d.classical())
        throw degenerate_deformation_error(
            "q = 1 has a linear spectrum: all revival periods degenerate");
    const double n_bar = mean_occupation(action, d, t);
    const double abs_ln_q = -std::log(d.q());
    const double base = (pi / scales.omega) * d.one_minus_q_sq() /
                        (std::pow(d.q_sq(), n_bar) * abs_ln_q);
    RevivalTimes r;
    r.t_cl = base;
    r.t_rev = base / abs_ln_q;
    r.t_suprev = 1.5 * base / (abs_ln_q * abs_ln_q);
    r.n_bar = n_bar;
    return r;
}

struct ScanRow {
    double t;
    std::vector<double> values;
};

// Ordered table of (t, values...) rows; column_names[0] is always "t".
struct ScanResult {
    std::vector<std::string> column_names;
    std::vector<ScanRow> rows;
};

// A(t) = <J,0|J,omega t>. For q < 1 this is evaluated through the identity
// exp(-i gamma [n]_q) = exp(-i gamma/(1-q^2)) exp(i gamma q^{2n}/(1-q^2)),
// one F_q series per point; the coefficient double-sum stays in the tests.
inline std::complex<double> autocorrelation(double action, double gamma, const Deformation& d,
                                            const Truncation& t, double norm_sq) {
    if (d.classical()) {
        const std::complex<double> i(0.0, 1.0);
        return std::exp(action * (std::exp(-i * gamma) - 1.0));
    }
    const double arg = gamma / d.one_minus_q_sq();
    return unit_phase(-arg) * f_q(action, arg, d, t).value / norm_sq;
}

// Uniform grid of (t, Re A, Im A, |A|^2) rows over [t_min, t_max]. threads = 0
// uses all hardware threads; row values do not depend on the thread count.
inline ScanResult autocorrelation_scan(double action, const Deformation& d,
                                       const PhysicalScales& scales, const Truncation& t,
                                       double t_min, double t_max, int steps, int threads = 0) {
    if (!(t_min < t_max)) throw invalid_argument("scan requires t_min < t_max");
    if (steps < 2) throw invalid_argument("scan requires steps >= 2");
    const double norm_sq = q_exponential(action, d, t).value.real();
    const double dt = (t_max - t_min) / (steps - 1);

    ScanResult scan;
    scan.column_names = {"t", "re", "im", "abs2"};
    scan.rows.resize(static_cast<std::size_t>(steps));
    parallel_for(
        steps,
        [&](int i) {
            const double time = t_min + i * dt;
            const auto a = autocorrelation(action, scales.omega * time, d, t, norm_sq);
            scan.rows[static_cast<std::size_t>(i)] = {time,
                                                      {a.real(), a.imag(), std::norm(a)}};
        },
        threads);
    return scan;
}

// Strict interior local maxima above the threshold, reported at grid points.
inline std::vector<std::pair<double, double>> find_peaks(const ScanResult& scan,
                                                         const std::string& column,
                                                         double threshold) {
    if (!(threshold > 0.0) || !(threshold <= 1.0))
        throw invalid_argument("peak threshold must lie in (0, 1]");
    int index = -1;
    for (std::size_t k = 1; k < scan.column_names.size(); ++k)
        if (scan.column_names[k] == column) index = static_cast<int>(k) - 1;
    if (index < 0) throw invalid_argument("unknown scan column '" + column + "'");

    std::vector<std::pair<double, double>> peaks;
    for (std::size_t i = 1; i + 1 < scan.rows.size(); ++i) {
        const double v = scan.rows[i].values[static_cast<std::size_t>(index)];
        if (v > threshold && v > scan.rows[i - 1].values[static_cast<std::size_t>(index)] &&
            v > scan.rows[i + 1].values[static_cast<std::size_t>(index)])
            peaks.emplace_back(scan.rows[i].t, v);
    }
    return peaks;
}

} // namespace qcs
