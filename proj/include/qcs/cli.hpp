#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/io.hpp"
#include "qcs/observables.hpp"
#include "qcs/qkernel.hpp"
#include "qcs/revival.hpp"
#include "qcs/scales.hpp"
#include "qcs/svg.hpp"
#include "qcs/verify.hpp"

// Library side of the command-line tool. Each command takes a validated
// RunConfig, writes to streams or paths, and returns a process exit code:
// 0 success, 1 invariant failure, 2 invalid config, 3 numerical error.

namespace qcs {

struct RunConfig {
    std::optional<double> q;
    std::optional<double> tau;
    double action = 6.0;
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;
    double tol = 1e-14;
    int n_max = 512;
    double t_min = 0.0;
    std::optional<double> t_max;
    int steps = 1201;
    double gamma = 0.0;
    std::string out_path;    // empty: write to the provided stream
    std::string svg_path;    // plot target; optional for scan commands
    std::string csv_path;    // plot input
    std::string column = "abs2";

    // Defaults mirror the headline configuration: tau = 0.005 when neither
    // q nor tau is given.
    Deformation deformation() const {
        if (q && tau) throw invalid_argument("give exactly one of q and tau, not both");
        if (q) return Deformation(*q);
        return Deformation::from_tau(tau.value_or(0.005));
    }

    PhysicalScales physical_scales() const { return PhysicalScales(hbar, mass, omega); }

    Truncation truncation() const { return Truncation(tol, n_max); }

    // Scan horizon: three classical periods by default, two oscillator
    // periods in the undeformed limit where no revival structure exists.
    double resolved_t_max(const Deformation& d, const PhysicalScales& scales,
                          const Truncation& trunc) const {
        if (t_max) return *t_max;
        if (d.classical()) return 2.0 * two_pi / scales.omega;
        return 3.0 * revival_times(action, d, scales, trunc).t_cl;
    }
};

namespace cli {

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw invalid_argument("cannot open '" + path + "' for writing");
    file << content;
    if (!file) throw invalid_argument("write to '" + path + "' failed");
}

// Commands assemble their complete output first, so a failure mid-computation
// never leaves a partial file behind.
inline void emit(const std::string& path, const std::string& content, std::ostream& fallback) {
    if (path.empty())
        fallback << content;
    else
        write_file(path, content);
}

inline std::string key_value(const std::string& key, double value) {
    return key + " = " + format_number(value + 0.0, 10) + "\n";
}

inline std::string key_value(const std::string& key, std::complex<double> value) {
    const double re = value.real() + 0.0;
    const double im = value.imag();
    return key + " = " + format_number(re, 10) + (im < 0.0 ? " - " : " + ") +
           format_number(std::abs(im) + 0.0, 10) + "i\n";
}

inline std::string render_svg(const ScanResult& scan, std::size_t column, const PlotSpec& spec) {
    std::vector<double> x(scan.rows.size());
    std::vector<double> y(scan.rows.size());
    for (std::size_t i = 0; i < scan.rows.size(); ++i) {
        x[i] = scan.rows[i].t;
        y[i] = scan.rows[i].values[column - 1];
    }
    std::ostringstream out;
    write_line_svg(x, y, spec, out);
    return out.str();
}

inline std::size_t column_index(const ScanResult& scan, const std::string& name) {
    for (std::size_t i = 0; i < scan.column_names.size(); ++i)
        if (scan.column_names[i] == name) return i;
    throw invalid_argument("column '" + name + "' not present in the data");
}

} // namespace detail

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto checks = standard_checks(cfg.truncation());
    if (!cfg.out_path.empty()) {
        std::ostringstream table;
        const int status = run_checks(checks, table);
        detail::write_file(cfg.out_path, table.str());
        return status;
    }
    return run_checks(checks, out);
}

inline int cmd_uncertainty(const RunConfig& cfg, std::ostream& out) {
    const Deformation d = cfg.deformation();
    const PhysicalScales scales = cfg.physical_scales();
    const Truncation trunc = cfg.truncation();
    const double t_max = cfg.resolved_t_max(d, scales, trunc);
    if (!(cfg.t_min < t_max)) throw invalid_argument("time range requires t_min < t_max");
    if (cfg.steps < 2) throw invalid_argument("a scan needs at least 2 steps");

    ScanResult scan;
    scan.column_names = {"t", "gamma", "dX", "dP", "product", "bound", "ratio"};
    scan.rows.resize(static_cast<std::size_t>(cfg.steps));
    for (int i = 0; i < cfg.steps; ++i) {
        const double t = cfg.t_min + (t_max - cfg.t_min) * i / (cfg.steps - 1);
        const double gamma = cfg.gamma + scales.omega * t;
        const auto report = uncertainty(CoherentState(cfg.action, gamma, d, trunc), scales);
        scan.rows[static_cast<std::size_t>(i)] = {
            t, {gamma, report.dx, report.dp, report.product, report.bound, report.ratio}};
    }

    std::ostringstream csv;
    write_csv(scan, csv);
    detail::emit(cfg.out_path, csv.str(), out);
    if (!cfg.svg_path.empty())
        detail::write_file(cfg.svg_path,
                           detail::render_svg(scan, detail::column_index(scan, "ratio"),
                                              PlotSpec{"Uncertainty ratio", "t", "ratio"}));
    return 0;
}

inline int cmd_autocorr(const RunConfig& cfg, std::ostream& out) {
    const Deformation d = cfg.deformation();
    const PhysicalScales scales = cfg.physical_scales();
    const Truncation trunc = cfg.truncation();
    const double t_max = cfg.resolved_t_max(d, scales, trunc);
    const auto scan =
        autocorrelation_scan(cfg.action, d, scales, trunc, cfg.t_min, t_max, cfg.steps);

    std::ostringstream csv;
    write_csv(scan, csv);
    detail::emit(cfg.out_path, csv.str(), out);
    if (!cfg.svg_path.empty())
        detail::write_file(cfg.svg_path,
                           detail::render_svg(scan, detail::column_index(scan, "abs2"),
                                              PlotSpec{"Autocorrelation", "t", "|A(t)|^2"}));
    return 0;
}

inline int cmd_revival_times(const RunConfig& cfg, std::ostream& out) {
    const Deformation d = cfg.deformation();
    const auto times = revival_times(cfg.action, d, cfg.physical_scales(), cfg.truncation());
    std::string text;
    text += detail::key_value("n_bar", times.n_bar);
    text += detail::key_value("T_cl", times.t_cl);
    text += detail::key_value("T_rev", times.t_rev);
    text += detail::key_value("T_suprev", times.t_suprev);
    detail::emit(cfg.out_path, text, out);
    return 0;
}

inline int cmd_expect(const RunConfig& cfg, std::ostream& out) {
    const Deformation d = cfg.deformation();
    const PhysicalScales scales = cfg.physical_scales();
    const CoherentState s(cfg.action, cfg.gamma, d, cfg.truncation());
    const auto bi = expect_bilinears(s);
    const auto tri = expect_trilinears(s);

    std::string text;
    text += detail::key_value("A", expect_a(s));
    text += detail::key_value("A+", expect_a_dagger(s));
    text += detail::key_value("A+A+", bi.adag_adag);
    text += detail::key_value("AA", bi.a_a);
    text += detail::key_value("A+A", bi.adag_a);
    text += detail::key_value("AA+", bi.a_adag);
    text += detail::key_value("A+A+A", tri.adag_adag_a);
    text += detail::key_value("A+AA+", tri.adag_a_adag);
    text += detail::key_value("A+AA", tri.adag_a_a);
    text += detail::key_value("AA+A", tri.a_adag_a);
    text += detail::key_value("X", expect_x(s, scales));
    text += detail::key_value("P", expect_p(s, scales));
    text += detail::key_value("X2", expect_x2(s, scales));
    text += detail::key_value("P2", expect_p2(s, scales));
    text += detail::key_value("H", energy_expectation(s, scales));
    text += detail::key_value("n_bar", mean_occupation(cfg.action, d, cfg.truncation()));
    detail::emit(cfg.out_path, text, out);
    return 0;
}

inline int cmd_plot(const RunConfig& cfg, std::ostream&) {
    if (cfg.csv_path.empty()) throw invalid_argument("plot needs an input CSV (--csv)");
    if (cfg.svg_path.empty()) throw invalid_argument("plot needs an output path (--svg)");
    std::ifstream file(cfg.csv_path, std::ios::binary);
    if (!file) throw invalid_argument("cannot open '" + cfg.csv_path + "' for reading");
    const ScanResult scan = read_csv(file);
    const std::size_t column = detail::column_index(scan, cfg.column);
    if (column == 0) throw invalid_argument("cannot plot the abscissa column against itself");
    detail::write_file(
        cfg.svg_path,
        detail::render_svg(scan, column,
                           PlotSpec{cfg.column + " vs " + scan.column_names[0],
                                    scan.column_names[0], cfg.column}));
    return 0;
}

// Maps the library exception taxonomy onto process exit codes.
inline int run_mapped(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    } catch (const incompatible_states_error& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    } catch (const consistency_error& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    } catch (const error& ex) {
        // divergence, non-convergence, degenerate deformation, truncation
        err << "error: " << ex.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 3;
    }
}

} // namespace cli
} // namespace qcs
