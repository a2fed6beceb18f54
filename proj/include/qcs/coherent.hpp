#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qcs/errors.hpp"
#include "qcs/qkernel.hpp"
#include "qcs/scales.hpp"

// The Klauder coherent state |J, gamma>_q: an immutable (J, gamma) pair with
// its deformation and series policy. Coefficients in the number basis are
//
//   c_n = J^{n/2} exp(-i gamma [n]_q) / sqrt([n]_q! E_q(J)),
//
// and time evolution acts as a shift gamma -> gamma + omega t.

namespace qcs {

class CoherentState {
  public:
    CoherentState(double action, double angle, Deformation d, Truncation t = {})
        : action_(action), angle_(angle), d_(d), t_(t), norm_sq_(q_exponential(action, d, t)) {
        // q_exponential already rejects J < 0 and J outside the guard.
    }

    double action() const { return action_; } // J
    double angle() const { return angle_; }   // gamma
    const Deformation& deformation() const { return d_; }
    const Truncation& truncation() const { return t_; }

    // E_q(J), the normalization constant squared.
    double normalization_sq() const { return norm_sq_.value.real(); }

    // Number of basis levels fixed by the state's own norm tail bound.
    int levels() const { return norm_sq_.terms_used; }

    std::complex<double> coefficient(int n) const {
        if (n < 0) throw invalid_argument("coefficient index must be >= 0");
        double mag = 1.0 / std::sqrt(normalization_sq());
        for (int k = 1; k <= n; ++k) mag *= std::sqrt(action_ / q_integer(k, d_));
        return mag * unit_phase(-angle_ * q_integer(n, d_));
    }

    // First `count` coefficients (default: the state's own truncation level).
    std::vector<std::complex<double>> coefficients(int count = -1) const {
        const int n_coeffs = count < 0 ? levels() : count;
        std::vector<std::complex<double>> c(static_cast<std::size_t>(n_coeffs));
        double mag = 1.0 / std::sqrt(normalization_sq());
        for (int n = 0; n < n_coeffs; ++n) {
            if (n > 0) mag *= std::sqrt(action_ / q_integer(n, d_));
            c[static_cast<std::size_t>(n)] = mag * unit_phase(-angle_ * q_integer(n, d_));
        }
        return c;
    }

    // sum |c_n|^2 over the materialized levels; equals 1 up to the tail bound.
    double norm_check() const {
        double acc = 0.0;
        double weight = 1.0; // J^n / [n]_q!
        for (int n = 0; n < levels(); ++n) {
            if (n > 0) weight *= action_ / q_integer(n, d_);
            acc += weight;
        }
        return acc / normalization_sq();
    }

    // exp(-iHt/hbar)|J,gamma> = |J, gamma + omega t>.
    CoherentState evolve(double delta_t, double omega) const {
        return CoherentState(action_, angle_ + omega * delta_t, d_, t_);
    }

  private:
    double action_;
    double angle_;
    Deformation d_;
    Truncation t_;
    SeriesValue norm_sq_;
};

// <a|b> summed over the larger of the two states' truncation levels.
inline std::complex<double> overlap(const CoherentState& a, const CoherentState& b) {
    if (!(a.deformation() == b.deformation()))
        throw incompatible_states_error("overlap requires states with the same deformation");
    const int n_levels = std::max(a.levels(), b.levels());
    const auto ca = a.coefficients(n_levels);
    const auto cb = b.coefficients(n_levels);
    std::complex<double> acc = 0.0;
    for (int n = 0; n < n_levels; ++n)
        acc += std::conj(ca[static_cast<std::size_t>(n)]) * cb[static_cast<std::size_t>(n)];
    return acc;
}

// Mean occupation n_bar = J d ln E_q(J)/dJ, the peak of the wave packet.
// The derivative is its own certified termwise series, not a finite difference.
inline double mean_occupation(double action, const Deformation& d, const Truncation& t = {}) {
    if (action == 0.0) return 0.0;
    const double e = q_exponential(action, d, t).value.real();
    const double e_prime = q_exponential_derivative(action, d, t).value.real();
    return action * e_prime / e;
}

// <J,gamma|H|J,gamma> = hbar omega sum |c_n|^2 [n]_q; equals hbar omega J by
// the action-angle identity, independent of gamma.
inline double energy_expectation(const CoherentState& s, const PhysicalScales& scales) {
    double acc = 0.0;
    double weight = 1.0;
    for (int n = 0; n < s.levels(); ++n) {
        if (n > 0) weight *= s.action() / q_integer(n, s.deformation());
        acc += weight * q_integer(n, s.deformation());
    }
    return scales.hbar * scales.omega * acc / s.normalization_sq();
}

} // namespace qcs
