#pragma once

#include <cmath>

#include "qcs/errors.hpp"
#include "qcs/qkernel.hpp"

namespace qcs {

// Dimensionful constants of the oscillator: hbar, mass and angular frequency.
struct PhysicalScales {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;

    PhysicalScales() = default;
    PhysicalScales(double hbar_, double mass_, double omega_)
        : hbar(hbar_), mass(mass_), omega(omega_) {
        if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0))
            throw invalid_argument("physical scales must all be strictly positive");
    }
};

// Coefficients of the quadratures X = alpha (A^dag + A), P = i beta (A^dag - A).
struct QuadratureCoeffs {
    double alpha;
    double beta;

    QuadratureCoeffs(const Deformation& d, const PhysicalScales& s) {
        const double root = 0.5 * std::sqrt(1.0 + d.q_sq());
        alpha = root * std::sqrt(s.hbar / (s.mass * s.omega));
        beta = root * std::sqrt(s.hbar * s.mass * s.omega);
    }
};

} // namespace qcs
