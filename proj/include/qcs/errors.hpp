#pragma once

#include <stdexcept>
#include <string>

namespace qcs {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violation: bad parameter values, malformed configuration.
struct invalid_argument : error {
    using error::error;
};

// Series argument at or beyond the convergence radius 1/(1-q^2).
struct divergence_error : error {
    using error::error;
};

// Term cap reached before the certified tail bound fell below tolerance.
struct convergence_error : error {
    using error::error;
};

// Operation undefined at q = 1 (Jackson derivative, revival hierarchy).
struct degenerate_deformation_error : error {
    using error::error;
};

// Two states with different deformations fed to a binary operation.
struct incompatible_states_error : error {
    using error::error;
};

// Fock-space truncation too small for the requested expectation value.
struct insufficient_truncation_error : error {
    using error::error;
};

// Two independent routes to the same quantity disagree beyond tolerance.
struct consistency_error : error {
    using error::error;
};

} // namespace qcs
