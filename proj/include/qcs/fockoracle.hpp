#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/qkernel.hpp"

// Brute-force truncated-Fock-space oracle: dense matrices for A and A^dag
// and direct <psi|O|psi> sums. Shipped as library API, used by the test
// suites to validate every closed-form expectation value.

namespace qcs {

// A or A^dag, as they appear left to right in an operator word.
enum class Ladder { lower, raise };

struct TruncatedOperator {
    int dim;
    Eigen::MatrixXcd entries;
};

// <n-1|A|n> = sqrt([n]_q) on the superdiagonal, zero elsewhere.
inline TruncatedOperator annihilation_matrix(int dim, const Deformation& d) {
    if (dim < 2) throw invalid_argument("truncated operator needs dim >= 2");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(q_integer(n, d));
    return {dim, std::move(m)};
}

inline TruncatedOperator creation_matrix(int dim, const Deformation& d) {
    auto a = annihilation_matrix(dim, d);
    return {dim, a.entries.adjoint()};
}

namespace detail {

// Smallest level m with certified sum_{n>m} |c_n|^2 below the limit, or -1
// if the state's term cap is reached first.
inline int coefficient_tail_level(const CoherentState& s, double limit) {
    const double j = s.action();
    const auto& d = s.deformation();
    const double e = s.normalization_sq();
    double weight = 1.0 / e; // |c_0|^2
    for (int n = 0; n < s.truncation().n_max; ++n) {
        const double ratio = j / q_integer(n + 1, d);
        if (ratio < 1.0 && weight * ratio / (1.0 - ratio) < limit) return n;
        weight *= ratio;
    }
    return -1;
}

} // namespace detail

inline constexpr double oracle_tail_limit = 1e-18;

// Smallest matrix dimension whose coefficient tail beyond dim - word_length
// is certified below the oracle tail limit.
inline int automatic_dimension(const CoherentState& s, int word_length,
                               double tail_limit = oracle_tail_limit) {
    const int level = detail::coefficient_tail_level(s, tail_limit);
    if (level < 0)
        throw insufficient_truncation_error(
            "coefficient tail stays above " + std::to_string(tail_limit) + " within the term cap " +
            std::to_string(s.truncation().n_max));
    // One spare slot so a fully raising word cannot spill off the top band.
    return std::max(level + word_length + 2, 2);
}

// c^dag M c where M is the product of the word's matrices and c the
// coefficient vector truncated to dim entries. dim = 0 picks the automatic
// dimension; an explicit dim is rejected if the discarded tail is too heavy.
inline std::complex<double> oracle_expectation(const CoherentState& s,
                                               std::span<const Ladder> word, int dim = 0,
                                               double tail_limit = oracle_tail_limit) {
    const int w = static_cast<int>(word.size());
    if (dim == 0) {
        dim = automatic_dimension(s, w, tail_limit);
    } else {
        const int level = detail::coefficient_tail_level(s, tail_limit);
        if (level < 0 || dim - w < level)
            throw insufficient_truncation_error("dim = " + std::to_string(dim) +
                                                " leaves a coefficient tail above " +
                                                std::to_string(tail_limit));
    }

    const auto coeffs = s.coefficients(dim);
    Eigen::VectorXcd c(dim);
    for (int n = 0; n < dim; ++n) c(n) = coeffs[static_cast<std::size_t>(n)];

    const auto lower = annihilation_matrix(dim, s.deformation());
    const auto raise = creation_matrix(dim, s.deformation());

    Eigen::VectorXcd v = c;
    for (int k = w - 1; k >= 0; --k)
        v = (word[static_cast<std::size_t>(k)] == Ladder::lower ? lower : raise).entries * v;
    return c.dot(v); // Eigen's dot conjugates the left argument
}

inline std::complex<double> oracle_expectation(const CoherentState& s,
                                               std::initializer_list<Ladder> word, int dim = 0,
                                               double tail_limit = oracle_tail_limit) {
    return oracle_expectation(s, std::span<const Ladder>(word.begin(), word.size()), dim,
                              tail_limit);
}

} // namespace qcs
