#pragma once

#include <cstdint>
#include <vector>

#include "srmcrypt/common.hpp"

namespace srmcrypt {

// Structurally random sensing operator Phi = D * F * P applied to each image
// column: P permutes the column entries, F is the unitary DFT and D keeps
// `selected_rows`. Immutable after construction.
class SrmOperator {
public:
    // Keyed construction; permutation and rows are pure functions of
    // (seed, side, rate). Rejects rates outside (0,1] and shapes whose
    // M * side is not a perfect square.
    static SrmOperator from_seed(Eigen::Index side, Rational rate, std::uint64_t seed);

    // Explicit construction, e.g. identity permutation for unscrambled
    // partial-Fourier sensing. No perfect-square requirement.
    SrmOperator(std::vector<Eigen::Index> permutation, std::vector<Eigen::Index> selected_rows);

    Eigen::Index side() const { return static_cast<Eigen::Index>(permutation_.size()); }
    Eigen::Index measurements() const { return static_cast<Eigen::Index>(rows_.size()); }
    const std::vector<Eigen::Index>& permutation() const { return permutation_; }
    const std::vector<Eigen::Index>& selected_rows() const { return rows_; }

    // M-by-side complex measurements.
    ComplexField forward(const ComplexField& image) const;
    ComplexField forward(const Image& image) const;
    // side-by-side back-projection P^T F^H D^T y.
    ComplexField adjoint(const ComplexField& meas) const;

    // Explicit M-by-side matrix of the per-column operator.
    Eigen::MatrixXcd dense() const;

private:
    std::vector<Eigen::Index> permutation_;
    std::vector<Eigen::Index> rows_;
};

// Sensed image columns.
struct Measurements {
    ComplexField values;  // M x side
    Eigen::Index side = 0;
    Rational rate;
};

Measurements srm_forward(const Image& image, const SrmOperator& op);
ComplexField srm_adjoint(const Measurements& meas, const SrmOperator& op);

// Number of kept rows for a side and rate: round(rate * side).
Eigen::Index measurement_count(Eigen::Index side, Rational rate);

// sqrt(N) * max |<phi_k, psi_j>| over rows phi_k of `phi` and columns psi_j
// of `psi`, both normalized to unit length. N = psi.rows().
double coherence(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& psi);

} // namespace srmcrypt
