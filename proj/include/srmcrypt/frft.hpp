#pragma once

#include <memory>

#include "srmcrypt/common.hpp"

namespace srmcrypt {

// Fractional Fourier transform order. Order 0 is the identity, order 1 the
// centered unitary DFT, order 2 coordinate reversal, negative orders invert.
class FrftOrder {
public:
    constexpr FrftOrder() = default;
    explicit FrftOrder(double value);

    double value() const { return value_; }
    FrftOrder operator-() const { return FrftOrder(-value_); }

private:
    double value_ = 0.0;
};

// Dense n-by-n discrete FRFT matrix: fractional power of the centered
// unitary DFT built from Hermite-ordered eigenvectors of the DFT-commuting
// matrix S, so that frft_matrix(a) * frft_matrix(b) == frft_matrix(a + b).
// Matrices are cached per (n, order); the cache is thread safe.
std::shared_ptr<const Eigen::MatrixXcd> frft_matrix(Eigen::Index n, FrftOrder order);

Eigen::VectorXcd frft1(const Eigen::VectorXcd& signal, FrftOrder order);

// Separable 2D FRFT: every row with order_rows, then every column with
// order_cols.
ComplexField frft2(const ComplexField& field, FrftOrder order_rows, FrftOrder order_cols);

} // namespace srmcrypt
