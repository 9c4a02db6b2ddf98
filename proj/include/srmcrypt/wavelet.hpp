#pragma once

#include <span>

#include "srmcrypt/common.hpp"

namespace srmcrypt {

enum class Boundary { symmetric };

// CDF 9/7 decomposition depth. 2^levels must divide the image side.
struct WaveletSpec {
    int levels = 3;
    Boundary boundary = Boundary::symmetric;

    void validate(Eigen::Index side) const;
};

// One level of the 9/7 lifting transform on an even-length signal, in place.
// Output layout is [approximation | detail].
void dwt1(std::span<double> signal);
void idwt1(std::span<double> coeffs);
// Exact transpose of idwt1 (not its inverse; the 9/7 basis is biorthogonal).
void idwt1_transpose(std::span<double> signal);

// Dense n-by-n matrix whose columns are the multi-level 1D synthesis basis
// functions (idwt of unit coefficient vectors).
Eigen::MatrixXd wavelet_synthesis_matrix(Eigen::Index n, const WaveletSpec& spec);

// Multi-level separable 2D transform with nested quadrant layout: the
// approximation band occupies the top-left (side >> levels) square.
Image dwt2(const Image& image, const WaveletSpec& spec);
Image idwt2(const Image& coeffs, const WaveletSpec& spec);
// Adjoint of idwt2, used for gradients of synthesis-form objectives.
Image idwt2_transpose(const Image& image, const WaveletSpec& spec);

} // namespace srmcrypt
