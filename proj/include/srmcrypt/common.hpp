#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace srmcrypt {

using cplx = std::complex<double>;

// Grayscale raster, row-major semantics (row = x, column = y). Values are
// nominally in [0,255] but intermediate images may leave that range.
using Image = Eigen::MatrixXd;

// Complex-valued matrix carrying intermediate and encrypted states.
using ComplexField = Eigen::MatrixXcd;

// Raised when a solver iterate or objective becomes non-finite.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a file is unreadable or does not match its declared format.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition) throw std::invalid_argument(message);
}

// Exact rational M/N with positive denominator.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    // Parses "M/N" (or a bare integer). Throws std::invalid_argument.
    static Rational parse(const std::string& text);
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

// round(r * n) computed in integer arithmetic, halves rounded up.
std::int64_t scale_round(const Rational& r, std::int64_t n);

// Returns s with s*s == v, or -1 when v is not a perfect square.
std::int64_t exact_sqrt(std::int64_t v);

} // namespace srmcrypt
