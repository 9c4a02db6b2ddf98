#include "srmcrypt/wavelet.hpp"

#include <vector>

namespace srmcrypt {

namespace {

// CDF 9/7 lifting constants (Daubechies-Sweldens factorization).
constexpr double kAlpha = -1.586134342059924;
constexpr double kBeta = -0.052980118572961;
constexpr double kGamma = 0.882911075530934;
constexpr double kDelta = 0.443506852043971;
constexpr double kZeta = 1.149604398860241;

// Whole-sample symmetric extension: x[n] -> x[n-2], x[-1] -> x[1].
void predict(std::span<double> x, double a)
{
    const std::size_t n = x.size();
    for (std::size_t i = 1; i < n; i += 2) {
        const std::size_t right = (i + 1 < n) ? i + 1 : n - 2;
        x[i] += a * (x[i - 1] + x[right]);
    }
}

void update(std::span<double> x, double a)
{
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; i += 2) {
        const std::size_t left = (i > 0) ? i - 1 : 1;
        x[i] += a * (x[left] + x[i + 1]);
    }
}

void predict_transpose(std::span<double> x, double a)
{
    const std::size_t n = x.size();
    for (std::size_t i = 1; i < n; i += 2) {
        const std::size_t right = (i + 1 < n) ? i + 1 : n - 2;
        x[i - 1] += a * x[i];
        x[right] += a * x[i];
    }
}

void update_transpose(std::span<double> x, double a)
{
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; i += 2) {
        const std::size_t left = (i > 0) ? i - 1 : 1;
        x[left] += a * x[i];
        x[i + 1] += a * x[i];
    }
}

void scale(std::span<double> x, double even, double odd)
{
    for (std::size_t i = 0; i < x.size(); ++i) x[i] *= (i % 2 == 0) ? even : odd;
}

// Interleaved -> [evens | odds].
void pack(std::span<double> x)
{
    const std::size_t half = x.size() / 2;
    std::vector<double> tmp(x.size());
    for (std::size_t i = 0; i < half; ++i) {
        tmp[i] = x[2 * i];
        tmp[half + i] = x[2 * i + 1];
    }
    std::copy(tmp.begin(), tmp.end(), x.begin());
}

void unpack(std::span<double> x)
{
    const std::size_t half = x.size() / 2;
    std::vector<double> tmp(x.size());
    for (std::size_t i = 0; i < half; ++i) {
        tmp[2 * i] = x[i];
        tmp[2 * i + 1] = x[half + i];
    }
    std::copy(tmp.begin(), tmp.end(), x.begin());
}

void check_length(std::span<const double> x)
{
    require(x.size() >= 2 && x.size() % 2 == 0, "9/7 lifting needs an even length >= 2");
}

using Transform1D = void (*)(std::span<double>);

// Applies op to every row and every column of the top-left s-by-s block.
void apply_block(Image& m, Eigen::Index s, Transform1D op)
{
    std::vector<double> buf(static_cast<std::size_t>(s));
    for (Eigen::Index r = 0; r < s; ++r) {
        for (Eigen::Index c = 0; c < s; ++c) buf[c] = m(r, c);
        op(buf);
        for (Eigen::Index c = 0; c < s; ++c) m(r, c) = buf[c];
    }
    for (Eigen::Index c = 0; c < s; ++c) {
        std::span<double> col(m.col(c).data(), static_cast<std::size_t>(s));
        op(col);
    }
}

} // namespace

void WaveletSpec::validate(Eigen::Index side) const
{
    require(levels >= 1, "wavelet levels must be >= 1");
    require(levels < 31 && side > 0 && side % (Eigen::Index{1} << levels) == 0,
            "2^levels (levels=" + std::to_string(levels) + ") must divide image side " +
                std::to_string(side));
}

void dwt1(std::span<double> x)
{
    check_length(x);
    predict(x, kAlpha);
    update(x, kBeta);
    predict(x, kGamma);
    update(x, kDelta);
    scale(x, kZeta, 1.0 / kZeta);
    pack(x);
}

void idwt1(std::span<double> x)
{
    check_length(x);
    unpack(x);
    scale(x, 1.0 / kZeta, kZeta);
    update(x, -kDelta);
    predict(x, -kGamma);
    update(x, -kBeta);
    predict(x, -kAlpha);
}

void idwt1_transpose(std::span<double> x)
{
    check_length(x);
    predict_transpose(x, -kAlpha);
    update_transpose(x, -kBeta);
    predict_transpose(x, -kGamma);
    update_transpose(x, -kDelta);
    scale(x, 1.0 / kZeta, kZeta);
    pack(x);
}

Eigen::MatrixXd wavelet_synthesis_matrix(Eigen::Index n, const WaveletSpec& spec)
{
    spec.validate(n);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (int l = spec.levels - 1; l >= 0; --l)
            idwt1(std::span<double>(basis.col(j).data(), static_cast<std::size_t>(n >> l)));
    }
    return basis;
}

Image dwt2(const Image& image, const WaveletSpec& spec)
{
    require(image.rows() == image.cols(), "dwt2: image must be square");
    spec.validate(image.rows());
    Image out = image;
    for (int l = 0; l < spec.levels; ++l) apply_block(out, image.rows() >> l, dwt1);
    return out;
}

Image idwt2(const Image& coeffs, const WaveletSpec& spec)
{
    require(coeffs.rows() == coeffs.cols(), "idwt2: coefficients must be square");
    spec.validate(coeffs.rows());
    Image out = coeffs;
    for (int l = spec.levels - 1; l >= 0; --l) apply_block(out, coeffs.rows() >> l, idwt1);
    return out;
}

Image idwt2_transpose(const Image& image, const WaveletSpec& spec)
{
    require(image.rows() == image.cols(), "idwt2_transpose: image must be square");
    spec.validate(image.rows());
    Image out = image;
    for (int l = 0; l < spec.levels; ++l) apply_block(out, image.rows() >> l, idwt1_transpose);
    return out;
}

} // namespace srmcrypt
