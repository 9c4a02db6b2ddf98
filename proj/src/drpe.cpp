#include "srmcrypt/drpe.hpp"

#include <cmath>
#include <numbers>

#include "srmcrypt/rng.hpp"

namespace srmcrypt {

namespace {

ComplexField phase_factor(const PhaseMask& mask, double sign)
{
    const double two_pi = 2.0 * std::numbers::pi;
    return mask.values.unaryExpr([&](double v) { return std::polar(1.0, sign * two_pi * v); });
}

void check_sides(const ComplexField& field, const PhaseMask& theta, const PhaseMask& omega,
                 const char* what)
{
    require(field.rows() == field.cols(), std::string(what) + ": field must be square");
    require(theta.side() == field.rows() && omega.side() == field.rows(),
            std::string(what) + ": phase mask side does not match field side");
}

struct Tiling {
    Eigen::Index re_row, re_col, im_row, im_col;
};

Tiling tiling_for(const Image& host, Eigen::Index side)
{
    if (host.rows() >= side && host.cols() >= 2 * side) return {0, 0, 0, side};
    if (host.rows() >= 2 * side && host.cols() >= side) return {0, 0, side, 0};
    throw std::invalid_argument("host image " + std::to_string(host.rows()) + "x" +
                                std::to_string(host.cols()) + " cannot hold two " +
                                std::to_string(side) + "x" + std::to_string(side) + " planes");
}

// Affine map of v onto [0,255]; returns (offset, scale) with v = offset + scale * p.
std::pair<double, double> normalization(const Image& v)
{
    const double lo = v.minCoeff();
    const double hi = v.maxCoeff();
    const double scale = (hi > lo) ? (hi - lo) / 255.0 : 1.0;
    return {lo, scale};
}

} // namespace

PhaseMask PhaseMask::from_seed(std::uint64_t seed, Eigen::Index side)
{
    require(side >= 1, "phase mask side must be >= 1");
    Rng rng(seed, "phase");
    PhaseMask mask{seed, Image(side, side)};
    for (Eigen::Index r = 0; r < side; ++r)
        for (Eigen::Index c = 0; c < side; ++c) mask.values(r, c) = rng.uniform();
    return mask;
}

PhaseMask PhaseMask::zero(Eigen::Index side)
{
    return PhaseMask{0, Image::Zero(side, side)};
}

ComplexField drpe_encode(const ComplexField& field, const PhaseMask& theta, const PhaseMask& omega,
                         FrftOrder alpha, FrftOrder beta)
{
    check_sides(field, theta, omega, "drpe_encode");
    ComplexField stage = field.cwiseProduct(phase_factor(theta, 1.0));
    stage = frft2(stage, alpha, alpha);
    stage = stage.cwiseProduct(phase_factor(omega, 1.0));
    return frft2(stage, beta, beta);
}

ComplexField drpe_decode(const ComplexField& cipher, const PhaseMask& theta, const PhaseMask& omega,
                         FrftOrder alpha, FrftOrder beta)
{
    check_sides(cipher, theta, omega, "drpe_decode");
    ComplexField stage = frft2(cipher, -beta, -beta);
    stage = stage.cwiseProduct(phase_factor(omega, -1.0));
    stage = frft2(stage, -alpha, -alpha);
    return stage.cwiseProduct(phase_factor(theta, -1.0));
}

void HostEmbedding::validate() const
{
    require(gamma > 0.0 && gamma <= 1.0, "host blend gamma must lie in (0,1]");
    require(re_scale > 0.0 && im_scale > 0.0, "host normalization scales must be positive");
    require(std::isfinite(re_offset) && std::isfinite(im_offset), "host offsets must be finite");
}

EmbeddedCipher embed_host(const ComplexField& cipher, const Image& host, double gamma)
{
    require(cipher.rows() == cipher.cols(), "embed_host: cipher must be square");
    require(gamma > 0.0 && gamma <= 1.0, "embed_host: gamma must lie in (0,1]");
    const Eigen::Index s = cipher.rows();
    const Tiling t = tiling_for(host, s);

    const Image re = cipher.real();
    const Image im = cipher.imag();
    const auto [re_offset, re_scale] = normalization(re);
    const auto [im_offset, im_scale] = normalization(im);
    HostEmbedding meta{gamma, re_offset, re_scale, im_offset, im_scale};

    Image hidden = host;
    const Image re_plane = (re.array() - re_offset) / re_scale;
    const Image im_plane = (im.array() - im_offset) / im_scale;
    hidden.block(t.re_row, t.re_col, s, s) =
        (1.0 - gamma) * host.block(t.re_row, t.re_col, s, s) + gamma * re_plane;
    hidden.block(t.im_row, t.im_col, s, s) =
        (1.0 - gamma) * host.block(t.im_row, t.im_col, s, s) + gamma * im_plane;
    return {std::move(hidden), meta};
}

ComplexField extract_host(const Image& hidden, const Image& host, const HostEmbedding& meta,
                          Eigen::Index side)
{
    meta.validate();
    require(hidden.rows() == host.rows() && hidden.cols() == host.cols(),
            "extract_host: hidden and host shapes differ");
    const Tiling t = tiling_for(host, side);
    const double g = meta.gamma;
    const auto plane = [&](Eigen::Index r, Eigen::Index c) -> Image {
        return (hidden.block(r, c, side, side) - (1.0 - g) * host.block(r, c, side, side)) / g;
    };
    const Image re = (plane(t.re_row, t.re_col).array() * meta.re_scale + meta.re_offset).matrix();
    const Image im = (plane(t.im_row, t.im_col).array() * meta.im_scale + meta.im_offset).matrix();
    ComplexField out(side, side);
    out.real() = re;
    out.imag() = im;
    return out;
}

} // namespace srmcrypt
