#pragma once

#include <cstdint>

#include "srmcrypt/common.hpp"
#include "srmcrypt/frft.hpp"

namespace srmcrypt {

// Random phase key: entries uniform in [0,1), applied as exp(j*2*pi*value).
struct PhaseMask {
    std::uint64_t seed = 0;
    Image values;

    static PhaseMask from_seed(std::uint64_t seed, Eigen::Index side);
    // All-zero mask (unit phase), useful for isolating pipeline stages.
    static PhaseMask zero(Eigen::Index side);

    Eigen::Index side() const { return values.rows(); }
};

// E = FRFT_beta( FRFT_alpha(field .* exp(j2pi theta)) .* exp(j2pi omega) ),
// each FRFT stage using the same order on rows and columns.
ComplexField drpe_encode(const ComplexField& field, const PhaseMask& theta, const PhaseMask& omega,
                         FrftOrder alpha, FrftOrder beta);

// Exact inverse of drpe_encode.
ComplexField drpe_decode(const ComplexField& cipher, const PhaseMask& theta, const PhaseMask& omega,
                         FrftOrder alpha, FrftOrder beta);

// Parameters needed to undo a host blend. Plane value p maps back to the
// field via re = re_offset + re_scale * p (likewise for im).
struct HostEmbedding {
    double gamma = 0.25;
    double re_offset = 0.0;
    double re_scale = 1.0;
    double im_offset = 0.0;
    double im_scale = 1.0;

    void validate() const;
};

struct EmbeddedCipher {
    Image hidden;
    HostEmbedding meta;
};

// Normalizes the real and imaginary planes of an S-by-S cipher to [0,255],
// tiles them side by side (host at least S x 2S) or stacked (at least
// 2S x S) and blends: out = (1 - gamma) * host + gamma * planes. Pixels
// outside the tiled area keep the host value.
EmbeddedCipher embed_host(const ComplexField& cipher, const Image& host, double gamma);

// Inverts embed_host given the same host.
ComplexField extract_host(const Image& hidden, const Image& host, const HostEmbedding& meta,
                          Eigen::Index side);

} // namespace srmcrypt
