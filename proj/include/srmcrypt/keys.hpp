#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "srmcrypt/arnold.hpp"
#include "srmcrypt/common.hpp"
#include "srmcrypt/drpe.hpp"
#include "srmcrypt/frft.hpp"
#include "srmcrypt/rng.hpp"
#include "srmcrypt/srm.hpp"
#include "srmcrypt/wavelet.hpp"

namespace srmcrypt {

inline constexpr std::string_view kKeyFileMagic = "cskeys-v1";

// Every secret of one encryption: SRM seed and rate (key 1), Arnold
// iterations (key 2), phase-mask seeds (keys 3 and 4), FRFT orders, plus the
// public host blend weight and wavelet depth used for recovery.
struct KeyBundle {
    int version = 1;
    std::string prng_id{kPrngId};
    std::uint64_t srm_seed = 0;
    Rational rate{1, 4};
    std::int64_t arnold_iterations = 0;
    std::uint64_t theta_seed = 0;
    std::uint64_t omega_seed = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.25;
    int wavelet_levels = 3;

    friend bool operator==(const KeyBundle&, const KeyBundle&) = default;
};

// Checks field ranges and, for side > 0, that the bundle fits an image of
// that side (perfect-square measurement count, dyadic wavelet depth).
void validate_keys(const KeyBundle& keys, Eigen::Index side = 0);

// Derives a bundle from one master seed: key seeds from labeled substreams,
// alpha and beta uniform in [0.3, 1.7], Arnold iterations uniform in [1, 50].
KeyBundle keygen(Eigen::Index side, Rational rate, std::uint64_t master_seed);

// Rates M/side with M*side a perfect square, smallest first.
std::vector<Rational> feasible_rates(Eigen::Index side);

std::string format_key_file(const KeyBundle& keys);
KeyBundle parse_key_file(const std::string& text);
KeyBundle read_key_file(const std::filesystem::path& path);
void write_key_file(const std::filesystem::path& path, const KeyBundle& keys);

// Concrete operators derived from a KeyBundle for an image of a given side.
struct KeyMaterial {
    SrmOperator srm;
    ArnoldKey arnold;
    PhaseMask theta;
    PhaseMask omega;
    FrftOrder alpha;
    FrftOrder beta;
    double gamma;
    WaveletSpec wavelet;

    static KeyMaterial derive(const KeyBundle& keys, Eigen::Index side);

    Eigen::Index side() const { return srm.side(); }
    Eigen::Index meas_side() const { return arnold.side; }
};

} // namespace srmcrypt
