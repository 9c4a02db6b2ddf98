#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srmcrypt/keys.hpp"
#include "srmcrypt/pipeline.hpp"
#include "srmcrypt/twist.hpp"

namespace srmcrypt {

// Rectangle on the cipher payload grid (raw field or host raster).
struct Region {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
};

enum class AttackKind { noise, crop, wrong_key, wrong_orders };

struct AttackSpec {
    AttackKind kind = AttackKind::noise;
    // noise amplitude, crop fraction in (0,1), key index 1..4, or FRFT order offset
    double strength = 0.0;
    std::optional<Region> region;
    std::uint64_t seed = 1;

    void validate() const;
};

std::string attack_name(AttackKind kind);

// Adds strength * U(0,1) to the real and imaginary parts of every raw cipher
// value, or to every raster pixel (then rounded and clamped to [0,255]) for
// host-embedded ciphers.
CipherBundle add_noise(const CipherBundle& cipher, double strength, std::uint64_t seed);

// Zeros round(fraction * payload pixels) values. The default region is the
// top-left near-square block: first `area` pixels, row-major, of the
// ceil(sqrt(area))-wide corner. A custom region must have exactly that area.
CipherBundle crop_pixels(const CipherBundle& cipher, double fraction,
                         const std::optional<Region>& region = std::nullopt);

// Key 1: srm_seed with its lowest bit flipped; key 2: arnold_iterations + 1;
// key 3: theta_seed bit flip; key 4: omega_seed bit flip.
KeyBundle perturb_key(const KeyBundle& keys, int which);
KeyBundle perturb_orders(const KeyBundle& keys, double delta = 0.1);

struct BenchRow {
    std::string attack;
    std::string param;
    double psnr_db = 0.0;
    double seconds = 0.0;
};

// The noise / crop / wrong-key experiment set: noise 1.0, crops 20/25/50/75 %,
// wrong keys 1-4, FRFT orders +0.1.
std::vector<AttackSpec> paper_suite();

// Encrypts once, then for a baseline row and every attack (in order)
// perturbs, decrypts and scores against `image`. With record_time false the
// seconds column is 0 so reports are byte-reproducible.
std::vector<BenchRow> run_bench(const Image& image, const KeyBundle& keys,
                                const std::vector<AttackSpec>& attacks, const SolverConfig& cfg,
                                const Image* host = nullptr, bool record_time = true);

// Header `attack,param,psnr_db,seconds`, LF endings, 4-decimal numbers.
std::string format_bench_csv(const std::vector<BenchRow>& rows);

} // namespace srmcrypt
