#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "srmcrypt/common.hpp"
#include "srmcrypt/drpe.hpp"
#include "srmcrypt/keys.hpp"
#include "srmcrypt/twist.hpp"

namespace srmcrypt {

// Encrypted payload. Without a host the raw S-by-S complex field is kept;
// with a host the 8-bit blended raster and its extraction metadata are.
struct CipherBundle {
    Eigen::Index side = 0;       // original image side N
    Eigen::Index meas_side = 0;  // S with S*S = M*N
    ComplexField field;          // raw cipher, empty when host-embedded
    Image hidden;                // host-embedded raster, empty otherwise
    std::optional<HostEmbedding> embedding;

    bool host_embedded() const { return embedding.has_value(); }

    friend bool operator==(const CipherBundle& a, const CipherBundle& b);
};

// FSRM sensing -> row-major reshape to S x S -> Arnold -> DRPE -> optional
// host embedding (hidden raster rounded to 8 bits).
CipherBundle encrypt(const Image& image, const KeyMaterial& keys, const Image* host = nullptr);
CipherBundle encrypt(const Image& image, const KeyBundle& keys, const Image* host = nullptr);

// Undoes every cipher stage and returns the measurements fed to the solver.
Measurements decrypt_measurements(const CipherBundle& cipher, const KeyMaterial& keys,
                                  const Image* host = nullptr);

Image decrypt(const CipherBundle& cipher, const KeyMaterial& keys, const SolverConfig& cfg,
              const Image* host = nullptr, TwistResult* details = nullptr);
Image decrypt(const CipherBundle& cipher, const KeyBundle& keys, const SolverConfig& cfg,
              const Image* host = nullptr, TwistResult* details = nullptr);

// Row-major reshape between the M x N measurement grid and the S x S field.
ComplexField reshape_row_major(const ComplexField& m, Eigen::Index rows, Eigen::Index cols);

// 10 log10(255^2 / MSE); +infinity when the images are identical.
double psnr(const Image& a, const Image& b);

// Binary cipher file: "CSENC1\n", u32 LE flags/side/meas_side/host_rows/
// host_cols, five f64 LE embedding values, then either S*S (re,im) f64 LE
// pairs or host_rows*host_cols bytes.
std::string encode_cipher(const CipherBundle& cipher);
CipherBundle decode_cipher(const std::string& bytes);
void write_cipher_file(const std::filesystem::path& path, const CipherBundle& cipher);
CipherBundle read_cipher_file(const std::filesystem::path& path);

} // namespace srmcrypt
