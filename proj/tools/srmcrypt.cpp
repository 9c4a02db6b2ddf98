// srmcrypt command line: keygen, encrypt, decrypt, attack, bench, coherence.
// Failures print one line `E:<code>:<message>` to stderr and exit with <code>:
// 2 unreadable or malformed input, 3 constraint violation or bad usage,
// 4 solver divergence.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srmcrypt/attacks.hpp"
#include "srmcrypt/image_io.hpp"
#include "srmcrypt/keys.hpp"
#include "srmcrypt/pipeline.hpp"
#include "srmcrypt/srm.hpp"
#include "srmcrypt/wavelet.hpp"

namespace fs = std::filesystem;
using namespace srmcrypt;

namespace {

constexpr int kFormat = 2;
constexpr int kConstraint = 3;
constexpr int kDivergence = 4;

std::string one_line(std::string s)
{
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

AttackKind parse_kind(const std::string& s)
{
    if (s == "noise") return AttackKind::noise;
    if (s == "crop") return AttackKind::crop;
    if (s == "wrong_key") return AttackKind::wrong_key;
    if (s == "wrong_orders") return AttackKind::wrong_orders;
    throw std::invalid_argument("unknown attack kind '" + s + "'");
}

// kind:strength[:seed]
AttackSpec parse_attack(const std::string& text)
{
    const auto a = text.find(':');
    require(a != std::string::npos, "attack must look like kind:strength[:seed], got '" + text + "'");
    const auto b = text.find(':', a + 1);
    AttackSpec spec;
    spec.kind = parse_kind(text.substr(0, a));
    const std::string strength = text.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1);
    std::size_t used = 0;
    try {
        spec.strength = std::stod(strength, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used > 0 && used == strength.size(), "bad attack strength '" + strength + "'");
    if (b != std::string::npos) {
        const std::string seed = text.substr(b + 1);
        require(!seed.empty() && seed.find_first_not_of("0123456789") == std::string::npos,
                "bad attack seed '" + seed + "'");
        spec.seed = std::stoull(seed);
    }
    spec.validate();
    return spec;
}

std::optional<Image> maybe_host(const std::string& path)
{
    if (path.empty()) return std::nullopt;
    return read_pgm(path);
}

Eigen::MatrixXcd dft_matrix(Eigen::Index n)
{
    Eigen::MatrixXcd f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            f(j, k) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                                            static_cast<double>(n));
    return f;
}

int deepest_level(Eigen::Index n)
{
    int levels = 0;
    while (levels < 3 && n % (Eigen::Index{2} << levels) == 0) ++levels;
    return levels;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Compressive-sensing image encryption with FRFT double random phase encoding"};
    app.require_subcommand(1);

    // keygen
    auto* keygen_cmd = app.add_subcommand("keygen", "Derive a key file from a master seed");
    std::int64_t kg_side = 0;
    std::string kg_rate;
    std::uint64_t kg_seed = 0;
    std::string kg_out;
    keygen_cmd->add_option("--side", kg_side, "Image side N")->required();
    keygen_cmd->add_option("--rate", kg_rate, "Sampling rate as M/N")->required();
    keygen_cmd->add_option("--seed", kg_seed, "Master seed")->required();
    keygen_cmd->add_option("--out", kg_out, "Key file to write")->required();

    // encrypt
    auto* enc_cmd = app.add_subcommand("encrypt", "Encrypt a PGM image");
    std::string enc_in, enc_keys, enc_host, enc_out;
    enc_cmd->add_option("--in", enc_in, "Plain image (PGM)")->required();
    enc_cmd->add_option("--keys", enc_keys, "Key file")->required();
    enc_cmd->add_option("--host", enc_host, "Host image (PGM) to hide the cipher in");
    enc_cmd->add_option("--out", enc_out, "Cipher file to write")->required();

    // decrypt
    auto* dec_cmd = app.add_subcommand("decrypt", "Decrypt and reconstruct an image");
    std::string dec_in, dec_keys, dec_host, dec_out, dec_trace;
    std::optional<double> dec_lambda;
    std::optional<int> dec_iters;
    dec_cmd->add_option("--in", dec_in, "Cipher file")->required();
    dec_cmd->add_option("--keys", dec_keys, "Key file")->required();
    dec_cmd->add_option("--host", dec_host, "Host image used at encryption");
    dec_cmd->add_option("--out", dec_out, "Reconstructed image (PGM)")->required();
    dec_cmd->add_option("--lambda", dec_lambda, "l1 weight (default: scaled from the data)");
    dec_cmd->add_option("--max-iters", dec_iters, "Solver iteration cap");
    dec_cmd->add_option("--trace", dec_trace, "Per-iteration CSV output");

    // attack
    auto* atk_cmd = app.add_subcommand("attack", "Apply noise or cropping to a cipher file");
    std::string atk_in, atk_kind, atk_out;
    double atk_strength = 0.0;
    std::uint64_t atk_seed = 1;
    atk_cmd->add_option("--in", atk_in, "Cipher file")->required();
    atk_cmd->add_option("--kind", atk_kind, "noise or crop")->required();
    atk_cmd->add_option("--strength", atk_strength, "Noise amplitude or crop fraction")->required();
    atk_cmd->add_option("--seed", atk_seed, "Noise seed");
    atk_cmd->add_option("--out", atk_out, "Attacked cipher file")->required();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run the attack suite and write a PSNR report");
    std::string b_image, b_keys, b_suite = "paper", b_host, b_out;
    std::vector<std::string> b_attacks;
    bool b_no_timing = false;
    bench_cmd->add_option("--image", b_image, "Plain image (PGM)")->required();
    bench_cmd->add_option("--keys", b_keys, "Key file")->required();
    bench_cmd->add_option("--suite", b_suite, "paper or custom");
    bench_cmd->add_option("--attack", b_attacks, "kind:strength[:seed], repeatable (custom suite)");
    bench_cmd->add_option("--host", b_host, "Host image (PGM)");
    bench_cmd->add_flag("--no-timing", b_no_timing, "Write 0 seconds for reproducible reports");
    bench_cmd->add_option("--out", b_out, "CSV report")->required();

    // coherence
    auto* coh_cmd = app.add_subcommand("coherence", "Print the mutual coherence of two bases");
    std::int64_t c_n = 0;
    std::string c_phi = "dft", c_psi = "identity";
    std::optional<int> c_levels;
    coh_cmd->add_option("--n", c_n, "Dimension")->required();
    coh_cmd->add_option("--phi", c_phi, "dft or identity");
    coh_cmd->add_option("--psi", c_psi, "identity or wavelet");
    coh_cmd->add_option("--levels", c_levels, "Wavelet depth (default: deepest of 1..3 dividing n)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "E:" << kConstraint << ":" << one_line(e.what()) << "\n";
        return kConstraint;
    }

    try {
        if (*keygen_cmd) {
            const KeyBundle keys = keygen(kg_side, Rational::parse(kg_rate), kg_seed);
            write_key_file(kg_out, keys);
        } else if (*enc_cmd) {
            const KeyBundle keys = read_key_file(enc_keys);
            const Image image = read_pgm(enc_in);
            const auto host = maybe_host(enc_host);
            write_cipher_file(enc_out, encrypt(image, keys, host ? &*host : nullptr));
        } else if (*dec_cmd) {
            const KeyBundle keys = read_key_file(dec_keys);
            const CipherBundle cipher = read_cipher_file(dec_in);
            const auto host = maybe_host(dec_host);
            SolverConfig cfg;
            cfg.lambda = dec_lambda;
            if (dec_iters) cfg.max_iters = *dec_iters;
            TwistResult details;
            const Image out = decrypt(cipher, keys, cfg, host ? &*host : nullptr, &details);
            write_pgm(dec_out, out);
            if (!dec_trace.empty()) {
                std::string csv = "iteration,objective,residual\n";
                char buf[128];
                for (const auto& r : details.trace) {
                    std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g\n", r.iteration, r.objective, r.residual);
                    csv += buf;
                }
                write_file_atomic(dec_trace, csv);
            }
        } else if (*atk_cmd) {
            const AttackKind kind = parse_kind(atk_kind);
            require(kind == AttackKind::noise || kind == AttackKind::crop,
                    "attack on a cipher file supports noise and crop; key attacks run in bench");
            const CipherBundle cipher = read_cipher_file(atk_in);
            const CipherBundle out = kind == AttackKind::noise ? add_noise(cipher, atk_strength, atk_seed)
                                                               : crop_pixels(cipher, atk_strength);
            write_cipher_file(atk_out, out);
        } else if (*bench_cmd) {
            std::vector<AttackSpec> attacks;
            if (b_suite == "paper") {
                require(b_attacks.empty(), "--attack is only valid with --suite custom");
                attacks = paper_suite();
            } else if (b_suite == "custom") {
                for (const auto& a : b_attacks) attacks.push_back(parse_attack(a));
            } else {
                throw std::invalid_argument("unknown suite '" + b_suite + "' (paper or custom)");
            }
            const KeyBundle keys = read_key_file(b_keys);
            const Image image = read_pgm(b_image);
            const auto host = maybe_host(b_host);
            const auto rows = run_bench(image, keys, attacks, SolverConfig{}, host ? &*host : nullptr, !b_no_timing);
            write_file_atomic(b_out, format_bench_csv(rows));
        } else if (*coh_cmd) {
            require(c_n >= 1, "--n must be >= 1");
            Eigen::MatrixXcd phi;
            if (c_phi == "dft")
                phi = dft_matrix(c_n);
            else if (c_phi == "identity")
                phi = Eigen::MatrixXcd::Identity(c_n, c_n);
            else
                throw std::invalid_argument("unknown --phi '" + c_phi + "' (dft or identity)");
            Eigen::MatrixXcd psi;
            if (c_psi == "identity") {
                psi = Eigen::MatrixXcd::Identity(c_n, c_n);
            } else if (c_psi == "wavelet") {
                WaveletSpec spec;
                spec.levels = c_levels.value_or(deepest_level(c_n));
                psi = wavelet_synthesis_matrix(c_n, spec).cast<cplx>();
            } else {
                throw std::invalid_argument("unknown --psi '" + c_psi + "' (identity or wavelet)");
            }
            std::printf("%.4f\n", coherence(phi, psi));
        }
    } catch (const FormatError& e) {
        std::cerr << "E:" << kFormat << ":" << one_line(e.what()) << "\n";
        return kFormat;
    } catch (const DivergenceError& e) {
        std::cerr << "E:" << kDivergence << ":" << one_line(e.what()) << "\n";
        return kDivergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "E:" << kConstraint << ":" << one_line(e.what()) << "\n";
        return kConstraint;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "E:" << kFormat << ":" << one_line(e.what()) << "\n";
        return kFormat;
    } catch (const std::exception& e) {
        std::cerr << "E:" << kFormat << ":" << one_line(e.what()) << "\n";
        return kFormat;
    }
    return 0;
}
