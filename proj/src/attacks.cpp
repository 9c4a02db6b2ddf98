#include "srmcrypt/attacks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "srmcrypt/image_io.hpp"
#include "srmcrypt/rng.hpp"

namespace srmcrypt {

namespace {

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string format_param(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

Eigen::Index payload_rows(const CipherBundle& c)
{
    return c.host_embedded() ? c.hidden.rows() : c.field.rows();
}

Eigen::Index payload_cols(const CipherBundle& c)
{
    return c.host_embedded() ? c.hidden.cols() : c.field.cols();
}

void zero_at(CipherBundle& c, Eigen::Index r, Eigen::Index col)
{
    if (c.host_embedded())
        c.hidden(r, col) = 0.0;
    else
        c.field(r, col) = cplx{};
}

CipherBundle apply_payload_attack(const CipherBundle& cipher, const AttackSpec& a)
{
    switch (a.kind) {
    case AttackKind::noise: return add_noise(cipher, a.strength, a.seed);
    case AttackKind::crop: return crop_pixels(cipher, a.strength, a.region);
    default: return cipher;
    }
}

KeyBundle apply_key_attack(const KeyBundle& keys, const AttackSpec& a)
{
    switch (a.kind) {
    case AttackKind::wrong_key: return perturb_key(keys, static_cast<int>(a.strength));
    case AttackKind::wrong_orders: return perturb_orders(keys, a.strength);
    default: return keys;
    }
}

} // namespace

std::string attack_name(AttackKind kind)
{
    switch (kind) {
    case AttackKind::noise: return "noise";
    case AttackKind::crop: return "crop";
    case AttackKind::wrong_key: return "wrong_key";
    case AttackKind::wrong_orders: return "wrong_orders";
    }
    return "unknown";
}

void AttackSpec::validate() const
{
    switch (kind) {
    case AttackKind::noise:
        require(strength >= 0.0 && std::isfinite(strength), "noise strength must be >= 0");
        break;
    case AttackKind::crop:
        require(strength > 0.0 && strength < 1.0, "crop fraction must lie in (0,1)");
        break;
    case AttackKind::wrong_key:
        require(strength == 1.0 || strength == 2.0 || strength == 3.0 || strength == 4.0,
                "wrong_key index must be 1, 2, 3 or 4");
        break;
    case AttackKind::wrong_orders:
        require(std::isfinite(strength) && strength != 0.0, "wrong_orders offset must be non-zero");
        break;
    }
}

CipherBundle add_noise(const CipherBundle& cipher, double strength, std::uint64_t seed)
{
    require(strength >= 0.0 && std::isfinite(strength), "add_noise: strength must be >= 0");
    CipherBundle out = cipher;
    if (strength == 0.0) return out;
    Rng rng(seed, "noise");
    if (out.host_embedded()) {
        for (Eigen::Index r = 0; r < out.hidden.rows(); ++r)
            for (Eigen::Index c = 0; c < out.hidden.cols(); ++c)
                out.hidden(r, c) = quantize_pixel(out.hidden(r, c) + strength * rng.uniform());
    } else {
        for (Eigen::Index r = 0; r < out.field.rows(); ++r)
            for (Eigen::Index c = 0; c < out.field.cols(); ++c) {
                const double re = strength * rng.uniform();
                const double im = strength * rng.uniform();
                out.field(r, c) += cplx(re, im);
            }
    }
    return out;
}

CipherBundle crop_pixels(const CipherBundle& cipher, double fraction, const std::optional<Region>& region)
{
    require(fraction > 0.0 && fraction < 1.0, "crop_pixels: fraction must lie in (0,1)");
    const Eigen::Index rows = payload_rows(cipher);
    const Eigen::Index cols = payload_cols(cipher);
    const auto area = static_cast<Eigen::Index>(std::llround(fraction * static_cast<double>(rows * cols)));
    require(area >= 1, "crop_pixels: fraction selects no pixels");

    CipherBundle out = cipher;
    if (region) {
        const Region& g = *region;
        require(g.row >= 0 && g.col >= 0 && g.rows >= 1 && g.cols >= 1 && g.row + g.rows <= rows &&
                    g.col + g.cols <= cols,
                "crop_pixels: region out of bounds");
        require(g.rows * g.cols == area, "crop_pixels: region area must equal round(fraction * pixels) = " +
                                              std::to_string(area));
        for (Eigen::Index r = g.row; r < g.row + g.rows; ++r)
            for (Eigen::Index c = g.col; c < g.col + g.cols; ++c) zero_at(out, r, c);
        return out;
    }

    const auto width = std::min<Eigen::Index>(
        cols, static_cast<Eigen::Index>(std::ceil(std::sqrt(static_cast<double>(area)))));
    for (Eigen::Index i = 0; i < area; ++i) zero_at(out, i / width, i % width);
    return out;
}

KeyBundle perturb_key(const KeyBundle& keys, int which)
{
    KeyBundle out = keys;
    switch (which) {
    case 1: out.srm_seed ^= 1u; break;
    case 2: out.arnold_iterations += 1; break;
    case 3: out.theta_seed ^= 1u; break;
    case 4: out.omega_seed ^= 1u; break;
    default: throw std::invalid_argument("perturb_key: key index must be 1..4, got " + std::to_string(which));
    }
    return out;
}

KeyBundle perturb_orders(const KeyBundle& keys, double delta)
{
    KeyBundle out = keys;
    out.alpha += delta;
    out.beta += delta;
    FrftOrder{out.alpha};
    FrftOrder{out.beta};
    return out;
}

std::vector<AttackSpec> paper_suite()
{
    std::vector<AttackSpec> suite;
    suite.push_back({AttackKind::noise, 1.0, std::nullopt, 1});
    for (double f : {0.20, 0.25, 0.50, 0.75}) suite.push_back({AttackKind::crop, f, std::nullopt, 1});
    for (int k = 1; k <= 4; ++k) suite.push_back({AttackKind::wrong_key, static_cast<double>(k), std::nullopt, 1});
    suite.push_back({AttackKind::wrong_orders, 0.1, std::nullopt, 1});
    return suite;
}

std::vector<BenchRow> run_bench(const Image& image, const KeyBundle& keys,
                                const std::vector<AttackSpec>& attacks, const SolverConfig& cfg,
                                const Image* host, bool record_time)
{
    for (const auto& a : attacks) a.validate();
    require(image.rows() == image.cols(), "run_bench: image must be square");
    const KeyMaterial material = KeyMaterial::derive(keys, image.rows());
    const CipherBundle cipher = encrypt(image, material, host);

    using clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    auto score = [&](std::string name, std::string param, const CipherBundle& c, const KeyBundle& k) {
        const auto t0 = clock::now();
        const Image out = (k == keys) ? decrypt(c, material, cfg, host) : decrypt(c, k, cfg, host);
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        rows.push_back({std::move(name), std::move(param), psnr(out, image), record_time ? secs : 0.0});
    };

    score("none", "0", cipher, keys);
    for (const auto& a : attacks)
        score(attack_name(a.kind), format_param(a.strength), apply_payload_attack(cipher, a),
              apply_key_attack(keys, a));
    return rows;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows)
{
    std::string out = "attack,param,psnr_db,seconds\n";
    for (const auto& r : rows)
        out += r.attack + "," + r.param + "," + format_number(r.psnr_db) + "," + format_number(r.seconds) + "\n";
    return out;
}

} // namespace srmcrypt
