#include "srmcrypt/pipeline.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "srmcrypt/arnold.hpp"
#include "srmcrypt/image_io.hpp"

namespace srmcrypt {

namespace {

constexpr std::string_view kCipherMagic = "CSENC1\n";
constexpr std::uint32_t kFlagHost = 1u;

void put_u32(std::string& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

void put_f64(std::string& out, double v)
{
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFFu));
}

class Reader {
public:
    explicit Reader(const std::string& s) : s_(s) {}

    std::uint32_t u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    double f64()
    {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }

    unsigned char byte()
    {
        need(1);
        return static_cast<unsigned char>(s_[pos_++]);
    }

    void skip(std::size_t n)
    {
        need(n);
        pos_ += n;
    }

    bool done() const { return pos_ == s_.size(); }

private:
    void need(std::size_t n) const
    {
        if (s_.size() - pos_ < n) throw FormatError("cipher file: truncated");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

const Image& require_host(const Image* host)
{
    if (host == nullptr) throw std::invalid_argument("cipher is host-embedded but no host image given");
    return *host;
}

} // namespace

bool operator==(const CipherBundle& a, const CipherBundle& b)
{
    if (a.side != b.side || a.meas_side != b.meas_side) return false;
    if (a.host_embedded() != b.host_embedded()) return false;
    if (a.host_embedded()) {
        const auto& x = *a.embedding;
        const auto& y = *b.embedding;
        if (x.gamma != y.gamma || x.re_offset != y.re_offset || x.re_scale != y.re_scale ||
            x.im_offset != y.im_offset || x.im_scale != y.im_scale)
            return false;
        return a.hidden.rows() == b.hidden.rows() && a.hidden.cols() == b.hidden.cols() &&
               a.hidden == b.hidden;
    }
    return a.field.rows() == b.field.rows() && a.field.cols() == b.field.cols() && a.field == b.field;
}

ComplexField reshape_row_major(const ComplexField& m, Eigen::Index rows, Eigen::Index cols)
{
    require(rows * cols == m.size(), "reshape: element count mismatch");
    ComplexField out(rows, cols);
    const Eigen::Index in_cols = m.cols();
    for (Eigen::Index i = 0; i < m.size(); ++i) out(i / cols, i % cols) = m(i / in_cols, i % in_cols);
    return out;
}

CipherBundle encrypt(const Image& image, const KeyMaterial& keys, const Image* host)
{
    const Eigen::Index n = keys.side();
    require(image.rows() == n && image.cols() == n,
            "encrypt: image must be " + std::to_string(n) + "x" + std::to_string(n));
    keys.wavelet.validate(n);
    const Eigen::Index s = keys.meas_side();
    require(s * s == keys.srm.measurements() * n, "encrypt: meas_side^2 must equal M*N");

    const ComplexField measured = keys.srm.forward(image);
    const ComplexField square = reshape_row_major(measured, s, s);
    const ComplexField scrambled = arnold(square, keys.arnold);
    CipherBundle out;
    out.side = n;
    out.meas_side = s;
    ComplexField cipher = drpe_encode(scrambled, keys.theta, keys.omega, keys.alpha, keys.beta);
    if (host != nullptr) {
        auto embedded = embed_host(cipher, *host, keys.gamma);
        out.hidden = quantize(embedded.hidden);
        out.embedding = embedded.meta;
    } else {
        out.field = std::move(cipher);
    }
    return out;
}

CipherBundle encrypt(const Image& image, const KeyBundle& keys, const Image* host)
{
    require(image.rows() == image.cols(), "encrypt: image must be square");
    return encrypt(image, KeyMaterial::derive(keys, image.rows()), host);
}

Measurements decrypt_measurements(const CipherBundle& cipher, const KeyMaterial& keys, const Image* host)
{
    const Eigen::Index n = keys.side();
    const Eigen::Index s = keys.meas_side();
    require(cipher.side == n && cipher.meas_side == s,
            "decrypt: cipher metadata (side " + std::to_string(cipher.side) + ", meas_side " +
                std::to_string(cipher.meas_side) + ") does not match keys (side " +
                std::to_string(n) + ", meas_side " + std::to_string(s) + ")");

    ComplexField field;
    if (cipher.host_embedded()) {
        const Image& h = require_host(host);
        field = extract_host(cipher.hidden, h, *cipher.embedding, s);
    } else {
        require(cipher.field.rows() == s && cipher.field.cols() == s, "decrypt: raw field shape mismatch");
        field = cipher.field;
    }
    const ComplexField scrambled = drpe_decode(field, keys.theta, keys.omega, keys.alpha, keys.beta);
    const ComplexField square = arnold_inverse(scrambled, keys.arnold);
    const auto g = std::gcd(keys.srm.measurements(), n);
    return Measurements{reshape_row_major(square, keys.srm.measurements(), n), n,
                        Rational{keys.srm.measurements() / g, n / g}};
}

Image decrypt(const CipherBundle& cipher, const KeyMaterial& keys, const SolverConfig& cfg,
              const Image* host, TwistResult* details)
{
    const Measurements meas = decrypt_measurements(cipher, keys, host);
    TwistResult result = twist_solve(meas, keys.srm, keys.wavelet, cfg);
    Image img = result.image;
    if (details != nullptr) *details = std::move(result);
    return img;
}

Image decrypt(const CipherBundle& cipher, const KeyBundle& keys, const SolverConfig& cfg,
              const Image* host, TwistResult* details)
{
    return decrypt(cipher, KeyMaterial::derive(keys, cipher.side), cfg, host, details);
}

double psnr(const Image& a, const Image& b)
{
    require(a.rows() == b.rows() && a.cols() == b.cols() && a.size() > 0,
            "psnr: images must have the same non-empty shape");
    const double mse = (a - b).squaredNorm() / static_cast<double>(a.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::string encode_cipher(const CipherBundle& c)
{
    std::string out(kCipherMagic);
    const bool host = c.host_embedded();
    put_u32(out, host ? kFlagHost : 0u);
    put_u32(out, static_cast<std::uint32_t>(c.side));
    put_u32(out, static_cast<std::uint32_t>(c.meas_side));
    put_u32(out, host ? static_cast<std::uint32_t>(c.hidden.rows()) : 0u);
    put_u32(out, host ? static_cast<std::uint32_t>(c.hidden.cols()) : 0u);
    const HostEmbedding meta = host ? *c.embedding : HostEmbedding{0.0, 0.0, 0.0, 0.0, 0.0};
    put_f64(out, meta.gamma);
    put_f64(out, meta.re_offset);
    put_f64(out, meta.re_scale);
    put_f64(out, meta.im_offset);
    put_f64(out, meta.im_scale);
    if (host) {
        for (Eigen::Index r = 0; r < c.hidden.rows(); ++r)
            for (Eigen::Index col = 0; col < c.hidden.cols(); ++col)
                out.push_back(static_cast<char>(quantize_pixel(c.hidden(r, col))));
    } else {
        require(c.field.rows() == c.meas_side && c.field.cols() == c.meas_side,
                "encode_cipher: field shape does not match meas_side");
        for (Eigen::Index r = 0; r < c.field.rows(); ++r)
            for (Eigen::Index col = 0; col < c.field.cols(); ++col) {
                put_f64(out, c.field(r, col).real());
                put_f64(out, c.field(r, col).imag());
            }
    }
    return out;
}

CipherBundle decode_cipher(const std::string& bytes)
{
    if (bytes.compare(0, kCipherMagic.size(), kCipherMagic) != 0)
        throw FormatError("cipher file: bad magic");
    Reader in(bytes);
    in.skip(kCipherMagic.size());
    const std::uint32_t flags = in.u32();
    if ((flags & ~kFlagHost) != 0) throw FormatError("cipher file: unknown flags");
    CipherBundle c;
    c.side = in.u32();
    c.meas_side = in.u32();
    const std::uint32_t host_rows = in.u32();
    const std::uint32_t host_cols = in.u32();
    HostEmbedding meta;
    meta.gamma = in.f64();
    meta.re_offset = in.f64();
    meta.re_scale = in.f64();
    meta.im_offset = in.f64();
    meta.im_scale = in.f64();
    if (c.side < 2 || c.meas_side < 1 || c.meas_side > (1u << 15))
        throw FormatError("cipher file: implausible dimensions");

    if (flags & kFlagHost) {
        try {
            meta.validate();
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("cipher file: ") + e.what());
        }
        if (host_rows == 0 || host_cols == 0 || host_rows > (1u << 15) || host_cols > (1u << 15))
            throw FormatError("cipher file: implausible host dimensions");
        c.embedding = meta;
        c.hidden.resize(host_rows, host_cols);
        for (Eigen::Index r = 0; r < c.hidden.rows(); ++r)
            for (Eigen::Index col = 0; col < c.hidden.cols(); ++col) c.hidden(r, col) = in.byte();
    } else {
        c.field.resize(c.meas_side, c.meas_side);
        for (Eigen::Index r = 0; r < c.field.rows(); ++r)
            for (Eigen::Index col = 0; col < c.field.cols(); ++col) {
                const double re = in.f64();
                c.field(r, col) = cplx(re, in.f64());
            }
    }
    if (!in.done()) throw FormatError("cipher file: trailing bytes");
    return c;
}

void write_cipher_file(const std::filesystem::path& path, const CipherBundle& cipher)
{
    write_file_atomic(path, encode_cipher(cipher));
}

CipherBundle read_cipher_file(const std::filesystem::path& path)
{
    return decode_cipher(read_file(path));
}

} // namespace srmcrypt
