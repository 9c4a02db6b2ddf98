#include "srmcrypt/image_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace srmcrypt {

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(const std::string& s, std::size_t& pos)
{
    while (pos < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        } else if (s[pos] == '#') {
            while (pos < s.size() && s[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    const std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw FormatError("PGM: truncated header");
    return s.substr(start, pos - start);
}

int header_int(const std::string& s, std::size_t& pos, const char* what)
{
    const std::string tok = next_token(s, pos);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw FormatError("");
        return v;
    } catch (const std::exception&) {
        throw FormatError(std::string("PGM: bad ") + what + " '" + tok + "'");
    }
}

} // namespace

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw FormatError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw FormatError("cannot rename onto " + path.string());
    }
}

Image parse_pgm(const std::string& s)
{
    std::size_t pos = 0;
    if (next_token(s, pos) != "P5") throw FormatError("PGM: expected P5 magic");
    const int width = header_int(s, pos, "width");
    const int height = header_int(s, pos, "height");
    const int maxval = header_int(s, pos, "maxval");
    if (width <= 0 || height <= 0) throw FormatError("PGM: non-positive dimensions");
    if (maxval <= 0 || maxval > 255) throw FormatError("PGM: only 8-bit maxval supported");
    if (pos >= s.size() || !std::isspace(static_cast<unsigned char>(s[pos])))
        throw FormatError("PGM: missing header terminator");
    ++pos;
    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (s.size() - pos < count) throw FormatError("PGM: truncated pixel data");
    Image img(height, width);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            img(r, c) = static_cast<unsigned char>(s[pos + static_cast<std::size_t>(r) * width + c]);
    return img;
}

Image read_pgm(const std::filesystem::path& path)
{
    return parse_pgm(read_file(path));
}

std::uint8_t quantize_pixel(double v)
{
    if (!(v > 0.0)) return 0;
    if (v >= 255.0) return 255;
    return static_cast<std::uint8_t>(std::lround(v));
}

Image quantize(const Image& image)
{
    return image.unaryExpr([](double v) { return static_cast<double>(quantize_pixel(v)); });
}

std::string encode_pgm(const Image& image)
{
    std::string out = "P5\n" + std::to_string(image.cols()) + " " + std::to_string(image.rows()) +
                      "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(image.size()));
    for (Eigen::Index r = 0; r < image.rows(); ++r)
        for (Eigen::Index c = 0; c < image.cols(); ++c)
            out.push_back(static_cast<char>(quantize_pixel(image(r, c))));
    return out;
}

void write_pgm(const std::filesystem::path& path, const Image& image)
{
    write_file_atomic(path, encode_pgm(image));
}

} // namespace srmcrypt
