#include "srmcrypt/common.hpp"

#include <charconv>
#include <cmath>

namespace srmcrypt {

namespace {

std::int64_t parse_int(std::string_view s)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
}

} // namespace

Rational Rational::parse(const std::string& text)
{
    const auto slash = text.find('/');
    Rational r;
    if (slash == std::string::npos) {
        r.num = parse_int(text);
        r.den = 1;
    } else {
        r.num = parse_int(std::string_view(text).substr(0, slash));
        r.den = parse_int(std::string_view(text).substr(slash + 1));
    }
    require(r.den > 0, "rational denominator must be positive: '" + text + "'");
    return r;
}

std::string Rational::str() const
{
    return std::to_string(num) + "/" + std::to_string(den);
}

std::int64_t scale_round(const Rational& r, std::int64_t n)
{
    // floor((2*num*n + den) / (2*den))
    const std::int64_t twice = 2 * r.num * n + r.den;
    const std::int64_t q = twice / (2 * r.den);
    return (twice % (2 * r.den) < 0) ? q - 1 : q;
}

std::int64_t exact_sqrt(std::int64_t v)
{
    if (v < 0) return -1;
    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
    while (s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s * s == v ? s : -1;
}

} // namespace srmcrypt
