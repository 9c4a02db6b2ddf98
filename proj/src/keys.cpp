#include "srmcrypt/keys.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "srmcrypt/image_io.hpp"
#include "srmcrypt/rng.hpp"

namespace srmcrypt {

namespace {

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t to_u64(const std::string& name, const std::string& v)
{
    if (v.empty() || v[0] == '-' || v[0] == '+') throw FormatError("key file: bad " + name);
    errno = 0;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (errno != 0 || *end != '\0') throw FormatError("key file: bad " + name + " '" + v + "'");
    return x;
}

std::int64_t to_i64(const std::string& name, const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || errno != 0 || *end != '\0')
        throw FormatError("key file: bad " + name + " '" + v + "'");
    return x;
}

double to_double(const std::string& name, const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || errno != 0 || *end != '\0' || !std::isfinite(x))
        throw FormatError("key file: bad " + name + " '" + v + "'");
    return x;
}

std::string rates_list(Eigen::Index side)
{
    std::string out;
    for (const auto& r : feasible_rates(side)) out += (out.empty() ? "" : ", ") + r.str();
    return out;
}

} // namespace

std::vector<Rational> feasible_rates(Eigen::Index side)
{
    std::vector<Rational> out;
    for (Eigen::Index m = 1; m <= side; ++m) {
        if (exact_sqrt(m * side) < 0) continue;
        const auto g = std::gcd(m, side);
        out.push_back({m / g, side / g});
    }
    return out;
}

void validate_keys(const KeyBundle& keys, Eigen::Index side)
{
    require(keys.version == 1, "unsupported key version " + std::to_string(keys.version));
    require(keys.prng_id == kPrngId, "unsupported PRNG '" + keys.prng_id + "'");
    require(keys.rate.num > 0 && keys.rate.num <= keys.rate.den,
            "rate must lie in (0,1], got " + keys.rate.str());
    require(keys.arnold_iterations >= 0, "arnold_iterations must be >= 0");
    FrftOrder{keys.alpha};
    FrftOrder{keys.beta};
    require(keys.gamma > 0.0 && keys.gamma <= 1.0, "gamma must lie in (0,1]");
    require(keys.wavelet_levels >= 1, "wavelet_levels must be >= 1");
    if (side <= 0) return;
    WaveletSpec{keys.wavelet_levels}.validate(side);
    const Eigen::Index m = measurement_count(side, keys.rate);
    require(m >= 1 && exact_sqrt(m * side) > 0,
            "rate " + keys.rate.str() + " is infeasible for side " + std::to_string(side) +
                " (M*N must be a perfect square); valid rates: " + rates_list(side));
}

KeyBundle keygen(Eigen::Index side, Rational rate, std::uint64_t master_seed)
{
    require(side >= 2, "keygen: side must be >= 2");
    KeyBundle keys;
    keys.rate = rate;
    Rng master(master_seed, "keygen");
    keys.srm_seed = master.next_u64();
    keys.theta_seed = master.next_u64();
    keys.omega_seed = master.next_u64();
    keys.alpha = master.uniform(0.3, 1.7);
    keys.beta = master.uniform(0.3, 1.7);
    keys.arnold_iterations = 1 + static_cast<std::int64_t>(master.below(50));
    validate_keys(keys, side);
    return keys;
}

std::string format_key_file(const KeyBundle& k)
{
    std::ostringstream out;
    out << kKeyFileMagic << '\n'
        << "version = " << k.version << '\n'
        << "prng_id = " << k.prng_id << '\n'
        << "srm_seed = " << k.srm_seed << '\n'
        << "rate = " << k.rate.str() << '\n'
        << "arnold_iterations = " << k.arnold_iterations << '\n'
        << "theta_seed = " << k.theta_seed << '\n'
        << "omega_seed = " << k.omega_seed << '\n'
        << "alpha = " << format_double(k.alpha) << '\n'
        << "beta = " << format_double(k.beta) << '\n'
        << "gamma = " << format_double(k.gamma) << '\n'
        << "wavelet_levels = " << k.wavelet_levels << '\n';
    return out.str();
}

KeyBundle parse_key_file(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != kKeyFileMagic)
        throw FormatError("key file: missing '" + std::string(kKeyFileMagic) + "' header");

    std::map<std::string, std::string> fields;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw FormatError("key file: expected 'name = value', got '" + t + "'");
        const std::string name = trim(t.substr(0, eq));
        if (!fields.emplace(name, trim(t.substr(eq + 1))).second)
            throw FormatError("key file: duplicate field '" + name + "'");
    }

    auto take = [&](const std::string& name) {
        auto it = fields.find(name);
        if (it == fields.end()) throw FormatError("key file: missing field '" + name + "'");
        std::string v = it->second;
        fields.erase(it);
        return v;
    };

    KeyBundle k;
    k.version = static_cast<int>(to_i64("version", take("version")));
    k.prng_id = take("prng_id");
    k.srm_seed = to_u64("srm_seed", take("srm_seed"));
    try {
        k.rate = Rational::parse(take("rate"));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("key file: ") + e.what());
    }
    k.arnold_iterations = to_i64("arnold_iterations", take("arnold_iterations"));
    k.theta_seed = to_u64("theta_seed", take("theta_seed"));
    k.omega_seed = to_u64("omega_seed", take("omega_seed"));
    k.alpha = to_double("alpha", take("alpha"));
    k.beta = to_double("beta", take("beta"));
    k.gamma = to_double("gamma", take("gamma"));
    k.wavelet_levels = static_cast<int>(to_i64("wavelet_levels", take("wavelet_levels")));
    if (!fields.empty()) throw FormatError("key file: unknown field '" + fields.begin()->first + "'");
    if (k.prng_id != kPrngId) throw FormatError("key file: unsupported prng_id '" + k.prng_id + "'");
    try {
        validate_keys(k);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("key file: ") + e.what());
    }
    return k;
}

KeyBundle read_key_file(const std::filesystem::path& path)
{
    return parse_key_file(read_file(path));
}

void write_key_file(const std::filesystem::path& path, const KeyBundle& keys)
{
    write_file_atomic(path, format_key_file(keys));
}

KeyMaterial KeyMaterial::derive(const KeyBundle& keys, Eigen::Index side)
{
    validate_keys(keys, side);
    SrmOperator srm = SrmOperator::from_seed(side, keys.rate, keys.srm_seed);
    const Eigen::Index s = exact_sqrt(srm.measurements() * side);
    return KeyMaterial{std::move(srm),
                       ArnoldKey(keys.arnold_iterations, s),
                       PhaseMask::from_seed(keys.theta_seed, s),
                       PhaseMask::from_seed(keys.omega_seed, s),
                       FrftOrder(keys.alpha),
                       FrftOrder(keys.beta),
                       keys.gamma,
                       WaveletSpec{keys.wavelet_levels}};
}

} // namespace srmcrypt
