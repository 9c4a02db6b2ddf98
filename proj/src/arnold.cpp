#include "srmcrypt/arnold.hpp"

namespace srmcrypt {

namespace {

// Iterates (x,y) -> (a*x + b*y, c*x + d*y) mod N for every pixel.
std::vector<Eigen::Index> iterate_map(const ArnoldKey& key, Eigen::Index a, Eigen::Index b,
                                      Eigen::Index c, Eigen::Index d)
{
    const Eigen::Index n = key.side;
    const auto wrap = [n](Eigen::Index v) { return ((v % n) + n) % n; };
    std::vector<Eigen::Index> dest(static_cast<std::size_t>(n * n));
    for (Eigen::Index x0 = 0; x0 < n; ++x0)
        for (Eigen::Index y0 = 0; y0 < n; ++y0) {
            Eigen::Index x = x0, y = y0;
            for (std::int64_t it = 0; it < key.iterations; ++it) {
                const Eigen::Index nx = wrap(a * x + b * y);
                const Eigen::Index ny = wrap(c * x + d * y);
                x = nx;
                y = ny;
            }
            dest[static_cast<std::size_t>(x0 * n + y0)] = x * n + y;
        }
    return dest;
}

} // namespace

std::vector<Eigen::Index> arnold_destinations(const ArnoldKey& key)
{
    return iterate_map(key, 1, 1, 1, 2);
}

std::vector<Eigen::Index> arnold_inverse_destinations(const ArnoldKey& key)
{
    return iterate_map(key, 2, -1, -1, 1);
}

std::int64_t arnold_period(Eigen::Index side)
{
    require(side >= 1, "arnold_period: side must be >= 1");
    if (side == 1) return 1;
    // Period of the map equals the order of [[1,1],[1,2]] in GL2(Z_N).
    std::int64_t a = 1, b = 1, c = 1, d = 2;
    for (std::int64_t p = 1;; ++p) {
        if (a == 1 && b == 0 && c == 0 && d == 1) return p;
        const std::int64_t na = (a + c) % side, nb = (b + d) % side;
        const std::int64_t nc = (a + 2 * c) % side, nd = (b + 2 * d) % side;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
}

} // namespace srmcrypt
