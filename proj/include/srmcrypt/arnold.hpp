#pragma once

#include <cstdint>
#include <vector>

#include "srmcrypt/common.hpp"

namespace srmcrypt {

// Cat-map scrambling key. The map matrix is fixed to [[1,1],[1,2]].
struct ArnoldKey {
    std::int64_t iterations = 0;
    Eigen::Index side = 1;

    ArnoldKey(std::int64_t iterations_, Eigen::Index side_) : iterations(iterations_), side(side_)
    {
        require(iterations >= 0, "Arnold iterations must be >= 0");
        require(side >= 1, "Arnold side must be >= 1");
    }
};

// Destination linear index (row-major, r * side + c) of every source pixel
// after key.iterations forward applications of (x,y) -> (x+y, x+2y) mod N.
std::vector<Eigen::Index> arnold_destinations(const ArnoldKey& key);

// Same for the inverse map (x,y) -> (2x-y, y-x) mod N.
std::vector<Eigen::Index> arnold_inverse_destinations(const ArnoldKey& key);

// Smallest p >= 1 for which p applications are the identity permutation.
std::int64_t arnold_period(Eigen::Index side);

template <typename Derived>
auto arnold(const Eigen::MatrixBase<Derived>& field, const ArnoldKey& key)
{
    using Scalar = typename Derived::Scalar;
    require(field.rows() == key.side && field.cols() == key.side,
            "arnold: field side must equal key side " + std::to_string(key.side));
    const Eigen::Index n = key.side;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
    const auto dest = arnold_destinations(key);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y) {
            const Eigen::Index d = dest[static_cast<std::size_t>(x * n + y)];
            out(d / n, d % n) = field(x, y);
        }
    return out;
}

template <typename Derived>
auto arnold_inverse(const Eigen::MatrixBase<Derived>& field, const ArnoldKey& key)
{
    using Scalar = typename Derived::Scalar;
    require(field.rows() == key.side && field.cols() == key.side,
            "arnold_inverse: field side must equal key side " + std::to_string(key.side));
    const Eigen::Index n = key.side;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
    const auto dest = arnold_inverse_destinations(key);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y) {
            const Eigen::Index d = dest[static_cast<std::size_t>(x * n + y)];
            out(d / n, d % n) = field(x, y);
        }
    return out;
}

} // namespace srmcrypt
