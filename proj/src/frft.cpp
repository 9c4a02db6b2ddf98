#include "srmcrypt/frft.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace srmcrypt {

FrftOrder::FrftOrder(double value) : value_(value)
{
    require(std::isfinite(value) && std::abs(value) <= 2.0,
            "FRFT order must be finite with |order| <= 2, got " + std::to_string(value));
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

// Orthonormal eigenvectors of the DFT-commuting matrix S, split by parity
// about index 0 and sorted by descending eigenvalue. Column j of `even`
// carries Hermite index 2j, column j of `odd` index 2j + 1.
struct HermiteBasis {
    MatrixXd even;
    MatrixXd odd;
};

HermiteBasis build_basis(Index n)
{
    const double pi = std::numbers::pi;
    MatrixXd s = MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        s(i, i) = 2.0 * std::cos(2.0 * pi * static_cast<double>(i) / static_cast<double>(n)) - 4.0;
        s(i, (i + 1) % n) += 1.0;
        s((i + 1) % n, i) += 1.0;
    }

    // Parity projections: even vectors satisfy v[k] = v[n-k], odd v[k] = -v[n-k].
    const Index half = n / 2;
    const Index n_even = half + 1;
    const Index n_odd = n - n_even;
    const double r = std::numbers::sqrt2 / 2.0;
    MatrixXd pe = MatrixXd::Zero(n, n_even);
    MatrixXd po = MatrixXd::Zero(n, n_odd);
    pe(0, 0) = 1.0;
    for (Index k = 1; k < n_even; ++k) {
        if (2 * k == n) {
            pe(k, k) = 1.0;
        } else {
            pe(k, k) = r;
            pe(n - k, k) = r;
        }
    }
    for (Index k = 1; k <= n_odd; ++k) {
        po(k, k - 1) = r;
        po(n - k, k - 1) = -r;
    }

    auto sorted_vectors = [&](const MatrixXd& p) -> MatrixXd {
        if (p.cols() == 0) return MatrixXd(n, 0);
        const MatrixXd reduced = p.transpose() * s * p;
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver(reduced);
        // Ascending eigenvalues; Hermite order is descending.
        return p * solver.eigenvectors().rowwise().reverse();
    };
    return {sorted_vectors(pe), sorted_vectors(po)};
}

Eigen::MatrixXcd build_matrix(const HermiteBasis& basis, Index n, double order)
{
    const double pi = std::numbers::pi;
    const Index c = n / 2;
    const auto phase = [&](Index k) {
        return std::polar(1.0, -pi * static_cast<double>(k) * order / 2.0);
    };
    Eigen::MatrixXcd vd(n, n);
    Eigen::MatrixXd v(n, n);
    for (Index j = 0; j < basis.even.cols(); ++j) {
        v.col(j) = basis.even.col(j);
        vd.col(j) = basis.even.col(j).cast<cplx>() * phase(2 * j);
    }
    for (Index j = 0; j < basis.odd.cols(); ++j) {
        const Index col = basis.even.cols() + j;
        v.col(col) = basis.odd.col(j);
        vd.col(col) = basis.odd.col(j).cast<cplx>() * phase(2 * j + 1);
    }
    const Eigen::MatrixXcd plain = vd * v.transpose().cast<cplx>();

    // Conjugate by the circular shift that moves index 0 to the center.
    Eigen::MatrixXcd centered(n, n);
    for (Index m = 0; m < n; ++m)
        for (Index k = 0; k < n; ++k)
            centered(m, k) = plain((m - c + n) % n, (k - c + n) % n);
    return centered;
}

class FrftCache {
public:
    std::shared_ptr<const Eigen::MatrixXcd> get(Index n, double order)
    {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, std::bit_cast<std::uint64_t>(order));
        if (auto it = matrices_.find(key); it != matrices_.end()) return it->second;

        auto basis_it = bases_.find(n);
        if (basis_it == bases_.end()) basis_it = bases_.emplace(n, build_basis(n)).first;

        if (matrices_.size() >= kMaxMatrices) matrices_.clear();
        auto m = std::make_shared<const Eigen::MatrixXcd>(build_matrix(basis_it->second, n, order));
        matrices_.emplace(key, m);
        return m;
    }

private:
    static constexpr std::size_t kMaxMatrices = 32;
    std::mutex mutex_;
    std::map<Index, HermiteBasis> bases_;
    std::map<std::pair<Index, std::uint64_t>, std::shared_ptr<const Eigen::MatrixXcd>> matrices_;
};

FrftCache& cache()
{
    static FrftCache instance;
    return instance;
}

} // namespace

std::shared_ptr<const Eigen::MatrixXcd> frft_matrix(Index n, FrftOrder order)
{
    require(n >= 2, "FRFT length must be at least 2");
    if (order.value() == 0.0) {
        return std::make_shared<const Eigen::MatrixXcd>(Eigen::MatrixXcd::Identity(n, n));
    }
    return cache().get(n, order.value());
}

Eigen::VectorXcd frft1(const Eigen::VectorXcd& signal, FrftOrder order)
{
    require(signal.size() >= 2, "frft1: signal length must be at least 2");
    if (order.value() == 0.0) return signal;
    return *frft_matrix(signal.size(), order) * signal;
}

ComplexField frft2(const ComplexField& field, FrftOrder order_rows, FrftOrder order_cols)
{
    require(field.rows() == field.cols(), "frft2: field must be square");
    require(field.rows() >= 2, "frft2: field side must be at least 2");
    ComplexField out = field;
    if (order_rows.value() != 0.0) out = out * frft_matrix(out.cols(), order_rows)->transpose();
    if (order_cols.value() != 0.0) out = *frft_matrix(out.rows(), order_cols) * out;
    return out;
}

} // namespace srmcrypt
