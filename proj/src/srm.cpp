#include "srmcrypt/srm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/FFT>

#include "srmcrypt/rng.hpp"

namespace srmcrypt {

namespace {

bool is_permutation_of_range(const std::vector<Eigen::Index>& p)
{
    std::vector<char> seen(p.size(), 0);
    for (auto v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)])
            return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

class UnitaryFft {
public:
    explicit UnitaryFft(Eigen::Index n) : in_(static_cast<std::size_t>(n)), out_(in_.size()),
                                          scale_(1.0 / std::sqrt(static_cast<double>(n)))
    {
        fft_.SetFlag(Eigen::FFT<double>::Unscaled);
    }

    std::vector<cplx>& input() { return in_; }

    const std::vector<cplx>& forward()
    {
        fft_.fwd(out_, in_);
        for (auto& v : out_) v *= scale_;
        return out_;
    }

    const std::vector<cplx>& inverse()
    {
        fft_.inv(out_, in_);
        for (auto& v : out_) v *= scale_;
        return out_;
    }

private:
    Eigen::FFT<double> fft_;
    std::vector<cplx> in_;
    std::vector<cplx> out_;
    double scale_;
};

} // namespace

Eigen::Index measurement_count(Eigen::Index side, Rational rate)
{
    return static_cast<Eigen::Index>(scale_round(rate, side));
}

SrmOperator SrmOperator::from_seed(Eigen::Index side, Rational rate, std::uint64_t seed)
{
    require(side >= 2, "SRM side must be >= 2");
    require(rate.num > 0 && rate.num <= rate.den, "SRM rate must lie in (0,1], got " + rate.str());
    const Eigen::Index m = measurement_count(side, rate);
    require(m >= 1, "SRM rate " + rate.str() + " keeps no rows for side " + std::to_string(side));
    require(exact_sqrt(m * side) > 0,
            "M*N = " + std::to_string(m) + "*" + std::to_string(side) +
                " is not a perfect square (rate " + rate.str() + ")");

    Rng perm_rng(seed, "perm");
    const auto p = perm_rng.permutation(static_cast<std::size_t>(side));
    // The DC row is always kept: it is the only row invariant under P, and
    // without it every column mean lies in the null space of Phi.
    Rng row_rng(seed, "rows");
    const auto order = row_rng.permutation(static_cast<std::size_t>(side - 1));
    std::vector<Eigen::Index> rows{0};
    for (Eigen::Index k = 0; k + 1 < m; ++k) rows.push_back(static_cast<Eigen::Index>(order[k]) + 1);
    std::sort(rows.begin(), rows.end());
    return SrmOperator(std::vector<Eigen::Index>(p.begin(), p.end()), std::move(rows));
}

SrmOperator::SrmOperator(std::vector<Eigen::Index> permutation, std::vector<Eigen::Index> selected_rows)
    : permutation_(std::move(permutation)), rows_(std::move(selected_rows))
{
    require(permutation_.size() >= 2, "SRM side must be >= 2");
    require(is_permutation_of_range(permutation_), "SRM permutation is not a bijection on [0,N)");
    require(!rows_.empty(), "SRM must select at least one row");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        require(rows_[i] >= 0 && rows_[i] < side(), "SRM selected row out of range");
        require(i == 0 || rows_[i] > rows_[i - 1], "SRM selected rows must be strictly increasing");
    }
}

ComplexField SrmOperator::forward(const ComplexField& image) const
{
    const Eigen::Index n = side();
    require(image.rows() == n && image.cols() == n,
            "srm_forward: image must be " + std::to_string(n) + "x" + std::to_string(n));
    ComplexField y(measurements(), n);
    UnitaryFft fft(n);
    auto& in = fft.input();
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index i = 0; i < n; ++i) in[i] = image(permutation_[i], c);
        const auto& spectrum = fft.forward();
        for (Eigen::Index k = 0; k < measurements(); ++k) y(k, c) = spectrum[rows_[k]];
    }
    return y;
}

ComplexField SrmOperator::forward(const Image& image) const
{
    return forward(ComplexField(image.cast<cplx>()));
}

ComplexField SrmOperator::adjoint(const ComplexField& meas) const
{
    const Eigen::Index n = side();
    require(meas.rows() == measurements() && meas.cols() == n,
            "srm_adjoint: measurements must be " + std::to_string(measurements()) + "x" +
                std::to_string(n));
    ComplexField x(n, n);
    UnitaryFft fft(n);
    auto& in = fft.input();
    for (Eigen::Index c = 0; c < n; ++c) {
        std::fill(in.begin(), in.end(), cplx{});
        for (Eigen::Index k = 0; k < measurements(); ++k) in[rows_[k]] = meas(k, c);
        const auto& signal = fft.inverse();
        for (Eigen::Index i = 0; i < n; ++i) x(permutation_[i], c) = signal[i];
    }
    return x;
}

Eigen::MatrixXcd SrmOperator::dense() const
{
    const Eigen::Index n = side();
    return forward(ComplexField(ComplexField::Identity(n, n)));
}

Measurements srm_forward(const Image& image, const SrmOperator& op)
{
    const auto g = std::gcd(op.measurements(), op.side());
    return {op.forward(image), op.side(), Rational{op.measurements() / g, op.side() / g}};
}

ComplexField srm_adjoint(const Measurements& meas, const SrmOperator& op)
{
    require(meas.side == op.side(), "srm_adjoint: measurement side does not match operator");
    return op.adjoint(meas.values);
}

double coherence(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& psi)
{
    require(phi.cols() == psi.rows(), "coherence: phi columns must equal psi rows");
    require(phi.rows() > 0 && psi.cols() > 0, "coherence: empty matrix");
    Eigen::MatrixXcd rows = phi;
    for (Eigen::Index k = 0; k < rows.rows(); ++k) {
        const double norm = rows.row(k).norm();
        require(norm > 0.0, "coherence: zero row in phi");
        rows.row(k) /= norm;
    }
    Eigen::MatrixXcd cols = psi;
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
        const double norm = cols.col(j).norm();
        require(norm > 0.0, "coherence: zero column in psi");
        cols.col(j) /= norm;
    }
    const double max_inner = (rows * cols).cwiseAbs().maxCoeff();
    return std::sqrt(static_cast<double>(psi.rows())) * max_inner;
}

} // namespace srmcrypt
