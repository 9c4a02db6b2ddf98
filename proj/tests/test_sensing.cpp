#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "srmcrypt/srm.hpp"
#include "srmcrypt/wavelet.hpp"

using namespace srmcrypt;

namespace {

// Phi = D F P built from explicit 0/1 and DFT matrices.
Eigen::MatrixXcd dense_oracle(const SrmOperator& op)
{
    const Eigen::Index n = op.side();
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) p(i, op.permutation()[i]) = 1.0;
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(op.measurements(), n);
    for (Eigen::Index r = 0; r < op.measurements(); ++r) d(r, op.selected_rows()[r]) = 1.0;
    return d * oracle::dft(n) * p;
}

std::vector<Eigen::Index> iota(Eigen::Index n)
{
    std::vector<Eigen::Index> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = i;
    return v;
}

} // namespace

TEST(Srm, MeasurementCountForPaperShape)
{
    const auto op = SrmOperator::from_seed(512, Rational{1, 4}, 42);
    EXPECT_EQ(op.measurements(), 128);
    EXPECT_EQ(measurement_count(512, Rational{1, 4}), 128);
}

TEST(Srm, InvariantsOfKeyedOperator)
{
    const auto op = SrmOperator::from_seed(64, Rational{1, 4}, 3);
    std::set<Eigen::Index> seen(op.permutation().begin(), op.permutation().end());
    EXPECT_EQ(seen.size(), 64u);
    EXPECT_EQ(*seen.begin(), 0);
    EXPECT_EQ(*seen.rbegin(), 63);
    EXPECT_TRUE(std::is_sorted(op.selected_rows().begin(), op.selected_rows().end()));
    EXPECT_EQ(std::adjacent_find(op.selected_rows().begin(), op.selected_rows().end()),
              op.selected_rows().end());
    EXPECT_EQ(op.selected_rows().front(), 0);  // DC row is always kept
}

TEST(Srm, FullRateKeepsEveryRow)
{
    const auto op = SrmOperator::from_seed(8, Rational{1, 1}, 5);
    EXPECT_EQ(op.selected_rows(), iota(8));
}

TEST(Srm, RejectsBadRates)
{
    EXPECT_THROW(SrmOperator::from_seed(512, Rational{1, 3}, 1), std::invalid_argument);
    EXPECT_THROW(SrmOperator::from_seed(16, Rational{0, 1}, 1), std::invalid_argument);
    EXPECT_THROW(SrmOperator::from_seed(16, Rational{5, 4}, 1), std::invalid_argument);
    EXPECT_THROW(SrmOperator::from_seed(1, Rational{1, 1}, 1), std::invalid_argument);
}

TEST(Srm, DeterministicPerSeed)
{
    const auto a = SrmOperator::from_seed(64, Rational{1, 4}, 77);
    const auto b = SrmOperator::from_seed(64, Rational{1, 4}, 77);
    const auto c = SrmOperator::from_seed(64, Rational{1, 4}, 78);
    EXPECT_EQ(a.permutation(), b.permutation());
    EXPECT_EQ(a.selected_rows(), b.selected_rows());
    EXPECT_NE(a.permutation(), c.permutation());
}

TEST(Srm, IdentityHooksGiveColumnwiseDft)
{
    const SrmOperator op(iota(8), iota(8));
    const Image x = oracle::random_real(8, 8, 1);
    const Eigen::MatrixXcd want = oracle::dft(8) * x.cast<cplx>();
    EXPECT_LT((op.forward(x) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Srm, ParsevalAtFullRate)
{
    const auto op = SrmOperator::from_seed(32, Rational{1, 1}, 9);
    const Image x = oracle::random_real(32, 32, 2, 0.0, 255.0);
    EXPECT_NEAR(op.forward(x).norm(), x.norm(), 1e-10 * x.norm());
}

TEST(Srm, MatchesDenseOracle)
{
    for (Eigen::Index n : {4, 8, 16}) {
        const auto op = SrmOperator::from_seed(n, Rational{1, 4}, 11 + n);
        const Eigen::MatrixXcd phi = dense_oracle(op);
        EXPECT_LT((op.dense() - phi).cwiseAbs().maxCoeff(), 1e-12);
        const Eigen::MatrixXcd x = oracle::random_complex(n, n, 3);
        EXPECT_LT((op.forward(x) - phi * x).cwiseAbs().maxCoeff(), 1e-12);
        const Eigen::MatrixXcd y = oracle::random_complex(op.measurements(), n, 4);
        EXPECT_LT((op.adjoint(y) - phi.adjoint() * y).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Srm, AdjointIdentity)
{
    const auto op = SrmOperator::from_seed(16, Rational{1, 4}, 21);
    for (unsigned t = 0; t < 100; ++t) {
        const Eigen::MatrixXcd x = oracle::random_complex(16, 16, 1000 + t);
        const Eigen::MatrixXcd y = oracle::random_complex(op.measurements(), 16, 5000 + t);
        const cplx lhs = (op.forward(x).conjugate().array() * y.array()).sum();
        const cplx rhs = (x.conjugate().array() * op.adjoint(y).array()).sum();
        EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(lhs))) << t;
    }
}

TEST(Srm, UnitaryAtFullRate)
{
    const auto op = SrmOperator::from_seed(16, Rational{1, 1}, 31);
    const Eigen::MatrixXcd x = oracle::random_complex(16, 16, 6);
    EXPECT_LT((op.adjoint(op.forward(x)) - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Srm, MeasurementsWrappers)
{
    const auto op = SrmOperator::from_seed(16, Rational{1, 4}, 2);
    const Image x = oracle::random_real(16, 16, 7);
    const Measurements m = srm_forward(x, op);
    EXPECT_EQ(m.values.rows(), 4);
    EXPECT_EQ(m.side, 16);
    EXPECT_EQ(m.rate, (Rational{1, 4}));
    EXPECT_LT((srm_adjoint(m, op) - op.adjoint(m.values)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Srm, ShapeErrors)
{
    const auto op = SrmOperator::from_seed(16, Rational{1, 4}, 2);
    EXPECT_THROW(op.forward(Image(Image::Zero(8, 16))), std::invalid_argument);
    EXPECT_THROW(op.adjoint(Eigen::MatrixXcd::Zero(5, 16)), std::invalid_argument);
    EXPECT_THROW(SrmOperator({0, 0, 1}, {0}), std::invalid_argument);
    EXPECT_THROW(SrmOperator({0, 1, 2}, {2, 1}), std::invalid_argument);
}

// --- coherence --------------------------------------------------------------

TEST(Coherence, IdentityPairIsSqrtN)
{
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(9, 9);
    EXPECT_NEAR(coherence(eye, eye), 3.0, 1e-12);
}

TEST(Coherence, DftAgainstIdentityIsOne)
{
    EXPECT_NEAR(coherence(oracle::dft(4), Eigen::MatrixXcd::Identity(4, 4)), 1.0, 1e-12);
}

TEST(Coherence, ScrambledDftAgainstIdentityIsOne)
{
    const auto op = SrmOperator::from_seed(8, Rational{1, 1}, 4);
    EXPECT_NEAR(coherence(op.dense(), Eigen::MatrixXcd::Identity(8, 8)), 1.0, 1e-12);
}

TEST(Coherence, MatchesBruteForceEnumeration)
{
    for (Eigen::Index n : {2, 4, 8, 16}) {
        const Eigen::MatrixXcd a = oracle::random_complex(n, n, 40 + static_cast<unsigned>(n));
        const Eigen::MatrixXcd b = oracle::random_complex(n, n, 80 + static_cast<unsigned>(n));
        EXPECT_NEAR(coherence(a, b), oracle::brute_coherence(a, b), 1e-12) << n;
        WaveletSpec spec;
        spec.levels = n >= 8 ? 3 : 1;
        const Eigen::MatrixXcd w = wavelet_synthesis_matrix(n, spec).cast<cplx>();
        EXPECT_NEAR(coherence(oracle::dft(n), w), oracle::brute_coherence(oracle::dft(n), w), 1e-12);
    }
}

TEST(Coherence, BoundsForOrthonormalPairs)
{
    const Eigen::MatrixXcd f = oracle::dft(16);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(16, 16);
    const double mu = coherence(f * f, eye);  // f*f is a permutation matrix
    EXPECT_GE(mu, 1.0 - 1e-12);
    EXPECT_LE(mu, 4.0 + 1e-12);
}

TEST(Coherence, DimensionMismatch)
{
    EXPECT_THROW(coherence(Eigen::MatrixXcd::Identity(4, 4), Eigen::MatrixXcd::Identity(5, 5)),
                 std::invalid_argument);
}
