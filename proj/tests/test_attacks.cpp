#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srmcrypt/attacks.hpp"
#include "srmcrypt/image_io.hpp"

using namespace srmcrypt;

namespace {

CipherBundle raw_cipher(Eigen::Index n, std::uint64_t seed = 1)
{
    return encrypt(oracle::random_real(n, n, 5, 0.0, 255.0), keygen(n, Rational{1, 4}, seed));
}

Image small_image()
{
    Image x(32, 32);
    for (Eigen::Index r = 0; r < 32; ++r)
        for (Eigen::Index c = 0; c < 32; ++c) x(r, c) = (r / 8 + c / 8) % 2 ? 200.0 : 50.0 + 3.0 * r;
    return x;
}

} // namespace

TEST(Noise, ZeroStrengthIsBitExactIdentity)
{
    const CipherBundle c = raw_cipher(16);
    EXPECT_EQ(encode_cipher(add_noise(c, 0.0, 3)), encode_cipher(c));
}

TEST(Noise, DeterministicPerSeed)
{
    const CipherBundle c = raw_cipher(16);
    EXPECT_EQ(add_noise(c, 1.0, 3), add_noise(c, 1.0, 3));
    EXPECT_FALSE(add_noise(c, 1.0, 3) == add_noise(c, 1.0, 4));
}

TEST(Noise, AddedEnergyMatchesUniformMoments)
{
    // each of re, im gains s*U with E[U^2] = 1/3, so E||d||^2 = 2 s^2 S^2 / 3
    const CipherBundle c = raw_cipher(64);
    const double s = 2.0;
    const auto count = static_cast<double>(c.field.size());
    double mean = 0.0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) mean += (add_noise(c, s, 100 + t).field - c.field).squaredNorm();
    mean /= trials;
    const double want = 2.0 * s * s * count / 3.0;
    EXPECT_NEAR(mean, want, 0.05 * want);
    // and the mean shift per component is s/2
    const Eigen::MatrixXcd d = add_noise(c, s, 7).field - c.field;
    EXPECT_NEAR(d.real().mean(), s / 2, 0.05 * s);
    EXPECT_NEAR(d.imag().mean(), s / 2, 0.05 * s);
}

TEST(Noise, HostRasterStaysEightBit)
{
    const Image host = quantize(oracle::random_real(8, 16, 2, 0.0, 255.0));
    const CipherBundle c = encrypt(oracle::random_real(16, 16, 3, 0.0, 255.0), keygen(16, Rational{1, 4}, 1), &host);
    const CipherBundle n = add_noise(c, 10.0, 1);
    EXPECT_EQ(n.hidden, quantize(n.hidden));
    EXPECT_GE(n.hidden.minCoeff(), 0.0);
    EXPECT_LE(n.hidden.maxCoeff(), 255.0);
    EXPECT_GT((n.hidden - c.hidden).cwiseAbs().sum(), 0.0);
}

TEST(Noise, NegativeStrengthRejected)
{
    EXPECT_THROW(add_noise(raw_cipher(16), -0.1, 1), std::invalid_argument);
}

TEST(Crop, SinglePixel)
{
    const CipherBundle c = raw_cipher(16);  // 8x8 field
    const CipherBundle d = crop_pixels(c, 1.0 / 64.0);
    const Eigen::MatrixXcd diff = d.field - c.field;
    EXPECT_EQ((diff.array() != cplx{}).count(), 1);
    EXPECT_EQ(d.field(0, 0), cplx{});
}

TEST(Crop, DefaultRegionIsTopLeftBlock)
{
    const CipherBundle c = raw_cipher(64);  // 32x32 field
    const CipherBundle d = crop_pixels(c, 0.25);
    EXPECT_TRUE((d.field.topLeftCorner(16, 16).array() == cplx{}).all());
    EXPECT_EQ((d.field.array() == cplx{}).count(), 256);
}

TEST(Crop, CustomRegion)
{
    const CipherBundle c = raw_cipher(16);
    const CipherBundle d = crop_pixels(c, 0.25, Region{2, 1, 4, 4});
    EXPECT_TRUE((d.field.block(2, 1, 4, 4).array() == cplx{}).all());
    EXPECT_EQ(d.field(0, 0), c.field(0, 0));
}

TEST(Crop, RegionErrors)
{
    const CipherBundle c = raw_cipher(16);
    EXPECT_THROW(crop_pixels(c, 0.25, Region{6, 6, 4, 4}), std::invalid_argument);
    EXPECT_THROW(crop_pixels(c, 0.25, Region{0, 0, 2, 2}), std::invalid_argument);
    EXPECT_THROW(crop_pixels(c, 0.0), std::invalid_argument);
    EXPECT_THROW(crop_pixels(c, 1.0), std::invalid_argument);
    EXPECT_THROW(crop_pixels(c, 0.001), std::invalid_argument);
}

TEST(PerturbKey, ChangesExactlyOneKey)
{
    const KeyBundle k = keygen(64, Rational{1, 4}, 1);
    EXPECT_NE(perturb_key(k, 1).srm_seed, k.srm_seed);
    EXPECT_EQ(perturb_key(k, 2).arnold_iterations, k.arnold_iterations + 1);
    EXPECT_NE(perturb_key(k, 3).theta_seed, k.theta_seed);
    EXPECT_NE(perturb_key(k, 4).omega_seed, k.omega_seed);
    for (int w = 1; w <= 4; ++w) {
        KeyBundle p = perturb_key(k, w);
        p.srm_seed = k.srm_seed;
        p.arnold_iterations = k.arnold_iterations;
        p.theta_seed = k.theta_seed;
        p.omega_seed = k.omega_seed;
        EXPECT_EQ(p, k) << w;
    }
    EXPECT_THROW(perturb_key(k, 0), std::invalid_argument);
    EXPECT_THROW(perturb_key(k, 5), std::invalid_argument);
    const KeyBundle o = perturb_orders(k);
    EXPECT_DOUBLE_EQ(o.alpha, k.alpha + 0.1);
    EXPECT_DOUBLE_EQ(o.beta, k.beta + 0.1);
}

TEST(PerturbKey, UnperturbedCopyDecryptsIdentically)
{
    const KeyBundle k = keygen(32, Rational{1, 4}, 2);
    const Image x = small_image();
    const CipherBundle c = encrypt(x, k);
    const KeyBundle copy = k;
    EXPECT_EQ(decrypt(c, k, SolverConfig{}), decrypt(c, copy, SolverConfig{}));
}

TEST(AttackSpec, Validation)
{
    EXPECT_THROW((AttackSpec{AttackKind::noise, -1.0, std::nullopt, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((AttackSpec{AttackKind::crop, 1.5, std::nullopt, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((AttackSpec{AttackKind::wrong_key, 2.5, std::nullopt, 1}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((AttackSpec{AttackKind::wrong_key, 4.0, std::nullopt, 1}.validate()));
}

TEST(Bench, EmptyListGivesBaselineRow)
{
    const auto rows = run_bench(small_image(), keygen(32, Rational{1, 4}, 3), {}, SolverConfig{});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].attack, "none");
    EXPECT_GT(rows[0].psnr_db, 15.0);
}

TEST(Bench, PaperSuiteShape)
{
    const auto suite = paper_suite();
    ASSERT_EQ(suite.size(), 10u);
    EXPECT_EQ(suite[0].kind, AttackKind::noise);
    EXPECT_EQ(suite[0].strength, 1.0);
    EXPECT_EQ(suite[4].strength, 0.75);
    EXPECT_EQ(suite[8].strength, 4.0);
    EXPECT_EQ(suite[9].kind, AttackKind::wrong_orders);
}

TEST(Bench, DeterministicAndOrdered)
{
    const KeyBundle k = keygen(32, Rational{1, 4}, 4);
    const std::vector<AttackSpec> attacks{{AttackKind::crop, 0.5, std::nullopt, 1},
                                          {AttackKind::noise, 1.0, std::nullopt, 9},
                                          {AttackKind::noise, 1.0, std::nullopt, 9}};
    const auto a = run_bench(small_image(), k, attacks, SolverConfig{}, nullptr, false);
    const auto b = run_bench(small_image(), k, attacks, SolverConfig{}, nullptr, false);
    EXPECT_EQ(format_bench_csv(a), format_bench_csv(b));
    ASSERT_EQ(a.size(), 4u);
    EXPECT_EQ(a[1].attack, "crop");
    EXPECT_EQ(a[2].attack, "noise");
    EXPECT_EQ(a[2].psnr_db, a[3].psnr_db);  // duplicate seeds
}

TEST(Bench, CsvFormat)
{
    const std::vector<BenchRow> rows{{"none", "0", 29.41234, 1.5}, {"crop", "0.2", 17.0, 0.25}};
    EXPECT_EQ(format_bench_csv(rows),
              "attack,param,psnr_db,seconds\nnone,0,29.4123,1.5000\ncrop,0.2,17.0000,0.2500\n");
}
