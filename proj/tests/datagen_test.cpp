#include "pcakit/datagen.hpp"
#include "pcakit/error.hpp"
#include "pcakit/rng.hpp"
#include "pcakit/svd.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pcakit;

namespace {

SpringConfig short_spring(double noise, std::uint64_t seed) {
    SpringConfig cfg;
    cfg.duration = 20.0; // 2400 samples
    cfg.noise_sigma = noise;
    cfg.seed = seed;
    return cfg;
}

double angle_deg(const Vector& a, const Vector& b) {
    const double c = std::abs(dot(a, b)) / (norm(a) * norm(b));
    return std::acos(std::min(1.0, c)) * 180.0 / std::numbers::pi;
}

} // namespace

TEST(RngTest, SplitMixReferenceSequence) {
    // SplitMix64 from seed 0, as published with the algorithm.
    Rng rng(0);
    EXPECT_EQ(rng.next_u64(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next_u64(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next_u64(), 0x06C45D188009454FULL);
}

TEST(RngTest, UniformRangeAndNormalMoments) {
    Rng rng(99);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(SnrTest, Examples) {
    EXPECT_EQ(snr(4, 1), 4.0);
    EXPECT_EQ(snr(1, 1), 1.0);
    EXPECT_EQ(snr(0, 1), 0.0);
    EXPECT_THROW(snr(1, 0), DataError);
    EXPECT_THROW(snr(-1, 1), DataError);
}

TEST(SpringTest, DefaultsGive72000Samples) {
    const SpringConfig cfg;
    EXPECT_EQ(sample_count(cfg), 72000u);
    SpringConfig bad;
    bad.duration = 0.004; // 0.48 samples
    EXPECT_THROW(sample_count(bad), DataError);
}

TEST(SpringTest, DefaultCamerasAreOrthonormalAndSkewed) {
    for (const auto& cam : default_cameras()) {
        const double xx = cam.x[0] * cam.x[0] + cam.x[1] * cam.x[1] + cam.x[2] * cam.x[2];
        const double yy = cam.y[0] * cam.y[0] + cam.y[1] * cam.y[1] + cam.y[2] * cam.y[2];
        const double xy = cam.x[0] * cam.y[0] + cam.x[1] * cam.y[1] + cam.x[2] * cam.y[2];
        EXPECT_NEAR(xx, 1.0, 1e-15);
        EXPECT_NEAR(yy, 1.0, 1e-15);
        EXPECT_NEAR(xy, 0.0, 1e-15);
    }
}

TEST(SpringTest, RejectsInvalidGeometry) {
    SpringConfig cfg = short_spring(0.0, 1);
    cfg.motion_axis = {1.0, 1.0, 0.0};
    EXPECT_THROW(generate_spring(cfg), DataError);
    cfg = short_spring(0.0, 1);
    cfg.cameras[1].y = cfg.cameras[1].x;
    EXPECT_THROW(generate_spring(cfg), DataError);
}

TEST(SpringTest, NoiselessRecordingIsRankOne) {
    const Dataset d = generate_spring(short_spring(0.0, 1));
    ASSERT_EQ(d.m(), 6u);
    EXPECT_EQ(d.names(), (std::vector<std::string>{"xA", "yA", "xB", "yB", "xC", "yC"}));
    const PcaModel model = fit_eigen(d);
    EXPECT_LE(model.variances[1] / model.variances[0], 1e-18);
    EXPECT_NEAR(explained_variance_ratio(model)[0], 1.0, 1e-9);
    const Vector truth = spring_signal_direction(short_spring(0.0, 1));
    EXPECT_NEAR(std::abs(dot(model.components.row(0), truth)), 1.0, 1e-12);
}

TEST(SpringTest, StillBallIsAConstantDataset) {
    SpringConfig cfg = short_spring(0.0, 1);
    cfg.amplitude = 0.0;
    const Dataset d = generate_spring(cfg);
    EXPECT_THROW(fit_eigen(d), DataError);
}

TEST(SpringTest, NoiseForTargetSnr) {
    SpringConfig cfg;
    cfg.noise_sigma = spring_noise_sigma_for_snr(cfg, 100.0);
    cfg.seed = 12;
    const Dataset d = generate_spring(cfg);
    const PcaModel model = fit_eigen(d);
    EXPECT_GE(explained_variance_ratio(model)[0], 0.95);
    // Realized SNR along PC1 against the isotropic noise floor.
    const double noise = cfg.noise_sigma * cfg.noise_sigma;
    EXPECT_NEAR(snr(model.variances[0] - noise, noise), 100.0, 5.0);
}

// Zero noise: each camera sees a straight line through its own mean.
TEST(SpringProperty, CameraTracksAreLines) {
    const Dataset d = generate_spring(short_spring(0.0, 3));
    for (std::size_t cam = 0; cam < 3; ++cam) {
        std::vector<double> e;
        const auto x = d.data().row(2 * cam);
        const auto y = d.data().row(2 * cam + 1);
        e.insert(e.end(), x.begin(), x.end());
        e.insert(e.end(), y.begin(), y.end());
        const Dataset track = Dataset::unnamed(Matrix(2, d.n(), std::move(e)));
        const auto centered = center(track);
        const PcaModel model = fit_eigen(track);
        // Distance of each point from the best-fit line through the mean.
        const Vector normal = model.components.row(1);
        double worst = 0.0;
        for (std::size_t j = 0; j < d.n(); ++j) {
            worst = std::max(worst, std::abs(normal[0] * centered.data.data()(0, j) +
                                             normal[1] * centered.data.data()(1, j)));
        }
        EXPECT_LE(worst, 1e-12);
    }
}

TEST(DatagenProperty, SameSeedSameBits) {
    const Dataset a = generate_spring(short_spring(0.1, 5));
    const Dataset b = generate_spring(short_spring(0.1, 5));
    EXPECT_EQ(a.data(), b.data());
    EXPECT_NE(a.data(), generate_spring(short_spring(0.1, 6)).data());

    FailureConfig f;
    f.n = 500;
    f.seed = 4;
    f.noise_sigma = 0.05;
    EXPECT_EQ(generate_failure(f).data(), generate_failure(f).data());
    EXPECT_EQ(generate_correlated_pair(0.3, 100, 8).data(),
              generate_correlated_pair(0.3, 100, 8).data());
}

TEST(DatagenProperty, NoiseIsIsotropic) {
    // Zero amplitude leaves only noise.
    SpringConfig cfg = short_spring(0.3, 77);
    cfg.amplitude = 0.0;
    cfg.duration = 100.0; // 12000 samples
    const Dataset d = generate_spring(cfg);
    const Matrix c = covariance_matrix(center(d).data, Normalization::sample);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_NEAR(std::sqrt(c(i, i)), cfg.noise_sigma, 0.05 * cfg.noise_sigma);
    }
}

TEST(CorrelatedPairTest, PerfectRedundancyIsRankOne) {
    const Dataset d = generate_correlated_pair(1.0, 500, 1);
    const Matrix c = covariance_matrix(center(d).data);
    const auto f = svd(c);
    EXPECT_EQ(f.rank, 1u);
}

TEST(CorrelatedPairTest, IndependentRowsAreUncorrelated) {
    const Dataset d = generate_correlated_pair(0.0, 10000, 2);
    const Matrix c = covariance_matrix(center(d).data);
    EXPECT_LE(std::abs(c(0, 1) / std::sqrt(c(0, 0) * c(1, 1))), 0.05);
}

TEST(CorrelatedPairTest, AntiCorrelatedLine) {
    const Dataset d = generate_correlated_pair(-1.0, 500, 3);
    const PcaModel model = fit_eigen(d);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(dot(model.components.row(0), Vector{h, -h})), 1.0, 1e-12);
    EXPECT_EQ(model.variances[1], 0.0);
}

TEST(CorrelatedPairTest, EmpiricalCorrelationTracksRho) {
    for (const double rho : {-0.7, 0.2, 0.9}) {
        const Dataset d = generate_correlated_pair(rho, 20000, 11);
        const Matrix c = covariance_matrix(center(d).data);
        EXPECT_NEAR(c(0, 1) / std::sqrt(c(0, 0) * c(1, 1)), rho, 0.03);
    }
    EXPECT_THROW(generate_correlated_pair(1.5, 10, 1), DataError);
    EXPECT_THROW(generate_correlated_pair(0.5, 2, 1), DataError);
}

TEST(FailureTest, FerrisWheelHasNoDominantDirection) {
    FailureConfig cfg;
    cfg.n = 10000;
    cfg.seed = 1;
    cfg.radius = 2.0;
    const Dataset d = generate_failure(cfg);
    const PcaModel model = fit_eigen(d);
    const double ratio = model.variances[0] / model.variances[1];
    EXPECT_GE(ratio, 0.9);
    EXPECT_LE(ratio, 1.1);
    // Circle covariance is (r^2 / 2) I.
    EXPECT_NEAR(model.variances[0], 2.0, 0.1);

    const Matrix y = project(model, d);
    const Matrix rank1 = reconstruct(model, y, 1);
    const double err = frobenius_norm(subtract(d.data(), rank1));
    EXPECT_GE(err, 0.4 * frobenius_norm(center(d).data.data()));
}

TEST(FailureTest, NonOrthogonalAxesMislead) {
    FailureConfig cfg;
    cfg.kind = FailureKind::non_orthogonal;
    cfg.n = 10000;
    cfg.seed = 2;
    cfg.noise_sigma = 0.05;
    const Dataset d = generate_failure(cfg);
    const PcaModel model = fit_eigen(d);
    const Vector pc1 = model.components.row(0);
    const Vector axis1{1.0, 0.0};
    const Vector axis2{std::sqrt(0.5), std::sqrt(0.5)};
    EXPECT_GE(angle_deg(pc1, axis1), 5.0);
    EXPECT_GE(angle_deg(pc1, axis2), 5.0);
}

TEST(FailureTest, Validation) {
    FailureConfig cfg;
    cfg.n = 2;
    EXPECT_THROW(generate_failure(cfg), DataError);
    cfg.n = 10;
    cfg.radius = 0.0;
    EXPECT_THROW(generate_failure(cfg), DataError);
    cfg.kind = FailureKind::non_orthogonal;
    cfg.weight1 = 1.5;
    EXPECT_THROW(generate_failure(cfg), DataError);
}
