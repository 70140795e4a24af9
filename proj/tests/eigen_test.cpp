#include "pcakit/eigen.hpp"
#include "pcakit/error.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pcakit;
namespace pt = pcakit::testing;

namespace {

Matrix rebuild(const EigenDecomposition& ed) {
    const Matrix d = Matrix::diagonal(ed.eigenvalues);
    return multiply(multiply(ed.eigenvectors, d), transpose(ed.eigenvectors));
}

} // namespace

TEST(JacobiTest, Identity) {
    const auto ed = jacobi_eigen_symmetric(Matrix::identity(3));
    EXPECT_EQ(ed.eigenvalues, (Vector{1, 1, 1}));
    EXPECT_EQ(ed.eigenvectors, Matrix::identity(3));
}

TEST(JacobiTest, DiagonalIsSortedWithPermutedIdentity) {
    const std::vector<double> d{5, 2, 9};
    const auto ed = jacobi_eigen_symmetric(Matrix::diagonal(d));
    EXPECT_EQ(ed.eigenvalues, (Vector{9, 5, 2}));
    EXPECT_EQ(ed.eigenvectors, (Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
}

TEST(JacobiTest, TwoByTwoByHand) {
    // det([[2-l, 1], [1, 2-l]]) = (l - 3)(l - 1)
    const auto ed = jacobi_eigen_symmetric(Matrix{{2, 1}, {1, 2}});
    EXPECT_NEAR(ed.eigenvalues[0], 3.0, 1e-14);
    EXPECT_NEAR(ed.eigenvalues[1], 1.0, 1e-14);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(ed.eigenvectors(0, 0), h, 1e-14);
    EXPECT_NEAR(ed.eigenvectors(1, 0), h, 1e-14);
    EXPECT_NEAR(ed.eigenvectors(0, 1), h, 1e-14);
    EXPECT_NEAR(ed.eigenvectors(1, 1), -h, 1e-14);
}

TEST(JacobiTest, ThreeByThreeGolden) {
    // Reference eigenpairs computed at 40 digits (mpmath), signs flipped to the
    // largest-entry-positive convention. The stopping rule leaves off-diagonal
    // mass up to 1e-12 of the start, so vectors agree to about that level.
    const auto ed = jacobi_eigen_symmetric(Matrix{{4, 1, 2}, {1, 3, 0}, {2, 0, 5}});
    const Vector expected{6.669079088282288396, 3.476023602918134034, 1.854897308799577570};
    const Matrix vectors{{0.6311789687764831332, 0.3743619547830715106, 0.6793130619863369386},
                         {0.1720265367929081931, 0.7864356987513785707, -0.5932333119173847757},
                         {0.7563200248659911912, -0.4912962635115684001, -0.4319814827585529857}};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(ed.eigenvalues[i], expected[i], 1e-13);
    }
    EXPECT_LE(max_abs_diff(ed.eigenvectors, vectors), 1e-12);
}

TEST(JacobiTest, RejectsBadInput) {
    EXPECT_THROW(jacobi_eigen_symmetric(Matrix(2, 3)), DimensionError);
    EXPECT_THROW(jacobi_eigen_symmetric(Matrix{{1, 2}, {2.001, 1}}), DataError);
    // Asymmetry within 1e-10 is accepted.
    EXPECT_NO_THROW(jacobi_eigen_symmetric(Matrix{{1, 2}, {2 + 1e-11, 1}}));
}

TEST(JacobiTest, NonConvergenceCarriesResidual) {
    std::mt19937_64 gen(9);
    JacobiOptions opts;
    opts.max_sweeps = 1;
    try {
        jacobi_eigen_symmetric(pt::random_symmetric(gen, 6), opts);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_GT(e.residual(), 0.0);
    }
}

TEST(JacobiTest, ClampsRoundoffNegativeEigenvalues) {
    const std::vector<double> d{4.0, -1e-14, 1.0};
    JacobiOptions opts;
    opts.clamp_psd = true;
    const auto ed = jacobi_eigen_symmetric(Matrix::diagonal(d), opts);
    EXPECT_EQ(ed.eigenvalues, (Vector{4.0, 1.0, 0.0}));
    // Genuinely negative values are left alone.
    const std::vector<double> e{4.0, -1.0};
    EXPECT_EQ(jacobi_eigen_symmetric(Matrix::diagonal(e), opts).eigenvalues, (Vector{4.0, -1.0}));
}

// Closed form for 2x2 symmetric [[a, b], [b, c]]:
//   lambda = (a + c)/2 +- sqrt(((a - c)/2)^2 + b^2)
TEST(JacobiProperty, MatchesTwoByTwoClosedForm) {
    std::mt19937_64 gen(21);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 100; ++trial) {
        const double a = dist(gen), b = dist(gen), c = dist(gen);
        const double mid = 0.5 * (a + c);
        const double rad = std::hypot(0.5 * (a - c), b);
        const auto ed = jacobi_eigen_symmetric(Matrix{{a, b}, {b, c}});
        EXPECT_NEAR(ed.eigenvalues[0], mid + rad, 1e-12 * (1 + std::abs(mid) + rad));
        EXPECT_NEAR(ed.eigenvalues[1], mid - rad, 1e-12 * (1 + std::abs(mid) + rad));
    }
}

TEST(JacobiProperty, DecompositionInvariants) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const Matrix a = pt::random_symmetric(gen, n);
        const auto ed = jacobi_eigen_symmetric(a);

        // Reconstruction A = E D E^T.
        const Matrix r = rebuild(ed);
        EXPECT_LE(frobenius_norm(subtract(a, r)), 1e-9 * frobenius_norm(a));
        // Rebuilt matrix is symmetric.
        EXPECT_LE(asymmetry(r), 1e-12);
        // Inverse is the transpose.
        const Matrix ete = multiply(transpose(ed.eigenvectors), ed.eigenvectors);
        EXPECT_LE(max_abs_diff(ete, Matrix::identity(n)), 1e-10);
        EXPECT_TRUE(is_orthogonal(ed.eigenvectors, 1e-10));

        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) {
                EXPECT_GE(ed.eigenvalues[i - 1], ed.eigenvalues[i]);
            }
            const Vector e = ed.eigenvectors.column(i);
            const Vector ae = multiply(a, e);
            double resid = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                resid = std::max(resid, std::abs(ae[k] - ed.eigenvalues[i] * e[k]));
            }
            EXPECT_LE(resid, 1e-9 * (1 + std::abs(ed.eigenvalues[i])));
            for (std::size_t j = i + 1; j < n; ++j) {
                EXPECT_LE(std::abs(dot(e, ed.eigenvectors.column(j))), 1e-10);
            }
        }
    }
}

TEST(GreedyTest, TwoByTwoMatchesJacobi) {
    const auto dirs = greedy_max_variance_directions(Matrix{{2, 1}, {1, 2}}, 2);
    ASSERT_EQ(dirs.size(), 2u);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(dirs[0].variance, 3.0, 1e-12);
    EXPECT_NEAR(dirs[1].variance, 1.0, 1e-12);
    EXPECT_LE(pt::sign_aligned_delta(dirs[0].direction, {h, h}), 1e-12);
    EXPECT_LE(pt::sign_aligned_delta(dirs[1].direction, {h, -h}), 1e-12);
}

TEST(GreedyTest, AxisAligned) {
    const std::vector<double> d{4, 1};
    const auto dirs = greedy_max_variance_directions(Matrix::diagonal(d), 1);
    ASSERT_EQ(dirs.size(), 1u);
    EXPECT_NEAR(dirs[0].variance, 4.0, 1e-12);
    EXPECT_NEAR(dirs[0].direction[0], 1.0, 1e-9);
    EXPECT_NEAR(dirs[0].direction[1], 0.0, 1e-6);
}

TEST(GreedyTest, DegenerateSpectrumIsAnError) {
    try {
        greedy_max_variance_directions(Matrix::identity(2), 1);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("jacobi"), std::string::npos);
    }
    EXPECT_THROW(greedy_max_variance_directions(Matrix(3, 3), 1), NumericalError);
}

TEST(GreedyTest, StartVectorBlindToTopDirectionIsReported) {
    // All-ones is orthogonal to (1, -1), the dominant direction here.
    EXPECT_THROW(greedy_max_variance_directions(Matrix{{1, -1}, {-1, 1}}, 1), NumericalError);
}

TEST(GreedyTest, RejectsBadArguments) {
    EXPECT_THROW(greedy_max_variance_directions(Matrix::identity(2), 3), DimensionError);
    EXPECT_THROW(greedy_max_variance_directions(Matrix{{1, 0}, {0, -5}}, 1), DataError);
    EXPECT_TRUE(greedy_max_variance_directions(Matrix::identity(2), 0).empty());
}

TEST(GreedyProperty, AgreesWithJacobiOnSeparatedSpectra) {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> step(0.1, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 2 + trial % 7;
        std::vector<double> spectrum(m);
        double v = 0.05 + step(gen);
        for (std::size_t i = m; i-- > 0;) {
            spectrum[i] = v;
            v += step(gen);
        }
        const Matrix c = pt::spd_with_spectrum(gen, spectrum);
        const auto ed = jacobi_eigen_symmetric(c);
        const std::size_t k = 1 + trial % m;
        const auto dirs = greedy_max_variance_directions(c, k);
        ASSERT_EQ(dirs.size(), k);
        for (std::size_t i = 0; i < k; ++i) {
            EXPECT_LE(pt::sign_aligned_delta(dirs[i].direction, ed.eigenvectors.column(i)), 1e-6);
            EXPECT_NEAR(dirs[i].variance, ed.eigenvalues[i], 1e-9 * ed.eigenvalues[0]);
        }
    }
}
