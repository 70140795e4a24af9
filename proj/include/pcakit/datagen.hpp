#ifndef PCAKIT_DATAGEN_HPP
#define PCAKIT_DATAGEN_HPP

#include "pcakit/pca.hpp"

#include <array>
#include <cstddef>
#include <cstdint>

namespace pcakit {

using Vec3 = std::array<double, 3>;

/// Image-plane basis of one camera: the two 3-D directions its x and y
/// pixel axes measure along.
struct CameraAxes {
    Vec3 x;
    Vec3 y;
};

/// Camera basis from yaw and pitch in degrees:
///   x = (cos yaw, sin yaw, 0)
///   y = (-sin yaw sin pitch, cos yaw sin pitch, cos pitch)
CameraAxes camera_from_angles(double yaw_deg, double pitch_deg);

/// Default rig. Yaw/pitch: A (30, 20), B (110, -35), C (-65, 50) degrees;
/// none of the planes are aligned with each other or with the motion.
std::array<CameraAxes, 3> default_cameras();

/// Ball on an ideal spring filmed by three cameras.
struct SpringConfig {
    double amplitude = 1.0;
    double frequency = 0.5;   // Hz
    double sample_rate = 120.0; // Hz
    double duration = 600.0;  // s
    std::array<CameraAxes, 3> cameras = default_cameras();
    Vec3 motion_axis = {1.0, 0.0, 0.0};
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Number of samples, sample_rate * duration. Throws DataError unless that
/// is an integer >= 2.
std::size_t sample_count(const SpringConfig& cfg);

/// Unit 6-vector (x_A, y_A, x_B, y_B, x_C, y_C) along which the noiseless
/// recording moves.
Vector spring_signal_direction(const SpringConfig& cfg);

/// Noise level giving the requested SNR along the signal direction: the
/// signal variance there is amplitude^2 |w|^2 / 2 for the stacked camera
/// projection w of the motion axis.
double spring_noise_sigma_for_snr(const SpringConfig& cfg, double snr);

/// 6 x n dataset with rows xA, yA, xB, yB, xC, yC. The ball sits at
/// amplitude * cos(2 pi f t) * motion_axis for t = i / sample_rate; each
/// coordinate gets independent N(0, noise_sigma^2) noise, drawn sample by
/// sample in row order.
Dataset generate_spring(const SpringConfig& cfg);

/// 2 x n dataset (rows r1, r2): r1 = z1, r2 = rho z1 + sqrt(1 - rho^2) z2
/// with z1, z2 standard normal. rho = +-1 gives exactly collinear rows.
Dataset generate_correlated_pair(double rho, std::size_t n, std::uint64_t seed);

enum class FailureKind { ferris_wheel, non_orthogonal };

struct FailureConfig {
    FailureKind kind = FailureKind::ferris_wheel;
    // ferris_wheel
    double radius = 1.0;
    // non_orthogonal: two axes in the plane, given by angle from +x
    double axis1_deg = 0.0;
    double axis2_deg = 45.0;
    double weight1 = 0.5; // probability a sample belongs to axis 1
    double spread1 = 1.0; // std of the position along axis 1
    double spread2 = 1.0;
    std::size_t n = 1000;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

/// 2 x n dataset (rows x, y).
///   ferris_wheel:   (r cos theta, r sin theta), theta uniform on [0, 2 pi)
///   non_orthogonal: s * axis_c with c picked by weight1, s ~ N(0, spread_c^2)
/// plus isotropic Gaussian noise. Throws DataError on n < 3, radius <= 0 or
/// a weight outside [0, 1].
Dataset generate_failure(const FailureConfig& cfg);

/// signal_variance / noise_variance. Throws DataError when noise_variance
/// is not positive or signal_variance is negative.
double snr(double signal_variance, double noise_variance);

} // namespace pcakit

#endif
