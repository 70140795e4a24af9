#include "pcakit/datagen.hpp"

#include "pcakit/error.hpp"
#include "pcakit/rng.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace pcakit {

namespace {

double deg2rad(double deg) {
    return deg * std::numbers::pi / 180.0;
}

double dot3(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void validate(const SpringConfig& cfg) {
    constexpr double tol = 1e-12;
    if (std::abs(dot3(cfg.motion_axis, cfg.motion_axis) - 1.0) > tol) {
        throw DataError("spring: motion axis must be a unit vector");
    }
    for (std::size_t c = 0; c < cfg.cameras.size(); ++c) {
        const auto& cam = cfg.cameras[c];
        if (std::abs(dot3(cam.x, cam.x) - 1.0) > tol || std::abs(dot3(cam.y, cam.y) - 1.0) > tol ||
            std::abs(dot3(cam.x, cam.y)) > tol) {
            throw DataError("spring: camera " + std::to_string(c) + " axes are not orthonormal");
        }
    }
    if (!(cfg.noise_sigma >= 0.0)) {
        throw DataError("spring: noise sigma must be nonnegative");
    }
    sample_count(cfg);
}

} // namespace

CameraAxes camera_from_angles(double yaw_deg, double pitch_deg) {
    const double yaw = deg2rad(yaw_deg);
    const double pitch = deg2rad(pitch_deg);
    return CameraAxes{
        {std::cos(yaw), std::sin(yaw), 0.0},
        {-std::sin(yaw) * std::sin(pitch), std::cos(yaw) * std::sin(pitch), std::cos(pitch)}};
}

std::array<CameraAxes, 3> default_cameras() {
    return {camera_from_angles(30.0, 20.0), camera_from_angles(110.0, -35.0),
            camera_from_angles(-65.0, 50.0)};
}

std::size_t sample_count(const SpringConfig& cfg) {
    const double raw = cfg.sample_rate * cfg.duration;
    const double rounded = std::round(raw);
    if (!(cfg.sample_rate > 0.0) || !(cfg.duration > 0.0) || std::abs(raw - rounded) > 1e-9 ||
        rounded < 2.0) {
        std::ostringstream msg;
        msg << "spring: sample_rate * duration = " << raw << " is not an integer >= 2";
        throw DataError(msg.str());
    }
    return static_cast<std::size_t>(rounded);
}

Vector spring_signal_direction(const SpringConfig& cfg) {
    Vector w;
    for (const auto& cam : cfg.cameras) {
        w.push_back(dot3(cam.x, cfg.motion_axis));
        w.push_back(dot3(cam.y, cfg.motion_axis));
    }
    const double len = norm(w);
    if (len == 0.0) {
        throw DataError("spring: motion is invisible to every camera");
    }
    for (double& v : w) {
        v /= len;
    }
    return w;
}

double spring_noise_sigma_for_snr(const SpringConfig& cfg, double target_snr) {
    if (!(target_snr > 0.0)) {
        throw DataError("spring: SNR must be positive");
    }
    double w2 = 0.0;
    for (const auto& cam : cfg.cameras) {
        const double a = dot3(cam.x, cfg.motion_axis);
        const double b = dot3(cam.y, cfg.motion_axis);
        w2 += a * a + b * b;
    }
    const double signal_variance = 0.5 * cfg.amplitude * cfg.amplitude * w2;
    return std::sqrt(signal_variance / target_snr);
}

Dataset generate_spring(const SpringConfig& cfg) {
    validate(cfg);
    const std::size_t n = sample_count(cfg);
    const std::size_t m = 6;

    std::array<double, 6> proj{};
    for (std::size_t c = 0; c < 3; ++c) {
        proj[2 * c] = dot3(cfg.cameras[c].x, cfg.motion_axis);
        proj[2 * c + 1] = dot3(cfg.cameras[c].y, cfg.motion_axis);
    }

    Rng rng(cfg.seed);
    std::vector<double> out(m * n);
    const double omega = 2.0 * std::numbers::pi * cfg.frequency;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) / cfg.sample_rate;
        const double pos = cfg.amplitude * std::cos(omega * t);
        for (std::size_t i = 0; i < m; ++i) {
            double v = pos * proj[i];
            if (cfg.noise_sigma > 0.0) {
                v += cfg.noise_sigma * rng.normal();
            }
            out[i * n + j] = v;
        }
    }
    return Dataset(Matrix(m, n, std::move(out)), {"xA", "yA", "xB", "yB", "xC", "yC"});
}

Dataset generate_correlated_pair(double rho, std::size_t n, std::uint64_t seed) {
    if (!(std::abs(rho) <= 1.0)) {
        throw DataError("correlated pair: |rho| must be <= 1");
    }
    if (n < 3) {
        throw DataError("correlated pair: need n >= 3");
    }
    const double rest = std::sqrt(1.0 - rho * rho);
    Rng rng(seed);
    std::vector<double> out(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        out[j] = z1;
        out[n + j] = rho * z1 + rest * z2;
    }
    return Dataset(Matrix(2, n, std::move(out)), {"r1", "r2"});
}

Dataset generate_failure(const FailureConfig& cfg) {
    if (cfg.n < 3) {
        throw DataError("failure scenario: need n >= 3");
    }
    if (!(cfg.noise_sigma >= 0.0)) {
        throw DataError("failure scenario: noise sigma must be nonnegative");
    }
    const std::size_t n = cfg.n;
    Rng rng(cfg.seed);
    std::vector<double> out(2 * n);

    if (cfg.kind == FailureKind::ferris_wheel) {
        if (!(cfg.radius > 0.0)) {
            throw DataError("ferris wheel: radius must be positive");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double theta = 2.0 * std::numbers::pi * rng.uniform();
            double x = cfg.radius * std::cos(theta);
            double y = cfg.radius * std::sin(theta);
            if (cfg.noise_sigma > 0.0) {
                x += cfg.noise_sigma * rng.normal();
                y += cfg.noise_sigma * rng.normal();
            }
            out[j] = x;
            out[n + j] = y;
        }
    } else {
        if (!(cfg.weight1 >= 0.0 && cfg.weight1 <= 1.0)) {
            throw DataError("non-orthogonal: weight must lie in [0, 1]");
        }
        const double a1 = deg2rad(cfg.axis1_deg);
        const double a2 = deg2rad(cfg.axis2_deg);
        for (std::size_t j = 0; j < n; ++j) {
            const bool first = rng.uniform() < cfg.weight1;
            const double angle = first ? a1 : a2;
            const double s = (first ? cfg.spread1 : cfg.spread2) * rng.normal();
            double x = s * std::cos(angle);
            double y = s * std::sin(angle);
            if (cfg.noise_sigma > 0.0) {
                x += cfg.noise_sigma * rng.normal();
                y += cfg.noise_sigma * rng.normal();
            }
            out[j] = x;
            out[n + j] = y;
        }
    }
    return Dataset(Matrix(2, n, std::move(out)), {"x", "y"});
}

double snr(double signal_variance, double noise_variance) {
    if (!(noise_variance > 0.0)) {
        throw DataError("SNR is undefined for zero noise variance");
    }
    if (!(signal_variance >= 0.0)) {
        throw DataError("signal variance must be nonnegative");
    }
    return signal_variance / noise_variance;
}

} // namespace pcakit
