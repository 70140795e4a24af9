#include "pcakit/eigen.hpp"

#include "pcakit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pcakit {

namespace {

constexpr double kSymmetryTol = 1e-10;

void require_symmetric(const Matrix& a, const char* who) {
    if (!a.square()) {
        throw DimensionError(std::string(who) + ": expected a square matrix, got " + a.shape());
    }
    const double asym = asymmetry(a);
    if (asym > kSymmetryTol) {
        std::ostringstream msg;
        msg << who << ": matrix is not symmetric (max |a_ij - a_ji| = " << asym << ")";
        throw DataError(msg.str());
    }
}

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    return std::sqrt(s);
}

// Rotates rows/columns p and q of the symmetric work matrix so that a_pq
// vanishes, and accumulates the rotation into v.
void rotate(std::vector<double>& a, std::vector<double>& v, std::size_t n, std::size_t p,
            std::size_t q) {
    const double apq = a[p * n + q];
    const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    a[p * n + p] -= t * apq;
    a[q * n + q] += t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) {
            continue;
        }
        const double g = a[r * n + p];
        const double h = a[r * n + q];
        const double rp = g - s * (h + g * tau);
        const double rq = h + s * (g - h * tau);
        a[r * n + p] = rp;
        a[p * n + r] = rp;
        a[r * n + q] = rq;
        a[q * n + r] = rq;
    }
    for (std::size_t r = 0; r < n; ++r) {
        const double g = v[r * n + p];
        const double h = v[r * n + q];
        v[r * n + p] = g - s * (h + g * tau);
        v[r * n + q] = h + s * (g - h * tau);
    }
}

void project_out(Vector& v, const std::vector<VarianceDirection>& accepted) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& d : accepted) {
            const double proj = dot(d.direction, v);
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] -= proj * d.direction[i];
            }
        }
    }
}

Vector start_vector(std::size_t m, const std::vector<VarianceDirection>& accepted) {
    Vector v(m, 1.0);
    project_out(v, accepted);
    double r = norm(v);
    // All-ones can lie in the span of the accepted directions; fall back to
    // canonical vectors in index order.
    for (std::size_t c = 0; r <= 1e-6 && c < m; ++c) {
        std::fill(v.begin(), v.end(), 0.0);
        v[c] = 1.0;
        project_out(v, accepted);
        r = norm(v);
    }
    for (double& x : v) {
        x /= r;
    }
    return v;
}

struct PowerResult {
    VarianceDirection found;
    bool converged = false;
    double residual = 0.0;
};

PowerResult power_iterate(const Matrix& c, const std::vector<VarianceDirection>& accepted,
                          const GreedyOptions& opts, double scale) {
    const std::size_t m = c.rows();
    Vector v = start_vector(m, accepted);
    PowerResult res;
    for (int it = 0; it <= opts.max_iters; ++it) {
        Vector w = multiply(c, v);
        project_out(w, accepted);
        const double lambda = dot(v, w);
        double r2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = w[i] - lambda * v[i];
            r2 += d * d;
        }
        res.found.direction = v;
        res.found.variance = lambda;
        res.residual = std::sqrt(r2);
        if (res.residual <= opts.tol * scale) {
            res.converged = true;
            return res;
        }
        const double wn = norm(w);
        if (wn == 0.0) {
            break;
        }
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = w[i] / wn;
        }
        project_out(v, accepted);
        const double vn = norm(v);
        for (double& x : v) {
            x /= vn;
        }
    }
    return res;
}

} // namespace

EigenDecomposition jacobi_eigen_symmetric(const Matrix& a, const JacobiOptions& opts) {
    require_symmetric(a, "jacobi_eigen_symmetric");
    const std::size_t n = a.rows();

    std::vector<double> w(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            w[i * n + j] = i == j ? a(i, i) : 0.5 * (a(i, j) + a(j, i));
        }
    }
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
    }

    const double off0 = off_diagonal_norm(w, n);
    double off = off0;
    int sweep = 0;
    while (off > opts.tol * off0) {
        if (sweep == opts.max_sweeps) {
            std::ostringstream msg;
            msg << "jacobi_eigen_symmetric: no convergence after " << opts.max_sweeps
                << " sweeps (off-diagonal norm " << off << ")";
            throw NumericalError(msg.str(), off);
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = w[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                // Past the first few sweeps an element that no longer moves
                // either diagonal entry is roundoff; drop it.
                const double g = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(w[p * n + p]) + g == std::abs(w[p * n + p]) &&
                    std::abs(w[q * n + q]) + g == std::abs(w[q * n + q])) {
                    w[p * n + q] = 0.0;
                    w[q * n + p] = 0.0;
                    continue;
                }
                rotate(w, v, n, p, q);
            }
        }
        ++sweep;
        off = off_diagonal_norm(w, n);
    }

    Vector values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = w[i * n + i];
    }
    if (opts.clamp_psd) {
        double big = 0.0;
        for (double x : values) {
            big = std::max(big, std::abs(x));
        }
        for (double& x : values) {
            if (x < 0.0 && std::abs(x) <= 1e-10 * big) {
                x = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });

    EigenDecomposition out{Vector(n), Matrix(n, n)};
    std::vector<Vector> columns;
    columns.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.eigenvalues[k] = values[src];
        Vector col(n);
        for (std::size_t r = 0; r < n; ++r) {
            col[r] = v[r * n + src];
        }
        fix_sign(col);
        columns.push_back(std::move(col));
    }
    out.eigenvectors = Matrix::from_columns(columns);
    return out;
}

std::vector<VarianceDirection> greedy_max_variance_directions(const Matrix& c, std::size_t k,
                                                               const GreedyOptions& opts) {
    require_symmetric(c, "greedy_max_variance_directions");
    const std::size_t m = c.rows();
    if (k > m) {
        throw DimensionError("greedy_max_variance_directions: k = " + std::to_string(k) +
                             " exceeds dimension " + std::to_string(m));
    }
    std::vector<VarianceDirection> accepted;
    if (k == 0) {
        return accepted;
    }
    const double scale = max_abs(c);
    if (scale == 0.0) {
        throw NumericalError(
            "greedy_max_variance_directions: zero matrix has no eigenvalue gap; use "
            "jacobi_eigen_symmetric",
            0.0);
    }

    const std::size_t steps = std::min(k + 1, m);
    double next_variance = 0.0;
    bool have_next = false;
    for (std::size_t i = 0; i < steps; ++i) {
        PowerResult r = power_iterate(c, accepted, opts, scale);
        if (r.found.variance < -1e-10 * scale) {
            std::ostringstream msg;
            msg << "greedy_max_variance_directions: matrix is not positive semidefinite (found "
                   "variance "
                << r.found.variance << ")";
            throw DataError(msg.str());
        }
        if (i == k) {
            // Lookahead step: only the variance estimate matters.
            next_variance = r.found.variance;
            have_next = true;
            break;
        }
        if (!r.converged) {
            std::ostringstream msg;
            msg << "greedy_max_variance_directions: power iteration for direction " << i + 1
                << " did not converge in " << opts.max_iters
                << " iterations (eigenvalue gap too small); use jacobi_eigen_symmetric";
            throw NumericalError(msg.str(), r.residual);
        }
        accepted.push_back(std::move(r.found));
        fix_sign(accepted.back().direction);
    }

    const double top = std::max(accepted.front().variance, have_next ? next_variance : 0.0);
    const double gap_floor = opts.min_gap * top;
    auto check_gap = [&](std::size_t i, double upper, double lower) {
        if (upper - lower <= gap_floor) {
            std::ostringstream msg;
            msg << "greedy_max_variance_directions: variances " << i + 1 << " and " << i + 2
                << " are not separated (" << upper << " vs " << lower
                << "); use jacobi_eigen_symmetric";
            throw NumericalError(msg.str(), upper - lower);
        }
    };
    for (std::size_t i = 0; i + 1 < accepted.size(); ++i) {
        check_gap(i, accepted[i].variance, accepted[i + 1].variance);
    }
    if (have_next) {
        check_gap(accepted.size() - 1, accepted.back().variance, next_variance);
    }
    for (auto& d : accepted) {
        d.variance = std::max(d.variance, 0.0);
    }
    return accepted;
}

} // namespace pcakit
