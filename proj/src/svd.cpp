#include "pcakit/svd.hpp"

#include "pcakit/eigen.hpp"
#include "pcakit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcakit {

double svd_rank_tolerance(double sigma_max, std::size_t rows, std::size_t cols) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double dim = static_cast<double>(std::max(rows, cols));
    const double factor = std::max(1e-10, 8.0 * std::sqrt(eps * dim));
    return std::max(1e-12, factor * sigma_max);
}

namespace {

struct RightFactors {
    Vector sigma;
    std::vector<Vector> vs; // first `rank` right singular vectors
    std::size_t rank = 0;
};

RightFactors right_factors(const Matrix& x) {
    const std::size_t n = x.rows();
    const std::size_t m = x.cols();
    const std::size_t diag = std::min(n, m);

    JacobiOptions opts;
    opts.clamp_psd = true;
    const EigenDecomposition ed = jacobi_eigen_symmetric(gram(x), opts);

    RightFactors out;
    out.sigma.assign(diag, 0.0);
    for (std::size_t i = 0; i < diag; ++i) {
        out.sigma[i] = std::sqrt(std::max(ed.eigenvalues[i], 0.0));
    }
    const double tol = svd_rank_tolerance(diag > 0 ? out.sigma[0] : 0.0, n, m);
    while (out.rank < diag && out.sigma[out.rank] > tol) {
        ++out.rank;
    }
    std::fill(out.sigma.begin() + static_cast<std::ptrdiff_t>(out.rank), out.sigma.end(), 0.0);
    for (std::size_t i = 0; i < out.rank; ++i) {
        out.vs.push_back(ed.eigenvectors.column(i));
    }
    return out;
}

} // namespace

SvdFactors svd(const Matrix& x) {
    const std::size_t n = x.rows();
    RightFactors rf = right_factors(x);

    std::vector<Vector> us;
    for (std::size_t i = 0; i < rf.rank; ++i) {
        Vector u = multiply(x, rf.vs[i]);
        for (double& e : u) {
            e /= rf.sigma[i];
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& prev : us) {
                const double proj = dot(prev, u);
                for (std::size_t k = 0; k < n; ++k) {
                    u[k] -= proj * prev[k];
                }
            }
        }
        const double un = norm(u);
        for (double& e : u) {
            e /= un;
        }
        us.push_back(std::move(u));
    }

    const auto u_full = complete_orthonormal_basis(us, n);
    const auto v_full = complete_orthonormal_basis(rf.vs, x.cols());
    return SvdFactors{Matrix::from_columns(u_full), std::move(rf.sigma), Matrix::from_columns(v_full),
                      rf.rank};
}

RightSingular svd_right(const Matrix& x) {
    RightFactors rf = right_factors(x);
    const auto v_full = complete_orthonormal_basis(rf.vs, x.cols());
    return RightSingular{std::move(rf.sigma), Matrix::from_columns(v_full), rf.rank};
}

Matrix reconstruct(const SvdFactors& f) {
    const std::size_t n = f.u.rows();
    const std::size_t m = f.v.rows();
    std::vector<double> s(n * m, 0.0);
    for (std::size_t i = 0; i < f.singular_values.size(); ++i) {
        s[i * m + i] = f.singular_values[i];
    }
    const Matrix sigma(n, m, std::move(s));
    return multiply(multiply(f.u, sigma), transpose(f.v));
}

SvdFactors truncate(const SvdFactors& f, std::size_t k) {
    if (k > f.rank) {
        throw DimensionError("truncate: k = " + std::to_string(k) + " exceeds rank " +
                             std::to_string(f.rank));
    }
    SvdFactors out = f;
    std::fill(out.singular_values.begin() + static_cast<std::ptrdiff_t>(k),
              out.singular_values.end(), 0.0);
    out.rank = k;
    return out;
}

} // namespace pcakit
