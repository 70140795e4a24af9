#include "pcakit/pca.hpp"

#include "pcakit/eigen.hpp"
#include "pcakit/error.hpp"
#include "pcakit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace pcakit {

namespace {

double denominator(std::size_t n, Normalization norm) {
    return norm == Normalization::population ? static_cast<double>(n)
                                             : static_cast<double>(n) - 1.0;
}

void require_variance(const Vector& variances) {
    double total = 0.0;
    for (double v : variances) {
        total += v;
    }
    if (!(total > 0.0)) {
        throw DataError("dataset has zero variance (constant data); nothing to analyze");
    }
}

} // namespace

std::string_view to_string(Route r) {
    return r == Route::eigen ? "eigen" : "svd";
}

std::string_view to_string(Normalization n) {
    return n == Normalization::population ? "population" : "sample";
}

Route parse_route(std::string_view s) {
    if (s == "eigen") {
        return Route::eigen;
    }
    if (s == "svd") {
        return Route::svd;
    }
    throw DataError("unknown route '" + std::string(s) + "'");
}

Normalization parse_normalization(std::string_view s) {
    if (s == "population" || s == "n") {
        return Normalization::population;
    }
    if (s == "sample" || s == "n-1") {
        return Normalization::sample;
    }
    throw DataError("unknown normalization '" + std::string(s) + "'");
}

Dataset::Dataset(Matrix data, std::vector<std::string> names)
    : data_(std::move(data)), names_(std::move(names)) {
    if (data_.cols() < 2) {
        throw DataError("dataset needs at least 2 samples, got " + std::to_string(data_.cols()));
    }
    if (names_.size() != data_.rows()) {
        throw DataError("dataset has " + std::to_string(data_.rows()) + " measurements but " +
                        std::to_string(names_.size()) + " names");
    }
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (!seen.insert(name).second) {
            throw DataError("duplicate measurement name '" + name + "'");
        }
    }
}

Dataset Dataset::unnamed(Matrix data) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        names.push_back("x" + std::to_string(i + 1));
    }
    return Dataset(std::move(data), std::move(names));
}

void validate(const PcaModel& model) {
    const std::size_t m = model.mean.size();
    if (m == 0 || model.components.rows() != m || model.components.cols() != m ||
        model.variances.size() != m || model.names.size() != m) {
        throw DataError("model shapes are inconsistent: mean " + std::to_string(m) +
                        ", components " + model.components.shape() + ", variances " +
                        std::to_string(model.variances.size()) + ", names " +
                        std::to_string(model.names.size()));
    }
    if (!is_orthogonal(model.components, 1e-10)) {
        throw DataError("model components are not orthonormal");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (model.variances[i] < 0.0) {
            throw DataError("model variance " + std::to_string(i) + " is negative");
        }
        if (i > 0 && model.variances[i] > model.variances[i - 1]) {
            throw DataError("model variances are not in descending order");
        }
    }
}

double covariance(std::span<const double> a, std::span<const double> b, Normalization norm) {
    if (a.size() != b.size()) {
        throw DimensionError("covariance: lengths " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    }
    if (a.size() < 2) {
        throw DataError("covariance needs at least 2 samples");
    }
    return dot(a, b) / denominator(a.size(), norm);
}

Centered center(const Dataset& d) {
    const std::size_t m = d.m();
    const std::size_t n = d.n();
    Vector mean(m, 0.0);
    std::vector<double> out(d.data().entries().begin(), d.data().entries().end());
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            s += out[i * n + j];
        }
        double mu = s / static_cast<double>(n);
        // One correction pass removes the rounding left by the first sum.
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            r += out[i * n + j] - mu;
        }
        mu += r / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            out[i * n + j] -= mu;
        }
        mean[i] = mu;
    }
    return Centered{Dataset(Matrix(m, n, std::move(out)), d.names()), std::move(mean)};
}

Matrix covariance_matrix(const Dataset& centered, Normalization norm) {
    const Matrix& x = centered.data();
    const std::size_t m = x.rows();
    std::vector<Vector> rows;
    rows.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Vector r = x.row(i);
        double s = 0.0;
        double big = 0.0;
        for (double v : r) {
            s += v;
            big = std::max(big, std::abs(v));
        }
        const double mu = s / static_cast<double>(r.size());
        if (std::abs(mu) > 1e-9 * std::max(1.0, big)) {
            std::ostringstream msg;
            msg << "covariance_matrix: row '" << centered.names()[i] << "' is not centered (mean "
                << mu << ")";
            throw DataError(msg.str());
        }
        rows.push_back(std::move(r));
    }
    std::vector<double> c(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double v = covariance(rows[i], rows[j], norm);
            c[i * m + j] = v;
            c[j * m + i] = v;
        }
    }
    return Matrix(m, m, std::move(c));
}

PcaModel fit_eigen(const Dataset& d, Normalization norm) {
    const Centered centered = center(d);
    const Matrix c = covariance_matrix(centered.data, norm);
    JacobiOptions opts;
    opts.clamp_psd = true;
    const EigenDecomposition ed = jacobi_eigen_symmetric(c, opts);

    const std::size_t m = d.m();
    Vector variances = ed.eigenvalues;
    for (double& v : variances) {
        v = std::max(v, 0.0);
    }
    require_variance(variances);

    // Same cutoff as the SVD route, expressed on variances (sigma squared).
    const double sigma_max = std::sqrt(variances[0]);
    const double cutoff = svd_rank_tolerance(sigma_max, d.n(), m);
    std::size_t rank = 0;
    while (rank < m && std::sqrt(variances[rank]) > cutoff) {
        ++rank;
    }
    std::vector<Vector> kept;
    for (std::size_t i = 0; i < rank; ++i) {
        kept.push_back(ed.eigenvectors.column(i));
    }
    for (std::size_t i = rank; i < m; ++i) {
        variances[i] = 0.0;
    }
    const auto basis = complete_orthonormal_basis(kept, m);

    return PcaModel{centered.mean, Matrix::from_rows(basis), std::move(variances), Route::eigen,
                    norm, d.names()};
}

PcaModel fit_svd(const Dataset& d, Normalization norm) {
    const Centered centered = center(d);
    const double s = 1.0 / std::sqrt(denominator(d.n(), norm));
    const Matrix y = scale(transpose(centered.data.data()), s);
    // Only V and the singular values are needed; U would be n x n.
    const RightSingular f = svd_right(y);

    const std::size_t m = d.m();
    Vector variances(m, 0.0);
    for (std::size_t i = 0; i < f.singular_values.size(); ++i) {
        variances[i] = f.singular_values[i] * f.singular_values[i];
    }
    require_variance(variances);

    return PcaModel{centered.mean, transpose(f.v), std::move(variances), Route::svd, norm,
                    d.names()};
}

PcaModel fit(const Dataset& d, Route route, Normalization norm) {
    return route == Route::eigen ? fit_eigen(d, norm) : fit_svd(d, norm);
}

Matrix project(const PcaModel& model, const Matrix& x) {
    const std::size_t m = model.m();
    if (x.rows() != m) {
        throw DimensionError("project: model has " + std::to_string(m) +
                             " measurements, data has " + std::to_string(x.rows()));
    }
    const std::size_t n = x.cols();
    std::vector<double> shifted(x.entries().begin(), x.entries().end());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            shifted[i * n + j] -= model.mean[i];
        }
    }
    return multiply(model.components, Matrix(m, n, std::move(shifted)));
}

Matrix project(const PcaModel& model, const Dataset& d) {
    return project(model, d.data());
}

Matrix reconstruct(const PcaModel& model, const Matrix& y, std::size_t k) {
    const std::size_t m = model.m();
    if (k > m) {
        throw DimensionError("reconstruct: k = " + std::to_string(k) + " exceeds m = " +
                             std::to_string(m));
    }
    if (y.rows() < k || y.rows() > m) {
        throw DimensionError("reconstruct: projection has " + std::to_string(y.rows()) +
                             " rows, need between k = " + std::to_string(k) + " and m = " +
                             std::to_string(m));
    }
    const std::size_t n = y.cols();
    std::vector<double> out(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = model.mean[i];
            for (std::size_t c = 0; c < k; ++c) {
                s += model.components(c, i) * y(c, j);
            }
            out[i * n + j] = s;
        }
    }
    return Matrix(m, n, std::move(out));
}

Vector explained_variance_ratio(const PcaModel& model) {
    require_variance(model.variances);
    double total = 0.0;
    for (double v : model.variances) {
        total += v;
    }
    Vector out(model.variances.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = model.variances[i] / total;
    }
    return out;
}

} // namespace pcakit
