#include "pcakit/matrix.hpp"

#include "pcakit/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pcakit {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("matrix must be at least 1x1, got " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch " + a.shape() + " vs " + b.shape());
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    check_shape(rows, cols);
    entries_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_shape(rows, cols);
    if (entries_.size() != rows * cols) {
        throw DimensionError("matrix " + shape() + " needs " + std::to_string(rows * cols) +
                             " entries, got " + std::to_string(entries_.size()));
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (!std::isfinite(entries_[k])) {
            throw DataError("non-finite matrix entry at (" + std::to_string(k / cols_) + "," +
                            std::to_string(k % cols_) + ")");
        }
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : Matrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(), [&] {
          std::vector<double> flat;
          const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
          for (const auto& r : rows) {
              if (r.size() != width) {
                  throw DimensionError("ragged matrix literal");
              }
              flat.insert(flat.end(), r.begin(), r.end());
          }
          return flat;
      }()) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.entries_[i * n + i] = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    std::vector<double> e(values.size() * values.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        e[i * values.size() + i] = values[i];
    }
    return Matrix(values.size(), values.size(), std::move(e));
}

Matrix Matrix::from_rows(std::span<const Vector> rows) {
    if (rows.empty()) {
        throw DimensionError("from_rows: no rows");
    }
    const std::size_t width = rows.front().size();
    std::vector<double> e;
    e.reserve(rows.size() * width);
    for (const auto& r : rows) {
        if (r.size() != width) {
            throw DimensionError("from_rows: ragged input");
        }
        e.insert(e.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), width, std::move(e));
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
    if (columns.empty()) {
        throw DimensionError("from_columns: no columns");
    }
    const std::size_t height = columns.front().size();
    check_shape(height, columns.size());
    std::vector<double> e(height * columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != height) {
            throw DimensionError("from_columns: ragged input");
        }
        for (std::size_t i = 0; i < height; ++i) {
            e[i * columns.size() + j] = columns[j][i];
        }
    }
    return Matrix(height, columns.size(), std::move(e));
}

Vector Matrix::row(std::size_t i) const {
    auto first = entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    return Vector(first, first + static_cast<std::ptrdiff_t>(cols_));
}

Vector Matrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        c[i] = entries_[i * cols_ + j];
    }
    return c;
}

std::string Matrix::shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("multiply: inner dimensions differ (" + a.shape() + " times " +
                             b.shape() + ")");
    }
    std::vector<double> out(a.rows() * b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out[i * b.cols() + j] += aik * b(k, j);
            }
        }
    }
    return Matrix(a.rows(), b.cols(), std::move(out));
}

Vector multiply(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw DimensionError("multiply: " + a.shape() + " times vector of length " +
                             std::to_string(x.size()));
    }
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += a(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

Matrix transpose(const Matrix& a) {
    std::vector<double> out(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[j * a.rows() + i] = a(i, j);
        }
    }
    return Matrix(a.cols(), a.rows(), std::move(out));
}

Matrix add(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "add");
    std::vector<double> out(a.entries().begin(), a.entries().end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] += b.entries()[k];
    }
    return Matrix(a.rows(), a.cols(), std::move(out));
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "subtract");
    std::vector<double> out(a.entries().begin(), a.entries().end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] -= b.entries()[k];
    }
    return Matrix(a.rows(), a.cols(), std::move(out));
}

Matrix scale(const Matrix& a, double factor) {
    std::vector<double> out(a.entries().begin(), a.entries().end());
    for (double& v : out) {
        v *= factor;
    }
    return Matrix(a.rows(), a.cols(), std::move(out));
}

Matrix gram(const Matrix& a) {
    const std::size_t n = a.cols();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k) {
                s += a(k, i) * a(k, j);
            }
            out[i * n + j] = s;
            out[j * n + i] = s;
        }
    }
    return Matrix(n, n, std::move(out));
}

double frobenius_norm(const Matrix& a) {
    // Scaled accumulation keeps huge or tiny entries from overflowing.
    const double big = max_abs(a);
    if (big == 0.0) {
        return 0.0;
    }
    double s = 0.0;
    for (double v : a.entries()) {
        const double r = v / big;
        s += r * r;
    }
    return big * std::sqrt(s);
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.entries()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

double trace(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
        s += a(i, i);
    }
    return s;
}

double asymmetry(const Matrix& a) {
    if (!a.square()) {
        throw DimensionError("expected a square matrix, got " + a.shape());
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - a(j, i)));
        }
    }
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("dot: lengths " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

bool is_orthogonal(const Matrix& a, double tol) {
    if (!a.square()) {
        throw DimensionError("is_orthogonal: expected a square matrix, got " + a.shape());
    }
    const Matrix g = gram(a);
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const double target = i == j ? 1.0 : 0.0;
            if (std::abs(g(i, j) - target) > tol) {
                return false;
            }
        }
    }
    return true;
}

void fix_sign(std::span<double> v) {
    double big = 0.0;
    for (double x : v) {
        big = std::max(big, std::abs(x));
    }
    if (big == 0.0) {
        return;
    }
    const double cutoff = big * (1.0 - 1e-12);
    for (double x : v) {
        if (std::abs(x) >= cutoff) {
            if (x < 0.0) {
                for (double& y : v) {
                    y = -y;
                }
            }
            return;
        }
    }
}

std::vector<Vector> complete_orthonormal_basis(std::span<const Vector> partial, std::size_t dim) {
    constexpr double input_tol = 1e-10;
    constexpr double accept_residual = 1e-6;

    if (dim == 0) {
        throw DimensionError("complete_orthonormal_basis: dimension must be positive");
    }
    if (partial.size() > dim) {
        throw DimensionError("complete_orthonormal_basis: " + std::to_string(partial.size()) +
                             " vectors exceed dimension " + std::to_string(dim));
    }
    for (std::size_t i = 0; i < partial.size(); ++i) {
        if (partial[i].size() != dim) {
            throw DimensionError("complete_orthonormal_basis: vector " + std::to_string(i) +
                                 " has length " + std::to_string(partial[i].size()) +
                                 ", expected " + std::to_string(dim));
        }
    }

    double worst = 0.0;
    std::size_t wi = 0;
    std::size_t wj = 0;
    for (std::size_t i = 0; i < partial.size(); ++i) {
        for (std::size_t j = i; j < partial.size(); ++j) {
            const double target = i == j ? 1.0 : 0.0;
            const double err = std::abs(dot(partial[i], partial[j]) - target);
            if (err > worst) {
                worst = err;
                wi = i;
                wj = j;
            }
        }
    }
    if (worst > input_tol) {
        std::ostringstream msg;
        msg << "complete_orthonormal_basis: inputs are not orthonormal, worst pair (" << wi << ","
            << wj << ") deviates by " << worst;
        throw DataError(msg.str());
    }

    std::vector<Vector> basis(partial.begin(), partial.end());
    for (std::size_t c = 0; c < dim && basis.size() < dim; ++c) {
        Vector v(dim, 0.0);
        v[c] = 1.0;
        // Two Gram-Schmidt passes restore orthogonality lost to cancellation.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const double proj = dot(b, v);
                for (std::size_t k = 0; k < dim; ++k) {
                    v[k] -= proj * b[k];
                }
            }
        }
        const double r = norm(v);
        if (r <= accept_residual) {
            continue;
        }
        for (double& x : v) {
            x /= r;
        }
        fix_sign(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace pcakit
