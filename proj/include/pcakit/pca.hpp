#ifndef PCAKIT_PCA_HPP
#define PCAKIT_PCA_HPP

#include "pcakit/matrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcakit {

enum class Route { eigen, svd };
enum class Normalization { population, sample };

std::string_view to_string(Route r);
std::string_view to_string(Normalization n);
Route parse_route(std::string_view s);
Normalization parse_normalization(std::string_view s);

/// m x n measurement matrix: one row per measurement type, one column per
/// sample. Needs m >= 1, n >= 2 and m unique names.
class Dataset {
public:
    Dataset(Matrix data, std::vector<std::string> names);

    /// Names the rows x1, x2, ...
    static Dataset unnamed(Matrix data);

    const Matrix& data() const noexcept { return data_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::size_t m() const noexcept { return data_.rows(); }
    std::size_t n() const noexcept { return data_.cols(); }

private:
    Matrix data_;
    std::vector<std::string> names_;
};

/// Fitted PCA. Rows of `components` are the principal components (P in
/// Y = P X), sorted by descending variance.
struct PcaModel {
    Vector mean;
    Matrix components;
    Vector variances;
    Route route = Route::eigen;
    Normalization normalization = Normalization::population;
    std::vector<std::string> names;

    std::size_t m() const noexcept { return mean.size(); }
};

/// Checks the model invariants (shapes, orthonormal P, sorted nonnegative
/// variances). Throws DataError describing the first violation.
void validate(const PcaModel& model);

/// a.b / n, or a.b / (n - 1) for sample normalization. Inputs are assumed
/// centered.
double covariance(std::span<const double> a, std::span<const double> b, Normalization norm);

struct Centered {
    Dataset data;
    Vector mean;
};

Centered center(const Dataset& d);

/// C_X = X X^T / n (or n - 1). Rows must already be centered; throws
/// DataError otherwise.
Matrix covariance_matrix(const Dataset& centered, Normalization norm = Normalization::population);

/// Eigenvectors of the covariance matrix. Directions whose variance is
/// numerically zero are replaced by a deterministic orthonormal fill-up.
PcaModel fit_eigen(const Dataset& d, Normalization norm = Normalization::population);

/// Right singular vectors of Y = X^T / sqrt(n) (or sqrt(n - 1)).
PcaModel fit_svd(const Dataset& d, Normalization norm = Normalization::population);

PcaModel fit(const Dataset& d, Route route, Normalization norm = Normalization::population);

/// Y = P (X - mean), m x n.
Matrix project(const PcaModel& model, const Matrix& x);
Matrix project(const PcaModel& model, const Dataset& d);

/// X_hat = P^T Y_k + mean, where Y_k keeps the first k rows of y. y may
/// hold just those k rows or all m of them.
Matrix reconstruct(const PcaModel& model, const Matrix& y, std::size_t k);

/// variances / sum(variances). Throws DataError when every variance is zero.
Vector explained_variance_ratio(const PcaModel& model);

} // namespace pcakit

#endif
