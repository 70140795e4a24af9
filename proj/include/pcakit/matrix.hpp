#ifndef PCAKIT_MATRIX_HPP
#define PCAKIT_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pcakit {

using Vector = std::vector<double>;

/// Dense real matrix, row-major, immutable once built.
///
/// Every entry is finite; constructors throw DataError otherwise. Shapes
/// are at least 1x1. Algorithms that need scratch space work on plain
/// vectors and wrap the result at the end.
class Matrix {
public:
    /// rows x cols zero matrix.
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> values);
    static Matrix from_rows(std::span<const Vector> rows);
    static Matrix from_columns(std::span<const Vector> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return entries_[i * cols_ + j];
    }

    std::span<const double> entries() const noexcept { return entries_; }
    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;

    /// "rows x cols", for error messages.
    std::string shape() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);
Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double factor);

// A^T A, filled from the upper triangle so the result is exactly symmetric.
Matrix gram(const Matrix& a);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double trace(const Matrix& a);
// max |a_ij - a_ji|; throws DimensionError for non-square input.
double asymmetry(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// True iff max |a^T a - I| <= tol. Throws DimensionError if a is not square.
bool is_orthogonal(const Matrix& a, double tol = 1e-12);

/// Flips v so that its largest-magnitude entry is positive. Entries within
/// a relative 1e-12 of the maximum count as tied; the first of them decides.
void fix_sign(std::span<double> v);

/// Extends `partial` (pairwise orthonormal within 1e-10) to a full
/// orthonormal basis of R^dim. The inputs are returned unchanged and in
/// order, followed by canonical vectors e_1, e_2, ... orthogonalized against
/// everything accepted so far. A candidate is kept when its residual norm
/// exceeds 1e-6; kept vectors are normalized and sign-fixed.
///
/// Throws DataError naming the worst offending pair when the inputs are not
/// orthonormal, and DimensionError on a length mismatch or too many inputs.
std::vector<Vector> complete_orthonormal_basis(std::span<const Vector> partial, std::size_t dim);

} // namespace pcakit

#endif
