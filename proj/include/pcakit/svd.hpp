#ifndef PCAKIT_SVD_HPP
#define PCAKIT_SVD_HPP

#include "pcakit/matrix.hpp"

#include <cstddef>

namespace pcakit {

/// X = U Sigma V^T for an n x m matrix X.
///
/// `singular_values` holds the min(n, m) diagonal entries of Sigma in
/// descending order; entries past `rank` are exactly zero. Columns of `u`
/// (n x n) and `v` (m x m) past `rank` are filled-in orthonormal vectors.
struct SvdFactors {
    Matrix u;
    Vector singular_values;
    Matrix v;
    std::size_t rank = 0;
};

/// Singular values at or below this are treated as zero. It is
/// 1e-10 * sigma_max, raised to 8 * sqrt(eps * max(rows, cols)) * sigma_max
/// because squaring X in X^T X leaves null directions with singular values
/// of that order; never below 1e-12 absolute.
double svd_rank_tolerance(double sigma_max, std::size_t rows, std::size_t cols);

/// SVD through the eigenvectors of X^T X:
///   sigma_i = sqrt(lambda_i),  u_i = X v_i / sigma_i  for sigma_i above the
///   rank tolerance,
/// then U and V are filled to square with complete_orthonormal_basis. Each
/// u_i is re-orthogonalized against u_1..u_{i-1}, which moves it only at
/// roundoff level. Eigensolver errors propagate.
SvdFactors svd(const Matrix& x);

/// The V side of svd() alone: singular values, V (m x m) and rank, without
/// forming U. Values and V are identical to what svd() returns; useful when
/// n is large and only the row-space basis is wanted.
struct RightSingular {
    Vector singular_values;
    Matrix v;
    std::size_t rank = 0;
};
RightSingular svd_right(const Matrix& x);

/// U Sigma V^T with Sigma laid out as the n x m rectangular diagonal.
Matrix reconstruct(const SvdFactors& f);

/// Keeps the first k singular values and zeroes the rest; U and V are
/// untouched. Throws DimensionError when k > rank.
SvdFactors truncate(const SvdFactors& f, std::size_t k);

} // namespace pcakit

#endif
