#ifndef PCAKIT_EIGEN_HPP
#define PCAKIT_EIGEN_HPP

#include "pcakit/matrix.hpp"

#include <cstddef>
#include <vector>

namespace pcakit {

struct JacobiOptions {
    // Converged once the off-diagonal Frobenius norm drops to tol times its
    // initial value.
    double tol = 1e-12;
    int max_sweeps = 100;
    // Snap negative eigenvalues with |lambda| <= 1e-10 * max|lambda| to zero.
    // Meant for matrices that are PSD in exact arithmetic (covariances, Gram
    // matrices).
    bool clamp_psd = false;
};

/// A = E diag(eigenvalues) E^T. Eigenvalues are descending; column i of
/// `eigenvectors` pairs with eigenvalues[i] and carries the
/// largest-entry-positive sign convention.
struct EigenDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Requires a square input with max |a_ij - a_ji| <= 1e-10 (the symmetric
/// part is what gets decomposed). Equal eigenvalues keep the order in which
/// they sit on the rotated diagonal. Throws DimensionError or DataError on
/// bad input and NumericalError, carrying the off-diagonal norm, when
/// max_sweeps is exhausted.
EigenDecomposition jacobi_eigen_symmetric(const Matrix& a, const JacobiOptions& opts = {});

struct GreedyOptions {
    int max_iters = 100000;
    // Power iteration stops once ||C v - lambda v|| <= tol * max|c_ij|.
    double tol = 1e-12;
    // Consecutive variances closer than min_gap * (largest variance) make
    // the direction non-unique; that is reported as an error.
    double min_gap = 1e-6;
};

struct VarianceDirection {
    Vector direction;
    double variance = 0.0;
};

/// Greedy variance maximization: pick the unit direction with the largest
/// p^T C p, then repeat inside the orthogonal complement of everything
/// picked so far.
///
/// Each step is a power iteration started from the normalized all-ones
/// vector (or the first canonical vector with a usable residual), projected
/// against the accepted directions at every iteration. When k < m one extra
/// step estimates the next variance so the last gap can be checked.
///
/// Throws NumericalError when an iteration stalls or two consecutive
/// variances are not separated; in both cases jacobi_eigen_symmetric is the
/// route to use. A start vector with no component along the dominant
/// direction shows up as out-of-order variances and is reported the same way.
std::vector<VarianceDirection> greedy_max_variance_directions(const Matrix& c, std::size_t k,
                                                               const GreedyOptions& opts = {});

} // namespace pcakit

#endif
