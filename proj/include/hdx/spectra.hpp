#pragma once

#include <optional>

#include "hdx/cochain.hpp"

namespace hdx {

struct JacobiOptions {
    double convergence = 1e-12;  // off-diagonal vs total Frobenius mass
    int maxSweeps = 128;
    double zeroSnap = 1e-8;      // |mu| below this counts as zero
    double symmetryTol = 1e-8;   // allowed asymmetry after conjugation
};

/**
 * Eigenvalue decomposition of a weighted self-adjoint operator.  Eigenvalues
 * ascend; eigenvector columns live in the original (unconjugated) basis and
 * are orthonormal under the weighted inner product.
 */
struct SpectralReport {
    std::string operatorName;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    double zeroSnap = 1e-8;

    int zeroMultiplicity() const;

    /** Smallest eigenvalue above the zero snap, if any. */
    std::optional<double> smallestPositive() const;

    /** Largest eigenvalue, if the spectrum is non-empty. */
    std::optional<double> largest() const;

    /** Largest eigenvalue strictly below `threshold`, if any. */
    std::optional<double> largestBelow(double threshold) const;

    int multiplicityNear(double value, double tol) const;
};

/**
 * Diagonalizes an operator self-adjoint under its weighted inner product by
 * conjugating with the square-root weight diagonal and running cyclic Jacobi
 * sweeps until the off-diagonal Frobenius mass falls below the convergence
 * factor times the total.
 *
 * @throws Error{NotSelfAdjoint} when the conjugated matrix stays asymmetric,
 *         Error{NoConvergence} when sweeps run out (not expected).
 */
SpectralReport eigSelfadjoint(const LinearOperator& op, const JacobiOptions& options = {});

/** Largest absolute eigenvalue of a weighted self-adjoint operator. */
double operatorNorm(const LinearOperator& op, const JacobiOptions& options = {});

struct LinkSpectrumEntry {
    Simplex tau;
    SpectralReport report;
    bool connectedLink = true;  // zero eigenvalue is simple
};

struct LinkSpectraReport {
    int level = 0;
    std::vector<LinkSpectrumEntry> entries;
    bool allConnected = true;
    std::optional<double> aggregateLambda;  // min of link lambdas
    std::optional<double> aggregateKappa;   // max of link maxima
};

/**
 * Degree-0 up Laplacian spectrum of the link of every tau at the given level,
 * with the aggregate window across links.  Disconnected links (multiple zero
 * eigenvalues) are flagged, not silently passed.  Valid for -1 <= k <= n-2.
 */
LinkSpectraReport linkSpectra(const SimplicialComplex& x, const WeightFunction& m, int k,
                              const JacobiOptions& options = {});

/**
 * Dimension of the kernel of the degree-k Laplacian, which matches the k-th
 * Betti number.  Degree 0 uses the up part alone so the count is the number
 * of connected components; the top degree has no up part.
 */
int harmonicDimension(const SimplicialComplex& x, const WeightFunction& m, int k,
                      const JacobiOptions& options = {});

/** Betti numbers by Gaussian-elimination ranks of the coboundaries. */
std::vector<int> bettiNumbers(const SimplicialComplex& x);

/** Numerical rank with partial pivoting. */
int matrixRank(const Eigen::MatrixXd& a, double tol = 1e-9);

}  // namespace hdx
