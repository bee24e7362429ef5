#pragma once

#include <Eigen/Dense>
#include <random>
#include <string>

#include "hdx/weights.hpp"

namespace hdx {

/**
 * Real antisymmetric function on ordered k-simplices, stored as one
 * coefficient per canonical (ascending) simplex in complex order.  Degree -1
 * cochains are scalars: the single value on the empty simplex.
 */
struct Cochain {
    int degree = 0;
    Eigen::VectorXd coeffs;
};

Cochain zeroCochain(const SimplicialComplex& x, int degree);

/** Coefficients uniform in [-1, 1), drawn portably from the engine bits. */
Cochain randomCochain(const SimplicialComplex& x, int degree, std::mt19937_64& rng);

/** Value on an ordered simplex: parity times the canonical coefficient. */
double evaluate(const SimplicialComplex& x, const Cochain& phi, const OrderedSimplex& site);

/** Weighted inner product: sum of m(tau) phi(tau) psi(tau) over level tau. */
double innerProduct(const SimplicialComplex& x, const WeightFunction& m, const Cochain& a,
                    const Cochain& b);

double normOf(const SimplicialComplex& x, const WeightFunction& m, const Cochain& a);

/**
 * Dense linear map between cochain levels, carrying the weight diagonals of
 * its domain and codomain so adjoints and spectra are well-defined.
 */
struct LinearOperator {
    std::string name;
    int domainDegree = 0;
    int codomainDegree = 0;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd domainWeights;
    Eigen::VectorXd codomainWeights;

    Cochain apply(const Cochain& phi) const;
};

LinearOperator identityOperator(const SimplicialComplex& x, const WeightFunction& m,
                                int degree);

/** second after first; degrees must chain. */
LinearOperator composeOperators(const LinearOperator& second, const LinearOperator& first);

LinearOperator addOperators(const LinearOperator& a, const LinearOperator& b);
LinearOperator scaleOperator(double factor, const LinearOperator& op);

/**
 * Coboundary d_k : C^k -> C^{k+1}, the alternating sum of vertex deletions;
 * d_{-1} sends the scalar c to the constant-c vertex function.  Valid for
 * -1 <= k <= n-1.  Satisfies d_{k+1} d_k = 0 exactly.
 */
LinearOperator buildCoboundary(const SimplicialComplex& x, const WeightFunction& m, int k);

/**
 * Codifferential delta_k : C^{k+1} -> C^k, the adjoint of d_k under the
 * weighted inner products, assembled from the explicit cofacet formula
 * (delta phi)(tau) = sum over cofacets v tau of (m(v tau)/m(tau)) phi(v tau).
 */
LinearOperator buildCodifferential(const SimplicialComplex& x, const WeightFunction& m,
                                   int k);

/** delta_k d_k on C^k; the zero map at k = n.  Valid for -1 <= k <= n. */
LinearOperator buildUpLaplacian(const SimplicialComplex& x, const WeightFunction& m, int k);

/** d_{k-1} delta_{k-1} on C^k.  Valid for 0 <= k <= n. */
LinearOperator buildDownLaplacian(const SimplicialComplex& x, const WeightFunction& m,
                                  int k);

/** Up plus down part.  Valid for 0 <= k <= n. */
LinearOperator buildFullLaplacian(const SimplicialComplex& x, const WeightFunction& m,
                                  int k);

/**
 * Localization phi_tau(sigma) = phi(tau sigma) on the link of tau, a cochain
 * of degree phi.degree - dim(tau) - 1 over linkComplex's canonical basis.
 *
 * @param linkComplex The complex returned by x.link(tau).
 */
Cochain localize(const SimplicialComplex& x, const Cochain& phi, const Simplex& tau,
                 const SimplicialComplex& linkComplex);

/**
 * Degree-preserving restriction phi^tau(sigma) = phi(sigma) to simplices of
 * the link.  Requires phi.degree + dim(tau) + 1 <= n so every link simplex of
 * that degree extends tau inside the complex.
 *
 * @throws Error{DegreeTooHigh} when the degree bound fails.
 */
Cochain restrictTo(const SimplicialComplex& x, const Cochain& phi, const Simplex& tau,
                   const SimplicialComplex& linkComplex);

/**
 * Side-restricted coboundary d_(k,j): keeps only the coboundary term whose
 * deleted vertex lies in side j.  Summing over all sides recovers d_k.
 *
 * @throws Error{InvalidPartition} if some simplex meets side j twice.
 */
LinearOperator buildSideCoboundary(const SimplicialComplex& x, const WeightFunction& m,
                                   const Partition& p, int k, int j);

/** Side-restricted codifferential, the adjoint of the side coboundary. */
LinearOperator buildSideCodifferential(const SimplicialComplex& x, const WeightFunction& m,
                                       const Partition& p, int k, int j);

/** Side down Laplacian d_(k-1,j) delta_(k-1,j) on C^k, 0 <= k <= n. */
LinearOperator buildSideDownLaplacian(const SimplicialComplex& x, const WeightFunction& m,
                                      const Partition& p, int k, int j);

/**
 * Orthogonal projection of a vertex cochain onto the complement of the span
 * of the side indicator functions: phi minus (sideCount) times the sum of the
 * side down Laplacians applied to phi, where sideCount is dimension + 1.
 */
Cochain nontrivialProjection(const SimplicialComplex& x, const WeightFunction& m,
                             const Partition& p, const Cochain& phi);

/** Vertex cochain scaled by -n on side i and left alone elsewhere. */
Cochain sideFlip(const SimplicialComplex& x, const Partition& p, const Cochain& phi,
                 int side);

}  // namespace hdx
