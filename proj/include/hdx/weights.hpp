#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hdx/simplicial_complex.hpp"

namespace hdx {

/** Exact factorial as a double; valid for the desk-scale arguments used here. */
double factorial(int n);

/**
 * Positive weight on every simplex of a fixed complex, stored per level and
 * aligned with the complex's canonical simplex ordering.  Weights produced by
 * extendTopWeights satisfy the balance recursion
 *   m(tau) = sum of m(sigma) over cofacets sigma of tau.
 */
class WeightFunction {
  public:
    /**
     * Extends facet weights downward by the balance recursion.  The result
     * also satisfies m(tau) = (n-k)! * sum of m(sigma) over facets sigma
     * containing tau (checked by verifyWeightIdentities).
     *
     * @throws Error{MissingFacetWeight} on size mismatch,
     *         Error{NonPositiveWeight} on a weight <= 0.
     */
    static WeightFunction extendTopWeights(const SimplicialComplex& x,
                                           const std::vector<double>& facetWeights);

    /** Balanced extension of the all-ones facet weight. */
    static WeightFunction homogeneous(const SimplicialComplex& x);

    /** Top dimension this weight was built for. */
    int topDimension() const noexcept { return static_cast<int>(levels_.size()) - 2; }

    double at(int k, int i) const;
    double at(const SimplicialComplex& x, const Simplex& s) const;

    /** All k-level values, aligned with x.simplices(k). */
    const Eigen::VectorXd& level(int k) const;

    static WeightFunction fromLevels(std::vector<Eigen::VectorXd> levels);

  private:
    std::vector<Eigen::VectorXd> levels_;  // levels_[k+1]
};

struct BalanceViolation {
    int k = 0;
    int index = 0;
    double expected = 0.0;  // cofacet sum
    double actual = 0.0;    // stored weight
};

/** Balance check, |m(tau) - cofacet sum| <= relTol * scale per simplex. */
std::vector<BalanceViolation> verifyBalanced(const SimplicialComplex& x,
                                             const WeightFunction& m,
                                             double relTol = 1e-10);

struct WeightIdentityViolation {
    std::string identity;
    int k = 0;
    int index = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

/**
 * Checks the two closed forms implied by balance: the facet-sum formula
 * m(tau) = (n-k)! * sum over containing facets, and the level-sum formula
 * m(tau) / (l-k)! = sum of m(sigma) over l-simplices sigma containing tau.
 */
std::vector<WeightIdentityViolation> verifyWeightIdentities(const SimplicialComplex& x,
                                                            const WeightFunction& m,
                                                            double relTol = 1e-10);

/**
 * Induced weight on a link: m_tau(sigma) = m(tau union sigma).  Balanced
 * whenever m is, with m_tau(empty) = m(tau).
 *
 * @param linkComplex The complex returned by x.link(tau).
 */
WeightFunction linkWeight(const SimplicialComplex& x, const WeightFunction& m,
                          const Simplex& tau, const SimplicialComplex& linkComplex);

/**
 * Probability normalization w(tau) = m(tau) * (k+1)! / ((n+1)! * facetCount)
 * of the homogeneous weight.  Each level sums to one; w is not balanced.
 */
WeightFunction probabilityWeight(const SimplicialComplex& x, const WeightFunction& m);

}  // namespace hdx
