#include "hdx/cochain.hpp"

#include <algorithm>
#include <cmath>

namespace hdx {

namespace {

void checkDegree(const SimplicialComplex& x, int degree, int lo, int hi,
                 const std::string& what) {
    if (degree < lo || degree > hi) {
        fail(ErrorCode::DegreeOutOfRange,
             what + ": degree " + std::to_string(degree) + " outside [" + std::to_string(lo) +
                 ", " + std::to_string(hi) + "] for dimension " +
                 std::to_string(x.dimension()));
    }
}

void checkCochain(const SimplicialComplex& x, const Cochain& phi, const std::string& what) {
    checkDegree(x, phi.degree, -1, x.dimension(), what);
    if (phi.coeffs.size() != x.count(phi.degree)) {
        fail(ErrorCode::DegreeMismatch, what + ": coefficient count does not match level");
    }
}

/** Position at which v sits inside the sorted union sigma = tau + v. */
int insertionPosition(const Simplex& sigma, VertexId v) {
    const auto& verts = sigma.vertices();
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
}

}  // namespace

Cochain zeroCochain(const SimplicialComplex& x, int degree) {
    checkDegree(x, degree, -1, x.dimension(), "zero cochain");
    return Cochain{degree, Eigen::VectorXd::Zero(x.count(degree))};
}

Cochain randomCochain(const SimplicialComplex& x, int degree, std::mt19937_64& rng) {
    Cochain phi = zeroCochain(x, degree);
    for (Eigen::Index i = 0; i < phi.coeffs.size(); ++i) {
        // Top 53 bits to a uniform double in [0,1), then shifted to [-1,1).
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        phi.coeffs(i) = 2.0 * u - 1.0;
    }
    return phi;
}

double evaluate(const SimplicialComplex& x, const Cochain& phi, const OrderedSimplex& site) {
    checkCochain(x, phi, "evaluate");
    if (site.dimension() != phi.degree) {
        fail(ErrorCode::DegreeMismatch, "evaluation site has wrong dimension");
    }
    int idx = x.indexOf(site.canonical());
    if (idx < 0) {
        fail(ErrorCode::SimplexNotInComplex,
             "evaluation site " + site.canonical().toString() + " not in complex");
    }
    return site.parity() * phi.coeffs(idx);
}

double innerProduct(const SimplicialComplex& x, const WeightFunction& m, const Cochain& a,
                    const Cochain& b) {
    checkCochain(x, a, "inner product");
    checkCochain(x, b, "inner product");
    if (a.degree != b.degree) {
        fail(ErrorCode::DegreeMismatch, "inner product of cochains of unequal degree");
    }
    return a.coeffs.cwiseProduct(b.coeffs).dot(m.level(a.degree));
}

double normOf(const SimplicialComplex& x, const WeightFunction& m, const Cochain& a) {
    return std::sqrt(std::max(0.0, innerProduct(x, m, a, a)));
}

Cochain LinearOperator::apply(const Cochain& phi) const {
    if (phi.degree != domainDegree || phi.coeffs.size() != matrix.cols()) {
        fail(ErrorCode::DegreeMismatch, name + ": operand degree mismatch");
    }
    return Cochain{codomainDegree, matrix * phi.coeffs};
}

LinearOperator identityOperator(const SimplicialComplex& x, const WeightFunction& m,
                                int degree) {
    checkDegree(x, degree, -1, x.dimension(), "identity");
    const int size = x.count(degree);
    return LinearOperator{"identity[" + std::to_string(degree) + "]", degree, degree,
                          Eigen::MatrixXd::Identity(size, size), m.level(degree),
                          m.level(degree)};
}

LinearOperator composeOperators(const LinearOperator& second, const LinearOperator& first) {
    if (first.codomainDegree != second.domainDegree) {
        fail(ErrorCode::DegreeMismatch,
             "cannot compose " + second.name + " after " + first.name);
    }
    return LinearOperator{second.name + "*" + first.name, first.domainDegree,
                          second.codomainDegree, second.matrix * first.matrix,
                          first.domainWeights, second.codomainWeights};
}

LinearOperator addOperators(const LinearOperator& a, const LinearOperator& b) {
    if (a.domainDegree != b.domainDegree || a.codomainDegree != b.codomainDegree) {
        fail(ErrorCode::DegreeMismatch, "cannot add " + a.name + " and " + b.name);
    }
    return LinearOperator{a.name + "+" + b.name, a.domainDegree, a.codomainDegree,
                          a.matrix + b.matrix, a.domainWeights, a.codomainWeights};
}

LinearOperator scaleOperator(double factor, const LinearOperator& op) {
    LinearOperator result = op;
    result.matrix *= factor;
    return result;
}

LinearOperator buildCoboundary(const SimplicialComplex& x, const WeightFunction& m, int k) {
    checkDegree(x, k, -1, x.dimension() - 1, "coboundary");
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(x.count(k + 1), x.count(k));
    for (int row = 0; row < x.count(k + 1); ++row) {
        const Simplex& sigma = x.simplex(k + 1, row);
        double sign = 1.0;
        for (std::size_t drop = 0; drop < sigma.cardinality(); ++drop) {
            d(row, x.indexOf(sigma.face(drop))) += sign;
            sign = -sign;
        }
    }
    return LinearOperator{"d[" + std::to_string(k) + "]", k, k + 1, std::move(d),
                          m.level(k), m.level(k + 1)};
}

LinearOperator buildCodifferential(const SimplicialComplex& x, const WeightFunction& m,
                                   int k) {
    checkDegree(x, k, -1, x.dimension() - 1, "codifferential");
    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(x.count(k), x.count(k + 1));
    for (int row = 0; row < x.count(k); ++row) {
        const double weight = m.at(k, row);
        for (const auto& c : x.cofacets(k, row)) {
            const Simplex& sigma = x.simplex(k + 1, c.index);
            // phi(v tau) = (-1)^p phi(sigma) with p the slot of v inside sigma.
            const int p = insertionPosition(sigma, c.added);
            const double sign = (p % 2 == 0) ? 1.0 : -1.0;
            delta(row, c.index) += sign * m.at(k + 1, c.index) / weight;
        }
    }
    return LinearOperator{"delta[" + std::to_string(k) + "]", k + 1, k, std::move(delta),
                          m.level(k + 1), m.level(k)};
}

LinearOperator buildUpLaplacian(const SimplicialComplex& x, const WeightFunction& m, int k) {
    checkDegree(x, k, -1, x.dimension(), "up Laplacian");
    const std::string name = "up_laplacian[" + std::to_string(k) + "]";
    if (k == x.dimension()) {
        const int size = x.count(k);
        return LinearOperator{name, k, k, Eigen::MatrixXd::Zero(size, size), m.level(k),
                              m.level(k)};
    }
    LinearOperator result =
        composeOperators(buildCodifferential(x, m, k), buildCoboundary(x, m, k));
    result.name = name;
    return result;
}

LinearOperator buildDownLaplacian(const SimplicialComplex& x, const WeightFunction& m,
                                  int k) {
    checkDegree(x, k, 0, x.dimension(), "down Laplacian");
    LinearOperator result =
        composeOperators(buildCoboundary(x, m, k - 1), buildCodifferential(x, m, k - 1));
    result.name = "down_laplacian[" + std::to_string(k) + "]";
    return result;
}

LinearOperator buildFullLaplacian(const SimplicialComplex& x, const WeightFunction& m,
                                  int k) {
    LinearOperator result =
        addOperators(buildUpLaplacian(x, m, k), buildDownLaplacian(x, m, k));
    result.name = "laplacian[" + std::to_string(k) + "]";
    return result;
}

Cochain localize(const SimplicialComplex& x, const Cochain& phi, const Simplex& tau,
                 const SimplicialComplex& linkComplex) {
    checkCochain(x, phi, "localize");
    const int resultDegree = phi.degree - tau.dimension() - 1;
    checkDegree(linkComplex, resultDegree, -1, linkComplex.dimension(), "localize");
    Cochain result = zeroCochain(linkComplex, resultDegree);
    for (int i = 0; i < linkComplex.count(resultDegree); ++i) {
        const Simplex& sigma = linkComplex.simplex(resultDegree, i);
        std::vector<VertexId> ordered = tau.vertices();
        ordered.insert(ordered.end(), sigma.vertices().begin(), sigma.vertices().end());
        const int parity = sortParity(ordered);
        result.coeffs(i) = parity * phi.coeffs(x.indexOf(tau.unionWith(sigma)));
    }
    return result;
}

Cochain restrictTo(const SimplicialComplex& x, const Cochain& phi, const Simplex& tau,
                   const SimplicialComplex& linkComplex) {
    checkCochain(x, phi, "restrict");
    if (phi.degree + tau.dimension() + 1 > x.dimension()) {
        fail(ErrorCode::DegreeTooHigh,
             "restriction of degree " + std::to_string(phi.degree) + " to the link of " +
                 tau.toString() + " leaves the complex");
    }
    Cochain result = zeroCochain(linkComplex, phi.degree);
    for (int i = 0; i < linkComplex.count(phi.degree); ++i) {
        result.coeffs(i) = phi.coeffs(x.indexOf(linkComplex.simplex(phi.degree, i)));
    }
    return result;
}

LinearOperator buildSideCoboundary(const SimplicialComplex& x, const WeightFunction& m,
                                   const Partition& p, int k, int j) {
    checkDegree(x, k, -1, x.dimension() - 1, "side coboundary");
    if (j < 0 || j >= p.sideCount()) fail(ErrorCode::InvalidSide, "side out of range");
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(x.count(k + 1), x.count(k));
    for (int row = 0; row < x.count(k + 1); ++row) {
        const Simplex& sigma = x.simplex(k + 1, row);
        bool hit = false;
        for (std::size_t i = 0; i < sigma.cardinality(); ++i) {
            if (p.side(sigma.vertex(i)) != j) continue;
            if (hit) {
                fail(ErrorCode::InvalidPartition,
                     sigma.toString() + " meets side " + std::to_string(j) + " twice");
            }
            hit = true;
            d(row, x.indexOf(sigma.face(i))) += (i % 2 == 0) ? 1.0 : -1.0;
        }
    }
    return LinearOperator{"d[" + std::to_string(k) + "," + std::to_string(j) + "]", k, k + 1,
                          std::move(d), m.level(k), m.level(k + 1)};
}

LinearOperator buildSideCodifferential(const SimplicialComplex& x, const WeightFunction& m,
                                       const Partition& p, int k, int j) {
    checkDegree(x, k, -1, x.dimension() - 1, "side codifferential");
    if (j < 0 || j >= p.sideCount()) fail(ErrorCode::InvalidSide, "side out of range");
    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(x.count(k), x.count(k + 1));
    for (int row = 0; row < x.count(k); ++row) {
        const double weight = m.at(k, row);
        for (const auto& c : x.cofacets(k, row)) {
            if (p.side(c.added) != j) continue;
            const Simplex& sigma = x.simplex(k + 1, c.index);
            const int pos = insertionPosition(sigma, c.added);
            const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
            delta(row, c.index) += sign * m.at(k + 1, c.index) / weight;
        }
    }
    return LinearOperator{"delta[" + std::to_string(k) + "," + std::to_string(j) + "]",
                          k + 1, k, std::move(delta), m.level(k + 1), m.level(k)};
}

LinearOperator buildSideDownLaplacian(const SimplicialComplex& x, const WeightFunction& m,
                                      const Partition& p, int k, int j) {
    checkDegree(x, k, 0, x.dimension(), "side down Laplacian");
    LinearOperator result = composeOperators(buildSideCoboundary(x, m, p, k - 1, j),
                                             buildSideCodifferential(x, m, p, k - 1, j));
    result.name =
        "down_laplacian[" + std::to_string(k) + "," + std::to_string(j) + "]";
    return result;
}

Cochain nontrivialProjection(const SimplicialComplex& x, const WeightFunction& m,
                             const Partition& p, const Cochain& phi) {
    checkCochain(x, phi, "nontrivial projection");
    if (phi.degree != 0) {
        fail(ErrorCode::DegreeMismatch, "nontrivial projection acts on vertex cochains");
    }
    // Every facet is a transversal, so the occupied side count is dim + 1.
    const double sides = x.dimension() + 1;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(phi.coeffs.size());
    for (int j = 0; j < p.sideCount(); ++j) {
        sum += buildSideDownLaplacian(x, m, p, 0, j).matrix * phi.coeffs;
    }
    return Cochain{0, phi.coeffs - sides * sum};
}

Cochain sideFlip(const SimplicialComplex& x, const Partition& p, const Cochain& phi,
                 int side) {
    checkCochain(x, phi, "side flip");
    if (phi.degree != 0) {
        fail(ErrorCode::DegreeMismatch, "side flip acts on vertex cochains");
    }
    if (side < 0 || side >= p.sideCount()) fail(ErrorCode::InvalidSide, "side out of range");
    Cochain result = phi;
    const double scale = -static_cast<double>(x.dimension());
    for (int i = 0; i < x.count(0); ++i) {
        if (p.side(x.simplex(0, i).vertex(0)) == side) result.coeffs(i) *= scale;
    }
    return result;
}

}  // namespace hdx
