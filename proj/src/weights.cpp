#include "hdx/weights.hpp"

#include <bit>
#include <cmath>

namespace hdx {

double factorial(int n) {
    if (n < 0 || n > 170) fail(ErrorCode::DegreeOutOfRange, "factorial argument out of range");
    double result = 1.0;
    for (int i = 2; i <= n; ++i) result *= i;
    return result;
}

WeightFunction WeightFunction::extendTopWeights(const SimplicialComplex& x,
                                                const std::vector<double>& facetWeights) {
    const int n = x.dimension();
    if (static_cast<int>(facetWeights.size()) != x.count(n)) {
        fail(ErrorCode::MissingFacetWeight,
             "expected " + std::to_string(x.count(n)) + " facet weights, got " +
                 std::to_string(facetWeights.size()));
    }
    WeightFunction m;
    m.levels_.resize(static_cast<std::size_t>(n) + 2);
    m.levels_[static_cast<std::size_t>(n) + 1] =
        Eigen::Map<const Eigen::VectorXd>(facetWeights.data(),
                                          static_cast<Eigen::Index>(facetWeights.size()));
    for (double w : facetWeights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            fail(ErrorCode::NonPositiveWeight, "facet weights must be positive and finite");
        }
    }
    for (int k = n - 1; k >= -1; --k) {
        Eigen::VectorXd values = Eigen::VectorXd::Zero(x.count(k));
        for (int i = 0; i < x.count(k); ++i) {
            double sum = 0.0;
            for (const auto& c : x.cofacets(k, i)) {
                sum += m.levels_[static_cast<std::size_t>(k) + 2](c.index);
            }
            values(i) = sum;
        }
        m.levels_[static_cast<std::size_t>(k) + 1] = std::move(values);
    }
    return m;
}

WeightFunction WeightFunction::homogeneous(const SimplicialComplex& x) {
    return extendTopWeights(
        x, std::vector<double>(static_cast<std::size_t>(x.count(x.dimension())), 1.0));
}

double WeightFunction::at(int k, int i) const { return level(k)(i); }

double WeightFunction::at(const SimplicialComplex& x, const Simplex& s) const {
    int idx = x.indexOf(s);
    if (idx < 0) fail(ErrorCode::SimplexNotInComplex, "no weight for " + s.toString());
    return at(s.dimension(), idx);
}

const Eigen::VectorXd& WeightFunction::level(int k) const {
    if (k < -1 || k > topDimension()) {
        fail(ErrorCode::DegreeOutOfRange, "weight level " + std::to_string(k));
    }
    return levels_[static_cast<std::size_t>(k) + 1];
}

WeightFunction WeightFunction::fromLevels(std::vector<Eigen::VectorXd> levels) {
    WeightFunction m;
    m.levels_ = std::move(levels);
    return m;
}

std::vector<BalanceViolation> verifyBalanced(const SimplicialComplex& x,
                                             const WeightFunction& m, double relTol) {
    std::vector<BalanceViolation> violations;
    for (int k = -1; k < x.dimension(); ++k) {
        for (int i = 0; i < x.count(k); ++i) {
            double sum = 0.0;
            for (const auto& c : x.cofacets(k, i)) sum += m.at(k + 1, c.index);
            double actual = m.at(k, i);
            double scale = std::max({std::abs(sum), std::abs(actual), 1.0});
            if (std::abs(sum - actual) > relTol * scale) {
                violations.push_back(BalanceViolation{k, i, sum, actual});
            }
        }
    }
    return violations;
}

std::vector<WeightIdentityViolation> verifyWeightIdentities(const SimplicialComplex& x,
                                                            const WeightFunction& m,
                                                            double relTol) {
    std::vector<WeightIdentityViolation> violations;
    const int n = x.dimension();
    auto check = [&](const std::string& id, int k, int i, double lhs, double rhs) {
        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if (std::abs(lhs - rhs) > relTol * scale) {
            violations.push_back(WeightIdentityViolation{id, k, i, lhs, rhs});
        }
    };

    // Level-sum identity over every pair of levels k < l, facet form included.
    for (int l = 0; l <= n; ++l) {
        for (int k = -1; k < l; ++k) {
            std::vector<double> sums(static_cast<std::size_t>(x.count(k)), 0.0);
            for (int j = 0; j < x.count(l); ++j) {
                const Simplex& sigma = x.simplex(l, j);
                const double w = m.at(l, j);
                // Accumulate over all (k+1)-subsets of sigma.
                const std::size_t card = sigma.cardinality();
                const std::size_t total = std::size_t{1} << card;
                for (std::size_t mask = 0; mask < total; ++mask) {
                    if (static_cast<int>(std::popcount(mask)) != k + 1) continue;
                    std::vector<VertexId> verts;
                    for (std::size_t b = 0; b < card; ++b) {
                        if (mask & (std::size_t{1} << b)) verts.push_back(sigma.vertex(b));
                    }
                    sums[static_cast<std::size_t>(x.indexOf(Simplex(std::move(verts))))] += w;
                }
            }
            const std::string id = (l == n) ? "facet-sum" : "level-sum";
            for (int i = 0; i < x.count(k); ++i) {
                check(id + "[k=" + std::to_string(k) + ",l=" + std::to_string(l) + "]", k, i,
                      m.at(k, i) / factorial(l - k), sums[static_cast<std::size_t>(i)]);
            }
        }
    }
    return violations;
}

WeightFunction linkWeight(const SimplicialComplex& x, const WeightFunction& m,
                          const Simplex& tau, const SimplicialComplex& linkComplex) {
    std::vector<Eigen::VectorXd> levels(static_cast<std::size_t>(linkComplex.dimension()) + 2);
    for (int k = -1; k <= linkComplex.dimension(); ++k) {
        Eigen::VectorXd values(linkComplex.count(k));
        for (int i = 0; i < linkComplex.count(k); ++i) {
            values(i) = m.at(x, tau.unionWith(linkComplex.simplex(k, i)));
        }
        levels[static_cast<std::size_t>(k) + 1] = std::move(values);
    }
    return WeightFunction::fromLevels(std::move(levels));
}

WeightFunction probabilityWeight(const SimplicialComplex& x, const WeightFunction& m) {
    const int n = x.dimension();
    const double denominator = factorial(n + 1) * x.count(n);
    std::vector<Eigen::VectorXd> levels(static_cast<std::size_t>(n) + 2);
    for (int k = -1; k <= n; ++k) {
        levels[static_cast<std::size_t>(k) + 1] = m.level(k) * (factorial(k + 1) / denominator);
    }
    return WeightFunction::fromLevels(std::move(levels));
}

}  // namespace hdx
