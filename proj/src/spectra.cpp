#include "hdx/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hdx {

namespace {

struct JacobiResult {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // orthonormal columns
};

double offDiagonalNorm(const Eigen::MatrixXd& a) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j) sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

/** Cyclic Jacobi on a symmetric matrix. */
JacobiResult jacobiSymmetric(Eigen::MatrixXd a, const JacobiOptions& options) {
    const Eigen::Index size = a.rows();
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(size, size);
    const double totalNorm = a.norm();  // invariant under the rotations

    for (int sweep = 0; sweep < options.maxSweeps; ++sweep) {
        if (offDiagonalNorm(a) <= options.convergence * totalNorm) break;
        if (sweep == options.maxSweeps - 1) {
            fail(ErrorCode::NoConvergence, "Jacobi sweeps exhausted");
        }
        for (Eigen::Index p = 0; p < size - 1; ++p) {
            for (Eigen::Index q = p + 1; q < size; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                     : -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index i = 0; i < size; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (Eigen::Index i = 0; i < size; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (Eigen::Index i = 0; i < size; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(size));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](Eigen::Index lhs, Eigen::Index rhs) { return a(lhs, lhs) < a(rhs, rhs); });

    JacobiResult result;
    result.values.resize(size);
    result.vectors.resize(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        result.values(i) = a(order[static_cast<std::size_t>(i)],
                             order[static_cast<std::size_t>(i)]);
        result.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return result;
}

}  // namespace

int SpectralReport::zeroMultiplicity() const {
    int count = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (std::abs(eigenvalues(i)) < zeroSnap) ++count;
    }
    return count;
}

std::optional<double> SpectralReport::smallestPositive() const {
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (eigenvalues(i) >= zeroSnap) return eigenvalues(i);
    }
    return std::nullopt;
}

std::optional<double> SpectralReport::largest() const {
    if (eigenvalues.size() == 0) return std::nullopt;
    return eigenvalues(eigenvalues.size() - 1);
}

std::optional<double> SpectralReport::largestBelow(double threshold) const {
    std::optional<double> best;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (eigenvalues(i) < threshold) best = eigenvalues(i);
    }
    return best;
}

int SpectralReport::multiplicityNear(double value, double tol) const {
    int count = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (std::abs(eigenvalues(i) - value) <= tol) ++count;
    }
    return count;
}

SpectralReport eigSelfadjoint(const LinearOperator& op, const JacobiOptions& options) {
    if (op.domainDegree != op.codomainDegree || op.matrix.rows() != op.matrix.cols()) {
        fail(ErrorCode::DegreeMismatch, op.name + ": spectrum of a non-endomorphism");
    }
    const Eigen::Index size = op.matrix.rows();
    Eigen::VectorXd sqrtW(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        if (!(op.domainWeights(i) > 0.0)) {
            fail(ErrorCode::NonPositiveWeight, op.name + ": non-positive weight entry");
        }
        sqrtW(i) = std::sqrt(op.domainWeights(i));
    }

    // Conjugation by the square-root weights symmetrizes weighted self-adjoint
    // operators: W A = A^T W implies S A S^{-1} symmetric with S = sqrt(W).
    Eigen::MatrixXd b = sqrtW.asDiagonal() * op.matrix *
                        sqrtW.cwiseInverse().asDiagonal();
    const double asymmetry =
        (size == 0) ? 0.0 : (b - b.transpose()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, size == 0 ? 0.0 : b.cwiseAbs().maxCoeff());
    if (asymmetry > options.symmetryTol * scale) {
        fail(ErrorCode::NotSelfAdjoint,
             op.name + ": asymmetry " + std::to_string(asymmetry) + " after conjugation");
    }
    Eigen::MatrixXd symmetric = 0.5 * (b + b.transpose());
    JacobiResult jacobi = jacobiSymmetric(std::move(symmetric), options);

    SpectralReport report;
    report.operatorName = op.name;
    report.zeroSnap = options.zeroSnap;
    report.eigenvalues = std::move(jacobi.values);
    report.eigenvectors = sqrtW.cwiseInverse().asDiagonal() * jacobi.vectors;
    return report;
}

double operatorNorm(const LinearOperator& op, const JacobiOptions& options) {
    SpectralReport report = eigSelfadjoint(op, options);
    double norm = 0.0;
    for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
        norm = std::max(norm, std::abs(report.eigenvalues(i)));
    }
    return norm;
}

LinkSpectraReport linkSpectra(const SimplicialComplex& x, const WeightFunction& m, int k,
                              const JacobiOptions& options) {
    if (k < -1 || k > x.dimension() - 2) {
        fail(ErrorCode::DegreeOutOfRange,
             "link spectra need links of dimension >= 1; level " + std::to_string(k));
    }
    LinkSpectraReport report;
    report.level = k;
    for (const Simplex& tau : x.simplices(k)) {
        SimplicialComplex linkComplex = x.link(tau);
        WeightFunction linkM = linkWeight(x, m, tau, linkComplex);
        SpectralReport spectral =
            eigSelfadjoint(buildUpLaplacian(linkComplex, linkM, 0), options);
        spectral.operatorName = "up_laplacian[0] on link " + tau.toString();
        const bool connected = spectral.zeroMultiplicity() == 1;
        report.allConnected = report.allConnected && connected;
        if (auto lambda = spectral.smallestPositive()) {
            if (!report.aggregateLambda || *lambda < *report.aggregateLambda) {
                report.aggregateLambda = *lambda;
            }
        }
        if (auto kappa = spectral.largest()) {
            if (!report.aggregateKappa || *kappa > *report.aggregateKappa) {
                report.aggregateKappa = *kappa;
            }
        }
        report.entries.push_back(LinkSpectrumEntry{tau, std::move(spectral), connected});
    }
    return report;
}

int harmonicDimension(const SimplicialComplex& x, const WeightFunction& m, int k,
                      const JacobiOptions& options) {
    if (k < 0 || k > x.dimension()) {
        fail(ErrorCode::DegreeOutOfRange, "harmonic dimension level " + std::to_string(k));
    }
    // Degree 0 omits the down part: with it, the kernel would count reduced
    // components; Betti number 0 counts all components.
    LinearOperator laplacian = (k == 0) ? buildUpLaplacian(x, m, 0)
                                        : buildFullLaplacian(x, m, k);
    return eigSelfadjoint(laplacian, options).zeroMultiplicity();
}

int matrixRank(const Eigen::MatrixXd& a, double tol) {
    Eigen::MatrixXd work = a;
    const Eigen::Index rows = work.rows();
    const Eigen::Index cols = work.cols();
    const double scale = std::max(1.0, work.size() == 0 ? 0.0 : work.cwiseAbs().maxCoeff());
    int rank = 0;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index pivot = row;
        for (Eigen::Index r = row + 1; r < rows; ++r) {
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
        }
        if (std::abs(work(pivot, col)) <= tol * scale) continue;
        work.row(pivot).swap(work.row(row));
        for (Eigen::Index r = row + 1; r < rows; ++r) {
            work.row(r) -= (work(r, col) / work(row, col)) * work.row(row);
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<int> bettiNumbers(const SimplicialComplex& x) {
    const int n = x.dimension();
    WeightFunction m = WeightFunction::homogeneous(x);
    std::vector<int> ranks(static_cast<std::size_t>(n) + 1, 0);  // rank of d_k, 0 <= k < n
    for (int k = 0; k < n; ++k) {
        ranks[static_cast<std::size_t>(k)] = matrixRank(buildCoboundary(x, m, k).matrix);
    }
    std::vector<int> betti(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k <= n; ++k) {
        const int kernel = x.count(k) - (k < n ? ranks[static_cast<std::size_t>(k)] : 0);
        const int image = (k > 0) ? ranks[static_cast<std::size_t>(k) - 1] : 0;
        betti[static_cast<std::size_t>(k)] = kernel - image;
    }
    return betti;
}

}  // namespace hdx
