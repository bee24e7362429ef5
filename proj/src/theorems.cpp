#include "hdx/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "hdx/errors.hpp"

namespace hdx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

/** |a - b| against the larger of 1 and the operand magnitudes. */
double relErr(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

struct LinkEig {
    LinkBundle bundle;
    SpectralReport report;
};

/** Degree-0 up Laplacian decomposition of every link at one level. */
std::vector<LinkEig> linkEigs(const SimplicialComplex& x, const WeightFunction& m, int k,
                              const JacobiOptions& jacobi) {
    std::vector<LinkEig> out;
    std::vector<LinkBundle> bundles = linkLevel(x, m, k);
    out.reserve(bundles.size());
    for (auto& b : bundles) {
        SpectralReport rep = eigSelfadjoint(buildUpLaplacian(b.complex, b.weight, 0), jacobi);
        out.push_back(LinkEig{std::move(b), std::move(rep)});
    }
    return out;
}

struct Window {
    double lambda = kInf;
    double kappa = -kInf;
    bool allConnected = true;
    bool any = false;
};

/** Aggregate [min gap, max top] across the links of one level. */
Window aggregateWindow(const std::vector<LinkEig>& eigs) {
    Window w;
    for (const auto& le : eigs) {
        w.allConnected = w.allConnected && le.report.zeroMultiplicity() == 1;
        if (auto gap = le.report.smallestPositive()) {
            w.lambda = std::min(w.lambda, *gap);
            w.any = true;
        }
        if (auto top = le.report.largest()) {
            if (*top > le.report.zeroSnap) w.kappa = std::max(w.kappa, *top);
        }
    }
    return w;
}

}  // namespace

double descentF(double x) {
    if (x == 0.0) fail(ErrorCode::PoleHit, "descent map is undefined at 0");
    return 2.0 - 1.0 / x;
}

double descentFIter(double x, int l) {
    if (l < 0) fail(ErrorCode::DegreeOutOfRange, "iterate count must be non-negative");
    const double den = l * x - (l - 1);
    const double scale = std::max({1.0, std::abs(l * x), std::abs(double(l - 1))});
    if (std::abs(den) < 1e-14 * scale)
        fail(ErrorCode::PoleHit,
             "descent iterate hits a pole at x = " + num(x) + ", l = " + std::to_string(l));
    return ((l + 1) * x - l) / den;
}

std::string verifyStatusName(VerifyStatus status) {
    switch (status) {
        case VerifyStatus::Passed: return "passed";
        case VerifyStatus::BoundViolated: return "bound-violated";
        case VerifyStatus::HypothesisNotMet: return "hypothesis-not-met";
        case VerifyStatus::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

double VerificationReport::worstSlack() const {
    double worst = kInf;
    for (const auto& c : checks) worst = std::min(worst, c.slack);
    return worst;
}

void VerificationReport::addCheck(const std::string& subject, double bound, double measured,
                                  double slack, double tol) {
    checks.push_back(CheckRecord{subject, bound, measured, slack, slack >= -tol});
}

void VerificationReport::addHypothesis(const std::string& description, bool met) {
    hypotheses.push_back(HypothesisRecord{description, met});
}

void VerificationReport::finalize() {
    if (status == VerifyStatus::NotApplicable) return;
    for (const auto& h : hypotheses) {
        if (!h.met) {
            status = VerifyStatus::HypothesisNotMet;
            return;
        }
    }
    for (const auto& c : checks) {
        if (!c.ok) {
            status = VerifyStatus::BoundViolated;
            return;
        }
    }
    status = VerifyStatus::Passed;
}

std::vector<LinkBundle> linkLevel(const SimplicialComplex& x, const WeightFunction& m,
                                  int k) {
    if (k < -1 || k > x.dimension() - 1)
        fail(ErrorCode::DegreeOutOfRange, "links exist for levels -1 through n-1");
    std::vector<LinkBundle> out;
    out.reserve(static_cast<size_t>(x.count(k)));
    for (int i = 0; i < x.count(k); ++i) {
        const Simplex& tau = x.simplex(k, i);
        SimplicialComplex lk = x.link(tau);
        WeightFunction w = linkWeight(x, m, tau, lk);
        out.push_back(LinkBundle{tau, std::move(lk), std::move(w)});
    }
    return out;
}

VerificationReport checkLocalExpansion(const SimplicialComplex& x, const WeightFunction& m,
                                       double lambda, double kappa,
                                       const HarnessOptions& options) {
    VerificationReport r;
    r.id = "local-expansion";
    const int n = x.dimension();
    if (n < 1) {
        r.status = VerifyStatus::NotApplicable;
        r.notes.push_back("a 0-dimensional complex has no link levels to test");
        return r;
    }
    r.addHypothesis("window is ordered: lambda <= kappa", lambda <= kappa);
    for (int k = -1; k <= n - 2; ++k) {
        const auto eigs = linkEigs(x, m, k, options.jacobi);
        const Window w = aggregateWindow(eigs);
        const std::string lvl = "level " + std::to_string(k);
        r.addHypothesis(lvl + " links connected", w.allConnected);
        if (w.any) {
            r.addCheck(lvl + " spectral gap at least lambda", lambda, w.lambda,
                       w.lambda - lambda, options.tolerance);
            r.addCheck(lvl + " spectral top at most kappa", kappa, w.kappa, kappa - w.kappa,
                       options.tolerance);
        }
    }
    r.finalize();
    return r;
}

VerificationReport verifyTrickleDown(const SimplicialComplex& x, const WeightFunction& m,
                                     const HarnessOptions& options) {
    VerificationReport r;
    r.id = "trickle-down";
    const int n = x.dimension();
    if (n < 2) {
        r.status = VerifyStatus::NotApplicable;
        r.notes.push_back("no level lies below n-2 in dimension " + std::to_string(n));
        return r;
    }
    const Window base = aggregateWindow(linkEigs(x, m, n - 2, options.jacobi));
    const double lam0 = base.lambda;
    const double kap0 = base.kappa;
    r.notes.push_back("base window [" + num(lam0) + ", " + num(kap0) + "] over links at level " +
                      std::to_string(n - 2));
    r.addHypothesis("links of (n-2)-simplices connected", base.allConnected);
    const auto linkReport = x.checkAllLinksConnected();
    r.addHypothesis("every link of every level connected", linkReport.allConnected);
    const double threshold = double(n - 1) / n;
    const bool gapOk = base.any && lam0 > threshold + options.tolerance;
    r.addHypothesis("base gap above (n-1)/n = " + num(threshold) + " (lambda0 = " + num(lam0) + ")",
                    gapOk);
    if (!base.allConnected || !linkReport.allConnected || !gapOk) {
        r.finalize();
        return r;
    }
    for (int k = n - 3; k >= -1; --k) {
        const int l = n - k - 2;
        const double lamK = descentFIter(lam0, l);
        const double kapK = descentFIter(kap0, l);
        const Window w = aggregateWindow(linkEigs(x, m, k, options.jacobi));
        const std::string lvl = "level " + std::to_string(k);
        if (w.any)
            r.addCheck(lvl + " gap at least descended lambda", lamK, w.lambda, w.lambda - lamK,
                       options.tolerance);
        if (w.kappa > -kInf)
            r.addCheck(lvl + " top at most descended kappa", kapK, w.kappa, kapK - w.kappa,
                       options.tolerance);
        const double floorK = double(k + 1) / (k + 2);
        const double ceilK = double(n - k) / (n - k - 1);
        r.addCheck(lvl + " descended lambda above (k+1)/(k+2)", floorK, lamK, lamK - floorK,
                   options.tolerance);
        r.addCheck(lvl + " descended kappa at most (n-k)/(n-k-1)", ceilK, kapK, ceilK - kapK,
                   options.tolerance);
    }
    r.finalize();
    return r;
}

VerificationReport verifyGarlandInterval(const SimplicialComplex& x,
                                         const WeightFunction& m, int k,
                                         const HarnessOptions& options) {
    const int n = x.dimension();
    if (k < 0 || k > n - 1)
        fail(ErrorCode::DegreeOutOfRange, "interval transfer needs 0 <= k <= n-1");
    VerificationReport r;
    r.id = "garland-interval[k=" + std::to_string(k) + "]";
    const Window w = aggregateWindow(linkEigs(x, m, k - 1, options.jacobi));
    r.notes.push_back("aggregate window [" + num(w.lambda) + ", " + num(w.kappa) +
                      "] over links at level " + std::to_string(k - 1));
    r.addHypothesis("links of (k-1)-simplices connected", w.allConnected);
    const double threshold = double(k) / (k + 1);
    const bool gapOk = w.any && w.lambda > threshold + options.tolerance;
    r.addHypothesis("aggregate gap above k/(k+1) = " + num(threshold), gapOk);
    if (!w.allConnected || !gapOk) {
        r.finalize();
        return r;
    }
    const double lo = (k + 1) * w.lambda - k;
    const double hi = (k + 1) * w.kappa - k;
    const auto up = eigSelfadjoint(buildUpLaplacian(x, m, k), options.jacobi);
    const auto downAbove = eigSelfadjoint(buildDownLaplacian(x, m, k + 1), options.jacobi);
    auto windowCheck = [&](const SpectralReport& rep, const std::string& who) {
        const auto gap = rep.smallestPositive();
        if (!gap) {
            r.notes.push_back(who + " has no nonzero spectrum; the window holds vacuously");
            return;
        }
        r.addCheck(who + " nonzero spectrum at least (k+1)lambda - k", lo, *gap, *gap - lo,
                   options.tolerance);
        const double top = *rep.largest();
        r.addCheck(who + " nonzero spectrum at most (k+1)kappa - k", hi, top, hi - top,
                   options.tolerance);
    };
    windowCheck(up, "up Laplacian at degree " + std::to_string(k));
    windowCheck(downAbove, "down Laplacian at degree " + std::to_string(k + 1));
    const auto downHere = eigSelfadjoint(buildDownLaplacian(x, m, k), options.jacobi);
    const int dimCk = x.count(k);
    const int split = up.zeroMultiplicity() + downHere.zeroMultiplicity();
    r.addCheck("kernel split dim Ker up + dim Ker down = dim C^k", double(dimCk),
               double(split), -std::abs(double(split - dimCk)), 0.5);
    r.finalize();
    return r;
}

VerificationReport verifyGarlandNorm(const SimplicialComplex& x, const WeightFunction& m,
                                     int k, const HarnessOptions& options) {
    const int n = x.dimension();
    if (k < 0 || k > n - 1)
        fail(ErrorCode::DegreeOutOfRange, "norm transfer needs 0 <= k <= n-1");
    VerificationReport r;
    r.id = "garland-norm[k=" + std::to_string(k) + "]";
    const Window w = aggregateWindow(linkEigs(x, m, k - 1, options.jacobi));
    r.notes.push_back("aggregate window [" + num(w.lambda) + ", " + num(w.kappa) +
                      "] over links at level " + std::to_string(k - 1));
    r.addHypothesis("links of (k-1)-simplices connected", w.allConnected);
    r.addHypothesis("some link has nonzero spectrum", w.any);
    if (!w.allConnected || !w.any) {
        r.finalize();
        return r;
    }
    auto measureAt = [&](double lam, double kap) {
        const double s = 0.5 * (lam + kap);
        LinearOperator op =
            addOperators(buildUpLaplacian(x, m, k),
                         scaleOperator(s, buildDownLaplacian(x, m, k)));
        const double shift = (k + 1) * s - k;
        op = addOperators(op, scaleOperator(-shift, identityOperator(x, m, k)));
        return std::pair<double, double>(operatorNorm(op, options.jacobi),
                                         0.5 * (k + 1) * (kap - lam));
    };
    const auto [measured, bound] = measureAt(w.lambda, w.kappa);
    r.addCheck("centered operator norm within half the window width", bound, measured,
               bound - measured, options.tolerance);
    if (n >= 2) {
        const Window baseW = aggregateWindow(linkEigs(x, m, n - 2, options.jacobi));
        const double threshold = double(n - 1) / n;
        if (baseW.allConnected && baseW.any && baseW.lambda > threshold + options.tolerance) {
            const int l = n - 1 - k;
            const double lamD = descentFIter(baseW.lambda, l);
            const double kapD = descentFIter(baseW.kappa, l);
            const auto [mD, bD] = measureAt(lamD, kapD);
            r.notes.push_back("descended window [" + num(lamD) + ", " + num(kapD) +
                              "] from level " + std::to_string(n - 2) + " gives norm " +
                              num(mD) + " against bound " + num(bD) +
                              (mD <= bD + options.tolerance ? " (within bound)"
                                                            : " (exceeds bound)"));
        } else {
            r.notes.push_back(
                "descended-window variant skipped: base gap below (n-1)/n or base links "
                "disconnected");
        }
    }
    r.finalize();
    return r;
}

VerificationReport verifyPartiteTopEigenspace(const SimplicialComplex& x,
                                              const WeightFunction& m, const Partition& p,
                                              const HarnessOptions& options) {
    VerificationReport r;
    r.id = "partite-top-eigenspace";
    const int n = x.dimension();
    if (n < 1) {
        r.status = VerifyStatus::NotApplicable;
        r.notes.push_back("the top eigenvalue statement needs dimension at least 1");
        return r;
    }
    const bool valid = p.sideCount() == n + 1 && x.isValidPartition(p);
    r.addHypothesis("partition has n+1 sides and every facet is a transversal", valid);
    r.addHypothesis("complex is gallery connected", x.isGalleryConnected());
    if (!valid) {
        r.finalize();
        return r;
    }
    const double top = double(n + 1) / n;
    const auto up0 = buildUpLaplacian(x, m, 0);
    const auto spec = eigSelfadjoint(up0, options.jacobi);
    const double largest = *spec.largest();
    r.addCheck("largest eigenvalue equals (n+1)/n", top, largest, -std::abs(largest - top),
               options.tolerance);
    const int mult = spec.multiplicityNear(top, options.jacobi.zeroSnap);
    r.addCheck("top eigenspace dimension equals n", double(n), double(mult),
               -std::abs(double(mult - n)), 0.5);
    const int vertexCount = x.count(0);
    Cochain ones = zeroCochain(x, 0);
    ones.coeffs.setOnes();
    Eigen::VectorXd total = Eigen::VectorXd::Zero(vertexCount);
    Eigen::MatrixXd flips(vertexCount, p.sideCount());
    for (int j = 0; j < p.sideCount(); ++j) {
        const Cochain flip = sideFlip(x, p, ones, j);
        const Eigen::VectorXd phiJ = -flip.coeffs;
        total += phiJ;
        flips.col(j) = phiJ;
        const double res = (up0.matrix * phiJ - top * phiJ).norm() / phiJ.norm();
        r.addCheck("side " + std::to_string(j) + " flip is a top eigenfunction", 0.0, res,
                   -res, options.strictTolerance);
        Eigen::VectorXd chi(vertexCount);
        for (int i = 0; i < vertexCount; ++i)
            chi[i] = p.side(x.simplex(0, i).vertex(0)) == j ? 1.0 : 0.0;
        const double chiErr = ((phiJ.array() + 1.0) / (n + 1.0) - chi.array()).matrix().norm();
        r.addCheck("side " + std::to_string(j) + " indicator recovered from its flip", 0.0,
                   chiErr, -chiErr, options.strictTolerance);
    }
    const double sumNorm = total.norm();
    r.addCheck("side flips sum to zero", 0.0, sumNorm, -sumNorm, options.strictTolerance);
    const int rank = matrixRank(flips);
    r.addCheck("flips span an n-dimensional space", double(n), double(rank),
               -std::abs(double(rank - n)), 0.5);
    r.finalize();
    return r;
}

VerificationReport verifyPartiteSymmetry(const SimplicialComplex& x,
                                         const WeightFunction& m, const Partition& p,
                                         const HarnessOptions& options) {
    VerificationReport r;
    r.id = "partite-symmetry";
    const int n = x.dimension();
    if (n < 1) {
        r.status = VerifyStatus::NotApplicable;
        r.notes.push_back("the symmetry bound needs dimension at least 1");
        return r;
    }
    if (static_cast<int>(x.facets().size()) == 1)
        fail(ErrorCode::TrivialComplex,
             "a single facet has no spectrum below the partite top value");
    const bool valid = p.sideCount() == n + 1 && x.isValidPartition(p);
    r.addHypothesis("partition has n+1 sides and every facet is a transversal", valid);
    r.addHypothesis("complex is gallery connected", x.isGalleryConnected());
    if (!valid) {
        r.finalize();
        return r;
    }
    const double top = double(n + 1) / n;
    const auto spec = eigSelfadjoint(buildUpLaplacian(x, m, 0), options.jacobi);
    const auto lambda = spec.smallestPositive();
    const auto kappa = spec.largestBelow(top - options.jacobi.zeroSnap);
    if (!lambda || !kappa)
        fail(ErrorCode::TrivialComplex,
             "the spectrum has no nontrivial part below the partite top value");
    r.notes.push_back("gap lambda = " + num(*lambda) + ", largest below the top kappa = " +
                      num(*kappa));
    const double lowerBound = 1.0 + (1.0 - *lambda) / n;
    const double upperBound = 1.0 + n * (1.0 - *lambda);
    r.addCheck("kappa at least 1 + (1-lambda)/n", lowerBound, *kappa, *kappa - lowerBound,
               options.tolerance);
    r.addCheck("kappa at most 1 + n(1-lambda)", upperBound, *kappa, upperBound - *kappa,
               options.tolerance);
    r.finalize();
    return r;
}

VerificationReport verifyPartiteDescent(const SimplicialComplex& x, const WeightFunction& m,
                                        const Partition& p, const HarnessOptions& options) {
    VerificationReport r;
    r.id = "partite-descent";
    const int n = x.dimension();
    if (n < 1) {
        r.status = VerifyStatus::NotApplicable;
        r.notes.push_back("the descent statement needs dimension at least 1");
        return r;
    }
    const bool valid = p.sideCount() == n + 1 && x.isValidPartition(p);
    r.addHypothesis("partition has n+1 sides and every facet is a transversal", valid);
    const auto linkReport = x.checkAllLinksConnected();
    r.addHypothesis("every link of every level connected", linkReport.allConnected);
    const Window base = aggregateWindow(linkEigs(x, m, n - 2, options.jacobi));
    const double threshold = double(n - 1) / n;
    const bool gapOk = base.any && base.lambda > threshold + options.tolerance;
    r.addHypothesis("base gap above (n-1)/n = " + num(threshold) + " (lambda0 = " +
                        num(base.lambda) + ")",
                    gapOk);
    if (!valid || !linkReport.allConnected || !gapOk) {
        r.finalize();
        return r;
    }
    const double snap = options.jacobi.zeroSnap;
    for (int k = n - 2; k >= -1; --k) {
        const int l = n - k - 2;
        const double fl = descentFIter(base.lambda, l);
        const double topK = double(n - k) / (n - k - 1);
        const double upperPlus = 1.0 + (n - k) * (1.0 - fl);
        const double upperMinus = 1.0 - (n - k) * (1.0 - fl);
        const std::string lvl = "level " + std::to_string(k);
        r.notes.push_back(lvl + " upper bound candidates: 1 + (n-k)(1-f) = " + num(upperPlus) +
                          ", 1 - (n-k)(1-f) = " + num(upperMinus) + "; checked against the former");
        double lo = kInf;
        double hi = -kInf;
        double attainDev = 0.0;
        for (const auto& le : linkEigs(x, m, k, options.jacobi)) {
            for (int i = 0; i < le.report.eigenvalues.size(); ++i) {
                const double mu = le.report.eigenvalues[i];
                if (mu <= snap || mu >= topK - snap) continue;
                lo = std::min(lo, mu);
                hi = std::max(hi, mu);
            }
            attainDev = std::max(attainDev, std::abs(*le.report.largest() - topK));
        }
        r.addCheck(lvl + " every link attains the top value (n-k)/(n-k-1)", 0.0, attainDev,
                   -attainDev, options.tolerance);
        if (lo < kInf) {
            r.addCheck(lvl + " nontrivial gap at least descended lambda", fl, lo, lo - fl,
                       options.tolerance);
            r.addCheck(lvl + " nontrivial top at most 1 + (n-k)(1 - descended lambda)",
                       upperPlus, hi, upperPlus - hi, options.tolerance);
        } else {
            r.notes.push_back(lvl + " has no spectrum strictly between 0 and the top value");
        }
    }
    r.finalize();
    return r;
}

VerificationReport verifyPartiteContraction(const SimplicialComplex& x,
                                            const WeightFunction& m, const Partition& p,
                                            int k, const HarnessOptions& options) {
    const int n = x.dimension();
    if (k < 0 || k > n - 1)
        fail(ErrorCode::DegreeOutOfRange, "the contraction bound needs 0 <= k <= n-1");
    VerificationReport r;
    r.id = "partite-contraction[k=" + std::to_string(k) + "]";
    const bool valid = p.sideCount() == n + 1 && x.isValidPartition(p);
    r.addHypothesis("partition has n+1 sides and every facet is a transversal", valid);
    const auto eigs = linkEigs(x, m, k - 1, options.jacobi);
    bool connected = true;
    const double linkTop = double(n + 1 - k) / (n - k);
    const double snap = options.jacobi.zeroSnap;
    double lam = kInf;
    double kap = -kInf;
    for (const auto& le : eigs) {
        connected = connected && le.report.zeroMultiplicity() == 1;
        for (int i = 0; i < le.report.eigenvalues.size(); ++i) {
            const double mu = le.report.eigenvalues[i];
            if (mu <= snap || mu >= linkTop - snap) continue;
            lam = std::min(lam, mu);
            kap = std::max(kap, mu);
        }
    }
    r.addHypothesis("links of (k-1)-simplices connected", connected);
    if (!valid || !connected) {
        r.finalize();
        return r;
    }
    if (lam > kap) {
        r.status = VerifyStatus::NotApplicable;
        r.notes.push_back(
            "every link spectrum consists of 0 and the top value only; the window is empty");
        return r;
    }
    r.notes.push_back("nontrivial window [" + num(lam) + ", " + num(kap) +
                      "] over links at level " + std::to_string(k - 1) +
                      ", top value excluded = " + num(linkTop));
    const double s = 0.5 * (lam + kap);
    const double a = double(n + 1 - k);
    const double cDown = a / (n - k);
    const double cId = k - (k + 1) * s;
    LinearOperator sideSum = buildSideDownLaplacian(x, m, p, k, 0);
    for (int j = 1; j < p.sideCount(); ++j)
        sideSum = addOperators(sideSum, buildSideDownLaplacian(x, m, p, k, j));
    auto assemble = [&](double cSide) {
        LinearOperator op = addOperators(buildUpLaplacian(x, m, k),
                                         scaleOperator(cDown, buildDownLaplacian(x, m, k)));
        op = addOperators(op, scaleOperator(cId, identityOperator(x, m, k)));
        op = addOperators(op, scaleOperator(-cSide, sideSum));
        return operatorNorm(op, options.jacobi);
    };
    const double cSide = a * a / (n - k) - a * s;
    const double measured = assemble(cSide);
    const double bound = 0.5 * (k + 1) * (kap - lam);
    r.addCheck("contracted operator norm within half the window width", bound, measured,
               bound - measured, options.tolerance);
    const double cSideAlt = a * a / (n - k) - a * a * s;
    r.notes.push_back("side coefficient " + num(cSide) + "; the squared-factor variant " +
                      num(cSideAlt) + " yields norm " + num(assemble(cSideAlt)) +
                      " against the same bound " + num(bound));
    r.finalize();
    return r;
}

namespace {

/**
 * Recursive top-value propagation inside one link: for each vertex, the
 * restriction minus its projection onto constants must be zero or a top
 * eigenfunction of the deeper link.
 */
void propagateTop(const SimplicialComplex& lk, const WeightFunction& mlk, const Cochain& phi,
                  const std::string& subject, VerificationReport& r,
                  const HarnessOptions& options) {
    const int d = lk.dimension();
    if (d < 2) return;
    const double childTop = double(d) / (d - 1);
    for (int vi = 0; vi < lk.count(0); ++vi) {
        const Simplex& v = lk.simplex(0, vi);
        SimplicialComplex sub = lk.link(v);
        WeightFunction mSub = linkWeight(lk, mlk, v, sub);
        const Cochain rest = restrictTo(lk, phi, v, sub);
        const auto down0 = buildDownLaplacian(sub, mSub, 0);
        Cochain part = zeroCochain(sub, 0);
        part.coeffs = rest.coeffs - down0.matrix * rest.coeffs;
        const double scale = std::max(1.0, rest.coeffs.norm());
        const double mag = part.coeffs.norm();
        if (mag <= options.strictTolerance * scale) continue;
        const auto upSub = buildUpLaplacian(sub, mSub, 0);
        const double res = (upSub.matrix * part.coeffs - childTop * part.coeffs).norm() / mag;
        const std::string where = subject + " / vertex " + std::to_string(v.vertex(0));
        r.addCheck(where + " nonconstant part is a top eigenfunction", 0.0, res, -res,
                   options.tolerance);
        propagateTop(sub, mSub, part, where, r, options);
    }
}

}  // namespace

VerificationReport verifyKappaPropagation(const SimplicialComplex& x,
                                          const WeightFunction& m,
                                          const HarnessOptions& options) {
    VerificationReport r;
    r.id = "kappa-propagation";
    const int n = x.dimension();
    if (n < 2) {
        r.status = VerifyStatus::NotApplicable;
        r.notes.push_back("propagation needs a link of dimension at least 2");
        return r;
    }
    const auto linkReport = x.checkAllLinksConnected();
    r.addHypothesis("every link of every level connected", linkReport.allConnected);
    int seeds = 0;
    for (int k = -1; k <= n - 3; ++k) {
        const double topK = double(n - k) / (n - k - 1);
        for (const auto& le : linkEigs(x, m, k, options.jacobi)) {
            for (int i = 0; i < le.report.eigenvalues.size(); ++i) {
                if (std::abs(le.report.eigenvalues[i] - topK) > options.jacobi.zeroSnap)
                    continue;
                ++seeds;
                Cochain phi = zeroCochain(le.bundle.complex, 0);
                phi.coeffs = le.report.eigenvectors.col(i);
                propagateTop(le.bundle.complex, le.bundle.weight, phi,
                             "link of " + le.bundle.tau.toString(), r, options);
            }
        }
    }
    if (seeds == 0) {
        r.status = VerifyStatus::NotApplicable;
        r.notes.push_back("no link attains its top value; nothing propagates");
        return r;
    }
    r.notes.push_back(std::to_string(seeds) + " top eigenfunctions seeded the recursion");
    r.finalize();
    return r;
}

VerificationReport verifyStructuralIdentities(const SimplicialComplex& x,
                                              const WeightFunction& m,
                                              const HarnessOptions& options,
                                              const Partition* partition) {
    VerificationReport r;
    r.id = "structural-identities";
    const int n = x.dimension();
    std::mt19937_64 rng(options.seed);
    const int samples = std::max(1, options.samplesPerDegree);
    const double tol = options.tolerance;
    const double strict = options.strictTolerance;

    r.addHypothesis("weight satisfies the balance recursion", verifyBalanced(x, m).empty());

    // Link bundles per level, built once and shared by the localized identities.
    std::vector<std::vector<LinkBundle>> cache(static_cast<size_t>(n) + 1);
    auto levelLinks = [&](int k) -> const std::vector<LinkBundle>& {
        auto& slot = cache[static_cast<size_t>(k + 1)];
        if (slot.empty()) slot = linkLevel(x, m, k);
        return slot;
    };

    for (int k = -1; k <= n - 2; ++k) {
        const auto dk = buildCoboundary(x, m, k);
        const auto dk1 = buildCoboundary(x, m, k + 1);
        const double worst = (dk1.matrix * dk.matrix).cwiseAbs().maxCoeff();
        r.addCheck("coboundary-squares-to-zero[k=" + std::to_string(k) + "]", 0.0, worst,
                   -worst, 0.0);
    }

    for (int k = -1; k <= n - 1; ++k) {
        const auto d = buildCoboundary(x, m, k);
        const auto delta = buildCodifferential(x, m, k);
        double worst = 0.0;
        for (int t = 0; t < samples; ++t) {
            const Cochain phi = randomCochain(x, k, rng);
            const Cochain psi = randomCochain(x, k + 1, rng);
            const double lhs = innerProduct(x, m, d.apply(phi), psi);
            const double rhs = innerProduct(x, m, phi, delta.apply(psi));
            worst = std::max(worst, relErr(lhs, rhs));
        }
        r.addCheck("codifferential-adjointness[k=" + std::to_string(k) + "]", 0.0, worst,
                   -worst, strict);
    }

    for (int k = 0; k <= n; ++k) {
        const auto& bundles = levelLinks(k - 1);
        std::vector<LinearOperator> linkDelta;
        linkDelta.reserve(bundles.size());
        for (const auto& b : bundles)
            linkDelta.push_back(buildCodifferential(b.complex, b.weight, -1));
        const auto delta = buildCodifferential(x, m, k - 1);
        double worstIp = 0.0;
        double worstDelta = 0.0;
        for (int t = 0; t < samples; ++t) {
            const Cochain phi = randomCochain(x, k, rng);
            const Cochain psi = randomCochain(x, k, rng);
            const double ipLhs = (k + 1) * innerProduct(x, m, phi, psi);
            const double deltaLhs =
                innerProduct(x, m, delta.apply(phi), delta.apply(psi));
            double ipRhs = 0.0;
            double deltaRhs = 0.0;
            for (size_t bi = 0; bi < bundles.size(); ++bi) {
                const auto& b = bundles[bi];
                const Cochain phiT = localize(x, phi, b.tau, b.complex);
                const Cochain psiT = localize(x, psi, b.tau, b.complex);
                ipRhs += innerProduct(b.complex, b.weight, phiT, psiT);
                deltaRhs += innerProduct(b.complex, b.weight, linkDelta[bi].apply(phiT),
                                         linkDelta[bi].apply(psiT));
            }
            worstIp = std::max(worstIp, relErr(ipLhs, ipRhs));
            worstDelta = std::max(worstDelta, relErr(deltaLhs, deltaRhs));
        }
        r.addCheck("inner-product-localization[k=" + std::to_string(k) + "]", 0.0, worstIp,
                   -worstIp, tol);
        r.addCheck("codifferential-localization[k=" + std::to_string(k) + "]", 0.0,
                   worstDelta, -worstDelta, tol);
    }

    for (int k = 0; k <= n - 1; ++k) {
        const auto& bundles = levelLinks(k - 1);
        std::vector<LinearOperator> linkD;
        linkD.reserve(bundles.size());
        for (const auto& b : bundles) linkD.push_back(buildCoboundary(b.complex, b.weight, 0));
        const auto d = buildCoboundary(x, m, k);
        double worstEnergy = 0.0;
        double worstShift = 0.0;
        for (int t = 0; t < samples; ++t) {
            const Cochain phi = randomCochain(x, k, rng);
            const Cochain psi = randomCochain(x, k, rng);
            const double ip = innerProduct(x, m, phi, psi);
            const double dIp = innerProduct(x, m, d.apply(phi), d.apply(psi));
            double localEnergy = 0.0;
            double localIp = 0.0;
            for (size_t bi = 0; bi < bundles.size(); ++bi) {
                const auto& b = bundles[bi];
                const Cochain phiT = localize(x, phi, b.tau, b.complex);
                const Cochain psiT = localize(x, psi, b.tau, b.complex);
                localEnergy += innerProduct(b.complex, b.weight, linkD[bi].apply(phiT),
                                            linkD[bi].apply(psiT));
                localIp += innerProduct(b.complex, b.weight, phiT, psiT);
            }
            worstEnergy = std::max(
                worstEnergy, relErr(dIp, localEnergy - double(k) / (k + 1) * localIp));
            worstShift = std::max(worstShift, relErr(dIp + k * ip, localEnergy));
        }
        r.addCheck("coboundary-localization-energy[k=" + std::to_string(k) + "]", 0.0,
                   worstEnergy, -worstEnergy, tol);
        r.addCheck("coboundary-localization-shift[k=" + std::to_string(k) + "]", 0.0,
                   worstShift, -worstShift, tol);
    }

    for (int k = 0; k <= n - 1; ++k) {
        for (int l = 0; l <= n - k - 1; ++l) {
            const auto& bundles = levelLinks(l);
            const double scale = factorial(l + 1);
            double worst = 0.0;
            for (int t = 0; t < samples; ++t) {
                const Cochain phi = randomCochain(x, k, rng);
                const Cochain psi = randomCochain(x, k, rng);
                const double lhs = innerProduct(x, m, phi, psi);
                double rhs = 0.0;
                for (const auto& b : bundles)
                    rhs += innerProduct(b.complex, b.weight,
                                        restrictTo(x, phi, b.tau, b.complex),
                                        restrictTo(x, psi, b.tau, b.complex));
                worst = std::max(worst, relErr(lhs, scale * rhs));
            }
            r.addCheck("restriction-norm[k=" + std::to_string(k) + ",l=" + std::to_string(l) +
                           "]",
                       0.0, worst, -worst, tol);
        }
    }

    {
        const auto d0 = buildCoboundary(x, m, 0);
        for (int l = 0; l <= n - 2; ++l) {
            const auto& bundles = levelLinks(l);
            std::vector<LinearOperator> linkD;
            linkD.reserve(bundles.size());
            for (const auto& b : bundles)
                linkD.push_back(buildCoboundary(b.complex, b.weight, 0));
            const double scale = factorial(l + 1);
            double worstEnergy = 0.0;
            double worstCommute = 0.0;
            for (int t = 0; t < samples; ++t) {
                const Cochain phi = randomCochain(x, 0, rng);
                const Cochain psi = randomCochain(x, 0, rng);
                const Cochain dPhi = d0.apply(phi);
                const Cochain dPsi = d0.apply(psi);
                const double lhs = innerProduct(x, m, dPhi, dPsi);
                double rhs = 0.0;
                for (size_t bi = 0; bi < bundles.size(); ++bi) {
                    const auto& b = bundles[bi];
                    const Cochain phiT = restrictTo(x, phi, b.tau, b.complex);
                    const Cochain psiT = restrictTo(x, psi, b.tau, b.complex);
                    const Cochain dPhiT = linkD[bi].apply(phiT);
                    rhs += innerProduct(b.complex, b.weight, dPhiT,
                                        linkD[bi].apply(psiT));
                    const Cochain restDPhi = restrictTo(x, dPhi, b.tau, b.complex);
                    const double comm = (dPhiT.coeffs - restDPhi.coeffs).norm() /
                                        std::max(1.0, restDPhi.coeffs.norm());
                    worstCommute = std::max(worstCommute, comm);
                }
                worstEnergy = std::max(worstEnergy, relErr(lhs, scale * rhs));
            }
            r.addCheck("restriction-energy[l=" + std::to_string(l) + "]", 0.0, worstEnergy,
                       -worstEnergy, tol);
            r.addCheck("restriction-commutes-with-coboundary[l=" + std::to_string(l) + "]",
                       0.0, worstCommute, -worstCommute, strict);
        }
    }

    {
        const auto down0 = buildDownLaplacian(x, m, 0);
        const auto deltaToScalar = buildCodifferential(x, m, -1);
        Cochain ones = zeroCochain(x, 0);
        ones.coeffs.setOnes();
        const double onesSq = innerProduct(x, m, ones, ones);
        double worstProj = 0.0;
        double worstNormA = 0.0;
        double worstNormB = 0.0;
        for (int t = 0; t < samples; ++t) {
            const Cochain phi = randomCochain(x, 0, rng);
            const Cochain proj = down0.apply(phi);
            const double coeff = innerProduct(x, m, phi, ones) / onesSq;
            const double res =
                (proj.coeffs - coeff * ones.coeffs).norm() / std::max(1.0, proj.coeffs.norm());
            worstProj = std::max(worstProj, res);
            const Cochain scalar = deltaToScalar.apply(phi);
            const double pairing = innerProduct(x, m, proj, phi);
            worstNormA = std::max(worstNormA,
                                  relErr(pairing, innerProduct(x, m, scalar, scalar)));
            worstNormB =
                std::max(worstNormB, relErr(pairing, innerProduct(x, m, proj, proj)));
        }
        r.addCheck("down-laplacian-projects-to-constants", 0.0, worstProj, -worstProj,
                   strict);
        r.addCheck("down-laplacian-energy-is-scalar-norm", 0.0, worstNormA, -worstNormA,
                   strict);
        r.addCheck("down-laplacian-energy-is-projection-norm", 0.0, worstNormB, -worstNormB,
                   strict);
    }

    for (int k = 0; k <= n; ++k) {
        const auto upBelow =
            eigSelfadjoint(buildUpLaplacian(x, m, k - 1), options.jacobi);
        const auto down = eigSelfadjoint(buildDownLaplacian(x, m, k), options.jacobi);
        auto nonzeros = [](const SpectralReport& rep) {
            std::vector<double> vals;
            for (int i = 0; i < rep.eigenvalues.size(); ++i)
                if (std::abs(rep.eigenvalues[i]) > rep.zeroSnap)
                    vals.push_back(rep.eigenvalues[i]);
            return vals;
        };
        const auto a = nonzeros(upBelow);
        const auto b = nonzeros(down);
        const std::string subject = "hodge-pairing[k=" + std::to_string(k) + "]";
        if (a.size() != b.size()) {
            r.addCheck(subject + " multiset sizes", double(a.size()), double(b.size()),
                       -std::abs(double(a.size()) - double(b.size())), 0.5);
        } else {
            double worst = 0.0;
            for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, relErr(a[i], b[i]));
            r.addCheck(subject, 0.0, worst, -worst, tol);
        }
    }

    {
        const auto betti = bettiNumbers(x);
        for (int k = 0; k <= n; ++k) {
            const int h = harmonicDimension(x, m, k, options.jacobi);
            r.addCheck("harmonic-dimension-matches-betti[k=" + std::to_string(k) + "]",
                       double(betti[static_cast<size_t>(k)]), double(h),
                       -std::abs(double(h - betti[static_cast<size_t>(k)])), 0.5);
        }
    }

    if (partition == nullptr) {
        r.notes.push_back("no partition supplied; side identities skipped");
        r.finalize();
        return r;
    }
    const Partition& p = *partition;
    r.addHypothesis("partition has n+1 sides and every facet is a transversal",
                    p.sideCount() == n + 1 && x.isValidPartition(p));

    for (int k = -1; k <= n - 1; ++k) {
        const auto d = buildCoboundary(x, m, k);
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d.matrix.rows(), d.matrix.cols());
        for (int j = 0; j < p.sideCount(); ++j)
            sum += buildSideCoboundary(x, m, p, k, j).matrix;
        const double worst = (sum - d.matrix).cwiseAbs().maxCoeff();
        r.addCheck("side-splitting[k=" + std::to_string(k) + "]", 0.0, worst, -worst, 0.0);
    }

    for (int k = 0; k <= n; ++k) {
        const auto& bundles = levelLinks(k - 1);
        std::vector<Partition> linkParts;
        linkParts.reserve(bundles.size());
        for (const auto& b : bundles) linkParts.push_back(restrictPartition(p, b.complex));
        std::vector<LinearOperator> global;
        for (int j = 0; j < p.sideCount(); ++j)
            global.push_back(buildSideDownLaplacian(x, m, p, k, j));
        std::vector<std::vector<LinearOperator>> local(bundles.size());
        for (size_t bi = 0; bi < bundles.size(); ++bi)
            for (int j = 0; j < p.sideCount(); ++j)
                local[bi].push_back(buildSideDownLaplacian(bundles[bi].complex,
                                                           bundles[bi].weight, linkParts[bi],
                                                           0, j));
        double worst = 0.0;
        for (int t = 0; t < samples; ++t) {
            const Cochain phi = randomCochain(x, k, rng);
            std::vector<Cochain> localized;
            localized.reserve(bundles.size());
            for (const auto& b : bundles) localized.push_back(localize(x, phi, b.tau, b.complex));
            for (int j = 0; j < p.sideCount(); ++j) {
                const double lhs = innerProduct(x, m, global[static_cast<size_t>(j)].apply(phi), phi);
                double rhs = 0.0;
                for (size_t bi = 0; bi < bundles.size(); ++bi)
                    rhs += innerProduct(bundles[bi].complex, bundles[bi].weight,
                                        local[bi][static_cast<size_t>(j)].apply(localized[bi]),
                                        localized[bi]);
                worst = std::max(worst, relErr(lhs, rhs));
            }
        }
        r.addCheck("side-localization[k=" + std::to_string(k) + "]", 0.0, worst, -worst, tol);
    }

    if (n >= 1) {
        const auto up0 = buildUpLaplacian(x, m, 0);
        double worstSum = 0.0;
        double worstNorm = 0.0;
        double worstEnergy = 0.0;
        for (int t = 0; t < samples; ++t) {
            const Cochain phi = randomCochain(x, 0, rng);
            Eigen::VectorXd total = Eigen::VectorXd::Zero(phi.coeffs.size());
            double normSum = 0.0;
            double energySum = 0.0;
            for (int j = 0; j < p.sideCount(); ++j) {
                const Cochain flip = sideFlip(x, p, phi, j);
                total += flip.coeffs;
                normSum += innerProduct(x, m, flip, flip);
                energySum += innerProduct(x, m, up0.apply(flip), flip);
            }
            worstSum = std::max(worstSum, total.norm() / std::max(1.0, phi.coeffs.norm()));
            const double phiSq = innerProduct(x, m, phi, phi);
            worstNorm = std::max(worstNorm, relErr(normSum, double(n) * (n + 1) * phiSq));
            const double expected = (n + 1.0) * (n + 1.0) * phiSq -
                                    (n + 1.0) * innerProduct(x, m, up0.apply(phi), phi);
            worstEnergy = std::max(worstEnergy, relErr(energySum, expected));
        }
        r.addCheck("side-flips-sum-to-zero", 0.0, worstSum, -worstSum, strict);
        r.addCheck("side-flip-norm-identity", 0.0, worstNorm, -worstNorm, strict);
        r.addCheck("side-flip-energy-identity", 0.0, worstEnergy, -worstEnergy, strict);
    }

    {
        LinearOperator q = buildSideDownLaplacian(x, m, p, 0, 0);
        for (int j = 1; j < p.sideCount(); ++j)
            q = addOperators(q, buildSideDownLaplacian(x, m, p, 0, j));
        q = scaleOperator(double(p.sideCount()), q);
        const double idem = (q.matrix * q.matrix - q.matrix).cwiseAbs().maxCoeff();
        r.addCheck("side-projection-idempotent", 0.0, idem, -idem, strict);
        double worstAdj = 0.0;
        double worstComplement = 0.0;
        double worstFunction = 0.0;
        const int vertexCount = x.count(0);
        for (int t = 0; t < samples; ++t) {
            const Cochain phi = randomCochain(x, 0, rng);
            const Cochain psi = randomCochain(x, 0, rng);
            worstAdj = std::max(worstAdj, relErr(innerProduct(x, m, q.apply(phi), psi),
                                                 innerProduct(x, m, phi, q.apply(psi))));
            const Cochain projected = nontrivialProjection(x, m, p, phi);
            const double funcErr = (projected.coeffs - (phi.coeffs - q.matrix * phi.coeffs))
                                       .norm() /
                                   std::max(1.0, phi.coeffs.norm());
            worstFunction = std::max(worstFunction, funcErr);
            for (int j = 0; j < p.sideCount(); ++j) {
                Cochain chi = zeroCochain(x, 0);
                for (int i = 0; i < vertexCount; ++i)
                    chi.coeffs[i] = p.side(x.simplex(0, i).vertex(0)) == j ? 1.0 : 0.0;
                worstComplement = std::max(
                    worstComplement,
                    std::abs(innerProduct(x, m, projected, chi)) /
                        std::max(1.0, phi.coeffs.norm()));
                if (t == 0) {
                    const double fix = (q.matrix * chi.coeffs - chi.coeffs).norm();
                    r.addCheck("side-projection-fixes-indicator[j=" + std::to_string(j) + "]",
                               0.0, fix, -fix, strict);
                }
            }
        }
        r.addCheck("side-projection-self-adjoint", 0.0, worstAdj, -worstAdj, strict);
        r.addCheck("nontrivial-projection-orthogonal-to-indicators", 0.0, worstComplement,
                   -worstComplement, strict);
        r.addCheck("nontrivial-projection-matches-side-projection", 0.0, worstFunction,
                   -worstFunction, strict);
    }

    {
        const double whole = m.at(-1, 0);
        double worst = 0.0;
        for (int j = 0; j < p.sideCount(); ++j) {
            double sideSum = 0.0;
            for (int i = 0; i < x.count(0); ++i)
                if (p.side(x.simplex(0, i).vertex(0)) == j) sideSum += m.at(0, i);
            worst = std::max(worst, relErr(sideSum, whole / p.sideCount()));
        }
        r.addCheck("side-vertex-weight-balance", 0.0, worst, -worst, strict);
    }

    r.finalize();
    return r;
}

std::vector<VerificationReport> runBattery(const SimplicialComplex& x,
                                           const WeightFunction& m,
                                           const Partition* partition,
                                           const HarnessOptions& options) {
    std::vector<VerificationReport> out;
    out.push_back(verifyStructuralIdentities(x, m, options, partition));
    out.push_back(verifyTrickleDown(x, m, options));
    const int n = x.dimension();
    for (int k = 0; k <= n - 1; ++k) out.push_back(verifyGarlandInterval(x, m, k, options));
    for (int k = 0; k <= n - 1; ++k) out.push_back(verifyGarlandNorm(x, m, k, options));
    out.push_back(verifyKappaPropagation(x, m, options));
    if (partition != nullptr) {
        out.push_back(verifyPartiteTopEigenspace(x, m, *partition, options));
        try {
            out.push_back(verifyPartiteSymmetry(x, m, *partition, options));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TrivialComplex) throw;
            VerificationReport skip;
            skip.id = "partite-symmetry";
            skip.status = VerifyStatus::NotApplicable;
            skip.notes.push_back(e.what());
            out.push_back(skip);
        }
        out.push_back(verifyPartiteDescent(x, m, *partition, options));
        for (int k = 0; k <= n - 1; ++k)
            out.push_back(verifyPartiteContraction(x, m, *partition, k, options));
    }
    return out;
}

}  // namespace hdx
