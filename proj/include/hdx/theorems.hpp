#pragma once

#include <cstdint>

#include "hdx/spectra.hpp"

namespace hdx {

inline constexpr std::uint64_t kDefaultSeed = 1729;

/** One step of the spectral descent map f(x) = 2 - 1/x. */
double descentF(double x);

/**
 * l-fold iterate in closed form: f^l(x) = ((l+1)x - l) / (lx - (l-1)).
 *
 * @throws Error{PoleHit} when the denominator vanishes.
 */
double descentFIter(double x, int l);

enum class VerifyStatus {
    Passed,
    BoundViolated,
    HypothesisNotMet,
    NotApplicable,
};

std::string verifyStatusName(VerifyStatus status);

struct HypothesisRecord {
    std::string description;
    bool met = false;
};

/**
 * One numeric comparison.  For upper bounds slack = bound - measured, for
 * lower bounds slack = measured - bound; a check passes when slack >= -tol.
 */
struct CheckRecord {
    std::string subject;
    double bound = 0.0;
    double measured = 0.0;
    double slack = 0.0;
    bool ok = true;
};

struct VerificationReport {
    std::string id;
    VerifyStatus status = VerifyStatus::Passed;
    std::vector<HypothesisRecord> hypotheses;
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;

    bool passed() const { return status == VerifyStatus::Passed; }
    double worstSlack() const;
    void addCheck(const std::string& subject, double bound, double measured, double slack,
                  double tol);
    void addHypothesis(const std::string& description, bool met);
    void finalize();
};

struct HarnessOptions {
    double tolerance = 1e-8;       // bound comparisons and identity residuals
    double strictTolerance = 1e-10;  // adjointness and other exact pairings
    std::uint64_t seed = kDefaultSeed;
    int samplesPerDegree = 16;
    JacobiOptions jacobi{};
};

/** Link of one simplex together with its induced weight. */
struct LinkBundle {
    Simplex tau;
    SimplicialComplex complex;
    WeightFunction weight;
};

/** Links of every simplex at the given level, in canonical order. */
std::vector<LinkBundle> linkLevel(const SimplicialComplex& x, const WeightFunction& m,
                                  int k);

/**
 * Decides whether every link at every level -1 <= k <= n-2 has its nonzero
 * degree-0 up Laplacian spectrum inside [lambda, kappa].
 */
VerificationReport checkLocalExpansion(const SimplicialComplex& x, const WeightFunction& m,
                                       double lambda, double kappa,
                                       const HarnessOptions& options = {});

/**
 * Spectral descent: from the aggregate window [lambda, kappa] over links of
 * (n-2)-simplices, every deeper link level k obeys the iterated window
 * [f^(n-k-2)(lambda), f^(n-k-2)(kappa)], which itself lies inside
 * ((k+1)/(k+2), (n-k)/(n-k-1)].  Hypotheses: all links connected and
 * lambda > (n-1)/n.
 */
VerificationReport verifyTrickleDown(const SimplicialComplex& x, const WeightFunction& m,
                                     const HarnessOptions& options = {});

/**
 * Window transfer to cochain level k: nonzero spectra of the degree-k up
 * Laplacian and the degree-(k+1) down Laplacian lie inside
 * [(k+1)lambda - k, (k+1)kappa - k], with (lambda, kappa) the aggregate
 * window over links of (k-1)-simplices; also verifies the kernel split
 * dim Ker up + dim Ker down = dim C^k.  Hypothesis: lambda > k/(k+1).
 */
VerificationReport verifyGarlandInterval(const SimplicialComplex& x,
                                         const WeightFunction& m, int k,
                                         const HarnessOptions& options = {});

/**
 * Norm form of the same transfer: with s = (lambda+kappa)/2,
 * || up_k + s down_k - (k+1)(s - k/(k+1)) I || <= (k+1)(kappa-lambda)/2.
 * Also reports the variant with the window descended from level n-2.
 */
VerificationReport verifyGarlandNorm(const SimplicialComplex& x, const WeightFunction& m,
                                     int k, const HarnessOptions& options = {});

/**
 * The flips of any vertex cochain by each side (scale by -n on the side) span
 * checks of the top eigenvalue (n+1)/n: each side indicator flip of the
 * constant is an eigenfunction, the eigenspace has dimension exactly n, the
 * flips sum to zero, and (flip + 1)/(n+1) recovers the side indicator.
 */
VerificationReport verifyPartiteTopEigenspace(const SimplicialComplex& x,
                                              const WeightFunction& m, const Partition& p,
                                              const HarnessOptions& options = {});

/**
 * Two-sided bound tying the global gap to the global nontrivial top:
 * 1 + (1/n)(1 - lambda) <= kappa <= 1 + n(1 - lambda), where kappa is the
 * largest eigenvalue below the partite top value (n+1)/n.
 *
 * @throws Error{TrivialComplex} when there is only one facet.
 */
VerificationReport verifyPartiteSymmetry(const SimplicialComplex& x,
                                         const WeightFunction& m, const Partition& p,
                                         const HarnessOptions& options = {});

/**
 * Descent in the partite case: for every level k and tau in X^(k), the
 * spectrum of the link Laplacian away from 0 and from the top value
 * (n-k)/(n-k-1) lies in
 * [f^(n-k-2)(lambda), 1 + (n-k)(1 - f^(n-k-2)(lambda))], and the top value
 * itself is attained.  Both sign candidates for the upper bound are
 * reported.  Hypothesis: lambda over links of (n-2)-simplices > (n-1)/n.
 */
VerificationReport verifyPartiteDescent(const SimplicialComplex& x, const WeightFunction& m,
                                        const Partition& p,
                                        const HarnessOptions& options = {});

/**
 * Contraction bound at level k.  With (lambda, kappa) the aggregate window of
 * link spectra away from 0 and from the link top value (n+1-k)/(n-k) over
 * tau in X^(k-1), and s = (lambda+kappa)/2:
 *
 *   || up_k + ((n+1-k)/(n-k)) down_k + (k - (k+1)s) I
 *      - ((n+1-k)^2/(n-k) - (n+1-k)s) sum_j sideDown_(k,j) ||
 *        <= (k+1)(kappa-lambda)/2.
 *
 * The coefficient of the side sum is linear in s times (n+1-k); the variant
 * with the squared factor is reported for reference but fails already on the
 * octahedron at k = 0.
 */
VerificationReport verifyPartiteContraction(const SimplicialComplex& x,
                                            const WeightFunction& m, const Partition& p,
                                            int k, const HarnessOptions& options = {});

/**
 * Top-value propagation: whenever a link Laplacian attains its top value
 * (n-k)/(n-k-1), the component of each vertex restriction of a top
 * eigenfunction orthogonal to constants is a top eigenfunction one level
 * down, recursively to the 1-dimensional links where the value is 2.
 */
VerificationReport verifyKappaPropagation(const SimplicialComplex& x,
                                          const WeightFunction& m,
                                          const HarnessOptions& options = {});

/**
 * Identity battery driven by seeded pseudo-random cochains: coboundary
 * squares to zero, adjointness, inner-product localization, codifferential
 * and coboundary localization, restriction norms, the down Laplacian as the
 * projection onto constants, Hodge pairing of up and down spectra, harmonic
 * dimensions against rank Betti numbers, and (when a partition is given) the
 * side splitting, side localization, and side flip energy identities.
 */
VerificationReport verifyStructuralIdentities(const SimplicialComplex& x,
                                              const WeightFunction& m,
                                              const HarnessOptions& options = {},
                                              const Partition* partition = nullptr);

/**
 * Full battery in a fixed order: structural identities, trickle-down, the
 * interval and norm transfers for every valid degree, top-value propagation,
 * then the partite statements when a partition is given.  A degenerate
 * partite-symmetry input is reported as not applicable instead of thrown.
 */
std::vector<VerificationReport> runBattery(const SimplicialComplex& x,
                                           const WeightFunction& m,
                                           const Partition* partition = nullptr,
                                           const HarnessOptions& options = {});

}  // namespace hdx
