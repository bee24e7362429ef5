#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "hdx/errors.hpp"
#include "hdx/generators.hpp"
#include "hdx/theorems.hpp"
#include "oracles.hpp"

using hdx::Error;
using hdx::ErrorCode;
using hdx::HarnessOptions;
using hdx::Partition;
using hdx::SimplicialComplex;
using hdx::VerificationReport;
using hdx::VerifyStatus;
using hdx::WeightFunction;

namespace {

bool hasCheck(const VerificationReport& report, const std::string& prefix) {
    for (const auto& check : report.checks)
        if (check.subject.rfind(prefix, 0) == 0) return true;
    return false;
}

/** Cone over a hexagon: the hub link is a six-cycle, whose gap sits exactly
 *  on the descent threshold. */
SimplicialComplex hexWheel() {
    return SimplicialComplex::buildFromFacets(
        {{0, 1, 6}, {1, 2, 6}, {2, 3, 6}, {3, 4, 6}, {4, 5, 6}, {0, 5, 6}});
}

}  // namespace

TEST_CASE("the descent map and its iterates match closed forms", "[theorems]") {
    CHECK(hdx::descentF(1.0) == Catch::Approx(1.0));
    CHECK(hdx::descentF(1.5) == Catch::Approx(4.0 / 3.0));
    CHECK(hdx::descentF(2.0) == Catch::Approx(1.5));
    for (int m = 2; m <= 6; ++m) {
        const double x = static_cast<double>(m - 1) / m;
        CHECK(hdx::descentF(x) == Catch::Approx(static_cast<double>(m - 2) / (m - 1)));
    }
    for (int l = 0; l <= 5; ++l) {
        CHECK(hdx::descentFIter(2.0, l) ==
              Catch::Approx(static_cast<double>(l + 2) / (l + 1)));
        // The closed form equals l-fold application.
        double iter = 1.25;
        for (int i = 0; i < l; ++i) iter = hdx::descentF(iter);
        CHECK(hdx::descentFIter(1.25, l) == Catch::Approx(iter));
    }
    try {
        hdx::descentFIter(0.5, 2);  // denominator 2x - 1 vanishes
        FAIL("expected PoleHit");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PoleHit);
    }
}

TEST_CASE("report finalization orders failure modes", "[theorems]") {
    VerificationReport report;
    report.id = "probe";
    report.addCheck("upper", 1.0, 1.5, -0.5, 1e-8);
    CHECK_FALSE(report.checks.back().ok);
    report.finalize();
    CHECK(report.status == VerifyStatus::BoundViolated);

    report.addHypothesis("gap above threshold", false);
    report.finalize();
    CHECK(report.status == VerifyStatus::HypothesisNotMet);

    report.status = VerifyStatus::NotApplicable;
    report.finalize();
    CHECK(report.status == VerifyStatus::NotApplicable);  // sticky

    VerificationReport fine;
    fine.addCheck("tight", 1.0, 1.0 + 5e-9, -5e-9, 1e-8);
    fine.addHypothesis("gap above threshold", true);
    fine.finalize();
    CHECK(fine.status == VerifyStatus::Passed);
    CHECK(fine.worstSlack() == Catch::Approx(-5e-9));
}

TEST_CASE("link bundles carry the induced weights", "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const WeightFunction m = WeightFunction::homogeneous(oct);
    const auto bundles = hdx::linkLevel(oct, m, 0);
    REQUIRE(bundles.size() == 6);
    for (const auto& bundle : bundles) {
        CHECK(bundle.complex.dimension() == 1);
        CHECK(bundle.weight.at(-1, 0) == 8.0);  // the vertex weight upstairs
    }
}

TEST_CASE("local expansion windows are decided at every level", "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const WeightFunction m = WeightFunction::homogeneous(oct);
    CHECK(hdx::checkLocalExpansion(oct, m, 1.0, 2.0).passed());

    const auto tight = hdx::checkLocalExpansion(oct, m, 1.0, 1.9);
    CHECK(tight.status == VerifyStatus::BoundViolated);  // vertex links reach 2

    const auto pinch = SimplicialComplex::buildFromFacets({{0, 1, 2}, {0, 3, 4}});
    const auto broken =
        hdx::checkLocalExpansion(pinch, WeightFunction::homogeneous(pinch), 0.1, 2.0);
    CHECK(broken.status == VerifyStatus::HypothesisNotMet);
}

TEST_CASE("spectral descent is tight on the strongly symmetric fixtures", "[theorems]") {
    for (const auto& x : {oracle::fullTriangle(), oracle::tetrahedronBoundary(),
                          oracle::octahedron()}) {
        const WeightFunction m = WeightFunction::homogeneous(x);
        const auto report = hdx::verifyTrickleDown(x, m);
        CHECK(report.passed());
        CHECK(report.worstSlack() >= -1e-8);
    }
}

TEST_CASE("spectral descent refuses a gap on the threshold", "[theorems]") {
    const SimplicialComplex wheel = hexWheel();
    const WeightFunction m = WeightFunction::homogeneous(wheel);
    const auto report = hdx::verifyTrickleDown(wheel, m);
    CHECK(report.status == VerifyStatus::HypothesisNotMet);  // hub link gap is 1/2
}

TEST_CASE("the interval transfer pins the tetrahedron boundary at two", "[theorems]") {
    const SimplicialComplex tet = oracle::tetrahedronBoundary();
    const WeightFunction m = WeightFunction::homogeneous(tet);
    const auto report = hdx::verifyGarlandInterval(tet, m, 1);
    CHECK(report.passed());
    CHECK(report.worstSlack() >= -1e-8);

    // The window over vertex links is [3/2, 3/2], so every nonzero eigenvalue
    // of the degree-1 up Laplacian equals 2.
    const auto eig = hdx::eigSelfadjoint(hdx::buildUpLaplacian(tet, m, 1));
    CHECK(eig.zeroMultiplicity() == 3);
    CHECK(eig.multiplicityNear(2.0, 1e-8) == 3);

    const auto vertexLevel = hdx::verifyGarlandInterval(oracle::octahedron(),
                                                        WeightFunction::homogeneous(
                                                            oracle::octahedron()),
                                                        0);
    CHECK(vertexLevel.passed());

    try {
        hdx::verifyGarlandInterval(tet, m, 2);
        FAIL("expected DegreeOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegreeOutOfRange);
    }
}

TEST_CASE("the interval transfer gates on the level gap", "[theorems]") {
    const SimplicialComplex wheel = hexWheel();
    const WeightFunction m = WeightFunction::homogeneous(wheel);
    const auto report = hdx::verifyGarlandInterval(wheel, m, 1);
    CHECK(report.status == VerifyStatus::HypothesisNotMet);  // needs lambda > 1/2
}

TEST_CASE("the norm transfer is tight on the octahedron", "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const WeightFunction m = WeightFunction::homogeneous(oct);
    const auto report = hdx::verifyGarlandNorm(oct, m, 0);
    REQUIRE(report.passed());
    REQUIRE_FALSE(report.checks.empty());
    const auto& check = report.checks.front();
    CHECK(check.bound == Catch::Approx(0.25));
    CHECK(check.measured == Catch::Approx(0.25));  // attained, not just bounded

    // Window [4/3, 4/3] collapses the operator to a multiple of the identity.
    const auto tet = oracle::tetrahedronBoundary();
    const auto exact = hdx::verifyGarlandNorm(tet, WeightFunction::homogeneous(tet), 0);
    REQUIRE(exact.passed());
    CHECK(exact.checks.front().measured <= 1e-9);
}

TEST_CASE("top-value propagation descends through the links", "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const auto report = hdx::verifyKappaPropagation(oct, WeightFunction::homogeneous(oct));
    CHECK(report.passed());
    CHECK(report.checks.size() == 12);

    const auto tri = oracle::fullTriangle();
    const auto triReport =
        hdx::verifyKappaPropagation(tri, WeightFunction::homogeneous(tri));
    CHECK(triReport.passed());
    CHECK(triReport.checks.size() == 5);

    // The tetrahedron boundary tops out at 4/3 < 3/2: nothing to propagate.
    const auto tet = oracle::tetrahedronBoundary();
    const auto tetReport =
        hdx::verifyKappaPropagation(tet, WeightFunction::homogeneous(tet));
    CHECK(tetReport.status == VerifyStatus::NotApplicable);
}

TEST_CASE("the flip eigenspace pins the partite top value", "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const WeightFunction m = WeightFunction::homogeneous(oct);
    const auto report = hdx::verifyPartiteTopEigenspace(oct, m, oracle::octahedronPartition());
    CHECK(report.passed());
    CHECK(report.worstSlack() >= -1e-8);

    const Partition collide({{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 2}, {5, 2}}, 3);
    const auto invalid = hdx::verifyPartiteTopEigenspace(oct, m, collide);
    CHECK(invalid.status == VerifyStatus::HypothesisNotMet);
}

TEST_CASE("the two-sided symmetry bound is attained on regular fixtures", "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const auto report = hdx::verifyPartiteSymmetry(oct, WeightFunction::homogeneous(oct),
                                                   oracle::octahedronPartition());
    CHECK(report.passed());
    // Gap 1 forces the largest nontrivial eigenvalue to be exactly 1.
    for (const auto& check : report.checks) CHECK(std::abs(check.slack) <= 1e-8);

    const SimplicialComplex k = oracle::k333();
    CHECK(hdx::verifyPartiteSymmetry(k, WeightFunction::homogeneous(k),
                                     oracle::k333Partition())
              .passed());

    const auto lone = hdx::singleSimplex(2);
    const Partition p({{0, 0}, {1, 1}, {2, 2}}, 3);
    try {
        hdx::verifyPartiteSymmetry(lone, WeightFunction::homogeneous(lone), p);
        FAIL("expected TrivialComplex");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TrivialComplex);
    }
}

TEST_CASE("partite descent tracks windows and attainment", "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const auto report = hdx::verifyPartiteDescent(oct, WeightFunction::homogeneous(oct),
                                                  oracle::octahedronPartition());
    CHECK(report.passed());
    CHECK_FALSE(report.notes.empty());  // both upper-bound candidates are recorded

    const SimplicialComplex k = oracle::k333();
    CHECK(hdx::verifyPartiteDescent(k, WeightFunction::homogeneous(k),
                                    oracle::k333Partition())
              .passed());
}

TEST_CASE("the contraction bound collapses to an identity on the octahedron",
          "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const WeightFunction m = WeightFunction::homogeneous(oct);
    const Partition p = oracle::octahedronPartition();
    for (int k = 0; k <= 1; ++k) {
        const auto report = hdx::verifyPartiteContraction(oct, m, p, k);
        REQUIRE(report.passed());
        REQUIRE_FALSE(report.checks.empty());
        CHECK(report.checks.front().measured <= 1e-9);  // window is a point
    }

    const auto lone = hdx::singleSimplex(2);
    const Partition q({{0, 0}, {1, 1}, {2, 2}}, 3);
    const auto degenerate =
        hdx::verifyPartiteContraction(lone, WeightFunction::homogeneous(lone), q, 0);
    CHECK(degenerate.status == VerifyStatus::NotApplicable);
}

TEST_CASE("structural identities hold with irregular weights", "[theorems]") {
    const auto random = oracle::acceptedRandom(1, 7, 2, 0.8);
    const auto& x = random.front().second;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    std::vector<double> w;
    for (int i = 0; i < x.count(2); ++i) w.push_back(dist(rng));
    const WeightFunction m = WeightFunction::extendTopWeights(x, w);
    const auto report = hdx::verifyStructuralIdentities(x, m);
    CHECK(report.passed());
    CHECK(hasCheck(report, "coboundary-squares-to-zero"));
    CHECK(hasCheck(report, "codifferential-adjointness"));
    CHECK(hasCheck(report, "restriction-norm"));
    CHECK(hasCheck(report, "hodge-pairing"));
}

TEST_CASE("structural identities include the side block with a partition",
          "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const WeightFunction m = WeightFunction::homogeneous(oct);
    const Partition p = oracle::octahedronPartition();
    const auto report = hdx::verifyStructuralIdentities(oct, m, {}, &p);
    CHECK(report.passed());
    for (const char* prefix :
         {"side-splitting", "side-localization", "side-flips-sum-to-zero",
          "side-flip-norm-identity", "side-flip-energy-identity",
          "side-projection-idempotent", "side-projection-self-adjoint",
          "nontrivial-projection-orthogonal-to-indicators",
          "side-vertex-weight-balance"}) {
        INFO(prefix);
        CHECK(hasCheck(report, prefix));
    }

    const auto bare = hdx::verifyStructuralIdentities(oct, m);
    CHECK(bare.passed());
    CHECK_FALSE(hasCheck(bare, "side-splitting"));
}

TEST_CASE("the battery runs every statement in a fixed order", "[theorems]") {
    const SimplicialComplex oct = oracle::octahedron();
    const WeightFunction m = WeightFunction::homogeneous(oct);
    const Partition p = oracle::octahedronPartition();
    const auto reports = hdx::runBattery(oct, m, &p);
    std::vector<std::string> ids;
    for (const auto& r : reports) {
        ids.push_back(r.id);
        INFO(r.id);
        CHECK(r.passed());
    }
    CHECK(ids == std::vector<std::string>{
                     "structural-identities", "trickle-down", "garland-interval[k=0]",
                     "garland-interval[k=1]", "garland-norm[k=0]", "garland-norm[k=1]",
                     "kappa-propagation", "partite-top-eigenspace", "partite-symmetry",
                     "partite-descent", "partite-contraction[k=0]",
                     "partite-contraction[k=1]"});

    // Without a partition the partite statements are absent.
    const auto plain = hdx::runBattery(oct, m);
    CHECK(plain.size() == 7);
    for (const auto& r : plain) CHECK(r.id.rfind("partite", 0) != 0);
}

TEST_CASE("the battery treats a degenerate symmetry input as not applicable",
          "[theorems]") {
    const auto lone = hdx::singleSimplex(2);
    const WeightFunction m = WeightFunction::homogeneous(lone);
    const Partition p({{0, 0}, {1, 1}, {2, 2}}, 3);
    const auto reports = hdx::runBattery(lone, m, &p);
    bool sawSymmetry = false;
    for (const auto& r : reports) {
        if (r.id == "partite-symmetry") {
            sawSymmetry = true;
            CHECK(r.status == VerifyStatus::NotApplicable);
        }
    }
    CHECK(sawSymmetry);
}
