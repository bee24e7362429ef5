#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <iterator>

#include "hdx/errors.hpp"
#include "hdx/simplex.hpp"
#include "hdx/simplicial_complex.hpp"
#include "oracles.hpp"

using hdx::Error;
using hdx::ErrorCode;
using hdx::OrderedSimplex;
using hdx::Partition;
using hdx::Simplex;
using hdx::SimplicialComplex;
using hdx::VertexId;

namespace {

bool throwsWithCode(ErrorCode code, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("sort parity counts inversions", "[complex]") {
    CHECK(hdx::sortParity({}) == 1);
    CHECK(hdx::sortParity({7}) == 1);
    CHECK(hdx::sortParity({0, 1}) == 1);
    CHECK(hdx::sortParity({1, 0}) == -1);
    CHECK(hdx::sortParity({2, 0, 1}) == 1);
    CHECK(hdx::sortParity({0, 2, 1}) == -1);
    CHECK(hdx::sortParity({3, 2, 1, 0}) == 1);  // six inversions
    CHECK(throwsWithCode(ErrorCode::DuplicateVertex, [] { hdx::sortParity({1, 2, 1}); }));
}

TEST_CASE("simplices canonicalize and enumerate faces", "[complex]") {
    const Simplex s({3, 1, 2});
    CHECK(s.vertices() == std::vector<VertexId>{1, 2, 3});
    CHECK(s.dimension() == 2);
    CHECK(s.toString() == "{1,2,3}");
    CHECK(s.face(0) == Simplex({2, 3}));
    CHECK(s.face(2) == Simplex({1, 2}));
    CHECK(Simplex({1, 2}).isFaceOf(s));
    CHECK_FALSE(Simplex({1, 4}).isFaceOf(s));
    CHECK(Simplex{}.isFaceOf(s));
    CHECK(Simplex{}.dimension() == -1);

    CHECK(Simplex({1, 3}).unionWith(Simplex({2})) == s);
    CHECK(throwsWithCode(ErrorCode::DuplicateVertex,
                         [&] { s.unionWith(Simplex({3, 9})); }));
    CHECK(s.joinVertex(0) == Simplex({0, 1, 2, 3}));
}

TEST_CASE("ordered simplices carry their parity", "[complex]") {
    const OrderedSimplex flip({2, 1});
    CHECK(flip.parity() == -1);
    CHECK(flip.canonical() == Simplex({1, 2}));
    CHECK(OrderedSimplex({4, 0, 2}).parity() == 1);
}

TEST_CASE("facet closure builds the full face poset", "[complex]") {
    const SimplicialComplex oct = oracle::octahedron();
    CHECK(oct.dimension() == 2);
    CHECK(oct.count(-1) == 1);
    CHECK(oct.count(0) == 6);
    CHECK(oct.count(1) == 12);
    CHECK(oct.count(2) == 8);
    CHECK(oct.contains(Simplex({0, 2})));
    CHECK_FALSE(oct.contains(Simplex({0, 1})));  // antipodal pair
    CHECK(oct.indexOf(Simplex({9, 10})) == -1);
    CHECK(oct.vertexIds() == std::vector<VertexId>{0, 1, 2, 3, 4, 5});

    // Every vertex of the octahedron sits under four edges.
    const int v0 = oct.indexOf(Simplex({0}));
    CHECK(oct.cofacets(0, v0).size() == 4);
    // The empty simplex has every vertex as a cofacet.
    CHECK(oct.cofacets(-1, 0).size() == 6);

    CHECK(throwsWithCode(ErrorCode::EmptyInput,
                         [] { SimplicialComplex::buildFromFacets({}); }));
    CHECK(throwsWithCode(ErrorCode::MixedDimension, [] {
        SimplicialComplex::buildFromFacets({{0, 1, 2}, {3, 4}});
    }));
    CHECK(throwsWithCode(ErrorCode::DuplicateVertex, [] {
        SimplicialComplex::buildFromFacets({{0, 1, 1}});
    }));
    CHECK(throwsWithCode(ErrorCode::ValidationFailure, [] {
        SimplicialComplex::buildFromFacets({{0, 1, -3}});
    }));
    // Closure is a set: a facet listed twice collapses.
    CHECK(SimplicialComplex::buildFromFacets({{0, 1, 2}, {0, 2, 1}}).count(2) == 1);
}

TEST_CASE("links preserve vertex ids", "[complex]") {
    const SimplicialComplex oct = oracle::octahedron();

    const SimplicialComplex ring = oct.link(Simplex({0}));
    CHECK(ring.dimension() == 1);
    CHECK(ring.count(0) == 4);
    CHECK(ring.count(1) == 4);  // the square 2-4-3-5
    CHECK(ring.vertexIds() == std::vector<VertexId>{2, 3, 4, 5});
    CHECK(ring.contains(Simplex({2, 4})));
    CHECK_FALSE(ring.contains(Simplex({2, 3})));

    const SimplicialComplex pair = oct.link(Simplex({0, 2}));
    CHECK(pair.dimension() == 0);
    CHECK(pair.vertexIds() == std::vector<VertexId>{4, 5});

    CHECK(oct.link(Simplex{}).count(2) == 8);  // link of empty is the complex

    CHECK(throwsWithCode(ErrorCode::DegreeOutOfRange,
                         [&] { oct.link(Simplex({0, 2, 4})); }));
    CHECK(throwsWithCode(ErrorCode::SimplexNotInComplex,
                         [&] { oct.link(Simplex({0, 1})); }));
}

TEST_CASE("skeletons keep lower levels intact", "[complex]") {
    const SimplicialComplex oct = oracle::octahedron();
    const SimplicialComplex graph = oct.skeleton(1);
    CHECK(graph.dimension() == 1);
    CHECK(graph.count(0) == 6);
    CHECK(graph.count(1) == 12);
    CHECK(graph.facets().size() == 12);
    CHECK(throwsWithCode(ErrorCode::DegreeOutOfRange, [&] { oct.skeleton(3); }));
}

TEST_CASE("gallery connectivity tracks facet adjacency", "[complex]") {
    const SimplicialComplex oct = oracle::octahedron();
    const auto conn = oct.galleryConnectivity();
    CHECK(conn.connected);
    CHECK(conn.componentCount == 1);

    const auto walk = oct.galleryBetween(0, 1);
    REQUIRE_FALSE(walk.empty());
    CHECK(oct.facets()[static_cast<size_t>(walk.front())].containsVertex(0));
    CHECK(oct.facets()[static_cast<size_t>(walk.back())].containsVertex(1));
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        const auto& a = oct.facets()[static_cast<size_t>(walk[i])].vertices();
        const auto& b = oct.facets()[static_cast<size_t>(walk[i + 1])].vertices();
        std::vector<VertexId> shared;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(shared));
        CHECK(shared.size() == 2);  // consecutive chambers share an edge
    }

    const auto split = SimplicialComplex::buildFromFacets({{0, 1, 2}, {3, 4, 5}});
    const auto splitConn = split.galleryConnectivity();
    CHECK_FALSE(splitConn.connected);
    CHECK(splitConn.componentCount == 2);
    CHECK(split.galleryBetween(0, 4).empty());
}

TEST_CASE("link connectivity audit flags pinch points", "[complex]") {
    CHECK(oracle::octahedron().checkAllLinksConnected().allConnected);

    // Two triangles glued at one vertex: the link of that vertex is two
    // disjoint edges.
    const auto pinch = SimplicialComplex::buildFromFacets({{0, 1, 2}, {0, 3, 4}});
    const auto report = pinch.checkAllLinksConnected();
    CHECK_FALSE(report.allConnected);
    bool sawPinch = false;
    for (const auto& entry : report.entries) {
        if (entry.tau == Simplex({0})) {
            sawPinch = true;
            CHECK_FALSE(entry.connected);
        }
    }
    CHECK(sawPinch);
}

TEST_CASE("coloring detection recovers the octahedron sides", "[complex]") {
    const SimplicialComplex oct = oracle::octahedron();
    const auto detected = oct.detectPartition();
    REQUIRE(detected.has_value());
    CHECK(detected->sideCount() == 3);
    CHECK(detected->sameBlocks(oracle::octahedronPartition()));
    CHECK(detected->sides() ==
          std::vector<std::vector<VertexId>>{{0, 1}, {2, 3}, {4, 5}});
    CHECK(oct.isValidPartition(*detected));

    // The boundary of the tetrahedron admits no such coloring.
    CHECK_FALSE(oracle::tetrahedronBoundary().detectPartition().has_value());
}

TEST_CASE("partition validity requires transversal facets", "[complex]") {
    const SimplicialComplex oct = oracle::octahedron();
    const Partition good = oracle::octahedronPartition();
    CHECK(oct.isValidPartition(good));

    const Partition shuffled({{0, 2}, {1, 2}, {2, 0}, {3, 0}, {4, 1}, {5, 1}}, 3);
    CHECK(oct.isValidPartition(shuffled));
    CHECK(good.sameBlocks(shuffled));

    const Partition collide({{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 2}, {5, 2}}, 3);
    CHECK_FALSE(oct.isValidPartition(collide));  // facet {0,2,4} meets side 0 twice
    CHECK_FALSE(good.sameBlocks(collide));

    const Partition missing({{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 2}}, 3);
    CHECK_FALSE(oct.isValidPartition(missing));
}

TEST_CASE("partition restriction keeps labels on links", "[complex]") {
    const SimplicialComplex oct = oracle::octahedron();
    const Partition p = oracle::octahedronPartition();
    const SimplicialComplex ring = oct.link(Simplex({0}));
    const Partition q = hdx::restrictPartition(p, ring);
    CHECK(q.sideCount() == 3);
    CHECK(q.sides()[0].empty());  // side of the removed vertex pair
    CHECK(q.sides()[1] == std::vector<VertexId>{2, 3});
    CHECK(q.sides()[2] == std::vector<VertexId>{4, 5});
    CHECK(q.side(4) == p.side(4));
}
