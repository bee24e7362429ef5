#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdx/simplicial_complex.hpp"

namespace hdx {

/** The full n-simplex on vertices 0..n. */
SimplicialComplex singleSimplex(int dimension);

/**
 * Complete n-dimensional complex on `vertexCount` vertices: every
 * (n+1)-subset of 0..vertexCount-1 is a facet.
 *
 * @throws Error{ValidationFailure} unless vertexCount >= dimension + 1 >= 1.
 */
SimplicialComplex completeComplex(int vertexCount, int dimension);

struct PartiteComplex {
    SimplicialComplex complex;
    Partition partition;
};

/**
 * Complete multipartite complex: sides are consecutive vertex-id blocks of
 * the given sizes and the facets are all transversals.  The dimension is the
 * number of sides minus one.
 *
 * @throws Error{ValidationFailure} on an empty size list or a size < 1.
 */
PartiteComplex completeMultipartite(const std::vector<int>& sizes);

/** Boundary-of-cross-polytope analogue: multipartite with n+1 sides of two. */
PartiteComplex crossPolytope(int dimension);

struct RandomComplexResult {
    bool accepted = false;
    std::string reason;  // empty when accepted
    std::optional<SimplicialComplex> complex;
};

/**
 * Pure n-dimensional complex drawn facet by facet: the (n+1)-subsets of
 * 0..vertexCount-1 are visited in lexicographic order and each is kept with
 * the given probability, using one engine draw per candidate so a seed fixes
 * the complex exactly.  The draw is rejected (accepted = false, reason set)
 * when no facet survives or some link, the 1-skeleton included, is
 * disconnected.
 */
RandomComplexResult randomPureComplex(int vertexCount, int dimension,
                                      double keepProbability, std::uint64_t seed);

}  // namespace hdx
