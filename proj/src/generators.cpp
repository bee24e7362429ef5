#include "hdx/generators.hpp"

#include <map>
#include <numeric>
#include <random>

#include "hdx/errors.hpp"

namespace hdx {

namespace {

/** All (r)-subsets of 0..pool-1 in lexicographic order. */
std::vector<std::vector<VertexId>> combinations(int pool, int r) {
    std::vector<std::vector<VertexId>> out;
    if (r < 0 || r > pool) return out;
    std::vector<VertexId> current(static_cast<size_t>(r));
    std::iota(current.begin(), current.end(), 0);
    while (true) {
        out.push_back(current);
        int i = r - 1;
        while (i >= 0 && current[static_cast<size_t>(i)] == pool - r + i) --i;
        if (i < 0) break;
        ++current[static_cast<size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            current[static_cast<size_t>(j)] = current[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

}  // namespace

SimplicialComplex singleSimplex(int dimension) {
    if (dimension < 0) fail(ErrorCode::ValidationFailure, "dimension must be non-negative");
    std::vector<VertexId> verts(static_cast<size_t>(dimension) + 1);
    std::iota(verts.begin(), verts.end(), 0);
    return SimplicialComplex::buildFromFacets({verts});
}

SimplicialComplex completeComplex(int vertexCount, int dimension) {
    if (dimension < 0 || vertexCount < dimension + 1)
        fail(ErrorCode::ValidationFailure,
             "a complete complex needs vertexCount >= dimension + 1 >= 1");
    return SimplicialComplex::buildFromFacets(combinations(vertexCount, dimension + 1));
}

PartiteComplex completeMultipartite(const std::vector<int>& sizes) {
    if (sizes.empty()) fail(ErrorCode::ValidationFailure, "at least one side is required");
    for (int s : sizes)
        if (s < 1) fail(ErrorCode::ValidationFailure, "every side needs at least one vertex");
    std::vector<std::vector<VertexId>> blocks;
    std::map<VertexId, int> sideOf;
    VertexId next = 0;
    for (size_t j = 0; j < sizes.size(); ++j) {
        std::vector<VertexId> block(static_cast<size_t>(sizes[j]));
        std::iota(block.begin(), block.end(), next);
        next += sizes[j];
        for (VertexId v : block) sideOf[v] = static_cast<int>(j);
        blocks.push_back(std::move(block));
    }
    std::vector<std::vector<VertexId>> facets;
    std::vector<size_t> pick(sizes.size(), 0);
    while (true) {
        std::vector<VertexId> facet;
        facet.reserve(sizes.size());
        for (size_t j = 0; j < sizes.size(); ++j) facet.push_back(blocks[j][pick[j]]);
        facets.push_back(std::move(facet));
        size_t j = sizes.size();
        while (j > 0) {
            --j;
            if (++pick[j] < blocks[j].size()) break;
            pick[j] = 0;
            if (j == 0) {
                return PartiteComplex{SimplicialComplex::buildFromFacets(facets),
                                      Partition(sideOf, static_cast<int>(sizes.size()))};
            }
        }
    }
}

PartiteComplex crossPolytope(int dimension) {
    if (dimension < 0) fail(ErrorCode::ValidationFailure, "dimension must be non-negative");
    return completeMultipartite(std::vector<int>(static_cast<size_t>(dimension) + 1, 2));
}

RandomComplexResult randomPureComplex(int vertexCount, int dimension,
                                      double keepProbability, std::uint64_t seed) {
    if (dimension < 0 || vertexCount < dimension + 1)
        fail(ErrorCode::ValidationFailure,
             "a random complex needs vertexCount >= dimension + 1 >= 1");
    if (!(keepProbability >= 0.0 && keepProbability <= 1.0))
        fail(ErrorCode::ValidationFailure, "keep probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<VertexId>> kept;
    for (const auto& candidate : combinations(vertexCount, dimension + 1)) {
        const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (draw < keepProbability) kept.push_back(candidate);
    }
    RandomComplexResult result;
    if (kept.empty()) {
        result.reason = "no facet survived the draw";
        return result;
    }
    SimplicialComplex x = SimplicialComplex::buildFromFacets(kept);
    const auto links = x.checkAllLinksConnected();
    if (!links.allConnected) {
        for (const auto& entry : links.entries) {
            if (!entry.connected) {
                result.reason = "link of " + entry.tau.toString() + " is disconnected";
                break;
            }
        }
        return result;
    }
    result.accepted = true;
    result.complex = std::move(x);
    return result;
}

}  // namespace hdx
