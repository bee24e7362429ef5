#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hdx/simplex.hpp"

namespace hdx {

/** Assignment of every vertex to one of `sideCount` color classes. */
class Partition {
  public:
    Partition() = default;

    /**
     * @param sideOf Map from vertex id to side label in [0, sideCount).
     * @param sideCount Number of sides; sides may be empty.
     */
    Partition(const std::map<VertexId, int>& sideOf, int sideCount);

    int sideCount() const noexcept { return static_cast<int>(sides_.size()); }
    int side(VertexId v) const;
    bool containsVertex(VertexId v) const;
    const std::vector<std::vector<VertexId>>& sides() const noexcept { return sides_; }
    const std::map<VertexId, int>& sideOf() const noexcept { return sideOf_; }

    /** True when both partitions induce the same blocks, labels ignored. */
    bool sameBlocks(const Partition& other) const;

  private:
    std::map<VertexId, int> sideOf_;
    std::vector<std::vector<VertexId>> sides_;
};

struct GalleryConnectivity {
    bool connected = false;
    int componentCount = 0;
    std::vector<int> facetComponent;  // component id per facet index
};

struct LinkConnectivityEntry {
    Simplex tau;
    bool connected = false;
};

struct LinkConnectivityReport {
    bool allConnected = true;
    std::vector<LinkConnectivityEntry> entries;
};

/**
 * Pure n-dimensional finite abstract simplicial complex, stored as the full
 * face poset grouped by dimension.  Level -1 always holds the empty simplex.
 * Intended for desk-scale instances; operators are materialized densely.
 */
class SimplicialComplex {
  public:
    /**
     * Downward closure of a facet list.
     *
     * @param facets Non-empty list; every facet has the same cardinality
     *        n+1 >= 1 and distinct non-negative vertex ids.
     * @throws Error{EmptyInput, MixedDimension, DuplicateVertex,
     *         ValidationFailure}.
     */
    static SimplicialComplex buildFromFacets(
        const std::vector<std::vector<VertexId>>& facets);

    int dimension() const noexcept { return dim_; }

    /** Number of k-simplices, -1 <= k <= n. */
    int count(int k) const;
    const std::vector<Simplex>& simplices(int k) const;
    const Simplex& simplex(int k, int i) const;
    const std::vector<Simplex>& facets() const { return simplices(dim_); }

    /** Position of `s` within its dimension, or -1 when absent. */
    int indexOf(const Simplex& s) const;
    bool contains(const Simplex& s) const { return indexOf(s) >= 0; }

    const std::vector<VertexId>& vertexIds() const noexcept { return vertexIds_; }

    struct Cofacet {
        VertexId added;  // the union tau + added
        int index;       // sits at simplices(k+1)[index]
    };
    const std::vector<Cofacet>& cofacets(int k, int i) const;

    /**
     * Link of `tau`: all sigma with tau `union` sigma in the complex.  Vertex
     * ids are preserved (identity embedding), so weights and cochains pull
     * back by simplex lookup.
     *
     * @throws Error{SimplexNotInComplex, DegreeOutOfRange} when tau is not a
     *         simplex of the complex or is a facet.
     */
    SimplicialComplex link(const Simplex& tau) const;

    /** Pure k-dimensional complex whose facets are the k-simplices. */
    SimplicialComplex skeleton(int k) const;

    /** Connectivity of the graph on facets joined along shared (n-1)-faces. */
    GalleryConnectivity galleryConnectivity() const;
    bool isGalleryConnected() const { return galleryConnectivity().connected; }

    /**
     * Witness gallery: facet-index path from a facet containing u to one
     * containing v, consecutive facets sharing an (n-1)-face.  Empty when no
     * such path exists.
     */
    std::vector<int> galleryBetween(VertexId u, VertexId v) const;

    /** 1-skeleton connectivity of every link of dimension >= 1. */
    LinkConnectivityReport checkAllLinksConnected() const;

    /**
     * Recovers the coloring in which every facet has one vertex per side.
     * Side labels are canonical: numbered by first appearance in vertex-id
     * order.  Returns std::nullopt when no such coloring exists.
     *
     * @throws Error{NotGalleryConnected} when the facet graph is
     *         disconnected and propagation has no unambiguous basis.
     */
    std::optional<Partition> detectPartition() const;

    /** True when P covers all vertices and every facet is a transversal. */
    bool isValidPartition(const Partition& p) const;

  private:
    int dim_ = 0;
    std::vector<std::vector<Simplex>> levels_;       // levels_[k+1]
    std::vector<std::map<Simplex, int>> index_;      // aligned with levels_
    std::vector<std::vector<std::vector<Cofacet>>> cofacets_;
    std::vector<VertexId> vertexIds_;

    void checkLevel(int k) const;
};

/** P restricted to the vertices of `sub`, keeping labels and side count. */
Partition restrictPartition(const Partition& p, const SimplicialComplex& sub);

}  // namespace hdx
