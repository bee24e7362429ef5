#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "hdx/errors.hpp"

namespace hdx {

using VertexId = int;

/**
 * Sign of the permutation that sorts `vertices` ascending.
 *
 * @param vertices Distinct vertex ids in any order.
 * @returns +1 for an even permutation, -1 for an odd one.
 * @throws Error{DuplicateVertex} if two entries coincide.
 */
int sortParity(std::vector<VertexId> vertices);

/**
 * Unordered simplex held as its canonical representative: the strictly
 * increasing list of vertex ids.  The empty simplex has dimension -1.
 */
class Simplex {
  public:
    Simplex() = default;
    explicit Simplex(std::vector<VertexId> vertices);

    int dimension() const noexcept { return static_cast<int>(verts_.size()) - 1; }
    std::size_t cardinality() const noexcept { return verts_.size(); }
    const std::vector<VertexId>& vertices() const noexcept { return verts_; }
    VertexId vertex(std::size_t i) const { return verts_[i]; }

    bool containsVertex(VertexId v) const;
    bool isFaceOf(const Simplex& other) const;

    /** Face obtained by deleting the i-th smallest vertex. */
    Simplex face(std::size_t i) const;

    /** Union with a disjoint simplex; throws DuplicateVertex on overlap. */
    Simplex unionWith(const Simplex& other) const;

    /** Adds one vertex not already present. */
    Simplex joinVertex(VertexId v) const;

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend std::strong_ordering operator<=>(const Simplex&, const Simplex&) = default;

    std::string toString() const;

  private:
    std::vector<VertexId> verts_;
};

/** Vertex sequence with orientation; the evaluation sites of cochains. */
class OrderedSimplex {
  public:
    OrderedSimplex() = default;
    explicit OrderedSimplex(std::vector<VertexId> vertices);

    int dimension() const noexcept { return static_cast<int>(verts_.size()) - 1; }
    const std::vector<VertexId>& vertices() const noexcept { return verts_; }

    /** +1 if sorting the sequence ascending is even, -1 if odd. */
    int parity() const noexcept { return parity_; }
    const Simplex& canonical() const noexcept { return canonical_; }

  private:
    std::vector<VertexId> verts_;
    Simplex canonical_;
    int parity_ = 1;
};

}  // namespace hdx
