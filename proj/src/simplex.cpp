#include "hdx/simplex.hpp"

#include <algorithm>
#include <sstream>

namespace hdx {

int sortParity(std::vector<VertexId> vertices) {
    // Insertion sort; the swap count has the parity of the permutation.
    int swaps = 0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        VertexId key = vertices[i];
        std::size_t j = i;
        while (j > 0 && vertices[j - 1] > key) {
            vertices[j] = vertices[j - 1];
            --j;
            ++swaps;
        }
        vertices[j] = key;
    }
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i] == vertices[i - 1]) {
            fail(ErrorCode::DuplicateVertex,
                 "vertex " + std::to_string(vertices[i]) + " repeats in simplex");
        }
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

Simplex::Simplex(std::vector<VertexId> vertices) : verts_(std::move(vertices)) {
    std::sort(verts_.begin(), verts_.end());
    for (std::size_t i = 1; i < verts_.size(); ++i) {
        if (verts_[i] == verts_[i - 1]) {
            fail(ErrorCode::DuplicateVertex,
                 "vertex " + std::to_string(verts_[i]) + " repeats in simplex");
        }
    }
}

bool Simplex::containsVertex(VertexId v) const {
    return std::binary_search(verts_.begin(), verts_.end(), v);
}

bool Simplex::isFaceOf(const Simplex& other) const {
    return std::includes(other.verts_.begin(), other.verts_.end(), verts_.begin(),
                         verts_.end());
}

Simplex Simplex::face(std::size_t i) const {
    Simplex result;
    result.verts_.reserve(verts_.size() - 1);
    for (std::size_t j = 0; j < verts_.size(); ++j) {
        if (j != i) result.verts_.push_back(verts_[j]);
    }
    return result;
}

Simplex Simplex::unionWith(const Simplex& other) const {
    Simplex result;
    result.verts_.reserve(verts_.size() + other.verts_.size());
    std::merge(verts_.begin(), verts_.end(), other.verts_.begin(), other.verts_.end(),
               std::back_inserter(result.verts_));
    for (std::size_t i = 1; i < result.verts_.size(); ++i) {
        if (result.verts_[i] == result.verts_[i - 1]) {
            fail(ErrorCode::DuplicateVertex,
                 "simplices overlap at vertex " + std::to_string(result.verts_[i]));
        }
    }
    return result;
}

Simplex Simplex::joinVertex(VertexId v) const {
    Simplex single;
    single.verts_.push_back(v);
    return unionWith(single);
}

std::string Simplex::toString() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        if (i > 0) out << ',';
        out << verts_[i];
    }
    out << '}';
    return out.str();
}

OrderedSimplex::OrderedSimplex(std::vector<VertexId> vertices)
    : verts_(std::move(vertices)) {
    parity_ = sortParity(verts_);
    canonical_ = Simplex(verts_);
}

}  // namespace hdx
