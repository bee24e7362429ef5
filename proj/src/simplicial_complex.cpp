#include "hdx/simplicial_complex.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hdx {

Partition::Partition(const std::map<VertexId, int>& sideOf, int sideCount)
    : sideOf_(sideOf) {
    if (sideCount < 1) fail(ErrorCode::InvalidPartition, "side count must be positive");
    sides_.resize(static_cast<std::size_t>(sideCount));
    for (const auto& [v, s] : sideOf_) {
        if (s < 0 || s >= sideCount) {
            fail(ErrorCode::InvalidPartition,
                 "side label " + std::to_string(s) + " out of range for vertex " +
                     std::to_string(v));
        }
        sides_[static_cast<std::size_t>(s)].push_back(v);
    }
    // Map iteration is ascending, so each side list is already sorted.
}

int Partition::side(VertexId v) const {
    auto it = sideOf_.find(v);
    if (it == sideOf_.end()) {
        fail(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " not in partition");
    }
    return it->second;
}

bool Partition::containsVertex(VertexId v) const { return sideOf_.count(v) > 0; }

bool Partition::sameBlocks(const Partition& other) const {
    auto blocks = [](const Partition& p) {
        std::set<std::vector<VertexId>> result;
        for (const auto& side : p.sides()) {
            if (!side.empty()) result.insert(side);
        }
        return result;
    };
    return blocks(*this) == blocks(other);
}

SimplicialComplex SimplicialComplex::buildFromFacets(
    const std::vector<std::vector<VertexId>>& facets) {
    if (facets.empty()) fail(ErrorCode::EmptyInput, "facet list is empty");

    const std::size_t cardinality = facets.front().size();
    if (cardinality == 0) fail(ErrorCode::EmptyInput, "facet has no vertices");
    if (cardinality > 24) {
        fail(ErrorCode::ValidationFailure, "facet cardinality beyond supported scale");
    }

    SimplicialComplex x;
    x.dim_ = static_cast<int>(cardinality) - 1;

    std::vector<std::set<Simplex>> levelSets(cardinality + 1);
    for (const auto& raw : facets) {
        if (raw.size() != cardinality) {
            fail(ErrorCode::MixedDimension, "facets of unequal cardinality");
        }
        for (VertexId v : raw) {
            if (v < 0) fail(ErrorCode::ValidationFailure, "negative vertex id");
        }
        Simplex facet(raw);
        // Enumerate every subset of the facet; the complex is the closure.
        const std::size_t total = std::size_t{1} << cardinality;
        for (std::size_t mask = 0; mask < total; ++mask) {
            std::vector<VertexId> verts;
            for (std::size_t b = 0; b < cardinality; ++b) {
                if (mask & (std::size_t{1} << b)) verts.push_back(facet.vertex(b));
            }
            levelSets[verts.size()].insert(Simplex(std::move(verts)));
        }
    }

    x.levels_.resize(cardinality + 1);
    x.index_.resize(cardinality + 1);
    for (std::size_t c = 0; c <= cardinality; ++c) {
        x.levels_[c].assign(levelSets[c].begin(), levelSets[c].end());
        for (std::size_t i = 0; i < x.levels_[c].size(); ++i) {
            x.index_[c].emplace(x.levels_[c][i], static_cast<int>(i));
        }
    }

    for (const Simplex& v : x.levels_[1]) x.vertexIds_.push_back(v.vertex(0));

    // Cofacet lists: for each (k+1)-simplex record it at each of its k-faces.
    x.cofacets_.resize(cardinality + 1);
    for (std::size_t c = 0; c + 1 <= cardinality; ++c) {
        x.cofacets_[c].resize(x.levels_[c].size());
    }
    for (std::size_t c = 1; c <= cardinality; ++c) {
        for (std::size_t i = 0; i < x.levels_[c].size(); ++i) {
            const Simplex& sigma = x.levels_[c][i];
            for (std::size_t drop = 0; drop < c; ++drop) {
                Simplex faceSimplex = sigma.face(drop);
                int faceIndex = x.index_[c - 1].at(faceSimplex);
                x.cofacets_[c - 1][static_cast<std::size_t>(faceIndex)].push_back(
                    Cofacet{sigma.vertex(drop), static_cast<int>(i)});
            }
        }
    }
    return x;
}

void SimplicialComplex::checkLevel(int k) const {
    if (k < -1 || k > dim_) {
        fail(ErrorCode::DegreeOutOfRange,
             "level " + std::to_string(k) + " outside [-1, " + std::to_string(dim_) + "]");
    }
}

int SimplicialComplex::count(int k) const {
    checkLevel(k);
    return static_cast<int>(levels_[static_cast<std::size_t>(k + 1)].size());
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
    checkLevel(k);
    return levels_[static_cast<std::size_t>(k + 1)];
}

const Simplex& SimplicialComplex::simplex(int k, int i) const {
    return simplices(k)[static_cast<std::size_t>(i)];
}

int SimplicialComplex::indexOf(const Simplex& s) const {
    int k = s.dimension();
    if (k < -1 || k > dim_) return -1;
    const auto& index = index_[static_cast<std::size_t>(k + 1)];
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
}

const std::vector<SimplicialComplex::Cofacet>& SimplicialComplex::cofacets(int k,
                                                                           int i) const {
    checkLevel(k);
    if (k == dim_) fail(ErrorCode::DegreeOutOfRange, "facets have no cofacets");
    return cofacets_[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(i)];
}

SimplicialComplex SimplicialComplex::link(const Simplex& tau) const {
    if (indexOf(tau) < 0) {
        fail(ErrorCode::SimplexNotInComplex, "link of " + tau.toString() + ": not a simplex");
    }
    if (tau.dimension() >= dim_) {
        fail(ErrorCode::DegreeOutOfRange, "link of a facet is empty");
    }
    std::vector<std::vector<VertexId>> linkFacets;
    for (const Simplex& facet : facets()) {
        if (!tau.isFaceOf(facet)) continue;
        std::vector<VertexId> rest;
        for (VertexId v : facet.vertices()) {
            if (!tau.containsVertex(v)) rest.push_back(v);
        }
        linkFacets.push_back(std::move(rest));
    }
    return buildFromFacets(linkFacets);
}

SimplicialComplex SimplicialComplex::skeleton(int k) const {
    checkLevel(k);
    if (k < 0) fail(ErrorCode::DegreeOutOfRange, "skeleton level must be non-negative");
    std::vector<std::vector<VertexId>> skeletonFacets;
    for (const Simplex& s : simplices(k)) skeletonFacets.push_back(s.vertices());
    return buildFromFacets(skeletonFacets);
}

GalleryConnectivity SimplicialComplex::galleryConnectivity() const {
    const int facetCount = count(dim_);
    GalleryConnectivity result;
    result.facetComponent.assign(static_cast<std::size_t>(facetCount), -1);

    for (int start = 0; start < facetCount; ++start) {
        if (result.facetComponent[static_cast<std::size_t>(start)] >= 0) continue;
        const int component = result.componentCount++;
        std::deque<int> queue{start};
        result.facetComponent[static_cast<std::size_t>(start)] = component;
        while (!queue.empty()) {
            int current = queue.front();
            queue.pop_front();
            const Simplex& sigma = simplex(dim_, current);
            for (std::size_t drop = 0; drop < sigma.cardinality(); ++drop) {
                int ridge = indexOf(sigma.face(drop));
                for (const Cofacet& c : cofacets(dim_ - 1, ridge)) {
                    if (result.facetComponent[static_cast<std::size_t>(c.index)] < 0) {
                        result.facetComponent[static_cast<std::size_t>(c.index)] = component;
                        queue.push_back(c.index);
                    }
                }
            }
        }
    }
    result.connected = (result.componentCount == 1);
    return result;
}

std::vector<int> SimplicialComplex::galleryBetween(VertexId u, VertexId v) const {
    const int facetCount = count(dim_);
    std::vector<int> parent(static_cast<std::size_t>(facetCount), -2);
    std::deque<int> queue;
    for (int i = 0; i < facetCount; ++i) {
        if (simplex(dim_, i).containsVertex(u)) {
            parent[static_cast<std::size_t>(i)] = -1;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        int current = queue.front();
        queue.pop_front();
        const Simplex& sigma = simplex(dim_, current);
        if (sigma.containsVertex(v)) {
            std::vector<int> path;
            for (int at = current; at >= 0; at = parent[static_cast<std::size_t>(at)]) {
                path.push_back(at);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (std::size_t drop = 0; drop < sigma.cardinality(); ++drop) {
            int ridge = indexOf(sigma.face(drop));
            for (const Cofacet& c : cofacets(dim_ - 1, ridge)) {
                if (parent[static_cast<std::size_t>(c.index)] == -2) {
                    parent[static_cast<std::size_t>(c.index)] = current;
                    queue.push_back(c.index);
                }
            }
        }
    }
    return {};
}

LinkConnectivityReport SimplicialComplex::checkAllLinksConnected() const {
    LinkConnectivityReport report;
    for (int k = -1; k <= dim_ - 2; ++k) {
        for (const Simplex& tau : simplices(k)) {
            // Vertices of the link and adjacency through link edges.
            std::vector<VertexId> linkVertices;
            for (const Cofacet& c : cofacets(k, indexOf(tau))) {
                linkVertices.push_back(c.added);
            }
            std::sort(linkVertices.begin(), linkVertices.end());
            bool connected = !linkVertices.empty();
            if (connected) {
                std::set<VertexId> seen{linkVertices.front()};
                std::deque<VertexId> queue{linkVertices.front()};
                while (!queue.empty()) {
                    VertexId current = queue.front();
                    queue.pop_front();
                    Simplex extended = tau.joinVertex(current);
                    for (const Cofacet& c : cofacets(k + 1, indexOf(extended))) {
                        if (seen.insert(c.added).second) queue.push_back(c.added);
                    }
                }
                connected = (seen.size() == linkVertices.size());
            }
            report.entries.push_back(LinkConnectivityEntry{tau, connected});
            report.allConnected = report.allConnected && connected;
        }
    }
    return report;
}

std::optional<Partition> SimplicialComplex::detectPartition() const {
    GalleryConnectivity gallery = galleryConnectivity();
    if (!gallery.connected) {
        fail(ErrorCode::NotGalleryConnected,
             "facet graph has " + std::to_string(gallery.componentCount) +
                 " components; side propagation is ambiguous");
    }

    std::map<VertexId, int> sideOf;
    const Simplex& seed = simplex(dim_, 0);
    for (std::size_t i = 0; i < seed.cardinality(); ++i) {
        sideOf[seed.vertex(i)] = static_cast<int>(i);
    }

    // Walk the facet graph; across a shared ridge the two opposite vertices
    // must occupy the same side.
    std::vector<bool> visited(static_cast<std::size_t>(count(dim_)), false);
    visited[0] = true;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int current = queue.front();
        queue.pop_front();
        const Simplex& sigma = simplex(dim_, current);
        for (std::size_t drop = 0; drop < sigma.cardinality(); ++drop) {
            const int expectedSide = sideOf.at(sigma.vertex(drop));
            int ridge = indexOf(sigma.face(drop));
            for (const Cofacet& c : cofacets(dim_ - 1, ridge)) {
                auto it = sideOf.find(c.added);
                if (it == sideOf.end()) {
                    sideOf[c.added] = expectedSide;
                } else if (it->second != expectedSide) {
                    return std::nullopt;
                }
                if (!visited[static_cast<std::size_t>(c.index)]) {
                    visited[static_cast<std::size_t>(c.index)] = true;
                    queue.push_back(c.index);
                }
            }
        }
    }

    // Canonical labels: sides numbered by first appearance in vertex order.
    std::map<int, int> relabel;
    std::map<VertexId, int> canonical;
    for (VertexId v : vertexIds_) {
        int raw = sideOf.at(v);
        auto [it, inserted] = relabel.emplace(raw, static_cast<int>(relabel.size()));
        canonical[v] = it->second;
        (void)inserted;
    }
    Partition partition(canonical, dim_ + 1);
    if (!isValidPartition(partition)) return std::nullopt;
    return partition;
}

bool SimplicialComplex::isValidPartition(const Partition& p) const {
    for (VertexId v : vertexIds_) {
        if (!p.containsVertex(v)) return false;
    }
    std::vector<bool> seen(static_cast<std::size_t>(p.sideCount()));
    for (const Simplex& facet : facets()) {
        std::fill(seen.begin(), seen.end(), false);
        for (VertexId v : facet.vertices()) {
            int s = p.side(v);
            if (seen[static_cast<std::size_t>(s)]) return false;
            seen[static_cast<std::size_t>(s)] = true;
        }
    }
    return true;
}

Partition restrictPartition(const Partition& p, const SimplicialComplex& sub) {
    std::map<VertexId, int> sideOf;
    for (VertexId v : sub.vertexIds()) sideOf[v] = p.side(v);
    return Partition(sideOf, p.sideCount());
}

}  // namespace hdx
