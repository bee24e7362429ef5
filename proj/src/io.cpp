#include "hdx/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "hdx/errors.hpp"

namespace hdx {

double roundNumber(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string formatNumber(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

ComplexDocument ComplexDocument::fromComplex(SimplicialComplex x,
                                             std::optional<std::vector<double>> facetWeights,
                                             std::optional<Partition> partition,
                                             nlohmann::ordered_json metadata) {
    ComplexDocument doc{std::move(x), WeightFunction{}, std::move(facetWeights),
                        std::move(partition), std::move(metadata)};
    doc.weight = doc.facetWeights
                     ? WeightFunction::extendTopWeights(doc.complex, *doc.facetWeights)
                     : WeightFunction::homogeneous(doc.complex);
    return doc;
}

ComplexDocument parseComplexDocument(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::ParseFailure, e.what());
    }
    if (!j.is_object()) fail(ErrorCode::ValidationFailure, "the document must be an object");
    static const std::set<std::string> known = {"format", "facets", "facet_weights",
                                                "partition", "metadata"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (known.find(key) == known.end())
            fail(ErrorCode::ValidationFailure, "unknown field \"" + key + "\"");
    }
    if (!j.contains("format") || !j["format"].is_number_integer() ||
        j["format"].get<int>() != 1)
        fail(ErrorCode::ValidationFailure, "\"format\" must be the integer 1");
    if (!j.contains("facets") || !j["facets"].is_array() || j["facets"].empty())
        fail(ErrorCode::ValidationFailure, "\"facets\" must be a non-empty array");

    std::vector<std::vector<VertexId>> facets;
    for (const auto& row : j["facets"]) {
        if (!row.is_array() || row.empty())
            fail(ErrorCode::ValidationFailure, "every facet must be a non-empty array");
        std::vector<VertexId> facet;
        for (const auto& v : row) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                fail(ErrorCode::ValidationFailure,
                     "vertex ids must be non-negative integers");
            facet.push_back(static_cast<VertexId>(v.get<long long>()));
        }
        facets.push_back(std::move(facet));
    }
    {
        std::set<Simplex> seen;
        for (const auto& f : facets)
            if (!seen.insert(Simplex(f)).second)
                fail(ErrorCode::ValidationFailure,
                     "duplicate facet " + Simplex(f).toString());
    }
    SimplicialComplex x = SimplicialComplex::buildFromFacets(facets);

    std::optional<std::vector<double>> facetWeights;
    if (j.contains("facet_weights")) {
        const auto& arr = j["facet_weights"];
        if (!arr.is_array() || arr.size() != facets.size())
            fail(ErrorCode::ValidationFailure,
                 "\"facet_weights\" must be an array aligned with \"facets\"");
        // realign from input order to the canonical facet order
        std::vector<double> aligned(facets.size(), 0.0);
        for (size_t i = 0; i < facets.size(); ++i) {
            if (!arr[i].is_number())
                fail(ErrorCode::ValidationFailure, "facet weights must be numbers");
            const double w = roundNumber(arr[i].get<double>());
            const int idx = x.indexOf(Simplex(facets[i]));
            aligned[static_cast<size_t>(idx)] = w;
        }
        facetWeights = std::move(aligned);
    }

    std::optional<Partition> partition;
    if (j.contains("partition")) {
        const auto& obj = j["partition"];
        if (!obj.is_object())
            fail(ErrorCode::ValidationFailure,
                 "\"partition\" must map vertex ids (string keys) to sides");
        std::map<VertexId, int> sideOf;
        int maxSide = -1;
        for (const auto& [key, value] : obj.items()) {
            char* end = nullptr;
            const long v = std::strtol(key.c_str(), &end, 10);
            if (end == key.c_str() || *end != '\0' || v < 0)
                fail(ErrorCode::ValidationFailure,
                     "partition keys must be non-negative vertex ids");
            if (!value.is_number_integer() || value.get<int>() < 0)
                fail(ErrorCode::ValidationFailure,
                     "partition sides must be non-negative integers");
            sideOf[static_cast<VertexId>(v)] = value.get<int>();
            maxSide = std::max(maxSide, value.get<int>());
        }
        Partition p(sideOf, maxSide + 1);
        if (!x.isValidPartition(p))
            fail(ErrorCode::ValidationFailure,
                 "the partition does not color every facet with one vertex per side");
        partition = std::move(p);
    }

    nlohmann::ordered_json metadata = nullptr;
    if (j.contains("metadata")) metadata = j["metadata"];

    return ComplexDocument::fromComplex(std::move(x), std::move(facetWeights),
                                        std::move(partition), std::move(metadata));
}

std::string serializeComplexDocument(const ComplexDocument& doc) {
    nlohmann::ordered_json j;
    j["format"] = 1;
    nlohmann::ordered_json facets = nlohmann::ordered_json::array();
    for (const auto& f : doc.complex.facets()) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (VertexId v : f.vertices()) row.push_back(v);
        facets.push_back(std::move(row));
    }
    j["facets"] = std::move(facets);
    if (doc.facetWeights) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (double w : *doc.facetWeights) arr.push_back(roundNumber(w));
        j["facet_weights"] = std::move(arr);
    }
    if (doc.partition) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [v, side] : doc.partition->sideOf())
            obj[std::to_string(v)] = side;
        j["partition"] = std::move(obj);
    }
    if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
    return j.dump(2) + "\n";
}

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) fail(ErrorCode::IoFailure, "cannot read " + path);
    return buffer.str();
}

void writeTextFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoFailure, "cannot open " + path + " for writing");
    out << content;
    if (!out) fail(ErrorCode::IoFailure, "cannot write " + path);
}

}  // namespace hdx
