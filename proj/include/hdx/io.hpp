#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdx/weights.hpp"

namespace hdx {

/** Nearest double whose shortest decimal form has at most 12 digits. */
double roundNumber(double v);

/** Fixed 12-significant-digit rendering used by every text report. */
std::string formatNumber(double v);

/**
 * A complex together with its weight, optional coloring, and free-form
 * metadata.  Facet weights, when present, are aligned with the canonical
 * facet order of the complex.
 */
struct ComplexDocument {
    SimplicialComplex complex;
    WeightFunction weight;
    std::optional<std::vector<double>> facetWeights;
    std::optional<Partition> partition;
    nlohmann::ordered_json metadata;  // null when absent

    static ComplexDocument fromComplex(SimplicialComplex x,
                                       std::optional<std::vector<double>> facetWeights,
                                       std::optional<Partition> partition,
                                       nlohmann::ordered_json metadata = nullptr);
};

/**
 * Parses the on-disk format: an object holding "format" (always 1), "facets"
 * (non-empty array of vertex-id arrays), and optionally "facet_weights"
 * (positive numbers aligned with "facets"), "partition" (vertex id, as a
 * string key, to side), and "metadata" (kept verbatim).  Unknown fields are
 * rejected.
 *
 * @throws Error{ParseFailure} on malformed JSON, Error{ValidationFailure} on
 *         any schema violation, and whatever the complex build throws.
 */
ComplexDocument parseComplexDocument(const std::string& text);

/**
 * Canonical serialization: facets in canonical order, numbers rounded to 12
 * significant digits, two-space indentation, trailing newline.  Serializing
 * a parsed document reproduces the bytes exactly.
 */
std::string serializeComplexDocument(const ComplexDocument& doc);

/** @throws Error{IoFailure} when the file cannot be read. */
std::string readTextFile(const std::string& path);

/** @throws Error{IoFailure} when the file cannot be written. */
void writeTextFile(const std::string& path, const std::string& content);

}  // namespace hdx
