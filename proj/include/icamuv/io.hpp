#pragma once

#include "icamuv/constraints.hpp"
#include "icamuv/enumeration.hpp"
#include "icamuv/instance_lab.hpp"
#include "icamuv/metrics.hpp"
#include "icamuv/oracle.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace icamuv::io {

using json = nlohmann::json;

inline constexpr std::string_view kFormatVersion = "1.0";

enum class DocumentKind { Instance, CamuvInput, EnumerationResult, Metrics, Constraints, OracleResult };

std::string_view to_string(DocumentKind kind);
DocumentKind parse_kind(std::string_view name);

/// Schema or version problem in a document.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Metrics plus the restricted splits written by `evaluate`.
struct MetricsDocument {
    VariableTable table;
    MetricsReport report;
    std::optional<EdgeScores> e_uno;      // pairs never co-observed
    std::optional<EdgeScores> observed;   // pairs co-observed in some dataset

    bool operator==(const MetricsDocument&) const;
};

struct OracleDocument {
    VariableTable table;
    oracle::OracleResult result;
};

// Payload codecs. `strict` rejects unknown fields.
json instance_to_json(const GroundTruthInstance& inst);
GroundTruthInstance instance_from_json(const json& payload, bool strict = true);

json input_to_json(const IntegrationInput& input);
IntegrationInput input_from_json(const json& payload, bool strict = true);

json result_to_json(const EnumerationResult& result);
EnumerationResult result_from_json(const json& payload, bool strict = true);

json metrics_to_json(const MetricsDocument& doc);
MetricsDocument metrics_from_json(const json& payload, bool strict = true);

/// Ids are written as integers; reading accepts ids or variable names.
json constraints_to_json(const ConstraintSet& c);
ConstraintSet constraints_from_json(const json& payload, const VariableTable& table, bool strict = true);

json oracle_to_json(const OracleDocument& doc);
OracleDocument oracle_from_json(const json& payload, bool strict = true);

json solution_edges(const Dag& dag);

/// Envelope {format_version, kind, payload}.
json wrap(DocumentKind kind, json payload);
/// Checks version and kind and returns the payload.
json unwrap(const json& document, DocumentKind expected, bool strict = true);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical(const json& document);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

json read_document(const std::filesystem::path& path, DocumentKind expected, bool strict = true);
void write_document(const std::filesystem::path& path, DocumentKind kind, json payload);

} // namespace icamuv::io
