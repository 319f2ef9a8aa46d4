#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dgeo/bounds.hpp"
#include "dgeo/diffusion.hpp"
#include "dgeo/generators.hpp"
#include "dgeo/graph.hpp"
#include "dgeo/spectral.hpp"

namespace dgeo {

// Round-trip-exact decimal formatting for CSV output.
std::string fmt_double(double x);

// Edge-list TSV: `src<TAB>dst<TAB>weight`, `#` comments. Exports carry a
// `# n <count>` header so isolated trailing vertices survive a round trip;
// on ingestion the count falls back to max id + 1.
void write_edge_tsv(const std::filesystem::path& path, const Graph& g);
struct EdgeList {
    VertexId n = 0;
    std::vector<Edge> edges;
};
EdgeList read_edge_tsv(const std::filesystem::path& path);

// One vertex id per line, `#` comments.
void write_vertex_list(const std::filesystem::path& path, std::span<const VertexId> vertices);
std::vector<VertexId> read_vertex_list(const std::filesystem::path& path);

// Point clouds as CSV `x,y` (optional header line).
void write_points_csv(const std::filesystem::path& path, std::span<const Point2> points);
std::vector<Point2> read_points_csv(const std::filesystem::path& path);

// Per-vertex values as CSV `vertex,<name>`.
void write_vertex_csv(const std::filesystem::path& path, const std::string& column,
                      const Vector& values);
Vector read_vertex_csv(const std::filesystem::path& path, VertexId expected_n);

void write_field_csv(const std::filesystem::path& path, const DiffusionField& field);
void write_field_csv(const std::filesystem::path& path, const McDiffusionField& field);

// Canonical JSON dump of a Graph; parse rebuilds it bit-exactly.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

nlohmann::json bound_report_to_json(const BoundReport& report);
void write_bound_rows_csv(const std::filesystem::path& path, const BoundReport& report);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace dgeo
