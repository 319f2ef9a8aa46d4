#include "dgeo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace dgeo {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    return out;
}

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
    return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::io_error, "bad number '" + s + "' in " + path.string());
    }
}

long long parse_int(const std::string& s, const std::filesystem::path& path) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::io_error, "bad integer '" + s + "' in " + path.string());
    }
}

}  // namespace

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_edge_tsv(const std::filesystem::path& path, const Graph& g) {
    auto out = open_out(path);
    out << "# n " << g.vertex_count() << "\n";
    for (const Edge& e : g.edges())
        out << e.src << '\t' << e.dst << '\t' << fmt_double(e.weight) << '\n';
}

EdgeList read_edge_tsv(const std::filesystem::path& path) {
    auto in = open_in(path);
    EdgeList list;
    std::string line;
    VertexId max_id = -1;
    while (std::getline(in, line)) {
        if (is_comment_or_blank(line)) {
            std::istringstream hdr(line);
            std::string hash, key;
            long long value = 0;
            if (hdr >> hash >> key >> value && hash == "#" && key == "n")
                list.n = static_cast<VertexId>(value);
            continue;
        }
        auto fields = split(line, '\t');
        if (fields.size() != 3)
            fail(ErrorCode::io_error, "expected src<TAB>dst<TAB>weight in " + path.string());
        Edge e;
        e.src = static_cast<VertexId>(parse_int(fields[0], path));
        e.dst = static_cast<VertexId>(parse_int(fields[1], path));
        e.weight = parse_double(fields[2], path);
        max_id = std::max({max_id, e.src, e.dst});
        list.edges.push_back(e);
    }
    if (list.n == 0) list.n = max_id + 1;
    return list;
}

void write_vertex_list(const std::filesystem::path& path, std::span<const VertexId> vertices) {
    auto out = open_out(path);
    for (VertexId v : vertices) out << v << '\n';
}

std::vector<VertexId> read_vertex_list(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<VertexId> out;
    std::string line;
    while (std::getline(in, line)) {
        if (is_comment_or_blank(line)) continue;
        out.push_back(static_cast<VertexId>(parse_int(line, path)));
    }
    return out;
}

void write_points_csv(const std::filesystem::path& path, std::span<const Point2> points) {
    auto out = open_out(path);
    out << "x,y\n";
    for (const Point2& p : points) out << fmt_double(p.x) << ',' << fmt_double(p.y) << '\n';
}

std::vector<Point2> read_points_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<Point2> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (is_comment_or_blank(line)) continue;
        if (first && line.find_first_not_of("xy, \r") == std::string::npos) {
            first = false;
            continue;  // header
        }
        first = false;
        auto fields = split(line, ',');
        if (fields.size() != 2) fail(ErrorCode::io_error, "expected x,y in " + path.string());
        out.push_back({parse_double(fields[0], path), parse_double(fields[1], path)});
    }
    return out;
}

void write_vertex_csv(const std::filesystem::path& path, const std::string& column,
                      const Vector& values) {
    auto out = open_out(path);
    out << "vertex," << column << '\n';
    for (std::size_t i = 0; i < values.size(); ++i)
        out << i << ',' << fmt_double(values[i]) << '\n';
}

Vector read_vertex_csv(const std::filesystem::path& path, VertexId expected_n) {
    auto in = open_in(path);
    Vector values(static_cast<std::size_t>(expected_n),
                  std::numeric_limits<double>::quiet_NaN());
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (is_comment_or_blank(line)) continue;
        if (first) {
            first = false;
            if (line.rfind("vertex,", 0) == 0) continue;
        }
        auto fields = split(line, ',');
        if (fields.size() < 2) fail(ErrorCode::io_error, "expected vertex,value in " + path.string());
        auto v = parse_int(fields[0], path);
        if (v < 0 || v >= expected_n)
            fail(ErrorCode::io_error, "vertex " + fields[0] + " out of range in " + path.string());
        values[static_cast<std::size_t>(v)] = parse_double(fields[1], path);
    }
    for (double x : values)
        if (std::isnan(x)) fail(ErrorCode::io_error, "missing vertex rows in " + path.string());
    return values;
}

void write_field_csv(const std::filesystem::path& path, const DiffusionField& field) {
    auto out = open_out(path);
    out << "vertex,d,capped\n";
    for (std::size_t i = 0; i < field.distance.size(); ++i)
        out << i << ',' << field.distance[i] << ',' << int(field.capped[i]) << '\n';
}

void write_field_csv(const std::filesystem::path& path, const McDiffusionField& mc) {
    auto out = open_out(path);
    out << "vertex,d,capped,ci_lo,ci_hi\n";
    for (std::size_t i = 0; i < mc.field.distance.size(); ++i)
        out << i << ',' << mc.field.distance[i] << ',' << int(mc.field.capped[i]) << ','
            << fmt_double(mc.ci_lo[i]) << ',' << fmt_double(mc.ci_hi[i]) << '\n';
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["schema"] = 1;
    j["n"] = g.vertex_count();
    j["row_offsets"] = g.row_offsets();
    j["col_indices"] = g.col_indices();
    j["weights"] = g.edge_weights();
    j["absorbing"] = g.absorbing();
    return j;
}

Graph graph_from_json(const nlohmann::json& j) {
    const auto n = j.at("n").get<VertexId>();
    const auto offsets = j.at("row_offsets").get<std::vector<std::int64_t>>();
    const auto cols = j.at("col_indices").get<std::vector<VertexId>>();
    const auto weights = j.at("weights").get<std::vector<double>>();
    const auto absorbing = j.at("absorbing").get<std::vector<VertexId>>();
    if (offsets.size() != static_cast<std::size_t>(n) + 1 || cols.size() != weights.size())
        fail(ErrorCode::io_error, "inconsistent graph JSON");
    std::vector<Edge> edges;
    edges.reserve(cols.size());
    for (VertexId v = 0; v < n; ++v)
        for (std::int64_t i = offsets[static_cast<std::size_t>(v)];
             i < offsets[static_cast<std::size_t>(v) + 1]; ++i)
            edges.push_back({v, cols[static_cast<std::size_t>(i)], weights[static_cast<std::size_t>(i)]});
    return Graph::build(n, edges, absorbing);
}

namespace {

nlohmann::json json_number(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;  // +-inf encodes as null in reports
}

}  // namespace

nlohmann::json bound_report_to_json(const BoundReport& report) {
    nlohmann::json j;
    j["schema"] = 1;
    j["theorem"] = bound_kind_tag(report.kind);
    j["inputs"] = {
        {report.kind == BoundKind::potential ? "potential_sup_norm" : "lambda", report.rate_value},
        {"eps", report.eps},
        {"p", report.p},
        {"target_size", report.target.size()},
        {"target", report.target},
    };
    j["aggregate"] = {
        {"min_slack", json_number(report.min_slack)},
        {"argmin_vertex", report.argmin_vertex},
        {"fraction_holding", report.fraction_holding},
        {"trivial_rows", report.trivial_rows},
        {"inconclusive_rows", report.inconclusive_rows},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const BoundRow& row : report.rows) {
        rows.push_back({
            {"vertex", row.vertex},
            {"lhs", json_number(row.lhs)},
            {"rhs", json_number(row.rhs)},
            {"slack", json_number(row.slack)},
            {"holds", row.holds},
            {"status", row.status == RowStatus::ok       ? "ok"
                       : row.status == RowStatus::trivial ? "trivial"
                                                          : "inconclusive"},
        });
    }
    j["rows"] = std::move(rows);
    return j;
}

void write_bound_rows_csv(const std::filesystem::path& path, const BoundReport& report) {
    auto out = open_out(path);
    out << "vertex,lhs,rhs,slack,holds,status\n";
    for (const BoundRow& row : report.rows) {
        out << row.vertex << ',' << fmt_double(row.lhs) << ',' << fmt_double(row.rhs) << ','
            << fmt_double(row.slack) << ',' << int(row.holds) << ','
            << (row.status == RowStatus::ok       ? "ok"
                : row.status == RowStatus::trivial ? "trivial"
                                                   : "inconclusive")
            << '\n';
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace dgeo
