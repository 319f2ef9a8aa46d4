#include "dgeo/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>

#include "dgeo/generators.hpp"
#include "dgeo/io.hpp"

namespace dgeo {

Embedding spectral_embedding(const Graph& g, int dims, double tol, std::int64_t max_iters,
                             int threads) {
    if (dims < 1) fail(ErrorCode::invalid_argument, "dims must be >= 1");
    if (g.has_absorbing())
        fail(ErrorCode::invalid_argument, "spectral_embedding needs a graph without sinks");
    if (!check_reachability(g)) fail(ErrorCode::not_irreducible, "graph is not strongly connected");

    const Vector pi = stationary_distribution(g, std::min(tol, 1e-12), max_iters);
    Embedding emb;
    emb.dims = dims;
    for (int k = 0; k < dims; ++k) {
        EigenPair pair = next_deflated_eigenpair(g, pi, emb.coords, tol, max_iters, threads);
        emb.eigenvalues.push_back(pair.lambda);
        emb.coords.push_back(std::move(pair.u));
    }
    return emb;
}

std::vector<int> sign_classifier(const Vector& u) {
    std::vector<int> labels(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) labels[i] = u[i] > 0.0 ? 1 : (u[i] < 0.0 ? -1 : 0);
    return labels;
}

namespace {

double pearson_impl(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (n != b.size()) fail(ErrorCode::dimension_mismatch, "correlation inputs differ in length");
    if (n < 2) fail(ErrorCode::degenerate_input, "correlation needs at least 2 samples");
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) fail(ErrorCode::degenerate_input, "zero variance input");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    return pearson_impl(a, b);
}

double pearson_correlation(std::span<const double> a, std::span<const double> b,
                           std::span<const VertexId> restrict_to) {
    std::vector<double> ra, rb;
    ra.reserve(restrict_to.size());
    rb.reserve(restrict_to.size());
    for (VertexId v : restrict_to) {
        if (v < 0 || static_cast<std::size_t>(v) >= a.size())
            fail(ErrorCode::index_out_of_range, "restriction vertex " + std::to_string(v));
        ra.push_back(a[static_cast<std::size_t>(v)]);
        rb.push_back(b[static_cast<std::size_t>(v)]);
    }
    return pearson_impl(ra, rb);
}

MeanFirstHit mean_first_hit(const Graph& g, std::span<const VertexId> target, std::int64_t kmax,
                            int threads) {
    if (kmax < 1) fail(ErrorCode::invalid_argument, "kmax must be >= 1");
    const auto canonical = canonical_target(g, target);
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::uint8_t> mask(n, 0);
    for (VertexId v : canonical) mask[static_cast<std::size_t>(v)] = 1;

    MeanFirstHit out;
    out.mean.assign(n, 0.0);
    out.truncated.assign(n, 0);

    Vector h(n, 0.0);
    for (VertexId v : canonical) h[static_cast<std::size_t>(v)] = 1.0;
    Vector next(n, 0.0);

    // E[T] = sum_{k>=0} (1 - h_k); stop once surviving mass is negligible.
    constexpr double kNegligible = 1e-20;
    bool exhausted = true;
    for (std::int64_t k = 0; k < kmax; ++k) {
        double max_survival = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double survival = 1.0 - h[i];
            out.mean[i] += survival;
            max_survival = std::max(max_survival, survival);
        }
        if (max_survival < kNegligible) {
            exhausted = false;
            break;
        }
        hitting_step(g, mask, h, next, threads);
        std::swap(h, next);
    }
    if (exhausted)
        for (std::size_t i = 0; i < n; ++i)
            if (1.0 - h[i] > 1e-15) out.truncated[i] = 1;
    return out;
}

// ---------------------------------------------------------------------------
// Experiment presets
// ---------------------------------------------------------------------------

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Vector abs_values(const Vector& u) {
    Vector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::abs(u[i]);
    return out;
}

Vector distances_as_double(const DiffusionField& field) {
    Vector out(field.distance.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(field.distance[i]);
    return out;
}

// Vertices whose distance is at least the median: the part of the domain
// where the distance field is large and correlation is meaningful.
std::vector<VertexId> top_half_by_distance(const DiffusionField& field) {
    std::vector<std::int64_t> sorted(field.distance.begin(), field.distance.end());
    std::sort(sorted.begin(), sorted.end());
    const std::int64_t median = sorted[sorted.size() / 2];
    std::vector<VertexId> keep;
    for (std::size_t i = 0; i < field.distance.size(); ++i)
        if (field.distance[i] >= median) keep.push_back(static_cast<VertexId>(i));
    return keep;
}

void maybe_write(const ExperimentConfig& config, const std::string& name,
                 const std::function<void(const std::filesystem::path&)>& writer) {
    if (config.out_dir.empty()) return;
    writer(config.out_dir / name);
}

nlohmann::json run_fig1(const ExperimentConfig& config) {
    Graph g = gen_path(10);
    const VertexId target[] = {0, 9};
    DiffusionField field = diffusion_distance(g, target, 0.5, default_kmax(g), config.threads);
    bool any_capped = std::any_of(field.capped.begin(), field.capped.end(),
                                  [](std::uint8_t c) { return c != 0; });
    maybe_write(config, "distance.csv",
                [&](const std::filesystem::path& p) { write_field_csv(p, field); });
    maybe_write(config, "edges.tsv",
                [&](const std::filesystem::path& p) { write_edge_tsv(p, g); });
    return {
        {"family", "path"},
        {"n", 10},
        {"target", {0, 9}},
        {"p", 0.5},
        {"distances", field.distance},
        {"any_capped", any_capped},
    };
}

nlohmann::json run_small_world(const ExperimentConfig& config, double extra_edges) {
    const VertexId n = 128;
    const VertexId n_boundary = 8;
    Graph g = gen_small_world_ring(n, n_boundary, extra_edges, config.seed);
    EigenPair pair = absorbing_dominant_eigenpair(g, kDefaultEigTol, kDefaultEigMaxIters,
                                                  config.threads);
    DiffusionField field =
        diffusion_distance(g, g.absorbing(), 0.5, default_kmax(g), config.threads);
    BoundReport report = check_boundary_bound(g, pair, default_kmax(g), config.threads);

    const Vector u_abs = abs_values(pair.u);
    const Vector d = distances_as_double(field);
    std::vector<VertexId> interior;
    for (VertexId v = 0; v < n; ++v)
        if (!g.is_absorbing(v)) interior.push_back(v);

    std::int64_t max_distance = 0;
    VertexId argmax_u = 0;
    for (VertexId v = 0; v < n; ++v) {
        max_distance = std::max(max_distance, field.distance[static_cast<std::size_t>(v)]);
        if (u_abs[static_cast<std::size_t>(v)] > u_abs[static_cast<std::size_t>(argmax_u)])
            argmax_u = v;
    }
    const double rate = -std::log1p(-pair.lambda);
    const double bound_at_max = std::log(2.0) / rate;

    maybe_write(config, "eigenvector.csv",
                [&](const std::filesystem::path& p) { write_vertex_csv(p, "u", pair.u); });
    maybe_write(config, "distance.csv",
                [&](const std::filesystem::path& p) { write_field_csv(p, field); });
    maybe_write(config, "bound_report.json", [&](const std::filesystem::path& p) {
        write_text_file(p, bound_report_to_json(report).dump(2) + "\n");
    });
    maybe_write(config, "bound_rows.csv",
                [&](const std::filesystem::path& p) { write_bound_rows_csv(p, report); });
    maybe_write(config, "edges.tsv",
                [&](const std::filesystem::path& p) { write_edge_tsv(p, g); });
    maybe_write(config, "absorbing.txt",
                [&](const std::filesystem::path& p) { write_vertex_list(p, g.absorbing()); });

    return {
        {"family", "small_world_ring"},
        {"n", n},
        {"n_boundary", n_boundary},
        {"expected_extra_edges", extra_edges},
        {"lambda", pair.lambda},
        {"residual", pair.residual},
        {"iterations", pair.iterations},
        {"max_distance", max_distance},
        {"argmax_u", argmax_u},
        {"distance_at_argmax_u", field.distance[static_cast<std::size_t>(argmax_u)]},
        {"bound_at_argmax_u", bound_at_max},
        {"correlation_global", pearson_correlation(u_abs, d)},
        {"correlation_interior", pearson_correlation(u_abs, d, interior)},
        {"correlation_top_half", pearson_correlation(u_abs, d, top_half_by_distance(field))},
        {"fraction_holding", report.fraction_holding},
        {"min_slack", report.min_slack},
        {"inconclusive_rows", report.inconclusive_rows},
    };
}

nlohmann::json run_dumbbell(const ExperimentConfig& config) {
    const int points = 1000;
    const int k = 10;
    auto cloud = dumbbell_point_cloud(points, config.seed);
    Graph g = gen_knn_point_cloud(cloud, k);
    EigenPair pair =
        first_nontrivial_eigenpair(g, kDefaultEigTol, kDefaultEigMaxIters, config.threads);
    BoundReport report =
        check_sublevel_bound(g, pair, std::nullopt, default_kmax(g), config.threads);
    DiffusionField field =
        diffusion_distance(g, report.target, 0.5, default_kmax(g), config.threads);

    const Vector u_abs = abs_values(pair.u);
    const Vector d = distances_as_double(field);
    VertexId argmax_u = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (u_abs[static_cast<std::size_t>(v)] > u_abs[static_cast<std::size_t>(argmax_u)])
            argmax_u = v;
    const double rate = -std::log(std::abs(1.0 - pair.lambda));
    const double region_threshold = std::log(2.0) / rate;
    const bool argmax_in_region =
        static_cast<double>(field.distance[static_cast<std::size_t>(argmax_u)]) >=
        region_threshold;

    maybe_write(config, "points.csv",
                [&](const std::filesystem::path& p) { write_points_csv(p, cloud); });
    maybe_write(config, "eigenvector.csv",
                [&](const std::filesystem::path& p) { write_vertex_csv(p, "u", pair.u); });
    maybe_write(config, "distance.csv",
                [&](const std::filesystem::path& p) { write_field_csv(p, field); });
    maybe_write(config, "bound_report.json", [&](const std::filesystem::path& p) {
        write_text_file(p, bound_report_to_json(report).dump(2) + "\n");
    });

    return {
        {"family", "knn_point_cloud"},
        {"points", points},
        {"k", k},
        {"lambda", pair.lambda},
        {"residual", pair.residual},
        {"iterations", pair.iterations},
        {"eps_auto", report.eps},
        {"target_size", report.target.size()},
        {"correlation_global", pearson_correlation(u_abs, d)},
        {"correlation_top_half", pearson_correlation(u_abs, d, top_half_by_distance(field))},
        {"region_threshold", region_threshold},
        {"argmax_u", argmax_u},
        {"distance_at_argmax_u", field.distance[static_cast<std::size_t>(argmax_u)]},
        {"argmax_in_region", argmax_in_region},
        {"fraction_holding", report.fraction_holding},
        {"inconclusive_rows", report.inconclusive_rows},
    };
}

nlohmann::json sharpness_table(Family family, std::span<const double> params) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SharpnessRow& row : sharpness_sweep(family, params)) {
        rows.push_back({
            {"parameter", row.parameter},
            {"lambda", row.lambda},
            {"distance", row.distance},
            {"product", row.product},
            {"ratio_to_log2", row.ratio_to_log2},
        });
    }
    return rows;
}

nlohmann::json run_kn_sharpness(const ExperimentConfig& config) {
    const double sizes[] = {10, 100, 1000, 10000};
    const double eps_values[] = {0.2, 0.05, 0.01, 0.002};
    nlohmann::json results = {
        {"complete_absorbing", sharpness_table(Family::complete_absorbing, sizes)},
        {"cycle_plus_boundary", sharpness_table(Family::cycle_plus_boundary, eps_values)},
    };
    maybe_write(config, "sharpness.csv", [&](const std::filesystem::path& p) {
        std::string csv = "family,parameter,lambda,distance,product,ratio_to_log2\n";
        for (const char* fam : {"complete_absorbing", "cycle_plus_boundary"}) {
            for (const auto& row : results[fam]) {
                csv += std::string(fam) + "," + fmt_double(row["parameter"].get<double>()) + "," +
                       fmt_double(row["lambda"].get<double>()) + "," +
                       std::to_string(row["distance"].get<std::int64_t>()) + "," +
                       fmt_double(row["product"].get<double>()) + "," +
                       fmt_double(row["ratio_to_log2"].get<double>()) + "\n";
            }
        }
        write_text_file(p, csv);
    });
    return results;
}

}  // namespace

nlohmann::json run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    nlohmann::json report;
    report["schema"] = 1;
    report["preset"] = config.preset;
    report["config"] = {{"preset", config.preset}, {"seed", config.seed}};

    try {
        if (config.preset == "fig1")
            report["results"] = run_fig1(config);
        else if (config.preset == "sw-sparse")
            report["results"] = run_small_world(config, 64.0);
        else if (config.preset == "sw-dense")
            report["results"] = run_small_world(config, 512.0);
        else if (config.preset == "dumbbell")
            report["results"] = run_dumbbell(config);
        else if (config.preset == "kn-sharpness")
            report["results"] = run_kn_sharpness(config);
        else
            fail(ErrorCode::invalid_argument, "unknown preset '" + config.preset + "'");
    } catch (const Error& e) {
        report["failed"] = true;
        report["error"] = e.what();
        report["error_code"] = error_code_name(e.code());
    }

    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["runtime"] = {
        {"generated_at", utc_timestamp()},
        {"elapsed_ms", std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()},
        {"threads", config.threads},
    };
    if (!config.out_dir.empty())
        write_text_file(config.out_dir / "report.json", report.dump(2) + "\n");
    return report;
}

}  // namespace dgeo
