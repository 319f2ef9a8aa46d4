#include "dgeo/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgeo/rng.hpp"

namespace dgeo {

Family family_from_name(const std::string& name) {
    if (name == "path") return Family::path;
    if (name == "cycle") return Family::cycle;
    if (name == "complete_absorbing") return Family::complete_absorbing;
    if (name == "cycle_plus_boundary") return Family::cycle_plus_boundary;
    if (name == "two_complete_bridge") return Family::two_complete_bridge;
    if (name == "small_world_ring") return Family::small_world_ring;
    if (name == "knn_point_cloud") return Family::knn_point_cloud;
    fail(ErrorCode::unsupported_family, name);
}

const char* family_name(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::complete_absorbing: return "complete_absorbing";
        case Family::cycle_plus_boundary: return "cycle_plus_boundary";
        case Family::two_complete_bridge: return "two_complete_bridge";
        case Family::small_world_ring: return "small_world_ring";
        case Family::knn_point_cloud: return "knn_point_cloud";
    }
    return "?";
}

Graph gen_path(VertexId n) {
    if (n < 3) fail(ErrorCode::size_too_small, "path needs n >= 3");
    std::vector<Edge> edges;
    edges.reserve(2 * static_cast<std::size_t>(n) - 2);
    edges.push_back({0, 1, 1.0});
    for (VertexId v = 1; v + 1 < n; ++v) {
        edges.push_back({v, static_cast<VertexId>(v - 1), 0.5});
        edges.push_back({v, static_cast<VertexId>(v + 1), 0.5});
    }
    edges.push_back({static_cast<VertexId>(n - 1), static_cast<VertexId>(n - 2), 1.0});
    return Graph::build(n, edges);
}

Graph gen_cycle(VertexId n) {
    if (n < 3) fail(ErrorCode::size_too_small, "cycle needs n >= 3");
    std::vector<Edge> edges;
    edges.reserve(2 * static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) {
        edges.push_back({v, static_cast<VertexId>((v + 1) % n), 0.5});
        edges.push_back({v, static_cast<VertexId>((v + n - 1) % n), 0.5});
    }
    return Graph::build(n, edges);
}

Graph gen_complete_absorbing(VertexId n) {
    if (n < 2) fail(ErrorCode::size_too_small, "complete_absorbing needs n >= 2");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    const double w = 1.0 / static_cast<double>(n);
    for (VertexId v = 0; v + 1 < n; ++v)
        for (VertexId u = 0; u < n; ++u) edges.push_back({v, u, w});
    const VertexId sink[] = {static_cast<VertexId>(n - 1)};
    return Graph::build(n, edges, sink);
}

Graph gen_cycle_plus_boundary(VertexId n, double eps) {
    if (n < 3) fail(ErrorCode::size_too_small, "cycle_plus_boundary needs n >= 3");
    if (!(eps > 0.0) || !(eps < 1.0)) fail(ErrorCode::bad_epsilon, std::to_string(eps));
    std::vector<Edge> edges;
    edges.reserve(3 * static_cast<std::size_t>(n));
    const double side = (1.0 - eps) / 2.0;
    for (VertexId v = 0; v < n; ++v) {
        edges.push_back({v, static_cast<VertexId>((v + 1) % n), side});
        edges.push_back({v, static_cast<VertexId>((v + n - 1) % n), side});
        edges.push_back({v, n, eps});
    }
    const VertexId sink[] = {n};
    return Graph::build(n + 1, edges, sink);
}

Graph gen_two_complete_bridge(VertexId n) {
    if (n < 2) fail(ErrorCode::size_too_small, "two_complete_bridge needs n >= 2");
    const VertexId bridge = 2 * n;
    std::vector<Edge> edges;
    for (VertexId block = 0; block < 2; ++block) {
        const VertexId base = block * n;
        for (VertexId i = 0; i < n; ++i) {
            for (VertexId j = 0; j < n; ++j)
                edges.push_back({static_cast<VertexId>(base + i), static_cast<VertexId>(base + j), 1.0});
            edges.push_back({static_cast<VertexId>(base + i), bridge, 1.0});
            edges.push_back({bridge, static_cast<VertexId>(base + i), 1.0});
        }
    }
    return Graph::build(2 * n + 1, edges);
}

Graph gen_small_world_ring(VertexId n, VertexId n_boundary, double expected_extra_edges,
                           std::uint64_t seed) {
    if (n < 8) fail(ErrorCode::size_too_small, "small_world_ring needs n >= 8");
    if (n_boundary <= 0 || n_boundary >= n)
        fail(ErrorCode::bad_boundary_count, std::to_string(n_boundary));
    if (expected_extra_edges < 0.0)
        fail(ErrorCode::invalid_argument, "expected_extra_edges must be >= 0");

    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    const double q = expected_extra_edges / pairs;

    std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(n));
    auto connect = [&](VertexId a, VertexId b) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    };
    for (VertexId v = 0; v < n; ++v) connect(v, (v + 1) % n);

    // Fixed pair order (i < j) so the same seed always yields the same graph.
    SplitMix64 edge_rng(derive_stream(seed, 0x01));
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId j = i + 1; j < n; ++j) {
            bool draw = edge_rng.uniform() < q;
            if (!draw) continue;
            bool ring_pair = (j == i + 1) || (i == 0 && j == n - 1);
            if (ring_pair) continue;  // already adjacent
            connect(i, j);
        }
    }

    // Boundary: uniform sample without replacement.
    SplitMix64 boundary_rng(derive_stream(seed, 0x02));
    std::vector<VertexId> ids(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) ids[static_cast<std::size_t>(v)] = v;
    for (VertexId k = 0; k < n_boundary; ++k) {
        std::uint64_t pick = k + boundary_rng.below(static_cast<std::uint64_t>(n - k));
        std::swap(ids[k], ids[pick]);
    }
    std::vector<VertexId> boundary(ids.begin(), ids.begin() + n_boundary);
    std::sort(boundary.begin(), boundary.end());

    std::vector<Edge> edges;
    for (VertexId v = 0; v < n; ++v) {
        auto& row = adj[static_cast<std::size_t>(v)];
        std::sort(row.begin(), row.end());
        const double w = 1.0 / static_cast<double>(row.size());
        for (VertexId u : row) edges.push_back({v, u, w});
    }
    return Graph::build(n, edges, boundary);
}

Graph gen_knn_point_cloud(std::span<const Point2> points, int k) {
    const auto count = static_cast<std::int64_t>(points.size());
    if (k < 1 || count <= k) fail(ErrorCode::too_few_points, "need more points than neighbors, k >= 1");

    std::vector<std::vector<VertexId>> out_neighbors(points.size());
    std::vector<std::pair<double, VertexId>> dist;
    for (std::int64_t i = 0; i < count; ++i) {
        dist.clear();
        for (std::int64_t j = 0; j < count; ++j) {
            if (j == i) continue;
            const double dx = points[i].x - points[j].x;
            const double dy = points[i].y - points[j].y;
            const double d2 = dx * dx + dy * dy;
            if (d2 == 0.0)
                fail(ErrorCode::duplicate_points,
                     "points " + std::to_string(i) + " and " + std::to_string(j));
            dist.emplace_back(d2, static_cast<VertexId>(j));
        }
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        auto& sel = out_neighbors[static_cast<std::size_t>(i)];
        for (int s = 0; s < k; ++s) sel.push_back(dist[static_cast<std::size_t>(s)].second);
    }

    // Union symmetrization: keep (i,j) if either endpoint selected the other.
    std::vector<std::vector<VertexId>> adj(points.size());
    for (std::int64_t i = 0; i < count; ++i) {
        for (VertexId j : out_neighbors[static_cast<std::size_t>(i)]) {
            adj[static_cast<std::size_t>(i)].push_back(j);
            adj[static_cast<std::size_t>(j)].push_back(static_cast<VertexId>(i));
        }
    }
    std::vector<Edge> edges;
    for (std::int64_t i = 0; i < count; ++i) {
        auto& row = adj[static_cast<std::size_t>(i)];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        const double w = 1.0 / static_cast<double>(row.size());
        for (VertexId j : row) edges.push_back({static_cast<VertexId>(i), j, w});
    }
    return Graph::build(static_cast<VertexId>(count), edges);
}

std::vector<Point2> dumbbell_point_cloud(int count, std::uint64_t seed) {
    if (count < 1) fail(ErrorCode::too_few_points, "count must be positive");
    // Left lobe [0,1]^2, right lobe [1.5,2.5]x[0,1], neck [1,1.5]x[0.4,0.6].
    auto inside = [](double x, double y) {
        if (x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0) return true;
        if (x >= 1.5 && x <= 2.5 && y >= 0.0 && y <= 1.0) return true;
        return x > 1.0 && x < 1.5 && y >= 0.4 && y <= 0.6;
    };
    SplitMix64 rng(derive_stream(seed, 0x03));
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(count));
    while (pts.size() < static_cast<std::size_t>(count)) {
        double x = rng.uniform() * 2.5;
        double y = rng.uniform();
        if (inside(x, y)) pts.push_back({x, y});
    }
    return pts;
}

}  // namespace dgeo
