#include "dgeo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dgeo {

double kahan_sum(std::span<const double> values) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

Graph Graph::build(VertexId n, std::span<const Edge> edges, std::span<const VertexId> absorbing) {
    if (n <= 0) fail(ErrorCode::invalid_argument, "vertex count must be positive");

    Graph g;
    g.n_ = n;
    g.absorbing_mask_.assign(static_cast<std::size_t>(n), 0);
    for (VertexId v : absorbing) {
        if (v < 0 || v >= n)
            fail(ErrorCode::index_out_of_range, "absorbing vertex " + std::to_string(v));
        g.absorbing_mask_[static_cast<std::size_t>(v)] = 1;
    }
    for (VertexId v = 0; v < n; ++v)
        if (g.absorbing_mask_[static_cast<std::size_t>(v)]) g.absorbing_.push_back(v);

    std::vector<Edge> sorted;
    sorted.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            fail(ErrorCode::index_out_of_range,
                 "edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) + ")");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            fail(ErrorCode::non_positive_weight,
                 "edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) + ") weight " +
                     std::to_string(e.weight));
        if (g.absorbing_mask_[static_cast<std::size_t>(e.src)]) continue;  // sinks keep no out-edges
        sorted.push_back(e);
    }
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].src == sorted[i - 1].src && sorted[i].dst == sorted[i - 1].dst)
            fail(ErrorCode::duplicate_edge, "edge (" + std::to_string(sorted[i].src) + "," +
                                                std::to_string(sorted[i].dst) + ")");

    g.row_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const Edge& e : sorted) ++g.row_offsets_[static_cast<std::size_t>(e.src) + 1];
    for (VertexId v = 0; v < n; ++v) {
        g.row_offsets_[static_cast<std::size_t>(v) + 1] += g.row_offsets_[v];
        if (!g.is_absorbing(v) && g.row_offsets_[v + 1] == g.row_offsets_[v])
            fail(ErrorCode::empty_row,
                 "non-absorbing vertex " + std::to_string(v) + " has no outgoing edges");
    }

    g.col_indices_.resize(sorted.size());
    g.weights_.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        g.col_indices_[i] = sorted[i].dst;
        g.weights_[i] = sorted[i].weight;
    }

    for (VertexId v = 0; v < n; ++v) {
        auto row = std::span<double>(g.weights_.data() + g.row_offsets_[v],
                                     g.weights_.data() + g.row_offsets_[v + 1]);
        if (row.empty()) continue;
        double sum = kahan_sum(row);
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            for (double& w : row) w /= sum;
        }
    }
    return g;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(col_indices_.size());
    for (VertexId v = 0; v < n_; ++v)
        for (std::int64_t i = row_offsets_[v]; i < row_offsets_[v + 1]; ++i)
            out.push_back({v, col_indices_[i], weights_[i]});
    return out;
}

namespace {

// Iterative DFS over an adjacency accessor; marks every vertex reachable
// from the seeds.
template <typename NeighborsFn>
void mark_reachable(VertexId n, std::span<const VertexId> seeds, NeighborsFn&& neighbors,
                    std::vector<std::uint8_t>& visited) {
    std::vector<VertexId> stack(seeds.begin(), seeds.end());
    for (VertexId s : seeds) visited[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w : neighbors(v)) {
            if (!visited[static_cast<std::size_t>(w)]) {
                visited[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    (void)n;
}

std::vector<std::vector<VertexId>> reverse_adjacency(const Graph& g) {
    std::vector<std::vector<VertexId>> rev(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (VertexId w : g.neighbors(v)) rev[static_cast<std::size_t>(w)].push_back(v);
    return rev;
}

}  // namespace

bool check_reachability(const Graph& g) {
    const VertexId n = g.vertex_count();
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(n), 0);

    if (g.has_absorbing()) {
        // Every vertex must reach the absorbing set: walk the reversed graph
        // from the sinks.
        auto rev = reverse_adjacency(g);
        mark_reachable(
            n, g.absorbing(), [&](VertexId v) -> std::span<const VertexId> { return rev[v]; },
            visited);
        return std::all_of(visited.begin(), visited.end(), [](std::uint8_t b) { return b != 0; });
    }

    // Strong connectivity: forward and backward reachability from vertex 0.
    const VertexId seed[] = {0};
    mark_reachable(n, seed, [&](VertexId v) { return g.neighbors(v); }, visited);
    if (!std::all_of(visited.begin(), visited.end(), [](std::uint8_t b) { return b != 0; }))
        return false;

    std::fill(visited.begin(), visited.end(), 0);
    auto rev = reverse_adjacency(g);
    mark_reachable(
        n, seed, [&](VertexId v) -> std::span<const VertexId> { return rev[v]; }, visited);
    return std::all_of(visited.begin(), visited.end(), [](std::uint8_t b) { return b != 0; });
}

LaplacianRowSums laplacian_row_sums(const Graph& g) {
    const VertexId n = g.vertex_count();
    LaplacianRowSums out;
    out.diagonal.assign(static_cast<std::size_t>(n), 0.0);
    out.off_diagonal_abs_sum.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> off;
    for (VertexId v = 0; v < n; ++v) {
        auto cols = g.neighbors(v);
        auto wts = g.row_weights(v);
        double self = 0.0;
        off.clear();
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i] == v)
                self = wts[i];
            else
                off.push_back(wts[i]);
        }
        double row_sum = kahan_sum(wts);
        out.diagonal[static_cast<std::size_t>(v)] = cols.empty() ? 0.0 : row_sum - self;
        out.off_diagonal_abs_sum[static_cast<std::size_t>(v)] = kahan_sum(off);
    }
    return out;
}

void validate_vector(const Graph& g, const Vector& u, const char* what) {
    if (static_cast<VertexId>(u.size()) != g.vertex_count())
        fail(ErrorCode::dimension_mismatch, std::string(what) + ": length " +
                                                std::to_string(u.size()) + " vs " +
                                                std::to_string(g.vertex_count()) + " vertices");
    for (double x : u)
        if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, std::string(what) + ": non-finite entry");
}

}  // namespace dgeo
