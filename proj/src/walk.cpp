#include "dgeo/walk.hpp"

#include <algorithm>
#include <cmath>

#include "dgeo/parallel.hpp"

namespace dgeo {

WalkSampler::WalkSampler(const Graph& g) : graph_(&g) {
    cumulative_.resize(g.edge_weights().size());
    const auto& offsets = g.row_offsets();
    const auto& weights = g.edge_weights();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        double run = 0.0;
        for (std::int64_t i = offsets[v]; i < offsets[v + 1]; ++i) {
            run += weights[static_cast<std::size_t>(i)];
            cumulative_[static_cast<std::size_t>(i)] = run;
        }
    }
}

VertexId WalkSampler::step(VertexId v, SplitMix64& rng) const {
    const auto& offsets = graph_->row_offsets();
    const std::int64_t b = offsets[v];
    const std::int64_t e = offsets[v + 1];
    if (b == e) return v;
    const double r = rng.uniform();
    const double* first = cumulative_.data() + b;
    const double* last = cumulative_.data() + e;
    const double* it = std::upper_bound(first, last, r);
    if (it == last) --it;  // r beyond the rounded row total
    return graph_->col_indices()[static_cast<std::size_t>(b + (it - first))];
}

McMoments mc_walk_functional_mean(const Graph& g, const Vector& values, VertexId start,
                                  std::int64_t steps, std::int64_t walkers, std::uint64_t seed,
                                  int threads) {
    validate_vector(g, values, "mc_walk_functional_mean values");
    if (start < 0 || start >= g.vertex_count())
        fail(ErrorCode::index_out_of_range, "start vertex " + std::to_string(start));
    if (walkers < 1) fail(ErrorCode::invalid_argument, "walkers must be >= 1");
    if (steps < 0) fail(ErrorCode::invalid_argument, "steps must be >= 0");

    const WalkSampler sampler(g);
    constexpr std::int64_t kChunk = 4096;
    const std::int64_t chunks = (walkers + kChunk - 1) / kChunk;
    std::vector<double> chunk_sum(static_cast<std::size_t>(chunks), 0.0);
    std::vector<double> chunk_sumsq(static_cast<std::size_t>(chunks), 0.0);

    parallel_for(chunks, threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t c = begin; c < end; ++c) {
            const std::int64_t w_begin = c * kChunk;
            const std::int64_t w_end = std::min(w_begin + kChunk, walkers);
            double s = 0.0, s2 = 0.0;
            for (std::int64_t w = w_begin; w < w_end; ++w) {
                SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(start),
                                             static_cast<std::uint64_t>(w)));
                VertexId v = start;
                for (std::int64_t t = 0; t < steps; ++t) {
                    if (sampler.is_sink(v)) break;  // absorbed: stays put
                    v = sampler.step(v, rng);
                }
                const double x = values[static_cast<std::size_t>(v)];
                s += x;
                s2 += x * x;
            }
            chunk_sum[static_cast<std::size_t>(c)] = s;
            chunk_sumsq[static_cast<std::size_t>(c)] = s2;
        }
    }, 1);

    double total = 0.0, total_sq = 0.0;
    for (std::int64_t c = 0; c < chunks; ++c) {
        total += chunk_sum[static_cast<std::size_t>(c)];
        total_sq += chunk_sumsq[static_cast<std::size_t>(c)];
    }
    const double n = static_cast<double>(walkers);
    const double mean = total / n;
    const double var = std::max(0.0, total_sq / n - mean * mean);
    return {mean, std::sqrt(var / n), walkers};
}

}  // namespace dgeo
