#pragma once

#include <cstdint>

#include "dgeo/graph.hpp"
#include "dgeo/rng.hpp"

namespace dgeo {

// Samples random-walk steps from the row-stochastic weights. Sinks are
// absorbing: stepping from one returns the vertex itself.
class WalkSampler {
public:
    explicit WalkSampler(const Graph& g);

    VertexId step(VertexId v, SplitMix64& rng) const;
    bool is_sink(VertexId v) const { return graph_->out_degree(v) == 0; }
    const Graph& graph() const { return *graph_; }

private:
    const Graph* graph_;
    std::vector<double> cumulative_;  // per-edge running row sums
};

struct McMoments {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t walkers = 0;
};

// Monte Carlo estimate of E[f(x_steps)] for walks started at `start`, where
// f is the vertex function `values`. Walker w draws from a stream derived
// from (seed, start, w), and accumulation is chunked in a fixed order, so
// the result is bit-identical for every thread count.
McMoments mc_walk_functional_mean(const Graph& g, const Vector& values, VertexId start,
                                  std::int64_t steps, std::int64_t walkers, std::uint64_t seed,
                                  int threads = 1);

}  // namespace dgeo
