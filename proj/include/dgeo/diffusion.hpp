#pragma once

#include <cstdint>
#include <span>

#include "dgeo/graph.hpp"

namespace dgeo {

// Cumulative hitting probabilities h_k(i) = P(the walk from i visits the
// target within k steps), for k = 0..kmax. h_0 is the target indicator and
// h is monotone nondecreasing in k.
struct HittingProfile {
    std::vector<VertexId> target;  // sorted, deduplicated
    std::int64_t kmax = 0;
    std::vector<Vector> h;         // h[k][i]
};

// Median-type hitting distances: d(i) = 0 on the target, otherwise the
// smallest k with h_k(i) >= p; vertices that never reach the threshold by
// kmax carry distance kmax with capped set.
struct DiffusionField {
    std::vector<VertexId> target;
    double p = 0.5;
    std::int64_t kmax = 0;
    std::vector<std::int64_t> distance;
    std::vector<std::uint8_t> capped;
};

struct McDiffusionField {
    DiffusionField field;
    // 95% Wilson interval on the hitting probability at each vertex's
    // crossing step.
    Vector ci_lo;
    Vector ci_hi;
};

std::int64_t default_kmax(const Graph& g);

// Validates and canonicalizes a target set (non-empty, in range, sorted).
std::vector<VertexId> canonical_target(const Graph& g, std::span<const VertexId> target);

// One exact dynamic-programming step: out(i) = 1 on the target, else
// sum_j p_ij in(j). Deterministic CSR summation order.
void hitting_step(const Graph& g, const std::vector<std::uint8_t>& target_mask, const Vector& in,
                  Vector& out, int threads = 1);

HittingProfile hitting_profile(const Graph& g, std::span<const VertexId> target, std::int64_t kmax,
                               int threads = 1);

DiffusionField diffusion_distance(const Graph& g, std::span<const VertexId> target, double p,
                                  std::int64_t kmax, int threads = 1);

// Monte Carlo estimate of the same field from `walkers` independent seeded
// trajectories per start vertex. Walker w at start i draws from an RNG
// stream derived from (seed, i, w), so results do not depend on scheduling.
McDiffusionField mc_diffusion_distance(const Graph& g, std::span<const VertexId> target, double p,
                                       std::int64_t walkers, std::int64_t kmax, std::uint64_t seed,
                                       int threads = 1);

}  // namespace dgeo
