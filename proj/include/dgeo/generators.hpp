#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dgeo/graph.hpp"

namespace dgeo {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

enum class Family {
    path,
    cycle,
    complete_absorbing,
    cycle_plus_boundary,
    two_complete_bridge,
    small_world_ring,
    knn_point_cloud,
};

Family family_from_name(const std::string& name);
const char* family_name(Family f);

// Path graph on n >= 3 vertices: interior vertices step to either neighbor
// with probability 1/2, endpoints step to their unique neighbor.
Graph gen_path(VertexId n);

// Cycle graph on n >= 3 vertices, probability 1/2 to each neighbor.
Graph gen_cycle(VertexId n);

// Complete graph on n >= 2 vertices with uniform weights 1/n including the
// self-loop; vertex n-1 is the absorbing state.
Graph gen_complete_absorbing(VertexId n);

// Cycle 0..n-1 where every cycle vertex sends eps to an extra absorbing
// vertex n and (1-eps)/2 to each cycle neighbor. Requires 0 < eps < 1.
Graph gen_cycle_plus_boundary(VertexId n, double eps);

// Two complete blocks of n vertices each (uniform weights, self-loops kept,
// not absorbing) joined through one bridge vertex connected both ways to all
// 2n block vertices. Vertices: block A = 0..n-1, block B = n..2n-1,
// bridge = 2n.
Graph gen_two_complete_bridge(VertexId n);

// Ring of n vertices plus i.i.d. extra undirected edges: each unordered pair
// is drawn with probability expected_extra_edges / C(n,2). n_boundary
// vertices chosen uniformly at random become absorbing; remaining rows are
// normalized uniformly over incident edges.
Graph gen_small_world_ring(VertexId n, VertexId n_boundary, double expected_extra_edges,
                           std::uint64_t seed);

// Exact (brute force) Euclidean k-nearest-neighbor digraph, symmetrized by
// union, unit weights normalized uniformly. Ties broken by (distance, id).
Graph gen_knn_point_cloud(std::span<const Point2> points, int k);

// Seeded uniform samples from a fixed dumbbell: two unit squares joined by a
// 0.5 x 0.2 neck.
std::vector<Point2> dumbbell_point_cloud(int count, std::uint64_t seed);

}  // namespace dgeo
