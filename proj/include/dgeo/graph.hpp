#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dgeo/errors.hpp"

namespace dgeo {

using VertexId = std::int32_t;
using Vector = std::vector<double>;

struct Edge {
    VertexId src = 0;
    VertexId dst = 0;
    double weight = 0.0;
};

// Row sums of non-absorbing vertices must stay this close to 1.
inline constexpr double kRowSumTolerance = 1e-12;

// Immutable directed weighted graph with row-stochastic transition weights,
// stored in canonical CSR layout (column indices strictly increasing within
// each row). Absorbing vertices are sinks: their rows are empty, so the
// interior sub-matrix of the transition matrix is substochastic.
//
// Construction normalizes each non-absorbing row to sum 1, except that rows
// already within kRowSumTolerance of 1 are kept bit-for-bit, which makes
// build(decompose(g)) reproduce g exactly.
class Graph {
public:
    static Graph build(VertexId n, std::span<const Edge> edges,
                       std::span<const VertexId> absorbing = {});

    VertexId vertex_count() const noexcept { return n_; }
    std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(col_indices_.size()); }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {col_indices_.data() + row_offsets_[v],
                col_indices_.data() + row_offsets_[v + 1]};
    }
    std::span<const double> row_weights(VertexId v) const {
        return {weights_.data() + row_offsets_[v], weights_.data() + row_offsets_[v + 1]};
    }
    std::int64_t out_degree(VertexId v) const { return row_offsets_[v + 1] - row_offsets_[v]; }

    bool is_absorbing(VertexId v) const { return absorbing_mask_[static_cast<std::size_t>(v)] != 0; }
    bool has_absorbing() const noexcept { return !absorbing_.empty(); }
    const std::vector<VertexId>& absorbing() const noexcept { return absorbing_; }

    const std::vector<std::int64_t>& row_offsets() const noexcept { return row_offsets_; }
    const std::vector<VertexId>& col_indices() const noexcept { return col_indices_; }
    const std::vector<double>& edge_weights() const noexcept { return weights_; }

    // Inverse of build: the edge list (CSR order) plus the absorbing set.
    std::vector<Edge> edges() const;

    bool operator==(const Graph&) const = default;

private:
    Graph() = default;

    VertexId n_ = 0;
    std::vector<std::int64_t> row_offsets_;
    std::vector<VertexId> col_indices_;
    std::vector<double> weights_;
    std::vector<VertexId> absorbing_;       // sorted
    std::vector<std::uint8_t> absorbing_mask_;
};

// True iff the walk can travel between all vertices: strong connectivity of
// the positive-weight support when there is no absorbing set, otherwise that
// every vertex reaches the absorbing set. Pure graph traversal.
bool check_reachability(const Graph& g);

// Gershgorin data for the averaging operator: per vertex the diagonal entry
// (row sum minus the self-loop weight) and the absolute off-diagonal row sum.
// The two coincide on stochastic rows and are both zero on sinks.
struct LaplacianRowSums {
    Vector diagonal;
    Vector off_diagonal_abs_sum;
};

LaplacianRowSums laplacian_row_sums(const Graph& g);

void validate_vector(const Graph& g, const Vector& u, const char* what);

// Compensated (Kahan) sum; used wherever row sums feed a 1e-12 tolerance.
double kahan_sum(std::span<const double> values);

}  // namespace dgeo
