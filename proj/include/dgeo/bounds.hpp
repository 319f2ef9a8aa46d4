#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "dgeo/generators.hpp"
#include "dgeo/graph.hpp"
#include "dgeo/spectral.hpp"

namespace dgeo {

// Which localization inequality a report evaluates. Serialized as
// "thm1" / "thm2" / "corollary1" in reports.
enum class BoundKind {
    sublevel,   // eigenvector vs. distance to its near-zero set
    boundary,   // absorbing-chain eigenvector vs. distance to the sinks
    potential,  // Schroedinger-type solution vs. distance to the sinks
};

const char* bound_kind_tag(BoundKind kind);

enum class RowStatus {
    ok,            // substantive comparison
    trivial,       // right-hand side is <= 0 or -inf: holds with no content
    inconclusive,  // capped distance understates the left-hand side
};

struct BoundRow {
    VertexId vertex = 0;
    double lhs = 0.0;
    double rhs = 0.0;  // may be -inf
    double slack = 0.0;
    bool holds = false;
    RowStatus status = RowStatus::ok;
};

// Slack is compared on the log scale against this tolerance.
inline constexpr double kBoundSlackTolerance = 1e-9;

struct BoundReport {
    BoundKind kind = BoundKind::sublevel;
    std::vector<BoundRow> rows;
    // Aggregates over rows that are not inconclusive.
    double min_slack = 0.0;  // over finite slacks
    VertexId argmin_vertex = -1;
    double fraction_holding = 0.0;
    std::int64_t trivial_rows = 0;
    std::int64_t inconclusive_rows = 0;
    // Inputs echo.
    double rate_value = 0.0;  // lambda, or ||W||_inf for the potential bound
    double eps = 0.0;
    double p = 0.5;
    std::vector<VertexId> target;
};

// {i : |u(i)| <= eps}. May be empty; callers that need a non-empty set
// raise EmptySublevel.
std::vector<VertexId> sublevel_set(const Vector& u, double eps);

// d_B(i) log(1/|1-lambda|) >= log(|u(i)|/||u||_inf) - log(1/2 + eps)
// with B the sublevel set of the eigenvector. eps = nullopt picks the
// smallest value making B non-empty (the minimum of |u|).
BoundReport check_sublevel_bound(const Graph& g, const EigenPair& pair,
                                 std::optional<double> eps, std::int64_t kmax, int threads = 1);

// d_{dV}(i) log(1/|1-lambda_1|) >= log(2|u(i)|/||u||_inf) with dV the
// absorbing set and u
// the interior Perron eigenvector vanishing on dV.
BoundReport check_boundary_bound(const Graph& g, const EigenPair& pair, std::int64_t kmax,
                                 int threads = 1);

// Same right-hand side with rate log(1/(1-||W||_inf)) for a nonnegative u
// solving Lu = W.u with u = 0 on the absorbing set.
BoundReport check_potential_bound(const Graph& g, const Vector& potential, const Vector& u,
                                  std::int64_t kmax, double residual_tol = 1e-9, int threads = 1);

// One row of the extremizer-family sweep: the constant-eigenvector pair,
// the distance to the boundary, and the product d*log(1/(1-lambda)) whose
// ratio to log 2 measures sharpness.
struct SharpnessRow {
    double parameter = 0.0;  // n for complete_absorbing, eps for cycle_plus_boundary
    double lambda = 0.0;
    std::int64_t distance = 0;
    double product = 0.0;
    double ratio_to_log2 = 0.0;
};

// Families whose interior states are exchangeable collapse exactly to a
// two-state chain (one interior state, one sink), which is how the sweep
// reaches sizes like n = 10^4 without materializing K_n.
std::vector<SharpnessRow> sharpness_sweep(Family family, std::span<const double> params);

}  // namespace dgeo
