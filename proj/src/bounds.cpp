#include "dgeo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dgeo/diffusion.hpp"

namespace dgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sup_norm(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// d * rate with the 0 * inf corner pinned to 0 (d = 0 only on the target,
// where the bound is vacuous).
double lhs_value(std::int64_t d, double rate) {
    if (d == 0) return 0.0;
    return static_cast<double>(d) * rate;
}

void finalize(BoundReport& report) {
    std::int64_t holding = 0;
    std::int64_t considered = 0;
    report.min_slack = kInf;
    report.argmin_vertex = -1;
    for (const BoundRow& row : report.rows) {
        if (row.status == RowStatus::inconclusive) {
            ++report.inconclusive_rows;
            continue;
        }
        if (row.status == RowStatus::trivial) ++report.trivial_rows;
        ++considered;
        if (row.holds) ++holding;
        if (std::isfinite(row.slack) && row.slack < report.min_slack) {
            report.min_slack = row.slack;
            report.argmin_vertex = row.vertex;
        }
    }
    report.fraction_holding =
        considered > 0 ? static_cast<double>(holding) / static_cast<double>(considered) : 1.0;
}

BoundReport evaluate_rows(const Graph& g, const Vector& u, double rate,
                          const DiffusionField& field, double rhs_shift, BoundKind kind) {
    BoundReport report;
    report.kind = kind;
    report.target = field.target;
    report.p = field.p;
    const double umax = sup_norm(u);
    const auto n = static_cast<std::size_t>(g.vertex_count());
    report.rows.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        BoundRow row;
        row.vertex = static_cast<VertexId>(v);
        row.lhs = lhs_value(field.distance[v], rate);
        const double mag = std::abs(u[v]);
        row.rhs = mag == 0.0 ? -kInf : std::log(mag / umax) + rhs_shift;
        row.slack = row.lhs - row.rhs;
        row.holds = row.slack >= -kBoundSlackTolerance;
        if (field.capped[v])
            row.status = RowStatus::inconclusive;
        else if (row.rhs <= 0.0)
            row.status = RowStatus::trivial;
        report.rows.push_back(row);
    }
    finalize(report);
    return report;
}

}  // namespace

const char* bound_kind_tag(BoundKind kind) {
    switch (kind) {
        case BoundKind::sublevel: return "thm1";
        case BoundKind::boundary: return "thm2";
        case BoundKind::potential: return "corollary1";
    }
    return "?";
}

std::vector<VertexId> sublevel_set(const Vector& u, double eps) {
    if (eps < 0.0) fail(ErrorCode::invalid_argument, "eps must be >= 0");
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::abs(u[i]) <= eps) out.push_back(static_cast<VertexId>(i));
    return out;
}

BoundReport check_sublevel_bound(const Graph& g, const EigenPair& pair, std::optional<double> eps,
                                 std::int64_t kmax, int threads) {
    validate_vector(g, pair.u, "eigenvector");
    if (std::abs(pair.lambda) <= 1e-12)
        fail(ErrorCode::trivial_eigenvalue,
             "lambda = 0 makes the bound degenerate (constant eigenvector)");

    double eps_value;
    if (eps.has_value()) {
        eps_value = *eps;
    } else {
        eps_value = kInf;
        for (double x : pair.u) eps_value = std::min(eps_value, std::abs(x));
    }
    std::vector<VertexId> target = sublevel_set(pair.u, eps_value);
    if (target.empty())
        fail(ErrorCode::empty_sublevel, "no vertex with |u| <= " + std::to_string(eps_value));

    const double rate = -std::log(std::abs(1.0 - pair.lambda));
    DiffusionField field = diffusion_distance(g, target, 0.5, kmax, threads);
    // log(|u|/umax) - log(1/2 + eps)
    BoundReport report =
        evaluate_rows(g, pair.u, rate, field, -std::log(0.5 + eps_value), BoundKind::sublevel);
    report.rate_value = pair.lambda;
    report.eps = eps_value;
    return report;
}

BoundReport check_boundary_bound(const Graph& g, const EigenPair& pair, std::int64_t kmax,
                                 int threads) {
    if (!g.has_absorbing()) fail(ErrorCode::no_absorbing_set, "boundary bound needs sinks");
    validate_vector(g, pair.u, "eigenvector");

    const double rate = -std::log(std::abs(1.0 - pair.lambda));
    DiffusionField field = diffusion_distance(g, g.absorbing(), 0.5, kmax, threads);
    // log(2|u|/umax)
    BoundReport report =
        evaluate_rows(g, pair.u, rate, field, std::log(2.0), BoundKind::boundary);
    report.rate_value = pair.lambda;
    return report;
}

BoundReport check_potential_bound(const Graph& g, const Vector& potential, const Vector& u,
                                  std::int64_t kmax, double residual_tol, int threads) {
    if (!g.has_absorbing()) fail(ErrorCode::no_absorbing_set, "potential bound needs sinks");
    validate_vector(g, potential, "potential");
    validate_vector(g, u, "solution");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] < 0.0) fail(ErrorCode::negative_u, "u(" + std::to_string(i) + ") < 0");

    double wnorm = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (!g.is_absorbing(v)) wnorm = std::max(wnorm, std::abs(potential[static_cast<std::size_t>(v)]));
    if (wnorm >= 1.0) fail(ErrorCode::potential_too_large, "||W||_inf = " + std::to_string(wnorm));

    const double umax = sup_norm(u);
    Vector lu = apply_laplacian(g, u, threads);
    double res = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        res = std::max(res, std::abs(lu[i] - potential[i] * u[i]));
    if (res > residual_tol * std::max(1.0, umax))
        fail(ErrorCode::not_an_equation_solution,
             "||Lu - W.u||_inf = " + std::to_string(res));

    const double rate = -std::log(1.0 - wnorm);
    DiffusionField field = diffusion_distance(g, g.absorbing(), 0.5, kmax, threads);
    BoundReport report = evaluate_rows(g, u, rate, field, std::log(2.0), BoundKind::potential);
    report.rate_value = wnorm;
    return report;
}

std::vector<SharpnessRow> sharpness_sweep(Family family, std::span<const double> params) {
    if (family != Family::complete_absorbing && family != Family::cycle_plus_boundary)
        fail(ErrorCode::unsupported_family,
             std::string(family_name(family)) + " has no constant-eigenvector sweep");

    std::vector<SharpnessRow> rows;
    rows.reserve(params.size());
    const double log2 = std::log(2.0);
    for (double param : params) {
        double exit_probability;
        if (family == Family::complete_absorbing) {
            if (param < 2.0) fail(ErrorCode::size_too_small, "complete_absorbing needs n >= 2");
            exit_probability = 1.0 / param;
        } else {
            if (!(param > 0.0) || !(param < 1.0)) fail(ErrorCode::bad_epsilon, std::to_string(param));
            exit_probability = param;
        }

        // Exchangeable interior: the family collapses to one interior state
        // with a self-loop and one sink.
        const Edge lump_edges[] = {{0, 0, 1.0 - exit_probability}, {0, 1, exit_probability}};
        const VertexId sink[] = {1};
        Graph lump = Graph::build(2, lump_edges, sink);

        EigenPair pair = absorbing_dominant_eigenpair(lump);
        const std::int64_t kmax =
            std::max<std::int64_t>(64, static_cast<std::int64_t>(2.0 / exit_probability) + 16);
        DiffusionField field = diffusion_distance(lump, lump.absorbing(), 0.5, kmax);
        if (field.capped[0])
            fail(ErrorCode::no_convergence, "sweep distance capped; enlarge kmax");

        SharpnessRow row;
        row.parameter = param;
        row.lambda = pair.lambda;
        row.distance = field.distance[0];
        row.product = static_cast<double>(row.distance) * (-std::log1p(-pair.lambda));
        row.ratio_to_log2 = row.product / log2;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dgeo
