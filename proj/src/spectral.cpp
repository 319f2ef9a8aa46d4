#include "dgeo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgeo/parallel.hpp"
#include "dgeo/rng.hpp"

namespace dgeo {

namespace {

constexpr double kGershgorinSlack = 1e-9;

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double sup_norm(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Divide by the sup norm; extremal entries become exactly +-1.
void sup_normalize(Vector& v) {
    double m = sup_norm(v);
    if (m == 0.0) return;
    for (double& x : v) x /= m;
}

// Lowest-index vertex attaining |u(i)| = 1 must be positive.
void fix_sign(Vector& u) {
    for (double x : u) {
        if (std::abs(x) == 1.0) {
            if (x < 0.0)
                for (double& y : u) y = -y;
            return;
        }
    }
}

void check_gershgorin(double lambda) {
    if (std::abs(1.0 - lambda) > 1.0 + kGershgorinSlack)
        fail(ErrorCode::no_convergence,
             "eigenvalue " + std::to_string(lambda) + " escaped the Gershgorin disk");
}

// Least-squares fit v ~ a*p1 + b*p2 over the last three iterates. A tight
// fit whose characteristic roots are complex means the iteration is rotating
// inside a two-dimensional invariant subspace: the dominant pair is complex.
bool looks_complex(const Vector& v, const Vector& p1, const Vector& p2, double fit_tol) {
    double g11 = dot(p1, p1), g12 = dot(p1, p2), g22 = dot(p2, p2);
    double det = g11 * g22 - g12 * g12;
    if (det <= 1e-12 * g11 * g22) return false;  // iterates colinear: not rotating
    double r1 = dot(v, p1), r2 = dot(v, p2);
    double a = (g22 * r1 - g12 * r2) / det;
    double b = (g11 * r2 - g12 * r1) / det;
    double fit_res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        fit_res = std::max(fit_res, std::abs(v[i] - a * p1[i] - b * p2[i]));
    if (fit_res > fit_tol) return false;
    double disc = a * a + 4.0 * b;
    return disc < -1e-9;
}

struct TransposeCsr {
    std::vector<std::int64_t> offsets;
    std::vector<VertexId> sources;
    std::vector<double> weights;
};

TransposeCsr build_transpose(const Graph& g) {
    const VertexId n = g.vertex_count();
    TransposeCsr t;
    t.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (VertexId w : g.col_indices()) ++t.offsets[static_cast<std::size_t>(w) + 1];
    for (VertexId v = 0; v < n; ++v) t.offsets[static_cast<std::size_t>(v) + 1] += t.offsets[v];
    t.sources.resize(g.col_indices().size());
    t.weights.resize(g.col_indices().size());
    std::vector<std::int64_t> cursor(t.offsets.begin(), t.offsets.end() - 1);
    for (VertexId v = 0; v < n; ++v) {
        auto cols = g.neighbors(v);
        auto wts = g.row_weights(v);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::int64_t slot = cursor[static_cast<std::size_t>(cols[i])]++;
            t.sources[static_cast<std::size_t>(slot)] = v;
            t.weights[static_cast<std::size_t>(slot)] = wts[i];
        }
    }
    return t;
}

Vector seeded_start(std::size_t n, std::uint64_t salt) {
    SplitMix64 rng(derive_stream(0x64676f5f65696731ULL, salt));
    Vector v(n);
    for (double& x : v) x = rng.uniform() - 0.5;
    return v;
}

}  // namespace

Vector apply_laplacian(const Graph& g, const Vector& u, int threads) {
    validate_vector(g, u, "apply_laplacian input");
    Vector out(u.size(), 0.0);
    parallel_for(g.vertex_count(), threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t v = begin; v < end; ++v) {
            auto cols = g.neighbors(static_cast<VertexId>(v));
            auto wts = g.row_weights(static_cast<VertexId>(v));
            const double uv = u[static_cast<std::size_t>(v)];
            double acc = 0.0;
            for (std::size_t i = 0; i < cols.size(); ++i)
                acc += wts[i] * (u[static_cast<std::size_t>(cols[i])] - uv);
            out[static_cast<std::size_t>(v)] = -acc;
        }
    });
    return out;
}

Vector apply_transition(const Graph& g, const Vector& v, int threads) {
    validate_vector(g, v, "apply_transition input");
    Vector out(v.size(), 0.0);
    parallel_for(g.vertex_count(), threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r) {
            auto cols = g.neighbors(static_cast<VertexId>(r));
            auto wts = g.row_weights(static_cast<VertexId>(r));
            double acc = 0.0;
            for (std::size_t i = 0; i < cols.size(); ++i)
                acc += wts[i] * v[static_cast<std::size_t>(cols[i])];
            out[static_cast<std::size_t>(r)] = acc;
        }
    });
    return out;
}

Vector stationary_distribution(const Graph& g, double tol, std::int64_t max_iters) {
    if (g.has_absorbing())
        fail(ErrorCode::invalid_argument, "stationary distribution needs a graph without sinks");
    if (!check_reachability(g)) fail(ErrorCode::not_irreducible, "graph is not strongly connected");

    const auto n = static_cast<std::size_t>(g.vertex_count());
    TransposeCsr t = build_transpose(g);
    Vector x(n, 1.0 / static_cast<double>(n));
    Vector y(n, 0.0);

    auto transpose_apply = [&](const Vector& in, Vector& out) {
        for (std::size_t v = 0; v < n; ++v) {
            double acc = 0.0;
            for (std::int64_t i = t.offsets[v]; i < t.offsets[v + 1]; ++i)
                acc += t.weights[static_cast<std::size_t>(i)] *
                       in[static_cast<std::size_t>(t.sources[static_cast<std::size_t>(i)])];
            out[v] = acc;
        }
    };

    for (std::int64_t iter = 1; iter <= max_iters; ++iter) {
        transpose_apply(x, y);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(y[i] - x[i]));
        if (res <= tol) {
            double s = kahan_sum(x);
            for (double& xi : x) xi /= s;
            return x;
        }
        // Lazy average keeps periodic chains converging.
        for (std::size_t i = 0; i < n; ++i) x[i] = 0.5 * (x[i] + y[i]);
        double s = kahan_sum(x);
        for (double& xi : x) xi /= s;
    }
    fail(ErrorCode::no_convergence,
         "stationary distribution: no convergence in " + std::to_string(max_iters) + " iterations");
}

EigenPair next_deflated_eigenpair(const Graph& g, const Vector& pi,
                                  std::span<const Vector> deflate_columns, double tol,
                                  std::int64_t max_iters, int threads) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    validate_vector(g, pi, "stationary distribution");

    // pi-weighted projections: the trivial (constant) direction plus the
    // given columns.
    std::vector<Vector> weighted;
    std::vector<double> denom;
    for (const Vector& col : deflate_columns) {
        validate_vector(g, col, "deflation column");
        Vector w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = pi[i] * col[i];
        denom.push_back(dot(w, col));
        weighted.push_back(std::move(w));
    }
    auto deflate = [&](Vector& v) {
        double c = dot(pi, v);
        for (double& x : v) x -= c;
        for (std::size_t j = 0; j < weighted.size(); ++j) {
            double coeff = dot(weighted[j], v) / denom[j];
            const Vector& col = deflate_columns[j];
            for (std::size_t i = 0; i < n; ++i) v[i] -= coeff * col[i];
        }
    };

    Vector v;
    for (std::uint64_t salt = 0; salt < 8; ++salt) {
        v = seeded_start(n, salt);
        deflate(v);
        if (sup_norm(v) > 1e-8) break;
    }
    sup_normalize(v);

    Vector prev1, prev2;
    double res = 0.0;
    for (std::int64_t iter = 1; iter <= max_iters; ++iter) {
        Vector t = apply_transition(g, v, threads);
        deflate(t);
        double mu = dot(v, t) / dot(v, v);
        res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(t[i] - mu * v[i]));

        if (res <= 0.5 * tol) {
            Vector u = v;
            sup_normalize(u);
            fix_sign(u);
            const double lambda = 1.0 - mu;
            Vector lu = apply_laplacian(g, u, threads);
            double final_res = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                final_res = std::max(final_res, std::abs(lu[i] - lambda * u[i]));
            if (final_res <= tol) {
                check_gershgorin(lambda);
                return {lambda, std::move(u), final_res, iter};
            }
        }

        Vector w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 * (v[i] + t[i]);
        deflate(w);
        sup_normalize(w);
        prev2 = std::move(prev1);
        prev1 = std::move(v);
        v = std::move(w);

        if (iter >= 128 && iter % 64 == 0 && !prev2.empty() &&
            looks_complex(v, prev1, prev2, 1e-8))
            fail(ErrorCode::complex_dominant_pair,
                 "iterates rotate: dominant deflated eigenvalue appears complex");
    }
    if (!prev2.empty() && looks_complex(v, prev1, prev2, 1e-4))
        fail(ErrorCode::complex_dominant_pair,
             "iterates rotate: dominant deflated eigenvalue appears complex");
    fail(ErrorCode::no_convergence,
         "deflated power iteration: no convergence in " + std::to_string(max_iters) +
             " iterations (residual " + std::to_string(res) + ")");
}

EigenPair first_nontrivial_eigenpair(const Graph& g, double tol, std::int64_t max_iters,
                                     int threads) {
    if (g.has_absorbing())
        fail(ErrorCode::invalid_argument, "first_nontrivial_eigenpair needs a graph without sinks");
    if (!check_reachability(g)) fail(ErrorCode::not_irreducible, "graph is not strongly connected");

    const Vector pi = stationary_distribution(g, std::min(tol, 1e-12), max_iters);
    return next_deflated_eigenpair(g, pi, {}, tol, max_iters, threads);
}

EigenPair absorbing_dominant_eigenpair(const Graph& g, double tol, std::int64_t max_iters,
                                       int threads) {
    if (!g.has_absorbing()) fail(ErrorCode::no_absorbing_set, "graph has no absorbing vertices");
    if (!check_reachability(g))
        fail(ErrorCode::not_irreducible, "some vertex cannot reach the absorbing set");

    const VertexId n = g.vertex_count();
    std::vector<VertexId> interior;
    std::vector<VertexId> to_interior(static_cast<std::size_t>(n), -1);
    for (VertexId vtx = 0; vtx < n; ++vtx) {
        if (!g.is_absorbing(vtx)) {
            to_interior[static_cast<std::size_t>(vtx)] = static_cast<VertexId>(interior.size());
            interior.push_back(vtx);
        }
    }
    const auto m = interior.size();
    if (m == 0) fail(ErrorCode::invalid_argument, "all vertices are absorbing");

    // Interior-restricted CSR of P.
    std::vector<std::int64_t> offsets(m + 1, 0);
    std::vector<VertexId> cols;
    std::vector<double> wts;
    for (std::size_t r = 0; r < m; ++r) {
        auto nb = g.neighbors(interior[r]);
        auto ws = g.row_weights(interior[r]);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            VertexId c = to_interior[static_cast<std::size_t>(nb[i])];
            if (c >= 0) {
                cols.push_back(c);
                wts.push_back(ws[i]);
            }
        }
        offsets[r + 1] = static_cast<std::int64_t>(cols.size());
    }

    auto interior_apply = [&](const Vector& in, Vector& out) {
        parallel_for(static_cast<std::int64_t>(m), threads, [&](std::int64_t begin, std::int64_t end) {
            for (std::int64_t r = begin; r < end; ++r) {
                double acc = 0.0;
                for (std::int64_t i = offsets[static_cast<std::size_t>(r)];
                     i < offsets[static_cast<std::size_t>(r) + 1]; ++i)
                    acc += wts[static_cast<std::size_t>(i)] *
                           in[static_cast<std::size_t>(cols[static_cast<std::size_t>(i)])];
                out[static_cast<std::size_t>(r)] = acc;
            }
        });
    };

    Vector v(m, 1.0);
    Vector t(m, 0.0);
    for (std::int64_t iter = 1; iter <= max_iters; ++iter) {
        interior_apply(v, t);
        double mu = dot(v, t) / dot(v, v);
        double res = 0.0;
        for (std::size_t i = 0; i < m; ++i) res = std::max(res, std::abs(t[i] - mu * v[i]));
        if (res <= 0.5 * tol) {
            Vector u(static_cast<std::size_t>(n), 0.0);
            double vmax = sup_norm(v);
            for (std::size_t i = 0; i < m; ++i)
                u[static_cast<std::size_t>(interior[i])] = std::abs(v[i]) / vmax;
            const double lambda = 1.0 - mu;
            Vector lu = apply_laplacian(g, u, threads);
            double final_res = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                final_res = std::max(final_res, std::abs(lu[i] - lambda * u[i]));
            if (final_res <= tol) {
                if (!(lambda > 0.0 && lambda < 1.0))
                    fail(ErrorCode::no_convergence,
                         "interior Perron value " + std::to_string(mu) + " outside (0,1)");
                check_gershgorin(lambda);
                return {lambda, std::move(u), final_res, iter};
            }
        }
        // Lazy average; the iterate stays nonnegative, matching the Perron
        // eigenvector we are after.
        for (std::size_t i = 0; i < m; ++i) v[i] = 0.5 * (v[i] + t[i]);
        sup_normalize(v);
    }
    fail(ErrorCode::no_convergence,
         "absorbing_dominant_eigenpair: no convergence in " + std::to_string(max_iters) +
             " iterations");
}

}  // namespace dgeo
