#include "dgeo/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgeo/parallel.hpp"
#include "dgeo/walk.hpp"

namespace dgeo {

namespace {

constexpr double kWilsonZ = 1.959963984540054;  // 97.5% normal quantile

void wilson_interval(std::int64_t successes, std::int64_t trials, double& lo, double& hi) {
    const double n = static_cast<double>(trials);
    const double c = static_cast<double>(successes);
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = n + z2;
    const double center = (c + z2 / 2.0) / denom;
    const double half = kWilsonZ * std::sqrt(c * (n - c) / n + z2 / 4.0) / denom;
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

std::vector<std::uint8_t> target_mask_of(const Graph& g, std::span<const VertexId> target) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v : target) mask[static_cast<std::size_t>(v)] = 1;
    return mask;
}

void check_threshold(double p) {
    if (!(p > 0.0) || !(p < 1.0)) fail(ErrorCode::bad_threshold, std::to_string(p));
}

}  // namespace

std::int64_t default_kmax(const Graph& g) { return 50 * static_cast<std::int64_t>(g.vertex_count()); }

std::vector<VertexId> canonical_target(const Graph& g, std::span<const VertexId> target) {
    if (target.empty()) fail(ErrorCode::empty_target, "target set is empty");
    std::vector<VertexId> out(target.begin(), target.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.front() < 0 || out.back() >= g.vertex_count())
        fail(ErrorCode::index_out_of_range, "target vertex outside graph");
    return out;
}

void hitting_step(const Graph& g, const std::vector<std::uint8_t>& target_mask, const Vector& in,
                  Vector& out, int threads) {
    parallel_for(g.vertex_count(), threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t v = begin; v < end; ++v) {
            if (target_mask[static_cast<std::size_t>(v)]) {
                out[static_cast<std::size_t>(v)] = 1.0;
                continue;
            }
            auto cols = g.neighbors(static_cast<VertexId>(v));
            auto wts = g.row_weights(static_cast<VertexId>(v));
            double acc = 0.0;
            for (std::size_t i = 0; i < cols.size(); ++i)
                acc += wts[i] * in[static_cast<std::size_t>(cols[i])];
            out[static_cast<std::size_t>(v)] = acc;
        }
    }, 2048);
}

HittingProfile hitting_profile(const Graph& g, std::span<const VertexId> target, std::int64_t kmax,
                               int threads) {
    if (kmax < 1) fail(ErrorCode::invalid_argument, "kmax must be >= 1");
    HittingProfile profile;
    profile.target = canonical_target(g, target);
    profile.kmax = kmax;
    const auto mask = target_mask_of(g, profile.target);

    Vector h0(static_cast<std::size_t>(g.vertex_count()), 0.0);
    for (VertexId v : profile.target) h0[static_cast<std::size_t>(v)] = 1.0;
    profile.h.reserve(static_cast<std::size_t>(kmax) + 1);
    profile.h.push_back(std::move(h0));
    for (std::int64_t k = 1; k <= kmax; ++k) {
        Vector next(static_cast<std::size_t>(g.vertex_count()), 0.0);
        hitting_step(g, mask, profile.h.back(), next, threads);
        profile.h.push_back(std::move(next));
    }
    return profile;
}

DiffusionField diffusion_distance(const Graph& g, std::span<const VertexId> target, double p,
                                  std::int64_t kmax, int threads) {
    check_threshold(p);
    if (kmax < 1) fail(ErrorCode::invalid_argument, "kmax must be >= 1");

    DiffusionField field;
    field.target = canonical_target(g, target);
    field.p = p;
    field.kmax = kmax;
    const auto n = static_cast<std::size_t>(g.vertex_count());
    field.distance.assign(n, 0);
    field.capped.assign(n, 0);
    const auto mask = target_mask_of(g, field.target);

    std::int64_t unresolved = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (!mask[v]) ++unresolved;
    if (unresolved == 0) return field;

    Vector h(n, 0.0);
    for (VertexId v : field.target) h[static_cast<std::size_t>(v)] = 1.0;
    Vector next(n, 0.0);
    std::vector<std::uint8_t> resolved(mask.begin(), mask.end());

    for (std::int64_t k = 1; k <= kmax && unresolved > 0; ++k) {
        hitting_step(g, mask, h, next, threads);
        for (std::size_t v = 0; v < n; ++v) {
            if (!resolved[v] && next[v] >= p) {
                field.distance[v] = k;
                resolved[v] = 1;
                --unresolved;
            }
        }
        std::swap(h, next);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!resolved[v]) {
            field.distance[v] = kmax;
            field.capped[v] = 1;
        }
    }
    return field;
}

McDiffusionField mc_diffusion_distance(const Graph& g, std::span<const VertexId> target, double p,
                                       std::int64_t walkers, std::int64_t kmax, std::uint64_t seed,
                                       int threads) {
    check_threshold(p);
    if (walkers < 1) fail(ErrorCode::invalid_argument, "walkers must be >= 1");
    if (kmax < 1) fail(ErrorCode::invalid_argument, "kmax must be >= 1");

    McDiffusionField mc;
    mc.field.target = canonical_target(g, target);
    mc.field.p = p;
    mc.field.kmax = kmax;
    const auto n = static_cast<std::size_t>(g.vertex_count());
    mc.field.distance.assign(n, 0);
    mc.field.capped.assign(n, 0);
    mc.ci_lo.assign(n, 1.0);
    mc.ci_hi.assign(n, 1.0);
    const auto mask = target_mask_of(g, mc.field.target);
    const WalkSampler sampler(g);

    parallel_for(g.vertex_count(), threads, [&](std::int64_t begin, std::int64_t end) {
        std::vector<std::int64_t> first_hit_count;
        for (std::int64_t start = begin; start < end; ++start) {
            if (mask[static_cast<std::size_t>(start)]) continue;  // exact zero-distance row

            first_hit_count.assign(static_cast<std::size_t>(kmax) + 1, 0);
            for (std::int64_t w = 0; w < walkers; ++w) {
                SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(start),
                                             static_cast<std::uint64_t>(w)));
                VertexId v = static_cast<VertexId>(start);
                for (std::int64_t t = 1; t <= kmax; ++t) {
                    if (sampler.is_sink(v)) break;  // absorbed outside the target
                    v = sampler.step(v, rng);
                    if (mask[static_cast<std::size_t>(v)]) {
                        ++first_hit_count[static_cast<std::size_t>(t)];
                        break;
                    }
                }
            }

            std::int64_t cum = 0;
            std::int64_t crossing = -1;
            const auto threshold = static_cast<double>(walkers) * p;
            for (std::int64_t k = 1; k <= kmax; ++k) {
                cum += first_hit_count[static_cast<std::size_t>(k)];
                if (static_cast<double>(cum) >= threshold) {
                    crossing = k;
                    break;
                }
            }
            const auto s = static_cast<std::size_t>(start);
            if (crossing < 0) {
                mc.field.distance[s] = kmax;
                mc.field.capped[s] = 1;
                wilson_interval(cum, walkers, mc.ci_lo[s], mc.ci_hi[s]);
            } else {
                mc.field.distance[s] = crossing;
                std::int64_t successes = 0;
                for (std::int64_t k = 1; k <= crossing; ++k)
                    successes += first_hit_count[static_cast<std::size_t>(k)];
                wilson_interval(successes, walkers, mc.ci_lo[s], mc.ci_hi[s]);
            }
        }
    }, 1);

    return mc;
}

}  // namespace dgeo
