#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "dgeo/bounds.hpp"
#include "dgeo/diffusion.hpp"
#include "dgeo/graph.hpp"
#include "dgeo/spectral.hpp"

namespace dgeo {

// First `dims` nontrivial eigenvectors of L, each sup-normalized and
// sign-fixed, ordered by increasing eigenvalue; computed by repeated
// deflation, so dims is meant for desk scale (a few coordinates).
struct Embedding {
    int dims = 0;
    std::vector<Vector> coords;
    std::vector<double> eigenvalues;
};

Embedding spectral_embedding(const Graph& g, int dims, double tol = kDefaultEigTol,
                             std::int64_t max_iters = kDefaultEigMaxIters, int threads = 1);

// sign(u(i)) as labels in {-1, 0, +1}.
std::vector<int> sign_classifier(const Vector& u);

// Pearson coefficient, optionally over a restricted index set.
double pearson_correlation(std::span<const double> a, std::span<const double> b);
double pearson_correlation(std::span<const double> a, std::span<const double> b,
                           std::span<const VertexId> restrict_to);

// Expected first-hit time per vertex, summed from survival probabilities
// sum_k (1 - h_k); entries still carrying mass past kmax are flagged.
struct MeanFirstHit {
    Vector mean;
    std::vector<std::uint8_t> truncated;
};

MeanFirstHit mean_first_hit(const Graph& g, std::span<const VertexId> target, std::int64_t kmax,
                            int threads = 1);

// Named experiment pipelines: generate -> eigenpair -> distances -> bound
// check -> correlations, emitting a schema-versioned JSON report plus CSV
// data files. Identical config and seed give byte-identical reports except
// for the "runtime" block.
struct ExperimentConfig {
    std::string preset;  // fig1 | sw-sparse | sw-dense | dumbbell | kn-sharpness
    std::uint64_t seed = 1;
    int threads = 1;
    std::filesystem::path out_dir;  // empty: compute only, write nothing
};

nlohmann::json run_experiment(const ExperimentConfig& config);

}  // namespace dgeo
