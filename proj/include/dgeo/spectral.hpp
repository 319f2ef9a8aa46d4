#pragma once

#include <cstdint>

#include "dgeo/graph.hpp"

namespace dgeo {

// Eigenpair of the averaging operator L = I - P. The eigenvector is
// sup-normalized with the sign fixed so the lowest-index extremal vertex is
// positive, and the residual is ||Lu - lambda*u||_inf measured by an
// independent apply_laplacian pass.
struct EigenPair {
    double lambda = 0.0;
    Vector u;
    double residual = 0.0;
    std::int64_t iterations = 0;
};

inline constexpr double kDefaultEigTol = 1e-10;
inline constexpr std::int64_t kDefaultEigMaxIters = 5'000'000;

// (Lu)(i) = -sum_j p_ij (u(j) - u(i)), evaluated term by term in CSR order.
// Absorbing rows are empty sums and yield 0.
Vector apply_laplacian(const Graph& g, const Vector& u, int threads = 1);

// (Pv)(i) = sum_j p_ij v(j).
Vector apply_transition(const Graph& g, const Vector& v, int threads = 1);

// Left Perron vector: pi >= 0, sum(pi) = 1, ||pi P - pi||_inf <= tol.
// Power iteration on the transpose operator (lazy-averaged so periodic
// chains converge too).
Vector stationary_distribution(const Graph& g, double tol = kDefaultEigTol,
                               std::int64_t max_iters = kDefaultEigMaxIters);

// Eigenvalue of L closest to 0 excluding 0 itself, i.e. the second-largest
// real eigenvalue of P, with its eigenvector. Power iteration on P deflated
// against the trivial pair (right eigenvector constant, left eigenvector the
// stationary distribution). Rotating iterates, the signature of a complex
// dominant pair, are detected and reported rather than mis-converged.
EigenPair first_nontrivial_eigenpair(const Graph& g, double tol = kDefaultEigTol,
                                     std::int64_t max_iters = kDefaultEigMaxIters,
                                     int threads = 1);

// Perron pair of the substochastic interior block of an absorbing chain,
// embedded back with u = 0 on the absorbing set; lambda = 1 - rho is in
// (0, 1) and u is nonnegative.
EigenPair absorbing_dominant_eigenpair(const Graph& g, double tol = kDefaultEigTol,
                                       std::int64_t max_iters = kDefaultEigMaxIters,
                                       int threads = 1);

// Building block for successive eigenpairs: power iteration on P deflated
// against the trivial pair and against the given columns (pi-weighted
// Hotelling deflation, exact when P is reversible). The final residual is
// always verified with apply_laplacian, so an inexact deflation surfaces as
// NoConvergence instead of a wrong pair.
EigenPair next_deflated_eigenpair(const Graph& g, const Vector& pi,
                                  std::span<const Vector> deflate_columns, double tol,
                                  std::int64_t max_iters, int threads);

}  // namespace dgeo
