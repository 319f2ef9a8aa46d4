#pragma once

#include <stdexcept>
#include <string>

namespace dgeo {

// Every failure the library can signal, one code per condition so callers
// (and the CLI exit-code mapping) can dispatch without string matching.
enum class ErrorCode {
    // graph construction / validation
    non_positive_weight,
    duplicate_edge,
    index_out_of_range,
    empty_row,
    dimension_mismatch,
    // generators
    size_too_small,
    bad_epsilon,
    bad_boundary_count,
    too_few_points,
    duplicate_points,
    // spectral
    not_irreducible,
    no_convergence,
    complex_dominant_pair,
    no_absorbing_set,
    // diffusion
    empty_target,
    bad_threshold,
    // bound checks
    empty_sublevel,
    trivial_eigenvalue,
    not_an_equation_solution,
    negative_u,
    potential_too_large,
    unsupported_family,
    degenerate_input,
    invalid_argument,
    io_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::non_positive_weight: return "NonPositiveWeight";
        case ErrorCode::duplicate_edge: return "DuplicateEdge";
        case ErrorCode::index_out_of_range: return "IndexOutOfRange";
        case ErrorCode::empty_row: return "EmptyRow";
        case ErrorCode::dimension_mismatch: return "DimensionMismatch";
        case ErrorCode::size_too_small: return "SizeTooSmall";
        case ErrorCode::bad_epsilon: return "BadEpsilon";
        case ErrorCode::bad_boundary_count: return "BadBoundaryCount";
        case ErrorCode::too_few_points: return "TooFewPoints";
        case ErrorCode::duplicate_points: return "DuplicatePoints";
        case ErrorCode::not_irreducible: return "NotIrreducible";
        case ErrorCode::no_convergence: return "NoConvergence";
        case ErrorCode::complex_dominant_pair: return "ComplexDominantPair";
        case ErrorCode::no_absorbing_set: return "NoAbsorbingSet";
        case ErrorCode::empty_target: return "EmptyTarget";
        case ErrorCode::bad_threshold: return "BadThreshold";
        case ErrorCode::empty_sublevel: return "EmptySublevel";
        case ErrorCode::trivial_eigenvalue: return "TrivialEigenvalue";
        case ErrorCode::not_an_equation_solution: return "NotAnEquationSolution";
        case ErrorCode::negative_u: return "NegativeU";
        case ErrorCode::potential_too_large: return "PotentialTooLarge";
        case ErrorCode::unsupported_family: return "UnsupportedFamily";
        case ErrorCode::degenerate_input: return "DegenerateInput";
        case ErrorCode::invalid_argument: return "InvalidArgument";
        case ErrorCode::io_error: return "IoError";
    }
    return "UnknownError";
}

}  // namespace dgeo
