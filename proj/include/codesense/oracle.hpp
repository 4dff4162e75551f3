#ifndef CODESENSE_ORACLE_HPP
#define CODESENSE_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "codesense/sensing.hpp"

namespace codesense {

/// S x S Gram matrix of a column subset, entries phi_i^T phi_j, unit diagonal.
struct GramSubmatrix {
    std::vector<std::uint64_t> indices;  // sorted, 1-based column indices
    std::vector<double> gram;            // row-major S x S
};

GramSubmatrix gram_submatrix(const CompactSensingMatrix& sm,
                             std::span<const std::uint64_t> indices);

struct RipConstant {
    std::size_t order = 0;
    double delta = 0.0;
    std::vector<std::uint64_t> witness;  // extremal subset, first in lexicographic order

    nlohmann::json to_json() const;
};

inline constexpr std::uint64_t kSubsetScanGuard = 10'000'000;

/// Exact RIP constant of the given order by scanning all column subsets in
/// lexicographic order; eigenvalues via the in-repo Jacobi iteration.
RipConstant exact_rip_constant(const CompactSensingMatrix& sm, std::size_t order,
                               bool allow_large = false);
RipConstant exact_rip_constant_serial(const CompactSensingMatrix& sm, std::size_t order,
                                      bool allow_large = false);

/// Exact mu(Phi) over the matrix's m columns: integer arithmetic over
/// codeword-pair distances (max |p - 2d| / p), no floating accumulation.
double exact_incoherence(const CompactSensingMatrix& sm, bool allow_large = false);

/// Same maximum over all 2^k - 1 nonzero codewords of the code spanned by G
/// (pairwise distances equal weights of sums, so this matches the
/// weight-distribution route exactly).
double exact_incoherence(const BinaryMatrix& g, bool allow_large = false);

struct SolverSettings {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-8;
    std::size_t max_iterations = 100'000;
};

struct RecoveryProblem {
    CompactSensingMatrix sensing;
    std::vector<double> signal;        // the true sparse e, may be empty when unknown
    std::vector<double> measurement;   // s = Phi e
    SolverSettings settings;
};

RecoveryProblem make_recovery_problem(const CompactSensingMatrix& sm,
                                      std::span<const double> sparse_signal,
                                      SolverSettings settings = {});

struct SolveStatus {
    std::size_t iterations = 0;
    double feasibility_residual = 0.0;
    double splitting_residual = 0.0;
    bool converged = false;  // false when the iteration cap was hit
};

struct BasisPursuitResult {
    std::vector<double> solution;
    SolveStatus status;
};

/// min ||d||_1 s.t. Phi d = s, by ADMM over the splitting d = z with the
/// affine constraint handled by exact projection (pseudoinverse of Phi Phi^T).
/// Deterministic given settings.
BasisPursuitResult basis_pursuit(const RecoveryProblem& prob);

/// Independent ground truth: scans all supports of size <= s_max in
/// lexicographic order, solves each least-squares subproblem by normal
/// equations, and returns the sparsest solution with residual <= 1e-8.
/// Throws NoSparseSolution when nothing consistent exists at that sparsity.
std::vector<double> exhaustive_sparse_oracle(const RecoveryProblem& prob, std::size_t s_max);

}  // namespace codesense

#endif
