#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nil2kit/nil2.hpp"

namespace nil2kit {

struct FuzzConfig {
    std::uint64_t seed = 1;
    int trials = 100;
    int max_dim = 8;
    /// Bound on numerators and denominators of random exact entries.
    int entry_bound = 3;

    void validate() const;
};

struct FuzzFailure {
    int trial = 0;
    std::string property;
    std::string detail;
    Matrix m;  ///< reproduction data; empty for unitary searches
    Matrix n;
};

struct FuzzReport {
    int trials_run = 0;
    std::vector<FuzzFailure> failures;
    /// Unitary searches only: smallest ‖c*c − I‖ seen, c = uv − vu.
    std::optional<double> min_defect;
};

/// Independent random stream for one trial of a seeded run.
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial);

/// Exact square-zero matrix P·([[0, A], [0, 0]] ⊕ 0)·P⁻¹ with rank(A) drawn from 0..min(n/2, max_rank).
/// A negative max_rank means no cap.
Matrix random_square_zero(std::size_t n, const FuzzConfig& cfg, std::mt19937_64& rng, int max_rank = -1);

/// Unit-lower times unit-upper with small integer entries; exactly invertible with integer inverse.
Matrix random_unimodular(std::size_t n, std::mt19937_64& rng);

/// Per trial: draws square-zero m, n, sets t = [m, n] and checks membership,
/// trace 0, t ∼ −t, anticommutation, the nullity identity, the nilpotent
/// order bound and membership of (m + n)².
FuzzReport fuzz_membership(const FuzzConfig& cfg, const ToleranceConfig& tol = {});

/// dim ker (t − αI)^k == dim ker (t + αI)^k; alpha = 0 is rejected.
bool nullity_identity_check(const Matrix& t, const Scalar& alpha, unsigned k, const ToleranceConfig& cfg = {});

struct UnitaryCommutator {
    Matrix u;
    Matrix v;
    Matrix w;
    double residual = 0.0;  ///< ‖uv − vu − w‖
    double defect = 0.0;    ///< max of ‖u*u − I‖, ‖v*v − I‖
};

/// Unitary u, v with uv − vu = w, for w a 2×2 trace-zero unitary (float backend).
UnitaryCommutator unitary_commutator_2x2(const Matrix& w, const ToleranceConfig& cfg = {});

/// w = diag(α, −α, β, −β) as a direct sum of two 2×2 constructions.
UnitaryCommutator unitary_commutator_4x4_paired(const Scalar& alpha, const Scalar& beta,
                                                const ToleranceConfig& cfg = {});

/// Haar-like random unitary from QR of a complex Gaussian matrix.
Matrix random_unitary(std::size_t n, std::mt19937_64& rng);

/// Random 2×2 unitary with trace 0.
Matrix random_trace_zero_unitary(std::mt19937_64& rng);

/// ‖c*c − I‖ for c = uv − vu.
double commutator_unitarity_defect(const Matrix& u, const Matrix& v);

/// Samples random unitary pairs in dimension 3 and records the smallest
/// unitarity defect of their commutator. A defect below `floor` is reported
/// as a failure. Sampling only corroborates; it proves nothing.
FuzzReport search_unitary_3x3(const FuzzConfig& cfg, double floor = 0.05);

/// Control for the search: dimension-2 trace-zero unitaries through the
/// explicit construction; min_defect should be ≈ 0.
FuzzReport control_unitary_2x2(const FuzzConfig& cfg);

}  // namespace nil2kit
