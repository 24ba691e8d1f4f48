#pragma once

#include <optional>
#include <string>

#include "nil2kit/jordan.hpp"
#include "nil2kit/matrix.hpp"

namespace nil2kit {

/// A certificate T = [m, n] with m² = n² = 0.
struct Witness {
    Matrix m;
    Matrix n;
    std::string note;
};

enum class ObstructionKind { unpaired_nonzero_spectrum, partition_mismatch, no_nilpotent_square_root };

std::string to_string(ObstructionKind k);

struct Obstruction {
    ObstructionKind kind;
    /// Offending eigenvalue for the two spectral kinds.
    std::optional<Scalar> eigenvalue;
    /// For no_nilpotent_square_root: 1-based index b of the distinct block size
    /// whose prefix multiplicity sum is odd.
    std::optional<int> prefix_index;
    /// Partition(s) involved, for reporting.
    std::optional<Partition> partition;
    std::optional<Partition> partner_partition;
};

struct Decision {
    bool verdict = false;
    std::optional<Obstruction> obstruction;  ///< present iff verdict is no
    std::optional<Witness> witness;          ///< present iff verdict is yes
};

/// Basis in which a square-zero m reads [[0, I_r], [0, 0]] ⊕ 0.
struct SquareZeroCanonical {
    Matrix s;
    std::size_t rank_s = 0;
};

struct VerifyReport {
    bool passed = false;
    double m_squared = 0.0;   ///< ‖m²‖
    double n_squared = 0.0;   ///< ‖n²‖
    double commutator = 0.0;  ///< ‖[m, n] − t‖
};

/// Membership test for a nilpotent Jordan partition, via block-size classes:
/// wherever consecutive distinct sizes drop by two or more (or the last size is
/// at least 2), the number of blocks up to there must be even.
bool nilpotent_partition_in_cnil2(const Partition& p);

/// The first class index b violating the rule above, if any.
std::optional<int> cnil2_prefix_violation(const Partition& p);

Decision decide_cnil2(const Matrix& t, const ToleranceConfig& cfg = {});

/// Throws PreconditionViolation when t is not a commutator of square-zero matrices.
Witness synthesize_witness(const Matrix& t, const ToleranceConfig& cfg = {});

VerifyReport verify_witness(const Matrix& t, const Witness& w, const ToleranceConfig& cfg = {});

SquareZeroCanonical square_zero_canonical(const Matrix& m, const ToleranceConfig& cfg = {});

/// mt + tm = 0 and nt + tn = 0.
bool anticommutation_check(const Matrix& t, const Witness& w, const ToleranceConfig& cfg = {});

}  // namespace nil2kit
