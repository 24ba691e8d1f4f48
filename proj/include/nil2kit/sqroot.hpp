#pragma once

#include <string>

#include "nil2kit/jordan.hpp"
#include "nil2kit/matrix.hpp"

namespace nil2kit {

/// q nilpotent with s⁻¹ q² s equal to the input.
struct SqrtCertificate {
    Matrix q;
    Matrix s;
    std::string note;
};

/// Pads a trailing 0 to an odd part count, then requires every consecutive
/// pair (parts[2j], parts[2j+1]) to differ by at most 1.
bool has_nilpotent_square_root(const Partition& p);

/// Perfect shuffle of size m: columns e_1, e_3, ... followed by e_2, e_4, ...
/// Conjugating J_m² by it gives J_⌈m/2⌉ ⊕ J_⌊m/2⌋.
Matrix perfect_shuffle(std::size_t m, Backend b);

/// Throws PreconditionViolation if j is not nilpotent or has no nilpotent square root.
SqrtCertificate nilpotent_square_root(const Matrix& j, const ToleranceConfig& cfg = {});

}  // namespace nil2kit
