#pragma once

#include <string>
#include <vector>

#include "nil2kit/nil2.hpp"

namespace nil2kit {

struct BalanceViolation {
    Scalar eigenvalue;
    int mu = 0;      ///< algebraic multiplicity of eigenvalue
    int mu_neg = 0;  ///< algebraic multiplicity of -eigenvalue
};

struct BalanceReport {
    bool balanced = false;
    std::vector<BalanceViolation> violations;
    std::string note;
};

/// Eigenvalue multiset symmetric under negation, multiplicities included.
/// Finite-dimensional only. On the exact backend an irrational spectrum is
/// decided from the characteristic polynomial instead of its roots.
BalanceReport is_balanced(const Matrix& t, const ToleranceConfig& cfg = {});

/// Norm-closure membership in finite dimensions; same as is_balanced(t).balanced.
bool in_closure_cnil2(const Matrix& t, const ToleranceConfig& cfg = {});

struct Approximation {
    Matrix x;
    double distance = 0.0;  ///< ‖x − t‖ in operator norm
    double delta = 0.0;     ///< perturbation scale used, 0 on the fast path
    Witness witness;        ///< certifies x
};

/// A member x of the commutator set with ‖x − t‖ < eps.
/// Throws PreconditionViolation if t is not balanced or eps <= 0, and
/// NumericalFailure if no admissible perturbation scale reaches eps.
Approximation approximate_in_cnil2(const Matrix& t, double eps, const ToleranceConfig& cfg = {});

}  // namespace nil2kit
