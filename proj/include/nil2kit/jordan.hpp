#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nil2kit/matrix.hpp"

namespace nil2kit {

/// Jordan block sizes at one eigenvalue, weakly decreasing.
class Partition {
public:
    Partition() = default;
    /// Throws PreconditionViolation unless parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);
    /// Sorts and drops zeros before validating.
    static Partition from_unsorted(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    std::size_t count() const { return parts_.size(); }
    int total() const;
    bool empty() const { return parts_.empty(); }

    /// Transposed Young diagram.
    Partition conjugate() const;

    friend bool operator==(const Partition&, const Partition&) = default;

    std::string to_string() const;

private:
    std::vector<int> parts_;
};

/// Every partition of n, in reverse-lexicographic order.
std::vector<Partition> partitions_of(int n);

struct SpectrumEntry {
    Scalar eigenvalue;
    Partition partition;

    friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Complete similarity invariant: eigenvalues in canonical (re, im) order,
/// each with its Jordan partition.
struct JordanSpectrum {
    std::vector<SpectrumEntry> entries;
    std::size_t dimension = 0;

    /// Eigenvalues negated and re-sorted; partitions carried along.
    JordanSpectrum negated() const;

    friend bool operator==(const JordanSpectrum&, const JordanSpectrum&) = default;
};

/// s⁻¹ · t · s = canonical, with canonical block-diagonal in spectrum order
/// and blocks of each eigenvalue in descending size.
struct JordanBasis {
    JordanSpectrum spectrum;
    Matrix s;
    Matrix canonical;
};

/// Jordan matrix assembled from a spectrum (blocks in entry order, sizes descending).
Matrix jordan_matrix(const JordanSpectrum& spectrum, Backend backend);

/// Nullities of (t - lambda I)^k for k = 1, 2, ... up to stabilization.
std::vector<std::size_t> weyr_sequence(const Matrix& t, const Scalar& lambda, const ToleranceConfig& cfg = {});

/// Block-size partition at lambda; throws PreconditionViolation when lambda is not an eigenvalue.
Partition partition_at(const Matrix& t, const Scalar& lambda, const ToleranceConfig& cfg = {});

/// Distinct eigenvalues with algebraic multiplicities, in canonical order.
/// Exact backend throws SpectralIrrationality if a root lies outside Q(i).
std::vector<std::pair<Scalar, int>> eigenvalues(const Matrix& t, const ToleranceConfig& cfg = {});

JordanSpectrum jordan_spectrum(const Matrix& t, const ToleranceConfig& cfg = {});

/// Float backend throws NumericalFailure when the conjugation residual exceeds verify_tol.
JordanBasis jordan_basis(const Matrix& t, const ToleranceConfig& cfg = {});

struct InvertibleNilpotentSplit {
    Matrix s;  ///< s⁻¹ t s = b ⊕ q
    Matrix b;  ///< invertible part (possibly 0×0)
    Matrix q;  ///< nilpotent part (possibly 0×0)
};

/// Splits t along ran t^n ⊕ ker t^n, the invertible and nilpotent parts.
InvertibleNilpotentSplit split_invertible_nilpotent(const Matrix& t, const ToleranceConfig& cfg = {});

}  // namespace nil2kit
