#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "nil2kit/scalar.hpp"

namespace nil2kit {

/// Tolerances for the float64 backend. The exact backend treats all of them as 0.
struct ToleranceConfig {
    double rank_tol = 1e-9;         ///< relative singular-value threshold
    double eig_cluster_tol = 1e-7;  ///< single-linkage radius for eigenvalue clusters
    double verify_tol = 1e-9;       ///< absolute bound on certificate residuals

    /// Throws PreconditionViolation unless every field is finite and >= 0.
    void validate() const;
};

/// Dense row-major matrix over Q(i) (exact) or complex double (float64).
/// Values are immutable; every operation returns a new matrix.
class Matrix {
public:
    Matrix() : Matrix(0, 0, Backend::exact) {}

    static Matrix zeros(std::size_t rows, std::size_t cols, Backend b);
    static Matrix identity(std::size_t n, Backend b);
    static Matrix exact(std::size_t rows, std::size_t cols, std::vector<GaussQ> data);
    static Matrix float64(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    /// Integer-valued exact matrix from nested rows; convenient for fixtures.
    static Matrix from_ints(const std::vector<std::vector<long>>& rows);
    /// Diagonal matrix built from scalars sharing one backend.
    static Matrix diagonal(const std::vector<Scalar>& entries);
    /// Nilpotent Jordan cell of size n (ones on the superdiagonal).
    static Matrix jordan_cell(std::size_t n, Backend b);
    /// Jordan cell with eigenvalue lambda.
    static Matrix jordan_cell(std::size_t n, const Scalar& lambda);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    Backend backend() const {
        return std::holds_alternative<std::vector<GaussQ>>(data_) ? Backend::exact
                                                                  : Backend::float64;
    }
    bool is_exact() const { return backend() == Backend::exact; }

    Scalar at(std::size_t i, std::size_t j) const;

    /// Backend-specific row-major storage; throws BackendMismatch on the wrong backend.
    const std::vector<GaussQ>& exact_data() const;
    const std::vector<Complex>& float_data() const;

    /// Literally zero (float64: every entry == 0).
    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    Matrix(std::size_t rows, std::size_t cols, Backend b);
    Matrix(std::size_t rows, std::size_t cols, std::variant<std::vector<GaussQ>, std::vector<Complex>> d)
        : rows_(rows), cols_(cols), data_(std::move(d)) {}

    std::size_t rows_;
    std::size_t cols_;
    std::variant<std::vector<GaussQ>, std::vector<Complex>> data_;
};

Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix scalar_mul(const Scalar& s, const Matrix& a);
Matrix negate(const Matrix& a);
/// ab - ba
Matrix commutator(const Matrix& a, const Matrix& b);
/// ab + ba
Matrix anticommutator(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix direct_sum(std::span<const Matrix> blocks);
Matrix transpose(const Matrix& a);
Matrix adjoint(const Matrix& a);  ///< conjugate transpose
Matrix mat_pow(const Matrix& a, unsigned k);
Scalar trace(const Matrix& a);
/// a - lambda·I
Matrix shift(const Matrix& a, const Scalar& lambda);
/// Columns [first, first + count) of a.
Matrix columns(const Matrix& a, std::size_t first, std::size_t count);
/// Block of a starting at (row, col) with the given extent.
Matrix submatrix(const Matrix& a, std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols);
/// Horizontal concatenation; both sides must share rows and backend.
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix to_float(const Matrix& a);

inline Matrix operator+(const Matrix& a, const Matrix& b) { return mat_add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return mat_sub(a, b); }
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }
inline Matrix operator-(const Matrix& a) { return negate(a); }

/// Exact: fraction-free elimination. Float: singular values above
/// rank_tol × the largest one.
std::size_t rank(const Matrix& a, const ToleranceConfig& cfg = {});
/// Columns form a basis of ker a (cols - rank of them).
Matrix kernel_basis(const Matrix& a, const ToleranceConfig& cfg = {});
/// Exact backend only.
Scalar determinant(const Matrix& a);
/// Solves a·x = b for square invertible a.
Matrix solve(const Matrix& a, const Matrix& b, const ToleranceConfig& cfg = {});
Matrix inverse(const Matrix& a, const ToleranceConfig& cfg = {});
/// s⁻¹ t s
Matrix conjugate(const Matrix& t, const Matrix& s, const ToleranceConfig& cfg = {});

/// Largest singular value, always computed in double precision.
double operator_norm_estimate(const Matrix& a);
/// Smallest singular value (0 for a singular or empty-sided matrix).
double min_singular_value(const Matrix& a);

}  // namespace nil2kit
