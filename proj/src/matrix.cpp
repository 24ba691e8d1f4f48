#include "nil2kit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

namespace nil2kit {

void ToleranceConfig::validate() const {
    for (double v : {rank_tol, eig_cluster_tol, verify_tol}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw PreconditionViolation("tolerances must be finite and non-negative");
        }
    }
}

// ---------------------------------------------------------------------------
// construction and access

Matrix::Matrix(std::size_t rows, std::size_t cols, Backend b) : rows_(rows), cols_(cols) {
    if (b == Backend::exact) {
        data_ = std::vector<GaussQ>(rows * cols);
    } else {
        data_ = std::vector<Complex>(rows * cols);
    }
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols, Backend b) { return Matrix(rows, cols, b); }

Matrix Matrix::identity(std::size_t n, Backend b) {
    if (b == Backend::exact) {
        std::vector<GaussQ> d(n * n);
        for (std::size_t i = 0; i < n; ++i) d[i * n + i] = GaussQ(1);
        return exact(n, n, std::move(d));
    }
    std::vector<Complex> d(n * n);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
    return float64(n, n, std::move(d));
}

Matrix Matrix::exact(std::size_t rows, std::size_t cols, std::vector<GaussQ> data) {
    if (data.size() != rows * cols) throw DimensionMismatch("data length differs from rows*cols");
    return Matrix(rows, cols, std::move(data));
}

Matrix Matrix::float64(std::size_t rows, std::size_t cols, std::vector<Complex> data) {
    if (data.size() != rows * cols) throw DimensionMismatch("data length differs from rows*cols");
    return Matrix(rows, cols, std::move(data));
}

Matrix Matrix::from_ints(const std::vector<std::vector<long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    std::vector<GaussQ> d;
    d.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionMismatch("ragged rows");
        for (long v : row) d.emplace_back(v);
    }
    return exact(r, c, std::move(d));
}

Matrix Matrix::diagonal(const std::vector<Scalar>& entries) {
    const std::size_t n = entries.size();
    const Backend b = n == 0 ? Backend::exact : entries.front().backend();
    Matrix m(n, n, b);
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i].backend() != b) throw BackendMismatch("diagonal entries mix backends");
        if (b == Backend::exact) {
            std::get<0>(m.data_)[i * n + i] = entries[i].exact();
        } else {
            std::get<1>(m.data_)[i * n + i] = entries[i].value();
        }
    }
    return m;
}

Matrix Matrix::jordan_cell(std::size_t n, Backend b) { return jordan_cell(n, Scalar::zero(b)); }

Matrix Matrix::jordan_cell(std::size_t n, const Scalar& lambda) {
    Matrix m(n, n, lambda.backend());
    std::visit(
        [&](auto& d) {
            using T = typename std::decay_t<decltype(d)>::value_type;
            T l;
            if constexpr (std::is_same_v<T, GaussQ>) {
                l = lambda.exact();
            } else {
                l = lambda.value();
            }
            for (std::size_t i = 0; i < n; ++i) {
                d[i * n + i] = l;
                if (i + 1 < n) d[i * n + i + 1] = T(1);
            }
        },
        m.data_);
    return m;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionMismatch("index out of range");
    if (is_exact()) return Scalar(std::get<0>(data_)[i * cols_ + j]);
    return Scalar(std::get<1>(data_)[i * cols_ + j]);
}

const std::vector<GaussQ>& Matrix::exact_data() const {
    if (auto* d = std::get_if<std::vector<GaussQ>>(&data_)) return *d;
    throw BackendMismatch("exact data requested from a float64 matrix");
}

const std::vector<Complex>& Matrix::float_data() const {
    if (auto* d = std::get_if<std::vector<Complex>>(&data_)) return *d;
    throw BackendMismatch("float data requested from an exact matrix");
}

bool Matrix::is_zero() const {
    if (is_exact()) {
        const auto& d = exact_data();
        return std::all_of(d.begin(), d.end(), [](const GaussQ& q) { return q.is_zero(); });
    }
    const auto& d = float_data();
    return std::all_of(d.begin(), d.end(), [](Complex z) { return z == Complex{}; });
}

// ---------------------------------------------------------------------------
// elementwise and structural operations

namespace {

Matrix make(std::size_t r, std::size_t c, std::vector<GaussQ> d) { return Matrix::exact(r, c, std::move(d)); }
Matrix make(std::size_t r, std::size_t c, std::vector<Complex> d) { return Matrix::float64(r, c, std::move(d)); }

void require_same_backend(const Matrix& a, const Matrix& b, const char* op) {
    if (a.backend() != b.backend()) {
        throw BackendMismatch(std::string(op) + ": operands mix exact and float64");
    }
}

/// Calls f with the typed storage of a (and b), e.g. f(const vector<GaussQ>&, ...).
template <class F>
auto visit1(const Matrix& a, F&& f) {
    if (a.is_exact()) return f(a.exact_data());
    return f(a.float_data());
}

template <class F>
auto visit2(const Matrix& a, const Matrix& b, const char* op, F&& f) {
    require_same_backend(a, b, op);
    if (a.is_exact()) return f(a.exact_data(), b.exact_data());
    return f(a.float_data(), b.float_data());
}

template <class T>
T conj_of(const T& x) {
    if constexpr (std::is_same_v<T, GaussQ>) {
        return x.conj();
    } else {
        return std::conj(x);
    }
}

template <class T>
bool zero_of(const T& x) {
    if constexpr (std::is_same_v<T, GaussQ>) {
        return x.is_zero();
    } else {
        return x == T{};
    }
}

}  // namespace

Matrix mat_add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("mat_add: shapes differ");
    return visit2(a, b, "mat_add", [&](const auto& x, const auto& y) {
        auto r = x;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
        return make(a.rows(), a.cols(), std::move(r));
    });
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("mat_sub: shapes differ");
    return visit2(a, b, "mat_sub", [&](const auto& x, const auto& y) {
        auto r = x;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
        return make(a.rows(), a.cols(), std::move(r));
    });
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    return visit2(a, b, "mat_mul", [&](const auto& x, const auto& y) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        std::vector<T> r(n * m);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < k; ++l) {
                const T& xil = x[i * k + l];
                if (zero_of(xil)) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    if (zero_of(y[l * m + j])) continue;
                    r[i * m + j] += xil * y[l * m + j];
                }
            }
        }
        return make(n, m, std::move(r));
    });
}

Matrix scalar_mul(const Scalar& s, const Matrix& a) {
    if (s.backend() != a.backend()) throw BackendMismatch("scalar_mul: operands mix backends");
    return visit1(a, [&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        T f;
        if constexpr (std::is_same_v<T, GaussQ>) {
            f = s.exact();
        } else {
            f = s.value();
        }
        auto r = x;
        for (auto& v : r) v *= f;
        return make(a.rows(), a.cols(), std::move(r));
    });
}

Matrix negate(const Matrix& a) {
    return visit1(a, [&](const auto& x) {
        auto r = x;
        for (auto& v : r) v = -v;
        return make(a.rows(), a.cols(), std::move(r));
    });
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw DimensionMismatch("commutator: operands must be square of equal size");
    }
    return mat_sub(mat_mul(a, b), mat_mul(b, a));
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw DimensionMismatch("anticommutator: operands must be square of equal size");
    }
    return mat_add(mat_mul(a, b), mat_mul(b, a));
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    std::vector<Matrix> blocks{a, b};
    return direct_sum(blocks);
}

Matrix direct_sum(std::span<const Matrix> blocks) {
    if (blocks.empty()) return Matrix::zeros(0, 0, Backend::exact);
    const Backend be = blocks.front().backend();
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        if (b.backend() != be) throw BackendMismatch("direct_sum: blocks mix backends");
        r += b.rows();
        c += b.cols();
    }
    auto build = [&](auto tag) {
        using T = decltype(tag);
        std::vector<T> d(r * c);
        std::size_t ro = 0, co = 0;
        for (const auto& b : blocks) {
            const std::vector<T>* src;
            if constexpr (std::is_same_v<T, GaussQ>) {
                src = &b.exact_data();
            } else {
                src = &b.float_data();
            }
            for (std::size_t i = 0; i < b.rows(); ++i) {
                for (std::size_t j = 0; j < b.cols(); ++j) {
                    d[(ro + i) * c + co + j] = (*src)[i * b.cols() + j];
                }
            }
            ro += b.rows();
            co += b.cols();
        }
        return make(r, c, std::move(d));
    };
    return be == Backend::exact ? build(GaussQ{}) : build(Complex{});
}

Matrix transpose(const Matrix& a) {
    return visit1(a, [&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        std::vector<T> r(x.size());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) r[j * a.rows() + i] = x[i * a.cols() + j];
        }
        return make(a.cols(), a.rows(), std::move(r));
    });
}

Matrix adjoint(const Matrix& a) {
    return visit1(a, [&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        std::vector<T> r(x.size());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) r[j * a.rows() + i] = conj_of(x[i * a.cols() + j]);
        }
        return make(a.cols(), a.rows(), std::move(r));
    });
}

Matrix mat_pow(const Matrix& a, unsigned k) {
    if (!a.is_square()) throw DimensionMismatch("mat_pow: matrix must be square");
    Matrix result = Matrix::identity(a.rows(), a.backend());
    Matrix base = a;
    while (k > 0) {
        if (k & 1U) result = mat_mul(result, base);
        k >>= 1U;
        if (k > 0) base = mat_mul(base, base);
    }
    return result;
}

Scalar trace(const Matrix& a) {
    if (!a.is_square()) throw DimensionMismatch("trace: matrix must be square");
    return visit1(a, [&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        T s{};
        for (std::size_t i = 0; i < a.rows(); ++i) s += x[i * a.cols() + i];
        return Scalar(s);
    });
}

Matrix shift(const Matrix& a, const Scalar& lambda) {
    if (!a.is_square()) throw DimensionMismatch("shift: matrix must be square");
    return mat_sub(a, scalar_mul(lambda, Matrix::identity(a.rows(), a.backend())));
}

Matrix columns(const Matrix& a, std::size_t first, std::size_t count) {
    if (first + count > a.cols()) throw DimensionMismatch("columns: range out of bounds");
    return visit1(a, [&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        std::vector<T> r(a.rows() * count);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < count; ++j) r[i * count + j] = x[i * a.cols() + first + j];
        }
        return make(a.rows(), count, std::move(r));
    });
}

Matrix submatrix(const Matrix& a, std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) {
    if (row + nrows > a.rows() || col + ncols > a.cols()) throw DimensionMismatch("submatrix: range out of bounds");
    return visit1(a, [&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        std::vector<T> r(nrows * ncols);
        for (std::size_t i = 0; i < nrows; ++i) {
            for (std::size_t j = 0; j < ncols; ++j) r[i * ncols + j] = x[(row + i) * a.cols() + col + j];
        }
        return make(nrows, ncols, std::move(r));
    });
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
    const std::size_t c = a.cols() + b.cols();
    return visit2(a, b, "hstack", [&](const auto& x, const auto& y) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        std::vector<T> r(a.rows() * c);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) r[i * c + j] = x[i * a.cols() + j];
            for (std::size_t j = 0; j < b.cols(); ++j) r[i * c + a.cols() + j] = y[i * b.cols() + j];
        }
        return make(a.rows(), c, std::move(r));
    });
}

Matrix to_float(const Matrix& a) {
    if (!a.is_exact()) return a;
    const auto& x = a.exact_data();
    std::vector<Complex> r(x.size());
    std::transform(x.begin(), x.end(), r.begin(), [](const GaussQ& q) { return q.to_complex(); });
    return Matrix::float64(a.rows(), a.cols(), std::move(r));
}

// ---------------------------------------------------------------------------
// exact elimination: Bareiss over the Gaussian integers

namespace {

struct GaussZ {
    mpz_class re{0};
    mpz_class im{0};

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussZ mul(const GaussZ& a, const GaussZ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussZ sub(const GaussZ& a, const GaussZ& b) { return {a.re - b.re, a.im - b.im}; }

/// a / b where b divides a exactly in Z[i].
GaussZ divexact(const GaussZ& a, const GaussZ& b) {
    if (sgn(b.im) == 0) {
        GaussZ r;
        mpz_divexact(r.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
        mpz_divexact(r.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
        return r;
    }
    mpz_class n = b.re * b.re + b.im * b.im;
    GaussZ num = mul(a, GaussZ{b.re, -b.im});
    GaussZ r;
    mpz_divexact(r.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(r.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
    return r;
}

GaussQ to_q(const GaussZ& z) { return GaussQ(mpq_class(z.re), mpq_class(z.im)); }

/// Row echelon form of an integer-scaled copy of a Q(i) matrix.
struct Echelon {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<GaussZ> u;               // row-major, echelon form
    std::vector<std::size_t> pivots;     // pivot column of row k
    std::vector<mpz_class> row_scale;    // original row i was multiplied by row_scale[i]
    std::vector<std::size_t> row_perm;   // echelon row k came from original row row_perm[k]
    int swap_sign = 1;

    GaussZ& at(std::size_t i, std::size_t j) { return u[i * cols + j]; }
    const GaussZ& at(std::size_t i, std::size_t j) const { return u[i * cols + j]; }
};

/// Fraction-free elimination of `data` (rows × cols); pivots are searched only
/// in the first `pivot_cols` columns but every column is updated.
Echelon bareiss(const std::vector<GaussQ>& data, std::size_t rows, std::size_t cols,
                std::size_t pivot_cols) {
    Echelon e;
    e.rows = rows;
    e.cols = cols;
    e.u.resize(rows * cols);
    e.row_scale.resize(rows);
    e.row_perm.resize(rows);
    std::iota(e.row_perm.begin(), e.row_perm.end(), std::size_t{0});

    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            const GaussQ& q = data[i * cols + j];
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.re().get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.im().get_den_mpz_t());
        }
        e.row_scale[i] = l;
        for (std::size_t j = 0; j < cols; ++j) {
            const GaussQ& q = data[i * cols + j];
            GaussZ& z = e.at(i, j);
            z.re = q.re().get_num() * (l / q.re().get_den());
            z.im = q.im().get_num() * (l / q.im().get_den());
        }
    }

    GaussZ prev{1, 0};
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && e.at(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(e.at(p, j), e.at(r, j));
            std::swap(e.row_perm[p], e.row_perm[r]);
            e.swap_sign = -e.swap_sign;
        }
        const GaussZ piv = e.at(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const GaussZ lead = e.at(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                GaussZ v = sub(mul(piv, e.at(i, j)), mul(lead, e.at(r, j)));
                e.at(i, j) = divexact(v, prev);
            }
            e.at(i, c) = GaussZ{};
        }
        prev = piv;
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

/// Solves the echelon system for the given right-hand side column values
/// (already in echelon coordinates) with free variables preset in x.
void back_substitute(const Echelon& e, std::vector<GaussQ>& x, std::size_t ncols,
                     const std::vector<GaussQ>& rhs) {
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
        const std::size_t pc = e.pivots[k];
        GaussQ acc = rhs[k];
        for (std::size_t j = pc + 1; j < ncols; ++j) {
            if (x[j].is_zero() || e.at(k, j).is_zero()) continue;
            acc -= to_q(e.at(k, j)) * x[j];
        }
        x[pc] = acc / to_q(e.at(k, pc));
    }
}

// ---------------------------------------------------------------------------
// float helpers

Eigen::MatrixXcd to_eigen(const Matrix& a) {
    Matrix f = to_float(a);
    const auto& d = f.float_data();
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = d[i * a.cols() + j];
    }
    return m;
}

Matrix from_eigen(const Eigen::MatrixXcd& m) {
    std::vector<Complex> d(static_cast<std::size_t>(m.rows() * m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) d[i * m.cols() + j] = m(i, j);
    }
    return Matrix::float64(m.rows(), m.cols(), std::move(d));
}

Eigen::VectorXd singular_values(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    return svd.singularValues();
}

std::size_t float_rank(const Eigen::VectorXd& sv, double tol) {
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol * sv(0)) ++r;
    }
    return r;
}

}  // namespace

std::size_t rank(const Matrix& a, const ToleranceConfig& cfg) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    if (a.is_exact()) return bareiss(a.exact_data(), a.rows(), a.cols(), a.cols()).pivots.size();
    return float_rank(singular_values(a), cfg.rank_tol);
}

Matrix kernel_basis(const Matrix& a, const ToleranceConfig& cfg) {
    const std::size_t n = a.cols();
    if (a.rows() == 0) return Matrix::identity(n, a.backend());
    if (a.is_exact()) {
        Echelon e = bareiss(a.exact_data(), a.rows(), n, n);
        std::vector<bool> is_pivot(n, false);
        for (auto p : e.pivots) is_pivot[p] = true;
        std::vector<std::size_t> free;
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_pivot[j]) free.push_back(j);
        }
        std::vector<GaussQ> out(n * free.size());
        const std::vector<GaussQ> rhs(e.pivots.size());
        for (std::size_t f = 0; f < free.size(); ++f) {
            std::vector<GaussQ> x(n);
            x[free[f]] = GaussQ(1);
            back_substitute(e, x, n, rhs);
            for (std::size_t i = 0; i < n; ++i) out[i * free.size() + f] = std::move(x[i]);
        }
        return Matrix::exact(n, free.size(), std::move(out));
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a), Eigen::ComputeFullV);
    const std::size_t r = float_rank(svd.singularValues(), cfg.rank_tol);
    const Eigen::MatrixXcd& v = svd.matrixV();
    return from_eigen(v.rightCols(static_cast<Eigen::Index>(n - r)));
}

Scalar determinant(const Matrix& a) {
    if (!a.is_square()) throw DimensionMismatch("determinant: matrix must be square");
    if (!a.is_exact()) throw BackendMismatch("determinant is provided on the exact backend only");
    const std::size_t n = a.rows();
    if (n == 0) return Scalar(GaussQ(1));
    Echelon e = bareiss(a.exact_data(), n, n, n);
    if (e.pivots.size() < n) return Scalar(GaussQ{});
    GaussQ d = to_q(e.at(n - 1, n - 1));
    mpz_class scale = 1;
    for (const auto& s : e.row_scale) scale *= s;
    d /= GaussQ(mpq_class(scale));
    if (e.swap_sign < 0) d = -d;
    return Scalar(d);
}

Matrix solve(const Matrix& a, const Matrix& b, const ToleranceConfig& cfg) {
    if (!a.is_square()) throw DimensionMismatch("solve: coefficient matrix must be square");
    if (a.rows() != b.rows()) throw DimensionMismatch("solve: right-hand side has wrong row count");
    require_same_backend(a, b, "solve");
    const std::size_t n = a.rows(), m = b.cols();
    if (n == 0) return Matrix::zeros(0, m, a.backend());
    if (a.is_exact()) {
        Matrix aug = hstack(a, b);
        Echelon e = bareiss(aug.exact_data(), n, n + m, n);
        if (e.pivots.size() < n) throw SingularMatrix("solve: matrix is singular");
        std::vector<GaussQ> out(n * m);
        for (std::size_t c = 0; c < m; ++c) {
            std::vector<GaussQ> rhs(n);
            for (std::size_t k = 0; k < n; ++k) rhs[k] = to_q(e.at(k, n + c));
            std::vector<GaussQ> x(n);
            back_substitute(e, x, n, rhs);
            for (std::size_t i = 0; i < n; ++i) out[i * m + c] = std::move(x[i]);
        }
        return Matrix::exact(n, m, std::move(out));
    }
    Eigen::MatrixXcd ea = to_eigen(a);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ea);
    if (float_rank(svd.singularValues(), cfg.rank_tol) < n) {
        throw SingularMatrix("solve: matrix is numerically singular");
    }
    return from_eigen(ea.fullPivLu().solve(to_eigen(b)));
}

Matrix inverse(const Matrix& a, const ToleranceConfig& cfg) {
    return solve(a, Matrix::identity(a.rows(), a.backend()), cfg);
}

Matrix conjugate(const Matrix& t, const Matrix& s, const ToleranceConfig& cfg) {
    if (!t.is_square() || !s.is_square() || t.rows() != s.rows()) {
        throw DimensionMismatch("conjugate: t and s must be square of equal size");
    }
    return mat_mul(solve(s, t, cfg), s);
}

double operator_norm_estimate(const Matrix& a) {
    Eigen::VectorXd sv = singular_values(a);
    return sv.size() == 0 ? 0.0 : sv(0);
}

double min_singular_value(const Matrix& a) {
    Eigen::VectorXd sv = singular_values(a);
    if (sv.size() == 0 || a.rows() != a.cols()) return 0.0;
    return sv(sv.size() - 1);
}

}  // namespace nil2kit
