#include "nil2kit/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include <Eigen/LU>
#include <Eigen/QR>

namespace nil2kit {

void FuzzConfig::validate() const {
    if (trials < 1) throw PreconditionViolation("fuzz: trials must be at least 1");
    if (max_dim < 2) throw PreconditionViolation("fuzz: max_dim must be at least 2");
    if (entry_bound < 1) throw PreconditionViolation("fuzz: entry_bound must be at least 1");
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 finaliser over (seed, trial)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return std::mt19937_64(z);
}

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// (a + bi) / q with |a|, |b| ≤ bound and 1 ≤ q ≤ bound.
GaussQ random_entry(std::mt19937_64& rng, int bound) {
    const long a = uniform(rng, -bound, bound);
    const long b = uniform(rng, 0, 3) == 0 ? uniform(rng, -bound, bound) : 0;
    const long q = uniform(rng, 1, bound);
    return GaussQ(mpq_class(a, q), mpq_class(b, q));
}

Matrix random_exact(std::size_t r, std::size_t c, std::mt19937_64& rng, int bound) {
    std::vector<GaussQ> d(r * c);
    for (auto& x : d) x = random_entry(rng, bound);
    return Matrix::exact(r, c, std::move(d));
}

/// Small Gaussian integer, mostly real.
GaussQ small_int(std::mt19937_64& rng) {
    const long a = uniform(rng, -2, 2);
    const long b = uniform(rng, 0, 4) == 0 ? uniform(rng, -1, 1) : 0;
    return GaussQ(mpq_class(a), mpq_class(b));
}

/// Block upper-triangular with unimodular diagonal blocks, for the given block sizes.
Matrix block_flag_similarity(const std::vector<std::size_t>& sizes, std::mt19937_64& rng) {
    std::size_t n = 0;
    for (auto s : sizes) n += s;
    std::vector<GaussQ> d(n * n);
    std::size_t off = 0;
    for (auto s : sizes) {
        const Matrix blk = random_unimodular(s, rng);
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) d[(off + i) * n + off + j] = blk.exact_data()[i * s + j];
            for (std::size_t j = off + s; j < n; ++j) d[(off + i) * n + j] = small_int(rng);
        }
        off += s;
    }
    return Matrix::exact(n, n, std::move(d));
}

/// Block-diagonal square-zero: 2×2 blocks are u vᵀ with vᵀu = 0, 1×1 blocks are 0.
Matrix block_square_zero(const std::vector<std::size_t>& sizes, std::mt19937_64& rng, int bound) {
    std::vector<Matrix> blocks;
    for (auto s : sizes) {
        if (s == 1 || uniform(rng, 0, 3) == 0) {
            blocks.push_back(Matrix::zeros(s, s, Backend::exact));
            continue;
        }
        GaussQ a = small_int(rng), b = small_int(rng);
        if (a.is_zero() && b.is_zero()) a = GaussQ(1);
        const GaussQ c = random_entry(rng, bound);
        const GaussQ c_nz = c.is_zero() ? GaussQ(1) : c;
        // u = (a, b), v = c (−b, a)
        blocks.push_back(Matrix::exact(2, 2, {-a * b * c_nz, a * a * c_nz, -b * b * c_nz, a * b * c_nz}));
    }
    return direct_sum(blocks);
}

std::vector<std::size_t> random_block_sizes(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> sizes;
    std::size_t left = n;
    while (left > 0) {
        const std::size_t s = left >= 2 && uniform(rng, 0, 2) != 0 ? 2 : 1;
        sizes.push_back(s);
        left -= s;
    }
    return sizes;
}

/// R·J·R⁻¹ for a random Jordan matrix J whose eigenvalues repeat within a small Gaussian-integer set.
Matrix random_jordan_conjugate(std::size_t n, std::mt19937_64& rng) {
    static const std::vector<GaussQ> pool = {GaussQ(0), GaussQ(1), GaussQ(-1), GaussQ(2), GaussQ(0, 1), GaussQ(1, 1)};
    std::vector<Matrix> cells;
    std::size_t left = n;
    while (left > 0) {
        const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(std::min<std::size_t>(left, 3))));
        const GaussQ& lambda = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))];
        cells.push_back(Matrix::jordan_cell(k, Scalar(lambda)));
        left -= k;
    }
    const Matrix r = random_unimodular(n, rng);
    return r * direct_sum(cells) * inverse(r);
}

/// m = G [[0, A], [0, 0]] G⁻¹, n = G [[0, 0], [B, 0]] G⁻¹ with AB and BA sharing a
/// Gaussian-rational compression Y11, so [m, n] = AB ⊕ −BA has rich Jordan structure.
std::pair<Matrix, Matrix> random_block_pair(std::size_t n, std::mt19937_64& rng) {
    const std::size_t h = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n / 2)));
    const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(h)));
    const Backend be = Backend::exact;
    std::vector<GaussQ> y(h * h);
    const Matrix y11 = random_jordan_conjugate(r, rng);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) y[i * h + j] = i < r && j < r ? y11.exact_data()[i * r + j] : small_int(rng);
    }
    const Matrix ymat = Matrix::exact(h, h, std::move(y));
    std::vector<Scalar> proj(h, Scalar::zero(be));
    for (std::size_t i = 0; i < r; ++i) proj[i] = Scalar::one(be);
    const Matrix p = random_unimodular(h, rng), q = random_unimodular(h, rng);
    const Matrix a = p * Matrix::diagonal(proj) * q;
    const Matrix b = inverse(q) * ymat * inverse(p);
    const Matrix z = Matrix::zeros(h, h, be);
    // [[0, a], [0, 0]] and [[0, 0], [b, 0]]
    Matrix m0 = hstack(Matrix::zeros(2 * h, h, be), transpose(hstack(transpose(a), z)));
    Matrix n0 = hstack(transpose(hstack(z, transpose(b))), Matrix::zeros(2 * h, h, be));
    if (n > 2 * h) {
        m0 = direct_sum(m0, Matrix::zeros(n - 2 * h, n - 2 * h, be));
        n0 = direct_sum(n0, Matrix::zeros(n - 2 * h, n - 2 * h, be));
    }
    const Matrix g = random_unimodular(n, rng);
    const Matrix ginv = inverse(g);
    return {g * m0 * ginv, g * n0 * ginv};
}

/// Nullity sequences of (t ∓ αI)^k, k = 1..n, compared until both stabilise.
bool nullities_agree(const Matrix& t, const Scalar& alpha, const ToleranceConfig& cfg, std::string& detail) {
    const std::size_t n = t.rows();
    const Matrix a = shift(t, alpha);
    const Matrix b = shift(t, -alpha);
    Matrix ak = a, bk = b;
    std::size_t prev_a = n + 1, prev_b = n + 1;
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t ra = rank(ak, cfg), rb = rank(bk, cfg);
        if (ra != rb) {
            std::ostringstream os;
            os << "alpha=" << alpha.to_string() << " k=" << k << ": nullities " << n - ra << " vs " << n - rb;
            detail = os.str();
            return false;
        }
        if (ra == prev_a && rb == prev_b) break;
        prev_a = ra;
        prev_b = rb;
        ak = ak * a;
        bk = bk * b;
    }
    return true;
}

std::string exception_detail(const std::exception& e) { return std::string("exception: ") + e.what(); }

}  // namespace

Matrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
    std::vector<GaussQ> lo(n * n), up(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i * n + i] = GaussQ(1);
        up[i * n + i] = GaussQ(1);
        for (std::size_t j = 0; j < i; ++j) {
            lo[i * n + j] = GaussQ(uniform(rng, -2, 2));
            up[j * n + i] = GaussQ(uniform(rng, -2, 2));
        }
    }
    return Matrix::exact(n, n, std::move(lo)) * Matrix::exact(n, n, std::move(up));
}

Matrix random_square_zero(std::size_t n, const FuzzConfig& cfg, std::mt19937_64& rng, int max_rank) {
    if (n == 0) throw PreconditionViolation("random_square_zero: n must be positive");
    const std::size_t h = n / 2;
    std::size_t cap = h;
    if (max_rank >= 0) cap = std::min(cap, static_cast<std::size_t>(max_rank));
    const std::size_t r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(cap)));
    if (h == 0 || r == 0) return Matrix::zeros(n, n, Backend::exact);
    const Matrix a = random_exact(h, r, rng, cfg.entry_bound) * random_exact(r, h, rng, cfg.entry_bound);
    // [[0, a], [0, 0]]
    Matrix m0 = hstack(Matrix::zeros(2 * h, h, Backend::exact),
                transpose(hstack(transpose(a), Matrix::zeros(h, h, Backend::exact))));
    if (n % 2 != 0) m0 = direct_sum(m0, Matrix::zeros(1, 1, Backend::exact));
    const Matrix p = random_unimodular(n, rng);
    return p * m0 * inverse(p);
}

bool nullity_identity_check(const Matrix& t, const Scalar& alpha, unsigned k, const ToleranceConfig& cfg) {
    if (alpha.is_zero()) throw PreconditionViolation("nullity_identity_check: alpha must be nonzero");
    if (k == 0) throw PreconditionViolation("nullity_identity_check: k must be positive");
    return rank(mat_pow(shift(t, alpha), k), cfg) == rank(mat_pow(shift(t, -alpha), k), cfg);
}

FuzzReport fuzz_membership(const FuzzConfig& cfg, const ToleranceConfig& tol) {
    cfg.validate();
    FuzzReport report;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        std::mt19937_64 rng = trial_stream(cfg.seed, static_cast<std::uint64_t>(trial));
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, cfg.max_dim));
        Matrix m, nn;
        const long mode = uniform(rng, 0, 19);
        if (mode == 0) {
            m = random_square_zero(n, cfg, rng);
            nn = m;
        } else if (mode < 8) {
            const auto sizes = random_block_sizes(n, rng);
            const Matrix g = random_unimodular(n, rng);
            const Matrix ginv = inverse(g);
            const Matrix u = block_flag_similarity(sizes, rng);
            const Matrix v = block_flag_similarity(sizes, rng);
            m = g * u * block_square_zero(sizes, rng, cfg.entry_bound) * inverse(u) * ginv;
            nn = g * v * block_square_zero(sizes, rng, cfg.entry_bound) * inverse(v) * ginv;
        } else if (mode < 12) {
            m = random_square_zero(n, cfg, rng, 1);
            nn = random_square_zero(n, cfg, rng);
            if (uniform(rng, 0, 1) == 0) std::swap(m, nn);
        } else {
            std::tie(m, nn) = random_block_pair(n, rng);
        }
        ++report.trials_run;
        auto fail = [&](const std::string& prop, const std::string& detail) {
            report.failures.push_back({trial, prop, detail, m, nn});
        };
        try {
            if (!(m * m).is_zero() || !(nn * nn).is_zero()) {
                fail("generator_square_zero", "generated factor is not square-zero");
                continue;
            }
            const Matrix t = commutator(m, nn);
            const Decision d = decide_cnil2(t, tol);
            if (!d.verdict) {
                fail("decide_yes", "decide_cnil2 returned no (" + to_string(d.obstruction->kind) + ")");
                continue;
            }
            if (!verify_witness(t, *d.witness, tol).passed) fail("witness_verifies", "synthesized witness fails");
            if (!trace(t).is_zero()) fail("trace_zero", "trace " + trace(t).to_string());
            const JordanSpectrum spec = jordan_spectrum(t, tol);
            if (!(jordan_spectrum(-t, tol) == spec.negated())) fail("similar_to_negative", "spectra of t and -t differ");
            if (!anticommutation_check(t, Witness{m, nn, ""}, tol) || !anticommutation_check(t, *d.witness, tol)) {
                fail("anticommutation", "mt + tm or nt + tn nonzero");
            }
            bool nilpotent = true;
            for (const auto& e : spec.entries) {
                if (e.eigenvalue.is_zero()) continue;
                nilpotent = false;
                std::string detail;
                if (!nullities_agree(t, e.eigenvalue, tol, detail)) fail("nullity_identity", detail);
            }
            if (nilpotent) {
                if (!mat_pow(t, static_cast<unsigned>((n + 1) / 2)).is_zero()) {
                    fail("nilpotent_order_bound", "t^floor((n+1)/2) nonzero");
                }
                const Matrix s = m + nn;
                if (!decide_cnil2(s * s, tol).verdict) fail("jordan_product", "(m+n)^2 not a member");
            }
        } catch (const std::exception& e) {
            fail("exception", exception_detail(e));
        }
    }
    return report;
}

namespace {

Eigen::MatrixXcd to_eigen(const Matrix& a) {
    const Matrix f = a.is_exact() ? to_float(a) : a;
    Eigen::MatrixXcd e(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < f.cols(); ++j) e(i, j) = f.float_data()[i * f.cols() + j];
    }
    return e;
}

Matrix from_eigen(const Eigen::MatrixXcd& e) {
    std::vector<Complex> d;
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        for (Eigen::Index j = 0; j < e.cols(); ++j) d.push_back(e(i, j));
    }
    return Matrix::float64(e.rows(), e.cols(), std::move(d));
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
    return operator_norm_estimate(from_eigen(u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())));
}

}  // namespace

UnitaryCommutator unitary_commutator_2x2(const Matrix& w_in, const ToleranceConfig& cfg) {
    if (w_in.rows() != 2 || w_in.cols() != 2) throw DimensionMismatch("unitary_commutator_2x2: w must be 2x2");
    const Eigen::MatrixXcd w = to_eigen(w_in);
    if (unitarity_defect(w) > cfg.verify_tol) throw PreconditionViolation("unitary_commutator_2x2: w is not unitary");
    if (std::abs(w.trace()) > cfg.verify_tol) throw PreconditionViolation("unitary_commutator_2x2: trace of w is not 0");

    // Eigenvalues ±θ with θ² = −det w.
    Complex theta = std::sqrt(-w.determinant());
    if (theta.real() < 0 || (theta.real() == 0 && theta.imag() < 0)) theta = -theta;

    // Unit eigenvector for θ from whichever row of w − θI is better conditioned.
    Eigen::Vector2cd v1(w(0, 1), theta - w(0, 0));
    const Eigen::Vector2cd alt(theta - w(1, 1), w(1, 0));
    if (alt.norm() > v1.norm()) v1 = alt;
    v1.normalize();
    Eigen::Matrix2cd q;
    q << v1(0), std::conj(v1(1)), v1(1), -std::conj(v1(0));
    Eigen::Matrix2cd h;
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    const Eigen::Matrix2cd g = q * h;

    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd u0, v0;
    u0 << 1.0, 0.0, 0.0, i;
    v0 << 1.0, 1.0, -1.0, 1.0;
    v0 *= (1.0 + i) / 2.0;

    const Eigen::Matrix2cd u = g * (theta * u0) * g.adjoint();
    const Eigen::Matrix2cd v = g * v0 * g.adjoint();
    UnitaryCommutator out{from_eigen(u), from_eigen(v), from_eigen(w), 0.0, 0.0};
    out.residual = operator_norm_estimate(from_eigen(u * v - v * u - w));
    out.defect = std::max(unitarity_defect(u), unitarity_defect(v));
    return out;
}

UnitaryCommutator unitary_commutator_4x4_paired(const Scalar& alpha, const Scalar& beta, const ToleranceConfig& cfg) {
    const Complex a = alpha.value(), b = beta.value();
    if (std::abs(std::abs(a) - 1.0) > cfg.verify_tol || std::abs(std::abs(b) - 1.0) > cfg.verify_tol) {
        throw PreconditionViolation("unitary_commutator_4x4_paired: alpha and beta must have modulus 1");
    }
    const auto w1 = unitary_commutator_2x2(Matrix::float64(2, 2, {a, 0.0, 0.0, -a}), cfg);
    const auto w2 = unitary_commutator_2x2(Matrix::float64(2, 2, {b, 0.0, 0.0, -b}), cfg);
    UnitaryCommutator out{direct_sum(w1.u, w2.u), direct_sum(w1.v, w2.v), direct_sum(w1.w, w2.w), 0.0, 0.0};
    out.residual = operator_norm_estimate(commutator(out.u, out.v) - out.w);
    out.defect = std::max(unitarity_defect(to_eigen(out.u)), unitarity_defect(to_eigen(out.v)));
    return out;
}

Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = gauss(rng);
            z(i, j) = Complex(re, gauss(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    // Fix column phases by R's diagonal so the distribution is Haar.
    const Eigen::MatrixXcd r = qr.matrixQR();
    for (std::size_t j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return from_eigen(q);
}

Matrix random_trace_zero_unitary(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const Complex theta = std::polar(1.0, angle(rng));
    const Eigen::MatrixXcd q = to_eigen(random_unitary(2, rng));
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = theta;
    d(1, 1) = -theta;
    return from_eigen(q * d * q.adjoint());
}

double commutator_unitarity_defect(const Matrix& u, const Matrix& v) {
    const Eigen::MatrixXcd a = to_eigen(u), b = to_eigen(v);
    return unitarity_defect(a * b - b * a);
}

FuzzReport search_unitary_3x3(const FuzzConfig& cfg, double floor) {
    if (cfg.trials < 1) throw PreconditionViolation("search_unitary_3x3: trials must be at least 1");
    FuzzReport report;
    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < cfg.trials; ++trial) {
        std::mt19937_64 rng = trial_stream(cfg.seed, static_cast<std::uint64_t>(trial));
        const Matrix u = random_unitary(3, rng);
        const Matrix v = random_unitary(3, rng);
        const double defect = commutator_unitarity_defect(u, v);
        ++report.trials_run;
        if (defect < best) best = defect;
        if (defect < floor) {
            std::ostringstream os;
            os << "defect " << defect << " below floor " << floor;
            report.failures.push_back({trial, "unitary_defect_floor", os.str(), u, v});
        }
    }
    report.min_defect = best;
    return report;
}

FuzzReport control_unitary_2x2(const FuzzConfig& cfg) {
    if (cfg.trials < 1) throw PreconditionViolation("control_unitary_2x2: trials must be at least 1");
    FuzzReport report;
    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < cfg.trials; ++trial) {
        std::mt19937_64 rng = trial_stream(cfg.seed, static_cast<std::uint64_t>(trial));
        const auto c = unitary_commutator_2x2(random_trace_zero_unitary(rng));
        ++report.trials_run;
        best = std::min(best, commutator_unitarity_defect(c.u, c.v));
    }
    report.min_defect = best;
    return report;
}

}  // namespace nil2kit
