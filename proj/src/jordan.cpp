#include "nil2kit/jordan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "poly.hpp"

namespace nil2kit {

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw PreconditionViolation("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) {
            throw PreconditionViolation("partition parts must be weakly decreasing");
        }
    }
}

Partition Partition::from_unsorted(std::vector<int> parts) {
    std::erase(parts, 0);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

int Partition::total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::conjugate() const {
    std::vector<int> c;
    if (parts_.empty()) return Partition{};
    for (int k = 1; k <= parts_.front(); ++k) {
        int n = 0;
        for (int p : parts_) n += p >= k ? 1 : 0;
        c.push_back(n);
    }
    return Partition(std::move(c));
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ']';
    return os.str();
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

JordanSpectrum JordanSpectrum::negated() const {
    JordanSpectrum r;
    r.dimension = dimension;
    for (const auto& e : entries) r.entries.push_back({-e.eigenvalue, e.partition});
    std::sort(r.entries.begin(), r.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return canonical_less(a.eigenvalue, b.eigenvalue); });
    return r;
}

Matrix jordan_matrix(const JordanSpectrum& spectrum, Backend backend) {
    std::vector<Matrix> blocks;
    for (const auto& e : spectrum.entries) {
        if (e.eigenvalue.backend() != backend) throw BackendMismatch("spectrum backend differs from requested");
        for (int k : e.partition.parts()) blocks.push_back(Matrix::jordan_cell(static_cast<std::size_t>(k), e.eigenvalue));
    }
    if (blocks.empty()) return Matrix::zeros(0, 0, backend);
    return direct_sum(blocks);
}

// ---------------------------------------------------------------------------
// Weyr sequences and partitions

std::vector<std::size_t> weyr_sequence(const Matrix& t, const Scalar& lambda, const ToleranceConfig& cfg) {
    if (!t.is_square()) throw DimensionMismatch("weyr_sequence: matrix must be square");
    const std::size_t n = t.rows();
    const Matrix shifted = shift(t, lambda);
    std::vector<std::size_t> seq;
    Matrix power = shifted;
    std::size_t prev = 0;
    for (std::size_t k = 1; k <= std::max<std::size_t>(n, 1); ++k) {
        const std::size_t nul = n - rank(power, cfg);
        if (k > 1 && nul == prev) break;
        seq.push_back(nul);
        if (nul == 0 || nul == n) break;
        prev = nul;
        power = mat_mul(power, shifted);
    }
    return seq;
}

namespace {

Partition partition_from_weyr(const std::vector<std::size_t>& weyr) {
    std::vector<int> increments;
    std::size_t prev = 0;
    for (std::size_t w : weyr) {
        if (w > prev) increments.push_back(static_cast<int>(w - prev));
        prev = w;
    }
    if (increments.empty()) return Partition{};
    // Increments count blocks of size >= k, so they form the conjugate partition.
    return Partition::from_unsorted(increments).conjugate();
}

bool is_triangular(const Matrix& t) {
    const std::size_t n = t.rows();
    const auto& d = t.exact_data();
    bool upper = true, lower = true;
    for (std::size_t i = 0; i < n && (upper || lower); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i * n + j].is_zero()) continue;
            if (i > j) upper = false;
            if (i < j) lower = false;
        }
    }
    return upper || lower;
}

std::vector<std::pair<Scalar, int>> exact_eigenvalues(const Matrix& t) {
    std::vector<std::pair<GaussQ, int>> roots;
    const std::size_t n = t.rows();
    if (is_triangular(t)) {
        const auto& d = t.exact_data();
        for (std::size_t i = 0; i < n; ++i) {
            const GaussQ& v = d[i * n + i];
            auto it = std::find_if(roots.begin(), roots.end(), [&](const auto& r) { return r.first == v; });
            if (it == roots.end()) {
                roots.emplace_back(v, 1);
            } else {
                ++it->second;
            }
        }
    } else {
        auto found = detail::gaussian_rational_roots(detail::characteristic_polynomial(t));
        if (!found) {
            throw SpectralIrrationality(
                "spectrum contains eigenvalues outside Q(i); use the float64 backend");
        }
        roots = std::move(*found);
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Scalar, int>> out;
    for (auto& r : roots) out.emplace_back(Scalar(r.first), r.second);
    return out;
}

std::vector<std::pair<Scalar, int>> float_eigenvalues(const Matrix& t, double tol) {
    const std::size_t n = t.rows();
    Eigen::MatrixXcd m(n, n);
    const auto& d = t.float_data();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d[i * n + j];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    if (es.info() != Eigen::Success) throw NumericalFailure("complex eigenvalue iteration did not converge");
    std::vector<Complex> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    // Single-linkage clustering with radius tol.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(ev[i] - ev[j]) <= tol) parent[find(j)] = find(i);
        }
    }
    std::vector<std::pair<Complex, int>> clusters;
    std::vector<std::size_t> root_of;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(root_of.begin(), root_of.end(), r);
        if (it == root_of.end()) {
            root_of.push_back(r);
            clusters.emplace_back(ev[i], 1);
        } else {
            auto& c = clusters[static_cast<std::size_t>(it - root_of.begin())];
            c.first += ev[i];
            ++c.second;
        }
    }
    std::vector<std::pair<Scalar, int>> out;
    for (auto& c : clusters) out.emplace_back(Scalar(c.first / static_cast<double>(c.second)), c.second);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    return out;
}

}  // namespace

Partition partition_at(const Matrix& t, const Scalar& lambda, const ToleranceConfig& cfg) {
    const auto weyr = weyr_sequence(t, lambda, cfg);
    if (weyr.empty() || weyr.front() == 0) {
        throw PreconditionViolation("partition_at: " + lambda.to_string() + " is not an eigenvalue");
    }
    return partition_from_weyr(weyr);
}

std::vector<std::pair<Scalar, int>> eigenvalues(const Matrix& t, const ToleranceConfig& cfg) {
    if (!t.is_square()) throw DimensionMismatch("eigenvalues: matrix must be square");
    if (t.rows() == 0) return {};
    if (t.is_exact()) return exact_eigenvalues(t);
    cfg.validate();
    return float_eigenvalues(t, cfg.eig_cluster_tol);
}

JordanSpectrum jordan_spectrum(const Matrix& t, const ToleranceConfig& cfg) {
    JordanSpectrum spec;
    spec.dimension = t.rows();
    int total = 0;
    for (const auto& [lambda, mult] : eigenvalues(t, cfg)) {
        Partition p = partition_at(t, lambda, cfg);
        if (p.total() != mult) {
            if (t.is_exact()) throw Error("internal: partition size disagrees with multiplicity");
            throw NumericalFailure("eigenvalue cluster at " + lambda.to_string() + " has multiplicity " +
                                   std::to_string(mult) + " but rank structure of size " +
                                   std::to_string(p.total()) + "; adjust eig_cluster_tol / rank_tol");
        }
        total += p.total();
        spec.entries.push_back({lambda, std::move(p)});
    }
    if (static_cast<std::size_t>(total) != spec.dimension) throw NumericalFailure("multiplicities do not sum to n");
    return spec;
}

JordanBasis jordan_basis(const Matrix& t, const ToleranceConfig& cfg) {
    JordanBasis jb;
    jb.spectrum = jordan_spectrum(t, cfg);
    const std::size_t n = t.rows();
    const Backend be = t.backend();
    Matrix s = Matrix::zeros(n, 0, be);

    for (const auto& entry : jb.spectrum.entries) {
        const Matrix nmat = shift(t, entry.eigenvalue);
        const int height = entry.partition.parts().front();
        std::vector<Matrix> kernels{Matrix::zeros(n, 0, be)};  // kernels[k] spans ker N^k
        Matrix power = nmat;
        for (int k = 1; k <= height; ++k) {
            kernels.push_back(kernel_basis(power, cfg));
            power = mat_mul(power, nmat);
        }

        struct Chain {
            int length;
            Matrix top;
        };
        std::vector<Chain> chains;
        for (int k = height; k >= 1; --k) {
            const auto count = std::count(entry.partition.parts().begin(), entry.partition.parts().end(), k);
            if (count == 0) continue;
            Matrix covered = kernels[static_cast<std::size_t>(k - 1)];
            for (const auto& c : chains) {
                covered = hstack(covered, mat_mul(mat_pow(nmat, static_cast<unsigned>(c.length - k)), c.top));
            }
            std::size_t covered_rank = rank(covered, cfg);
            long added = 0;
            const Matrix& cand = kernels[static_cast<std::size_t>(k)];
            for (std::size_t j = 0; j < cand.cols() && added < count; ++j) {
                Matrix v = columns(cand, j, 1);
                Matrix trial = hstack(covered, v);
                const std::size_t r = rank(trial, cfg);
                if (r > covered_rank) {
                    covered = std::move(trial);
                    covered_rank = r;
                    chains.push_back({k, v});
                    ++added;
                }
            }
            if (added < count) throw NumericalFailure("jordan_basis: could not complete Jordan chains");
        }
        for (const auto& c : chains) {
            std::vector<Matrix> cols(static_cast<std::size_t>(c.length));
            Matrix v = c.top;
            for (int i = c.length - 1; i >= 0; --i) {
                cols[static_cast<std::size_t>(i)] = v;
                if (i > 0) v = mat_mul(nmat, v);
            }
            for (auto& col : cols) s = hstack(s, col);
        }
    }

    jb.canonical = jordan_matrix(jb.spectrum, be);
    if (!t.is_exact()) {
        double residual = 0.0;
        try {
            residual = operator_norm_estimate(mat_sub(conjugate(t, s, cfg), jb.canonical));
        } catch (const SingularMatrix&) {
            throw NumericalFailure("jordan_basis: chain basis is numerically singular");
        }
        if (!(residual <= cfg.verify_tol)) {
            throw NumericalFailure("jordan_basis: conjugation residual exceeds verify_tol", residual);
        }
    }
    jb.s = std::move(s);
    return jb;
}

InvertibleNilpotentSplit split_invertible_nilpotent(const Matrix& t, const ToleranceConfig& cfg) {
    if (!t.is_square()) throw DimensionMismatch("split_invertible_nilpotent: matrix must be square");
    const std::size_t n = t.rows();
    const Backend be = t.backend();
    const Matrix tn = mat_pow(t, static_cast<unsigned>(n));

    // ran t^n: greedy column selection in index order.
    Matrix range = Matrix::zeros(n, 0, be);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix trial = hstack(range, columns(tn, j, 1));
        const std::size_t tr = rank(trial, cfg);
        if (tr > r) {
            range = std::move(trial);
            r = tr;
        }
    }
    const Matrix ker = kernel_basis(tn, cfg);
    if (r + ker.cols() != n) throw NumericalFailure("split_invertible_nilpotent: rank and nullity disagree");

    InvertibleNilpotentSplit out;
    out.s = hstack(range, ker);
    const Matrix c = conjugate(t, out.s, cfg);
    out.b = submatrix(c, 0, 0, r, r);
    out.q = submatrix(c, r, r, n - r, n - r);
    return out;
}

}  // namespace nil2kit
