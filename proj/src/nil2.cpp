#include "nil2kit/nil2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nil2kit {

std::string to_string(ObstructionKind k) {
    switch (k) {
        case ObstructionKind::unpaired_nonzero_spectrum: return "unpaired_nonzero_spectrum";
        case ObstructionKind::partition_mismatch: return "partition_mismatch";
        case ObstructionKind::no_nilpotent_square_root: return "no_nilpotent_square_root";
    }
    return "unknown";
}

std::optional<int> cnil2_prefix_violation(const Partition& p) {
    // Distinct sizes kappa_1 > ... > kappa_d with multiplicities mu_i.
    std::vector<std::pair<int, int>> classes;
    for (int part : p.parts()) {
        if (!classes.empty() && classes.back().first == part) {
            ++classes.back().second;
        } else {
            classes.emplace_back(part, 1);
        }
    }
    int prefix = 0;
    for (std::size_t b = 0; b < classes.size(); ++b) {
        prefix += classes[b].second;
        const int next = b + 1 < classes.size() ? classes[b + 1].first : 0;
        if (classes[b].first - next >= 2 && prefix % 2 != 0) return static_cast<int>(b + 1);
    }
    return std::nullopt;
}

bool nilpotent_partition_in_cnil2(const Partition& p) { return !cnil2_prefix_violation(p).has_value(); }

namespace {

struct Block {
    std::size_t entry;   // index into spectrum entries
    std::size_t size;
    std::size_t offset;  // first canonical coordinate
};

enum class ComponentKind { spectral_pair, nil_equal, nil_step, zero };

/// A group of canonical blocks realised together by one local witness.
struct Component {
    ComponentKind kind;
    std::vector<std::size_t> blocks;  // indices into the block table
    Scalar alpha;                     // spectral_pair: eigenvalue of the first block
};

struct Plan {
    std::optional<Obstruction> obstruction;
    std::vector<Block> blocks;
    std::vector<Component> components;
};

bool near_zero(const Scalar& s, const ToleranceConfig& cfg) {
    if (s.is_exact()) return s.is_zero();
    return std::abs(s.value()) <= cfg.eig_cluster_tol;
}

Plan make_plan(const JordanSpectrum& spec, const ToleranceConfig& cfg) {
    Plan plan;
    std::size_t off = 0;
    std::vector<std::vector<std::size_t>> blocks_of(spec.entries.size());
    for (std::size_t e = 0; e < spec.entries.size(); ++e) {
        for (int k : spec.entries[e].partition.parts()) {
            blocks_of[e].push_back(plan.blocks.size());
            plan.blocks.push_back({e, static_cast<std::size_t>(k), off});
            off += static_cast<std::size_t>(k);
        }
    }

    // Nonzero eigenvalues: pair alpha with -alpha, partitions must agree.
    std::vector<bool> used(spec.entries.size(), false);
    std::vector<std::size_t> zero_entries;
    for (std::size_t e = 0; e < spec.entries.size(); ++e) {
        const Scalar& a = spec.entries[e].eigenvalue;
        if (near_zero(a, cfg)) {
            zero_entries.push_back(e);
            used[e] = true;
        }
    }
    for (std::size_t e = 0; e < spec.entries.size(); ++e) {
        if (used[e]) continue;
        const Scalar& a = spec.entries[e].eigenvalue;
        std::optional<std::size_t> partner;
        if (a.is_exact()) {
            for (std::size_t f = 0; f < spec.entries.size(); ++f) {
                if (!used[f] && f != e && spec.entries[f].eigenvalue == -a) partner = f;
            }
        } else {
            double best = cfg.eig_cluster_tol;
            for (std::size_t f = 0; f < spec.entries.size(); ++f) {
                if (used[f] || f == e) continue;
                const double d = std::abs(spec.entries[f].eigenvalue.value() + a.value());
                if (d <= best) {
                    best = d;
                    partner = f;
                }
            }
        }
        if (!partner) {
            plan.obstruction = Obstruction{ObstructionKind::unpaired_nonzero_spectrum, a, std::nullopt,
                                           spec.entries[e].partition, std::nullopt};
            return plan;
        }
        const Partition& pa = spec.entries[e].partition;
        const Partition& pb = spec.entries[*partner].partition;
        if (!(pa == pb)) {
            plan.obstruction =
                Obstruction{ObstructionKind::partition_mismatch, a, std::nullopt, pa, pb};
            return plan;
        }
        used[e] = used[*partner] = true;
        // The block carrying +alpha is the one in the right half-plane.
        std::size_t pos = e, neg = *partner;
        const Complex av = a.value();
        if (!(av.real() > 0 || (av.real() == 0 && av.imag() > 0))) std::swap(pos, neg);
        Scalar alpha = spec.entries[pos].eigenvalue;
        if (!alpha.is_exact()) {
            alpha = Scalar((alpha.value() - spec.entries[neg].eigenvalue.value()) / 2.0);
        }
        for (std::size_t i = 0; i < blocks_of[pos].size(); ++i) {
            plan.components.push_back({ComponentKind::spectral_pair, {blocks_of[pos][i], blocks_of[neg][i]}, alpha});
        }
    }

    // Nilpotent part: blocks sorted by size, paired consecutively.
    std::vector<std::size_t> nil_blocks;
    for (std::size_t e : zero_entries) {
        nil_blocks.insert(nil_blocks.end(), blocks_of[e].begin(), blocks_of[e].end());
    }
    std::stable_sort(nil_blocks.begin(), nil_blocks.end(),
                     [&](std::size_t x, std::size_t y) { return plan.blocks[x].size > plan.blocks[y].size; });
    std::vector<int> sizes;
    for (std::size_t b : nil_blocks) sizes.push_back(static_cast<int>(plan.blocks[b].size));
    const Partition zero_partition(sizes);
    if (auto b = cnil2_prefix_violation(zero_partition)) {
        plan.obstruction = Obstruction{ObstructionKind::no_nilpotent_square_root, std::nullopt, *b,
                                       zero_partition, std::nullopt};
        return plan;
    }
    const Scalar zero = Scalar::zero(spec.entries.empty() ? Backend::exact : spec.entries.front().eigenvalue.backend());
    for (std::size_t i = 0; i < nil_blocks.size(); i += 2) {
        const std::size_t a = nil_blocks[i];
        if (i + 1 == nil_blocks.size()) {
            // Leftover single part; the criterion forces size 1.
            plan.components.push_back({ComponentKind::zero, {a}, zero});
            continue;
        }
        const std::size_t b = nil_blocks[i + 1];
        const std::size_t ka = plan.blocks[a].size, kb = plan.blocks[b].size;
        if (ka == kb) {
            plan.components.push_back({ComponentKind::nil_equal, {a, b}, zero});
        } else if (ka == kb + 1) {
            plan.components.push_back({ComponentKind::nil_step, {a, b}, zero});
        } else {
            throw Error("internal: nilpotent pairing inconsistent with the criterion");
        }
    }
    return plan;
}

/// diag(1, -1, 1, ...)
Matrix alternating_signs(std::size_t k, Backend be) {
    std::vector<Scalar> d;
    for (std::size_t i = 0; i < k; ++i) d.push_back(i % 2 == 0 ? Scalar::one(be) : -Scalar::one(be));
    return Matrix::diagonal(d);
}

/// Anti-identity; conjugating by it turns J* into J.
Matrix reversal(std::size_t k, Backend be) {
    std::vector<std::vector<long>> rows(k, std::vector<long>(k, 0));
    for (std::size_t i = 0; i < k; ++i) rows[i][k - 1 - i] = 1;
    Matrix r = Matrix::from_ints(rows);
    return be == Backend::exact ? r : to_float(r);
}

/// [[0, upper], [lower, 0]] with square diagonal blocks of sizes p and q.
Matrix block_offdiag(std::size_t p, std::size_t q, const Matrix* upper, const Matrix* lower, Backend be) {
    Matrix top = Matrix::zeros(p, p + q, be);
    Matrix bottom = Matrix::zeros(q, p + q, be);
    if (upper) top = hstack(Matrix::zeros(p, p, be), *upper);
    if (lower) bottom = hstack(*lower, Matrix::zeros(q, q, be));
    return transpose(hstack(transpose(top), transpose(bottom)));
}

/// Local witness (m, n) with [m, n] equal to the component's canonical blocks.
std::pair<Matrix, Matrix> local_witness(const Component& c, const std::vector<Block>& blocks, Backend be) {
    switch (c.kind) {
        case ComponentKind::zero: return {Matrix::zeros(1, 1, be), Matrix::zeros(1, 1, be)};
        case ComponentKind::spectral_pair: {
            // X ⊕ −X = [[0, X], [0, 0]], [[0, 0], [I, 0]]], then −J_k(α) → J_k(−α) via diag(±1).
            const std::size_t k = blocks[c.blocks[0]].size;
            const Matrix x = Matrix::jordan_cell(k, c.alpha);
            const Matrix id = Matrix::identity(k, be);
            const Matrix m = block_offdiag(k, k, &x, nullptr, be);
            const Matrix n = block_offdiag(k, k, nullptr, &id, be);
            const Matrix s = direct_sum(id, alternating_signs(k, be));
            return {s * m * s, s * n * s};
        }
        case ComponentKind::nil_equal: {
            // J ⊕ −J = [[[0, I], [0, 0]], [[0, 0], [J, 0]]]
            const std::size_t k = blocks[c.blocks[0]].size;
            const Matrix j = Matrix::jordan_cell(k, be);
            const Matrix id = Matrix::identity(k, be);
            const Matrix m = block_offdiag(k, k, &id, nullptr, be);
            const Matrix n = block_offdiag(k, k, nullptr, &j, be);
            const Matrix s = direct_sum(id, alternating_signs(k, be));
            return {s * m * s, s * n * s};
        }
        case ComponentKind::nil_step: {
            // A = [0; I_k], Y = [I_k 0] give [M, N] = AY ⊕ −YA = J*_{k+1} ⊕ −J*_k.
            const std::size_t k = blocks[c.blocks[1]].size;
            const Matrix a = transpose(hstack(Matrix::zeros(k, 1, be), Matrix::identity(k, be)));
            const Matrix y = hstack(Matrix::identity(k, be), Matrix::zeros(k, 1, be));
            const Matrix m = block_offdiag(k + 1, k, &a, nullptr, be);
            const Matrix n = block_offdiag(k + 1, k, nullptr, &y, be);
            // Signed permutation, so its inverse is its transpose.
            const Matrix s = direct_sum(reversal(k + 1, be), reversal(k, be) * alternating_signs(k, be));
            const Matrix st = transpose(s);
            return {st * m * s, st * n * s};
        }
    }
    throw Error("internal: unknown component kind");
}

/// Places a local k×k block on the given global coordinates of an n×n array.
template <class T>
void scatter_into(std::vector<T>& dst, std::size_t n, const std::vector<T>& src,
                  const std::vector<std::size_t>& coords) {
    const std::size_t k = coords.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) dst[coords[i] * n + coords[j]] = src[i * k + j];
    }
}

Witness assemble(const JordanBasis& jb, const Plan& plan, const ToleranceConfig& cfg) {
    const std::size_t n = jb.spectrum.dimension;
    const Backend be = jb.s.backend();
    std::vector<GaussQ> me, ne;
    std::vector<Complex> mf, nf;
    if (be == Backend::exact) {
        me.resize(n * n);
        ne.resize(n * n);
    } else {
        mf.resize(n * n);
        nf.resize(n * n);
    }
    int pairs = 0, equal = 0, step = 0, zeros = 0;
    for (const auto& c : plan.components) {
        std::vector<std::size_t> coords;
        for (std::size_t b : c.blocks) {
            for (std::size_t i = 0; i < plan.blocks[b].size; ++i) coords.push_back(plan.blocks[b].offset + i);
        }
        auto [m, nn] = local_witness(c, plan.blocks, be);
        if (be == Backend::exact) {
            scatter_into(me, n, m.exact_data(), coords);
            scatter_into(ne, n, nn.exact_data(), coords);
        } else {
            scatter_into(mf, n, m.float_data(), coords);
            scatter_into(nf, n, nn.float_data(), coords);
        }
        switch (c.kind) {
            case ComponentKind::spectral_pair: ++pairs; break;
            case ComponentKind::nil_equal: ++equal; break;
            case ComponentKind::nil_step: ++step; break;
            case ComponentKind::zero: ++zeros; break;
        }
    }
    const Matrix m0 = be == Backend::exact ? Matrix::exact(n, n, std::move(me)) : Matrix::float64(n, n, std::move(mf));
    const Matrix n0 = be == Backend::exact ? Matrix::exact(n, n, std::move(ne)) : Matrix::float64(n, n, std::move(nf));
    const Matrix sinv = inverse(jb.s, cfg);

    std::ostringstream note;
    note << "jordan pairing: " << pairs << " (alpha,-alpha) block pair(s), " << equal
         << " equal nilpotent pair(s), " << step << " staggered nilpotent pair(s), " << zeros
         << " zero block(s)";
    return Witness{jb.s * m0 * sinv, jb.s * n0 * sinv, note.str()};
}

Witness zero_witness(const Matrix& t) {
    const Matrix z = Matrix::zeros(t.rows(), t.cols(), t.backend());
    return Witness{z, z, "zero matrix: m = n = 0"};
}

}  // namespace

Decision decide_cnil2(const Matrix& t, const ToleranceConfig& cfg) {
    if (!t.is_square()) throw DimensionMismatch("decide_cnil2: matrix must be square");
    cfg.validate();
    Decision d;
    if (t.is_zero()) {
        d.verdict = true;
        d.witness = zero_witness(t);
        return d;
    }
    const JordanBasis jb = jordan_basis(t, cfg);
    const Plan plan = make_plan(jb.spectrum, cfg);
    if (plan.obstruction) {
        d.obstruction = plan.obstruction;
        return d;
    }
    Witness w = assemble(jb, plan, cfg);
    if (!t.is_exact()) {
        const VerifyReport r = verify_witness(t, w, cfg);
        if (!r.passed) {
            throw NumericalFailure("synthesized float witness failed verification",
                                   std::max({r.m_squared, r.n_squared, r.commutator}));
        }
    }
    d.verdict = true;
    d.witness = std::move(w);
    return d;
}

Witness synthesize_witness(const Matrix& t, const ToleranceConfig& cfg) {
    Decision d = decide_cnil2(t, cfg);
    if (!d.verdict) {
        throw PreconditionViolation("synthesize_witness: matrix is not a commutator of square-zero matrices (" +
                                    to_string(d.obstruction->kind) + ")");
    }
    return std::move(*d.witness);
}

VerifyReport verify_witness(const Matrix& t, const Witness& w, const ToleranceConfig& cfg) {
    if (!t.is_square() || w.m.rows() != t.rows() || w.m.cols() != t.cols() || w.n.rows() != t.rows() ||
        w.n.cols() != t.cols()) {
        throw DimensionMismatch("verify_witness: witness dimensions do not match t");
    }
    const Matrix m2 = w.m * w.m;
    const Matrix n2 = w.n * w.n;
    const Matrix c = commutator(w.m, w.n) - t;
    VerifyReport r;
    r.m_squared = operator_norm_estimate(m2);
    r.n_squared = operator_norm_estimate(n2);
    r.commutator = operator_norm_estimate(c);
    if (t.is_exact()) {
        r.passed = m2.is_zero() && n2.is_zero() && c.is_zero();
    } else {
        r.passed = r.m_squared <= cfg.verify_tol && r.n_squared <= cfg.verify_tol && r.commutator <= cfg.verify_tol;
    }
    return r;
}

SquareZeroCanonical square_zero_canonical(const Matrix& m, const ToleranceConfig& cfg) {
    if (!m.is_square()) throw DimensionMismatch("square_zero_canonical: matrix must be square");
    const Matrix m2 = m * m;
    const bool square_zero = m.is_exact() ? m2.is_zero() : operator_norm_estimate(m2) <= cfg.verify_tol;
    if (!square_zero) throw PreconditionViolation("square_zero_canonical: input is not square-zero");

    const std::size_t n = m.rows();
    const Backend be = m.backend();
    // Preimages c_j: unit vectors whose images under m are independent.
    Matrix images = Matrix::zeros(n, 0, be);
    Matrix pre = Matrix::zeros(n, 0, be);
    const Matrix id = Matrix::identity(n, be);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix trial = hstack(images, columns(m, j, 1));
        const std::size_t tr = rank(trial, cfg);
        if (tr > r) {
            images = std::move(trial);
            pre = hstack(pre, columns(id, j, 1));
            r = tr;
        }
    }
    // The images lie in ker m; complete them to a basis of it.
    Matrix kern = images;
    const Matrix kb = kernel_basis(m, cfg);
    std::size_t kr = r;
    for (std::size_t j = 0; j < kb.cols(); ++j) {
        Matrix trial = hstack(kern, columns(kb, j, 1));
        const std::size_t tr = rank(trial, cfg);
        if (tr > kr) {
            kern = std::move(trial);
            kr = tr;
        }
    }
    Matrix s = hstack(hstack(images, pre), columns(kern, r, kern.cols() - r));
    if (s.cols() != n) throw NumericalFailure("square_zero_canonical: could not complete the basis");
    return SquareZeroCanonical{std::move(s), r};
}

bool anticommutation_check(const Matrix& t, const Witness& w, const ToleranceConfig& cfg) {
    const Matrix a = anticommutator(w.m, t);
    const Matrix b = anticommutator(w.n, t);
    if (t.is_exact()) return a.is_zero() && b.is_zero();
    return operator_norm_estimate(a) <= cfg.verify_tol && operator_norm_estimate(b) <= cfg.verify_tol;
}

}  // namespace nil2kit
