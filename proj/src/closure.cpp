#include "nil2kit/closure.hpp"

#include <cmath>
#include <limits>

#include "poly.hpp"

namespace nil2kit {

namespace {

/// Chooses the member of {a, -a} on the right half-plane (upper half of the imaginary axis).
bool is_representative(Complex a) { return a.real() > 0 || (a.real() == 0 && a.imag() > 0); }

BalanceReport from_multiplicities(const std::vector<std::pair<Scalar, int>>& ev, const ToleranceConfig& cfg) {
    BalanceReport r;
    const std::size_t k = ev.size();
    std::vector<bool> done(k, false);
    auto matches = [&](const Scalar& a, const Scalar& b) {
        if (a.is_exact()) return a == -b;
        return std::abs(a.value() + b.value()) <= cfg.eig_cluster_tol;
    };
    auto is_zero_like = [&](const Scalar& a) {
        return a.is_exact() ? a.is_zero() : std::abs(a.value()) <= cfg.eig_cluster_tol;
    };
    for (std::size_t i = 0; i < k; ++i) {
        if (done[i]) continue;
        done[i] = true;
        if (is_zero_like(ev[i].first)) continue;
        int mu_neg = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (!done[j] && matches(ev[i].first, ev[j].first)) {
                mu_neg += ev[j].second;
                done[j] = true;
            }
        }
        if (mu_neg == ev[i].second) continue;
        if (mu_neg == 0 || is_representative(ev[i].first.value())) {
            r.violations.push_back({ev[i].first, ev[i].second, mu_neg});
        } else {
            r.violations.push_back({-ev[i].first, mu_neg, ev[i].second});
        }
    }
    r.balanced = r.violations.empty();
    return r;
}

const char* kFiniteDimNote =
    "finite-dimensional criterion: spectrum symmetric under negation with equal algebraic multiplicities";

/// p(x) = x^z e(x) with e(0) != 0; balanced iff e(-x) = ±e(x).
bool charpoly_balanced(const Matrix& t) {
    detail::Poly p = detail::characteristic_polynomial(t);
    std::size_t z = 0;
    while (z < p.size() && p[z].is_zero()) ++z;
    detail::Poly e(p.begin() + static_cast<std::ptrdiff_t>(z), p.end());
    const int d = detail::degree(e);
    detail::Poly en = detail::negate_argument(e);
    if (d % 2 != 0) {
        for (auto& c : en) c = -c;
    }
    return detail::poly_sub(en, e).empty();
}

}  // namespace

BalanceReport is_balanced(const Matrix& t, const ToleranceConfig& cfg) {
    if (!t.is_square()) throw DimensionMismatch("is_balanced: matrix must be square");
    BalanceReport r;
    try {
        r = from_multiplicities(eigenvalues(t, cfg), cfg);
        r.note = kFiniteDimNote;
    } catch (const SpectralIrrationality&) {
        if (charpoly_balanced(t)) {
            r.balanced = true;
        } else {
            // Only float approximations of the offending roots are available.
            r = from_multiplicities(eigenvalues(to_float(t), cfg), cfg);
            if (r.violations.empty()) r.violations.push_back({Scalar(Complex(0.0)), 0, 0});
            r.balanced = false;
        }
        r.note = std::string(kFiniteDimNote) + "; spectrum outside Q(i), decided from the characteristic polynomial";
    }
    return r;
}

bool in_closure_cnil2(const Matrix& t, const ToleranceConfig& cfg) { return is_balanced(t, cfg).balanced; }

namespace {

struct Group {
    std::vector<std::size_t> pos;      // canonical coordinates carrying alpha
    std::vector<std::size_t> neg_pos;  // coordinates carrying -alpha (empty for the zero group)
    Complex alpha;
};

/// Largest power of two not exceeding x.
double floor_pow2(double x) { return std::ldexp(1.0, static_cast<int>(std::floor(std::log2(x)))); }

}  // namespace

Approximation approximate_in_cnil2(const Matrix& t, double eps, const ToleranceConfig& cfg) {
    if (!(eps > 0.0)) throw PreconditionViolation("approximate_in_cnil2: eps must be positive");
    if (!t.is_square()) throw DimensionMismatch("approximate_in_cnil2: matrix must be square");
    if (!is_balanced(t, cfg).balanced) throw PreconditionViolation("approximate_in_cnil2: matrix is not balanced");

    Decision d = decide_cnil2(t, cfg);
    if (d.verdict) return {t, 0.0, 0.0, std::move(*d.witness)};

    const JordanBasis jb = jordan_basis(t, cfg);
    const auto& entries = jb.spectrum.entries;
    const std::size_t n = t.rows();
    const Backend be = t.backend();

    // Coordinates per spectrum entry.
    std::vector<std::vector<std::size_t>> coords(entries.size());
    std::size_t off = 0;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        for (int i = 0; i < entries[e].partition.total(); ++i) coords[e].push_back(off++);
    }

    auto zero_like = [&](const Scalar& a) {
        return a.is_exact() ? a.is_zero() : std::abs(a.value()) <= cfg.eig_cluster_tol;
    };
    Group zero_group{{}, {}, 0.0};
    std::vector<Group> pairs;
    std::vector<bool> used(entries.size(), false);
    for (std::size_t e = 0; e < entries.size(); ++e) {
        if (zero_like(entries[e].eigenvalue)) {
            zero_group.pos.insert(zero_group.pos.end(), coords[e].begin(), coords[e].end());
            used[e] = true;
        }
    }
    for (std::size_t e = 0; e < entries.size(); ++e) {
        if (used[e]) continue;
        const Scalar& a = entries[e].eigenvalue;
        std::size_t best = entries.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < entries.size(); ++f) {
            if (used[f] || f == e) continue;
            const double dist = std::abs(entries[f].eigenvalue.value() + a.value());
            const bool ok = a.is_exact() ? entries[f].eigenvalue == -a : dist <= cfg.eig_cluster_tol;
            if (ok && dist < best_d) {
                best = f;
                best_d = dist;
            }
        }
        if (best == entries.size()) throw PreconditionViolation("approximate_in_cnil2: unpaired eigenvalue");
        used[e] = used[best] = true;
        pairs.push_back({coords[e], coords[best], (a.value() - entries[best].eigenvalue.value()) / 2.0});
    }

    // Separation of distinct eigenvalue groups, zero included.
    std::vector<Complex> centres;
    if (!zero_group.pos.empty()) centres.push_back(0.0);
    for (const auto& g : pairs) {
        centres.push_back(g.alpha);
        centres.push_back(-g.alpha);
    }
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centres.size(); ++i) {
        for (std::size_t j = i + 1; j < centres.size(); ++j) sep = std::min(sep, std::abs(centres[i] - centres[j]));
    }

    const Matrix sinv = inverse(jb.s, cfg);
    const double cond = std::max(1.0, operator_norm_estimate(jb.s) * operator_norm_estimate(sinv));
    double delta = floor_pow2(std::min(sep / 4.0, eps / (10.0 * cond)));

    for (int attempt = 0; attempt < 64; ++attempt, delta /= 2.0) {
        // Target diagonal in canonical coordinates.
        std::vector<Scalar> diag(n, Scalar::zero(be));
        auto offset = [&](std::size_t k, std::size_t m) -> Scalar {
            if (be == Backend::exact) {
                return Scalar(GaussQ(mpq_class(delta) * mpq_class(static_cast<long>(k), static_cast<unsigned long>(m))));
            }
            return Scalar(Complex(delta * static_cast<double>(k) / static_cast<double>(m)));
        };
        for (const auto& g : pairs) {
            const std::size_t mu = g.pos.size();
            // Float partners are symmetrised so the perturbed spectrum pairs exactly.
            const Scalar base = be == Backend::exact ? jb.canonical.at(g.pos[0], g.pos[0]) : Scalar(g.alpha);
            for (std::size_t k = 0; k < mu; ++k) {
                diag[g.pos[k]] = base + offset(k + 1, mu);
                diag[g.neg_pos[k]] = -(base + offset(k + 1, mu));
            }
        }
        const std::size_t mu0 = zero_group.pos.size();
        const std::size_t half = (mu0 + 1) / 2;
        for (std::size_t k = 0; 2 * k + 1 < mu0; ++k) {
            diag[zero_group.pos[2 * k]] = offset(k + 1, half);
            diag[zero_group.pos[2 * k + 1]] = -offset(k + 1, half);
        }
        std::vector<Scalar> cur;
        for (std::size_t i = 0; i < n; ++i) cur.push_back(jb.canonical.at(i, i));
        const Matrix c = jb.canonical - Matrix::diagonal(cur) + Matrix::diagonal(diag);
        Matrix x = jb.s * c * sinv;
        const double dist = operator_norm_estimate(x - t);
        if (!(dist < eps)) continue;
        Decision dx;
        try {
            dx = decide_cnil2(x, cfg);
        } catch (const NumericalFailure& e) {
            // Smaller perturbations only make the float Jordan structure worse.
            throw NumericalFailure("approximate_in_cnil2: eps too small for float conditioning; achieved distance " +
                                       std::to_string(dist) + " but the witness of x failed (" + e.what() + ")",
                                   dist);
        }
        if (!dx.verdict) continue;
        return {std::move(x), dist, delta, std::move(*dx.witness)};
    }
    throw NumericalFailure("approximate_in_cnil2: no perturbation scale reached the requested eps", eps);
}

}  // namespace nil2kit
