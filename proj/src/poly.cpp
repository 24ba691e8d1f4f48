#include "poly.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace nil2kit::detail {

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const Poly& p) {
    Poly q = p;
    trim(q);
    return static_cast<int>(q.size()) - 1;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    Poly d = b;
    trim(d);
    if (d.empty()) throw SingularMatrix("polynomial division by zero");
    Poly r = a;
    trim(r);
    if (r.size() < d.size()) return {{}, r};
    Poly q(r.size() - d.size() + 1);
    const GaussQ lead = d.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        GaussQ c = r[k + d.size() - 1] / lead;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= c * d[j];
        q[k] = std::move(c);
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * GaussQ(static_cast<long>(i));
    trim(r);
    return r;
}

Poly make_monic(Poly p) {
    trim(p);
    if (p.empty()) return p;
    const GaussQ lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a));
}

GaussQ evaluate(const Poly& p, const GaussQ& x) {
    GaussQ v;
    for (std::size_t i = p.size(); i-- > 0;) {
        v *= x;
        v += p[i];
    }
    return v;
}

Poly negate_argument(const Poly& p) {
    Poly r = p;
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return r;
}

Poly characteristic_polynomial(const Matrix& a) {
    if (!a.is_square()) throw DimensionMismatch("characteristic polynomial needs a square matrix");
    const std::size_t n = a.rows();
    std::vector<GaussQ> h = a.exact_data();
    auto at = [&](std::size_t i, std::size_t j) -> GaussQ& { return h[i * n + j]; };

    // Reduce to upper Hessenberg form by elementary similarities.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::size_t piv = k + 1;
        while (piv < n && at(piv, k).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(k + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(at(i, piv), at(i, k + 1));
        }
        const GaussQ p = at(k + 1, k);
        for (std::size_t r = k + 2; r < n; ++r) {
            if (at(r, k).is_zero()) continue;
            const GaussQ f = at(r, k) / p;
            for (std::size_t j = 0; j < n; ++j) {
                if (!at(k + 1, j).is_zero()) at(r, j) -= f * at(k + 1, j);
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (!at(i, r).is_zero()) at(i, k + 1) += f * at(i, r);
            }
        }
    }

    // p_m = (x - h_mm) p_{m-1} - sum_i h_{i,m} (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    std::vector<Poly> p(n + 1);
    p[0] = {GaussQ(1)};
    for (std::size_t m = 1; m <= n; ++m) {
        Poly cur = poly_mul({-at(m - 1, m - 1), GaussQ(1)}, p[m - 1]);
        GaussQ prod(1);
        for (std::size_t i = m - 1; i >= 1; --i) {
            prod *= at(i, i - 1);
            if (prod.is_zero()) break;
            const GaussQ coeff = at(i - 1, m - 1) * prod;
            if (!coeff.is_zero()) cur = poly_sub(cur, poly_mul({coeff}, p[i - 1]));
        }
        p[m] = std::move(cur);
    }
    Poly result = p[n];
    result.resize(n + 1);
    return result;
}

std::vector<Complex> approximate_roots(const Poly& p) {
    Poly q = make_monic(p);
    const int d = static_cast<int>(q.size()) - 1;
    if (d <= 0) return {};
    if (d == 1) return {(-q[0]).to_complex()};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -q[i].to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

namespace {

struct ZPoly {
    std::vector<mpz_class> re, im;  // primitive Gaussian-integer coefficients
};

ZPoly clear_denominators(const Poly& p) {
    mpz_class l = 1;
    for (const auto& c : p) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
    }
    ZPoly z;
    for (const auto& c : p) {
        mpq_class r = c.re() * l;
        mpq_class i = c.im() * l;
        z.re.push_back(r.get_num());
        z.im.push_back(i.get_num());
    }
    return z;
}

struct CF {
    mpf_class re, im;
};

/// Newton refinement of an approximate simple root, carried out in GMP floats.
CF newton(const ZPoly& g, Complex start, mp_bitcnt_t prec) {
    const std::size_t n = g.re.size();
    std::vector<CF> c, dc;
    for (std::size_t i = 0; i < n; ++i) {
        c.push_back({mpf_class(g.re[i], prec), mpf_class(g.im[i], prec)});
    }
    for (std::size_t i = 1; i < n; ++i) {
        mpf_class k(static_cast<unsigned long>(i), prec);
        dc.push_back({mpf_class(c[i].re * k, prec), mpf_class(c[i].im * k, prec)});
    }
    CF z{mpf_class(start.real(), prec), mpf_class(start.imag(), prec)};
    mpf_class t1(0, prec), t2(0, prec), den(0, prec), sr(0, prec), si(0, prec);
    auto horner = [&](const std::vector<CF>& cs, CF& out) {
        out.re = 0;
        out.im = 0;
        for (std::size_t i = cs.size(); i-- > 0;) {
            t1 = out.re * z.re - out.im * z.im + cs[i].re;
            t2 = out.re * z.im + out.im * z.re + cs[i].im;
            out.re = t1;
            out.im = t2;
        }
    };
    CF f{mpf_class(0, prec), mpf_class(0, prec)};
    CF fp{mpf_class(0, prec), mpf_class(0, prec)};
    mpf_class eps(1, prec);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), prec - 24);
    for (int it = 0; it < 400; ++it) {
        horner(c, f);
        horner(dc, fp);
        den = fp.re * fp.re + fp.im * fp.im;
        if (sgn(den) == 0) break;
        sr = (f.re * fp.re + f.im * fp.im) / den;
        si = (f.im * fp.re - f.re * fp.im) / den;
        z.re -= sr;
        z.im -= si;
        mpf_class mag = abs(z.re) + abs(z.im) + 1;
        if (abs(sr) + abs(si) <= eps * mag) break;
    }
    return z;
}

mpz_class round_to_int(const mpf_class& x) {
    mpf_class h(x + 0.5, x.get_prec());
    mpf_class f(0, x.get_prec());
    mpf_floor(f.get_mpf_t(), h.get_mpf_t());
    return mpz_class(f);
}

}  // namespace

std::optional<std::vector<std::pair<GaussQ, int>>> gaussian_rational_roots(const Poly& p_in) {
    Poly p = p_in;
    trim(p);
    if (p.empty()) throw PreconditionViolation("roots of the zero polynomial");
    std::vector<GaussQ> found;
    Poly g = make_monic(poly_divmod(p, poly_gcd(p, derivative(p))).first);

    while (degree(g) > 0) {
        if (degree(g) == 1) {
            found.push_back(-g[0] / g[1]);
            break;
        }
        const ZPoly z = clear_denominators(g);
        const mpz_class& lead_re = z.re.back();
        const mpz_class& lead_im = z.im.back();
        std::size_t bits = 0;
        for (std::size_t i = 0; i < z.re.size(); ++i) {
            bits = std::max({bits, mpz_sizeinbase(z.re[i].get_mpz_t(), 2), mpz_sizeinbase(z.im[i].get_mpz_t(), 2)});
        }
        const mp_bitcnt_t prec = 128 + 4 * bits;
        const GaussQ lead{mpq_class(lead_re), mpq_class(lead_im)};

        bool progress = false;
        for (Complex approx : approximate_roots(g)) {
            if (degree(g) <= 0) break;
            CF r = newton(z, approx, prec);
            // c·r is a Gaussian integer for every Q(i) root r of a Z[i] polynomial with leading coefficient c.
            mpf_class wr(r.re * mpf_class(lead_re, prec) - r.im * mpf_class(lead_im, prec), prec);
            mpf_class wi(r.re * mpf_class(lead_im, prec) + r.im * mpf_class(lead_re, prec), prec);
            GaussQ cand = GaussQ(mpq_class(round_to_int(wr)), mpq_class(round_to_int(wi))) / lead;
            if (!evaluate(g, cand).is_zero()) continue;
            found.push_back(cand);
            g = poly_divmod(g, {-cand, GaussQ(1)}).first;
            progress = true;
        }
        if (!progress) return std::nullopt;
    }

    std::vector<std::pair<GaussQ, int>> out;
    for (const auto& r : found) {
        int mult = 0;
        Poly q = p;
        const Poly lin{-r, GaussQ(1)};
        while (true) {
            auto [quot, rem] = poly_divmod(q, lin);
            if (!rem.empty()) break;
            ++mult;
            q = std::move(quot);
        }
        out.emplace_back(r, mult);
    }
    return out;
}

}  // namespace nil2kit::detail
