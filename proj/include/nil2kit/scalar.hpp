#pragma once

#include <complex>
#include <compare>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "nil2kit/error.hpp"

namespace nil2kit {

enum class Backend { exact, float64 };

std::string to_string(Backend b);

using Complex = std::complex<double>;

/// Gaussian rational re + i·im. mpq_class keeps both parts canonical
/// (lowest terms, positive denominator) after every operation.
class GaussQ {
public:
    GaussQ() = default;
    GaussQ(long re) : re_(re) {}  // NOLINT: integer literals promote
    GaussQ(mpq_class re, mpq_class im = 0);

    static GaussQ i() { return GaussQ(0, 1); }
    /// Builds (re_num/re_den) + i (im_num/im_den); throws on zero denominators.
    static GaussQ from_parts(const mpz_class& re_num, const mpz_class& re_den,
                             const mpz_class& im_num, const mpz_class& im_den);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussQ conj() const { return {re_, -im_}; }
    /// re² + im²
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussQ operator-() const { return {-re_, -im_}; }
    GaussQ& operator+=(const GaussQ& o);
    GaussQ& operator-=(const GaussQ& o);
    GaussQ& operator*=(const GaussQ& o);
    GaussQ& operator/=(const GaussQ& o);

    friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
    friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
    friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
    friend bool operator==(const GaussQ& a, const GaussQ& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Lexicographic by (re, im); the canonical eigenvalue order.
    friend std::strong_ordering operator<=>(const GaussQ& a, const GaussQ& b);

    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// A field element tagged with its backend. Arithmetic across backends throws.
class Scalar {
public:
    Scalar() : v_(GaussQ{}) {}
    Scalar(GaussQ q) : v_(std::move(q)) {}  // NOLINT
    Scalar(Complex z) : v_(z) {}            // NOLINT

    static Scalar zero(Backend b);
    static Scalar one(Backend b);

    Backend backend() const {
        return std::holds_alternative<GaussQ>(v_) ? Backend::exact : Backend::float64;
    }
    bool is_exact() const { return backend() == Backend::exact; }

    const GaussQ& exact() const;
    Complex value() const;  ///< float view of either backend
    bool is_zero() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b) = default;

    std::string to_string() const;

private:
    std::variant<GaussQ, Complex> v_;
};

/// Canonical (re, im) ordering used for eigenvalue lists on both backends.
bool canonical_less(const Scalar& a, const Scalar& b);

}  // namespace nil2kit
