#include "nil2kit/scalar.hpp"

#include <sstream>

namespace nil2kit {

std::string to_string(Backend b) {
    return b == Backend::exact ? "exact" : "float64";
}

GaussQ::GaussQ(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussQ GaussQ::from_parts(const mpz_class& re_num, const mpz_class& re_den,
                          const mpz_class& im_num, const mpz_class& im_den) {
    if (re_den == 0 || im_den == 0) throw ParseError("zero denominator in exact scalar");
    mpq_class re(re_num, re_den);
    mpq_class im(im_num, im_den);
    return GaussQ(std::move(re), std::move(im));
}

GaussQ& GaussQ::operator+=(const GaussQ& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
    if (o.is_real()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
    if (o.is_zero()) throw SingularMatrix("division by zero Gaussian rational");
    if (o.is_real()) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    mpq_class n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::strong_ordering operator<=>(const GaussQ& a, const GaussQ& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string GaussQ::to_string() const {
    if (is_real()) return re_.get_str();
    std::ostringstream os;
    if (sgn(re_) != 0) os << re_.get_str() << (sgn(im_) > 0 ? "+" : "");
    os << im_.get_str() << "i";
    return os.str();
}

Scalar Scalar::zero(Backend b) {
    return b == Backend::exact ? Scalar(GaussQ{}) : Scalar(Complex{});
}

Scalar Scalar::one(Backend b) {
    return b == Backend::exact ? Scalar(GaussQ(1)) : Scalar(Complex(1.0, 0.0));
}

const GaussQ& Scalar::exact() const {
    if (auto* q = std::get_if<GaussQ>(&v_)) return *q;
    throw BackendMismatch("exact payload requested from a float64 scalar");
}

Complex Scalar::value() const {
    if (auto* q = std::get_if<GaussQ>(&v_)) return q->to_complex();
    return std::get<Complex>(v_);
}

bool Scalar::is_zero() const {
    if (auto* q = std::get_if<GaussQ>(&v_)) return q->is_zero();
    return std::get<Complex>(v_) == Complex{};
}

namespace {

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    if (a.backend() != b.backend()) {
        throw BackendMismatch("scalar arithmetic mixes exact and float64");
    }
    if (a.is_exact()) return Scalar(op(a.exact(), b.exact()));
    return Scalar(op(a.value(), b.value()));
}

}  // namespace

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(-exact());
    return Scalar(-value());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw SingularMatrix("division by zero scalar");
    return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
}

std::string Scalar::to_string() const {
    if (is_exact()) return exact().to_string();
    std::ostringstream os;
    os.precision(17);
    Complex z = value();
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
    return os.str();
}

bool canonical_less(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() < b.exact();
    Complex x = a.value();
    Complex y = b.value();
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
}

}  // namespace nil2kit
