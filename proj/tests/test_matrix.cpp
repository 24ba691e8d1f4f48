#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"

using namespace nil2kit;
using testing::diag;
using testing::jc;

namespace {

/// Leibniz expansion; an oracle independent of elimination.
GaussQ leibniz(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    GaussQ total;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
        }
        GaussQ term(1);
        for (std::size_t i = 0; i < n; ++i) term *= a.exact_data()[i * n + perm[i]];
        total += inversions % 2 == 0 ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Matrix random_gauss(std::size_t r, std::size_t c, std::mt19937_64& rng, int bound = 4) {
    std::uniform_int_distribution<long> d(-bound, bound);
    std::uniform_int_distribution<long> den(1, 3);
    std::vector<GaussQ> v;
    for (std::size_t i = 0; i < r * c; ++i) v.emplace_back(mpq_class(d(rng), den(rng)), mpq_class(d(rng) / 2));
    return Matrix::exact(r, c, std::move(v));
}

}  // namespace

TEST_CASE("scalars stay in lowest terms and refuse to mix backends") {
    const GaussQ q = GaussQ::from_parts(4, 6, -2, 4);
    CHECK(q.re() == mpq_class(2, 3));
    CHECK(q.im() == mpq_class(-1, 2));
    CHECK(q.re().get_den() > 0);
    CHECK_THROWS_AS(GaussQ::from_parts(1, 0, 0, 1), ParseError);
    CHECK_THROWS_AS(Scalar(GaussQ(1)) + Scalar(Complex(1.0)), BackendMismatch);
    CHECK_THROWS_AS(Scalar(GaussQ(1)) / Scalar(GaussQ(0)), SingularMatrix);
    CHECK((GaussQ(0, 1) * GaussQ(0, 1)) == GaussQ(-1));
}

TEST_CASE("mat_mul examples") {
    const Matrix x = Matrix::from_ints({{1, 2}, {3, 4}});
    CHECK(Matrix::identity(2, Backend::exact) * x == x);
    CHECK((jc(2) * jc(2)).is_zero());
    const Matrix j3sq = jc(3) * jc(3);
    CHECK(j3sq == Matrix::from_ints({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}));
    CHECK_THROWS_AS(x * Matrix::identity(3, Backend::exact), DimensionMismatch);
    CHECK_THROWS_AS(x * to_float(x), BackendMismatch);
}

TEST_CASE("commutator examples") {
    const Matrix x = Matrix::from_ints({{1, 2}, {3, 4}});
    CHECK(commutator(x, x).is_zero());
    const Matrix m = Matrix::from_ints({{0, 1}, {0, 0}});
    const Matrix n = Matrix::from_ints({{0, 0}, {1, 0}});
    CHECK(commutator(m, n) == diag({1, -1}));
}

TEST_CASE("rank and kernel examples") {
    CHECK(rank(Matrix::zeros(3, 3, Backend::exact)) == 0);
    CHECK(rank(jc(4)) == 3);
    CHECK(rank(jc(4) * jc(4)) == 2);
    CHECK(kernel_basis(Matrix::identity(2, Backend::exact)).cols() == 0);
    const Matrix k = kernel_basis(jc(2));
    REQUIRE(k.cols() == 1);
    CHECK((jc(2) * k).is_zero());
    CHECK(k.at(1, 0).is_zero());
    const Matrix d = diag({1, 0, 0});
    CHECK(kernel_basis(d).cols() == 2);
    CHECK((d * kernel_basis(d)).is_zero());
}

TEST_CASE("operator norm examples") {
    CHECK(operator_norm_estimate(Matrix::identity(5, Backend::exact)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(operator_norm_estimate(diag({3, -1})) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(operator_norm_estimate(scalar_mul(Scalar(GaussQ(2)), jc(2))) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("conjugate examples") {
    const Matrix t = Matrix::from_ints({{1, 2}, {3, 4}});
    CHECK(conjugate(t, Matrix::identity(2, Backend::exact)) == t);
    CHECK(conjugate(diag({1, -1}), Matrix::from_ints({{0, 1}, {1, 0}})) == diag({-1, 1}));
    CHECK(conjugate(jc(2), diag({1, 2})) == Matrix::from_ints({{0, 2}, {0, 0}}));
    CHECK_THROWS_AS(conjugate(t, jc(2)), SingularMatrix);
}

TEST_CASE("float rank uses a relative singular-value cutoff") {
    const Matrix a = to_float(Matrix::from_ints({{1, 2}, {2, 4}}));
    CHECK(rank(a) == 1);
    CHECK(rank(scalar_mul(Scalar(Complex(1e-20)), to_float(Matrix::identity(3, Backend::exact)))) == 3);
    const Matrix k = kernel_basis(a);
    REQUIRE(k.cols() == 1);
    CHECK(operator_norm_estimate(a * k) < 1e-12);
}

TEST_CASE("property: determinant agrees with the Leibniz expansion") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const Matrix a = random_gauss(n, n, rng);
        CHECK(determinant(a).exact() == leibniz(a));
    }
}

TEST_CASE("property: exact rank matches float rank on well-scaled products") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const std::size_t r = static_cast<std::size_t>(trial) % (n + 1);
        const Matrix a = r == 0 ? Matrix::zeros(n, n, Backend::exact)
                                : random_gauss(n, r, rng) * random_gauss(r, n, rng);
        const std::size_t exact_rank = rank(a);
        CHECK(exact_rank <= r);
        CHECK(exact_rank == rank(to_float(a)));
        CHECK(exact_rank + kernel_basis(a).cols() == n);
        CHECK((a * kernel_basis(a)).is_zero());
    }
}

TEST_CASE("property: commutators are traceless and conjugation round-trips") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const Matrix a = random_gauss(n, n, rng), b = random_gauss(n, n, rng);
        CHECK(trace(commutator(a, b)).is_zero());
        const Matrix s = testing::random_invertible(n, rng);
        CHECK(conjugate(conjugate(a, s), inverse(s)) == a);
        CHECK(s * inverse(s) == Matrix::identity(n, Backend::exact));
        CHECK(rank(direct_sum(a, b)) == rank(a) + rank(b));
        const Matrix x = random_gauss(n, 2, rng);
        const bool solved = a.is_zero() || determinant(a).is_zero() || a * solve(a, x) == x;
        CHECK(solved);
    }
}

TEST_CASE("structural helpers") {
    const Matrix a = Matrix::from_ints({{1, 2, 3}, {4, 5, 6}});
    CHECK(transpose(a).rows() == 3);
    CHECK(submatrix(a, 0, 1, 2, 2) == Matrix::from_ints({{2, 3}, {5, 6}}));
    CHECK(columns(a, 2, 1) == Matrix::from_ints({{3}, {6}}));
    CHECK(hstack(columns(a, 0, 1), columns(a, 1, 2)) == a);
    CHECK(mat_pow(jc(3), 3).is_zero());
    CHECK(mat_pow(jc(3), 0) == Matrix::identity(3, Backend::exact));
    const Matrix c = Matrix::exact(1, 1, {GaussQ(1, 2)});
    CHECK(adjoint(c).at(0, 0).exact() == GaussQ(1, -2));
    ToleranceConfig bad;
    bad.rank_tol = -1;
    CHECK_THROWS_AS(bad.validate(), PreconditionViolation);
}
