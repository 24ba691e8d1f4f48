#include <doctest.h>

#include "helpers.hpp"

using namespace nil2kit;
using testing::block_diag;
using testing::diag;
using testing::jc;

namespace {

Scalar ex(long re, long im = 0) { return Scalar(GaussQ(mpq_class(re), mpq_class(im))); }

/// Partition numbers via Euler's pentagonal recurrence.
std::vector<long> partition_numbers(int n) {
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > m) break;
            const long sign = k % 2 == 1 ? 1 : -1;
            p[m] += sign * p[m - g1];
            if (g2 <= m) p[m] += sign * p[m - g2];
        }
    }
    return p;
}

}  // namespace

TEST_CASE("partitions") {
    CHECK_THROWS_AS(Partition({1, 2}), PreconditionViolation);
    CHECK_THROWS_AS(Partition({2, 0}), PreconditionViolation);
    CHECK(Partition::from_unsorted({1, 3, 0, 2}) == Partition({3, 2, 1}));
    CHECK(Partition({3, 1}).conjugate() == Partition({2, 1, 1}));
    const auto counts = partition_numbers(12);
    for (int n = 1; n <= 12; ++n) {
        const auto all = partitions_of(n);
        CHECK(static_cast<long>(all.size()) == counts[n]);
        for (const auto& p : all) {
            CHECK(p.total() == n);
            CHECK(p.conjugate().conjugate() == p);
        }
    }
}

TEST_CASE("weyr_sequence examples") {
    CHECK(weyr_sequence(jc(3), ex(0)) == std::vector<std::size_t>{1, 2, 3});
    CHECK(weyr_sequence(block_diag({jc(2), jc(2)}), ex(0)) == std::vector<std::size_t>{2, 4});
    CHECK(weyr_sequence(diag({5}), ex(5)) == std::vector<std::size_t>{1});
}

TEST_CASE("partition_at examples") {
    CHECK(partition_at(block_diag({jc(3), jc(1)}), ex(0)) == Partition({3, 1}));
    CHECK(partition_at(block_diag({jc(2), jc(2)}), ex(0)) == Partition({2, 2}));
    CHECK(partition_at(diag({1, 1, -1}), ex(1)) == Partition({1, 1}));
    CHECK_THROWS_AS(partition_at(diag({1, 1, -1}), ex(2)), PreconditionViolation);
}

TEST_CASE("eigenvalues examples") {
    const auto e1 = eigenvalues(diag({2, 2, -2}));
    REQUIRE(e1.size() == 2);
    CHECK(e1[0] == std::pair<Scalar, int>{ex(-2), 1});
    CHECK(e1[1] == std::pair<Scalar, int>{ex(2), 2});
    const auto e2 = eigenvalues(jc(4));
    REQUIRE(e2.size() == 1);
    CHECK(e2[0] == std::pair<Scalar, int>{ex(0), 4});
    const auto e3 = eigenvalues(Matrix::from_ints({{0, -1}, {1, 0}}));
    REQUIRE(e3.size() == 2);
    CHECK(e3[0] == std::pair<Scalar, int>{ex(0, -1), 1});
    CHECK(e3[1] == std::pair<Scalar, int>{ex(0, 1), 1});
    CHECK_THROWS_AS(eigenvalues(Matrix::from_ints({{0, 2}, {1, 0}})), SpectralIrrationality);
    const auto ef = eigenvalues(to_float(Matrix::from_ints({{0, 2}, {1, 0}})));
    REQUIRE(ef.size() == 2);
    CHECK(std::abs(ef[1].first.value() - Complex(std::sqrt(2.0), 0.0)) < 1e-12);
}

TEST_CASE("exact eigenvalues with rational and complex values") {
    const Matrix t = block_diag({Matrix::exact(1, 1, {GaussQ(mpq_class(1, 3), mpq_class(-5, 7))}), jc(2, 0, 1), diag({-4})});
    std::mt19937_64 rng(3);
    const Matrix p = testing::random_invertible(4, rng);
    const auto e = eigenvalues(conjugate(t, p));
    REQUIRE(e.size() == 3);
    CHECK(e[0].first == ex(-4));
    CHECK(e[1].first == ex(0, 1));
    CHECK(e[1].second == 2);
    CHECK(e[2].first == Scalar(GaussQ(mpq_class(1, 3), mpq_class(-5, 7))));
}

TEST_CASE("jordan_spectrum examples") {
    const JordanSpectrum s1 = jordan_spectrum(diag({1, -1}));
    REQUIRE(s1.entries.size() == 2);
    CHECK(s1.entries[0] == SpectrumEntry{ex(-1), Partition({1})});
    CHECK(s1.entries[1] == SpectrumEntry{ex(1), Partition({1})});
    const JordanSpectrum s2 = jordan_spectrum(block_diag({jc(2), jc(2), jc(2)}));
    REQUIRE(s2.entries.size() == 1);
    CHECK(s2.entries[0].partition == Partition({2, 2, 2}));
    const Matrix a = jc(2, 1);
    const JordanSpectrum s3 = jordan_spectrum(direct_sum(a, -a));
    REQUIRE(s3.entries.size() == 2);
    CHECK(s3.entries[0] == SpectrumEntry{ex(-1), Partition({2})});
    CHECK(s3.entries[1] == SpectrumEntry{ex(1), Partition({2})});
    // Oracle: the same partitions from direct rank computations on (T ∓ I)^k.
    CHECK(testing::partition_from_nullities(testing::nullities(direct_sum(a, -a), ex(1))) == std::vector<int>{2});
    CHECK(s3.negated() == s3);
}

TEST_CASE("jordan_basis examples") {
    const JordanBasis b1 = jordan_basis(diag({3, -3}));
    CHECK(b1.canonical == diag({-3, 3}));
    CHECK(conjugate(diag({3, -3}), b1.s) == b1.canonical);

    const Matrix t2 = Matrix::from_ints({{0, 2}, {0, 0}});
    const JordanBasis b2 = jordan_basis(t2);
    CHECK(b2.canonical == jc(2));
    CHECK(conjugate(t2, b2.s) == jc(2));

    std::mt19937_64 rng(5);
    const Matrix p = testing::random_invertible(5, rng);
    const Matrix t3 = p * block_diag({jc(3), jc(2)}) * inverse(p);
    const JordanBasis b3 = jordan_basis(t3);
    CHECK(b3.canonical == block_diag({jc(3), jc(2)}));
    CHECK(conjugate(t3, b3.s) == b3.canonical);
}

TEST_CASE("split_invertible_nilpotent examples") {
    const auto s1 = split_invertible_nilpotent(jc(3));
    CHECK(s1.b.rows() == 0);
    CHECK(s1.q.rows() == 3);
    CHECK(conjugate(jc(3), s1.s) == s1.q);

    const auto s2 = split_invertible_nilpotent(diag({1, -1}));
    CHECK(s2.q.rows() == 0);
    CHECK(conjugate(diag({1, -1}), s2.s) == s2.b);

    // diag(2, 0) with a coupling entry 2 above the diagonal.
    const Matrix t = Matrix::from_ints({{2, 2}, {0, 0}});
    const auto s3 = split_invertible_nilpotent(t);
    CHECK(s3.b == diag({2}));
    CHECK(s3.q == Matrix::zeros(1, 1, Backend::exact));
    CHECK(conjugate(t, s3.s) == direct_sum(s3.b, s3.q));
}

TEST_CASE("float jordan basis on a well-separated matrix") {
    const Matrix t = to_float(block_diag({jc(2, 3), diag({-1}), jc(2)}));
    const JordanBasis b = jordan_basis(t);
    REQUIRE(b.spectrum.entries.size() == 3);
    CHECK(b.spectrum.entries[0].partition == Partition({1}));
    CHECK(b.spectrum.entries[1].partition == Partition({2}));
    CHECK(b.spectrum.entries[2].partition == Partition({2}));
    CHECK(operator_norm_estimate(conjugate(t, b.s) - b.canonical) < 1e-9);
}

TEST_CASE("property: spectra are similarity invariant and bases round-trip") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> size(1, 3), eig(-2, 2), count(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Matrix> cells;
        const int k = count(rng);
        for (int i = 0; i < k; ++i) cells.push_back(jc(static_cast<std::size_t>(size(rng)), eig(rng), trial % 3 == 0 ? eig(rng) : 0));
        const Matrix j = block_diag(cells);
        const std::size_t n = j.rows();
        const Matrix p = testing::random_invertible(n, rng);
        const Matrix t = p * j * inverse(p);
        const JordanSpectrum sj = jordan_spectrum(j), st = jordan_spectrum(t);
        CHECK(sj == st);
        std::size_t total = 0;
        for (const auto& e : st.entries) {
            total += static_cast<std::size_t>(e.partition.total());
            // Weyr/partition duality against an independent rank computation.
            CHECK(e.partition.parts() == testing::partition_from_nullities(testing::nullities(t, e.eigenvalue)));
            const auto w = weyr_sequence(t, e.eigenvalue);
            CHECK(w == testing::nullities(t, e.eigenvalue));
        }
        CHECK(total == n);
        const JordanBasis b = jordan_basis(t);
        CHECK(conjugate(t, b.s) == b.canonical);
        CHECK(b.canonical == jordan_matrix(st, Backend::exact));
        const auto split = split_invertible_nilpotent(t);
        CHECK(conjugate(t, split.s) == direct_sum(split.b, split.q));
        CHECK(mat_pow(split.q, static_cast<unsigned>(split.q.rows())).is_zero());
        CHECK((split.b.rows() == 0 || !determinant(split.b).is_zero()));
    }
}
