#include <doctest.h>

#include "helpers.hpp"
#include "nil2kit/json_io.hpp"
#include "nil2kit/oracle.hpp"

using namespace nil2kit;
using testing::diag;

TEST_CASE("random_square_zero examples and invariants") {
    FuzzConfig cfg;
    std::mt19937_64 rng = trial_stream(1, 0);
    CHECK(random_square_zero(1, cfg, rng).is_zero());
    std::vector<int> ranks_seen(5, 0);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % 8;
        const Matrix m = random_square_zero(n, cfg, rng);
        CHECK((m * m).is_zero());
        const std::size_t r = rank(m);
        CHECK(2 * r <= n);
        ++ranks_seen[r];
    }
    for (int r = 0; r <= 3; ++r) CHECK(ranks_seen[r] > 0);
    for (int i = 0; i < 10; ++i) CHECK(rank(random_square_zero(6, cfg, rng, 1)) <= 1);
    CHECK_THROWS_AS(random_square_zero(0, cfg, rng), PreconditionViolation);
}

TEST_CASE("random_unimodular is exactly invertible with integer inverse") {
    std::mt19937_64 rng = trial_stream(3, 4);
    for (std::size_t n = 1; n <= 6; ++n) {
        const Matrix p = random_unimodular(n, rng);
        CHECK(determinant(p) == Scalar(GaussQ(1)));
        const Matrix inv = inverse(p);
        for (const auto& q : inv.exact_data()) {
            const bool integral = q.re().get_den() == 1 && q.im().get_den() == 1;
            CHECK(integral);
        }
    }
}

TEST_CASE("fuzz_membership runs clean and is deterministic") {
    FuzzConfig cfg;
    cfg.seed = 1;
    cfg.trials = 40;
    cfg.max_dim = 8;
    const FuzzReport a = fuzz_membership(cfg);
    CHECK(a.trials_run == 40);
    CHECK(a.failures.empty());
    const FuzzReport b = fuzz_membership(cfg);
    CHECK(to_json(a).dump() == to_json(b).dump());
    cfg.trials = 0;
    CHECK_THROWS_AS(fuzz_membership(cfg), PreconditionViolation);
}

TEST_CASE("nullity identity examples") {
    const Scalar one(GaussQ(1));
    CHECK(nullity_identity_check(diag({1, -1}), one, 1));
    CHECK_FALSE(nullity_identity_check(diag({1, 1, -1}), one, 1));
    CHECK_FALSE(decide_cnil2(diag({1, 1, -1})).verdict);
    CHECK_THROWS_AS(nullity_identity_check(diag({1, -1}), Scalar(GaussQ(0)), 1), PreconditionViolation);
    const Matrix t = direct_sum(testing::jc(3, 2), testing::jc(3, -2));
    for (unsigned k = 1; k <= 6; ++k) CHECK(nullity_identity_check(t, Scalar(GaussQ(2)), k));
}

TEST_CASE("unitary 2x2 construction examples") {
    const Matrix w = Matrix::float64(2, 2, {0.0, 1.0, 1.0, 0.0});
    const UnitaryCommutator c = unitary_commutator_2x2(w);
    const Complex i(0.0, 1.0);
    const Matrix u0 = Matrix::float64(2, 2, {1.0, 0.0, 0.0, i});
    const Complex h = (1.0 + i) / 2.0;
    const Matrix v0 = Matrix::float64(2, 2, {h, h, -h, h});
    CHECK(operator_norm_estimate(c.u - u0) < 1e-12);
    CHECK(operator_norm_estimate(c.v - v0) < 1e-12);
    CHECK(c.residual <= 1e-12);

    const UnitaryCommutator d = unitary_commutator_2x2(to_float(diag({1, -1})));
    CHECK(d.residual <= 1e-12);
    CHECK(d.defect <= 1e-12);

    CHECK_THROWS_AS(unitary_commutator_2x2(to_float(Matrix::identity(2, Backend::exact))), PreconditionViolation);
    CHECK_THROWS_AS(unitary_commutator_2x2(to_float(diag({2, -2}))), PreconditionViolation);
}

TEST_CASE("property: random trace-zero unitaries are commutators of unitaries") {
    std::mt19937_64 rng = trial_stream(17, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix w = random_trace_zero_unitary(rng);
        const UnitaryCommutator c = unitary_commutator_2x2(w);
        CHECK(c.residual <= 1e-12);
        CHECK(c.defect <= 1e-12);
    }
}

TEST_CASE("unitary 4x4 paired construction") {
    const Complex i(0.0, 1.0);
    const UnitaryCommutator a = unitary_commutator_4x4_paired(Scalar(Complex(1.0)), Scalar(i));
    CHECK(a.residual <= 1e-12);
    CHECK(a.defect <= 1e-12);
    CHECK(operator_norm_estimate(a.w - Matrix::float64(4, 4, {1.0, 0, 0, 0, 0, -1.0, 0, 0, 0, 0, i, 0, 0, 0, 0, -i})) == 0.0);
    const UnitaryCommutator b = unitary_commutator_4x4_paired(Scalar(Complex(1.0)), Scalar(Complex(1.0)));
    CHECK(b.residual <= 1e-12);
    CHECK_THROWS_AS(unitary_commutator_4x4_paired(Scalar(Complex(2.0)), Scalar(i)), PreconditionViolation);
}

TEST_CASE("3x3 unitary search stays away from unitary commutators") {
    FuzzConfig cfg;
    cfg.seed = 7;
    cfg.trials = 1;
    const FuzzReport one = search_unitary_3x3(cfg);
    CHECK(one.trials_run == 1);
    REQUIRE(one.min_defect);
    CHECK(*one.min_defect > 0.0);

    cfg.trials = 500;
    const FuzzReport many = search_unitary_3x3(cfg);
    CHECK(many.failures.empty());
    CHECK(*many.min_defect >= 0.05);

    const FuzzReport control = control_unitary_2x2(cfg);
    CHECK(*control.min_defect <= 1e-12);
}
