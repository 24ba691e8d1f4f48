#include <doctest.h>

#include "helpers.hpp"
#include "nil2kit/json_io.hpp"

using namespace nil2kit;
using testing::diag;
using testing::jc;

TEST_CASE("matrix JSON round trip is bit-exact") {
    const Matrix e = Matrix::exact(2, 2, {GaussQ(mpq_class(1, 3), mpq_class(-7, 2)), GaussQ(mpq_class("123456789012345678901234567890")),
                                          GaussQ(0), GaussQ(0, 1)});
    const json j = to_json(e);
    CHECK(j["backend"] == "exact");
    CHECK(j["data"][0][0] == json::array({"1", "3", "-7", "2"}));
    CHECK(j["data"][0][1][0] == "123456789012345678901234567890");
    CHECK(matrix_from_json(j) == e);
    CHECK(matrix_from_json(json::parse(j.dump())) == e);

    const Matrix f = Matrix::float64(1, 2, {Complex(0.1, -2.5), Complex(1e-300, 3.0)});
    const json jf = to_json(f);
    CHECK(jf["backend"] == "float64");
    CHECK(matrix_from_json(json::parse(jf.dump())) == f);
}

TEST_CASE("lenient matrix parsing") {
    CHECK(matrix_from_json(json::parse(R"({"data":[[1,2],[3,4]]})")) == Matrix::from_ints({{1, 2}, {3, 4}}));
    CHECK(matrix_from_json(json::parse(R"({"data":[[[1.0,0.0]]]})")).backend() == Backend::float64);
    CHECK(matrix_from_json(json::parse(R"({"backend":"exact","data":[["5"]]})")) == diag({5}));
}

TEST_CASE("malformed matrices are parse errors") {
    for (const char* bad : {R"([1,2])", R"({"data":[[1,2],[3]]})", R"({"backend":"quad","data":[[1]]})",
                            R"({"backend":"exact","data":[[["1","0","0","1"]]]})", R"({"rows":3,"data":[[1]]})",
                            R"({"backend":"exact","data":[["x"]]})", R"({"backend":"float64","data":[[[1,2,3]]]})"}) {
        CHECK_THROWS_AS(matrix_from_json(json::parse(bad)), ParseError);
    }
}

TEST_CASE("decision and witness bundles") {
    const Matrix t = diag({1, -1});
    const Decision d = decide_cnil2(t);
    const json j = to_json(d, t);
    CHECK(j["schema"] == kSchema);
    CHECK(j["verdict"] == "yes");
    CHECK(j["witness"]["certifies"]["digest"] == matrix_digest(t));
    const ParsedWitness pw = witness_from_json(j);
    CHECK(pw.witness.m == d.witness->m);
    CHECK(pw.dimension == 2u);
    CHECK(pw.digest == matrix_digest(t));

    const json no = to_json(decide_cnil2(jc(4)), jc(4));
    CHECK(no["verdict"] == "no");
    CHECK(no["obstruction"]["kind"] == "no_nilpotent_square_root");
    CHECK(no["obstruction"]["prefix_index"] == 1);
    CHECK_FALSE(no.contains("witness"));
}

TEST_CASE("digest separates matrices and is stable") {
    CHECK(matrix_digest(diag({1, -1})) == matrix_digest(diag({1, -1})));
    CHECK(matrix_digest(diag({1, -1})) != matrix_digest(diag({-1, 1})));
    CHECK(matrix_digest(diag({1, -1})) != matrix_digest(to_float(diag({1, -1}))));
    CHECK(matrix_digest(diag({1, -1})).size() == 16);
}

TEST_CASE("report schemas") {
    CHECK(to_json(jordan_spectrum(jc(3)))["entries"][0]["partition"] == json::array({3}));
    const json b = to_json(is_balanced(diag({1, 1, -1})));
    CHECK(b["balanced"] == false);
    CHECK(b["violations"][0]["mu"] == 2);
    CHECK(b["violations"][0]["mu_neg"] == 1);
    const json v = to_json(VerifyReport{true, 0, 0, 0}, std::nullopt);
    CHECK(v["digest_match"].is_null());
    FuzzReport fr;
    fr.trials_run = 3;
    fr.min_defect = 0.5;
    CHECK(to_json(fr)["min_defect"] == 0.5);
    CHECK(to_json(fr)["failures"].empty());
}
