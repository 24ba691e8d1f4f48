#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "nil2kit/cli.hpp"
#include "nil2kit/json_io.hpp"

using namespace nil2kit;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() / ("nil2kit_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
    std::string write(const std::string& name, const Matrix& m) const { return write(name, to_json(m).dump()); }
};

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli decide and witness") {
    Sandbox sb;
    const std::string yes = sb.write("yes.json", testing::diag({1, -1}));
    const std::string no = sb.write("no.json", testing::jc(4));

    Result r = call({"decide", "--in", yes});
    CHECK(r.code == cli::ok);
    CHECK(json::parse(r.out)["verdict"] == "yes");

    r = call({"decide", "--in", no});
    CHECK(r.code == cli::negative);
    CHECK(json::parse(r.out)["obstruction"]["kind"] == "no_nilpotent_square_root");

    CHECK(call({"witness", "--in", no}).code == cli::negative);

    const std::string wpath = (sb.dir / "w.json").string();
    CHECK(call({"--out", wpath, "witness", "--in", yes}).code == cli::ok);
    r = call({"verify", "--in", yes, "--witness", wpath});
    CHECK(r.code == cli::ok);
    CHECK(json::parse(r.out)["digest_match"] == true);

    // Same witness against a different matrix.
    const std::string other = sb.write("other.json", testing::diag({2, -2}));
    CHECK(call({"verify", "--in", other, "--witness", wpath}).code == cli::negative);
    const std::string big = sb.write("big.json", testing::diag({1, -1, 0}));
    CHECK(call({"verify", "--in", big, "--witness", wpath}).code == cli::negative);
}

TEST_CASE("cli analysis subcommands") {
    Sandbox sb;
    const std::string j2 = sb.write("j2.json", testing::jc(2));
    CHECK(call({"jordan", "--in", j2}).code == cli::ok);
    CHECK(call({"balanced", "--in", j2}).code == cli::ok);
    CHECK(call({"balanced", "--in", sb.write("u.json", testing::diag({1, 1, -1}))}).code == cli::negative);

    Result r = call({"approx", "--in", j2, "--eps", "0.1"});
    CHECK(r.code == cli::ok);
    CHECK(json::parse(r.out)["distance"].get<double>() < 0.1);

    const std::string j4 = sb.write("j4.json", testing::jc(4));
    CHECK(call({"approx", "--in", j4, "--eps", "0.1"}).code == cli::ok);
    CHECK(call({"approx", "--in", sb.write("one.json", testing::diag({1})), "--eps", "0.1"}).code == cli::input_error);

    CHECK(call({"sqrt", "--in", sb.write("jj.json", testing::block_diag({testing::jc(2), testing::jc(2)}))}).code == cli::ok);
    CHECK(call({"sqrt", "--in", sb.write("j3.json", testing::jc(3))}).code == cli::input_error);

    r = call({"fuzz", "--seed", "3", "--trials", "10", "--max-dim", "6"});
    CHECK(r.code == cli::ok);
    CHECK(json::parse(r.out)["trials_run"] == 10);

    r = call({"unitary2", "--in", sb.write("w.json", R"({"backend":"float64","data":[[[0,0],[1,0]],[[1,0],[0,0]]]})")});
    CHECK(r.code == cli::ok);
    CHECK(json::parse(r.out)["residual"].get<double>() <= 1e-12);
}

TEST_CASE("cli input errors and backend handling") {
    Sandbox sb;
    CHECK(call({}).code == cli::input_error);
    CHECK(call({"frobnicate"}).code == cli::input_error);
    CHECK(call({"decide"}).code == cli::input_error);
    CHECK(call({"decide", "--in", (sb.dir / "missing.json").string()}).code == cli::input_error);
    CHECK(call({"decide", "--in", sb.write("bad.json", "{not json")}).code == cli::input_error);
    CHECK(call({"decide", "--in", sb.write("rect.json", R"({"data":[[1,2]]})")}).code == cli::input_error);
    CHECK(call({"fuzz", "--seed", "1", "--trials", "0", "--max-dim", "4"}).code == cli::input_error);
    CHECK(call({"--rank-tol", "-1", "jordan", "--in", sb.write("z.json", testing::diag({0}))}).code == cli::input_error);

    const std::string f = sb.write("f.json", to_float(testing::diag({1, -1})));
    CHECK(call({"--backend", "exact", "decide", "--in", f}).code == cli::input_error);
    const std::string e = sb.write("e.json", testing::diag({1, -1}));
    Result r = call({"decide", "--in", e, "--backend", "float64"});
    CHECK(r.code == cli::ok);
    CHECK(json::parse(r.out)["witness"]["m"]["backend"] == "float64");

    const std::string sk = sb.write("sk.json", Matrix::from_ints({{1, 2}, {3, -1}}));
    CHECK(call({"--backend", "float64", "decide", "--in", sk}).code == cli::ok);
    CHECK(call({"--verify-tol", "0", "--backend", "float64", "decide", "--in", sk}).code == cli::numerical_failure);
    CHECK(call({"decide", "--in", sk}).code == cli::numerical_failure);
    CHECK(call({"--help"}).code == cli::ok);
}
