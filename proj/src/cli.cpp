#include "nil2kit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>

#include <CLI11.hpp>

#include "nil2kit/json_io.hpp"

namespace nil2kit::cli {

namespace {

struct Options {
    std::string backend;
    ToleranceConfig tol;
    std::string out_path;
    std::string in_path;
    std::string witness_path;
    double eps = 0.0;
    std::uint64_t seed = 0;
    int trials = 0;
    int max_dim = 0;
    int entry_bound = 3;
};

/// Applies --backend to a parsed input matrix.
Matrix apply_backend(Matrix m, const std::string& backend) {
    if (backend.empty()) return m;
    if (backend == "float64") return m.is_exact() ? to_float(m) : m;
    if (!m.is_exact()) throw BackendMismatch("--backend exact cannot be applied to a float64 input");
    return m;
}

Matrix load_matrix(const Options& o) { return apply_backend(matrix_from_json(read_json_file(o.in_path)), o.backend); }

void emit(const json& j, const Options& o, std::ostream& out) {
    if (o.out_path.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(o.out_path);
    if (!f) throw ParseError("cannot write " + o.out_path);
    f << j.dump(2) << "\n";
}

int cmd_decide(const Options& o, std::ostream& out, std::ostream& err) {
    const Matrix t = load_matrix(o);
    const Decision d = decide_cnil2(t, o.tol);
    emit(to_json(d, t), o, out);
    if (d.verdict) {
        err << "verdict: yes (witness verified)\n";
        return ok;
    }
    err << "verdict: no (" << to_string(d.obstruction->kind) << ")\n";
    return negative;
}

int cmd_witness(const Options& o, std::ostream& out, std::ostream& err) {
    const Matrix t = load_matrix(o);
    const Decision d = decide_cnil2(t, o.tol);
    if (!d.verdict) {
        err << "no witness: " << to_string(d.obstruction->kind) << "\n";
        emit(to_json(d, t), o, out);
        return negative;
    }
    emit(to_json(*d.witness, t), o, out);
    err << "witness: " << d.witness->note << "\n";
    return ok;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    Matrix t = load_matrix(o);
    ParsedWitness pw = witness_from_json(read_json_file(o.witness_path));
    std::optional<bool> digest_match;
    if (pw.digest) digest_match = *pw.digest == matrix_digest(t) && pw.dimension.value_or(t.rows()) == t.rows();
    const auto same_shape = [&](const Matrix& a) { return a.rows() == t.rows() && a.cols() == t.cols(); };
    if (!t.is_square() || !same_shape(pw.witness.m) || !same_shape(pw.witness.n)) {
        const double inf = std::numeric_limits<double>::infinity();
        emit(to_json(VerifyReport{false, inf, inf, inf}, false), o, out);
        err << "verify: fail (witness dimensions do not match the matrix)\n";
        return negative;
    }
    if (t.backend() != pw.witness.m.backend() || t.backend() != pw.witness.n.backend()) {
        if (t.is_exact()) t = to_float(t);
        if (pw.witness.m.is_exact()) pw.witness.m = to_float(pw.witness.m);
        if (pw.witness.n.is_exact()) pw.witness.n = to_float(pw.witness.n);
    }
    const VerifyReport r = verify_witness(t, pw.witness, o.tol);
    emit(to_json(r, digest_match), o, out);
    const bool pass = r.passed && digest_match.value_or(true);
    err << "verify: " << (pass ? "pass" : "fail");
    if (digest_match && !*digest_match) err << " (witness certifies a different matrix)";
    err << "\n";
    return pass ? ok : negative;
}

int cmd_jordan(const Options& o, std::ostream& out, std::ostream& err) {
    const JordanSpectrum s = jordan_spectrum(load_matrix(o), o.tol);
    emit(to_json(s), o, out);
    err << "jordan: " << s.entries.size() << " distinct eigenvalue(s)\n";
    return ok;
}

int cmd_balanced(const Options& o, std::ostream& out, std::ostream& err) {
    const BalanceReport r = is_balanced(load_matrix(o), o.tol);
    emit(to_json(r), o, out);
    err << "balanced: " << (r.balanced ? "yes" : "no") << "\n";
    return r.balanced ? ok : negative;
}

int cmd_approx(const Options& o, std::ostream& out, std::ostream& err) {
    const Approximation a = approximate_in_cnil2(load_matrix(o), o.eps, o.tol);
    emit(to_json(a, o.eps), o, out);
    err << "approx: distance " << a.distance << " < eps " << o.eps << "\n";
    return ok;
}

int cmd_sqrt(const Options& o, std::ostream& out, std::ostream& err) {
    const SqrtCertificate c = nilpotent_square_root(load_matrix(o), o.tol);
    emit(to_json(c), o, out);
    err << "sqrt: " << c.note << "\n";
    return ok;
}

int cmd_fuzz(const Options& o, std::ostream& out, std::ostream& err) {
    FuzzConfig cfg{o.seed, o.trials, o.max_dim, o.entry_bound};
    const FuzzReport r = fuzz_membership(cfg, o.tol);
    emit(to_json(r), o, out);
    err << "fuzz: " << r.trials_run << " trial(s), " << r.failures.size() << " failure(s)\n";
    return r.failures.empty() ? ok : negative;
}

int cmd_unitary2(const Options& o, std::ostream& out, std::ostream& err) {
    const UnitaryCommutator c = unitary_commutator_2x2(load_matrix(o), o.tol);
    emit(to_json(c), o, out);
    err << "unitary2: residual " << c.residual << "\n";
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Commutators of square-zero matrices: decide, certify, approximate."};
    app.name("nil2kit");
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--backend", o.backend, "Override the input backend")->check(CLI::IsMember({"exact", "float64"}));
    app.add_option("--rank-tol", o.tol.rank_tol, "Relative singular-value cutoff for float rank");
    app.add_option("--eig-tol", o.tol.eig_cluster_tol, "Eigenvalue clustering radius (float)");
    app.add_option("--verify-tol", o.tol.verify_tol, "Residual bound for float certificates");
    app.add_option("--out", o.out_path, "Write JSON here instead of stdout");

    auto add_in = [&](CLI::App* sub) { sub->add_option("--in", o.in_path, "Matrix JSON file")->required(); };
    auto* decide = app.add_subcommand("decide", "Decide membership and report witness or obstruction");
    add_in(decide);
    auto* witness = app.add_subcommand("witness", "Emit a certifying witness (fails on non-members)");
    add_in(witness);
    auto* verify = app.add_subcommand("verify", "Check a witness file against a matrix");
    add_in(verify);
    verify->add_option("--witness", o.witness_path, "Witness JSON file")->required();
    auto* jordan = app.add_subcommand("jordan", "Jordan spectrum");
    add_in(jordan);
    auto* balanced = app.add_subcommand("balanced", "Negation-symmetry of the spectrum");
    add_in(balanced);
    auto* approx = app.add_subcommand("approx", "Nearby member within --eps");
    add_in(approx);
    approx->add_option("--eps", o.eps, "Distance bound")->required()->check(CLI::PositiveNumber);
    auto* sqrt = app.add_subcommand("sqrt", "Nilpotent square root with certificate");
    add_in(sqrt);
    auto* fuzz = app.add_subcommand("fuzz", "Randomized exact membership checks");
    fuzz->add_option("--seed", o.seed, "Random seed")->required();
    fuzz->add_option("--trials", o.trials, "Number of trials")->required()->check(CLI::PositiveNumber);
    fuzz->add_option("--max-dim", o.max_dim, "Largest dimension drawn")->required()->check(CLI::Range(2, 64));
    fuzz->add_option("--entry-bound", o.entry_bound, "Bound on random numerators/denominators")
        ->check(CLI::PositiveNumber);
    auto* unitary2 = app.add_subcommand("unitary2", "Unitary u, v with uv - vu = w for a 2x2 trace-zero unitary w");
    add_in(unitary2);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    try {
        o.tol.validate();
        if (decide->parsed()) return cmd_decide(o, out, err);
        if (witness->parsed()) return cmd_witness(o, out, err);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (jordan->parsed()) return cmd_jordan(o, out, err);
        if (balanced->parsed()) return cmd_balanced(o, out, err);
        if (approx->parsed()) return cmd_approx(o, out, err);
        if (sqrt->parsed()) return cmd_sqrt(o, out, err);
        if (fuzz->parsed()) return cmd_fuzz(o, out, err);
        if (unitary2->parsed()) return cmd_unitary2(o, out, err);
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
        return numerical_failure;
    } catch (const SpectralIrrationality& e) {
        err << "spectral irrationality: " << e.what() << "\n";
        return numerical_failure;
    } catch (const SingularMatrix& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const Error& e) {
        err << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return input_error;
    }
    return input_error;
}

}  // namespace nil2kit::cli
