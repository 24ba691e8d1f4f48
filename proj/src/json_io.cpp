#include "nil2kit/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace nil2kit {

namespace {

json exact_entry(const GaussQ& q) {
    return json::array({q.re().get_num().get_str(), q.re().get_den().get_str(), q.im().get_num().get_str(),
                        q.im().get_den().get_str()});
}

json float_entry(Complex z) { return json::array({z.real(), z.imag()}); }

mpz_class parse_int(const json& j) {
    mpz_class z;
    if (j.is_number_integer()) {
        z = mpz_class(std::to_string(j.get<long long>()));
    } else if (j.is_string()) {
        if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError("invalid integer string: " + j.dump());
    } else {
        throw ParseError("expected an integer or decimal string, got " + j.dump());
    }
    return z;
}

GaussQ parse_exact_entry(const json& e) {
    if (e.is_number_integer() || e.is_string()) return GaussQ(mpq_class(parse_int(e)));
    if (e.is_array() && e.size() == 4) return GaussQ::from_parts(parse_int(e[0]), parse_int(e[1]), parse_int(e[2]), parse_int(e[3]));
    throw ParseError("invalid exact entry: " + e.dump());
}

Complex parse_float_entry(const json& e) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    throw ParseError("invalid float64 entry: " + e.dump());
}

bool looks_float(const json& e) {
    return e.is_number_float() || (e.is_array() && e.size() == 2);
}

}  // namespace

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m.is_exact() ? exact_entry(m.exact_data()[i * m.cols() + j])
                                       : float_entry(m.float_data()[i * m.cols() + j]));
        }
        rows.push_back(std::move(row));
    }
    return {{"backend", to_string(m.backend())}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

json to_json(const Scalar& s) { return s.is_exact() ? exact_entry(s.exact()) : float_entry(s.value()); }

json to_json(const Partition& p) { return json(p.parts()); }

json to_json(const JordanSpectrum& s) {
    json entries = json::array();
    for (const auto& e : s.entries) {
        entries.push_back({{"eigenvalue", to_json(e.eigenvalue)},
                           {"eigenvalue_text", e.eigenvalue.to_string()},
                           {"partition", to_json(e.partition)}});
    }
    return {{"schema", kSchema}, {"dimension", s.dimension}, {"entries", std::move(entries)}};
}

json to_json(const Obstruction& o) {
    json j = {{"kind", to_string(o.kind)}};
    if (o.eigenvalue) {
        j["eigenvalue"] = to_json(*o.eigenvalue);
        j["eigenvalue_text"] = o.eigenvalue->to_string();
    }
    if (o.prefix_index) j["prefix_index"] = *o.prefix_index;
    if (o.partition) j["partition"] = to_json(*o.partition);
    if (o.partner_partition) j["partner_partition"] = to_json(*o.partner_partition);
    return j;
}

json to_json(const Witness& w, const Matrix& certified) {
    return {{"schema", kSchema},
            {"m", to_json(w.m)},
            {"n", to_json(w.n)},
            {"note", w.note},
            {"certifies", {{"dimension", certified.rows()}, {"digest", matrix_digest(certified)}}}};
}

json to_json(const Decision& d, const Matrix& t) {
    json j = {{"schema", kSchema}, {"verdict", d.verdict ? "yes" : "no"}};
    if (d.obstruction) j["obstruction"] = to_json(*d.obstruction);
    if (d.witness) j["witness"] = to_json(*d.witness, t);
    return j;
}

json to_json(const VerifyReport& r, std::optional<bool> digest_match) {
    json j = {{"schema", kSchema},
              {"passed", r.passed},
              {"residuals", {{"m_squared", r.m_squared}, {"n_squared", r.n_squared}, {"commutator", r.commutator}}}};
    j["digest_match"] = digest_match ? json(*digest_match) : json(nullptr);
    return j;
}

json to_json(const BalanceReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) {
        v.push_back({{"eigenvalue", to_json(x.eigenvalue)},
                     {"eigenvalue_text", x.eigenvalue.to_string()},
                     {"mu", x.mu},
                     {"mu_neg", x.mu_neg}});
    }
    return {{"schema", kSchema}, {"balanced", r.balanced}, {"violations", std::move(v)}, {"note", r.note}};
}

json to_json(const Approximation& a, double eps) {
    return {{"schema", kSchema}, {"x", to_json(a.x)},       {"distance", a.distance},
            {"eps", eps},        {"delta", a.delta},        {"witness", to_json(a.witness, a.x)}};
}

json to_json(const SqrtCertificate& c) {
    return {{"schema", kSchema}, {"q", to_json(c.q)}, {"s", to_json(c.s)}, {"note", c.note}};
}

json to_json(const FuzzReport& r) {
    json f = json::array();
    for (const auto& x : r.failures) {
        json inputs = json::object();
        if (x.m.rows() > 0) inputs["m"] = to_json(x.m);
        if (x.n.rows() > 0) inputs["n"] = to_json(x.n);
        f.push_back({{"trial", x.trial}, {"property", x.property}, {"detail", x.detail}, {"inputs", std::move(inputs)}});
    }
    json j = {{"schema", kSchema}, {"trials_run", r.trials_run}, {"failures", std::move(f)}};
    if (r.min_defect) j["min_defect"] = *r.min_defect;
    return j;
}

json to_json(const UnitaryCommutator& c) {
    return {{"schema", kSchema}, {"u", to_json(c.u)},           {"v", to_json(c.v)},
            {"w", to_json(c.w)}, {"residual", c.residual}, {"unitarity_defect", c.defect}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("data")) throw ParseError("matrix JSON must be an object with a \"data\" field");
    const json& data = j.at("data");
    if (!data.is_array()) throw ParseError("matrix \"data\" must be an array of rows");
    const std::size_t rows = data.size();
    const std::size_t cols = rows == 0 ? 0 : data[0].size();
    for (const auto& row : data) {
        if (!row.is_array() || row.size() != cols) throw ParseError("matrix rows must be arrays of equal length");
    }
    auto check_dim = [&](const char* key, std::size_t v) {
        if (j.contains(key) && (!j[key].is_number_unsigned() && !j[key].is_number_integer())) {
            throw ParseError(std::string("\"") + key + "\" must be an integer");
        }
        if (j.contains(key) && j[key].get<long long>() != static_cast<long long>(v)) {
            throw ParseError(std::string("\"") + key + "\" disagrees with data");
        }
    };
    check_dim("rows", rows);
    check_dim("cols", cols);

    Backend be = Backend::exact;
    if (j.contains("backend")) {
        const std::string b = j["backend"].is_string() ? j["backend"].get<std::string>() : "";
        if (b == "exact") {
            be = Backend::exact;
        } else if (b == "float64") {
            be = Backend::float64;
        } else {
            throw ParseError("unknown backend " + j["backend"].dump());
        }
    } else {
        for (const auto& row : data) {
            for (const auto& e : row) {
                if (looks_float(e)) be = Backend::float64;
            }
        }
    }
    if (be == Backend::exact) {
        std::vector<GaussQ> d;
        d.reserve(rows * cols);
        for (const auto& row : data) {
            for (const auto& e : row) d.push_back(parse_exact_entry(e));
        }
        return Matrix::exact(rows, cols, std::move(d));
    }
    std::vector<Complex> d;
    d.reserve(rows * cols);
    for (const auto& row : data) {
        for (const auto& e : row) d.push_back(parse_float_entry(e));
    }
    return Matrix::float64(rows, cols, std::move(d));
}

ParsedWitness witness_from_json(const json& j_in) {
    const json& j = j_in.contains("witness") ? j_in.at("witness") : j_in;
    if (!j.is_object() || !j.contains("m") || !j.contains("n")) throw ParseError("witness JSON needs \"m\" and \"n\"");
    ParsedWitness p{{matrix_from_json(j.at("m")), matrix_from_json(j.at("n")), j.value("note", "")}, {}, {}};
    if (j.contains("certifies")) {
        const json& c = j.at("certifies");
        if (c.contains("dimension") && c["dimension"].is_number_integer()) p.dimension = c["dimension"].get<std::size_t>();
        if (c.contains("digest") && c["digest"].is_string()) p.digest = c["digest"].get<std::string>();
    }
    return p;
}

std::string matrix_digest(const Matrix& m) {
    const std::string text = to_json(m).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace nil2kit
