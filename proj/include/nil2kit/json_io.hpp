#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nil2kit/closure.hpp"
#include "nil2kit/jordan.hpp"
#include "nil2kit/nil2.hpp"
#include "nil2kit/oracle.hpp"
#include "nil2kit/sqroot.hpp"

namespace nil2kit {

using json = nlohmann::json;

inline constexpr const char* kSchema = "nil2kit/v1";

/// Exact entries are ["re_num", "re_den", "im_num", "im_den"] with decimal
/// strings; float entries are [re, im].
json to_json(const Matrix& m);
json to_json(const Scalar& s);
json to_json(const Partition& p);
json to_json(const JordanSpectrum& s);
json to_json(const Obstruction& o);
/// Witness bundle; `certified` stamps the dimension and digest of t.
json to_json(const Witness& w, const Matrix& certified);
json to_json(const Decision& d, const Matrix& t);
json to_json(const VerifyReport& r, std::optional<bool> digest_match);
json to_json(const BalanceReport& r);
json to_json(const Approximation& a, double eps);
json to_json(const SqrtCertificate& c);
json to_json(const FuzzReport& r);
json to_json(const UnitaryCommutator& c);

/// Accepts either backend; a missing "backend" field is inferred from the
/// entries (plain integers and 4-element entries are exact). Throws ParseError.
Matrix matrix_from_json(const json& j);

struct ParsedWitness {
    Witness witness;
    std::optional<std::size_t> dimension;
    std::optional<std::string> digest;
};

/// Reads a witness bundle: either {"witness": {...}} or the bare {"m", "n"} object.
ParsedWitness witness_from_json(const json& j);

/// FNV-1a 64-bit over the compact JSON of m, as 16 hex digits.
std::string matrix_digest(const Matrix& m);

/// Reads and parses a JSON file; throws ParseError on I/O or syntax errors.
json read_json_file(const std::string& path);

}  // namespace nil2kit
