#pragma once

#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "jacsplit/arith.hpp"
#include "jacsplit/field.hpp"
#include "jacsplit/polynomial.hpp"

namespace jacsplit {

using json = nlohmann::json;

/// One verified claim inside a report.
struct Check {
    std::string name;
    std::string claim_ref;  // stable label of the claim being verified
    bool pass = false;
    json data = json::object();
};

inline json check_to_json(const Check& c) {
    return json{{"name", c.name}, {"claim_ref", c.claim_ref}, {"pass", c.pass}, {"data", c.data}};
}

inline bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal
/// strings.
inline json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) return v.convert_to<i64>();
    return v.str();
}

/// Coefficients low to high.
inline json int_poly_to_json(const IntPoly& f) {
    json arr = json::array();
    for (const auto& c : f.coeffs()) arr.push_back(big_to_json(c));
    return arr;
}

inline json field_elem_to_json(const FieldElem& a) {
    return json{{"coeffs", a.coeffs()}, {"index", a.index()}, {"text", a.to_string()}};
}

/// Polynomial over a prime field as residues, low to high.
inline json fp_poly_to_json(const FieldPoly& f) {
    json arr = json::array();
    for (const auto& c : f.coeffs()) arr.push_back(c.coeffs()[0]);
    return arr;
}

/// Top-level report envelope: {params, checks, conclusion, meta}. `meta` is
/// the only place for run metadata and carries no timestamps.
inline json make_envelope(json params, const std::vector<Check>& checks, const std::string& conclusion) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(check_to_json(c));
    return json{{"params", std::move(params)},
                {"checks", std::move(arr)},
                {"conclusion", conclusion},
                {"pass", all_pass(checks)},
                {"meta", json{{"tool", "jacsplit"}, {"schema", 1}}}};
}

}  // namespace jacsplit
