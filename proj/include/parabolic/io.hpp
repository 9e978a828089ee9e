#pragma once

// JSON encodings. Rationals are strings ("num/den", den omitted when 1);
// series are {"truncation_order": N, "coeffs": {"1": "1", "2": "1/2"}} with
// absent degrees meaning zero. Keys are written in ascending degree so that
// output is deterministic.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "certificates.hpp"
#include "classifier.hpp"
#include "flows.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace parabolic::io {

using Json = nlohmann::ordered_json;

/// Malformed input; the message carries the location (byte offset or JSON pointer).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json valuation_json(const Valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

inline Json to_json(const Series& s) {
    Json coeffs = Json::object();
    for (std::size_t d = 0; d <= s.order(); ++d)
        if (!is_zero(s[d])) coeffs[std::to_string(d)] = to_string(s[d]);
    return Json{{"truncation_order", s.order()}, {"coeffs", coeffs}};
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline Series series_from_json(const Json& j, const std::string& where = "") {
    if (!j.is_object()) throw ParseError((where.empty() ? "/" : where) + ": expected a series object");
    if (!j.contains("truncation_order")) throw ParseError(where + "/truncation_order: missing");
    const auto& order_json = j.at("truncation_order");
    if (!order_json.is_number_unsigned()) throw ParseError(where + "/truncation_order: expected a natural number");
    const auto order = order_json.get<std::size_t>();
    if (order < 1) throw ParseError(where + "/truncation_order: must be >= 1");
    if (!j.contains("coeffs")) throw ParseError(where + "/coeffs: missing");
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_object()) throw ParseError(where + "/coeffs: expected an object");
    Series s(order);
    for (const auto& [key, value] : coeffs.items()) {
        const std::string at = where + "/coeffs/" + key;
        std::size_t degree = 0;
        std::size_t used = 0;
        try {
            degree = std::stoul(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size() || key.empty() || key.front() == '-' || key.front() == '+')
            throw ParseError(at + ": degree key must be a natural number");
        if (degree > order)
            throw ParseError(at + ": degree exceeds truncation_order " + std::to_string(order));
        s.set(degree, rational_from_json(value, at));
    }
    return s;
}

/// Parses text, annotating syntax errors with the byte offset.
inline Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(source + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

inline Series read_series_file(const std::string& path) {
    const auto j = read_json_file(path);
    try {
        return series_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline Json to_json(const GermClassification& cls) {
    Json c = Json::object();
    for (const auto& [n, value] : cls.c) c[std::to_string(n)] = to_string(value);
    return Json{{"m", cls.m}, {"mu", to_string(cls.mu)}, {"scale", to_string(cls.scale)}, {"c", c}, {"H", to_json(cls.H)}};
}

inline Json to_json(const Invariants& inv) { return Json{{"m", inv.m}, {"mu", to_string(inv.mu)}}; }

inline Json to_json(const MarginRecord& r) {
    return Json{{"n", r.n},
                {"kind", std::string(1, r.kind)},
                {"ord", valuation_json(r.ord)},
                {"factorial", r.factorial},
                {"sigma_term", r.sigma_term},
                {"margin", valuation_json(r.margin())}};
}

inline Json to_json(const CertificateReport& report) {
    Json records = Json::array();
    for (const auto& r : report.records) records.push_back(to_json(r));
    Json out{{"certificate", report.kind}, {"prime", report.prime}, {"q_exponent", report.q_exponent},
             {"m", report.m},          {"truncation_order", report.order}, {"verdict", report.pass() ? "PASS" : "FAIL"},
             {"records", records}};
    if (auto failure = report.first_failure()) out["first_failure"] = to_json(*failure);
    return out;
}

inline Json to_json(const SigmaSuiteReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back(Json{{"part", v.part}, {"witness", v.witness}});
    return Json{{"m", report.m},
                {"n_max", report.n_max},
                {"weight_max", report.weight_max},
                {"checks", report.checks},
                {"verdict", report.pass() ? "PASS" : "FAIL"},
                {"violations", violations}};
}

inline Json to_json(const Polynomial& p) {
    Json arr = Json::array();
    for (const auto& c : p.coefficients()) arr.push_back(to_string(c));
    return arr;
}

inline Json to_json(const FlowMap& flow) {
    Json a = Json::object();
    for (std::size_t n = 1; n <= flow.order(); ++n)
        if (!flow.a[n].is_zero()) a[std::to_string(n)] = to_json(flow.a[n]);
    return Json{{"truncation_order", flow.order()}, {"field", to_json(flow.field.series())}, {"a", a}};
}

inline Json to_json(const FlowIntegrityReport& report) {
    Json records = Json::array();
    for (const auto& r : report.records)
        records.push_back(Json{{"n", r.n},
                               {"t_power", r.t_power},
                               {"ord", valuation_json(r.ord)},
                               {"factorial", r.factorial},
                               {"margin", valuation_json(r.margin())}});
    return Json{{"certificate", "flow-integrality"},
                {"prime", report.prime},
                {"truncation_order", report.order},
                {"verdict", report.pass() ? "PASS" : "FAIL"},
                {"degree_violations", report.degree_violations},
                {"records", records}};
}

inline Json to_json(const SeriesComparison& cmp) {
    Json out{{"pass", cmp.pass()}};
    if (cmp.first_difference) out["first_differing_degree"] = *cmp.first_difference;
    return out;
}

/// Deterministic single-document rendering.
inline std::string dump(const Json& j) { return j.dump(2); }

}  // namespace parabolic::io
