#pragma once

// Curve files, the bundled corpus and JSON reports.
//
// A curve file is a JSON object
//
//   {"name": "C1", "x_num": ["1","0","1"], "x_den": ["0","1"],
//    "y_num": ["4","0","1"], "y_den": ["0","1"]}
//
// with ascending coefficients. Rationals are strings "p/q" or integers; JSON
// integers are accepted too, floats never.

#include "specrec/curve.hpp"
#include "specrec/invariants.hpp"
#include "specrec/recursion.hpp"
#include "specrec/scalar.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace specrec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "specrec-report/1";

/// Malformed curve file. `field` is empty for syntax errors, which carry a
/// line and column in the message instead.
class CurveFileError : public std::runtime_error {
  public:
    CurveFileError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : "field '" + field + "': " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

struct CurveFile {
    std::string name;
    std::vector<Scalar> x_num, x_den, y_num, y_den;

    friend bool operator==(const CurveFile&, const CurveFile&) = default;
};

namespace detail {

inline Scalar scalar_from_json(const Json& v, const std::string& field) {
    if (v.is_string()) {
        try {
            return parse_scalar(v.get<std::string>());
        } catch (const ParseError& e) {
            throw CurveFileError(field, e.what());
        }
    }
    if (v.is_number_integer()) return v.is_number_unsigned() ? Scalar(Integer(std::to_string(v.get<std::uint64_t>())))
                                                              : Scalar(Integer(std::to_string(v.get<std::int64_t>())));
    if (v.is_number_float()) throw CurveFileError(field, "floating point value " + v.dump() + "; write exact rationals as strings");
    throw CurveFileError(field, "expected a rational string, got " + std::string(v.type_name()));
}

inline std::vector<Scalar> coeffs_from_json(const Json& doc, const std::string& field) {
    if (!doc.contains(field)) throw CurveFileError(field, "missing");
    const Json& arr = doc.at(field);
    if (!arr.is_array()) throw CurveFileError(field, "expected an array of coefficients");
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(scalar_from_json(arr[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline Json coeffs_to_json(const std::vector<Scalar>& coeffs) {
    Json arr = Json::array();
    for (const auto& c : coeffs) arr.push_back(to_string(c));
    return arr;
}

inline std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace detail

inline CurveFile parse_curve_file(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw CurveFileError("", "syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) throw CurveFileError("", "curve file must be a JSON object");
    CurveFile f;
    if (!doc.contains("name") || !doc["name"].is_string()) throw CurveFileError("name", "missing or not a string");
    f.name = doc["name"].get<std::string>();
    f.x_num = detail::coeffs_from_json(doc, "x_num");
    f.x_den = detail::coeffs_from_json(doc, "x_den");
    f.y_num = detail::coeffs_from_json(doc, "y_num");
    f.y_den = detail::coeffs_from_json(doc, "y_den");
    return f;
}

inline SpectralCurve to_curve(const CurveFile& f) {
    const Poly xd = Poly(f.x_den);
    const Poly yd = Poly(f.y_den);
    if (xd.is_zero()) throw CurveFileError("x_den", "zero denominator polynomial");
    if (yd.is_zero()) throw CurveFileError("y_den", "zero denominator polynomial");
    RatFun x = RatFun::make(Poly(f.x_num), xd);
    RatFun y = RatFun::make(Poly(f.y_num), yd);
    if (x.is_constant()) throw CurveFileError("x_num", "x is constant");
    if (y.is_constant()) throw CurveFileError("y_num", "y is constant");
    return SpectralCurve(f.name, std::move(x), std::move(y));
}

/// Reduced form of a curve, as written by serialize_curve.
inline CurveFile to_curve_file(const SpectralCurve& c) {
    return {c.name, c.x.num().coeffs(), c.x.den().coeffs(), c.y.num().coeffs(), c.y.den().coeffs()};
}

inline Json curve_json(const CurveFile& f) {
    Json j;
    j["name"] = f.name;
    j["x_num"] = detail::coeffs_to_json(f.x_num);
    j["x_den"] = detail::coeffs_to_json(f.x_den);
    j["y_num"] = detail::coeffs_to_json(f.y_num);
    j["y_den"] = detail::coeffs_to_json(f.y_den);
    return j;
}

inline std::string serialize_curve(const SpectralCurve& c) { return curve_json(to_curve_file(c)).dump(2) + "\n"; }

inline SpectralCurve parse_curve(std::string_view text) { return to_curve(parse_curve_file(text)); }

inline SpectralCurve load_curve(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open curve file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_curve(buf.str());
}

/// The bundled curves. Swaps are not listed separately; every report covers
/// the swap of its curve.
inline std::vector<SpectralCurve> corpus() {
    auto rf = [](std::vector<Scalar> num, std::vector<Scalar> den) { return RatFun::make(Poly(std::move(num)), Poly(std::move(den))); };
    return {
        SpectralCurve("C1", rf({1, 0, 1}, {0, 1}), rf({4, 0, 1}, {0, 1})),
        SpectralCurve("C2", rf({0, 0, 1}, {1}), rf({0, -3, 0, 1}, {1})),
        SpectralCurve("C4", rf({0, -3, 0, 1}, {1}), rf({4, 0, 1}, {0, 1})),
        SpectralCurve("AIRY", rf({0, 0, 1}, {1}), rf({0, 1}, {1})),
    };
}

inline std::optional<SpectralCurve> corpus_curve(std::string_view name) {
    for (auto& c : corpus())
        if (c.name == name) return c;
    return std::nullopt;
}

struct ComputeOptions {
    int gmax = 2;
    int nmax = 1;
    bool check_symmetry = false;
    EngineOptions engine;
};

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInvalidInput = 2 };

struct ComputeResult {
    Json report;
    int exit_code = kExitOk;
};

namespace detail {

inline Json validation_json(const ValidationReport& r) {
    Json j;
    j["passed"] = r.passed();
    auto issues = [](const std::vector<ValidationIssue>& list) {
        Json arr = Json::array();
        for (const auto& i : list) arr.push_back(Json{{"code", i.code}, {"detail", i.detail}});
        return arr;
    };
    j["failures"] = issues(r.failures);
    j["notes"] = issues(r.notes);
    return j;
}

inline Json series_json(const LaurentSeries& s) {
    Json j;
    j["center"] = to_string(s.center());
    j["min_exp"] = s.min_exp();
    j["trunc"] = s.trunc();
    j["coeffs"] = coeffs_to_json(s.coeffs());
    return j;
}

inline Json correlator_json(const Correlator& w) {
    Json j;
    j["g"] = w.g;
    j["n"] = w.n;
    j["max_order"] = w.max_order();
    Json terms = Json::array();
    for (const auto& [key, c] : w.coeffs) {
        Json slots = Json::array();
        for (const auto& e : key) slots.push_back(Json{{"at", to_string(w.location(e))}, {"order", e.order}});
        terms.push_back(Json{{"slots", slots}, {"coeff", to_string(c)}});
    }
    j["terms"] = terms;
    return j;
}

inline Json checks_json(const std::vector<CheckResult>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    return arr;
}

inline Json levels_json(const RecursionEngine& e) {
    auto records = e.records();
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return std::tie(a.g, a.n) < std::tie(b.g, b.n); });
    Json arr = Json::array();
    for (const auto& r : records) {
        Json j{{"g", r.g}, {"n", r.n}, {"depth", r.depth}, {"stability_checked", r.stability_checked}};
        j["stable"] = r.stability_checked ? Json(r.stable) : Json(nullptr);
        arr.push_back(j);
    }
    return arr;
}

} // namespace detail

inline Json symmetry_json(const SymmetryReport& s) {
    Json j;
    j["curve"] = s.curve_name;
    j["valid"] = s.valid();
    j["out_of_regime"] = s.out_of_regime;
    j["regime_notes"] = s.regime_notes;
    j["certified"] = s.certified();
    Json rows = Json::array();
    for (const auto& r : s.rows) {
        Json row;
        row["g"] = r.g;
        row["F"] = to_string(r.free_energy);
        row["F_swapped"] = to_string(r.free_energy_swapped);
        row["correction"] = to_string(r.correction);
        row["correction_swapped"] = to_string(r.correction_swapped);
        row["hatF"] = to_string(r.hat);
        row["hatF_swapped"] = to_string(r.hat_swapped);
        row["hat_diff"] = to_string(r.hat_diff);
        row["raw_diff"] = to_string(r.raw_diff);
        row["pairing"] = to_string(r.pairing);
        row["two_path_agrees"] = r.two_path_agrees;
        if (r.hat_diff_opposite_sign) row["hat_diff_opposite_sign"] = to_string(*r.hat_diff_opposite_sign);
        row["checks"] = detail::checks_json(r.checks);
        row["checks_swapped"] = detail::checks_json(r.checks_swapped);
        row["passed"] = r.passed();
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

/// Correlators up to (gmax, nmax), F_g and hatF_g up to gmax, and with
/// check_symmetry the comparison against the swap. Deterministic output.
inline ComputeResult run_compute(const SpectralCurve& c, const ComputeOptions& opt) {
    ComputeResult out;
    Json& rep = out.report;
    rep["schema"] = kReportSchema;
    Json curve = curve_json(to_curve_file(c));
    curve["x"] = to_string(c.x);
    curve["y"] = to_string(c.y);
    rep["curve"] = curve;
    rep["options"] = Json{{"gmax", opt.gmax},
                          {"nmax", opt.nmax},
                          {"check_symmetry", opt.check_symmetry},
                          {"guard", opt.engine.guard},
                          {"verify_stability", opt.engine.verify_stability}};

    const ValidationReport validation = validate_regular(c);
    rep["validation"] = detail::validation_json(validation);
    std::optional<ValidationReport> validation_swapped;
    if (opt.check_symmetry) {
        validation_swapped = validate_regular(swap(c));
        rep["validation_swapped"] = detail::validation_json(*validation_swapped);
    }
    if (!validation.passed() || (validation_swapped && !validation_swapped->passed())) {
        rep["status"] = "invalid_input";
        out.exit_code = kExitInvalidInput;
        return out;
    }

    Json bps = Json::array();
    for (const auto& b : branchpoints(c, 6))
        bps.push_back(Json{{"location", to_string(b.location)}, {"x", to_string(b.x_at_a)}, {"involution", detail::series_json(b.involution)}});
    rep["branchpoints"] = bps;

    Json poles = Json::array();
    Scalar time_sum(0);
    for (const auto& p : pole_records(c)) {
        poles.push_back(Json{{"location", to_string(p.location)}, {"d", p.d}, {"d_tilde", p.d_tilde}, {"t", to_string(p.time)}});
        time_sum += p.time;
    }
    rep["poles"] = poles;
    rep["time_sum"] = to_string(time_sum);

    RecursionEngine engine(c, opt.engine);
    Json corr = Json::array();
    for (int g = 0; g <= opt.gmax; ++g)
        for (int n = 1; n <= opt.nmax; ++n)
            if (2 * g - 2 + n > 0) corr.push_back(detail::correlator_json(engine.omega(g, n)));
    rep["correlators"] = corr;

    Json inv = Json::array();
    for (int g = 2; g <= opt.gmax; ++g) {
        const Scalar f = free_energy(engine, g);
        const Scalar k = correction_term(engine, g);
        inv.push_back(Json{{"g", g}, {"F", to_string(f)}, {"correction", to_string(k)}, {"hatF", to_string(Scalar(f - k / Scalar(2 - 2 * g)))}});
    }
    rep["invariants"] = inv;

    Json levels_swapped;
    if (opt.check_symmetry && opt.gmax >= 2) {
        RecursionEngine swapped(swap(c), opt.engine);
        const SymmetryReport sym = symmetry_report(engine, swapped, opt.gmax);
        rep["symmetry"] = symmetry_json(sym);
        levels_swapped = detail::levels_json(swapped);
        if (!sym.certified()) out.exit_code = kExitCheckFailed;
    }
    Json engine_meta;
    engine_meta["levels"] = detail::levels_json(engine);
    if (!levels_swapped.is_null()) engine_meta["levels_swapped"] = levels_swapped;
    rep["engine"] = engine_meta;
    rep["status"] = out.exit_code == kExitOk ? "ok" : "check_failed";
    return out;
}

/// Report for curve input that could not even be parsed.
inline Json input_error_report(const std::string& message, const std::string& field = "") {
    Json rep;
    rep["schema"] = kReportSchema;
    rep["status"] = "invalid_input";
    Json failure{{"code", "parse_error"}, {"detail", message}};
    if (!field.empty()) failure["field"] = field;
    rep["validation"] = Json{{"passed", false}, {"failures", Json::array({failure})}, {"notes", Json::array()}};
    return rep;
}

} // namespace specrec
