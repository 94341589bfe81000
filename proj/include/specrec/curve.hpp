#pragma once

// Genus-zero spectral curves (CP^1, x(z), y(z)): regularity validation,
// branchpoints, poles, times and the x <-> y swap.

#include "specrec/involution.hpp"
#include "specrec/laurent.hpp"
#include "specrec/ratfun.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specrec {

struct SpectralCurve {
    std::string name;
    RatFun x;
    RatFun y;

    SpectralCurve(std::string curve_name, RatFun x_fn, RatFun y_fn)
        : name(std::move(curve_name)), x(std::move(x_fn)), y(std::move(y_fn)) {
        if (x.is_constant() || y.is_constant()) throw std::invalid_argument("x and y must be nonconstant");
    }

    friend bool operator==(const SpectralCurve& a, const SpectralCurve& b) {
        return a.name == b.name && a.x == b.x && a.y == b.y;
    }
};

inline constexpr const char* kSwapSuffix = ".swap";

/// (C, y, x). The name gains (or loses) a ".swap" suffix so that swap is an
/// involution on names as well.
inline SpectralCurve swap(const SpectralCurve& c) {
    std::string name = c.name;
    const std::string suffix = kSwapSuffix;
    if (name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        name.erase(name.size() - suffix.size());
    else
        name += suffix;
    return SpectralCurve(std::move(name), c.y, c.x);
}

struct ValidationIssue {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> failures;
    /// Non-fatal observations, e.g. an empty branchpoint set.
    std::vector<ValidationIssue> notes;
    bool passed() const { return failures.empty(); }
};

class CurveValidationError : public std::runtime_error {
  public:
    explicit CurveValidationError(ValidationReport report)
        : std::runtime_error(summary(report)), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

  private:
    static std::string summary(const ValidationReport& r) {
        std::string s = "spectral curve is not regular:";
        for (const auto& f : r.failures) s += " [" + f.code + "] " + f.detail + ";";
        return s;
    }
    ValidationReport report_;
};

/// Zeros (with multiplicity) of the differential f dz on CP^1, plus whether
/// every finite zero was found to be rational.
struct DifferentialZeros {
    std::vector<std::pair<Point, int>> zeros;
    bool rational = true;
};

/// Zeros of d(fn) on CP^1. At infinity d(fn) = -fn'(1/w) w^-2 dw.
inline DifferentialZeros differential_zeros(const RatFun& fn) {
    DifferentialZeros out;
    const RatFun d = derivative(fn);
    if (d.is_zero()) return out;
    if (d.num().degree() > 0) {
        auto roots = rational_zeros(d.num());
        out.rational = roots.fully_split;
        for (const auto& r : roots.roots) out.zeros.emplace_back(Point(r.value), r.multiplicity);
    }
    const int at_inf = order_at(d, Point::infinity()) - 2;
    if (at_inf > 0) out.zeros.emplace_back(Point::infinity(), at_inf);
    return out;
}

struct PoleSet {
    std::vector<std::pair<Point, int>> poles; ///< (location, order)
    bool rational = true;
};

inline PoleSet poles_of(const RatFun& fn) {
    PoleSet out;
    if (fn.den().degree() > 0) {
        auto roots = rational_zeros(fn.den());
        out.rational = roots.fully_split;
        for (const auto& r : roots.roots) out.poles.emplace_back(Point(r.value), r.multiplicity);
    }
    const int excess = fn.num().degree() - fn.den().degree();
    if (excess > 0) out.poles.emplace_back(Point::infinity(), excess);
    return out;
}

inline ValidationReport validate_regular(const SpectralCurve& c) {
    ValidationReport report;
    const auto dx0 = differential_zeros(c.x);
    const auto dy0 = differential_zeros(c.y);
    const auto px = poles_of(c.x);
    const auto py = poles_of(c.y);
    auto contains = [](const auto& list, const Point& p) {
        return std::any_of(list.begin(), list.end(), [&](const auto& e) { return e.first == p; });
    };

    if (!dx0.rational) report.failures.push_back({"irrational_point", "dx has zeros that are not rational"});
    if (!dy0.rational) report.failures.push_back({"irrational_point", "dy has zeros that are not rational"});
    if (!px.rational) report.failures.push_back({"irrational_point", "x has poles that are not rational"});
    if (!py.rational) report.failures.push_back({"irrational_point", "y has poles that are not rational"});

    for (const auto& [a, mult] : dx0.zeros) {
        const std::string at = "z = " + to_string(a);
        if (mult != 1)
            report.failures.push_back({"non_simple_branchpoint", "dx has a zero of order " + std::to_string(mult) + " at " + at});
        if (contains(dy0.zeros, a)) report.failures.push_back({"dx_dy_common_zero", "dx and dy both vanish at " + at});
        if (contains(px.poles, a)) report.failures.push_back({"branchpoint_at_pole", "zero of dx at a pole of x, " + at});
        if (contains(py.poles, a)) report.failures.push_back({"branchpoint_at_pole", "zero of dx at a pole of y, " + at});
        if (a.is_infinity())
            report.failures.push_back({"branchpoint_at_infinity", "branchpoints at infinity are not supported; move it by a change of coordinate"});
    }
    if (dx0.zeros.empty())
        report.notes.push_back({"no_branchpoints", "dx has no zeros: every correlator with 2g-2+n > 0 vanishes"});
    return report;
}

struct BranchPointData {
    Point location;
    LaurentSeries involution; ///< s_a(z) in t = z - a
    Scalar x_at_a;
};

struct PoleRecord {
    Point location;
    int d = 0;       ///< pole order of x
    int d_tilde = 0; ///< pole order of y
    Scalar time;     ///< Res y dx
};

inline void require_regular(const SpectralCurve& c) {
    auto report = validate_regular(c);
    if (!report.passed()) throw CurveValidationError(std::move(report));
}

/// Zeros of dx, ascending, each with its involution series to `trunc`.
inline std::vector<BranchPointData> branchpoints(const SpectralCurve& c, int trunc = 12) {
    require_regular(c);
    std::vector<BranchPointData> out;
    for (const auto& [a, mult] : differential_zeros(c.x).zeros) {
        (void)mult;
        Scalar xa = evaluate(c.x, a).value();
        out.push_back({a, galois_involution_series(c.x, a, trunc), xa});
    }
    return out;
}

/// Poles of x and y (finite ascending, infinity last) with degrees and times.
inline std::vector<PoleRecord> pole_records(const SpectralCurve& c) {
    require_regular(c);
    const auto px = poles_of(c.x).poles;
    const auto py = poles_of(c.y).poles;
    std::vector<Point> locations;
    for (const auto& p : px) locations.push_back(p.first);
    for (const auto& p : py)
        if (std::find(locations.begin(), locations.end(), p.first) == locations.end()) locations.push_back(p.first);
    std::sort(locations.begin(), locations.end());

    const RatFun ydx = c.y * derivative(c.x);
    std::vector<PoleRecord> out;
    for (const auto& loc : locations) {
        PoleRecord rec{loc, 0, 0, Scalar(0)};
        for (const auto& p : px)
            if (p.first == loc) rec.d = p.second;
        for (const auto& p : py)
            if (p.first == loc) rec.d_tilde = p.second;
        rec.time = differential_residue(ydx, loc);
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace specrec
