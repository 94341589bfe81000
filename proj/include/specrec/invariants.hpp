#pragma once

// Scalar invariants of a spectral curve and the x <-> y comparison:
//
//   F_g       = 1/(2-2g) sum_a Res_a omega_{g,1} Phi,        dPhi = y dx near a
//   corr_g    = sum_i t_i G(alpha_i),                         G' dz = omega_{g,1}
//   Fhat_g    = F_g - corr_g / (2-2g)
//   pairing_g = sum_i t_i H(alpha_i),                         H' dz = omega_{g,1} + omega~_{g,1}
//
// Since sum_i t_i = 0 the weighted sums of antiderivative values do not
// depend on the integration constant, i.e. on a base point.

#include "specrec/correlator.hpp"
#include "specrec/curve.hpp"
#include "specrec/laurent.hpp"
#include "specrec/recursion.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace specrec {

/// Taylor series at a of a primitive of y x' with constant term `constant`.
inline LaurentSeries phi_series(const SpectralCurve& c, const Point& a, int trunc, const Scalar& constant = Scalar(0)) {
    const LaurentSeries ydx = expand(c.y * derivative(c.x), a, trunc - 1);
    if (!ydx.is_zero() && ydx.min_exp() < 0) throw std::domain_error("y dx is singular at z = " + to_string(a));
    return add_constant(integrate(ydx), constant);
}

namespace detail {
inline void require_genus_at_least_two(int g) {
    if (g < 2) throw std::invalid_argument("scalar invariants are only defined here for g >= 2");
}
inline Scalar euler_factor(int g) { return Scalar(2 - 2 * g); }
} // namespace detail

/// F_g for g >= 2. `phi_constant` shifts Phi at every branchpoint; the result
/// must not depend on it.
inline Scalar free_energy(RecursionEngine& engine, int g, const Scalar& phi_constant = Scalar(0)) {
    detail::require_genus_at_least_two(g);
    const Correlator& w = engine.omega(g, 1);
    if (w.is_zero()) return Scalar(0);
    const RatFun f = one_point_function(w);
    const int depth = w.max_order() + 1;
    Scalar sum(0);
    for (const auto& a : engine.branch_locations())
        sum += residue_of_product(expand(f, a, 1), phi_series(engine.curve(), a, depth, phi_constant));
    return sum / detail::euler_factor(g);
}

/// Antiderivative of the one-point correlator's dz-coefficient.
inline RatFun one_point_primitive(RecursionEngine& engine, int g) {
    const Correlator& w = engine.omega(g, 1);
    if (w.is_zero()) return RatFun();
    return residue_free_antiderivative(one_point_function(w));
}

namespace detail {
inline Scalar value_at(const RatFun& f, const Point& p) {
    const Point v = evaluate(f, p);
    if (v.is_infinity()) throw std::logic_error("primitive has a pole at z = " + to_string(p));
    return v.value();
}

inline Scalar weighted_pole_sum(const SpectralCurve& c, const RatFun& primitive, const std::optional<Point>& base) {
    Scalar sum(0);
    const Scalar offset = base ? value_at(primitive, *base) : Scalar(0);
    for (const auto& rec : pole_records(c)) sum += rec.time * (value_at(primitive, rec.location) - offset);
    return sum;
}
} // namespace detail

/// sum_i t_i (G(alpha_i) - G(o)); without a base point G(o) is dropped,
/// which changes nothing because sum_i t_i = 0.
inline Scalar correction_term(RecursionEngine& engine, int g, const std::optional<Point>& base = std::nullopt) {
    detail::require_genus_at_least_two(g);
    return detail::weighted_pole_sum(engine.curve(), one_point_primitive(engine, g), base);
}

inline Scalar corrected_free_energy(RecursionEngine& engine, int g) {
    return free_energy(engine, g) - correction_term(engine, g) / detail::euler_factor(g);
}

/// sum_i t_i H(alpha_i) with H a primitive of omega_{g,1} + omega~_{g,1}
/// (times of the first curve). Equals (2-2g)(F_g - F~_g).
inline Scalar integration_constant_pairing(RecursionEngine& engine, RecursionEngine& swapped, int g) {
    detail::require_genus_at_least_two(g);
    const RatFun h = one_point_primitive(engine, g) + one_point_primitive(swapped, g);
    return detail::weighted_pole_sum(engine.curve(), h, std::nullopt);
}

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness;
};

/// Differential vanishing order of f dz at p (chart w = 1/z at infinity).
inline int differential_order(const RatFun& f, const Point& p) {
    return p.is_infinity() ? order_at(f, p) - 2 : order_at(f, p);
}

/// The identities used in comparing F_g with F~_g, for the curve of `engine`.
inline std::vector<CheckResult> identity_checks(RecursionEngine& engine, RecursionEngine& swapped, int g) {
    detail::require_genus_at_least_two(g);
    const SpectralCurve& c = engine.curve();
    std::vector<CheckResult> out;

    const Correlator& w = engine.omega(g, 1);
    const RatFun f = w.is_zero() ? RatFun() : one_point_function(w);
    const Correlator& wt = swapped.omega(g, 1);
    const RatFun ft = wt.is_zero() ? RatFun() : one_point_function(wt);
    const RatFun sum = f + ft;

    {
        CheckResult r{"residue_omega_xy_at_branchpoints", true, ""};
        const RatFun integrand = f * c.x * c.y;
        for (const auto& a : engine.branch_locations()) {
            Scalar res = differential_residue(integrand, a);
            if (!r.witness.empty()) r.witness += "; ";
            r.witness += "z=" + to_string(a) + ": " + to_string(res);
            r.passed = r.passed && sgn(res) == 0;
        }
        out.push_back(std::move(r));
    }
    {
        CheckResult r{"vanishing_order_at_poles", true, ""};
        for (const auto& rec : pole_records(c)) {
            const int need = rec.d + rec.d_tilde;
            std::string got = sum.is_zero() ? "inf" : std::to_string(differential_order(sum, rec.location));
            if (!r.witness.empty()) r.witness += "; ";
            r.witness += "z=" + to_string(rec.location) + ": order " + got + " >= " + std::to_string(need);
            if (!sum.is_zero()) r.passed = r.passed && differential_order(sum, rec.location) >= need;
        }
        out.push_back(std::move(r));
    }
    {
        CheckResult r{"sum_is_exact", true, ""};
        std::vector<Point> poles;
        if (sum.den().degree() > 0)
            for (const auto& root : rational_zeros(sum.den()).roots) poles.emplace_back(root.value);
        poles.push_back(Point::infinity());
        for (const auto& p : poles) {
            Scalar res = sum.is_zero() ? Scalar(0) : differential_residue(sum, p);
            if (!r.witness.empty()) r.witness += "; ";
            r.witness += "z=" + to_string(p) + ": " + to_string(res);
            r.passed = r.passed && sgn(res) == 0;
        }
        if (sum.den().degree() > 0 && !rational_zeros(sum.den()).fully_split) {
            r.passed = false;
            r.witness += "; irrational poles";
        }
        out.push_back(std::move(r));
    }
    return out;
}

struct GenusRow {
    int g = 0;
    Scalar free_energy, free_energy_swapped;
    Scalar correction, correction_swapped;
    Scalar hat, hat_swapped;
    Scalar hat_diff;  ///< hat - hat_swapped
    Scalar raw_diff;  ///< F_g - F~_g
    Scalar pairing;   ///< sum_i t_i C_{g;i}
    bool two_path_agrees = false; ///< (2-2g) raw_diff == pairing
    /// hat difference with the opposite sign of the correction; only filled
    /// in when hat_diff != 0
    std::optional<Scalar> hat_diff_opposite_sign;
    std::vector<CheckResult> checks, checks_swapped;

    bool passed() const {
        if (!two_path_agrees || sgn(hat_diff) != 0) return false;
        for (const auto* list : {&checks, &checks_swapped})
            for (const auto& c : *list)
                if (!c.passed) return false;
        return true;
    }
};

struct SymmetryReport {
    std::string curve_name;
    ValidationReport validation, validation_swapped;
    /// Set when either side has no branchpoints; the comparison is still
    /// computed but no theorem is claimed there.
    bool out_of_regime = false;
    std::vector<std::string> regime_notes;
    std::vector<GenusRow> rows;

    bool valid() const { return validation.passed() && validation_swapped.passed(); }
    /// All theorem-level checks pass (vacuously true out of regime).
    bool certified() const {
        if (!valid()) return false;
        if (out_of_regime) return true;
        for (const auto& r : rows)
            if (!r.passed()) return false;
        return true;
    }
};

inline GenusRow genus_row(RecursionEngine& engine, RecursionEngine& swapped, int g) {
    GenusRow row;
    row.g = g;
    const Scalar chi = detail::euler_factor(g);
    row.free_energy = free_energy(engine, g);
    row.free_energy_swapped = free_energy(swapped, g);
    row.correction = correction_term(engine, g);
    row.correction_swapped = correction_term(swapped, g);
    row.hat = row.free_energy - row.correction / chi;
    row.hat_swapped = row.free_energy_swapped - row.correction_swapped / chi;
    row.hat_diff = row.hat - row.hat_swapped;
    row.raw_diff = row.free_energy - row.free_energy_swapped;
    row.pairing = integration_constant_pairing(engine, swapped, g);
    row.two_path_agrees = chi * row.raw_diff == row.pairing;
    if (sgn(row.hat_diff) != 0)
        row.hat_diff_opposite_sign = (row.free_energy + row.correction / chi) - (row.free_energy_swapped + row.correction_swapped / chi);
    row.checks = identity_checks(engine, swapped, g);
    row.checks_swapped = identity_checks(swapped, engine, g);
    return row;
}

/// Rows g = 2 .. gmax for two sessions on a curve and its swap.
inline SymmetryReport symmetry_report(RecursionEngine& engine, RecursionEngine& swapped, int gmax) {
    if (gmax < 2) throw std::invalid_argument("symmetry_report needs gmax >= 2");
    SymmetryReport report;
    report.curve_name = engine.curve().name;
    report.validation = validate_regular(engine.curve());
    report.validation_swapped = validate_regular(swapped.curve());
    for (const auto* e : {&engine, &swapped}) {
        if (e->branch_locations().empty()) {
            report.out_of_regime = true;
            report.regime_notes.push_back(e->curve().name + " has no branchpoints");
        }
    }
    for (int g = 2; g <= gmax; ++g) report.rows.push_back(genus_row(engine, swapped, g));
    return report;
}

/// Compares c with its swap for g = 2 .. gmax. Validation failures end up in
/// the report rather than being thrown.
inline SymmetryReport symmetry_report(const SpectralCurve& c, int gmax, EngineOptions options = {}) {
    if (gmax < 2) throw std::invalid_argument("symmetry_report needs gmax >= 2");
    const SpectralCurve ct = swap(c);
    SymmetryReport report;
    report.curve_name = c.name;
    report.validation = validate_regular(c);
    report.validation_swapped = validate_regular(ct);
    if (!report.valid()) return report;
    RecursionEngine engine(c, options);
    RecursionEngine swapped(ct, options);
    return symmetry_report(engine, swapped, gmax);
}

} // namespace specrec
